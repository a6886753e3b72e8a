"""Exact numbers of the form p/q + (r/s)*sqrt(d)."""

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

import mpmath

from src.core.errors import FieldMismatchError, RelationError

Number = Union[int, Fraction, "Scalar"]

_SURD_FORM = re.compile(r"(.*?)([+-]?)(\d+(?:/\d+)?)?\*?sqrt\((\d+)\)")


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    for p in range(2, math.isqrt(d) + 1):
        if d % (p * p) == 0:
            return False
    return True


def _sgn(value: Fraction) -> int:
    return (value > 0) - (value < 0)


@total_ordering
class Scalar:
    """
    Element of the quadratic field Q(sqrt(d)), or of Q when d == 0.

    The value is stored as a rational part and a surd coefficient, both
    reduced Fractions, so equal values always have equal fields. Ordering
    uses the conjugate-magnitude test and never touches floating point.
    """

    __slots__ = ("_rational", "_surd", "_d")

    def __init__(self, rational: Union[int, Fraction, str] = 0,
                 surd: Union[int, Fraction, str] = 0, d: int = 0):
        rational = Fraction(rational)
        surd = Fraction(surd)
        if surd == 0:
            d = 0
        elif not _is_square_free(d):
            raise RelationError(f"Discriminant must be square-free and >= 2, got {d}")
        object.__setattr__(self, "_rational", rational)
        object.__setattr__(self, "_surd", surd)
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # Construction

    @classmethod
    def coerce(cls, value: Union[Number, str]) -> "Scalar":
        """Turn ints, Fractions, strings and Scalars into a Scalar."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def sqrt(cls, d: int) -> "Scalar":
        """The positive square root of d as a field element."""
        root = math.isqrt(d)
        if root * root == d:
            return cls(root)
        return cls(0, 1, d)

    @classmethod
    def parse(cls, text: str, d: int = 0) -> "Scalar":
        """
        Parse "p/q", "p/q+r/s*sqrt(d)" and the shorter variants.

        Args:
            text: Scalar in the file string format
            d: Expected discriminant; 0 accepts whatever the text names

        Returns:
            Parsed scalar

        Raises:
            RelationError: If the text is malformed
            FieldMismatchError: If the text names a different discriminant
        """
        compact = text.replace(" ", "")
        if not compact:
            raise RelationError("Empty scalar string")
        match = _SURD_FORM.fullmatch(compact)
        try:
            if match is None:
                return cls(Fraction(compact))
            head, sign, coefficient, radicand = match.groups()
            if head and not sign:
                raise RelationError(f"Malformed scalar: {text!r}")
            rational = Fraction(head) if head else Fraction(0)
            surd = Fraction(coefficient) if coefficient else Fraction(1)
        except (ValueError, ZeroDivisionError) as e:
            raise RelationError(f"Malformed scalar: {text!r} ({e})") from e
        if sign == "-":
            surd = -surd
        field = int(radicand)
        if d and field != d:
            raise FieldMismatchError(f"field mismatch: sqrt({field}) in a sqrt({d}) file")
        return cls(rational, surd, field)

    # Components

    @property
    def rational(self) -> Fraction:
        return self._rational

    @property
    def surd(self) -> Fraction:
        return self._surd

    @property
    def d(self) -> int:
        return self._d

    @property
    def p(self) -> int:
        return self._rational.numerator

    @property
    def q(self) -> int:
        return self._rational.denominator

    @property
    def r(self) -> int:
        return self._surd.numerator

    @property
    def s(self) -> int:
        return self._surd.denominator

    def is_rational(self) -> bool:
        return self._surd == 0

    def conjugate(self) -> "Scalar":
        """Image under sqrt(d) -> -sqrt(d)."""
        return Scalar(self._rational, -self._surd, self._d)

    def norm(self) -> Fraction:
        """x times its conjugate, always rational."""
        return self._rational ** 2 - self._surd ** 2 * self._d

    def powers_irrational(self) -> bool:
        """
        True when no positive power of the number is rational.

        If x**k were rational it would equal its own conjugate, so |x| and
        |conjugate(x)| would coincide and x = +/-conjugate(x); that forces
        the rational part or the surd part to vanish. Both nonzero
        therefore rules out every rational power.
        """
        return self._rational != 0 and self._surd != 0

    # Arithmetic

    def _field_with(self, other: "Scalar") -> int:
        if self._d and other._d and self._d != other._d:
            raise FieldMismatchError(
                f"field mismatch: sqrt({self._d}) and sqrt({other._d})"
            )
        return self._d or other._d

    @staticmethod
    def _wrap(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        d = self._field_with(other)
        return Scalar(self._rational + other._rational, self._surd + other._surd, d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self._rational, -self._surd, self._d)

    def __pos__(self) -> "Scalar":
        return self

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        d = self._field_with(other)
        a1, c1, a2, c2 = self._rational, self._surd, other._rational, other._surd
        return Scalar(a1 * a2 + c1 * c2 * d, a1 * c2 + a2 * c1, d)

    __rmul__ = __mul__

    def reciprocal(self) -> "Scalar":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(self._rational / norm, -self._surd / norm, self._d)

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        self._field_with(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = Scalar(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self) -> "Scalar":
        return -self if self.sign() < 0 else self

    # Ordering

    def sign(self) -> int:
        """Exact sign via the conjugate-magnitude test."""
        a, c = self._rational, self._surd
        if c == 0:
            return _sgn(a)
        if a == 0 or _sgn(a) == _sgn(c):
            return _sgn(c) if a == 0 else _sgn(a)
        # opposite signs: the larger magnitude wins, compared through squares
        return _sgn(a) if a * a > c * c * self._d else _sgn(c)

    def __eq__(self, other) -> bool:
        other = self._wrap(other)
        if other is NotImplemented:
            return False
        return (self._rational, self._surd, self._d) == (other._rational, other._surd, other._d)

    def __lt__(self, other) -> bool:
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        if self._surd == 0:
            return hash(self._rational)
        return hash((self._rational, self._surd, self._d))

    def __bool__(self) -> bool:
        return self.sign() != 0

    # Conversions

    def __float__(self) -> float:
        return float(self._rational) + float(self._surd) * math.sqrt(self._d)

    def evaluate(self, dps: int = 40) -> mpmath.mpf:
        """High-precision value with dps decimal digits."""
        with mpmath.workdps(dps):
            value = mpmath.mpf(self._rational.numerator) / self._rational.denominator
            if self._surd:
                value += (
                    mpmath.mpf(self._surd.numerator) / self._surd.denominator
                ) * mpmath.sqrt(self._d)
            return +value

    def floor(self) -> int:
        guess = math.floor(float(self))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def __str__(self) -> str:
        if self._surd == 0:
            return str(self._rational)
        coefficient = abs(self._surd)
        surd_text = f"{coefficient}*sqrt({self._d})"
        if self._rational == 0:
            return f"-{surd_text}" if self._surd < 0 else surd_text
        sign = "-" if self._surd < 0 else "+"
        return f"{self._rational}{sign}{surd_text}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)


def scalar_cmp(x: Number, y: Number) -> int:
    """
    Exact three-way comparison.

    Returns:
        -1, 0 or 1 as x is less than, equal to or greater than y

    Raises:
        FieldMismatchError: If x and y live in different quadratic fields
    """
    return (Scalar.coerce(x) - Scalar.coerce(y)).sign()
