"""Named relations with exact parameters and their expected properties."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from config.settings import settings
from src.core.errors import ParameterError
from src.core.relation import AffineSegment, AmbientInterval, Relation, UscClass, is_usc_graph
from src.core.scalar import ONE, ZERO, Scalar
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Params = Dict[str, Scalar]

TWO = Scalar(2)


@dataclass(frozen=True)
class ExpectedProperties:
    """What a gallery relation is known to satisfy; None means not asserted."""

    certificate: Optional[bool] = None
    orbits: Optional[Tuple[Tuple[Scalar, ...], ...]] = None
    # the orbit list is complete up to this period (None: every period)
    orbits_up_to: Optional[int] = None
    usc: Optional[UscClass] = None
    verdict: Optional[str] = None


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    description: str
    parameters: Params
    relation: Relation
    expected: ExpectedProperties

    def verify(self, max_period: Optional[int] = None) -> Dict[str, bool]:
        """
        Recompute every asserted property of the entry.

        Returns:
            Property name mapped to whether the recomputed value matches
        """
        from src.orbits.classify import classify_embedding, orbit_census
        from src.wellaligned.certificate import certify

        max_period = max_period or settings.default_max_period
        results: Dict[str, bool] = {}
        expected = self.expected
        if expected.usc is not None:
            results["usc"] = is_usc_graph(self.relation) == expected.usc
        if expected.certificate is not None:
            results["certificate"] = (certify(self.relation) is not None) == expected.certificate
        if expected.orbits is not None:
            census = orbit_census(self.relation, expected.orbits_up_to or max_period)
            found = sorted(tuple(orbit.points) for orbit in census.orbits)
            results["orbits"] = found == sorted(expected.orbits)
        if expected.verdict is not None:
            verdict = classify_embedding(self.relation, max_period)
            results["verdict"] = verdict.verdict.value == expected.verdict
        failed = [name for name, ok in results.items() if not ok]
        if failed:
            logger.warning(f"Gallery entry {self.name} failed re-verification: {failed}")
        return results


# Parameter windows

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def _validate_ab(a: Scalar, b: Scalar) -> None:
    """a > 1 with no rational power, b rational in (0, 1) and 1/a > b."""
    _require(a > 1, f"a must be in (1,∞), got {a}")
    _require(a.powers_irrational(), f"a^k must be irrational for every k >= 1, got a={a}")
    _require(b.is_rational(), f"b must be rational, got {b}")
    _require(0 < b < 1, f"b must be in (0,1), got {b}")
    _require(ONE / a > b, f"1/a > b must hold, got a={a}, b={b}")


def _validate_narrow_a(a: Scalar) -> None:
    _require(a > 1 and a * a < 2, f"a must be in (1,√2), got {a}")
    _require((TWO * a / (ONE + a)).powers_irrational(),
             f"(2a/(1+a))^k must be irrational for every k >= 1, got a={a}")
    # the two windows below are only nonempty because of these inequalities
    _require((a - 1) / (a + 1) < ONE / a, f"(a-1)/(a+1) < 1/a must hold, got a={a}")
    _require(a / (a + 1) < (ONE + a) / (TWO * a), f"a/(a+1) < (1+a)/(2a) must hold, got a={a}")


def _validate_taletoti(a: Scalar, b: Scalar) -> None:
    _validate_narrow_a(a)
    _require(b.is_rational(), f"b must be rational, got {b}")
    _require(a / (a + 1) < b < ONE / a, f"b must be in (a/(a+1), 1/a), got b={b}")


def _validate_conjugate_pair(a: Scalar, b: Scalar) -> None:
    _validate_narrow_a(a)
    _require(b.is_rational(), f"b must be rational, got {b}")
    _require(a / (a + 1) < b < (ONE + a) / (TWO * a),
             f"b must be in (a/(a+1), (1+a)/(2a)), got b={b}")


def check_surjectivity_window(a: Scalar, b: Scalar) -> bool:
    """
    Endpoint inequalities making both taletoti pieces reach the sides.

    b > (a-1)/(a+1) lets the first piece start below the second's top,
    (1-b)/(1+b) < 1/a lets the second piece start before the first ends;
    together they give p_1 = p_2 = [0, 1].
    """
    return b > (a - 1) / (a + 1) and (ONE - b) / (ONE + b) < ONE / a


# Builders

def _field(params: Params) -> int:
    return next((value.d for value in params.values() if value.d), settings.default_discriminant)


def _line(slope: Scalar, intercept: Scalar, xlo: Scalar, xhi: Scalar) -> AffineSegment:
    return AffineSegment(slope, intercept, xlo, xhi)


def _h_ab_segments(a: Scalar, b: Scalar) -> List[AffineSegment]:
    return [
        _line(a, ZERO, b / (a * a), ONE / a),
        _line(b, ZERO, ONE / (a * a), ONE),
    ]


def _build_h_ab(p: Params) -> Tuple[Relation, ExpectedProperties]:
    a, b = p["a"], p["b"]
    _validate_ab(a, b)
    relation = Relation.from_segments(_h_ab_segments(a, b), d=_field(p))
    return relation, ExpectedProperties(certificate=True, orbits=(), verdict="i_embedded")


def _build_h_thm11(p: Params) -> Tuple[Relation, ExpectedProperties]:
    a, b = p["a"], p["b"]
    _validate_ab(a, b)
    segments = _h_ab_segments(a, b) + [_line(ZERO, b / a, ZERO, b / (a * a))]
    relation = Relation.from_segments(segments, d=_field(p))
    return relation, ExpectedProperties(certificate=True, orbits=(), usc=UscClass.GRAPH,
                                        verdict="i_embedded")


def _build_h_thm2(p: Params) -> Tuple[Relation, ExpectedProperties]:
    a, b = p["a"], p["b"]
    _validate_ab(a, b)
    segments = [_line(a, ZERO, ZERO, ONE / a), _line(b, ZERO, ZERO, ONE)]
    relation = Relation.from_segments(segments, d=_field(p))
    return relation, ExpectedProperties(certificate=True, orbits=((ZERO,),),
                                        verdict="almost_i_embedded")


def _build_taletoti(p: Params) -> Tuple[Relation, ExpectedProperties]:
    a, b = p["a"], p["b"]
    _validate_taletoti(a, b)
    if not check_surjectivity_window(a, b):
        raise ParameterError(f"b > (a-1)/(a+1) and (1-b)/(1+b) < 1/a must hold, got a={a}, b={b}")
    segments = [
        _line(TWO * a / (a + 1), (a - 1) / (a + 1), ZERO, ONE / a),
        _line((b + 1) / 2, (b - 1) / 2, (ONE - b) / (ONE + b), ONE),
    ]
    relation = Relation.from_segments(segments, d=_field(p))
    return relation, ExpectedProperties(certificate=True, orbits=(),
                                        usc=UscClass.SURJECTIVE_GRAPH, verdict="i_embedded")


def _build_joj5_a(p: Params) -> Tuple[Relation, ExpectedProperties]:
    a, b = p["a"], p["b"]
    _validate_conjugate_pair(a, b)
    segments = [
        _line(TWO * a / (ONE + a), ZERO, ZERO, (a + 1) / (TWO * a)),
        _line((b + 1) / 2, ZERO, ZERO, ONE),
    ]
    relation = Relation.from_segments(segments, d=_field(p))
    return relation, ExpectedProperties(orbits=((ZERO,),))


def _build_joj5_b(p: Params) -> Tuple[Relation, ExpectedProperties]:
    a, b = p["a"], p["b"]
    _validate_conjugate_pair(a, b)
    segments = [
        _line(TWO * a / (a + 1), (a - 1) / (a + 1), -ONE, ONE / a),
        _line((b + 1) / 2, (b - 1) / 2, -ONE, ONE),
    ]
    relation = Relation.from_segments(segments, AmbientInterval(-ONE, ONE), d=_field(p))
    return relation, ExpectedProperties(orbits=((-ONE,),))


def _build_counterexample(p: Params) -> Tuple[Relation, ExpectedProperties]:
    quarter = Scalar(3) / 4
    points = [(0, 1), (ZERO, quarter), (quarter, ZERO), (1, 0)]
    relation = Relation.from_points(points)
    expected_orbits = ((ZERO, ONE), (ZERO, quarter))
    return relation, ExpectedProperties(certificate=False, orbits=expected_orbits, orbits_up_to=2,
                                        verdict="neither")


def _build_tent(p: Params) -> Tuple[Relation, ExpectedProperties]:
    half = ONE / 2
    segments = [_line(TWO, ZERO, ZERO, half), _line(-TWO, TWO, half, ONE)]
    return Relation.from_segments(segments), ExpectedProperties(usc=UscClass.SURJECTIVE_GRAPH)


def _build_full_shift(p: Params) -> Tuple[Relation, ExpectedProperties]:
    relation = Relation.from_points([(0, 0), (0, 1), (1, 0), (1, 1)])
    expected_orbits = ((ZERO,), (ONE,), (ZERO, ONE))
    return relation, ExpectedProperties(orbits=expected_orbits, orbits_up_to=2, verdict="neither")


@dataclass(frozen=True)
class _Builder:
    description: str
    build: Callable[[Params], Tuple[Relation, ExpectedProperties]]
    defaults: Params = field(default_factory=dict)


def _default_ab() -> Params:
    return {"a": ONE + Scalar.sqrt(2), "b": ONE / 3}


def _default_narrow() -> Params:
    return {"a": Scalar(0, Fraction(6, 7), 2), "b": TWO / 3}


_BUILDERS: Dict[str, _Builder] = {
    "H_ab": _Builder("y=ax on [b/a², 1/a] and y=bx on [1/a², 1]", _build_h_ab, _default_ab()),
    "H_thm11": _Builder("H_ab plus the horizontal piece [0, b/a²]×{b/a}", _build_h_thm11,
                        _default_ab()),
    "H_thm2": _Builder("y=ax on [0, 1/a] and y=bx on [0, 1]", _build_h_thm2, _default_ab()),
    "taletoti": _Builder("surjective two-segment graph on [0, 1]", _build_taletoti,
                         _default_narrow()),
    "joj5_A": _Builder("through-origin pair on [0, 1]", _build_joj5_a, _default_narrow()),
    "joj5_B": _Builder("pair on [-1, 1] conjugate to joj5_A", _build_joj5_b, _default_narrow()),
    "counterexample": _Builder("{(0,1), (0,3/4), (3/4,0), (1,0)}", _build_counterexample),
    "tent": _Builder("graph of the full tent map", _build_tent),
    "F4": _Builder("full relation on {0, 1}", _build_full_shift),
}


def gallery_names() -> List[str]:
    return sorted(_BUILDERS)


def _merge(name: str, builder: _Builder,
           overrides: Optional[Mapping[str, Union[Scalar, str]]]) -> Params:
    params = dict(builder.defaults)
    for key, value in (overrides or {}).items():
        if key not in builder.defaults:
            allowed = ", ".join(sorted(builder.defaults)) or "none"
            raise ParameterError(f"{name} has no parameter {key!r} (allowed: {allowed})")
        params[key] = Scalar.coerce(value)
    return params


def gallery_entry(name: str,
                  overrides: Optional[Mapping[str, Union[Scalar, str]]] = None) -> GalleryEntry:
    """
    Build a named relation from its (possibly overridden) parameters.

    Raises:
        ParameterError: For unknown names or parameters, or when the
            parameters leave their admissible window; the message names
            the violated inequality
    """
    builder = _BUILDERS.get(name)
    if builder is None:
        raise ParameterError(f"Unknown gallery relation {name!r}; known: {', '.join(gallery_names())}")
    params = _merge(name, builder, overrides)
    relation, expected = builder.build(params)
    logger.debug(f"Built gallery relation {name} with {params}")
    return GalleryEntry(name, builder.description, params, relation, expected)


def gallery(name: str, overrides: Optional[Mapping[str, Union[Scalar, str]]] = None) -> Relation:
    return gallery_entry(name, overrides).relation
