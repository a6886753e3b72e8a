"""Tests for delta splits, fiber extremes, well-alignment and certificates."""

import math

import pytest

from src.core.errors import AlignmentInvariantError, GuardExceededError, RelationError
from src.core.relation import Relation, project
from src.core.scalar import Scalar
from src.wellaligned import (
    build_certificate,
    branching_prefixes,
    certify,
    check_well_aligned,
    concat,
    delta_split,
    epsilon_gap,
    psi_max,
    psi_value,
    r_ell,
    replay_branching,
    sample_heights,
    uniform_bound,
)

S = Scalar
THIRD = S(1) / 3


def dense_heights(L, count=10_000):
    """count + 1 evenly spaced exact heights across the hull of p_2(L), kept when in p_2(L)."""
    parts = project(L, 2).parts
    lo, hi = parts[0].lo, parts[-1].hi
    heights = (lo + (hi - lo) * S(j) / count for j in range(count + 1))
    return [t for t in heights if any(part.contains(t) for part in parts)]


@pytest.fixture(scope="module")
def h_ab_pair(h_ab):
    """(L, R): the steep and the flat segment of H_ab."""
    R = Relation.from_segments([h_ab.segments[0]])
    L = Relation.from_segments([h_ab.segments[1]])
    return L, R


@pytest.fixture(scope="module")
def h_ab_certificate(h_ab):
    return certify(h_ab)


@pytest.fixture
def epsilon_default(sqrt2):
    return (5 * sqrt2 - 6) / 3


class TestFibers:
    """Exact l_G(t) and r_G(t)."""

    def test_two_segments_meet_height(self, h_ab, a_default):
        assert r_ell(h_ab, S(1) / 4) == (S(1) / (4 * a_default), S(3) / 4)

    def test_single_fiber(self, h_ab_pair, a_default):
        L, _ = h_ab_pair
        assert r_ell(L, S(1)) == (S(1) / a_default, S(1) / a_default)

    def test_outside_range(self, h_ab):
        with pytest.raises(RelationError, match="outside range projection"):
            r_ell(h_ab, S(1) / 100)

    def test_finite_relation(self, counterexample):
        assert r_ell(counterexample, S(0)) == (S(3) / 4, S(1))


class TestDeltaSplit:
    """Partition by height against b."""

    def test_segment_split(self, h_ab, a_default):
        split = delta_split(h_ab, THIRD)
        assert split.plus.segments[0].xlo == THIRD / a_default
        assert split.plus.segments[0].xhi == S(1) / a_default
        assert len(split.level.segments) == 2
        assert len(split.minus.segments) == 2

    def test_points_split(self, counterexample):
        split = delta_split(counterexample, S(1) / 2)
        assert len(split.plus.points) == 2
        assert len(split.minus.points) == 2
        assert split.level.is_empty()

    def test_lower_includes_level(self, counterexample):
        split = delta_split(counterexample, S(3) / 4)
        assert split.level.points == ((S(0), S(3) / 4),)
        assert len(split.lower.points) == 3


class TestWellAligned:
    """The four clauses, checked exactly."""

    def test_h_ab_pair(self, h_ab_pair):
        L, R = h_ab_pair
        check = check_well_aligned(L, R, THIRD)
        assert check.ok
        assert check.clause is None
        assert check.witness() is None
        assert check.level_overlap

    def test_swapped_pair(self, h_ab_pair):
        L, R = h_ab_pair
        check = check_well_aligned(R, L, THIRD)
        assert not check.ok
        assert 2 in check.violated
        assert check.witness() is not None

    @pytest.mark.parametrize("b", [S(0), S(1), S(2)])
    def test_level_outside_interior(self, h_ab_pair, b):
        L, R = h_ab_pair
        assert check_well_aligned(L, R, b).violated == [0]

    def test_level_too_high(self, h_ab_pair):
        """At b = 1/2 the flat part of L leaves p_2(R)."""
        L, R = h_ab_pair
        assert 3 in check_well_aligned(L, R, S(1) / 2).violated

    def test_string_level(self, h_ab_pair):
        L, R = h_ab_pair
        assert check_well_aligned(L, R, "1/3").ok


class TestPsiAndEpsilon:
    """Iteration counts and the separation gap."""

    def test_uniform_bound(self, h_ab_pair, a_default):
        L, _ = h_ab_pair
        assert uniform_bound(L, THIRD) == (S(1) / a_default, 2)

    @pytest.mark.parametrize("t,expected", [
        ("1/4", 0),
        ("1/3", 0),
        ("1/2", 1),
        ("1", 2),
    ])
    def test_psi_value(self, h_ab_pair, t, expected):
        L, _ = h_ab_pair
        assert psi_value(L, THIRD, S.parse(t), 2) == expected

    def test_psi_limit(self, h_ab_pair):
        L, _ = h_ab_pair
        with pytest.raises(AlignmentInvariantError):
            psi_value(L, THIRD, S(1), 1)

    def test_psi_max(self, h_ab_pair):
        L, _ = h_ab_pair
        assert psi_max(L, THIRD) == (2, 2)

    def test_psi_never_exceeds_uniform_bound(self, h_ab_pair):
        L, _ = h_ab_pair
        _, k = uniform_bound(L, THIRD)
        for step in range(1, 201):
            t = THIRD + (1 - THIRD) * S(step) / 200
            assert psi_value(L, THIRD, t, k) <= k

    @pytest.mark.slow
    def test_uniform_bound_over_dense_heights(self, h_ab_pair):
        L, _ = h_ab_pair
        _, k = uniform_bound(L, THIRD)
        heights = dense_heights(L)
        assert len(heights) == 10_001
        assert all(psi_value(L, THIRD, t, k) <= k for t in heights)

    def test_epsilon(self, h_ab_pair, epsilon_default):
        L, R = h_ab_pair
        assert epsilon_gap(L, R) == epsilon_default
        assert epsilon_default > 0

    def test_epsilon_needs_common_range(self):
        L = Relation.from_points([(0, 1)])
        R = Relation.from_points([(1, 0)])
        with pytest.raises(RelationError):
            epsilon_gap(L, R)


class TestCertify:
    """Certificate search over candidate levels."""

    def test_h_ab(self, h_ab_certificate, epsilon_default):
        cert = h_ab_certificate
        assert cert.b == THIRD
        assert cert.psi == 2
        assert cert.uniform_k == 2
        assert cert.epsilon == epsilon_default
        assert cert.lower_bound == pytest.approx(math.log(2) / 4)
        assert cert.witness.target == "G"

    def test_taletoti(self, taletoti):
        cert = certify(taletoti)
        assert cert is not None
        assert cert.b == S(2) / 3
        assert cert.psi == 2
        assert cert.uniform_k == 3

    @pytest.mark.slow
    def test_taletoti_psi_matches_dense_maximum(self, taletoti):
        cert = certify(taletoti)
        L = cert.witness.L
        heights = dense_heights(L)
        assert len(heights) > 5_000
        values = [psi_value(L, cert.b, t, cert.uniform_k) for t in heights]
        assert max(values) == cert.psi

    @pytest.mark.parametrize("name", ["h_thm2", "h_thm11"])
    def test_other_gallery_relations(self, name, request):
        assert certify(request.getfixturevalue(name)) is not None

    def test_counterexample_has_none(self, counterexample):
        assert certify(counterexample) is None

    def test_hint_comes_first(self, h_ab):
        assert certify(h_ab, hints=["1/3"]).b == THIRD

    def test_empty_relation(self):
        assert certify(Relation.from_points([])) is None

    def test_finite_guard(self):
        points = [(S(k) / 13, S(0)) for k in range(13)]
        with pytest.raises(GuardExceededError):
            certify(Relation.from_points(points))

    def test_requires_points_or_segments(self):
        with pytest.raises(RelationError):
            certify(Relation.from_grid(2, [(0, 1)]))

    def test_explicit_pair(self, h_ab_pair, epsilon_default):
        L, R = h_ab_pair
        cert = build_certificate(L, R, THIRD)
        assert cert.epsilon == epsilon_default
        assert build_certificate(R, L, THIRD) is None

    def test_record(self, h_ab_certificate):
        record = h_ab_certificate.to_record()
        assert record.b == "1/3"
        assert record.epsilon == "-2+5/3*sqrt(2)"
        assert record.psi == 2
        assert record.target == "G"
        assert record.L.kind == "segments"


class TestReplay:
    """Replay of the binary branching behind the lower bound."""

    def test_concat(self):
        assert concat((1, 2), (), (3,)) == (1, 2, 3)

    def test_samples(self, h_ab_certificate):
        heights = sample_heights(h_ab_certificate, 10)
        assert len(heights) == 10
        assert all(t > THIRD for t in heights)

    def test_each_branch_is_a_prefix(self, h_ab, h_ab_certificate):
        cert = h_ab_certificate
        for t in sample_heights(cert, 20):
            step = replay_branching(cert, h_ab, t)
            assert step.ok
            assert step.gap >= cert.epsilon
            assert step.trunk[0] == t

    def test_prefix_tree(self, h_ab, h_ab_certificate):
        prefixes = branching_prefixes(h_ab_certificate, h_ab, S(1), 4)
        assert len(prefixes) == 16
        assert len(set(prefixes)) == 16

    def test_default_depth(self, h_ab, h_ab_certificate):
        assert len(branching_prefixes(h_ab_certificate, h_ab, S(1))) == 2 ** 8

    def test_prefix_guard(self, h_ab, h_ab_certificate):
        with pytest.raises(GuardExceededError):
            branching_prefixes(h_ab_certificate, h_ab, S(1), 30)
