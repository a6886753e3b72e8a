"""Tests for branch composition, orbit search, periodicity proofs and classification."""

import math

import pytest

from src.conjugacy.reduction import common_fixed_point, prove_no_periodic, reduce_to_origin
from src.core.errors import BranchNotInvertibleError, GuardExceededError, RelationError
from src.core.intervals import Interval
from src.core.relation import AffineSegment, Relation
from src.core.scalar import Scalar
from src.orbits import (
    OrbitFamily,
    PeriodicOrbit,
    branch_compose,
    build_periodic_from_cycle,
    cycles_of_finite,
    find_periodic_orbits,
    finite_orbits,
    infinite_product_nonempty,
    periodic_core,
    prove_no_nonzero_periodic,
    search_periodic,
)
from src.orbits.classify import EntropyStatus, Verdict, classify_embedding, orbit_census

S = Scalar
ZERO, ONE, HALF = S(0), S(1), S(1) / 2
THREE_QUARTERS = S(3) / 4


def segments(*pieces):
    return Relation.from_segments(
        AffineSegment(*(S.coerce(v) for v in piece)) for piece in pieces
    )


@pytest.fixture
def halving_pair():
    """y = x/2 on [0, 1] and y = 2x on [0, 1/2]: slope product 1 gives a family."""
    return Relation.from_segments([
        AffineSegment(HALF, ZERO, ZERO, ONE),
        AffineSegment(S(2), ZERO, ZERO, HALF),
    ])


@pytest.fixture
def flat_and_doubling():
    """The horizontal line y = 1/2 together with y = 2x on [0, 1/2]."""
    return Relation.from_segments([
        AffineSegment(ZERO, HALF, ZERO, ONE),
        AffineSegment(S(2), ZERO, ZERO, HALF),
    ])


class TestBranchCompose:
    """Exact inverse-branch compositions."""

    def test_single_step(self, h_thm2, b_default):
        composed = branch_compose(h_thm2, [0])
        assert h_thm2.segments[0].slope == b_default
        assert composed.c == S(3)
        assert composed.e == ZERO
        assert composed.domain == Interval(ZERO, S(1) / 3)
        assert composed.fixed_points() == Interval.point(ZERO)

    def test_two_steps(self, h_thm2, a_default):
        composed = branch_compose(h_thm2, [0, 1])
        assert composed.c == S(3) / a_default
        assert composed.domain == Interval(ZERO, S(1) / 3)

    def test_horizontal_segment_is_not_invertible(self, h_thm11):
        assert h_thm11.segments[0].slope == 0
        with pytest.raises(BranchNotInvertibleError):
            branch_compose(h_thm11, [0])

    def test_empty_word(self, h_ab):
        with pytest.raises(RelationError):
            branch_compose(h_ab, [])

    def test_index_out_of_range(self, h_ab):
        with pytest.raises(RelationError):
            branch_compose(h_ab, [0, 5])

    def test_requires_segments(self, full_shift):
        with pytest.raises(RelationError):
            branch_compose(full_shift, [0])


class TestFiniteRelations:
    """Cycles of the coordinate digraph and their orbits."""

    def test_counterexample_cycles(self, counterexample):
        assert cycles_of_finite(counterexample) == [(ZERO, THREE_QUARTERS), (ZERO, ONE)]

    def test_full_shift_cycles(self, full_shift):
        assert cycles_of_finite(full_shift) == [(ZERO,), (ONE,), (ZERO, ONE)]

    def test_orbit_from_cycle(self, counterexample):
        orbit = build_periodic_from_cycle(counterexample, [0, 1])
        assert orbit.points == (ZERO, ONE)
        assert orbit.verify(counterexample)

    @pytest.mark.parametrize("cycle", [[], [1, THREE_QUARTERS], [0, 0]])
    def test_invalid_cycles(self, counterexample, cycle):
        with pytest.raises(RelationError, match="invalid cycle"):
            build_periodic_from_cycle(counterexample, cycle)

    def test_infinite_product(self, counterexample):
        assert infinite_product_nonempty(counterexample)
        assert not infinite_product_nonempty(Relation.from_points([(0, 1)]))

    def test_full_shift_orbits(self, full_shift):
        orbits = finite_orbits(full_shift, 2)
        assert [o.points for o in orbits] == [(ZERO,), (ONE,), (ZERO, ONE)]
        # two binary necklaces of primitive length 3
        assert len(finite_orbits(full_shift, 3)) == 5

    def test_counterexample_has_longer_orbits(self, counterexample):
        orbits = find_periodic_orbits(counterexample, 4)
        assert PeriodicOrbit((ZERO, ONE, ZERO, THREE_QUARTERS)).canonical().points in \
            [o.points for o in orbits]

    def test_enumeration_guard(self, full_shift, mocker):
        mocker.patch("src.orbits.finite.settings.mahavier_guard", 5)
        with pytest.raises(GuardExceededError):
            finite_orbits(full_shift, 6)


class TestSegmentSearch:
    """Exact orbit search on segment relations."""

    def test_h_ab_has_no_orbits(self, h_ab):
        result = search_periodic(h_ab, 6)
        assert result.orbits == []
        assert result.families == []

    def test_h_thm2_only_origin(self, h_thm2):
        assert [o.points for o in find_periodic_orbits(h_thm2, 6)] == [(ZERO,)]

    def test_tent_orbits(self, tent):
        orbits = find_periodic_orbits(tent, 2)
        assert [o.points for o in orbits] == [(ZERO,), (S(2) / 3,), (S(2) / 5, S(4) / 5)]
        assert all(orbit.verify(tent) for orbit in orbits)

    def test_tent_period_three(self, tent):
        """T^3 has 8 fixed points: 0, 2/3 and two 3-cycles."""
        assert len(find_periodic_orbits(tent, 3)) == 4

    def test_family_of_identity_words(self, halving_pair):
        result = search_periodic(halving_pair, 3)
        assert [o.points for o in result.orbits] == [(ZERO,)]
        assert result.families == [OrbitFamily((0, 1), Interval(ZERO, HALF))]

    def test_horizontal_piece(self, flat_and_doubling):
        orbits = find_periodic_orbits(flat_and_doubling, 2)
        assert [o.points for o in orbits] == [(ZERO,), (HALF,), (HALF, ONE)]

    def test_fully_horizontal_relation(self):
        G = segments((0, HALF, 0, 1))
        assert [o.points for o in find_periodic_orbits(G, 3)] == [(HALF,)]

    def test_period_cap(self, h_ab):
        with pytest.raises(GuardExceededError):
            search_periodic(h_ab, 17)

    def test_period_must_be_positive(self, h_ab):
        with pytest.raises(RelationError):
            search_periodic(h_ab, 0)


class TestPeriodicCore:
    """Trimming to pairs inside bi-infinite sequences."""

    def test_horizontal_piece_is_trimmed(self, h_ab, h_thm11):
        assert periodic_core(h_thm11) == h_ab

    def test_h_ab_is_its_own_core(self, h_ab):
        assert periodic_core(h_ab) == h_ab

    def test_acyclic_points_vanish(self):
        assert periodic_core(Relation.from_points([(0, 1)])).is_empty()


class TestProofs:
    """Algebraic exclusion of periodic points."""

    def test_irrational_against_rational(self, h_thm2):
        proof = prove_no_nonzero_periodic(h_thm2)
        assert proof.proven
        assert "irrational" in proof.reason

    def test_all_expanding(self):
        G = segments((2, 0, 0, HALF), (3, 0, 0, S(1) / 3))
        proof = prove_no_nonzero_periodic(G)
        assert proof.proven
        assert "above 1" in proof.reason

    def test_unit_product_is_not_excluded(self, halving_pair):
        assert not prove_no_nonzero_periodic(halving_pair).proven

    def test_lines_off_the_origin(self, taletoti):
        assert not prove_no_nonzero_periodic(taletoti).proven

    def test_finite_relation(self, full_shift):
        assert not prove_no_nonzero_periodic(full_shift).proven

    def test_full_chain_taletoti(self, taletoti):
        proof = prove_no_periodic(taletoti)
        assert proof.proven
        assert proof.orbits == []
        assert proof.x0 == S(-1)

    def test_full_chain_keeps_fixed_point(self, joj5_b):
        proof = prove_no_periodic(joj5_b)
        assert proof.proven
        assert [o.points for o in proof.orbits] == [(S(-1),)]

    def test_full_chain_trims_first(self, h_thm11):
        proof = prove_no_periodic(h_thm11)
        assert proof.proven
        assert proof.orbits == []

    def test_tent_lines_share_no_fixed_point(self, tent):
        assert common_fixed_point(tent) is None
        assert not prove_no_periodic(tent).proven

    def test_reduction_of_taletoti(self, taletoti):
        reduction = reduce_to_origin(taletoti)
        assert reduction.x0 == S(-1)
        assert reduction.phi(ZERO) == HALF
        assert all(s.intercept == 0 for s in reduction.image.segments)


class TestOrbitCensus:
    """Census records and their proof level."""

    def test_proven_for_h_ab(self, h_ab):
        census = orbit_census(h_ab, 4)
        assert census.proof_level == "proven"
        assert census.orbits == []

    def test_proven_with_fixed_point(self, joj5_a):
        census = orbit_census(joj5_a, 4)
        assert census.proof_level == "proven"
        assert [o.points for o in census.orbits] == [["0"]]

    def test_bounded_search_for_tent(self, tent):
        census = orbit_census(tent, 2)
        assert census.proof_level == "bounded_search"
        assert census.note == "exhaustive up to period 2"
        assert [o.period for o in census.orbits] == [1, 1, 2]

    def test_acyclic_finite_relation_is_proven(self):
        census = orbit_census(Relation.from_points([(0, 1)]), 3)
        assert census.proof_level == "proven"
        assert census.orbits == []

    def test_families_are_recorded(self, halving_pair):
        census = orbit_census(halving_pair, 2)
        assert census.proof_level == "bounded_search"
        assert census.families[0].word == [0, 1]


class TestClassification:
    """i-embedded, almost i-embedded, neither or inconclusive."""

    def test_h_ab_is_i_embedded(self, h_ab):
        verdict = classify_embedding(h_ab, max_period=4, n=64)
        assert verdict.verdict == Verdict.I_EMBEDDED
        assert verdict.entropy_status == EntropyStatus.PROVEN_POSITIVE
        assert verdict.entropy_proof and verdict.periodic_proof
        assert verdict.periodic_points == 0

    def test_h_thm2_is_almost_i_embedded(self, h_thm2):
        verdict = classify_embedding(h_thm2, max_period=4, n=64)
        assert verdict.verdict == Verdict.ALMOST_I_EMBEDDED
        assert verdict.periodic_points == 1

    def test_counterexample_is_neither(self, counterexample):
        verdict = classify_embedding(counterexample, max_period=2)
        assert verdict.verdict == Verdict.NEITHER
        assert verdict.periodic_points == 4

    def test_families_force_neither(self, halving_pair):
        verdict = classify_embedding(halving_pair, max_period=3, n=32)
        assert verdict.verdict == Verdict.NEITHER

    def test_positive_bitmap_is_inconclusive(self):
        G = Relation.from_grid(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        verdict = classify_embedding(G, max_period=2, n=2)
        assert verdict.verdict == Verdict.INCONCLUSIVE
        assert verdict.entropy_status == EntropyStatus.EVIDENCE_POSITIVE

    def test_acyclic_bitmap_is_neither(self):
        verdict = classify_embedding(Relation.from_grid(2, [(0, 1)]), max_period=2, n=2)
        assert verdict.verdict == Verdict.NEITHER
        assert verdict.entropy_status == EntropyStatus.EVIDENCE_ZERO

    def test_box_counts_follow_m_max(self):
        G = Relation.from_grid(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        without = classify_embedding(G, max_period=2, n=2)
        assert without.box_counts == []
        assert without.fekete_estimate is None
        verdict = classify_embedding(G, max_period=2, n=2, m_max=3)
        assert verdict.box_counts == [4, 8, 16]
        assert verdict.fekete_estimate == pytest.approx(math.log(16) / 3)
        assert classify_embedding(G, max_period=2, n=2, m_max=4).box_counts == [4, 8, 16, 32]

    def test_m_max_below_two_is_noted(self, h_ab):
        verdict = classify_embedding(h_ab, max_period=2, n=8, m_max=1)
        assert verdict.box_counts == []
        assert "box counts need m_max >= 2, got 1" in verdict.notes

    def test_m_max_above_exact_guard_is_noted(self):
        G = Relation.from_grid(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        verdict = classify_embedding(G, max_period=2, n=2, m_max=33)
        assert verdict.box_counts == []
        assert any("limited to m <= 32" in note for note in verdict.notes)
