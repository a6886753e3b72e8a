"""End-to-end checks of the gallery claims with exact counts and proofs."""

import math
import random

import pytest

from src.conjugacy import are_conjugate, conjugate_orbit, entropy_transfer_check
from src.conjugacy.reduction import prove_no_periodic
from src.core.homeomorphism import Homeomorphism
from src.core.relation import AmbientInterval, Relation, UscClass, inverse, is_usc_graph
from src.core.scalar import Scalar
from src.gallery import gallery, gallery_names
from src.mahavier import (
    CellSemantics,
    box_counts,
    check_grid_bound,
    check_inverse_invariance,
    check_subadditivity,
    finite_entropy,
    finite_walk_count,
    grid_matrix,
    mahavier_members,
    spectral_entropy,
)
from src.orbits import cycles_of_finite, find_periodic_orbits, infinite_product_nonempty
from src.orbits.classify import orbit_census
from src.orbits.models import PeriodicOrbit
from src.wellaligned import branching_prefixes, certify, replay_branching, sample_heights

pytestmark = [pytest.mark.slow, pytest.mark.integration]

S = Scalar
LOG2 = math.log(2)
CLOSED = CellSemantics.CLOSED


def random_finite_relation(rng):
    size = rng.randint(1, 6)
    return Relation.from_points(
        (S(rng.randint(0, 4)) / 4, S(rng.randint(0, 4)) / 4) for _ in range(size)
    )


class TestFullShift:
    def test_counts_and_entropy(self, full_shift):
        assert box_counts(full_shift, 2, 10) == [2 ** (m + 1) for m in range(1, 11)]
        estimate = finite_entropy(full_shift)
        assert estimate.upper - estimate.lower <= 1e-9
        assert estimate.value == pytest.approx(LOG2, abs=1e-9)


class TestCounterexample:
    def test_no_certificate_and_two_cycles(self, counterexample):
        assert finite_entropy(counterexample).value == pytest.approx(LOG2 / 2, abs=1e-9)
        assert certify(counterexample) is None
        assert certify(inverse(counterexample)) is None
        assert len(cycles_of_finite(counterexample)) >= 2


class TestHab:
    def test_certificate(self, h_ab, sqrt2):
        cert = certify(h_ab)
        assert (cert.b, cert.psi) == (S(1) / 3, 2)
        assert cert.epsilon == (5 * sqrt2 - 6) / 3
        assert cert.lower_bound == pytest.approx(LOG2 / 4)

    def test_no_periodic_points(self, h_ab):
        assert find_periodic_orbits(h_ab, 12) == []
        assert prove_no_periodic(h_ab).proven
        assert orbit_census(h_ab, 12).proof_level == "proven"

    def test_spectral_estimate_dominates_lower_bound(self, h_ab):
        estimate = spectral_entropy(grid_matrix(h_ab, 256, CLOSED))
        assert estimate.value >= LOG2 / 4


class TestThm2AndThm11:
    def test_thm2_census(self, h_thm2):
        census = orbit_census(h_thm2, 12)
        assert census.proof_level == "proven"
        assert [o.points for o in census.orbits] == [["0"]]

    def test_thm2_dominates_inverse(self, h_ab, h_thm2):
        larger = box_counts(h_thm2, 64, 8, CLOSED)
        smaller = box_counts(inverse(h_ab), 64, 8, CLOSED)
        assert all(s <= g for s, g in zip(smaller, larger))

    def test_thm11(self, h_ab, h_thm11):
        assert is_usc_graph(h_thm11) == UscClass.GRAPH
        census = orbit_census(h_thm11, 12)
        assert census.orbits == []
        assert census.proof_level == "proven"
        larger = box_counts(h_thm11, 64, 8, CLOSED)
        smaller = box_counts(h_ab, 64, 8, CLOSED)
        assert all(s <= g for s, g in zip(smaller, larger))


class TestTaletoti:
    def test_surjective_certified_and_proven(self, taletoti):
        assert is_usc_graph(taletoti) == UscClass.SURJECTIVE_GRAPH
        assert certify(taletoti) is not None
        census = orbit_census(taletoti, 12)
        assert census.orbits == []
        assert census.proof_level == "proven"


class TestConjugatePair:
    @pytest.fixture
    def halve(self):
        """t -> t/2 + 1/2 from [-1, 1] onto [0, 1]."""
        return Homeomorphism.affine(AmbientInterval(S(-1), S(1)), AmbientInterval.unit())

    def test_conjugate(self, joj5_a, joj5_b, halve):
        assert are_conjugate(joj5_b, joj5_a, halve)
        assert halve(S(0)) == S(1) / 2

    @pytest.mark.parametrize("n", [4, 16, 64])
    def test_exact_transfer(self, joj5_a, joj5_b, halve, n):
        report = entropy_transfer_check(joj5_b, joj5_a, halve, n, 10)
        assert report.mode == "exact"
        assert report.equal

    def test_orbits_carry_over(self, joj5_a, halve):
        image = conjugate_orbit(PeriodicOrbit((S(-1),)), halve, joj5_a)
        assert image.points == (S(0),)


class TestCountInequalities:
    @pytest.mark.parametrize("name", gallery_names())
    @pytest.mark.parametrize("n", [16, 64])
    def test_exact_inequalities(self, name, n):
        G = gallery(name)
        counts = box_counts(G, n, 10, CLOSED)
        assert check_subadditivity(counts)
        assert check_grid_bound(counts, n)
        assert check_inverse_invariance(G, n, 10, CLOSED)


class TestFiniteOracles:
    def test_members_match_walk_counts(self):
        rng = random.Random(2024)
        for _ in range(200):
            F = random_finite_relation(rng)
            m = rng.randint(1, 6)
            assert len(mahavier_members(F, m)) == finite_walk_count(F, m)

    def test_cycles_infinite_products_and_orbits_agree(self):
        rng = random.Random(99)
        for _ in range(100):
            F = random_finite_relation(rng)
            has_cycle = bool(cycles_of_finite(F))
            assert infinite_product_nonempty(F) == has_cycle
            assert bool(orbit_census(F, 6).orbits) == has_cycle


class TestReplay:
    def test_branching_on_h_ab(self, h_ab):
        cert = certify(h_ab)
        for t in sample_heights(cert, 100):
            step = replay_branching(cert, h_ab, t)
            assert step.ok
            assert step.gap >= cert.epsilon
        assert len(set(branching_prefixes(cert, h_ab, S(1), 8))) >= 2 ** 8
