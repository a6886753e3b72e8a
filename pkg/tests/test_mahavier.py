"""Tests for rasterization, Mahavier box counts and spectral estimates."""

import math
import random

import pytest

from src.core.errors import GuardExceededError, RelationError, RepresentationError
from src.core.relation import AmbientInterval, Relation, RelationKind, inverse
from src.core.scalar import Scalar
from src.mahavier import (
    CellSemantics,
    GridCover,
    TransitionMatrix,
    box_count,
    box_counts,
    check_grid_bound,
    check_inverse_invariance,
    check_refinement,
    check_subadditivity,
    check_subset_monotonicity,
    entropy_sequence,
    finite_entropy,
    finite_walk_count,
    mahavier_members,
    rasterize,
    resolution_sweep,
    spectral_entropy,
    walk_counts,
)

LOG2 = math.log(2)
ZERO, ONE = Scalar(0), Scalar(1)


class TestGridCover:
    """Cell lookup under the three semantics."""

    @pytest.fixture
    def cover(self):
        return GridCover(AmbientInterval.unit(), 4)

    def test_boundary_value_closed(self, cover):
        assert cover.cells_of(Scalar(1) / 2, CellSemantics.CLOSED) == (1, 2)

    def test_boundary_value_half_open(self, cover):
        assert cover.cells_of(Scalar(1) / 2, CellSemantics.HALF_OPEN) == (2,)

    def test_boundary_value_interior(self, cover):
        assert cover.cells_of(Scalar(1) / 2, CellSemantics.INTERIOR) == ()

    def test_right_end_belongs_to_last_cell(self, cover):
        assert cover.cells_of(ONE, CellSemantics.HALF_OPEN) == (3,)
        assert cover.cells_of(ONE, CellSemantics.CLOSED) == (3,)

    def test_irrational_value(self, cover, sqrt2):
        """sqrt2/2 ~ 0.707 lies inside cell 2 under every semantics."""
        for semantics in CellSemantics:
            assert cover.cells_of(sqrt2 / 2, semantics) == (2,)

    def test_rejects_zero_resolution(self):
        with pytest.raises(RepresentationError):
            GridCover(AmbientInterval.unit(), 0)


class TestRasterize:
    """Outer rasterization of points and segments."""

    def test_h_ab_closed_cells_at_four(self, h_ab):
        cells = rasterize(h_ab, 4, CellSemantics.CLOSED).grid.cells
        assert len(cells) == 10
        assert (3, 0) in cells
        assert (1, 3) in cells

    def test_full_shift_occupies_corners(self, full_shift):
        cells = rasterize(full_shift, 2, CellSemantics.CLOSED).grid.cells
        assert cells == frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})

    def test_grid_of_same_resolution_is_returned(self):
        G = Relation.from_grid(3, [(0, 1), (2, 2)])
        assert rasterize(G, 3) is G

    def test_result_is_grid_kind(self, tent):
        assert rasterize(tent, 8).kind == RelationKind.GRID

    def test_tent_interior_rows_have_two_cells(self, tent):
        cells = rasterize(tent, 16, CellSemantics.INTERIOR).grid.cells
        for i in range(16):
            assert len([c for c in cells if c[0] == i]) == 2

    def test_tent_half_open_keeps_boundary_images(self, tent):
        """The last strip keeps x = 3/4, whose image 1/2 starts cell 2."""
        cells = rasterize(tent, 4, CellSemantics.HALF_OPEN).grid.cells
        assert {j for i, j in cells if i == 3} == {0, 1, 2}

    def test_inverse_rasterizes_to_transpose(self, h_ab):
        cells = rasterize(h_ab, 8, CellSemantics.CLOSED).grid.cells
        inverse_cells = rasterize(inverse(h_ab), 8, CellSemantics.CLOSED).grid.cells
        assert inverse_cells == frozenset((j, i) for i, j in cells)


class TestWalkCounts:
    """Exact integer walk counts."""

    def test_golden_mean_counts(self):
        T = TransitionMatrix(2, frozenset({(0, 0), (0, 1), (1, 0)}))
        assert walk_counts(T, 4) == [3, 5, 8, 13]

    def test_full_shift_counts(self, full_shift):
        assert box_counts(full_shift, 2, 5) == [2 ** (m + 1) for m in range(1, 6)]

    def test_box_count_picks_depth(self, full_shift):
        assert box_count(full_shift, 2, 3) == 16

    def test_empty_relation_has_no_counts(self):
        with pytest.raises(RelationError):
            box_counts(Relation.empty(RelationKind.SEGMENTS), 4, 3)

    def test_depth_guard(self, full_shift):
        with pytest.raises(GuardExceededError):
            box_counts(full_shift, 2, 33)

    def test_counts_do_not_overflow(self):
        """Full 4x4 matrix: N_m = 4^(m+1) well past 64-bit range at m = 32."""
        cells = [(i, j) for i in range(4) for j in range(4)]
        counts = box_counts(Relation.from_grid(4, cells), 4, 32)
        assert counts[-1] == 4 ** 33


class TestMahavierMembers:
    """Enumeration of finite Mahavier products."""

    def test_counterexample_depth_two(self, counterexample):
        members = mahavier_members(counterexample, 2)
        assert len(members) == 6
        assert (ZERO, ONE, ZERO) in members
        assert members == sorted(members)

    def test_orientation(self):
        """(x_2, x_1) must lie in F, so only (1, 0) reads as a sequence."""
        F = Relation.from_points([(0, 1)])
        assert mahavier_members(F, 1) == [(ONE, ZERO)]

    @pytest.mark.parametrize("seed", [1, 7, 42])
    def test_members_match_walk_counts(self, seed):
        rng = random.Random(seed)
        points = {(Scalar(rng.randint(0, 5)) / 5, Scalar(rng.randint(0, 5)) / 5) for _ in range(9)}
        F = Relation.from_points(points)
        for m in (1, 2, 3, 4):
            assert len(mahavier_members(F, m)) == finite_walk_count(F, m)

    def test_guard(self, full_shift, mocker):
        mocker.patch("src.mahavier.entropy.settings.mahavier_guard", 10)
        with pytest.raises(GuardExceededError):
            mahavier_members(full_shift, 4)

    def test_requires_points(self, h_ab):
        with pytest.raises(RelationError):
            mahavier_members(h_ab, 2)


class TestSpectralEntropy:
    """Collatz-Wielandt enclosures of the Perron root."""

    def test_golden_mean(self):
        T = TransitionMatrix(2, frozenset({(0, 0), (0, 1), (1, 0)}))
        estimate = spectral_entropy(T)
        golden = (1 + math.sqrt(5)) / 2
        assert estimate.value == pytest.approx(math.log(golden), abs=1e-8)
        assert estimate.lower <= estimate.value <= estimate.upper

    def test_acyclic_matrix_has_no_growth(self):
        estimate = spectral_entropy(TransitionMatrix(2, frozenset({(0, 1)})))
        assert estimate.no_growth
        assert estimate.value == 0.0

    def test_single_cycle_is_zero_entropy(self):
        estimate = spectral_entropy(TransitionMatrix(2, frozenset({(0, 1), (1, 0)})))
        assert not estimate.no_growth
        assert estimate.value == pytest.approx(0.0, abs=1e-9)

    def test_full_shift_is_log_two(self, full_shift):
        assert finite_entropy(full_shift).value == pytest.approx(LOG2, abs=1e-9)

    def test_counterexample_is_half_log_two(self, counterexample):
        assert finite_entropy(counterexample).value == pytest.approx(LOG2 / 2, abs=1e-9)


class TestEntropySequence:
    """Reports combining counts, Fekete ratios and spectral estimates."""

    def test_full_shift_report(self, full_shift):
        report = entropy_sequence(full_shift, 2, 4, CellSemantics.CLOSED)
        assert report.counts == [4, 8, 16, 32]
        assert report.approximation == "outer"
        assert report.estimate == pytest.approx(math.log(32) / 4)
        assert report.spectral.value == pytest.approx(LOG2, abs=1e-9)
        assert report.subadditive_ok and report.grid_bound_ok

    def test_grid_relation_is_exact(self):
        report = entropy_sequence(Relation.from_grid(2, [(0, 0), (1, 1)]), 2, 3)
        assert report.approximation == "exact"
        assert report.counts == [2, 2, 2]
        assert report.estimate == pytest.approx(math.log(2) / 3)

    def test_empty_relation_report(self):
        report = entropy_sequence(Relation.empty(RelationKind.SEGMENTS), 4, 3)
        assert report.empty
        assert report.counts == []

    def test_needs_two_depths(self, h_ab):
        with pytest.raises(RelationError):
            entropy_sequence(h_ab, 4, 1)

    def test_h_ab_estimate_is_bounded(self, h_ab):
        report = entropy_sequence(h_ab, 32, 6, CellSemantics.CLOSED)
        assert 0.0 <= report.estimate <= math.log(32)


class TestTentSweep:
    """The tent map under interior cells is the 2-to-1 Markov matrix."""

    def test_interior_sweep_is_log_two(self, tent):
        sweep = resolution_sweep(tent, [64, 128, 256, 512], CellSemantics.INTERIOR)
        assert [n for n, _ in sweep] == [64, 128, 256, 512]
        for _, estimate in sweep:
            assert LOG2 - 1e-9 <= estimate.value <= LOG2 + 0.25
        values = [estimate.value for _, estimate in sweep]
        assert all(later <= earlier + 1e-6 for earlier, later in zip(values, values[1:]))

    def test_closed_cells_overshoot(self, tent):
        (_, estimate), = resolution_sweep(tent, [64], CellSemantics.CLOSED)
        assert estimate.value > LOG2 + 0.25


class TestCountChecks:
    """Executable comparison checks."""

    def test_subadditivity_detects_violation(self):
        assert check_subadditivity([2, 4, 8])
        assert not check_subadditivity([1, 5])

    def test_grid_bound(self):
        assert check_grid_bound([4, 8], 2)
        assert not check_grid_bound([5], 2)

    @pytest.mark.parametrize("name", ["h_ab", "h_thm2", "taletoti"])
    def test_inverse_invariance(self, name, request):
        G = request.getfixturevalue(name)
        assert check_inverse_invariance(G, 8, 6, CellSemantics.CLOSED)

    def test_subset_monotonicity(self, h_ab, h_thm2):
        assert check_subset_monotonicity(h_ab, h_thm2, 16, 6, CellSemantics.CLOSED)

    def test_subset_monotonicity_needs_subset(self, h_ab, h_thm2):
        with pytest.raises(ValueError):
            check_subset_monotonicity(h_thm2, h_ab, 16, 6)

    def test_thm2_dominates_inverse_of_h_ab(self, h_ab, h_thm2):
        larger = box_counts(h_thm2, 16, 6, CellSemantics.CLOSED)
        smaller = box_counts(inverse(h_ab), 16, 6, CellSemantics.CLOSED)
        assert all(s <= g for s, g in zip(smaller, larger))

    def test_refinement_can_lower_counts(self):
        """{(0,1)}: one self-loop cell at n=1, no walk of length 2 at n=2."""
        G = Relation.from_points([(0, 1)])
        assert not check_refinement(G, 1, 2, CellSemantics.CLOSED)

    def test_refinement_of_full_shift(self, full_shift):
        assert check_refinement(full_shift, 2, 4, CellSemantics.CLOSED)
