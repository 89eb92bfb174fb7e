"""Numeric oracle: descent, grid search, and their mutual agreement."""

import numpy as np
import pytest

from adpulse import (
    DegenerateDeltaError,
    ProblemSpec,
    Schedule,
    eval_loss,
    solve,
)
from adpulse.oracle import grid_search, minimize_loss


class TestMinimizeLoss:
    def test_symmetric_three_ads(self):
        result = minimize_loss(ProblemSpec(3, 8.0, 0.5), tol=1e-10)
        assert result.schedule.times == pytest.approx([0.0, 4.0, 8.0], abs=1e-6)
        assert result.converged

    def test_two_ads_immediate(self):
        result = minimize_loss(ProblemSpec(2, 5.0, 0.5))
        assert result.schedule.times.tolist() == [0.0, 5.0]
        assert result.loss == 0.5 ** 5
        assert result.iterations == 0

    def test_matches_closed_form_loss(self):
        spec = ProblemSpec(4, 12.0, 0.5)
        numeric = minimize_loss(spec)
        assert abs(numeric.loss - solve(spec).loss) < 1e-6

    def test_pins_endpoints(self):
        result = minimize_loss(ProblemSpec(7, 15.0, 0.85))
        assert result.schedule.times[0] == 0.0
        assert result.schedule.times[-1] == 15.0

    def test_rejects_degenerate_delta_and_single_ad(self):
        with pytest.raises(DegenerateDeltaError):
            minimize_loss(ProblemSpec(3, 8.0, 1.0))
        with pytest.raises(ValueError):
            minimize_loss(ProblemSpec(1, 8.0, 0.5))

    def test_max_iters_clears_flag_without_raising(self):
        result = minimize_loss(ProblemSpec(8, 20.0, 0.9), max_iters=3)
        assert not result.converged
        assert result.iterations == 3

    def test_loss_nonincreasing_across_iterations(self):
        spec = ProblemSpec(8, 20.0, 0.9)
        losses = [
            minimize_loss(spec, max_iters=k).loss for k in range(0, 60, 3)
        ]
        assert all(b <= a + 1e-15 for a, b in zip(losses, losses[1:]))

    def test_sort_projection_is_valid_for_this_loss(self):
        # The loss extends to unordered vectors as a symmetric function of
        # pairwise absolute gaps, so re-sorting never changes its value;
        # this is what makes sorting a legitimate feasibility repair.
        rng = np.random.Generator(np.random.PCG64(3))
        delta = 0.7
        for _ in range(20):
            x = rng.uniform(0.0, 10.0, 6)
            by_abs_gaps = sum(
                delta ** abs(x[i] - x[j])
                for i in range(6)
                for j in range(i)
            )
            sorted_loss = eval_loss(
                ProblemSpec(6, 10.0, delta), Schedule(np.sort(x))
            )
            assert sorted_loss == pytest.approx(by_abs_gaps, rel=1e-12)


class TestGridSearch:
    def test_symmetric_three_ads_on_grid(self):
        result = grid_search(ProblemSpec(3, 8.0, 0.5), grid_points=161)
        assert abs(result.schedule.times[1] - 4.0) <= 8.0 / 160 + 1e-12

    def test_two_ads(self):
        result = grid_search(ProblemSpec(2, 5.0, 0.5), grid_points=11)
        assert result.schedule.times.tolist() == [0.0, 5.0]

    def test_descent_at_least_as_good_up_to_resolution(self):
        spec = ProblemSpec(4, 10.0, 0.9)
        coarse = grid_search(spec, grid_points=101)
        fine = minimize_loss(spec)
        assert fine.loss <= coarse.loss + 1e-12
        # grid loss can only exceed the optimum by the resolution effect
        assert coarse.loss - fine.loss < 0.05

    def test_size_caps(self):
        with pytest.raises(ValueError):
            grid_search(ProblemSpec(6, 10.0, 0.5), grid_points=50)
        with pytest.raises(ValueError):
            grid_search(ProblemSpec(4, 10.0, 0.5), grid_points=201)

    def test_agrees_with_descent_within_resolution(self):
        for m, T, d in [(3, 8.0, 0.5), (4, 10.0, 0.7), (5, 6.0, 0.9)]:
            spec = ProblemSpec(m, T, d)
            step = T / 120
            gridded = grid_search(spec, grid_points=121)
            descended = minimize_loss(spec)
            dev = np.abs(gridded.schedule.times - descended.schedule.times).max()
            assert dev <= step + 1e-9
