import math

import numpy as np
import pytest

from catgen.search import DimSpec, SearchSpace, golden_max, grid_scan, refine, rng_for


def box(*dims, budget=2000, seed=0):
    return SearchSpace(tuple(dims), budget=budget, seed=seed)


class TestGridScan:
    def test_constant_objective_row_major_tiebreak(self):
        space = box(DimSpec("a", 0, 1), DimSpec("b", 0, 1))
        top = grid_scan(lambda x: 1.0, space, 3, top_k=2)
        assert np.array_equal(top[0][1], [0.0, 0.0])
        assert np.array_equal(top[1][1], [0.0, 0.5])

    def test_parabola_peak_on_grid(self):
        space = box(DimSpec("a", -1, 1))
        top = grid_scan(lambda x: -(x[0] - 0.5) ** 2, space, 9, top_k=1)
        assert top[0][1][0] == pytest.approx(0.5)

    def test_errors_rank_last(self):
        def objective(x):
            if x[0] < 0:
                raise ValueError("bad region")
            return float(x[0])

        space = box(DimSpec("a", -1, 1))
        top = grid_scan(objective, space, 5, top_k=5)
        assert top[0][0] == 1.0
        assert top[-1][0] == -math.inf

    def test_deterministic(self):
        space = box(DimSpec("a", 0, 2), DimSpec("b", -1, 1))
        rng = np.random.default_rng(0)
        table = rng.normal(size=(7, 7))

        def objective(x):
            i = int(round(x[0] * 3))
            j = int(round((x[1] + 1) * 3))
            return float(table[i, j])

        first = grid_scan(objective, space, 7, top_k=49)
        second = grid_scan(objective, space, 7, top_k=49)
        assert all(
            a[0] == b[0] and np.array_equal(a[1], b[1]) for a, b in zip(first, second)
        )


class TestRefine:
    def test_quadratic_bowl(self):
        space = box(DimSpec("a", -2, 2), DimSpec("b", -2, 2))
        res = refine(lambda x: -(x[0] - 0.3) ** 2 - (x[1] + 0.7) ** 2, [0.0, 0.0], space, tol=1e-10)
        assert np.allclose(res.point, [0.3, -0.7], atol=1e-5)

    def test_never_worse_than_start(self):
        space = box(DimSpec("a", -1, 1), budget=4)

        def nasty(x):
            return -abs(x[0] - 0.9) if abs(x[0]) > 0.01 else 5.0

        res = refine(nasty, [0.0], space)
        assert res.value >= 5.0

    def test_angular_wraps_across_seam(self):
        space = box(DimSpec("phi", -math.pi, math.pi, "angular"))
        target = math.pi - 0.05  # optimum just below the seam

        def objective(x):
            return math.cos(x[0] - target)

        res = refine(objective, [-math.pi + 0.1], space, tol=1e-10)
        assert math.cos(res.point[0] - target) == pytest.approx(1.0, abs=1e-8)

    def test_budget_flag(self):
        space = box(DimSpec("a", -2, 2), budget=5)
        res = refine(lambda x: -x[0] ** 2, [1.5], space)
        assert res.budget_exhausted


class TestGolden:
    def test_parabola(self):
        x, v = golden_max(lambda t: -(t - 0.37) ** 2, 0.0, 1.0, tol=1e-8)
        assert x == pytest.approx(0.37, abs=1e-6)
        assert v == pytest.approx(0.0, abs=1e-10)

    def test_boundary_maximum(self):
        x, _ = golden_max(lambda t: t, 0.0, 1.0, tol=1e-8)
        assert x == pytest.approx(1.0, abs=1e-6)


class TestRng:
    def test_keyed_streams_reproducible(self):
        a = rng_for(42, 3).normal(size=4)
        b = rng_for(42, 3).normal(size=4)
        c = rng_for(42, 4).normal(size=4)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)


class TestBitwiseDeterminism:
    def test_refine_identical_runs(self):
        space = box(DimSpec("a", -2, 2), DimSpec("b", -2, 2), budget=500)

        def objective(x):
            return -((x[0] - 0.3) ** 2) - (x[1] + 0.7) ** 4

        first = refine(objective, [1.0, 1.0], space, tol=1e-9)
        second = refine(objective, [1.0, 1.0], space, tol=1e-9)
        assert first.value == second.value
        assert np.array_equal(first.point, second.point)


class TestRefineFromFailingStart:
    def test_recovers_from_error_at_start(self):
        space = box(DimSpec("a", -2, 2), budget=400)

        def objective(x):
            if abs(x[0] - 1.0) > 0.9:
                raise ValueError("outside the feasible pocket")
            return -((x[0] - 1.0) ** 2)

        # start outside the pocket, where the objective errors out
        res = refine(objective, [1.95], space, tol=1e-8)
        assert math.isfinite(res.value)
        assert res.value > -0.5
