"""Deterministic grid scans and derivative-free refinement.

All searches maximize.  Randomness (used only for restart jitter) comes from
a counter-based Philox generator keyed by an explicit seed, so identical
inputs give identical outputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DimSpec:
    name: str
    lower: float
    upper: float
    kind: str = "linear"  # "linear" or "angular"

    def __post_init__(self):
        if self.lower >= self.upper:
            raise ValueError(f"dim {self.name}: lower must be < upper")
        if self.kind not in ("linear", "angular"):
            raise ValueError(f"dim {self.name}: unknown kind {self.kind}")


@dataclass(frozen=True)
class SearchSpace:
    dims: tuple[DimSpec, ...]
    budget: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        object.__setattr__(self, "dims", tuple(self.dims))

    def wrap(self, point: np.ndarray) -> np.ndarray:
        """Fold angular coordinates into their period; clip linear ones."""
        out = np.array(point, dtype=float)
        for i, d in enumerate(self.dims):
            if d.kind == "angular":
                out[i] = (out[i] - d.lower) % (d.upper - d.lower) + d.lower
            else:
                out[i] = min(max(out[i], d.lower), d.upper)
        return out


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream)."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _safe(objective, point):
    try:
        v = float(objective(np.asarray(point, dtype=float)))
    except (ValueError, ArithmeticError):
        return -math.inf
    if math.isnan(v):
        return -math.inf
    return v


def grid_scan(objective, space: SearchSpace, resolution, top_k: int = 10):
    """Evaluate on a row-major grid; return the top cells as (value, point).

    ``resolution`` is one int or a per-dimension sequence.  Angular axes
    omit the duplicate wrap point.  Ties break on row-major order.
    """
    if isinstance(resolution, int):
        resolution = [resolution] * len(space.dims)
    axes = []
    for d, res in zip(space.dims, resolution):
        if res < 1:
            raise ValueError("resolution must be >= 1")
        if d.kind == "angular":
            axes.append(np.linspace(d.lower, d.upper, res, endpoint=False))
        else:
            axes.append(np.linspace(d.lower, d.upper, res))
    scored = []
    for idx, combo in enumerate(itertools.product(*axes)):
        scored.append((_safe(objective, combo), idx, np.array(combo)))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return [(v, p) for v, _, p in scored[:top_k]]


@dataclass(frozen=True)
class RefineResult:
    point: np.ndarray
    value: float
    budget_exhausted: bool = False


def refine(objective, start, space: SearchSpace, tol: float = 1e-8) -> RefineResult:
    """Nelder-Mead polish of ``start``; never returns a value below it.

    Angular coordinates are folded inside the objective, so the simplex can
    walk across the seam freely.
    """
    start = np.asarray(start, dtype=float)
    start_value = _safe(objective, space.wrap(start))
    scale = abs(start_value) if math.isfinite(start_value) else 1.0

    def neg(x):
        return -_safe(objective, space.wrap(x))

    res = minimize(
        neg,
        start,
        method="Nelder-Mead",
        options={
            "maxfev": space.budget,
            "xatol": tol,
            "fatol": tol * max(scale, 1.0) * 1e-4,
            "adaptive": len(space.dims) > 4,
        },
    )
    exhausted = res.nfev >= space.budget
    value = -res.fun
    point = space.wrap(res.x)
    if not math.isfinite(value) or value < start_value:
        return RefineResult(space.wrap(start), start_value, exhausted)
    return RefineResult(point, value, exhausted)


def golden_max(f, lo: float, hi: float, tol: float = 1e-6) -> tuple[float, float]:
    """Golden-section maximum of a unimodal scalar function on [lo, hi]."""
    a, b = float(lo), float(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)
