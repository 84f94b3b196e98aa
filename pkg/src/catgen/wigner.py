"""Wigner functions on a phase-space grid.

Convention: hbar = 1, x = (a + a+)/sqrt(2), W normalized to integrate to 1,
so W_vac(0, 0) = 1/pi and the single-photon dip is -1/pi.  The value at a
point is (1/pi) <psi| D(g) Pi D+(g) |psi> with g = (x + i p)/sqrt(2) and Pi
the photon-number parity, evaluated through the displaced-number matrix
elements D(2g) so pure-state overlaps obey |<psi1|psi2>|^2 = 2 pi Int W1 W2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre

from .fock import FockVector

SUPPORT_FLOOR = 1e-12


@dataclass(frozen=True)
class WignerGrid:
    """Wigner values on a rectangular phase-space grid.

    values[i, j] = W(x[j], p[i]).  ``warning`` is set when the grid was too
    coarse or too narrow for the state (normalization check failed).
    """

    x: np.ndarray
    p: np.ndarray
    values: np.ndarray
    warning: str | None = None

    def __post_init__(self):
        for name in ("x", "p", "values"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.values.shape != (self.p.size, self.x.size):
            raise ValueError("values shape must be (len(p), len(x))")

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])

    def integral(self) -> float:
        return float(np.sum(self.values)) * self.dx * self.dp

    def same_grid(self, other: "WignerGrid", tol: float = 1e-12) -> bool:
        return (
            self.x.size == other.x.size
            and self.p.size == other.p.size
            and np.allclose(self.x, other.x, atol=tol)
            and np.allclose(self.p, other.p, atol=tol)
        )


def default_bounds(alpha: float = 0.0, beta: float = 0.0) -> float:
    """Half-width covering the displaced cat plus a 4-unit margin."""
    return max(6.0, abs(alpha) + abs(beta) + 4.0)


def support_bounds(state: FockVector) -> float:
    """Half-width covering the state's occupied photon-number shell.

    A state reaching photon number n extends to radius ~sqrt(2n+1) in these
    quadratures; clipping that shell is what breaks the overlap quadrature.
    """
    mags = np.abs(state.amps)
    occupied = np.nonzero(mags > SUPPORT_FLOOR * np.max(mags))[0]
    top = int(occupied[-1]) if occupied.size else 0
    return max(6.0, math.sqrt(2.0 * top + 1.0) + 3.0)


def wigner_of(
    state: FockVector,
    x_min: float | None = None,
    x_max: float | None = None,
    p_min: float | None = None,
    p_max: float | None = None,
    resolution: int = 256,
    norm_tol: float = 1e-4,
) -> WignerGrid:
    """Wigner function of a normalized pure state.

    Bounds left as None are auto-widened to cover the state's support.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    half = support_bounds(state)
    x_min = -half if x_min is None else x_min
    x_max = half if x_max is None else x_max
    p_min = -half if p_min is None else p_min
    p_max = half if p_max is None else p_max
    x = np.linspace(x_min, x_max, resolution)
    p = np.linspace(p_min, p_max, resolution)
    xs = x[None, :]
    ps = p[:, None]
    # gamma = 2 * (x + i p)/sqrt(2): displacement seen by the parity kernel.
    gamma = math.sqrt(2.0) * (xs + 1j * ps)
    g_sq = np.abs(gamma) ** 2
    env = np.exp(-0.5 * g_sq)

    amps = state.amps
    peak = float(np.max(np.abs(amps)))
    if peak == 0.0:
        raise ValueError("Wigner function of the zero state is undefined")
    top = int(np.max(np.nonzero(np.abs(amps) > SUPPORT_FLOOR * peak)[0]))
    w = np.zeros_like(g_sq)
    for k in range(top + 1):
        if abs(amps[k]) <= SUPPORT_FLOOR:
            continue
        w += (abs(amps[k]) ** 2) * (-1.0) ** k * eval_genlaguerre(k, 0, g_sq)
        for n in range(k + 1, top + 1):
            if abs(amps[n]) <= SUPPORT_FLOOR:
                continue
            d = n - k
            pref = math.exp(0.5 * (math.lgamma(k + 1) - math.lgamma(n + 1)))
            cross = (
                np.conjugate(amps[k])
                * amps[n]
                * (-1.0) ** n
                * pref
                * gamma**d
                * eval_genlaguerre(k, d, g_sq)
            )
            w += 2.0 * cross.real
    values = env * w / math.pi

    grid = WignerGrid(x, p, values)
    defect = abs(grid.integral() - 1.0)
    if defect > norm_tol:
        grid = WignerGrid(x, p, values, warning=f"normalization off by {defect:.2e}")
    return grid


def wigner_fidelity(w1: WignerGrid, w2: WignerGrid) -> float:
    """Pure-state overlap 2 pi Int W1 W2 dx dp on a shared grid."""
    if not w1.same_grid(w2):
        raise ValueError("Wigner grids differ; recompute on a common grid")
    return 2.0 * math.pi * float(np.sum(w1.values * w2.values)) * w1.dx * w1.dp


def purity(w: WignerGrid) -> float:
    return 2.0 * math.pi * float(np.sum(w.values**2)) * w.dx * w.dp


def negativity_summary(w: WignerGrid) -> tuple[float, float]:
    """(minimum value, integrated negative volume) of the grid."""
    neg = np.clip(-w.values, 0.0, None)
    return float(np.min(w.values)), float(np.sum(neg)) * w.dx * w.dp
