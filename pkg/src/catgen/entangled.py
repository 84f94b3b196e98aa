"""Conditional cat-qudit generation from a fixed-photon-number entangled input.

A two-mode input sum_m d_m |m>_1 |n-m>_2 is displaced by D_1(i*alpha) and
D_2(alpha'); detecting k photons in mode 2 heralds

    |Psi_nk> = N_nk sum_m d_m c_{n-m,k}(alpha') |m, i*alpha>_1

with success probability exp(-|alpha'|^2) / N_nk^2.  Choosing
d_m = (a_m/2) / c_{n-m,k}(alpha') (suitably normalized) makes the heralded
state exactly the cat qudit.  The input itself factorizes into a product of
beam-splitter monomials (t_m a_1+ + r_m a_2+) through the roots of
f(z) = sum_m d_m z^m / sqrt(m!(n-m)!).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import search
from .cats import CatSpec, alpha_rep_coeffs
from .fock import (
    DEFAULT_TAIL_TOL,
    PROB_FLOOR,
    BeamSplitter,
    CutoffError,
    FockVector,
    MultiModeState,
    apply_displacement_mode,
    displacement_coeff,
    displacement_matrix,
    project_mode,
    suggested_cutoff,
)

DEGENERATE_COEFF_FLOOR = 1e-12


class DegenerateDisplacementError(ValueError):
    """A required c_{n-m,k}(alpha') vanished; the coefficient map is singular."""

    def __init__(self, m: int, value: complex):
        self.m = m
        super().__init__(
            f"|c_(n-m,k)| = {abs(value):.3e} below {DEGENERATE_COEFF_FLOOR:.0e} at m = {m}"
        )


class DegreeDeficientError(ValueError):
    """Top coefficient d_n vanished; f(z) has fewer than n roots."""


@dataclass(frozen=True)
class EntangledInput:
    """Coefficients d_m of sum_m d_m |m>_1 |n-m>_2, unit norm."""

    d: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.d, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "d", arr)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("d must hold coefficients for n >= 1")
        defect = abs(float(np.sum(np.abs(arr) ** 2)) - 1.0)
        if defect > 1e-10:
            raise ValueError(f"input not normalized: off by {defect:.3e}")

    @property
    def n(self) -> int:
        return self.d.size - 1


@dataclass(frozen=True)
class HeraldedResult:
    state: FockVector
    norm_factor: float
    probability: float


@dataclass(frozen=True)
class BSDecomposition:
    """Product form of an EntangledInput: n beam splitters plus a scale."""

    roots: np.ndarray
    splitters: tuple[BeamSplitter, ...]
    leading: complex  # d_n / sqrt(n!)


def _herald_coeffs(n: int, k: int, alpha_prime: complex) -> np.ndarray:
    return np.array([displacement_coeff(n - m, k, alpha_prime) for m in range(n + 1)])


def dm_coefficients(spec: CatSpec, k: int, alpha_prime: complex) -> EntangledInput:
    """Input coefficients that make the k-herald produce the cat qudit."""
    if k < 0:
        raise ValueError("k must be >= 0")
    c = _herald_coeffs(spec.n, k, alpha_prime)
    small = np.abs(c) < DEGENERATE_COEFF_FLOOR
    if np.any(small):
        m = int(np.argmax(small))
        raise DegenerateDisplacementError(m, complex(c[m]))
    d = (alpha_rep_coeffs(spec) / 2.0) / c
    return EntangledInput(d / np.linalg.norm(d))


def heralded_state(
    inp: EntangledInput,
    alpha: float,
    alpha_prime: complex,
    k: int,
    cutoff: int | None = None,
    tol: float = DEFAULT_TAIL_TOL,
) -> HeraldedResult:
    """State of mode 1 after detecting k photons in mode 2.

    When the outcome probability is below PROB_FLOOR the zero state is
    returned with the raw probability; the caller decides what that means.
    """
    n = inp.n
    if cutoff is None:
        cutoff = suggested_cutoff(n + alpha * alpha)
    w = inp.d * _herald_coeffs(n, k, alpha_prime)
    weight = float(np.sum(np.abs(w) ** 2))
    probability = math.exp(-abs(alpha_prime) ** 2) * weight
    if probability < PROB_FLOOR:
        return HeraldedResult(
            FockVector(np.zeros(cutoff + 1, dtype=complex)), 0.0, probability
        )
    norm_factor = 1.0 / math.sqrt(weight)
    coeffs = w * norm_factor
    mat = displacement_matrix(1j * alpha, cutoff)
    amps = mat[:, : n + 1] @ coeffs
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if tail > tol:
        raise CutoffError(f"heralded state tail {tail:.3e} exceeds {tol:.1e}")
    state = FockVector(amps / math.sqrt(1.0 - tail), tail=tail)
    return HeraldedResult(state, norm_factor, probability)


def success_probability_scq(spec: CatSpec, k: int, alpha_prime: complex) -> float:
    """Probability of heralding the cat qudit with the matched input."""
    inp = dm_coefficients(spec, k, alpha_prime)
    w = inp.d * _herald_coeffs(spec.n, k, alpha_prime)
    return math.exp(-abs(alpha_prime) ** 2) * float(np.sum(np.abs(w) ** 2))


def maximize_probability_over_alpha_prime(
    spec: CatSpec, k: int, grid_points: int = 200, tol: float = 1e-5
) -> tuple[float, float]:
    """Best real alpha' in (0, 4] for the heralding probability."""
    grid = np.linspace(0.02, 4.0, grid_points)
    vals = []
    for ap in grid:
        try:
            vals.append(success_probability_scq(spec, k, ap))
        except DegenerateDisplacementError:
            vals.append(-math.inf)
    best = int(np.argmax(vals))
    h = grid[1] - grid[0]

    def objective(ap: float) -> float:
        try:
            return success_probability_scq(spec, k, ap)
        except DegenerateDisplacementError:
            return -math.inf

    return search.golden_max(
        objective, max(grid[0], grid[best] - h), min(4.0, grid[best] + h), tol=tol
    )


def bs_decomposition(inp: EntangledInput) -> BSDecomposition:
    """Factor the input into beam-splitter monomials via polynomial roots.

    Roots of f(z) = sum_m d_m z^m / sqrt(m!(n-m)!) are found from the
    companion matrix; each root maps to t = 1/sqrt(1+|z|^2) (real positive)
    and r = -z t.
    """
    n = inp.n
    if abs(inp.d[n]) < DEGENERATE_COEFF_FLOOR:
        raise DegreeDeficientError(f"|d_n| = {abs(inp.d[n]):.3e}; reduce n or perturb")
    m = np.arange(n + 1)
    coeffs = inp.d * np.exp(-0.5 * (gammaln(m + 1.0) + gammaln(n - m + 1.0)))
    roots = np.polynomial.polynomial.polyroots(coeffs)
    splitters = []
    for z in roots:
        t = 1.0 / math.sqrt(1.0 + abs(z) ** 2)
        splitters.append(BeamSplitter(t, -z * t))
    leading = complex(inp.d[n] * math.exp(-0.5 * math.lgamma(n + 1)))
    return BSDecomposition(roots, tuple(splitters), leading)


def reconstruct_input(decomp: BSDecomposition) -> EntangledInput:
    """Expand the beam-splitter product back into input coefficients.

    Round-trips bs_decomposition exactly (up to float error) on normalized
    inputs; arbitrary splitter lists are renormalized.
    """
    poly = np.array([1.0 + 0j])
    for bs in decomp.splitters:
        poly = np.convolve(poly, np.array([bs.r, bs.t]))
    # poly[j] multiplies a1+^j a2+^(n-j); weight by sqrt(j!(n-j)!).
    n = len(decomp.splitters)
    j = np.arange(n + 1)
    d = poly * np.exp(0.5 * (gammaln(j + 1.0) + gammaln(n - j + 1.0)))
    t_prod = np.prod([bs.t for bs in decomp.splitters])
    if abs(t_prod) > 1e-15:
        d = d * (decomp.leading / t_prod)
    nrm = np.linalg.norm(d)
    if nrm == 0:
        raise ValueError("degenerate splitter product")
    return EntangledInput(d / nrm)


def oracle_scheme_entangled(
    inp: EntangledInput,
    alpha: float,
    alpha_prime: complex,
    k: int,
    cutoffs: tuple[int, int] | None = None,
    tol: float = DEFAULT_TAIL_TOL,
) -> HeraldedResult:
    """Brute-force two-mode simulation of the heralding scheme."""
    n = inp.n
    if cutoffs is None:
        c1 = suggested_cutoff(n + alpha * alpha)
        c2 = suggested_cutoff(n + abs(alpha_prime) ** 2)
        cutoffs = (c1, c2)
    amps = np.zeros((cutoffs[0] + 1, cutoffs[1] + 1), dtype=complex)
    for m in range(n + 1):
        amps[m, n - m] = inp.d[m]
    state = MultiModeState(amps)
    state = apply_displacement_mode(state, 0, 1j * alpha, tol=tol)
    state = apply_displacement_mode(state, 1, alpha_prime, tol=tol)
    reduced, probability = project_mode(state, 1, k)
    vec = reduced.mode_vector()
    norm_factor = (
        math.exp(-0.5 * abs(alpha_prime) ** 2) / math.sqrt(probability)
        if probability > PROB_FLOOR
        else 0.0
    )
    return HeraldedResult(vec, norm_factor, probability)
