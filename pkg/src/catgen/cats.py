"""Schrodinger cat states and their displaced-number-basis qudit truncations.

An even/odd cat of size beta is N_pm(|-beta> +- |beta>).  Expanding it over
the displaced number states |k, i*alpha> (imaginary displacement, alpha and
beta real) gives coefficients in polar form

    a_k^(+) = 2 (i*A)^k / sqrt(k!) * cos(alpha*beta + k*(phi + pi/2)),
    a_k^(-) = 2 (i*A)^k / sqrt(k!) * sin(alpha*beta + k*(phi + pi/2)),

with A = sqrt(alpha^2 + beta^2) and phi = arctan(alpha/beta).  Keeping only
k <= n and renormalizing yields the cat qudit of dimension n+1; its fidelity
with the exact cat has the closed form implemented by ``fidelity_scq``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import search
from .fock import DEFAULT_TAIL_TOL, CutoffError, FockVector, displacement_matrix, suggested_cutoff

PARITIES = ("even", "odd")


@dataclass(frozen=True)
class CatSpec:
    """One cat qudit: parity, size beta, basis displacement i*alpha, n+1 terms."""

    parity: str
    beta: float
    alpha: float = 0.0
    n: int = 1

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}")
        if self.beta < 0 or (self.parity == "odd" and self.beta == 0):
            raise ValueError("beta must be > 0 (>= 0 for even parity)")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def a_mag(self) -> float:
        """Modulus sqrt(alpha^2 + beta^2) of the polar-form coefficients."""
        return math.hypot(self.alpha, self.beta)

    @property
    def phi(self) -> float:
        return math.atan2(self.alpha, self.beta)


def scs_normalization(parity: str, beta: float) -> float:
    """Normalization N_pm = (2(1 +- exp(-2 beta^2)))^(-1/2) of the cat."""
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    if beta < 0:
        raise ValueError("beta must be non-negative")
    overlap = math.exp(-2.0 * beta * beta)
    if parity == "even":
        return (2.0 * (1.0 + overlap)) ** -0.5
    if beta == 0:
        raise ValueError("odd cat is undefined at beta = 0")
    return (2.0 * (1.0 - overlap)) ** -0.5


# cos(x + k*pi/2) and sin(x + k*pi/2) by quadrant, so that the k*pi/2 shift
# is exact and parity-forbidden coefficients vanish identically at alpha = 0.
def _cos_quarter_shift(x: np.ndarray, k: np.ndarray) -> np.ndarray:
    c, s = np.cos(x), np.sin(x)
    return np.choose(np.mod(k, 4), [c, -s, -c, s])


def _sin_quarter_shift(x: np.ndarray, k: np.ndarray) -> np.ndarray:
    c, s = np.cos(x), np.sin(x)
    return np.choose(np.mod(k, 4), [s, c, -s, -c])


_I_POW = np.array([1, 1j, -1, -1j])


def _trig_factors(parity: str, alpha, beta, n: int):
    """cos/sin factors of a_k for k = 0..n, broadcast over alpha/beta arrays."""
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    k = np.arange(n + 1).reshape((n + 1,) + (1,) * alpha.ndim)
    phi = np.arctan2(alpha, beta)
    x = alpha * beta + k * phi
    if parity == "even":
        return _cos_quarter_shift(x, k)
    return _sin_quarter_shift(x, k)


def _radial_factors(alpha, beta, n: int):
    """A^k / sqrt(k!) for k = 0..n (A = 0 handled exactly)."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    a_mag = np.hypot(alpha, beta)
    k = np.arange(n + 1).reshape((n + 1,) + (1,) * alpha.ndim)
    safe = np.where(a_mag > 0, a_mag, 1.0)
    vals = np.exp(k * np.log(safe) - 0.5 * gammaln(k + 1.0))
    return np.where((a_mag == 0) & (k > 0), 0.0, vals)


def alpha_rep_coeffs(spec: CatSpec) -> np.ndarray:
    """Polar-form coefficients a_k (k = 0..n) of the cat over |k, i*alpha>."""
    trig = _trig_factors(spec.parity, spec.alpha, spec.beta, spec.n)
    radial = _radial_factors(spec.alpha, spec.beta, spec.n)
    k = np.arange(spec.n + 1)
    return 2.0 * _I_POW[np.mod(k, 4)] * radial * trig


def alpha_rep_coeffs_general(parity: str, displacement: complex, beta: float, n: int) -> np.ndarray:
    """Coefficients over |k, displacement> for an arbitrary complex displacement.

    a_k = (exp(-d* b) (-d - b)^k +- exp(d* b) (-d + b)^k) / sqrt(k!).  For a
    purely imaginary displacement this reduces to the polar form of
    ``alpha_rep_coeffs`` (odd parity up to a global factor i).
    """
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}")
    d = complex(displacement)
    k = np.arange(n + 1)
    inv_sqrt_fac = np.exp(-0.5 * gammaln(k + 1.0))
    left = np.exp(-d.conjugate() * beta) * (-d - beta) ** k
    right = np.exp(d.conjugate() * beta) * (-d + beta) ** k
    sign = 1.0 if parity == "even" else -1.0
    return inv_sqrt_fac * (left + sign * right)


def scs_vector(parity: str, beta: float, cutoff: int, tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Exact cat in the number basis, truncated and renormalized.

    Amplitudes sit on even (odd) photon numbers only, so the two parities are
    exactly orthogonal at any cutoff.
    """
    norm = scs_normalization(parity, beta)
    n = np.arange(cutoff + 1)
    amps = np.zeros(cutoff + 1, dtype=complex)
    keep = n % 2 == (0 if parity == "even" else 1)
    if beta == 0:
        amps[0] = 1.0
        return FockVector(amps)
    vals = 2.0 * norm * np.exp(
        -0.5 * beta * beta + n[keep] * math.log(beta) - 0.5 * gammaln(n[keep] + 1.0)
    )
    amps[keep] = vals
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if tail > tol:
        raise CutoffError(f"cat state tail {tail:.3e} exceeds tolerance {tol:.1e}")
    return FockVector(amps / math.sqrt(1.0 - tail), tail=tail)


def scq_vector(spec: CatSpec, cutoff: int | None = None, tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Cat qudit sum_k (a_k/2)|k, i*alpha>, renormalized, in the number basis."""
    if cutoff is None:
        cutoff = suggested_cutoff(spec.n + spec.alpha**2)
    if cutoff < spec.n:
        raise ValueError("cutoff must cover the qudit dimension")
    coeffs = alpha_rep_coeffs(spec) / 2.0
    coeffs /= np.linalg.norm(coeffs)
    mat = displacement_matrix(1j * spec.alpha, cutoff)
    amps = mat[:, : spec.n + 1] @ coeffs
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if tail > tol:
        raise CutoffError(f"cat qudit tail {tail:.3e} exceeds tolerance {tol:.1e}")
    return FockVector(amps / math.sqrt(1.0 - tail), tail=tail)


def _coeff_sq_sum(parity: str, alpha, beta, n: int):
    """sum_k |a_k|^2, broadcast over alpha/beta arrays."""
    trig = _trig_factors(parity, alpha, beta, n)
    radial = _radial_factors(alpha, beta, n)
    return 4.0 * np.sum((radial * trig) ** 2, axis=0)


def fidelity_scq(spec: CatSpec) -> float:
    """Closed-form fidelity between the cat qudit and the exact cat.

    Equals N_pm^2 exp(-A^2) sum_k |a_k|^2 once the qudit normalization is
    substituted; agrees with the explicit-vector overlap.
    """
    return float(fidelity_grid(spec.parity, spec.alpha, spec.beta, spec.n))


def fidelity_grid(parity: str, alpha, beta, n: int):
    """Vectorized ``fidelity_scq`` over broadcastable alpha/beta arrays."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    overlap = np.exp(-2.0 * beta**2)
    norm_sq = 1.0 / (2.0 * (1.0 + overlap)) if parity == "even" else 1.0 / (2.0 * (1.0 - overlap))
    a_sq = alpha**2 + beta**2
    return norm_sq * np.exp(-a_sq) * _coeff_sq_sum(parity, alpha, beta, n)


def scalar_product_scq(n: int, alpha: float, beta: float) -> complex:
    """Overlap <Psi_n^(S-)|Psi_n^(S+)> of the two normalized qudits.

    Termwise a_k^(-)* a_k^(+) is real; at alpha = 0 the cos/sin supports are
    disjoint and the product is exactly zero.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    cos_t = _trig_factors("even", alpha, beta, n)
    sin_t = _trig_factors("odd", alpha, beta, n)
    radial = _radial_factors(alpha, beta, n)
    num = np.sum(radial**2 * sin_t * cos_t)
    den = math.sqrt(np.sum((radial * cos_t) ** 2) * np.sum((radial * sin_t) ** 2))
    return complex(num / den)


def max_fidelity_over_alpha(
    n: int, parity: str, beta: float, grid_points: int = 161, tol: float = 1e-5
) -> tuple[float, float]:
    """Best displacement alpha in [0, 2] for a given size beta.

    The fidelity is even in alpha, so only alpha >= 0 is scanned (the
    optimum is +-alpha_opt).  Grid scan followed by golden-section polish.
    """
    alphas = np.linspace(0.0, 2.0, grid_points)
    values = fidelity_grid(parity, alphas, beta, n)
    best = int(np.argmax(values))
    h = alphas[1] - alphas[0]
    lo = max(0.0, alphas[best] - h)
    hi = min(2.0, alphas[best] + h)
    alpha_opt, f_max = search.golden_max(
        lambda a: float(fidelity_grid(parity, a, beta, n)), lo, hi, tol=tol
    )
    return alpha_opt, f_max


def table1_search(
    n: int, parity: str, threshold: float = 0.99, beta_tol: float = 1e-4
) -> tuple[float, float, float]:
    """Largest cat size whose best-alpha fidelity still reaches ``threshold``.

    Returns (alpha_opt, beta_max, fidelity at the crossing).  Scans beta on a
    coarse grid over (0, 4] for the last crossing, then bisects.
    """
    if not 2 <= n <= 12:
        raise ValueError("n must be in 2..12")
    betas = np.arange(0.05, 4.0 + 1e-9, 0.05)
    above = [max_fidelity_over_alpha(n, parity, b)[1] >= threshold for b in betas]
    if not any(above):
        raise ValueError("fidelity never reaches the threshold on (0, 4]")
    last = max(i for i, ok in enumerate(above) if ok)
    if last == len(betas) - 1:
        alpha_opt, f = max_fidelity_over_alpha(n, parity, betas[-1])
        return alpha_opt, float(betas[-1]), f
    lo, hi = betas[last], betas[last + 1]
    while hi - lo > beta_tol:
        mid = 0.5 * (lo + hi)
        if max_fidelity_over_alpha(n, parity, mid)[1] >= threshold:
            lo = mid
        else:
            hi = mid
    alpha_opt, f = max_fidelity_over_alpha(n, parity, lo)
    return alpha_opt, float(lo), f
