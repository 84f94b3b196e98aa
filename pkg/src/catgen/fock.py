"""Truncated Fock-space primitives.

Single-mode states are plain complex amplitude vectors indexed by photon
number.  Displaced number states |k, alpha> = D(alpha)|k> are expanded over
the number basis with matrix elements computed from the generalized-Laguerre
closed form

    <n|D(alpha)|k> = exp(-|alpha|^2/2) * c_kn(alpha),
    c_kn(alpha)    = sqrt(k!/n!) * alpha^(n-k) * L_k^(n-k)(|alpha|^2)   (n >= k)

with the conjugate-symmetric branch for n < k.  A dense multimode tensor
state with beam-splitter / displacement / projection operations serves as a
brute-force cross-check for the analytic scheme formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

# Squared-norm mass allowed to fall off the truncation edge.
DEFAULT_TAIL_TOL = 1e-9

# Projection outcomes below this probability are reported but not renormalized.
PROB_FLOOR = 1e-14


class CutoffError(ValueError):
    """Raised when a truncated operation loses more norm than tolerated."""


def suggested_cutoff(mean_photons: float, extra: int = 0) -> int:
    """Photon-number cap covering a state of the given mean photon number.

    Uses mu + 10*sqrt(mu + 1), which keeps the neglected tail far below the
    default tolerance for the Poissonian-like number distributions handled
    here.
    """
    mu = max(float(mean_photons), 0.0)
    return math.ceil(mu + 10.0 * math.sqrt(mu + 1.0)) + int(extra)


def _log_inv_sqrt_factorial(n: np.ndarray) -> np.ndarray:
    return -0.5 * gammaln(np.asarray(n, dtype=float) + 1.0)


@dataclass(frozen=True)
class FockVector:
    """Single-mode state truncated at a photon-number cutoff.

    amps[j] is the amplitude of |j>, j = 0..cutoff.  ``tail`` records the
    squared-norm mass lost to truncation by the operation that produced the
    vector (0.0 for exact constructions).
    """

    amps: np.ndarray
    tail: float = 0.0

    def __post_init__(self):
        arr = np.ascontiguousarray(self.amps, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("amps must be a non-empty 1-D array")

    @property
    def cutoff(self) -> int:
        return self.amps.size - 1

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm_sq() - 1.0) < tol

    def normalized(self) -> "FockVector":
        n = math.sqrt(self.norm_sq())
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FockVector(self.amps / n, tail=self.tail)

    def padded(self, cutoff: int) -> np.ndarray:
        """Amplitudes extended (or checked) to the requested cutoff."""
        if cutoff < self.cutoff:
            hi = self.amps[cutoff + 1 :]
            if np.any(np.abs(hi) > 0.0):
                raise ValueError("cannot shrink a vector with occupied levels")
            return np.array(self.amps[: cutoff + 1])
        out = np.zeros(cutoff + 1, dtype=complex)
        out[: self.amps.size] = self.amps
        return out

    def inner(self, other: "FockVector") -> complex:
        """<self|other>, conjugating self, over the common padded basis."""
        c = max(self.cutoff, other.cutoff)
        return complex(np.vdot(self.padded(c), other.padded(c)))

    def fidelity(self, other: "FockVector") -> float:
        return abs(self.inner(other)) ** 2


def fock_basis_vector(k: int, cutoff: int) -> FockVector:
    if not 0 <= k <= cutoff:
        raise ValueError(f"photon number {k} outside 0..{cutoff}")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[k] = 1.0
    return FockVector(amps)


@dataclass(frozen=True)
class BeamSplitter:
    """Complex transmission/reflection pair with |t|^2 + |r|^2 = 1."""

    t: complex
    r: complex

    def __post_init__(self):
        defect = abs(abs(self.t) ** 2 + abs(self.r) ** 2 - 1.0)
        if defect > 1e-12:
            raise ValueError(f"non-unitary beam splitter: |t|^2+|r|^2 off by {defect:.3e}")

    @staticmethod
    def balanced() -> "BeamSplitter":
        s = 1.0 / math.sqrt(2.0)
        return BeamSplitter(s, s)


def coherent_state(alpha: complex, cutoff: int, tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Coherent state |alpha> truncated at ``cutoff``.

    amps[n] = exp(-|alpha|^2/2) alpha^n / sqrt(n!).  Raises CutoffError when
    the neglected squared-norm tail exceeds ``tol``.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    n = np.arange(cutoff + 1)
    a = complex(alpha)
    if a == 0:
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[0] = 1.0
        return FockVector(amps)
    mag = np.exp(-0.5 * abs(a) ** 2 + n * math.log(abs(a)) + _log_inv_sqrt_factorial(n))
    phase = np.exp(1j * n * np.angle(a))
    amps = mag * phase
    tail = max(0.0, 1.0 - float(np.sum(mag**2)))
    if tail > tol:
        raise CutoffError(f"coherent state tail {tail:.3e} exceeds tolerance {tol:.1e}")
    return FockVector(amps, tail=tail)


def displacement_coeff(k: int, n: int, alpha: complex) -> complex:
    """Matrix element c_kn(alpha) of |k, alpha> over |n>, exp factor removed.

    |k, alpha> = exp(-|alpha|^2/2) * sum_n c_kn(alpha) |n>.
    """
    if k < 0 or n < 0:
        raise ValueError("indices must be non-negative")
    a = complex(alpha)
    if n >= k:
        lo, hi, arg = k, n, a
    else:
        lo, hi, arg = n, k, -a.conjugate()
    x = abs(a) ** 2
    pref = math.exp(0.5 * (math.lgamma(lo + 1) - math.lgamma(hi + 1)))
    return complex(pref * arg ** (hi - lo) * eval_genlaguerre(lo, hi - lo, x))


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """Truncated unitary D(alpha): entry [n, k] = <n|D(alpha)|k>."""
    a = complex(alpha)
    dim = cutoff + 1
    n = np.arange(dim)[:, None]
    k = np.arange(dim)[None, :]
    lo = np.minimum(n, k)
    d = np.abs(n - k)
    x = abs(a) ** 2
    logmag = -0.5 * x + 0.5 * (gammaln(lo + 1.0) - gammaln(lo + d + 1.0))
    arg = np.where(n >= k, a, -a.conjugate())
    # 0^0 = 1 keeps the diagonal right at alpha = 0.
    power = np.where(d == 0, 1.0 + 0j, arg.astype(complex) ** d)
    return np.exp(logmag) * power * eval_genlaguerre(lo, d, x)


def displaced_number_state(
    k: int, alpha: complex, cutoff: int, tol: float = DEFAULT_TAIL_TOL
) -> FockVector:
    """|k, alpha> = D(alpha)|k> in the number basis, renormalized after truncation."""
    if k > cutoff:
        raise ValueError(f"k={k} exceeds cutoff {cutoff}")
    a = complex(alpha)
    n = np.arange(cutoff + 1)
    kk = np.full_like(n, k)
    lo = np.minimum(n, kk)
    d = np.abs(n - kk)
    x = abs(a) ** 2
    logmag = -0.5 * x + 0.5 * (gammaln(lo + 1.0) - gammaln(lo + d + 1.0))
    arg = np.where(n >= k, a, -a.conjugate())
    power = np.where(d == 0, 1.0 + 0j, arg.astype(complex) ** d)
    amps = np.exp(logmag) * power * eval_genlaguerre(lo, d, x)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if tail > tol:
        raise CutoffError(
            f"displaced number state |{k},{alpha}> tail {tail:.3e} exceeds {tol:.1e}"
        )
    return FockVector(amps / math.sqrt(1.0 - tail), tail=tail)


def compose_displacements(a: complex, b: complex) -> tuple[complex, complex]:
    """D(a)D(b) = phase * D(a+b) with phase = exp((a b* - a* b)/2)."""
    a = complex(a)
    b = complex(b)
    phase = np.exp((a * b.conjugate() - a.conjugate() * b) / 2.0)
    return a + b, complex(phase)


@dataclass(frozen=True)
class MultiModeState:
    """Dense tensor of amplitudes over up to four truncated modes.

    amps.shape = (c0+1, ..., cM-1+1); entry [n0, ..., nM-1] is the amplitude
    of |n0, ..., nM-1>.  Brute-force oracle scale only.
    """

    amps: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.amps, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)
        if arr.ndim < 1 or arr.ndim > 4:
            raise ValueError("1 to 4 modes supported")

    @property
    def num_modes(self) -> int:
        return self.amps.ndim

    @property
    def cutoffs(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.amps.shape)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def mode_vector(self) -> FockVector:
        if self.num_modes != 1:
            raise ValueError("mode_vector requires a single-mode state")
        return FockVector(self.amps)


def product_state(vectors: list[FockVector]) -> MultiModeState:
    amps = vectors[0].amps
    for v in vectors[1:]:
        amps = np.multiply.outer(amps, v.amps)
    return MultiModeState(amps)


def basis_state(occupation: list[int], cutoffs: list[int]) -> MultiModeState:
    if len(occupation) != len(cutoffs):
        raise ValueError("occupation and cutoffs must have the same length")
    return product_state(
        [fock_basis_vector(k, c) for k, c in zip(occupation, cutoffs)]
    )


def _pair_to_front(amps: np.ndarray, i: int, j: int) -> np.ndarray:
    return np.moveaxis(np.moveaxis(amps, i, 0), j, 1)


def apply_beamsplitter(
    state: MultiModeState, mode_i: int, mode_j: int, bs: BeamSplitter
) -> MultiModeState:
    """Mix two modes: a_i+ -> t a_i+ + r a_j+,  a_j+ -> -r* a_i+ + t* a_j+.

    Photon number in the pair is conserved, so both cutoffs must be able to
    hold the largest occupied total; otherwise a CutoffError is raised.
    """
    if mode_i == mode_j:
        raise ValueError("beam splitter needs two distinct modes")
    work = _pair_to_front(state.amps, mode_i, mode_j)
    di, dj = work.shape[0], work.shape[1]
    flat = work.reshape(di, dj, -1)
    occupied = np.max(np.abs(flat), axis=2)
    limit = min(di, dj) - 1
    m_idx, n_idx = np.nonzero(occupied > 1e-14)
    if m_idx.size and int(np.max(m_idx + n_idx)) > limit:
        raise CutoffError(
            f"pair total {int(np.max(m_idx + n_idx))} photons exceeds cutoff {limit}"
        )

    t, r = complex(bs.t), complex(bs.r)
    out = np.zeros_like(flat)
    log_fac = gammaln(np.arange(di + dj) + 1.0)
    for m, n in zip(m_idx, n_idx):
        # (t a + r b)^m (-r* a + t* b)^n expanded over output totals.
        row_m = np.array(
            [math.comb(m, p) * t**p * r ** (m - p) for p in range(m + 1)], dtype=complex
        )
        row_n = np.array(
            [math.comb(n, q) * (-r.conjugate()) ** q * t.conjugate() ** (n - q) for q in range(n + 1)],
            dtype=complex,
        )
        conv = np.convolve(row_m, row_n)
        s = m + n
        p_out = np.arange(s + 1)
        weight = conv * np.exp(
            0.5 * (log_fac[p_out] + log_fac[s - p_out] - log_fac[m] - log_fac[n])
        )
        out[p_out, s - p_out, :] += weight[:, None] * flat[m, n, :]

    out = out.reshape(work.shape)
    out = np.moveaxis(np.moveaxis(out, 1, mode_j), 0, mode_i)
    return MultiModeState(out)


def apply_displacement_mode(
    state: MultiModeState, mode: int, alpha: complex, tol: float = DEFAULT_TAIL_TOL
) -> MultiModeState:
    """Apply D(alpha) to one mode through the truncated displacement matrix."""
    d = state.amps.shape[mode]
    mat = displacement_matrix(alpha, d - 1)
    out = np.tensordot(mat, state.amps, axes=([1], [mode]))
    out = np.moveaxis(out, 0, mode)
    before = state.norm_sq()
    after = float(np.sum(np.abs(out) ** 2))
    loss = abs(before - after)
    if loss > tol * max(before, 1.0):
        raise CutoffError(f"displacement on mode {mode} lost {loss:.3e} of squared norm")
    return MultiModeState(out)


def project_mode(
    state: MultiModeState, mode: int, k: int
) -> tuple[MultiModeState, float]:
    """Project one mode on |k> and drop it.

    Returns the reduced state (renormalized when the outcome probability
    exceeds PROB_FLOOR, the raw slice otherwise) and the probability.
    """
    if state.num_modes < 2:
        raise ValueError("projection would leave no modes")
    if not 0 <= k < state.amps.shape[mode]:
        raise ValueError(f"outcome {k} outside mode {mode} cutoff")
    sl = np.take(state.amps, k, axis=mode)
    prob = float(np.sum(np.abs(sl) ** 2))
    if prob > PROB_FLOOR:
        return MultiModeState(sl / math.sqrt(prob)), prob
    return MultiModeState(np.zeros_like(sl)), prob
