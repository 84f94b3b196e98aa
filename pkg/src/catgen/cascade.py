"""Cat-qudit generation from Fock states through a beam-splitter cascade.

Fock states |k_0>...|k_m> enter modes 0..m; beam splitters BS_0j mix the
main mode with each auxiliary mode in turn, each auxiliary mode is displaced
by alpha_j and post-selected on vacuum, and a final D_0(i*alpha) acts on the
survivor.  Tracking each input photon's creation operator as a linear form
u a_0+ + v reduces the whole cascade to a polynomial in a_0+:

    photon entering mode q:  u = -r_q* prod_{j>q} t_j   (u = prod_j t_j for q=0)
    vacuum projections:      v = -sum_j w_j alpha_j*

with w_j the amplitude left in auxiliary mode j.  The output state is the
normalized expansion of prod_f (u_f a_0+ + v_f)|0> and the no-click
probability follows from the same expansion coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import search
from .cats import CatSpec, alpha_rep_coeffs, scs_normalization, scs_vector
from .fock import (
    DEFAULT_TAIL_TOL,
    BeamSplitter,
    CutoffError,
    FockVector,
    apply_beamsplitter,
    apply_displacement_mode,
    basis_state,
    displacement_matrix,
    project_mode,
    suggested_cutoff,
)


class UntransmittedPhotonError(ValueError):
    """A photon's path has no amplitude left in the main mode (u = 0)."""


class DegreeDeficientError(ValueError):
    """Top qudit coefficient vanished; the target polynomial loses degree."""


@dataclass(frozen=True)
class CascadeConfig:
    """Cascade layout: photons k_0..k_m, m splitters, m displacements, final D(i*alpha)."""

    photons: tuple[int, ...]
    splitters: tuple[BeamSplitter, ...]
    displacements: tuple[complex, ...]
    final_alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "photons", tuple(int(k) for k in self.photons))
        object.__setattr__(self, "splitters", tuple(self.splitters))
        object.__setattr__(self, "displacements", tuple(complex(a) for a in self.displacements))
        if len(self.photons) != len(self.splitters) + 1:
            raise ValueError("need one more photon count than splitters")
        if len(self.displacements) != len(self.splitters):
            raise ValueError("need one displacement per auxiliary mode")
        if any(k < 0 for k in self.photons):
            raise ValueError("photon counts must be >= 0")
        if self.n < 1:
            raise ValueError("total photon number must be >= 1")

    @property
    def m(self) -> int:
        return len(self.splitters)

    @property
    def n(self) -> int:
        return sum(self.photons)


@dataclass(frozen=True)
class FactorRoots:
    """Per-photon displacement factors, overall scale, and success probability."""

    betas: np.ndarray
    leading: complex
    probability: float


def _mode_factors(config: CascadeConfig) -> list[tuple[complex, complex]]:
    """(u, v) of the tracked linear form for a photon entering each mode."""
    m = config.m
    factors = []
    for q in range(m + 1):
        w = np.zeros(m + 1, dtype=complex)
        w[q] = 1.0
        for j, bs in enumerate(config.splitters, start=1):
            w0, wj = w[0], w[j]
            w[0] = bs.t * w0 - bs.r.conjugate() * wj
            w[j] = bs.r * w0 + bs.t.conjugate() * wj
        u = w[0]
        v = -sum(w[j] * config.displacements[j - 1].conjugate() for j in range(1, m + 1))
        factors.append((u, v))
    return factors


def _expansion(config: CascadeConfig) -> tuple[np.ndarray, float, float]:
    """Unit-norm pre-displacement amplitudes, no-click probability, raw norm^2.

    The exp(-sum|alpha_j|^2) factor enters only the probability, so the
    amplitudes stay well scaled even for extreme displacements.
    """
    per_mode = _mode_factors(config)
    poly = np.array([1.0 + 0j])
    for q, k_q in enumerate(config.photons):
        u, v = per_mode[q]
        for _ in range(k_q):
            poly = np.convolve(poly, np.array([v, u]))
    k = np.arange(config.n + 1)
    log_in_fac = sum(math.lgamma(k_q + 1) for k_q in config.photons)
    raw = poly * np.exp(0.5 * (gammaln(k + 1.0) - log_in_fac))
    nrm_sq = float(np.sum(np.abs(raw) ** 2))
    if nrm_sq <= 0.0:
        raise UntransmittedPhotonError("post-selected state has zero amplitude")
    disp_sq = sum(abs(a) ** 2 for a in config.displacements)
    probability = math.exp(-disp_sq) * nrm_sq
    return raw / math.sqrt(nrm_sq), probability, nrm_sq


def cascade_factors(config: CascadeConfig) -> FactorRoots:
    """Factor the post-selected output into per-photon displacement shifts.

    betas lists -v/u once per input photon (multiplicity k_q for mode q).
    ``leading`` is the prefactor N of the product form; ``probability`` the
    no-click probability.
    """
    per_mode = _mode_factors(config)
    betas = []
    u_prod = 1.0 + 0j
    for q, k_q in enumerate(config.photons):
        if k_q == 0:
            continue
        u, v = per_mode[q]
        if abs(u) < 1e-12:
            raise UntransmittedPhotonError(
                f"mode {q} photons have no transmitted amplitude (|u| = {abs(u):.2e})"
            )
        betas.extend([-v / u] * k_q)
        u_prod *= u**k_q
    betas = np.array(betas, dtype=complex)

    _, probability, nrm_sq = _expansion(config)
    log_in_fac = sum(math.lgamma(k_q + 1) for k_q in config.photons)
    leading = complex(u_prod * math.exp(-0.5 * log_in_fac) / math.sqrt(nrm_sq))
    return FactorRoots(betas, leading, probability)


def cascade_output_state(
    config: CascadeConfig, cutoff: int | None = None, tol: float = DEFAULT_TAIL_TOL
) -> tuple[FockVector, float]:
    """Normalized post-selected output state and its success probability."""
    unit, probability, _ = _expansion(config)
    if cutoff is None:
        cutoff = suggested_cutoff(config.n + config.final_alpha**2)
    if cutoff < config.n:
        raise CutoffError(f"cutoff {cutoff} below total photon number {config.n}")
    vec = np.zeros(cutoff + 1, dtype=complex)
    vec[: config.n + 1] = unit
    out = displacement_matrix(1j * config.final_alpha, cutoff) @ vec
    tail = max(0.0, 1.0 - float(np.sum(np.abs(out) ** 2)))
    if tail > tol:
        raise CutoffError(f"final displacement tail {tail:.3e} exceeds {tol:.1e}")
    return FockVector(out / math.sqrt(1.0 - tail), tail=tail), probability


def factors_m1(config: CascadeConfig) -> FactorRoots:
    """Single-splitter closed form for the factor shifts and scale."""
    if config.m != 1:
        raise ValueError("factors_m1 requires m = 1")
    (t1, r1), a1 = (config.splitters[0].t, config.splitters[0].r), config.displacements[0]
    k0, k1 = config.photons
    betas = np.array(
        [(r1 / t1) * a1.conjugate()] * k0
        + [(-t1.conjugate() / r1.conjugate()) * a1.conjugate()] * k1,
        dtype=complex,
    )
    probability = cascade_factors(config).probability
    leading = (
        t1**k0
        * (-r1.conjugate()) ** k1
        / math.sqrt(math.factorial(k0) * math.factorial(k1))
        * math.exp(-0.5 * abs(a1) ** 2)
        / math.sqrt(probability)
    )
    return FactorRoots(betas, complex(leading), probability)


def factors_m2(config: CascadeConfig) -> FactorRoots:
    """Two-splitter closed form for the factor shifts and scale."""
    if config.m != 2:
        raise ValueError("factors_m2 requires m = 2")
    t1, r1 = config.splitters[0].t, config.splitters[0].r
    t2, r2 = config.splitters[1].t, config.splitters[1].r
    a1, a2 = config.displacements
    k0, k1, k2 = config.photons
    b0 = (t1 * r2 * a2.conjugate() + r1 * a1.conjugate()) / (t1 * t2)
    b1 = (r1.conjugate() * r2 * a2.conjugate() - t1.conjugate() * a1.conjugate()) / (
        r1.conjugate() * t2
    )
    b2 = t2.conjugate() * a2.conjugate() / (-r2.conjugate())
    betas = np.array([b0] * k0 + [b1] * k1 + [b2] * k2, dtype=complex)
    probability = cascade_factors(config).probability
    leading = (
        (t1 * t2) ** k0
        * (-r1.conjugate() * t2) ** k1
        * (-r2.conjugate()) ** k2
        / math.sqrt(math.factorial(k0) * math.factorial(k1) * math.factorial(k2))
        * math.exp(-0.5 * (abs(a1) ** 2 + abs(a2) ** 2))
        / math.sqrt(probability)
    )
    return FactorRoots(betas, complex(leading), probability)


def oracle_cascade(
    config: CascadeConfig,
    cutoffs: tuple[int, ...] | None = None,
    tol: float = DEFAULT_TAIL_TOL,
) -> tuple[FockVector, float]:
    """Brute-force multimode simulation of the cascade (m <= 3)."""
    m = config.m
    if m > 3:
        raise ValueError("oracle limited to m <= 3 (four modes)")
    n = config.n
    if cutoffs is None:
        main = suggested_cutoff(n + config.final_alpha**2)
        aux = tuple(
            max(n, suggested_cutoff(n + abs(a) ** 2)) for a in config.displacements
        )
        cutoffs = (main,) + aux
    state = basis_state(list(config.photons), list(cutoffs))
    for j, bs in enumerate(config.splitters, start=1):
        state = apply_beamsplitter(state, 0, j, bs)
    for j, a in enumerate(config.displacements, start=1):
        state = apply_displacement_mode(state, j, a, tol=tol)
    probability = 1.0
    for j in range(m, 0, -1):
        state, p = project_mode(state, j, 0)
        probability *= p
    vec = state.mode_vector()
    out = displacement_matrix(1j * config.final_alpha, vec.cutoff) @ vec.amps
    tail = max(0.0, 1.0 - float(np.sum(np.abs(out) ** 2)))
    if tail > tol:
        raise CutoffError(f"final displacement tail {tail:.3e} exceeds {tol:.1e}")
    return FockVector(out / math.sqrt(1.0 - tail), tail=tail), probability


def scq_fock_coeffs(spec: CatSpec) -> np.ndarray:
    """Coefficients c_k of the cat qudit in the frame before D(i*alpha)."""
    coeffs = alpha_rep_coeffs(spec) / 2.0
    return coeffs / np.linalg.norm(coeffs)


def target_roots(spec: CatSpec) -> np.ndarray:
    """Displacement shifts gamma_k whose product form rebuilds the cat qudit.

    Roots of sum_k (c_k / sqrt(k!)) x^k, found from the companion matrix.
    """
    c = scq_fock_coeffs(spec)
    if abs(c[spec.n]) < 1e-12:
        raise DegreeDeficientError(f"|c_n| = {abs(c[spec.n]):.3e}")
    k = np.arange(spec.n + 1)
    return np.polynomial.polynomial.polyroots(c * np.exp(-0.5 * gammaln(k + 1.0)))


def product_form_state(shifts: np.ndarray, cutoff: int) -> FockVector:
    """Normalized state prod_k (a+ - shift_k)|0> in the number basis."""
    poly = np.array([1.0 + 0j])
    for s in shifts:
        poly = np.convolve(poly, np.array([-s, 1.0 + 0j]))
    n = len(shifts)
    k = np.arange(n + 1)
    amps = poly * np.exp(0.5 * gammaln(k + 1.0))
    amps = amps / np.linalg.norm(amps)
    out = np.zeros(cutoff + 1, dtype=complex)
    out[: n + 1] = amps
    return FockVector(out)


@dataclass(frozen=True)
class FitResult:
    config: CascadeConfig
    fidelity: float
    probability: float
    converged: bool


def _cat_overlap_sq(parity: str, beta: float, alpha: float, psi: np.ndarray) -> float:
    """|<cat| D(i*alpha) |psi>|^2 for psi given in the number basis.

    Uses the cat's displaced-number expansion, so no truncation enters.
    """
    spec = CatSpec(parity, beta, alpha, len(psi) - 1)
    a = alpha_rep_coeffs(spec)
    norm = scs_normalization(parity, beta)
    amp = norm * math.exp(-0.5 * spec.a_mag**2) * np.vdot(a, psi)
    return float(abs(amp) ** 2)


def _poly_amps(shifts: np.ndarray) -> np.ndarray:
    poly = np.array([1.0 + 0j])
    for s in shifts:
        poly = np.convolve(poly, np.array([-s, 1.0 + 0j]))
    k = np.arange(len(shifts) + 1)
    amps = poly * np.exp(0.5 * gammaln(k + 1.0))
    return amps / np.linalg.norm(amps)


def _shift_objective(parity: str, beta: float, photons: tuple[int, ...]):
    """Fidelity with the exact cat as a function of (group shifts, final alpha)."""
    groups = [k for k in photons if k > 0]

    def value(x: np.ndarray) -> float:
        shifts = x[:-1:2] + 1j * x[1:-1:2]
        alpha = x[-1]
        expanded = np.concatenate([[s] * k for s, k in zip(shifts, groups)])
        return _cat_overlap_sq(parity, beta, alpha, _poly_amps(expanded))

    return value, len(groups)


def _greedy_groups(roots: np.ndarray, sizes: list[int], rng) -> np.ndarray:
    """Cluster roots into groups of the given sizes; returns group means."""
    order = rng.permutation(len(roots))
    pool = list(roots[order])
    centers = []
    for size in sizes:
        seedpt = pool.pop(0)
        chosen = [seedpt]
        for _ in range(size - 1):
            dists = [abs(p - np.mean(chosen)) for p in pool]
            chosen.append(pool.pop(int(np.argmin(dists))))
        centers.append(np.mean(chosen))
    return np.array(centers, dtype=complex)


def _realize_parameters(
    targets: np.ndarray,
    photons: tuple[int, ...],
    parity: str,
    beta: float,
    final_alpha: float,
    rng,
    attempts: int = 8,
) -> CascadeConfig | None:
    """Find splitters/displacements whose factor shifts hit the target groups.

    Shifts for modes m..1 are pinned exactly by back-substitution (each
    alpha_q follows from its group target given the later stages); the
    mode-0 shift is steered by a simplex search over the splitter angles
    maximizing the end-to-end fidelity.
    """
    m = len(photons) - 1
    groups = [q for q in range(m + 1) if photons[q] > 0]
    by_mode = dict(zip(groups, targets))

    def build(x: np.ndarray) -> CascadeConfig | None:
        thetas = x[0:m]
        phi_t = x[m : 2 * m]
        phi_r = x[2 * m : 3 * m]
        alpha_f = x[3 * m]
        ts = np.cos(thetas) * np.exp(1j * phi_t)
        rs = np.sin(thetas) * np.exp(1j * phi_r)
        if np.any(np.abs(ts) < 1e-6) or np.any(np.abs(rs) < 1e-6):
            return None
        # The mode-q shift is (t_q* a_q* + sum_{j>q} w_j a_j*) / u_q with
        # u_q = -r_q* prod_{j>q} t_j and w_j = -r_j r_q* prod_{q<l<j} t_l,
        # so pinning shift_q determines a_q* once later stages are fixed.
        alphas_conj = np.zeros(m, dtype=complex)
        for q in range(m, 0, -1):
            target = by_mode.get(q)
            if target is None:
                continue
            u_q = -rs[q - 1].conjugate() * np.prod(ts[q:])
            acc = 0.0 + 0j
            for j in range(q + 1, m + 1):
                w_j = rs[j - 1] * (-rs[q - 1].conjugate()) * np.prod(ts[q : j - 1])
                acc += w_j * alphas_conj[j - 1]
            alphas_conj[q - 1] = (target * u_q - acc) / ts[q - 1].conjugate()
        if float(np.sum(np.abs(alphas_conj) ** 2)) > 40.0:
            return None
        splitters = tuple(BeamSplitter(t, r) for t, r in zip(ts, rs))
        alphas = tuple(a.conjugate() for a in alphas_conj)
        return CascadeConfig(tuple(photons), splitters, alphas, float(alpha_f))

    def objective(x: np.ndarray) -> float:
        cfg = build(x)
        if cfg is None:
            return -1.0
        try:
            unit, probability, _ = _expansion(cfg)
        except UntransmittedPhotonError:
            return -1.0
        fid = _cat_overlap_sq(parity, beta, cfg.final_alpha, unit)
        # Mild reward for a workable success probability; fidelity dominates.
        bonus = 0.002 * min(0.0, math.log10(max(probability, 1e-30)) + 2.5)
        return fid + bonus

    best_cfg, best_val = None, -1.0
    for _ in range(attempts):
        x0 = np.concatenate(
            [
                rng.uniform(0.3, 1.2, size=m),
                rng.uniform(-math.pi, math.pi, size=2 * m),
                [final_alpha],
            ]
        )
        dims = tuple(
            [search.DimSpec(f"theta{j}", 0.05, math.pi / 2 - 0.05) for j in range(m)]
            + [search.DimSpec(f"phi{j}", -math.pi, math.pi, "angular") for j in range(2 * m)]
            + [search.DimSpec("alpha", -2.0, 2.0)]
        )
        space = search.SearchSpace(dims, budget=4000)
        res = search.refine(objective, x0, space, tol=1e-10)
        if res.value > best_val:
            best_val = res.value
            best_cfg = build(space.wrap(res.point))
    return best_cfg


def fit_cascade(
    spec: CatSpec,
    m: int,
    photons: tuple[int, ...],
    restarts: int = 64,
    seed: int = 0,
    floor: float = 0.0,
) -> FitResult:
    """Search cascade parameters approximating the cat of the given spec.

    Two stages per seeded restart: optimize the factor-shift groups (one
    complex shift per occupied mode plus the final displacement) against the
    exact cat, then realize those shifts with beam-splitter / displacement
    parameters.  Returns the best end-to-end result; ``converged`` reflects
    the caller's fidelity floor.
    """
    photons = tuple(int(k) for k in photons)
    if len(photons) != m + 1:
        raise ValueError("photons must list k_0..k_m")
    if sum(photons) != spec.n:
        raise ValueError("total photon number must equal spec.n")

    gamma = target_roots(spec)
    sizes = [k for k in photons if k > 0]
    objective, n_groups = _shift_objective(spec.parity, spec.beta, photons)
    dims = tuple(
        [search.DimSpec(f"s{j}{c}", -6.0, 6.0) for j in range(n_groups) for c in "xy"]
        + [search.DimSpec("alpha", -2.0, 2.0)]
    )
    space = search.SearchSpace(dims, budget=6000)

    best: FitResult | None = None
    for restart in range(restarts):
        rng = search.rng_for(seed, restart)
        centers = _greedy_groups(gamma, sizes, rng)
        if restart > 0:
            centers = centers + rng.normal(scale=0.15, size=centers.shape) + 1j * rng.normal(
                scale=0.15, size=centers.shape
            )
        x0 = np.empty(2 * n_groups + 1)
        x0[:-1:2] = centers.real
        x0[1:-1:2] = centers.imag
        x0[-1] = spec.alpha + rng.normal(scale=0.05 if restart else 0.0)
        res = search.refine(objective, x0, space, tol=1e-12)
        shifts = res.point[:-1:2] + 1j * res.point[1:-1:2]
        cfg = _realize_parameters(
            shifts, photons, spec.parity, spec.beta, res.point[-1], rng
        )
        if cfg is None:
            continue
        state, probability = cascade_output_state(cfg)
        cat = scs_vector(spec.parity, spec.beta, state.cutoff)
        fidelity = state.fidelity(cat)
        cand = FitResult(cfg, fidelity, probability, fidelity >= floor)
        if best is None or cand.fidelity > best.fidelity:
            best = cand
    if best is None:
        raise UntransmittedPhotonError("no restart produced a realizable cascade")
    return best
