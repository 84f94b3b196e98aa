import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catgen.cats import CatSpec, scq_vector
from catgen.entangled import (
    BSDecomposition,
    DegenerateDisplacementError,
    DegreeDeficientError,
    EntangledInput,
    bs_decomposition,
    dm_coefficients,
    heralded_state,
    maximize_probability_over_alpha_prime,
    oracle_scheme_entangled,
    reconstruct_input,
    success_probability_scq,
)
from catgen.fock import BeamSplitter, displacement_coeff


def random_input(n: int, seed: int) -> EntangledInput:
    rng = np.random.default_rng(seed)
    d = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return EntangledInput(d / np.linalg.norm(d))


TABLE2_COL1 = CatSpec("even", 1.03, 0.328, 3)


class TestDmCoefficients:
    def test_normalized(self):
        inp = dm_coefficients(TABLE2_COL1, 0, 1.426)
        assert abs(float(np.sum(np.abs(inp.d) ** 2)) - 1.0) < 1e-12

    def test_zero_herald_uses_conjugate_coherent_row(self):
        # k = 0 heralding divides by c_{n-m,0} = (-a'*)^(n-m)/sqrt((n-m)!).
        n, ap = 3, 1.426
        for m in range(n + 1):
            c = displacement_coeff(n - m, 0, ap)
            expected = (-ap) ** (n - m) / math.sqrt(math.factorial(n - m))
            assert c == pytest.approx(expected, rel=1e-12)

    def test_degenerate_displacement_reported(self):
        # c_{1,1}(1) = 0, so k = 1 heralding at alpha' = 1 is singular at m = n-1.
        spec = CatSpec("even", 1.0, 0.0, 2)
        with pytest.raises(DegenerateDisplacementError) as err:
            dm_coefficients(spec, 1, 1.0)
        assert err.value.m == 1


class TestHeraldedState:
    def test_reproduces_cat_qudit(self):
        inp = dm_coefficients(TABLE2_COL1, 0, 1.426)
        res = heralded_state(inp, TABLE2_COL1.alpha, 1.426, 0)
        target = scq_vector(TABLE2_COL1, res.state.cutoff)
        assert res.state.fidelity(target) > 1 - 1e-8

    def test_reference_probability(self):
        prob = success_probability_scq(TABLE2_COL1, 0, 1.426)
        assert prob == pytest.approx(0.20, abs=0.01)

    @pytest.mark.parametrize("alpha_prime", [0.5, 1.4, 2.0])
    def test_probabilities_sum_to_one(self, alpha_prime):
        inp = random_input(4, 11)
        total = sum(
            heralded_state(inp, 0.3, alpha_prime, k).probability for k in range(60)
        )
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_impossible_outcome_signalled(self):
        # alpha' = 0 heralding k photons picks the lone d_{n-k} term.
        d = np.zeros(4, dtype=complex)
        d[3] = 1.0
        inp = EntangledInput(d)
        res = heralded_state(inp, 0.0, 0.0, 2)
        assert res.probability < 1e-14
        assert res.state.norm_sq() == 0.0

    def test_zero_displacements_select_single_term(self):
        inp = random_input(3, 5)
        for k in range(4):
            res = heralded_state(inp, 0.0, 0.0, k)
            assert res.probability == pytest.approx(abs(inp.d[3 - k]) ** 2, abs=1e-12)

    def test_closed_form_matches_literal_probability_formula(self):
        # P = F^2 N'^2 / N_n^2 once the square dropped in print is restored.
        spec = TABLE2_COL1
        ap, k = 1.426, 0
        prob = success_probability_scq(spec, k, ap)
        from catgen.cats import alpha_rep_coeffs

        a = alpha_rep_coeffs(spec)
        c = np.array([displacement_coeff(spec.n - m, k, ap) for m in range(spec.n + 1)])
        n_prime_sq = 1.0 / float(np.sum(np.abs(a / 2.0) ** 2 / np.abs(c) ** 2))
        n_n_sq = 1.0 / float(np.sum(np.abs(a / 2.0) ** 2))
        literal = math.exp(-abs(ap) ** 2) * n_prime_sq / n_n_sq
        assert prob == pytest.approx(literal, rel=1e-12)


class TestOracleAgreement:
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_random_inputs_match_oracle(self, k):
        inp = random_input(2, seed=21 + k)
        alpha, ap = 0.4, 1.1
        fast = heralded_state(inp, alpha, ap, k)
        slow = oracle_scheme_entangled(inp, alpha, ap, k)
        assert fast.state.fidelity(slow.state) > 1 - 1e-8
        assert fast.probability == pytest.approx(slow.probability, abs=1e-8)

    def test_cat_construction_matches_oracle(self):
        inp = dm_coefficients(TABLE2_COL1, 0, 1.426)
        fast = heralded_state(inp, TABLE2_COL1.alpha, 1.426, 0)
        slow = oracle_scheme_entangled(inp, TABLE2_COL1.alpha, 1.426, 0)
        assert fast.state.fidelity(slow.state) > 1 - 1e-8
        assert fast.probability == pytest.approx(slow.probability, abs=1e-8)


class TestDecomposition:
    def test_trivial_single_photon(self):
        inp = EntangledInput(np.array([0.0, 1.0], dtype=complex))
        decomp = bs_decomposition(inp)
        assert len(decomp.splitters) == 1
        assert decomp.splitters[0].t == pytest.approx(1.0)
        assert decomp.splitters[0].r == pytest.approx(0.0)

    def test_degree_deficient_rejected(self):
        inp = EntangledInput(np.array([1.0, 0.0], dtype=complex))
        with pytest.raises(DegreeDeficientError):
            bs_decomposition(inp)

    def test_balanced_pair_expansion(self):
        # (a1+ + a2+)^2|00> / (2 sqrt 2) has d = (1/2, 1/sqrt2, 1/2).
        s = 1 / math.sqrt(2)
        decomp = BSDecomposition(
            roots=np.array([-1.0, -1.0]),
            splitters=(BeamSplitter(s, s), BeamSplitter(s, s)),
            leading=0.25 * math.sqrt(2.0),
        )
        d = reconstruct_input(decomp).d
        assert np.allclose(d, [0.5, s, 0.5], atol=1e-12)

    def test_all_transmitting_product(self):
        splitters = tuple(BeamSplitter(1.0, 0.0) for _ in range(4))
        decomp = BSDecomposition(
            roots=np.zeros(4), splitters=splitters, leading=1.0 / math.sqrt(24.0)
        )
        d = reconstruct_input(decomp).d
        assert np.allclose(d, [0, 0, 0, 0, 1], atol=1e-12)

    @given(n=st.integers(1, 12), seed=st.integers(0, 2**31))
    @settings(max_examples=40, deadline=None)
    def test_round_trip(self, n, seed):
        inp = random_input(n, seed)
        if abs(inp.d[n]) < 1e-6:  # keep the polynomial comfortably full-degree
            return
        rebuilt = reconstruct_input(bs_decomposition(inp))
        fid = abs(np.vdot(rebuilt.d, inp.d)) ** 2
        assert fid > 1 - 1e-10

    def test_round_trip_preserves_phase(self):
        inp = random_input(6, 3)
        rebuilt = reconstruct_input(bs_decomposition(inp))
        assert np.max(np.abs(rebuilt.d - inp.d)) < 1e-10

    def test_splitters_unitary(self):
        decomp = bs_decomposition(dm_coefficients(TABLE2_COL1, 0, 1.426))
        for bs in decomp.splitters:
            assert abs(abs(bs.t) ** 2 + abs(bs.r) ** 2 - 1.0) < 1e-12

    def test_roots_map_to_splitters(self):
        decomp = bs_decomposition(dm_coefficients(TABLE2_COL1, 0, 1.426))
        for z, bs in zip(decomp.roots, decomp.splitters):
            denom = math.sqrt(1 + abs(z) ** 2)
            assert bs.t == pytest.approx(1 / denom, rel=1e-10)
            assert bs.r == pytest.approx(-z / denom, rel=1e-10)


class TestProbabilityMaximization:
    def test_reference_optimum_region(self):
        ap_opt, p_max = maximize_probability_over_alpha_prime(TABLE2_COL1, 0)
        assert p_max == pytest.approx(0.20, abs=0.01)
        assert ap_opt == pytest.approx(1.426, abs=0.15)

    def test_maximum_decreases_with_n(self):
        specs = [
            CatSpec("even", 1.03, 0.328, 3),
            CatSpec("even", 1.64, 0.0, 6),
            CatSpec("even", 2.12, 0.23, 9),
        ]
        values = [maximize_probability_over_alpha_prime(s, 0)[1] for s in specs]
        assert values[0] > values[1] > values[2]
        assert all(0.0 <= v <= 1.0 for v in values)


class TestFixtureColumns:
    def test_every_column_heralds_its_qudit(self):
        from catgen.tables import load_herald_table

        for parity in ("even", "odd"):
            for col in load_herald_table(parity):
                spec = CatSpec(parity, col.beta, col.alpha, col.n)
                inp = dm_coefficients(spec, 0, col.alpha_prime)
                res = heralded_state(inp, col.alpha, col.alpha_prime, 0)
                target = scq_vector(spec, res.state.cutoff)
                assert res.state.fidelity(target) > 1 - 1e-8
