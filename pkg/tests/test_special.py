import numpy as np
import pytest

from noisygrover.circuit import build_grover_circuit, grover_angle, sample_noise
from noisygrover.core import PAULI_X, PAULI_Y, PAULI_Z
from noisygrover.heff import build_h_eff
from noisygrover.special import (
    SpecialBlock,
    block_axis,
    estimate_delta_c_comp,
    gap_squared,
    special_block,
    special_block_fast,
    special_phases_model,
    theta_prime,
    xbar_state,
)
from noisygrover.spectral import quasi_spectrum


@pytest.fixture(scope="module")
def block6():
    c = build_grover_circuit(6)
    real = sample_noise(c.num_gates, seed=7)
    rep = build_h_eff(c, real)
    return c, real, rep, special_block(rep)


class TestBlockExtraction:
    def test_reconstruction(self, block6):
        # b0 I + b . tau reproduces the restricted 2x2 exactly
        c, real, rep, blk = block6
        xbar = xbar_state(6)
        zero = np.zeros(64, dtype=complex)
        zero[0] = 1.0
        basis = np.stack([zero, xbar], axis=1)
        h2 = basis.conj().T @ rep.h_eff.entries @ basis
        model = (
            blk.b0 * np.eye(2)
            + blk.bx * PAULI_X
            + blk.by * PAULI_Y
            + blk.bz * PAULI_Z
        )
        assert np.max(np.abs(h2 - model)) < 1e-12

    def test_fast_path_matches(self, block6):
        c, real, _, blk = block6
        fast = special_block_fast(c, real)
        for name in ("b0", "bx", "by", "bz"):
            assert getattr(fast, name) == pytest.approx(getattr(blk, name), abs=1e-12)

    def test_xbar_normalized(self):
        v = xbar_state(5)
        assert np.linalg.norm(v) == pytest.approx(1.0)
        assert v[0] == 0.0


class TestBlockModel:
    def test_noiseless_gap(self, block6):
        _, _, _, blk = block6
        assert gap_squared(blk, 0.0) == pytest.approx(16 * blk.theta**2)

    def test_theta_prime_noiseless(self, block6):
        _, _, _, blk = block6
        assert theta_prime(blk, 0.0) == pytest.approx(np.pi / 2)

    def test_axis_dominated_by_bz_at_large_delta(self, block6):
        _, _, _, blk = block6
        m = block_axis(blk, 5.0)
        assert abs(m[2]) == pytest.approx(5.0 * abs(blk.bz))

    def test_phases_match_exact(self, block6):
        c, real, _, blk = block6
        for delta in (0.005, 0.01):
            spec = quasi_spectrum(c, real, delta=delta, with_entropies=False)
            exact = np.sort(spec.phases[list(spec.special_indices)])
            model = np.sort(special_phases_model(blk, delta))
            assert np.max(np.abs(exact - model)) < 50 * delta**2

    def test_gap_squared_matches_exact_splitting(self, block6):
        c, real, _, blk = block6
        delta = 0.01
        spec = quasi_spectrum(c, real, delta=delta, with_entropies=False)
        phis = spec.phases[list(spec.special_indices)]
        # splitting measured through the pi branch point
        exact_sq = (2 * np.pi - abs(phis[0] - phis[1])) ** 2
        assert gap_squared(blk, delta) == pytest.approx(exact_sq, rel=0.01)


def synthetic_blocks(L, n, rng, sx, sy, sz):
    out = []
    theta = grover_angle(L)
    for _ in range(n):
        out.append(
            SpecialBlock(
                b0=0.0,
                bx=rng.normal(0, sx),
                by=rng.normal(0, sy),
                bz=rng.normal(0, sz),
                theta=theta,
                num_qubits=L,
            )
        )
    return out


class TestCompThreshold:
    def test_fit_recovers_planted_scalings(self, rng):
        blocks = {}
        for L in (6, 8, 10):
            n = 2**L
            blocks[L] = synthetic_blocks(
                L, 400, rng, sx=np.sqrt(2.0 / n), sy=np.sqrt(2.0 / n), sz=np.sqrt(0.5 * L)
            )
        fit = estimate_delta_c_comp(blocks)
        assert fit["r2_var_bz_vs_L"] > 0.9
        assert fit["r2_var_bxy_vs_invN"] > 0.9
        # Var(bz) = L/2 -> C = 4 Var/L = 2
        assert fit["C"] == pytest.approx(2.0, rel=0.2)
        assert fit["A"] == pytest.approx(16.0, rel=0.1)
        want = np.sqrt(fit["A"] / (fit["C"] * 10 * 1024))
        assert fit["delta_c_comp"][10] == pytest.approx(want)

    def test_pure_theta_limit_flags_degenerate(self, rng):
        blocks = {
            L: synthetic_blocks(L, 10, rng, sx=0.0, sy=0.0, sz=0.0)
            for L in (4, 5, 6)
        }
        fit = estimate_delta_c_comp(blocks)
        assert fit["degenerate"]
        assert fit["delta_c_comp"][6] == float("inf")

    def test_needs_three_sizes(self, rng):
        blocks = {L: synthetic_blocks(L, 10, rng, 0.1, 0.1, 0.1) for L in (4, 5)}
        with pytest.raises(ValueError):
            estimate_delta_c_comp(blocks)
