import numpy as np
import pytest

from noisygrover.core import (
    HADAMARD,
    PAULI_X,
    PAULI_Z,
    aligned_maxnorm_distance,
)
from noisygrover.circuit import (
    GateSpec,
    GroverCircuit,
    NoiseRealization,
    abstract_grover,
    apply_circuit_dagger_to_array,
    apply_circuit_to_array,
    build_grover_circuit,
    circuit_depth,
    conjugate_by_vw,
    decompose_mcx,
    dense_unitary,
    expected_gate_counts,
    gate_unitary_2x2,
    grover_angle,
    rotation_2x2,
    sample_noise,
)


def mcx_dense(L):
    n = 2**L
    m = np.eye(n, dtype=complex)
    # controls 0..L-2 all set: swaps the last two basis states
    m[n - 2 : n, n - 2 : n] = np.array([[0, 1], [1, 0]])
    return m


class TestGateConventions:
    def test_pi_rotation_is_sigma(self):
        for sigma in (PAULI_X, PAULI_Z, HADAMARD):
            assert np.allclose(rotation_2x2(sigma, np.pi), sigma, atol=1e-14)

    def test_rotation_group_property(self, rng):
        a, b = 0.7, -1.3
        got = rotation_2x2(PAULI_X, a) @ rotation_2x2(PAULI_X, b)
        assert np.allclose(got, rotation_2x2(PAULI_X, a + b), atol=1e-14)

    def test_crx_pi_is_x_block(self):
        g = GateSpec("crx", (0, 1), np.pi)
        assert np.allclose(gate_unitary_2x2(g), PAULI_X, atol=1e-14)

    def test_noisy_single_qubit_angle(self):
        g = GateSpec("x", (0,), np.pi)
        got = gate_unitary_2x2(g, noise_angle=0.05)
        want = rotation_2x2(PAULI_X, np.pi + 0.1)
        assert np.allclose(got, want, atol=1e-14)


class TestGateSpec:
    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            GateSpec("y", (0,), np.pi)

    def test_crx_needs_two_qubits(self):
        with pytest.raises(ValueError):
            GateSpec("crx", (0,), np.pi)
        with pytest.raises(ValueError):
            GateSpec("crx", (1, 1), np.pi)

    def test_single_qubit_angle_fixed(self):
        with pytest.raises(ValueError):
            GateSpec("x", (0,), np.pi / 2)


class TestNoise:
    def test_sample_deterministic(self):
        a = sample_noise(10, seed=42)
        b = sample_noise(10, seed=42)
        assert np.array_equal(a.epsilons, b.epsilons)

    def test_sample_range(self):
        eps = sample_noise(5000, seed=1).epsilons
        assert np.all(np.abs(eps) <= 1.0)
        assert abs(np.mean(eps)) < 0.05

    def test_epsilons_bounded(self):
        with pytest.raises(ValueError):
            NoiseRealization(np.array([1.5]), 0.1, 0)

    def test_with_delta_keeps_epsilons(self):
        r = sample_noise(8, seed=3, delta=0.1)
        r2 = r.with_delta(0.2)
        assert np.array_equal(r.epsilons, r2.epsilons)
        assert r2.delta == 0.2


class TestMcx:
    @pytest.mark.parametrize("L", [3, 4, 5, 6])
    def test_exact(self, L):
        gates = decompose_mcx(L)
        circ = GroverCircuit(
            tuple(g for g in gates), L, "0" * L
        )
        got = apply_circuit_to_array(np.eye(2**L, dtype=complex), circ)
        assert np.max(np.abs(got - mcx_dense(L))) < 1e-12

    @pytest.mark.parametrize("L", [3, 4, 5, 6, 7, 8])
    def test_gate_count(self, L):
        assert len(decompose_mcx(L)) == 2 * L * L - 6 * L + 5

    @pytest.mark.parametrize("L", [4, 5, 6, 7, 8])
    def test_depth_bound(self, L):
        assert circuit_depth(decompose_mcx(L)) <= 8 * L - 20

    def test_small_L_rejected(self):
        with pytest.raises(ValueError):
            decompose_mcx(2)


class TestGroverCircuit:
    @pytest.mark.parametrize("L", [2, 3, 4, 5, 6])
    def test_counts_formula(self, L):
        c = build_grover_circuit(L)
        if L >= 3:
            assert c.counts == expected_gate_counts(L)
        assert c.counts[1] == len([g for g in c.gates if g.kind != "crx"])

    @pytest.mark.parametrize("L", [3, 4, 5])
    def test_matches_abstract(self, L, rng):
        for _ in range(3):
            target = "".join(rng.choice(["0", "1"], size=L))
            c = build_grover_circuit(L, target)
            d = aligned_maxnorm_distance(
                dense_unitary(c).entries, abstract_grover(L, target).entries
            )
            assert d < 1e-12

    def test_noise_slots_cover_all_gates(self):
        c = build_grover_circuit(5)
        slots = sorted(g.noise_slot for g in c.gates)
        assert slots == list(range(c.num_gates))

    def test_json_roundtrip(self):
        c = build_grover_circuit(4, target="0110")
        c2 = GroverCircuit.from_json(c.to_json())
        assert c2 == c

    def test_dagger_inverts(self, rng):
        c = build_grover_circuit(4)
        real = sample_noise(c.num_gates, seed=9, delta=0.1)
        v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        w = apply_circuit_dagger_to_array(
            apply_circuit_to_array(v, c, real), c, real
        )
        assert np.allclose(v, w, atol=1e-12)

    def test_dense_unitary_strict(self):
        c = build_grover_circuit(5)
        real = sample_noise(c.num_gates, seed=2, delta=0.15)
        assert dense_unitary(c, real).validate_strict() < 1e-12

    def test_bad_target(self):
        with pytest.raises(ValueError):
            build_grover_circuit(3, target="012")
        with pytest.raises(ValueError):
            build_grover_circuit(3, target="01")


class TestConjugation:
    @pytest.mark.parametrize("target", ["101", "010", "111"])
    def test_vw_conjugation_matches_target_oracle(self, target):
        L = len(target)
        g0 = abstract_grover(L, "0" * L)
        gw = abstract_grover(L, target)
        conj = conjugate_by_vw(g0, target)
        assert np.max(np.abs(conj.entries - gw.entries)) < 1e-12

    def test_grover_angle(self):
        assert np.sin(grover_angle(6)) == pytest.approx(2 ** (-3.0))
