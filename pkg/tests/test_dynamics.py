import numpy as np
import pytest

from noisygrover.circuit import NoiseRealization, build_grover_circuit, sample_noise
from noisygrover.dynamics import (
    AnalyticPrediction,
    analytic_prediction,
    default_t_max,
    estimate_p_b,
    evolve_probabilities,
    fit_period2_rate,
    measure_p_b,
    noiseless_target_probability,
    period2_component,
)
from noisygrover.heff import build_h_eff, e0_closed_form
from noisygrover.special import special_block


class TestEvolution:
    @pytest.mark.parametrize("L", [2, 3, 4, 5, 6])
    def test_noiseless_closed_form(self, L):
        c = build_grover_circuit(L)
        real = NoiseRealization.noiseless(c.num_gates)
        t_max = max(2 * int(np.floor(np.pi / 4 * 2 ** (L / 2))), 4)
        tr = evolve_probabilities(c, real, 0.0, t_max)
        want = noiseless_target_probability(L, tr.times)
        assert np.max(np.abs(tr.p_target - want)) < 1e-9

    def test_initial_xbar_occupation(self):
        L = 6
        c = build_grover_circuit(L)
        real = NoiseRealization.noiseless(c.num_gates)
        tr = evolve_probabilities(c, real, 0.0, 4)
        # exact start is |x>, whose |xbar> weight is 1 - 1/N
        assert tr.p_xbar[0] == pytest.approx(1.0 - 2.0**-L, abs=1e-10)

    def test_probabilities_bounded(self):
        c = build_grover_circuit(4)
        real = sample_noise(c.num_gates, seed=3, delta=0.2)
        tr = evolve_probabilities(c, real, 0.2, 30)
        assert np.all(tr.p_target >= 0) and np.all(tr.p_target <= 1)
        assert np.all(tr.p_xbar >= 0) and np.all(tr.p_xbar <= 1)

    def test_norm_conserved(self):
        # unitarity: total probability over all outcomes stays 1
        from noisygrover.core import Statevector
        from noisygrover.circuit import apply_circuit_to_array

        c = build_grover_circuit(4)
        real = sample_noise(c.num_gates, seed=3, delta=0.2)
        psi = Statevector.uniform(4).amplitudes
        for t in range(12):
            psi = apply_circuit_to_array(psi, c, real)
        assert np.sum(np.abs(psi) ** 2) == pytest.approx(1.0, abs=1e-10)

    def test_nonzero_target(self):
        c = build_grover_circuit(3, target="101")
        real = NoiseRealization.noiseless(c.num_gates)
        tr = evolve_probabilities(c, real, 0.0, 4)
        want = noiseless_target_probability(3, tr.times)
        assert np.max(np.abs(tr.p_target - want)) < 1e-9

    def test_t_max_guard(self):
        c = build_grover_circuit(3)
        real = NoiseRealization.noiseless(c.num_gates)
        with pytest.raises(ValueError):
            evolve_probabilities(c, real, 0.0, 0)

    def test_default_t_max(self):
        assert default_t_max(10) == 4 * 25


class TestAnalyticPrediction:
    def make(self, p_b=0.1, theta_p=1.2, omega=0.3, e0=5.0, delta=0.05):
        return AnalyticPrediction(p_b, theta_p, omega, e0, delta)

    def test_sum_rules(self):
        pred = self.make()
        assert pred.plateau + pred.term_b(0) == pytest.approx(1 - pred.p_b)
        assert pred.term_c(0) + pred.term_d(0) == pytest.approx(pred.p_b)
        assert pred.p_xbar(0) == pytest.approx(1.0)

    def test_late_time_partition(self):
        pred = self.make()
        assert pred.p_xbar_late + pred.p_target_late == pytest.approx(1 - pred.p_b)

    def test_noiseless_reduction(self):
        pred = self.make(p_b=0.0, theta_p=np.pi / 2, omega=np.pi / 10, delta=0.0)
        # pure Grover oscillation between 0 and 1: (1 + cos(omega t)) / 2
        assert pred.plateau == pytest.approx(0.5)
        assert pred.oscillation_amplitude == pytest.approx(0.5)
        t = np.arange(40)
        p = pred.p_xbar(t)
        assert np.min(p) == pytest.approx(0.0, abs=1e-12)
        assert np.max(p) == pytest.approx(1.0, abs=1e-12)

    def test_p_b_range_enforced(self):
        with pytest.raises(ValueError):
            self.make(p_b=1.2)

    def test_from_block(self):
        c = build_grover_circuit(6)
        real = sample_noise(c.num_gates, seed=7)
        blk = special_block(build_h_eff(c, real))
        e0 = e0_closed_form(6)
        pred = analytic_prediction(blk, e0, 0.05, estimate_p_b(0.05, e0))
        assert 0 <= pred.p_b < 1
        assert pred.p_xbar(0) == pytest.approx(1.0)


class TestLeakage:
    def test_estimate_limits(self):
        assert estimate_p_b(0.0, 5.0) == 0.0
        assert estimate_p_b(10.0, 10.0) < 1.0

    def test_measure_agrees_with_estimate(self):
        L = 8
        c = build_grover_circuit(L)
        e0 = e0_closed_form(L)
        delta = 0.06
        vals = []
        for s in range(6):
            real = sample_noise(c.num_gates, seed=600 + s)
            tr = evolve_probabilities(c, real, delta, 60)
            vals.append(measure_p_b(tr, e0))
        est = estimate_p_b(delta, e0)
        assert est / 2 < np.mean(vals) < est * 2

    def test_window_guard(self):
        c = build_grover_circuit(4)
        real = sample_noise(c.num_gates, seed=1)
        tr = evolve_probabilities(c, real, 0.01, 12)
        with pytest.raises(ValueError):
            measure_p_b(tr, e0_closed_form(4))

    def test_zero_delta(self):
        c = build_grover_circuit(4)
        real = NoiseRealization.noiseless(c.num_gates)
        tr = evolve_probabilities(c, real, 0.0, 12)
        assert measure_p_b(tr, e0_closed_form(4)) == 0.0


class TestPeriod2:
    def test_extraction_on_synthetic_signal(self):
        t = np.arange(40)
        rate = 0.12
        smooth = 0.6 + 0.2 * np.cos(0.11 * t)
        alt = 0.15 * np.exp(-rate * t**2)
        p = smooth + ((-1.0) ** t) * alt
        ct = period2_component(p)
        inner = np.arange(1, len(p) - 2)
        # the filter passes the envelope through a (1,3,3,1)/8 average
        want = (alt[inner - 1] + 3 * alt[inner] + 3 * alt[inner + 1] + alt[inner + 2]) / 8
        assert np.max(np.abs(ct[:6] - want[:6])) < 2e-3
        fitted = fit_period2_rate(p, floor=1e-4, npts=3)
        assert fitted == pytest.approx(rate, rel=0.25)

    def test_too_short(self):
        with pytest.raises(ValueError):
            period2_component(np.ones(3))
