"""Stroboscopic probabilities under the fixed noisy Grover unitary.

The register starts in the uniform superposition and the same noisy cycle
is applied repeatedly, recording the target and near-uniform occupations.
The analytic side decomposes the echo into a late-time plateau, dressed
Grover oscillations, and two Gaussian-damped bulk terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Statevector
from .circuit import (
    GroverCircuit,
    NoiseRealization,
    apply_circuit_to_array,
    grover_angle,
)
from .special import SpecialBlock, gap_squared, theta_prime, xbar_state


@dataclass(frozen=True)
class DynamicsTrace:
    """Per-step occupations of the target and |xbar> states."""

    times: np.ndarray
    p_target: np.ndarray
    p_xbar: np.ndarray
    delta: float
    seed: int

    def __post_init__(self):
        for name in ("p_target", "p_xbar"):
            p = getattr(self, name)
            if np.any(p < -1e-12) or np.any(p > 1.0 + 1e-12):
                raise ValueError(f"{name} leaves [0, 1]")


def default_t_max(num_qubits: int) -> int:
    """Four Grover periods: ``4 * floor((pi/4) sqrt(N))``."""
    return 4 * int(np.floor(np.pi / 4.0 * 2.0 ** (num_qubits / 2.0)))


def evolve_probabilities(
    circuit: GroverCircuit,
    realization: NoiseRealization,
    delta: float,
    t_max: int,
) -> DynamicsTrace:
    """Repeatedly apply the fixed noisy cycle to ``|x>`` and record occupations.

    Cost is O(t_max * M * N) through the gate kernels; no dense matrix.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    realization = realization.with_delta(delta)
    L = circuit.num_qubits
    w = int(circuit.target, 2)
    xbar = xbar_state(L) if w == 0 else _xbar_for_target(L, w)
    psi = Statevector.uniform(L).amplitudes.copy()
    p_t = np.empty(t_max + 1)
    p_x = np.empty(t_max + 1)
    for t in range(t_max + 1):
        if t > 0:
            psi = apply_circuit_to_array(psi, circuit, realization)
        p_t[t] = np.abs(psi[w]) ** 2
        p_x[t] = np.abs(np.vdot(xbar, psi)) ** 2
    return DynamicsTrace(
        np.arange(t_max + 1), p_t, p_x, float(delta), realization.seed
    )


def _xbar_for_target(num_qubits: int, w: int) -> np.ndarray:
    n = 2**num_qubits
    v = np.full(n, 1.0 / np.sqrt(n - 1), dtype=complex)
    v[w] = 0.0
    return v


def noiseless_target_probability(num_qubits: int, times: np.ndarray) -> np.ndarray:
    """Closed-form ``P_w(t) = sin^2[(2t + 1) theta]``."""
    theta = grover_angle(num_qubits)
    return np.sin((2.0 * np.asarray(times) + 1.0) * theta) ** 2


@dataclass(frozen=True)
class AnalyticPrediction:
    """Echo decomposition ``P_xbar(t) = A + B(t) + C(t) + D(t)``."""

    p_b: float
    theta_p: float
    omega: float  # Grover oscillation frequency E_1 - E_2
    e0: float
    delta: float

    def __post_init__(self):
        if not 0.0 <= self.p_b < 1.0:
            raise ValueError("p_b must lie in [0, 1)")

    @property
    def plateau(self) -> float:
        c2 = np.cos(self.theta_p / 2.0) ** 2
        s2 = np.sin(self.theta_p / 2.0) ** 2
        return float((1.0 - self.p_b) * (c2**2 + s2**2))

    @property
    def oscillation_amplitude(self) -> float:
        c2 = np.cos(self.theta_p / 2.0) ** 2
        s2 = np.sin(self.theta_p / 2.0) ** 2
        return float(2.0 * s2 * c2 * (1.0 - self.p_b))

    def term_b(self, t) -> np.ndarray:
        return self.oscillation_amplitude * np.cos(self.omega * np.asarray(t))

    def term_c(self, t) -> np.ndarray:
        t = np.asarray(t)
        root = np.sqrt(1.0 - self.p_b)
        rate = (self.delta * self.e0) ** 2
        return (
            2.0
            * (-1.0) ** t
            * (root - 1.0 + self.p_b)
            * np.exp(-rate * t**2 / 2.0)
        )

    def term_d(self, t) -> np.ndarray:
        t = np.asarray(t)
        root = np.sqrt(1.0 - self.p_b)
        rate = (self.delta * self.e0) ** 2
        return (1.0 - root) ** 2 * np.exp(-rate * t**2)

    def p_xbar(self, t) -> np.ndarray:
        return self.plateau + self.term_b(t) + self.term_c(t) + self.term_d(t)

    @property
    def p_xbar_late(self) -> float:
        return self.plateau

    @property
    def p_target_late(self) -> float:
        return float((1.0 - self.p_b) - self.plateau)


def analytic_prediction(
    block: SpecialBlock, e0: float, delta: float, p_b: float
) -> AnalyticPrediction:
    """Assemble the echo overlay from the dressed block and the leakage p_b.

    The oscillation terms use the half-angle weights, which is what the
    normalization check ``(A + B)(0) = 1 - P_b`` forces.
    """
    omega = float(np.sqrt(gap_squared(block, delta)))
    return AnalyticPrediction(
        p_b=float(p_b),
        theta_p=theta_prime(block, delta),
        omega=omega,
        e0=float(e0),
        delta=float(delta),
    )


def estimate_p_b(delta: float, e0: float) -> float:
    """Perturbative bulk leakage ``P_b ~ delta^2 E_0^2 / 4``, clipped below 1."""
    return float(min((delta * e0) ** 2 / 4.0, 0.999999))


def period2_component(p_xbar: np.ndarray) -> np.ndarray:
    """Alternating part of a trace via a third-difference filter.

    The filter passes ``(-1)^t c(t)`` with unit gain while cancelling smooth
    trends through quadratic order, which keeps the slow Grover oscillation
    out of the estimate.
    """
    p = np.asarray(p_xbar, dtype=float)
    if p.size < 4:
        raise ValueError("need at least 4 time steps")
    t = np.arange(1, p.size - 2)
    return ((-1.0) ** t) * (-p[t - 1] + 3 * p[t] - 3 * p[t + 1] + p[t + 2]) / 8.0


def fit_period2_rate(p_xbar: np.ndarray, floor: float = 2e-4, npts: int = 2) -> float:
    """Gaussian decay rate of the period-2 component: slope of ln|c| vs t^2.

    Only the first ``npts`` points above ``floor`` enter; later points sit on
    the residual realization noise and bias the rate downward.
    """
    ct = period2_component(p_xbar)
    t = np.arange(1, np.asarray(p_xbar).size - 2)
    mask = np.abs(ct) > floor
    use = t[mask][:npts]
    if use.size < 2:
        raise ValueError("fewer than 2 usable period-2 points above the floor")
    y = np.log(np.abs(ct[mask][:npts]))
    return float(-np.polyfit(use.astype(float) ** 2, y, 1)[0])


def measure_p_b(trace: DynamicsTrace, e0: float) -> float:
    """Empirical leakage: 1 minus the late-window mean of ``P_0 + P_xbar``.

    The window opens at four relaxation times ``tau = 1 / (delta E_0)``.
    """
    if trace.delta <= 0.0:
        return 0.0
    tau = 1.0 / (trace.delta * e0)
    start = int(np.ceil(4.0 * tau))
    t_max = int(trace.times[-1])
    if t_max - start < 10:
        raise ValueError("late window shorter than 10 steps")
    window = slice(start, None)
    return float(1.0 - np.mean(trace.p_target[window] + trace.p_xbar[window]))
