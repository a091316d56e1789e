"""First-order effective Hamiltonian of the gate noise and its statistics.

``H_eff`` is the sum over gates of the noise generator conjugated by all
later noiseless gates (Heisenberg picture anchored at the end of the
Floquet cycle).  It is built once per noise realization and serves every
noise strength, since the scale is factored out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.stats

from .core import (
    ID2,
    PAULI_X,
    DenseOperator,
    apply_1q_kernel,
    apply_1q_right_dagger,
    apply_ctrl_1q_kernel,
    apply_ctrl_1q_right_dagger,
    embed_1q,
    embed_ctrl_1q,
)
from .circuit import (
    _SIGMA,
    GateSpec,
    GroverCircuit,
    NoiseRealization,
    gate_unitary_2x2,
)
from .spectral import QuasiSpectrum

KLD_PROB_FLOOR = 1e-300
R_GUE = 0.599
R_POISSON = 2.0 * np.log(2.0) - 1.0  # 0.386
KLD_GUE = 1.0


@dataclass(frozen=True)
class EffHamiltonianReport:
    """Per-realization effective Hamiltonian with derived spectral data."""

    h_eff: DenseOperator
    trace_per_dim: float
    e0_realization: float  # sqrt(Tr[Htilde^2] / N) for this gate list's epsilons
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    bulk_eigs: np.ndarray
    bulk_projected_eigs: np.ndarray
    special_indices: tuple
    num_qubits: int

    @property
    def traceless(self) -> np.ndarray:
        m = self.h_eff.entries.copy()
        np.fill_diagonal(m, np.diag(m) - self.trace_per_dim)
        return m

    @property
    def traceless_bulk_eigs(self) -> np.ndarray:
        """Bulk spectrum with the per-realization trace offset removed.

        The offset sqrt-variance is of the same order as E0, so pooled
        density comparisons against the zero-mean Gaussian must use the
        centered spectra; uncentered pooling smears the mixture wide.
        """
        return self.bulk_eigs - self.trace_per_dim

    @property
    def traceless_bulk_projected_eigs(self) -> np.ndarray:
        return self.bulk_projected_eigs - self.trace_per_dim


def gate_generator_dense(gate: GateSpec, num_qubits: int) -> np.ndarray:
    """Dense embedding of the gate's noise generator.

    Single-qubit kinds: ``I - sigma``; controlled rotations:
    ``|1><1|_c ⊗ (I - X)_t / 2``.
    """
    if gate.kind == "crx":
        p0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        half = (ID2 - PAULI_X) / 2.0
        # embed_ctrl_1q(u) = P0_c x I + P1_c x u, so subtract the P0 block
        return embed_ctrl_1q(half, gate.qubits[0], gate.qubits[1], num_qubits) - (
            embed_1q(p0, gate.qubits[0], num_qubits)
        )
    return embed_1q(ID2 - _SIGMA[gate.kind], gate.qubits[0], num_qubits)


def generator_trace_per_dim(gate: GateSpec) -> float:
    """``Tr(H_k)/N``: 1 for single-qubit generators, 1/4 for CR_x."""
    return 0.25 if gate.kind == "crx" else 1.0


def build_h_eff(
    circuit: GroverCircuit, realization: NoiseRealization
) -> EffHamiltonianReport:
    """Assemble H_eff by conjugating each generator through the later gates.

    Forward recursion ``R <- U_k R U_k† + eps_k H_k`` over the gate list,
    using the stride kernels on both sides (O(M N^2) total).
    """
    L = circuit.num_qubits
    n = 2**L
    acc = np.zeros((n, n), dtype=complex)
    generators = {}
    for gate in circuit.gates:
        u = gate_unitary_2x2(gate)  # noiseless
        if gate.kind == "crx":
            acc = apply_ctrl_1q_kernel(acc, u, gate.qubits[0], gate.qubits[1], L)
            acc = apply_ctrl_1q_right_dagger(acc, u, gate.qubits[0], gate.qubits[1], L)
        else:
            acc = apply_1q_kernel(acc, u, gate.qubits[0], L)
            acc = apply_1q_right_dagger(acc, u, gate.qubits[0], L)
        eps = float(realization.epsilons[gate.noise_slot])
        if eps != 0.0:
            key = (gate.kind, gate.qubits)
            if key not in generators:
                generators[key] = gate_generator_dense(gate, L)
            acc += eps * generators[key]
    acc = 0.5 * (acc + acc.conj().T)  # shave asymmetric roundoff
    h = DenseOperator(acc, "hermitian")
    trace_per_dim = float(np.trace(acc).real) / n
    tilde = acc.copy()
    np.fill_diagonal(tilde, np.diag(tilde) - trace_per_dim)
    e0_real = float(np.sqrt(max(np.sum(np.abs(tilde) ** 2).real, 0.0) / n))
    vals, vecs = np.linalg.eigh(acc)
    from .spectral import special_projector_weights

    weights = special_projector_weights(vecs, L)
    order = np.argsort(weights)
    special = (int(order[-1]), int(order[-2]))
    mask = np.ones(n, dtype=bool)
    mask[list(special)] = False
    # bulk block in the plane-wave complement of span{|0>, |xbar>}; its
    # eigenvalues are the first-order bulk quasienergy slopes
    bulk_basis = g0_eigenbasis(L)[:, 2:]
    h_bulk = bulk_basis.conj().T @ acc @ bulk_basis
    bulk_proj = np.linalg.eigvalsh(0.5 * (h_bulk + h_bulk.conj().T))
    return EffHamiltonianReport(
        h_eff=h,
        trace_per_dim=trace_per_dim,
        e0_realization=e0_real,
        eigenvalues=vals,
        eigenvectors=vecs,
        bulk_eigs=vals[mask],
        bulk_projected_eigs=bulk_proj,
        special_indices=special,
        num_qubits=L,
    )


def h_eff_matvec(
    circuit: GroverCircuit, realization: NoiseRealization, vecs: np.ndarray
) -> np.ndarray:
    """``H_eff @ vecs`` without the dense matrix, O(M N) per column.

    Backward sweep caches ``W_k† v``; a forward sweep re-dresses the
    generator hits ``eps_k H_k W_k† v`` through the remaining gates.
    """
    L = circuit.num_qubits

    def apply(u, gate, arr):
        if gate.kind == "crx":
            return apply_ctrl_1q_kernel(arr, u, gate.qubits[0], gate.qubits[1], L)
        return apply_1q_kernel(arr, u, gate.qubits[0], L)

    frames = [None] * len(circuit.gates)
    cur = np.asarray(vecs, dtype=complex)
    for i in range(len(circuit.gates) - 1, -1, -1):
        frames[i] = cur
        gate = circuit.gates[i]
        if i > 0:
            cur = apply(gate_unitary_2x2(gate).conj().T, gate, cur)
    out = np.zeros_like(frames[0])
    for i, gate in enumerate(circuit.gates):
        if i > 0:
            out = apply(gate_unitary_2x2(gate), gate, out)
        eps = float(realization.epsilons[gate.noise_slot])
        if eps == 0.0:
            continue
        hit = frames[i]
        if gate.kind == "crx":
            control, target = gate.qubits
            half = (ID2 - PAULI_X) / 2.0
            g = apply_ctrl_1q_kernel(hit, half, control, target, L) - (
                apply_ctrl_1q_kernel(hit, np.zeros((2, 2)), control, target, L)
            )
        else:
            g = hit - apply_1q_kernel(hit, _SIGMA[gate.kind], gate.qubits[0], L)
        out = out + eps * g
    return out


def expected_trace_per_dim(circuit: GroverCircuit, realization: NoiseRealization) -> float:
    """Closed-form trace identity: sum of eps/4 over CR_x plus eps over 1q gates."""
    total = 0.0
    for gate in circuit.gates:
        total += generator_trace_per_dim(gate) * float(
            realization.epsilons[gate.noise_slot]
        )
    return total


def e0(circuit: GroverCircuit) -> float:
    """Exact per-circuit ``E_0 = sqrt((1/3N) sum_j Tr[Htilde_j^2])``.

    Each single-qubit generator contributes 1/3 and each CR_x contributes
    1/16 after removing the generator traces.
    """
    n_crx, n_1q, _ = circuit.counts
    return float(np.sqrt(n_1q / 3.0 + n_crx / 16.0))


def e0_closed_form(num_qubits: int) -> float:
    """``E_0^2 = (2 L^2 + 10 L + 5) / 8`` for the reference decomposition."""
    L = num_qubits
    return float(np.sqrt((2 * L * L + 10 * L + 5) / 8.0))


def e0_mc(reports) -> tuple:
    """Monte-Carlo ``E_0`` from ``Tr[Htilde^2]/N`` over realizations, with stderr."""
    sq = np.array([r.e0_realization**2 for r in reports])
    mean = float(np.mean(sq))
    stderr = float(np.std(sq, ddof=1) / np.sqrt(len(sq))) if len(sq) > 1 else 0.0
    # delta-method stderr on sqrt
    return float(np.sqrt(mean)), stderr / (2.0 * np.sqrt(mean))


# ---------------------------------------------------------------------------
# validation against the exact spectrum
# ---------------------------------------------------------------------------


def bulk_validation_distance(
    spectrum: QuasiSpectrum, report: EffHamiltonianReport, delta: float
) -> float:
    """``d = sqrt(sum_k (phi_exact_k / delta - E_eff_k)^2)`` over the bulk.

    The effective side uses the bulk-projected block (degenerate first-order
    theory lives in the complement of the special subspace); pairing is by
    sorted order.
    """
    phi_bulk = np.sort(spectrum.bulk_phases())
    e_bulk = np.sort(report.bulk_projected_eigs)
    if phi_bulk.shape != e_bulk.shape:
        raise ValueError(
            f"bulk size mismatch: {phi_bulk.shape} vs {e_bulk.shape}"
        )
    return float(np.sqrt(np.sum((phi_bulk / delta - e_bulk) ** 2)))


def special_validation_distance(
    spectrum: QuasiSpectrum, report: EffHamiltonianReport, delta: float
) -> float:
    """RMS mismatch of the two exact special phases vs the 2x2 block model."""
    from .special import special_block, special_phases_model

    block = special_block(report)
    model = special_phases_model(block, delta)
    exact = np.sort(spectrum.phases[list(spectrum.special_indices)])
    return float(np.sqrt(np.mean((exact - np.sort(model)) ** 2)))


# ---------------------------------------------------------------------------
# random-matrix diagnostics
# ---------------------------------------------------------------------------


def level_spacing_ratios(eigs: np.ndarray):
    """``r_n = min(dE_n, dE_{n+1}) / max(dE_n, dE_{n+1})`` and its mean."""
    e = np.asarray(eigs, dtype=float)
    if e.size < 3:
        raise ValueError("need at least 3 eigenvalues for spacing ratios")
    if np.any(np.diff(e) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    s = np.diff(e)
    a, b = s[:-1], s[1:]
    hi = np.maximum(a, b)
    r = np.where(hi > 0, np.minimum(a, b) / np.where(hi > 0, hi, 1.0), 0.0)
    return r, float(np.mean(r))


def kl_divergence(eigvecs: np.ndarray, _basis: str = "computational"):
    """KL divergence of neighboring eigenstates' computational occupations.

    ``KLd_n = sum_i p_i ln(p_i / q_i)`` with q floored at 1e-300.
    """
    v = np.asarray(eigvecs)
    if v.shape[1] < 2:
        raise ValueError("need at least 2 eigenvectors")
    probs = np.abs(v) ** 2
    p = probs[:, :-1]
    q = np.clip(probs[:, 1:], KLD_PROB_FLOOR, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * (np.log(np.clip(p, KLD_PROB_FLOOR, None)) - np.log(q)), 0.0)
    kld = np.sum(terms, axis=0)
    return kld, float(np.mean(kld))


def semicircle_cdf(x: np.ndarray, radius: float) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=float), -radius, radius)
    return 0.5 + x * np.sqrt(radius**2 - x**2) / (np.pi * radius**2) + np.arcsin(
        x / radius
    ) / np.pi


def density_fit(bulk_eigs: np.ndarray, e0_value: float):
    """KS statistics of the pooled bulk spectrum vs Gaussian and semicircle.

    The Gaussian has standard deviation ``E_0``; the semicircle radius
    ``2 E_0`` matches its variance.
    """
    x = np.asarray(bulk_eigs, dtype=float)
    if x.size < 100:
        raise ValueError("need a pooled spectrum (>= 100 samples) for density fits")
    ks_gauss = scipy.stats.kstest(x, scipy.stats.norm(loc=0.0, scale=e0_value).cdf)
    ks_semi = scipy.stats.kstest(x, lambda t: semicircle_cdf(t, 2.0 * e0_value))
    return {
        "e0": float(e0_value),
        "ks_gaussian": float(ks_gauss.statistic),
        "ks_semicircle": float(ks_semi.statistic),
    }


def g0_eigenbasis(num_qubits: int) -> np.ndarray:
    """Columns: the two special cat states, then the plane-wave bulk basis.

    ``|xbar_n> = (N-1)^{-1/2} sum_j exp(i (j-1) k_n) |j>`` with
    ``k_n = 2 pi n / (N - 1)``, n = 1..N-2.
    """
    n = 2**num_qubits
    xbar = np.zeros(n, dtype=complex)
    xbar[1:] = 1.0 / np.sqrt(n - 1)
    zero = np.zeros(n, dtype=complex)
    zero[0] = 1.0
    cols = [
        (zero + 1j * xbar) / np.sqrt(2.0),
        (zero - 1j * xbar) / np.sqrt(2.0),
    ]
    j = np.arange(1, n)
    for m in range(1, n - 1):
        k = 2.0 * np.pi * m / (n - 1)
        v = np.zeros(n, dtype=complex)
        v[1:] = np.exp(1j * (j - 1) * k) / np.sqrt(n - 1)
        cols.append(v)
    return np.stack(cols, axis=1)


def element_structure(report: EffHamiltonianReport, basis: str = "computational"):
    """|entries| heatmap of the traceless H_eff plus diag/offdiag square sums."""
    m = report.traceless
    if basis == "g0":
        b = g0_eigenbasis(report.num_qubits)
        m = b.conj().T @ m @ b
    elif basis != "computational":
        raise ValueError(f"unknown basis {basis!r}")
    mag = np.abs(m)
    diag_sq = float(np.sum(np.diag(mag) ** 2))
    total_sq = float(np.sum(mag**2))
    return {
        "heatmap": mag,
        "diag_sq_sum": diag_sq,
        "offdiag_sq_sum": total_sq - diag_sq,
    }
