"""Quasienergy spectra of the noisy Grover operator and the gap-closing noise.

Special states are tagged by their weight in the rank-2 projector onto
span{|0...0>, |xbar>}; the gap is the minimum circular distance between a
special phase and any bulk phase.  For large registers the bisection for
the gap-closing noise uses a matrix-free Lanczos pass on ``-(G + G†)/2``
(its top eigenvalues are exactly the phases nearest ±pi), cross-checked
against the dense route at small L by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse.linalg as spla

from .core import (
    DenseOperator,
    Statevector,
    averaged_half_cut_entropy,
    circular_distance,
    unitary_eigs,
)
from .circuit import (
    GroverCircuit,
    NoiseRealization,
    apply_circuit_dagger_to_array,
    apply_circuit_to_array,
    dense_unitary,
    grover_angle,
)

# weight in span{|0>, |xbar>} below which the special tag is unreliable
DEGENERATE_WEIGHT = 0.2


@dataclass(frozen=True)
class QuasiSpectrum:
    """Full eigensystem of one noisy Floquet unitary."""

    phases: np.ndarray
    eigenvectors: np.ndarray
    entropies: np.ndarray
    special_indices: tuple
    special_weight: float
    gap: float
    num_qubits: int

    @property
    def degenerate_classification(self) -> bool:
        return self.special_weight < DEGENERATE_WEIGHT

    def bulk_phases(self) -> np.ndarray:
        mask = np.ones(len(self.phases), dtype=bool)
        mask[list(self.special_indices)] = False
        return self.phases[mask]


def special_projector_weights(vectors: np.ndarray, num_qubits: int) -> np.ndarray:
    """Per-column weight ``|<0|v>|^2 + |<xbar|v>|^2``."""
    n = 2**num_qubits
    xbar = np.zeros(n, dtype=complex)
    xbar[1:] = 1.0 / np.sqrt(n - 1)
    w0 = np.abs(vectors[0, :]) ** 2
    wx = np.abs(xbar.conj() @ vectors) ** 2
    return w0 + wx


def _classify_special(phases, vectors, num_qubits):
    weights = special_projector_weights(vectors, num_qubits)
    order = np.argsort(weights)
    special = (int(order[-1]), int(order[-2]))
    weight = float(weights[order[-1]] + weights[order[-2]]) / 2.0
    return special, weight


def _min_special_bulk_distance(phases, special_indices) -> float:
    mask = np.ones(len(phases), dtype=bool)
    mask[list(special_indices)] = False
    bulk = phases[mask]
    if bulk.size == 0:
        return 0.0
    d = min(
        float(np.min(circular_distance(phases[i], bulk))) for i in special_indices
    )
    return d


def quasi_spectrum(
    circuit: GroverCircuit,
    realization: NoiseRealization,
    delta: Optional[float] = None,
    with_entropies: bool = True,
) -> QuasiSpectrum:
    """Diagonalize the noisy Floquet unitary and classify its eigenstates.

    Entropies are the averaged half-cut values (NaN for odd L or when
    ``with_entropies`` is off, e.g. inside the gap bisection).
    """
    if delta is not None:
        realization = realization.with_delta(delta)
    L = circuit.num_qubits
    op = dense_unitary(circuit, realization)
    phases, vectors = unitary_eigs(op)
    n = len(phases)
    if with_entropies and L % 2 == 0 and L >= 2:
        entropies = np.array(
            [
                averaged_half_cut_entropy(Statevector(vectors[:, i], L))
                for i in range(n)
            ]
        )
    else:
        entropies = np.full(n, np.nan)
    special, weight = _classify_special(phases, vectors, L)
    gap = _min_special_bulk_distance(phases, special)
    return QuasiSpectrum(phases, vectors, entropies, special, weight, gap, L)


def special_bulk_gap(spectrum: QuasiSpectrum) -> float:
    """Minimum circular distance between either special phase and the bulk."""
    if spectrum.degenerate_classification:
        return 0.0
    return spectrum.gap


# ---------------------------------------------------------------------------
# matrix-free spectral-edge path
# ---------------------------------------------------------------------------


def _edge_eigenpairs(circuit, realization, k):
    """Eigenphases/eigenvectors of G with phases nearest ±pi.

    Lanczos on the Hermitian operator ``-(G + G†)/2`` (eigenvalues -cos phi,
    shared eigenvectors); a small Rayleigh-Ritz step on ``G`` untangles the
    ±phi cosine degeneracy.

    At strong noise the -cos spectrum is quadratically compressed near its
    top and the edge levels become near-degenerate, so full convergence can
    take forever.  The iteration count is bounded and the partially
    converged pairs ARPACK hands back are used instead; by then the edge
    subspace is so mixed that the projector-weight test below classifies
    the gap as closed anyway.
    """
    n = 2**circuit.num_qubits

    def matvec(v):
        fwd = apply_circuit_to_array(v, circuit, realization)
        bwd = apply_circuit_dagger_to_array(v, circuit, realization)
        return -0.5 * (fwd + bwd)

    op = spla.LinearOperator((n, n), matvec=matvec, dtype=complex)
    try:
        _, basis = spla.eigsh(op, k=k, which="LA", tol=1e-3, maxiter=200)
    except spla.ArpackNoConvergence as err:
        basis = err.eigenvectors
        if basis.shape[1] < 3:
            return np.empty(0), np.empty((n, 0))
    # Rayleigh-Ritz on G within the converged edge subspace
    g_small = basis.conj().T @ apply_circuit_to_array(basis, circuit, realization)
    lam, y = np.linalg.eig(g_small)
    vecs = basis @ y
    vecs /= np.linalg.norm(vecs, axis=0, keepdims=True)
    phases = np.mod(-np.angle(lam) + np.pi, 2 * np.pi) - np.pi
    return phases, vecs


def _windowed_gap(phases, vecs, num_qubits):
    """Special-bulk gap with specials classified inside an edge window.

    The window is whatever set of eigenpairs is passed in (states with
    phases nearest ±pi); if the two heaviest states there have lost their
    cat weight, the specials are buried in the bulk and the gap is closed.
    """
    if phases.size < 3:
        return 0.0
    weights = special_projector_weights(vecs, num_qubits)
    order = np.argsort(weights)
    special = [int(order[-1]), int(order[-2])]
    weight = float(weights[order[-1]] + weights[order[-2]]) / 2.0
    if weight < DEGENERATE_WEIGHT:
        return 0.0
    mask = np.ones(len(phases), dtype=bool)
    mask[special] = False
    bulk = phases[mask]
    return min(
        float(np.min(circular_distance(phases[i], bulk))) for i in special
    )


def _edge_gap(circuit, realization, k):
    phases, vecs = _edge_eigenpairs(circuit, realization, k)
    return _windowed_gap(phases, vecs, circuit.num_qubits)


def gap_at(
    circuit: GroverCircuit,
    realization: NoiseRealization,
    delta: float,
    edge_k: int = 40,
) -> float:
    """Special-bulk gap at one noise strength.

    Uses the dense route up to 2^9 dimensions and the matrix-free edge
    route above; both classify the special states within the ``edge_k``
    phases nearest ±pi so the two routes share one gap semantic.
    """
    realization = realization.with_delta(delta)
    n = 2**circuit.num_qubits
    if n <= 512:
        spec = quasi_spectrum(circuit, realization, with_entropies=False)
        k = min(edge_k, n)
        window = np.argsort(-np.cos(spec.phases))[-k:]
        return _windowed_gap(
            spec.phases[window], spec.eigenvectors[:, window], circuit.num_qubits
        )
    return _edge_gap(circuit, realization, k=edge_k)


def gap_tolerance(num_qubits: int) -> float:
    """Numerical gap-closing threshold: 10x the mean bulk level spacing."""
    return 10.0 * 2.0 * np.pi / 2**num_qubits


def find_delta_c_gap(
    circuit: GroverCircuit,
    realization: NoiseRealization,
    bracket=(0.02, 0.4),
    rel_tol: float = 1e-3,
    gap_tol: float | None = None,
) -> float:
    """Bisect for the smallest delta where the special-bulk gap closes.

    ``gap_tol`` overrides the default size-dependent closing threshold
    (10x the mean level spacing).  Thresholds below a few level spacings
    are unreliable: the minimum special-bulk distance saturates at that
    scale once the bulk edge reaches the special phases.
    """
    lo, hi = bracket
    tol = gap_tolerance(circuit.num_qubits) if gap_tol is None else gap_tol
    g_lo = gap_at(circuit, realization, lo)
    if g_lo <= tol:
        raise ValueError(f"gap already closed at bracket low end delta={lo}")
    g_hi = gap_at(circuit, realization, hi)
    if g_hi > tol:
        raise ValueError(f"gap still open at bracket high end delta={hi}")
    while hi - lo > rel_tol * 0.5 * (hi + lo):
        mid = 0.5 * (lo + hi)
        if gap_at(circuit, realization, mid) > tol:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def noiseless_gap(num_qubits: int) -> float:
    """Distance from the special phases ±(pi - 2 theta) to the zero pile."""
    return np.pi - 2.0 * grover_angle(num_qubits)
