"""Dense complex linear algebra for small qubit registers.

Statevectors live on ``N = 2**L`` amplitudes with qubit 0 as the most
significant bit of the basis index.  Gate application uses stride kernels
(O(N) per gate, never a dense matrix-vector product), while dense operators
are only assembled for spectral work at L <= 12.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

MAX_QUBITS = 12

NORM_TOL = 1e-10
UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-12
RHO_EIG_FLOOR = 1e-15

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
ID2 = np.eye(2, dtype=complex)


class DimensionError(ValueError):
    """Raised when a register exceeds the dense-linear-algebra guard."""


def _check_num_qubits(num_qubits: int) -> None:
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise DimensionError(
            f"num_qubits={num_qubits} outside supported range [1, {MAX_QUBITS}]"
        )


@dataclass(frozen=True)
class Statevector:
    """Normalized pure state of ``num_qubits`` qubits."""

    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        _check_num_qubits(self.num_qubits)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.num_qubits,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, "
                f"expected ({2**self.num_qubits},)"
            )
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis_state(cls, num_qubits: int, index: int) -> "Statevector":
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps, num_qubits)

    @classmethod
    def uniform(cls, num_qubits: int) -> "Statevector":
        n = 2**num_qubits
        return cls(np.full(n, 1.0 / np.sqrt(n), dtype=complex), num_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class DenseOperator:
    """Dense N x N operator with a kind flag used to gate eigensolvers.

    Construction runs a cheap probe check (random-vector residual); the
    exhaustive max-norm invariant is available via :meth:`validate_strict`
    and is exercised by the test suite at small L.
    """

    entries: np.ndarray
    kind: str  # "unitary" | "hermitian" | "general"

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        if self.kind not in ("unitary", "hermitian", "general"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)
        self._probe_check()

    def _probe_check(self, n_probe: int = 2) -> None:
        m = self.entries
        n = m.shape[0]
        if self.kind == "unitary":
            rng = np.random.default_rng(0)
            for _ in range(n_probe):
                v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                v /= np.linalg.norm(v)
                r = m.conj().T @ (m @ v) - v
                if np.linalg.norm(r) > 1e-8 * np.sqrt(n):
                    raise ValueError("operator flagged unitary fails U†U = I probe")
        elif self.kind == "hermitian":
            if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL * max(
                1.0, np.max(np.abs(m))
            ):
                raise ValueError("operator flagged hermitian is not self-adjoint")

    def validate_strict(self) -> float:
        """Max-norm deviation from the declared kind's defining identity."""
        m = self.entries
        if self.kind == "unitary":
            return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))
        if self.kind == "hermitian":
            return float(np.max(np.abs(m - m.conj().T)))
        return 0.0

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


# ---------------------------------------------------------------------------
# stride kernels
# ---------------------------------------------------------------------------


def apply_1q_kernel(arr: np.ndarray, u: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """Apply a 2x2 unitary to ``qubit`` of ``arr`` along axis 0.

    ``arr`` may be a vector of length N or an (N, K) stack of columns;
    trailing axes ride along untouched.
    """
    shape = arr.shape
    a = arr.reshape(2**qubit, 2, -1)
    out = np.empty_like(a)
    a0, a1 = a[:, 0], a[:, 1]
    out[:, 0] = u[0, 0] * a0 + u[0, 1] * a1
    out[:, 1] = u[1, 0] * a0 + u[1, 1] * a1
    return out.reshape(shape)


def apply_ctrl_1q_kernel(
    arr: np.ndarray, u: np.ndarray, control: int, target: int, num_qubits: int
) -> np.ndarray:
    """Apply a 2x2 unitary to ``target`` on the control=1 subspace."""
    if control == target:
        raise ValueError("control and target coincide")
    shape = arr.shape
    q1, q2 = (control, target) if control < target else (target, control)
    a = arr.reshape(2**q1, 2, 2 ** (q2 - q1 - 1), 2, -1).copy()
    if control < target:
        s0, s1 = a[:, 1, :, 0], a[:, 1, :, 1]
        r0 = u[0, 0] * s0 + u[0, 1] * s1
        r1 = u[1, 0] * s0 + u[1, 1] * s1
        a[:, 1, :, 0], a[:, 1, :, 1] = r0, r1
    else:
        s0, s1 = a[:, 0, :, 1], a[:, 1, :, 1]
        r0 = u[0, 0] * s0 + u[0, 1] * s1
        r1 = u[1, 0] * s0 + u[1, 1] * s1
        a[:, 0, :, 1], a[:, 1, :, 1] = r0, r1
    return a.reshape(shape)


def apply_1q_right_dagger(mat: np.ndarray, u: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """Return ``mat @ U†`` where U embeds ``u`` on ``qubit`` (column-side kernel)."""
    n = mat.shape[0]
    a = mat.reshape(n, 2**qubit, 2, -1)
    uc = u.conj()
    out = np.empty_like(a)
    a0, a1 = a[:, :, 0], a[:, :, 1]
    out[:, :, 0] = uc[0, 0] * a0 + uc[0, 1] * a1
    out[:, :, 1] = uc[1, 0] * a0 + uc[1, 1] * a1
    return out.reshape(mat.shape)


def apply_ctrl_1q_right_dagger(
    mat: np.ndarray, u: np.ndarray, control: int, target: int, num_qubits: int
) -> np.ndarray:
    """Return ``mat @ U†`` for a controlled 2x2 gate on the column index."""
    n = mat.shape[0]
    q1, q2 = (control, target) if control < target else (target, control)
    a = mat.reshape(n, 2**q1, 2, 2 ** (q2 - q1 - 1), 2, -1).copy()
    uc = u.conj()
    if control < target:
        s0, s1 = a[:, :, 1, :, 0], a[:, :, 1, :, 1]
        r0 = uc[0, 0] * s0 + uc[0, 1] * s1
        r1 = uc[1, 0] * s0 + uc[1, 1] * s1
        a[:, :, 1, :, 0], a[:, :, 1, :, 1] = r0, r1
    else:
        s0, s1 = a[:, :, 0, :, 1], a[:, :, 1, :, 1]
        r0 = uc[0, 0] * s0 + uc[0, 1] * s1
        r1 = uc[1, 0] * s0 + uc[1, 1] * s1
        a[:, :, 0, :, 1], a[:, :, 1, :, 1] = r0, r1
    return a.reshape(mat.shape)


def embed_1q(u: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """Dense embedding of a 2x2 operator on one qubit."""
    left = np.eye(2**qubit, dtype=complex)
    right = np.eye(2 ** (num_qubits - qubit - 1), dtype=complex)
    return np.kron(np.kron(left, u), right)


def embed_ctrl_1q(u: np.ndarray, control: int, target: int, num_qubits: int) -> np.ndarray:
    """Dense embedding of ``|1><1|_c ⊗ u_t`` plus the identity on control=0."""
    p0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    p1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    q1, q2 = (control, target) if control < target else (target, control)
    mid = np.eye(2 ** (q2 - q1 - 1), dtype=complex)
    if control < target:
        block = np.kron(p0, np.kron(mid, ID2)) + np.kron(p1, np.kron(mid, u))
    else:
        block = np.kron(ID2, np.kron(mid, p0)) + np.kron(u, np.kron(mid, p1))
    left = np.eye(2**q1, dtype=complex)
    right = np.eye(2 ** (num_qubits - q2 - 1), dtype=complex)
    return np.kron(np.kron(left, block), right)


# ---------------------------------------------------------------------------
# entanglement entropy
# ---------------------------------------------------------------------------


def entanglement_entropy(state: Statevector, subsystem) -> float:
    """Von Neumann entropy (nats) of the reduced state on ``subsystem``.

    Computed from the Schmidt spectrum of the reshaped amplitude matrix;
    eigenvalues are floored at 1e-15 before the log.
    """
    L = state.num_qubits
    sub = sorted(set(int(q) for q in subsystem))
    if not sub or len(sub) >= L:
        raise ValueError("subsystem must be a nonempty proper subset of qubits")
    if sub[0] < 0 or sub[-1] >= L:
        raise ValueError(f"subsystem indices out of range for L={L}")
    rest = [q for q in range(L) if q not in sub]
    psi = state.amplitudes.reshape((2,) * L)
    psi = np.transpose(psi, sub + rest).reshape(2 ** len(sub), 2 ** len(rest))
    s = np.linalg.svd(psi, compute_uv=False)
    lam = np.clip(s**2, RHO_EIG_FLOOR, None)
    return float(-np.sum(lam * np.log(lam)))


def averaged_half_cut_entropy(state: Statevector) -> float:
    """Mean entropy over the L/2 contiguous half-cuts (periodic windows)."""
    L = state.num_qubits
    if L % 2 != 0:
        raise ValueError("averaged half-cut entropy requires an even qubit count")
    half = L // 2
    total = 0.0
    for offset in range(half):
        window = [(offset + j) % L for j in range(half)]
        total += entanglement_entropy(state, window)
    return total / half


def page_entropy(num_qubits: int) -> float:
    """Mean half-cut entropy of a random pure state: [L ln 2 - 1] / 2."""
    return (num_qubits * np.log(2.0) - 1.0) / 2.0


# ---------------------------------------------------------------------------
# eigendecompositions
# ---------------------------------------------------------------------------


def hermitian_eigs(op: DenseOperator):
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian operator."""
    if op.kind != "hermitian":
        raise ValueError("hermitian_eigs requires kind='hermitian'")
    vals, vecs = np.linalg.eigh(op.entries)
    return vals, vecs


def unitary_eigs(op: DenseOperator):
    """Phases and eigenvectors of a unitary, convention ``U v = exp(-i phi) v``.

    Phases are reported on the principal branch (-pi, pi].  The Schur
    factorization keeps the eigenvector matrix orthonormal even through the
    massive degeneracies of the noiseless spectrum.
    """
    if op.kind != "unitary":
        raise ValueError("unitary_eigs requires kind='unitary'")
    t, z = sla.schur(op.entries, output="complex")
    lam = np.diag(t)
    phases = principal_branch(-np.angle(lam))
    order = np.argsort(phases, kind="stable")
    return phases[order], z[:, order]


def principal_branch(phases: np.ndarray) -> np.ndarray:
    """Wrap phases to (-pi, pi]."""
    out = np.mod(np.asarray(phases) + np.pi, 2.0 * np.pi) - np.pi
    return np.where(np.isclose(out, -np.pi), np.pi, out)


def circular_distance(a, b) -> np.ndarray:
    """Distance between phases on the circle, in [0, pi]."""
    d = np.abs(np.mod(np.asarray(a) - np.asarray(b) + np.pi, 2.0 * np.pi) - np.pi)
    return d


def aligned_maxnorm_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm distance between operators after global-phase alignment.

    The phase is fixed on the largest-magnitude entry of ``b``.
    """
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0.0:
        return float(np.max(np.abs(a - b)))
    phase = a[idx] / b[idx]
    mag = abs(phase)
    phase = phase / mag if mag > 0 else 1.0
    return float(np.max(np.abs(a - phase * b)))
