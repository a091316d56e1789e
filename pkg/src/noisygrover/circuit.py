"""Decomposed Grover operator with systematic coherent gate noise.

The operator is built from pi-rotation single-qubit gates (X, Z, H kinds)
and controlled x-rotations CR_x(theta).  Conventions:

* ``R_sigma(theta) = exp(-i theta (I - sigma) / 2)`` so that
  ``R_sigma(pi) = sigma`` exactly and ``CR_x(pi)`` is a plain CX.
* A noisy single-qubit gate is ``R_sigma(pi + 2 delta eps)``; a noisy
  controlled rotation is ``CR_x(theta + delta eps)``.
* Every gate carries one slot into the frozen noise vector ``{eps_k}``,
  which is identical across Floquet cycles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .core import (
    HADAMARD,
    PAULI_X,
    PAULI_Z,
    DenseOperator,
    DimensionError,
    Statevector,
    _check_num_qubits,
    apply_1q_kernel,
    apply_1q_right_dagger,
    apply_ctrl_1q_kernel,
    apply_ctrl_1q_right_dagger,
)

SINGLE_QUBIT_KINDS = ("x", "z", "h")
_SIGMA = {"x": PAULI_X, "z": PAULI_Z, "h": HADAMARD}


@dataclass(frozen=True)
class GateSpec:
    """One parameterized gate with an optional noise slot.

    ``qubits`` is ``(target,)`` for single-qubit kinds and
    ``(control, target)`` for ``crx``.  Single-qubit kinds are pi rotations
    about their sigma axis (``base_angle`` is always pi for them).
    """

    kind: str
    qubits: tuple
    base_angle: float
    noise_slot: Optional[int] = None

    def __post_init__(self):
        if self.kind in SINGLE_QUBIT_KINDS:
            if len(self.qubits) != 1:
                raise ValueError(f"{self.kind} gate takes one qubit")
            if not np.isclose(self.base_angle, np.pi):
                raise ValueError("single-qubit gates are pi rotations")
        elif self.kind == "crx":
            if len(self.qubits) != 2:
                raise ValueError("crx takes (control, target)")
            if self.qubits[0] == self.qubits[1]:
                raise ValueError("crx control equals target")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    @property
    def is_controlled(self) -> bool:
        return self.kind == "crx"


@dataclass(frozen=True)
class NoiseRealization:
    """Frozen over/under-rotation vector ``{eps_k}`` with scale ``delta``."""

    epsilons: np.ndarray
    delta: float
    seed: int

    def __post_init__(self):
        eps = np.asarray(self.epsilons, dtype=float).copy()
        if eps.ndim != 1:
            raise ValueError("epsilons must be a vector")
        if np.any(np.abs(eps) > 1.0):
            raise ValueError("epsilons must lie in [-1, 1]")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        eps.flags.writeable = False
        object.__setattr__(self, "epsilons", eps)

    def with_delta(self, delta: float) -> "NoiseRealization":
        return replace(self, delta=float(delta))

    @classmethod
    def noiseless(cls, num_gates: int) -> "NoiseRealization":
        return cls(np.zeros(num_gates), 0.0, 0)


def sample_noise(num_gates: int, seed: int, delta: float = 0.0) -> NoiseRealization:
    """Draw ``eps_k`` i.i.d. uniform on [-1, 1] from a counter-based generator.

    The Philox stream is keyed by ``seed`` alone, so (seed, num_gates) fully
    determines the vector independent of draw order elsewhere.
    """
    if num_gates <= 0:
        raise ValueError("num_gates must be positive")
    seed = int(seed)  # numpy ints overflow the uint64 masking below
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed & (2**64 - 1))))
    eps = rng.uniform(-1.0, 1.0, size=num_gates)
    return NoiseRealization(eps, delta, seed)


@dataclass(frozen=True)
class GroverCircuit:
    """Ordered gate list realizing one Floquet period of the Grover operator."""

    gates: tuple
    num_qubits: int
    target: str

    @property
    def num_gates(self) -> int:
        return len(self.gates)

    @property
    def counts(self):
        n_crx = sum(1 for g in self.gates if g.kind == "crx")
        n_1q = len(self.gates) - n_crx
        return n_crx, n_1q, len(self.gates)

    def to_json(self) -> str:
        records = [
            {
                "kind": g.kind,
                "qubits": list(g.qubits),
                "base_angle": g.base_angle,
                "noise_slot": g.noise_slot,
            }
            for g in self.gates
        ]
        return json.dumps(
            {"num_qubits": self.num_qubits, "target": self.target, "gates": records},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "GroverCircuit":
        obj = json.loads(text)
        gates = tuple(
            GateSpec(r["kind"], tuple(r["qubits"]), r["base_angle"], r["noise_slot"])
            for r in obj["gates"]
        )
        return cls(gates, obj["num_qubits"], obj["target"])


# ---------------------------------------------------------------------------
# gate matrices and application
# ---------------------------------------------------------------------------


def rotation_2x2(sigma: np.ndarray, theta: float) -> np.ndarray:
    """``R_sigma(theta) = P_+ + exp(-i theta) P_-`` with ``P_± = (I ± sigma)/2``."""
    p_plus = (np.eye(2) + sigma) / 2.0
    p_minus = (np.eye(2) - sigma) / 2.0
    return p_plus + np.exp(-1j * theta) * p_minus


def gate_unitary_2x2(gate: GateSpec, noise_angle: float = 0.0) -> np.ndarray:
    """The 2x2 block of the (possibly noisy) gate.

    For single-qubit kinds this is the full gate ``R_sigma(pi + 2 noise)``;
    for ``crx`` it is the target-block rotation ``R_x(base + noise)``.
    """
    if gate.kind == "crx":
        return rotation_2x2(PAULI_X, gate.base_angle + noise_angle)
    return rotation_2x2(_SIGMA[gate.kind], np.pi + 2.0 * noise_angle)


def gate_noise_angle(gate: GateSpec, realization: Optional[NoiseRealization]) -> float:
    if realization is None or gate.noise_slot is None or realization.delta == 0.0:
        return 0.0
    return realization.delta * float(realization.epsilons[gate.noise_slot])


def apply_gate(
    state: Statevector, gate: GateSpec, noise_angle: float = 0.0
) -> Statevector:
    """Apply one gate to a statevector via the stride kernels."""
    L = state.num_qubits
    if any(q < 0 or q >= L for q in gate.qubits):
        raise ValueError(f"gate qubits {gate.qubits} out of range for L={L}")
    u = gate_unitary_2x2(gate, noise_angle)
    if gate.kind == "crx":
        amps = apply_ctrl_1q_kernel(state.amplitudes, u, gate.qubits[0], gate.qubits[1], L)
    else:
        amps = apply_1q_kernel(state.amplitudes, u, gate.qubits[0], L)
    return Statevector(amps, L)


def apply_circuit_to_array(
    arr: np.ndarray,
    circuit: GroverCircuit,
    realization: Optional[NoiseRealization] = None,
) -> np.ndarray:
    """Apply the full gate sequence to a vector or column-stacked array."""
    L = circuit.num_qubits
    out = arr
    for gate in circuit.gates:
        u = gate_unitary_2x2(gate, gate_noise_angle(gate, realization))
        if gate.kind == "crx":
            out = apply_ctrl_1q_kernel(out, u, gate.qubits[0], gate.qubits[1], L)
        else:
            out = apply_1q_kernel(out, u, gate.qubits[0], L)
    return out


def apply_circuit_dagger_to_array(
    arr: np.ndarray,
    circuit: GroverCircuit,
    realization: Optional[NoiseRealization] = None,
) -> np.ndarray:
    """Apply the inverse Floquet unitary (gates reversed and conjugated)."""
    L = circuit.num_qubits
    out = arr
    for gate in reversed(circuit.gates):
        u = gate_unitary_2x2(gate, gate_noise_angle(gate, realization)).conj().T
        if gate.kind == "crx":
            out = apply_ctrl_1q_kernel(out, u, gate.qubits[0], gate.qubits[1], L)
        else:
            out = apply_1q_kernel(out, u, gate.qubits[0], L)
    return out


def dense_unitary(
    circuit: GroverCircuit, realization: Optional[NoiseRealization] = None
) -> DenseOperator:
    """Materialize the circuit's unitary as a dense matrix (L <= 12 guard)."""
    _check_num_qubits(circuit.num_qubits)
    n = 2**circuit.num_qubits
    mat = apply_circuit_to_array(np.eye(n, dtype=complex), circuit, realization)
    return DenseOperator(mat, "unitary")


# ---------------------------------------------------------------------------
# abstract Grover operator (verification oracle)
# ---------------------------------------------------------------------------


def _target_index(num_qubits: int, target: str) -> int:
    if len(target) != num_qubits or any(c not in "01" for c in target):
        raise ValueError(f"target {target!r} is not a {num_qubits}-bit string")
    return int(target, 2)


def abstract_grover(num_qubits: int, target: str) -> DenseOperator:
    """``G_w = U_x U_w`` from rank-2 reflection updates (no gate decomposition)."""
    _check_num_qubits(num_qubits)
    n = 2**num_qubits
    w = _target_index(num_qubits, target)
    u_w = -np.eye(n, dtype=complex)
    u_w[w, w] = 1.0
    x = np.full(n, 1.0 / np.sqrt(n), dtype=complex)
    u_x = 2.0 * np.outer(x, x.conj()) - np.eye(n, dtype=complex)
    return DenseOperator(u_x @ u_w, "unitary")


def grover_angle(num_qubits: int) -> float:
    """theta with sin(theta) = 2**(-L/2)."""
    return float(np.arcsin(2.0 ** (-num_qubits / 2.0)))


def conjugate_by_vw(op: DenseOperator, target: str) -> DenseOperator:
    """Conjugate by ``V_w``, the product of X on the set bits of ``target``."""
    L = len(target)
    mat = op.entries
    for q, bit in enumerate(target):
        if bit == "1":
            mat = apply_1q_kernel(mat, PAULI_X, q, L)
            mat = apply_1q_right_dagger(mat, PAULI_X, q, L)
    return DenseOperator(mat, op.kind)


# ---------------------------------------------------------------------------
# linear-depth multi-controlled X
# ---------------------------------------------------------------------------


def _mcx_column(gates, targets, control, k0, sign):
    k = k0
    for t in targets:
        gates.append((control, t, sign * np.pi / 2**k))
        k += 1


def _mcx_raw(controls, target, first=True):
    """Column-grouped controlled-rotation cascade for an (n+1)-qubit Toffoli.

    Two passes: the main cascade on all qubits, then a corrective cascade on
    the controls alone.  With the ``R_x`` convention used here the composed
    product equals the multi-controlled X exactly.
    """
    gates = []
    n = len(controls)
    for k in range(n - 1):
        _mcx_column(gates, controls[n - k:] + [target], controls[-1 - k], 1, +1)
    _mcx_column(gates, controls[1:] + [target], controls[0], 0, +1 if first else -1)
    for k in range(n - 2, -1, -1):
        _mcx_column(gates, controls[n - k:] + [target], controls[-1 - k], 1, -1)
    if first:
        gates += _mcx_raw(controls[:-1], controls[-1], first=False)
    return gates


def _reschedule_crx(gates):
    """Reorder the cascade into greedy disjoint-qubit layers.

    Two x-axis controlled rotations commute unless one's target is the
    other's control, so precedence edges only connect such pairs; a longest-
    path-first list schedule then recovers the linear-depth arrangement.
    """
    n = len(gates)
    preds = [set() for _ in range(n)]
    succs = [set() for _ in range(n)]
    for j in range(n):
        cj, tj, _ = gates[j]
        for i in range(j):
            ci, ti, _ = gates[i]
            if ti == cj or ci == tj:
                preds[j].add(i)
                succs[i].add(j)
    prio = [1] * n
    for i in range(n - 1, -1, -1):
        if succs[i]:
            prio[i] = 1 + max(prio[k] for k in succs[i])
    indeg = [len(preds[i]) for i in range(n)]
    pending = set(range(n))
    order = []
    while pending:
        ready = sorted((i for i in pending if indeg[i] == 0), key=lambda i: -prio[i])
        used = set()
        layer = []
        for i in ready:
            c, t, _ = gates[i]
            if c not in used and t not in used:
                used.update((c, t))
                layer.append(i)
        for i in layer:
            pending.remove(i)
            for k in succs[i]:
                indeg[k] -= 1
        order.extend(layer)
    return [gates[i] for i in order]


def decompose_mcx(num_qubits: int, controls=None, target=None):
    """(L-1)-controlled X on qubit ``target`` as a CR_x gate list.

    Gate count is ``2 L^2 - 6 L + 5`` and the greedy disjoint-qubit layering
    stays within the ``8 L - 20`` depth bound for L >= 4.
    """
    if num_qubits < 3:
        raise ValueError("decompose_mcx requires L >= 3; use a direct gate below that")
    if controls is None:
        controls = list(range(num_qubits - 1))
    if target is None:
        target = num_qubits - 1
    raw = _mcx_raw(list(controls), target, first=True)
    scheduled = _reschedule_crx(raw)
    return [GateSpec("crx", (c, t), theta) for c, t, theta in scheduled]


def circuit_depth(gates) -> int:
    """Greedy (ASAP) layering depth counting disjoint-qubit gates as parallel."""
    level = {}
    depth = 0
    for g in gates:
        lvl = 1 + max((level.get(q, 0) for q in g.qubits), default=0)
        for q in g.qubits:
            level[q] = lvl
        depth = max(depth, lvl)
    return depth


# ---------------------------------------------------------------------------
# full Grover circuit
# ---------------------------------------------------------------------------


def _mcx_block(num_qubits: int):
    """The multi-controlled X (or its small-L degenerate forms) on qubit L-1."""
    if num_qubits == 1:
        return [GateSpec("x", (0,), np.pi)]
    if num_qubits == 2:
        return [GateSpec("crx", (0, 1), np.pi)]
    return decompose_mcx(num_qubits)


def build_grover_circuit(num_qubits: int, target: Optional[str] = None) -> GroverCircuit:
    """Decomposed Grover operator ``G_w`` with one noise slot per gate.

    Oracle: a wall of X (Z on qubits where the target bit is 1) around a
    Hadamard-conjugated multi-controlled X on qubit L-1.  Diffusion: Hadamard
    and X walls on the controls with Z conjugation on the target qubit.  The
    single-qubit count is exactly 6L and the noiseless product equals the
    abstract ``G_w``.
    """
    _check_num_qubits(num_qubits)
    L = num_qubits
    if target is None:
        target = "0" * L
    _target_index(L, target)  # validates

    def wall_oracle():
        # maps |w> onto |1...1>; Z on set bits acts trivially through the
        # diagonal core and keeps the 6L count target-independent
        return [
            GateSpec("z" if target[q] == "1" else "x", (q,), np.pi) for q in range(L)
        ]

    gates = []
    mcx = _mcx_block(L)
    t = L - 1
    # oracle: reflection about |w> (up to sign)
    gates += [g for g in wall_oracle() if g.qubits[0] != t]
    gates.append(GateSpec("z" if target[t] == "1" else "x", (t,), np.pi))
    gates.append(GateSpec("h", (t,), np.pi))
    gates += mcx
    gates.append(GateSpec("h", (t,), np.pi))
    gates.append(GateSpec("z" if target[t] == "1" else "x", (t,), np.pi))
    gates += [g for g in wall_oracle() if g.qubits[0] != t]
    # diffusion: reflection about |x> (up to sign); H X ... X H on the
    # controls collapses to a single Z conjugation on the target line
    controls = [q for q in range(L) if q != t]
    gates += [GateSpec("h", (q,), np.pi) for q in controls]
    gates += [GateSpec("x", (q,), np.pi) for q in controls]
    gates.append(GateSpec("z", (t,), np.pi))
    gates += mcx
    gates.append(GateSpec("z", (t,), np.pi))
    gates += [GateSpec("x", (q,), np.pi) for q in controls]
    gates += [GateSpec("h", (q,), np.pi) for q in controls]

    gates = tuple(
        replace(g, noise_slot=i) for i, g in enumerate(gates)
    )
    return GroverCircuit(gates, L, target)


def expected_gate_counts(num_qubits: int):
    """Closed-form (n_crx, n_single, total) for the reference decomposition."""
    L = num_qubits
    n_crx = 2 * (2 * L * L - 6 * L + 5)
    return n_crx, 6 * L, 4 * L * L - 6 * L + 10
