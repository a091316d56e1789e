"""Dressed two-level block of the special states and the computing threshold.

Restricting H_eff to span{|0...0>, |xbar>} gives ``b0 I + b.tau``; combined
with the noiseless splitting this is a Bloch rotation whose axis tilt and
length set the Grover oscillation's amplitude and frequency.  The noise
variance of ``b_z`` grows with L while the noiseless term shrinks as 1/N,
which is what makes the computing threshold collapse exponentially.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.stats

from .core import principal_branch
from .circuit import grover_angle
from .heff import EffHamiltonianReport


@dataclass(frozen=True)
class SpecialBlock:
    """Pauli decomposition of H_eff restricted to the special subspace.

    Basis order is (|0...0>, |xbar>): ``b_x = Re h01``, ``b_y = -Im h01``,
    ``b_z = (h00 - h11)/2``, ``b0 = (h00 + h11)/2``.
    """

    b0: float
    bx: float
    by: float
    bz: float
    theta: float
    num_qubits: int

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.bx, self.by, self.bz])


def xbar_state(num_qubits: int) -> np.ndarray:
    """Uniform positive superposition over the nonzero basis states."""
    n = 2**num_qubits
    v = np.full(n, 1.0 / np.sqrt(n - 1), dtype=complex)
    v[0] = 0.0
    return v


def special_block(report: EffHamiltonianReport) -> SpecialBlock:
    L = report.num_qubits
    h = report.h_eff.entries
    xbar = xbar_state(L)
    zero = np.zeros(2**L, dtype=complex)
    zero[0] = 1.0
    h00 = float((zero.conj() @ h @ zero).real)
    h11 = float((xbar.conj() @ h @ xbar).real)
    h01 = complex(zero.conj() @ h @ xbar)
    return SpecialBlock(
        b0=(h00 + h11) / 2.0,
        bx=float(h01.real),
        by=float(-h01.imag),
        bz=(h00 - h11) / 2.0,
        theta=grover_angle(L),
        num_qubits=L,
    )


def special_block_fast(circuit, realization) -> SpecialBlock:
    """Special block via H_eff matvecs on |0> and |xbar| only (no dense build)."""
    from .heff import h_eff_matvec

    L = circuit.num_qubits
    n = 2**L
    xbar = xbar_state(L)
    zero = np.zeros(n, dtype=complex)
    zero[0] = 1.0
    hv = h_eff_matvec(circuit, realization, np.stack([zero, xbar], axis=1))
    h00 = float(np.vdot(zero, hv[:, 0]).real)
    h11 = float(np.vdot(xbar, hv[:, 1]).real)
    h01 = complex(np.vdot(zero, hv[:, 1]))
    return SpecialBlock(
        b0=(h00 + h11) / 2.0,
        bx=float(h01.real),
        by=float(-h01.imag),
        bz=(h00 - h11) / 2.0,
        theta=grover_angle(L),
        num_qubits=L,
    )


def block_axis(block: SpecialBlock, delta: float) -> np.ndarray:
    """Bloch vector of the dressed block exponent in the (|0>, |xbar>) basis.

    The noiseless part contributes ``-2 theta tau_y`` (the cat states are
    tau_y eigenstates at phases ±(pi - 2 theta)).
    """
    return np.array(
        [delta * block.bx, delta * block.by - 2.0 * block.theta, delta * block.bz]
    )


def gap_squared(block: SpecialBlock, delta: float) -> float:
    """Squared splitting of the two special quasienergies, ``Delta^2 = 4 r^2``."""
    m = block_axis(block, delta)
    return float(4.0 * np.dot(m, m))


def special_phases_model(block: SpecialBlock, delta: float) -> np.ndarray:
    """Predicted special phases ``pi + delta b0 ± r`` on the principal branch."""
    r = 0.5 * np.sqrt(gap_squared(block, delta))
    return principal_branch(
        np.array([np.pi + delta * block.b0 + r, np.pi + delta * block.b0 - r])
    )


def theta_prime(block: SpecialBlock, delta: float) -> float:
    """Dressed mixing angle: polar tilt of the block axis off the cat direction.

    At delta = 0 the axis points along -y and theta' = pi/2 (equal-weight
    cats); a dominant b_z drives theta' toward 0 or pi and kills the Grover
    oscillation amplitude.
    """
    m = block_axis(block, delta)
    r = np.linalg.norm(m)
    if r == 0.0:
        return np.pi / 2.0
    return float(np.arccos(np.clip(delta * block.bz / r, -1.0, 1.0)))


# ---------------------------------------------------------------------------
# ensemble scaling fits and the computing threshold
# ---------------------------------------------------------------------------


def _origin_fit(x: np.ndarray, y: np.ndarray):
    """Least-squares slope through the origin with the no-intercept R^2.

    Without an intercept the centered R^2 is not meaningful (it can go
    negative), so the uncentered total sum of squares is used, as is
    conventional for regression through the origin.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope = float(np.dot(x, y) / np.dot(x, x))
    resid = y - slope * x
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum(y**2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return slope, r2, resid


def block_variances(blocks) -> dict:
    """Component variances (and means) of an ensemble of blocks at one size."""
    arr = np.array([[b.bx, b.by, b.bz, b.b0] for b in blocks])
    return {
        "num_qubits": blocks[0].num_qubits,
        "count": len(blocks),
        "mean_bx": float(np.mean(arr[:, 0])),
        "mean_by": float(np.mean(arr[:, 1])),
        "mean_bz": float(np.mean(arr[:, 2])),
        "mean_b0": float(np.mean(arr[:, 3])),
        "var_bx": float(np.var(arr[:, 0], ddof=1)),
        "var_by": float(np.var(arr[:, 1], ddof=1)),
        "var_bz": float(np.var(arr[:, 2], ddof=1)),
    }


def estimate_delta_c_comp(blocks_by_size: dict) -> dict:
    """Fit the splitting model over system sizes and locate the threshold.

    ``E[Delta^2] = A/N + B delta^2/N + C L delta^2`` with ``A`` from the
    noiseless ``16 theta^2``, ``B`` from ``Var b_x + Var b_y`` vs 1/N, and
    ``C`` from ``Var b_z`` vs L (both through the origin, the asserted
    functional forms).  ``delta_c = sqrt(A / (C L N))``.
    """
    sizes = sorted(blocks_by_size)
    if len(sizes) < 3:
        raise ValueError("need variances at >= 3 system sizes")
    stats = [block_variances(blocks_by_size[L]) for L in sizes]
    Ls = np.array(sizes, dtype=float)
    Ns = 2.0**Ls
    var_z = np.array([s["var_bz"] for s in stats])
    var_xy = np.array([s["var_bx"] + s["var_by"] for s in stats])
    # A: through-origin slope of the noiseless splitting vs 1/N
    delta0_sq = np.array([16.0 * grover_angle(int(L)) ** 2 for L in sizes])
    a_coef, _, _ = _origin_fit(1.0 / Ns, delta0_sq)
    c_slope, c_r2, c_resid = _origin_fit(Ls, 4.0 * var_z)
    c_coef = c_slope  # C multiplies L delta^2 directly
    b_coef, b_r2, b_resid = _origin_fit(1.0 / Ns, 4.0 * var_xy)
    degenerate = c_coef <= 0.0
    delta_c = {}
    for L in sizes:
        n = 2.0**L
        delta_c[int(L)] = (
            float("inf") if degenerate else float(np.sqrt(a_coef / (c_coef * L * n)))
        )
    return {
        "A": float(a_coef),
        "B": float(b_coef),
        "C": float(c_coef),
        "r2_var_bz_vs_L": float(c_r2),
        "r2_var_bxy_vs_invN": float(b_r2),
        "resid_var_bz_vs_L": c_resid.tolist(),
        "resid_var_bxy_vs_invN": b_resid.tolist(),
        "degenerate": bool(degenerate),
        "delta_c_comp": delta_c,
        "per_size": stats,
    }
