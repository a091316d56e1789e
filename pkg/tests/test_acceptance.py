"""End-to-end acceptance checks for the noisy Grover analysis.

Each test prints a single PASS/FAIL line for its criterion; run with
``pytest -m acceptance -s`` to see them.  The heavy ensembles (L = 10
effective Hamiltonians, L = 10 dynamics, critical-noise sweeps) sit in
session fixtures so related criteria share one computation.
"""

import numpy as np
import pytest

from noisygrover.circuit import (
    NoiseRealization,
    abstract_grover,
    build_grover_circuit,
    conjugate_by_vw,
    decompose_mcx,
    dense_unitary,
    grover_angle,
    sample_noise,
)
from noisygrover.config import SweepConfig
from noisygrover.core import aligned_maxnorm_distance, unitary_eigs
from noisygrover.dynamics import (
    DynamicsTrace,
    default_t_max,
    evolve_probabilities,
    fit_period2_rate,
    measure_p_b,
    noiseless_target_probability,
)
from noisygrover.heff import (
    build_h_eff,
    bulk_validation_distance,
    density_fit,
    e0,
    e0_closed_form,
    e0_mc,
    expected_trace_per_dim,
    kl_divergence,
    level_spacing_ratios,
)
from noisygrover.runner import run
from noisygrover.special import estimate_delta_c_comp, special_block_fast
from noisygrover.spectral import find_delta_c_gap, quasi_spectrum
from noisygrover.runner import DEFAULT_DELTAS  # noqa: F401  (schema anchor)

pytestmark = pytest.mark.acceptance

ENSEMBLE_L10 = 128
DYNAMICS_REALIZATIONS = 64
DYNAMICS_DELTAS = (0.01, 0.06, 0.08, 0.1, 0.15, 0.17, 0.2)
GAP_REALIZATIONS = {6: 20, 7: 20, 8: 20, 9: 20, 10: 20, 11: 12, 12: 8}


def _report(num, label, ok, detail=""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num:02d} ({label}): {detail}")
    assert ok, f"criterion {num} ({label}): {detail}"


# ---------------------------------------------------------------------------
# shared heavy ensembles
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def heff_ensemble_l10():
    """r-ratio, KLd and bulk eigenvalues for 128 L=10 realizations.

    Reports are reduced immediately; keeping 128 dense 1024^2 Hamiltonians
    alive would not fit in memory.
    """
    c = build_grover_circuit(10)
    r_means, kld_means, bulk = [], [], []
    for s in range(ENSEMBLE_L10):
        rep = build_h_eff(c, sample_noise(c.num_gates, seed=5000 + s))
        _, r_mean = level_spacing_ratios(rep.eigenvalues)
        _, kld_mean = kl_divergence(rep.eigenvectors)
        r_means.append(r_mean)
        kld_means.append(kld_mean)
        bulk.append(rep.traceless_bulk_projected_eigs)
    return {
        "r_means": np.array(r_means),
        "kld_means": np.array(kld_means),
        "bulk_pooled": np.concatenate(bulk),
    }


@pytest.fixture(scope="session")
def dynamics_ensemble_l10():
    """Ensemble-mean occupation traces at L=10 for the phenomenology checks."""
    c = build_grover_circuit(10)
    t_max = default_t_max(10)
    sums = {d: [np.zeros(t_max + 1), np.zeros(t_max + 1)] for d in DYNAMICS_DELTAS}
    pb_at_006 = []
    e0_10 = e0_closed_form(10)
    for s in range(DYNAMICS_REALIZATIONS):
        real = sample_noise(c.num_gates, seed=7000 + s)
        for d in DYNAMICS_DELTAS:
            tr = evolve_probabilities(c, real, d, t_max)
            sums[d][0] += tr.p_target
            sums[d][1] += tr.p_xbar
            if d == 0.06:
                pb_at_006.append(measure_p_b(tr, e0_10))
    means = {
        d: {
            "p0": sums[d][0] / DYNAMICS_REALIZATIONS,
            "pxbar": sums[d][1] / DYNAMICS_REALIZATIONS,
        }
        for d in DYNAMICS_DELTAS
    }
    return {"t": np.arange(t_max + 1), "means": means, "pb_006": np.array(pb_at_006)}


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_criterion_01_noiseless_probability():
    worst = 0.0
    for L in range(2, 11):
        c = build_grover_circuit(L)
        real = NoiseRealization.noiseless(c.num_gates)
        t_max = max(2 * int(np.floor(np.pi / 4.0 * 2.0 ** (L / 2.0))), 1)
        tr = evolve_probabilities(c, real, 0.0, t_max)
        dev = np.max(np.abs(tr.p_target - noiseless_target_probability(L, tr.times)))
        worst = max(worst, float(dev))
    _report(1, "noiseless target probability", worst < 1e-9,
            f"max |P_w - closed form| = {worst:.2e} over L=2..10")


def test_criterion_02_decomposition_oracle():
    rng = np.random.default_rng(11)
    worst = 0.0
    counts_ok = True
    for L in range(3, 7):
        for _ in range(5):
            target = "".join(rng.choice(["0", "1"], size=L))
            c = build_grover_circuit(L, target=target)
            mcx = decompose_mcx(L)
            counts_ok &= (
                sum(1 for g in mcx if g.kind == "crx") == 2 * L * L - 6 * L + 5
            )
            d = aligned_maxnorm_distance(
                dense_unitary(c).entries, abstract_grover(L, target).entries
            )
            worst = max(worst, d)
    _report(2, "circuit decomposition", worst < 1e-8 and counts_ok,
            f"max aligned distance {worst:.2e}, CRx counts exact: {counts_ok}")


def test_criterion_03_spectrum_structure():
    worst_struct = 0.0
    worst_multiset = 0.0
    rng = np.random.default_rng(23)
    for L in range(3, 7):
        c = build_grover_circuit(L)
        spec = quasi_spectrum(c, NoiseRealization.noiseless(c.num_gates),
                              with_entropies=False)
        split = np.pi - 2 * grover_angle(L)
        special = np.sort(spec.phases[list(spec.special_indices)])
        bulk = np.delete(spec.phases, list(spec.special_indices))
        worst_struct = max(
            worst_struct,
            float(np.max(np.abs(special - [-split, split]))),
            float(np.max(np.abs(bulk))),
        )
        target = "".join(rng.choice(["0", "1"], size=L))
        cw = build_grover_circuit(L, target=target)
        phases_w, _ = unitary_eigs(dense_unitary(cw))
        phases_conj, _ = unitary_eigs(conjugate_by_vw(dense_unitary(c), target))
        worst_multiset = max(
            worst_multiset,
            float(np.max(np.abs(np.sort(phases_w) - np.sort(phases_conj)))),
        )
    ok = worst_struct < 1e-9 and worst_multiset < 1e-9
    _report(3, "noiseless spectrum structure", ok,
            f"structure dev {worst_struct:.2e}, multiset dev {worst_multiset:.2e}")


def test_criterion_04_trace_identity():
    worst = 0.0
    for L in range(4, 9):
        c = build_grover_circuit(L)
        for s in range(32):
            real = sample_noise(c.num_gates, seed=4000 + 100 * L + s)
            rep = build_h_eff(c, real)
            worst = max(worst, abs(rep.trace_per_dim - expected_trace_per_dim(c, real)))
    _report(4, "trace identity", worst < 1e-9,
            f"max |Tr/N - sum rule| = {worst:.2e} over L=4..8, 32 realizations")


def test_criterion_05_e0_closed_form():
    worst = 0.0
    for L in range(3, 11):
        c = build_grover_circuit(L)
        worst = max(worst, abs(e0(c) - e0_closed_form(L)))
    c5 = build_grover_circuit(5)
    reports = [
        build_h_eff(c5, sample_noise(c5.num_gates, seed=2000 + s)) for s in range(128)
    ]
    mean, se = e0_mc(reports)
    mc_dev = abs(mean - e0_closed_form(5))
    ok = worst < 1e-10 and mc_dev < 2 * se
    _report(5, "E0 closed form", ok,
            f"closed-form dev {worst:.2e}; MC {mean:.4f} vs {e0_closed_form(5):.4f}"
            f" ({mc_dev / se:.2f} SE, 128 realizations)")


def test_criterion_06_first_order_validity():
    L = 8
    c = build_grover_circuit(L)
    deltas = np.array([0.002, 0.005, 0.01, 0.02])
    dists = np.zeros_like(deltas)
    for s in range(5):
        real = sample_noise(c.num_gates, seed=600 + s)
        rep = build_h_eff(c, real)
        for i, d in enumerate(deltas):
            spec = quasi_spectrum(c, real, delta=d, with_entropies=False)
            dists[i] += bulk_validation_distance(spec, rep, d) / 5.0
    slope = np.polyfit(np.log(deltas), np.log(dists), 1)[0]
    ok = bool(np.all(np.diff(dists) > 0)) and 0.7 < slope < 1.3
    _report(6, "first-order spectral validity", ok,
            f"mean distances {np.array2string(dists, precision=4)} for deltas "
            f"{deltas.tolist()}, log-log slope {slope:.2f}")


def test_criterion_07_rmt_class(heff_ensemble_l10):
    r = float(np.mean(heff_ensemble_l10["r_means"]))
    kld = float(np.mean(heff_ensemble_l10["kld_means"]))
    ok = abs(r - 0.599) < 0.015 and abs(kld - 1.0) < 0.15
    _report(7, "RMT universality class", ok,
            f"<r> = {r:.4f} (target 0.599 +- 0.015), <KLd> = {kld:.4f}"
            f" (target 1.0 +- 0.15), {ENSEMBLE_L10} realizations")


def test_criterion_08_density_shape(heff_ensemble_l10):
    pooled = heff_ensemble_l10["bulk_pooled"]
    res = density_fit(pooled, e0_closed_form(10))
    ok = res["ks_gaussian"] < res["ks_semicircle"]
    _report(8, "bulk density shape", ok,
            f"KS Gaussian {res['ks_gaussian']:.4f} < KS semicircle "
            f"{res['ks_semicircle']:.4f} on {pooled.size} pooled eigenvalues")


def test_criterion_09_gap_closing_scaling():
    sizes = np.arange(6, 13)
    means = []
    for L in sizes:
        c = build_grover_circuit(L)
        vals = []
        for r in range(GAP_REALIZATIONS[L]):
            real = sample_noise(c.num_gates, seed=900 + 37 * L + r)
            vals.append(find_delta_c_gap(c, real))
        means.append(float(np.mean(vals)))
    means = np.array(means)
    slope = np.polyfit(np.log(sizes), np.log(means), 1)[0]
    dc10 = means[sizes.tolist().index(10)]
    ok = abs(slope + 1.0) < 0.15 and 0.12 <= dc10 <= 0.18
    _report(9, "gap-closing scaling", ok,
            f"log-log slope {slope:.3f} (target -1 +- 0.15), "
            f"mean delta_c,gap(10) = {dc10:.3f} (target [0.12, 0.18])")


def test_criterion_10_special_block_scalings():
    blocks = {}
    for L in range(6, 11):
        c = build_grover_circuit(L)
        blocks[L] = [
            special_block_fast(c, sample_noise(c.num_gates, seed=300 + 17 * L + s))
            for s in range(300)
        ]
    fit = estimate_delta_c_comp(blocks)
    dc10 = fit["delta_c_comp"][10]
    ok = (
        fit["r2_var_bz_vs_L"] > 0.9
        and fit["r2_var_bxy_vs_invN"] > 0.9
        and 0.01 <= dc10 <= 0.04
    )
    _report(10, "special-block variance scalings", ok,
            f"R2[Var(bz) ~ L] = {fit['r2_var_bz_vs_L']:.3f}, "
            f"R2[Var(bx,y) ~ 1/N] = {fit['r2_var_bxy_vs_invN']:.3f}, "
            f"delta_c,comp(10) = {dc10:.4f} (target [0.01, 0.04])")


def test_criterion_11a_weak_noise_order_preserved(dynamics_ensemble_l10):
    peak = float(np.max(dynamics_ensemble_l10["means"][0.01]["p0"]))
    _report(11, "11a weak-noise amplitude", peak > 0.5,
            f"max <P0> = {peak:.3f} at delta = 0.01")


def test_criterion_11b_intermediate_noise(dynamics_ensemble_l10):
    t = dynamics_ensemble_l10["t"]
    p0 = dynamics_ensemble_l10["means"][0.08]["p0"]
    clean = noiseless_target_probability(10, t)
    t_peak = int(np.argmax(p0))
    t_peak_clean = int(np.argmax(clean))
    peak = float(np.max(p0))
    ok = t_peak < t_peak_clean and peak < 0.8 * float(np.max(clean))
    _report(11, "11b intermediate-noise oscillations", ok,
            f"first peak t = {t_peak} (noiseless {t_peak_clean}), "
            f"amplitude {peak:.3f} (noiseless {float(np.max(clean)):.3f})")


def test_criterion_11c_strong_noise_suppression(dynamics_ensemble_l10):
    n = 2.0**10
    p0 = dynamics_ensemble_l10["means"][0.17]["p0"]
    worst = float(np.max(np.abs(p0 - 1.0 / n)))
    _report(11, "11c strong-noise suppression", worst <= 5.0 / n,
            f"max |<P0> - 1/N| = {worst * n:.2f}/N (limit 5/N) at delta = 0.17")


def test_criterion_11d_period2_rate(dynamics_ensemble_l10):
    e0_10 = e0_closed_form(10)
    ratios = []
    for d in (0.1, 0.15, 0.2):
        rate = fit_period2_rate(dynamics_ensemble_l10["means"][d]["pxbar"])
        ratios.append(rate / (d * d * e0_10 * e0_10 / 2.0))
    mean_ratio = float(np.mean(ratios))
    _report(11, "11d period-2 Gaussian rate", abs(mean_ratio - 1.0) < 0.3,
            f"fitted/predicted rate ratios {np.round(ratios, 3).tolist()}, "
            f"mean {mean_ratio:.3f} (target 1 +- 0.3)")


def test_criterion_11e_leakage_weight(dynamics_ensemble_l10):
    est = (0.06 * e0_closed_form(10)) ** 2 / 4.0
    measured = float(np.mean(dynamics_ensemble_l10["pb_006"]))
    ok = est / 2.0 < measured < est * 2.0
    _report(11, "11e leaked weight", ok,
            f"measured P_b = {measured:.4f} vs delta^2 E0^2 / 4 = {est:.4f}"
            " at delta = 0.06")


def test_criterion_12_determinism(tmp_path):
    outputs = []
    for workers in (1, 2):
        out = tmp_path / f"w{workers}"
        for experiment, extra in (
            ("spectrum", dict(delta_list=[0.0, 0.1])),
            ("dynamics", dict(delta_list=[0.05], t_max=6)),
        ):
            cfg = SweepConfig(
                experiment=experiment, L_list=[4], realizations=3,
                base_seed=55, out_dir=out, workers=workers, **extra,
            )
            run(cfg)
        csvs = sorted(p for p in out.rglob("*.csv"))
        outputs.append({p.relative_to(out): p.read_bytes() for p in csvs})
    ok = outputs[0] == outputs[1] and len(outputs[0]) > 0
    _report(12, "worker-count determinism", ok,
            f"{len(outputs[0])} CSV files byte-identical across worker counts")
