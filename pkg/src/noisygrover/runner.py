"""Experiment orchestration: sweep the (L, delta, realization) grid to CSV.

Each experiment family maps to a list of independent cells; cells are
evaluated in a deterministic order (optionally across worker processes)
and reduced single-threaded, so the output bytes depend only on the
config, never on the worker count.
"""

from __future__ import annotations

import csv
import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import scipy.stats

from . import dynamics as dyn
from . import heff as hf
from . import special as sp
from . import spectral
from .circuit import build_grover_circuit, sample_noise
from .config import SweepConfig

SCHEMA_VERSION = 1

DEFAULT_DELTAS = {
    "spectrum": [round(0.005 * i, 3) for i in range(41)],  # 0 .. 0.2
    "heff": [0.002, 0.005, 0.008, 0.011, 0.014, 0.017, 0.02],
    "dynamics": [0.0, 0.01, 0.06, 0.08, 0.1, 0.17],
}


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _map_cells(func, cells, workers: int):
    if workers <= 1 or len(cells) <= 1:
        return [func(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, cells, chunksize=1))


def _deltas(config: SweepConfig) -> list:
    if config.delta_list:
        return list(config.delta_list)
    return list(DEFAULT_DELTAS.get(config.experiment, []))


# ---------------------------------------------------------------------------
# per-cell workers (module level so they pickle across processes)
# ---------------------------------------------------------------------------


def _spectrum_cell(args):
    L, r, seed, deltas = args
    circuit = build_grover_circuit(L)
    realization = sample_noise(circuit.num_gates, seed)
    rows = []
    for delta in deltas:
        spec = spectral.quasi_spectrum(circuit, realization, delta=delta)
        for i in range(len(spec.phases)):
            rows.append(
                (
                    r,
                    delta,
                    float(spec.phases[i]),
                    float(spec.entropies[i]),
                    i in spec.special_indices,
                )
            )
    return rows


def _heff_cell(args):
    L, r, seed, deltas = args
    circuit = build_grover_circuit(L)
    realization = sample_noise(circuit.num_gates, seed)
    report = hf.build_h_eff(circuit, realization)
    rows = []
    for delta in deltas:
        if delta <= 0:
            continue
        spec = spectral.quasi_spectrum(
            circuit, realization, delta=delta, with_entropies=False
        )
        rows.append(
            (
                r,
                seed,
                delta,
                hf.bulk_validation_distance(spec, report, delta),
                hf.special_validation_distance(spec, report, delta),
            )
        )
    return rows


def _stats_cell(args):
    L, r, seed, want_heatmap = args
    circuit = build_grover_circuit(L)
    realization = sample_noise(circuit.num_gates, seed)
    report = hf.build_h_eff(circuit, realization)
    _, r_mean = hf.level_spacing_ratios(report.eigenvalues)
    _, kld_mean = hf.kl_divergence(report.eigenvectors)
    struct = hf.element_structure(report)
    row = (
        L,
        r,
        seed,
        report.trace_per_dim,
        hf.expected_trace_per_dim(circuit, realization),
        report.e0_realization,
        r_mean,
        kld_mean,
        struct["diag_sq_sum"],
        struct["offdiag_sq_sum"],
    )
    heatmaps = None
    if want_heatmap:
        heatmaps = (
            struct["heatmap"],
            hf.element_structure(report, basis="g0")["heatmap"],
        )
    return row, report.traceless_bulk_eigs.tolist(), heatmaps


def _critical_cell(args):
    L, r, seed = args
    circuit = build_grover_circuit(L)
    realization = sample_noise(circuit.num_gates, seed)
    block = sp.special_block_fast(circuit, realization)
    try:
        delta_c = spectral.find_delta_c_gap(circuit, realization)
        error = ""
    except ValueError as exc:
        delta_c = float("nan")
        error = str(exc)
    return (
        (L, r, seed, delta_c, hf.e0(circuit), error),
        (L, seed, block.b0, block.bx, block.by, block.bz, block.theta),
    )


def _dynamics_cell(args):
    L, r, seed, deltas, t_max = args
    circuit = build_grover_circuit(L)
    realization = sample_noise(circuit.num_gates, seed)
    out = {}
    for delta in deltas:
        trace = dyn.evolve_probabilities(circuit, realization, delta, t_max)
        out[delta] = (trace.p_target, trace.p_xbar)
    return out


# ---------------------------------------------------------------------------
# experiment drivers
# ---------------------------------------------------------------------------


def _run_spectrum(config: SweepConfig, out: Path, workers: int):
    files = []
    deltas = _deltas(config)
    for L in config.L_list:
        cells = [
            (L, r, config.cell_seed(L, r), deltas)
            for r in range(config.realizations)
        ]
        results = _map_cells(_spectrum_cell, cells, workers)
        rows = [row for cell_rows in results for row in cell_rows]
        path = out / str(L) / "spectrum.csv"
        _write_csv(
            path, ["realization_id", "delta", "phi", "entropy", "is_special"], rows
        )
        files.append(path)
    return files, []


def _run_heff(config: SweepConfig, out: Path, workers: int):
    files = []
    deltas = _deltas(config)
    for L in config.L_list:
        cells = [
            (L, r, config.cell_seed(L, r), deltas)
            for r in range(config.realizations)
        ]
        results = _map_cells(_heff_cell, cells, workers)
        rows = [row for cell_rows in results for row in cell_rows]
        path = out / str(L) / "validation.csv"
        _write_csv(
            path,
            ["realization_id", "seed", "delta", "bulk_distance", "special_distance"],
            rows,
        )
        files.append(path)
    return files, []


def _run_stats(config: SweepConfig, out: Path, workers: int):
    files = []
    for L in config.L_list:
        cells = [
            (L, r, config.cell_seed(L, r), r == 0)
            for r in range(config.realizations)
        ]
        results = _map_cells(_stats_cell, cells, workers)
        stats_rows = [res[0] for res in results]
        path = out / str(L) / "stats.csv"
        _write_csv(
            path,
            [
                "L",
                "realization_id",
                "seed",
                "trace_per_dim",
                "trace_identity",
                "e0_realization",
                "r_mean",
                "kld_mean",
                "diag_sq_sum",
                "offdiag_sq_sum",
            ],
            stats_rows,
        )
        files.append(path)

        pooled = np.array([e for res in results for e in res[1]])
        eig_path = out / str(L) / "bulk_eigs.csv"
        _write_csv(eig_path, ["eigenvalue"], [(float(e),) for e in pooled])
        files.append(eig_path)

        e0_value = hf.e0_closed_form(L)
        if pooled.size >= 100:
            density = hf.density_fit(pooled, e0_value)
        else:
            density = {"e0": e0_value, "note": "too few pooled eigenvalues for KS fits"}
        density["r_mean_ensemble"] = float(np.mean([r[6] for r in stats_rows]))
        density["kld_mean_ensemble"] = float(np.mean([r[7] for r in stats_rows]))
        dens_path = out / str(L) / "density.json"
        _write_json(dens_path, density)
        files.append(dens_path)

        heatmaps = results[0][2]
        for name, mat in zip(("heatmap_computational", "heatmap_g0"), heatmaps):
            hpath = out / str(L) / f"{name}.csv"
            _write_csv(
                hpath,
                [f"c{j}" for j in range(mat.shape[1])],
                [tuple(float(v) for v in row) for row in mat],
            )
            files.append(hpath)
    return files, []


def _run_critical(config: SweepConfig, out: Path, workers: int):
    files = []
    failures = []
    gap_summary = {}
    blocks_by_size = {}
    for L in config.L_list:
        cells = [(L, r, config.cell_seed(L, r)) for r in range(config.realizations)]
        results = _map_cells(_critical_cell, cells, workers)
        gap_rows = [res[0] for res in results]
        block_rows = [res[1] for res in results]
        for row in gap_rows:
            if row[5]:
                failures.append({"L": L, "realization": row[1], "error": row[5]})
        path = out / str(L) / "gap.csv"
        _write_csv(
            path, ["L", "realization_id", "seed", "delta_c_gap", "e0", "error"], gap_rows
        )
        files.append(path)
        bpath = out / str(L) / "special_blocks.csv"
        _write_csv(bpath, ["L", "seed", "b0", "bx", "by", "bz", "theta"], block_rows)
        files.append(bpath)

        values = np.array([row[3] for row in gap_rows if np.isfinite(row[3])])
        e0_value = hf.e0_closed_form(L)
        gap_summary[str(L)] = {
            "mean_delta_c_gap": float(np.mean(values)) if values.size else None,
            "stderr": float(np.std(values, ddof=1) / np.sqrt(values.size))
            if values.size > 1
            else None,
            "count": int(values.size),
            "pred_half_pi_over_e0": float(np.pi / (2.0 * e0_value)),
            "pred_third_pi_over_e0": float(np.pi / (3.0 * e0_value)),
        }
        blocks_by_size[L] = [
            sp.SpecialBlock(b0=row[2], bx=row[3], by=row[4], bz=row[5], theta=row[6], num_qubits=L)
            for row in block_rows
        ]

    sizes = [
        L for L in config.L_list if gap_summary[str(L)]["mean_delta_c_gap"] is not None
    ]
    if len(sizes) >= 2:
        logL = np.log([float(L) for L in sizes])
        logd = np.log([gap_summary[str(L)]["mean_delta_c_gap"] for L in sizes])
        fit = scipy.stats.linregress(logL, logd)
        gap_summary["loglog_fit"] = {
            "slope": float(fit.slope),
            "intercept": float(fit.intercept),
            "r_value": float(fit.rvalue),
        }
    spath = out / "summary.json"
    _write_json(spath, gap_summary)
    files.append(spath)

    if len(blocks_by_size) >= 3:
        comp = sp.estimate_delta_c_comp(blocks_by_size)
        cpath = out / "comp_fit.json"
        _write_json(cpath, comp)
        files.append(cpath)
    return files, failures


def _run_dynamics(config: SweepConfig, out: Path, workers: int):
    files = []
    deltas = _deltas(config)
    for L in config.L_list:
        t_max = config.t_max_for(L)
        cells = [
            (L, r, config.cell_seed(L, r), deltas, t_max)
            for r in range(config.realizations)
        ]
        results = _map_cells(_dynamics_cell, cells, workers)
        rows = []
        n_real = len(results)
        for delta in deltas:
            p0 = np.stack([res[delta][0] for res in results])
            px = np.stack([res[delta][1] for res in results])
            sem = 1.0 / np.sqrt(n_real) if n_real > 1 else 0.0
            p0_sem = np.std(p0, axis=0, ddof=1) * sem if n_real > 1 else np.zeros(p0.shape[1])
            px_sem = np.std(px, axis=0, ddof=1) * sem if n_real > 1 else np.zeros(px.shape[1])
            for t in range(t_max + 1):
                rows.append(
                    (
                        delta,
                        t,
                        float(np.mean(p0[:, t])),
                        float(p0_sem[t]),
                        float(np.mean(px[:, t])),
                        float(px_sem[t]),
                    )
                )
        path = out / str(L) / "dynamics.csv"
        _write_csv(
            path,
            ["delta", "t", "p0_mean", "p0_sem", "pxbar_mean", "pxbar_sem"],
            rows,
        )
        files.append(path)
    return files, []


_DRIVERS = {
    "spectrum": _run_spectrum,
    "heff": _run_heff,
    "stats": _run_stats,
    "critical": _run_critical,
    "dynamics": _run_dynamics,
}


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def run(config: SweepConfig) -> dict:
    """Execute one experiment family and write its CSVs plus a manifest.

    Returns the manifest dict; ``failures`` is nonempty on partial failure.
    """
    out = Path(config.out_dir) / config.experiment
    out.mkdir(parents=True, exist_ok=True)
    driver = _DRIVERS[config.experiment]
    files, failures = driver(config, out, config.num_workers())
    manifest = {
        "experiment": config.experiment,
        "schema_version": SCHEMA_VERSION,
        "config": json.loads(config.model_dump_json()),
        "config_hash": config.content_hash(),
        "files": {
            str(p.relative_to(out)): _sha256(p) for p in sorted(files)
        },
        "failures": failures,
    }
    _write_json(out / "manifest.json", manifest)
    return manifest
