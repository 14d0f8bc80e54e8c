"""Command-line surface: instance generation/filtering, solvers, TTS, analyses.

Every command is deterministic under --seed: re-running with identical flags
produces byte-identical output files (no timestamps, sorted keys, stable
float formatting).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, ising, orchestrator, pipeline, sampler
from .ising import LatticeSpec, load_instance, save_instance
from .local_search import greedy_descent
from .orchestrator import QjumpConfig
from .params import TransferParams, build_schedule
from .sampler import SamplerConfig

CSV_FORMAT = "qjump-csv/1"


def _write_csv(path, name: str, meta: dict, header: list[str], rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(f"# {CSV_FORMAT} {name}\n")
        for key in sorted(meta):
            f.write(f"# {key}={meta[key]}\n")
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path, doc: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(doc, f, indent=1, sort_keys=True)
        f.write("\n")


def _load_params(args) -> TransferParams:
    return TransferParams.load(args.params_file)


def _instance_id(inst, path) -> str:
    return str(inst.metadata.get("id", Path(path).stem))


def _warm_starts(rng: np.random.Generator, reference: np.ndarray, hd: int,
                 count: int) -> np.ndarray:
    """Random bitstrings at exactly `hd` flips from the reference."""
    n = reference.shape[0]
    if not 0 <= hd <= n:
        raise ValueError(f"warm-start distance {hd} out of range for n={n}")
    out = np.tile(reference, (count, 1))
    for i in range(count):
        flip = rng.choice(n, size=hd, replace=False)
        out[i, flip] ^= 1
    return out


def cmd_generate(args) -> int:
    spec = LatticeSpec(args.lattice_l, tuple(args.mask or ()))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seeds = np.random.SeedSequence(args.seed).generate_state(args.count, dtype=np.uint32)
    rows = []
    for i in range(args.count):
        inst = ising.generate_lattice_instance(spec, int(seeds[i]),
                                               args.sigma_j, args.sigma_h)
        inst.metadata["id"] = f"inst_{i:04d}"
        fname = out_dir / f"inst_{i:04d}.json"
        save_instance(inst, fname)
        rows.append([f"inst_{i:04d}", fname.name, inst.n, int(seeds[i])])
    _write_csv(out_dir / "manifest.csv", "generate",
               {"count": args.count, "lattice_l": args.lattice_l,
                "seed": args.seed, "sigma_j": args.sigma_j,
                "sigma_h": args.sigma_h},
               ["id", "file", "n", "seed"], rows)
    print(f"wrote {args.count} instances to {out_dir}")
    return 0


def cmd_filter(args) -> int:
    spec = LatticeSpec(args.lattice_l, tuple(args.mask or ()))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = pipeline.filter_instances(
        args.count, spec, args.seed, args.keep_tts, args.keep_cjump,
        sa_sweeps=args.sweeps, sa_restarts=args.restarts,
        cjump_runs=args.cjump_runs, cjump_eta=args.cjump_eta,
        sigma_J=args.sigma_j, sigma_h=args.sigma_h)
    rows = []
    for rank, rec in enumerate(records):
        rec.instance.metadata["id"] = rec.instance_id
        fname = out_dir / f"{rec.instance_id}.json"
        save_instance(rec.instance, fname)
        rows.append([rank, rec.instance_id, fname.name, rec.instance.n, rec.seed,
                     rec.ground_energy, int(rec.ground_exact),
                     rec.sa_p_success, rec.sa_tts_s, rec.cjump_p_success])
    _write_csv(out_dir / "ranking.csv", "filter",
               {"count": args.count, "keep_tts": args.keep_tts,
                "keep_cjump": args.keep_cjump, "seed": args.seed,
                "sweeps": args.sweeps, "restarts": args.restarts},
               ["rank", "id", "file", "n", "seed", "ground_energy",
                "ground_exact", "sa_p_success", "sa_tts_s", "cjump_p_success"],
               rows)
    print(f"kept {len(records)} instances in {out_dir}")
    return 0


def cmd_solve_sa(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, _, exact = pipeline.ground_truth(inst, seed=args.seed)
    bench = pipeline.sa_benchmark(inst, inst_id, e_g, exact, args.sweeps,
                                  args.restarts, args.seed, schedule=args.schedule)
    rows = [[inst_id, r, rec.energy, int(rec.hit), rec.acceptance]
            for r, rec in enumerate(bench.runs)]
    _write_csv(args.out, "solve-sa",
               {"instance": inst_id, "sweeps": args.sweeps,
                "schedule": args.schedule, "restarts": args.restarts,
                "seed": args.seed, "ground_energy": e_g,
                "ground_exact": int(exact)},
               ["instance", "restart", "e_best", "hit", "acceptance"], rows)
    print(f"sa: p_success={bench.p_success:.4f} tts={bench.tts_s:.6g} s")
    return 0


def cmd_solve_qjump(args, backend: str = "statevector") -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, _, exact = pipeline.ground_truth(inst, seed=args.seed)
    eta = getattr(args, "eta", None)
    cfg = SamplerConfig(args.layers, args.source_depth, args.alpha, args.shots,
                        backend=backend, eta=eta, seed=args.seed)
    qcfg = QjumpConfig(cfg, args.iterations, seed=args.seed)
    params = _load_params(args) if backend == "statevector" else None
    bench = pipeline.qjump_benchmark(inst, inst_id, e_g, exact, qcfg,
                                     args.runs, args.seed, params=params)

    schedule = (build_schedule(params, inst, args.layers, args.source_depth)
                if backend == "statevector" else None)
    trace = orchestrator.run_qjump(
        inst, QjumpConfig(cfg, args.iterations,
                          seed=int(np.random.default_rng(args.seed).integers(0, 2 ** 63 - 1))),
        schedule=schedule)
    trace_doc = {
        "format": "qjump-trace/1",
        "instance": inst_id,
        "backend": backend,
        "layers": args.layers,
        "source_depth": args.source_depth,
        "alpha": args.alpha,
        "eta": eta,
        "shots": args.shots,
        "iterations": [
            {"index": rec.index,
             "best_energy": rec.best_energy,
             "best_bits": ising.bits_to_string(rec.best_bits),
             "mean_descent_steps": float(rec.descent_steps.mean()),
             "mean_replay_flips": float(rec.replay_flips.mean())}
            for rec in trace.iterations],
        "best_energy": trace.best_energy,
        "best_bits": ising.bits_to_string(trace.best_bits),
        "ground_energy": e_g,
        "ground_exact": exact,
        "seed": args.seed,
    }
    _write_json(f"{args.out_prefix}.trace.json", trace_doc)
    rows = [[inst_id, r, rec.energy, int(rec.hit), round(rec.model_time_ns, 6)]
            for r, rec in enumerate(bench.runs)]
    _write_csv(f"{args.out_prefix}.summary.csv", f"solve-{bench.algorithm}",
               {"instance": inst_id, "layers": args.layers,
                "source_depth": args.source_depth, "alpha": args.alpha,
                "shots": args.shots, "iterations": args.iterations,
                "backend": backend, "eta": eta, "runs": args.runs,
                "seed": args.seed, "ground_energy": e_g,
                "ground_exact": int(exact)},
               ["instance", "run", "e_best", "hit", "model_time_ns"], rows)
    print(f"{bench.algorithm}: p_success={bench.p_success:.4f} "
          f"tts={bench.tts_s:.6g} s")
    return 0


def cmd_solve_qaoa(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, _, exact = pipeline.ground_truth(inst, seed=args.seed)
    bench = pipeline.qaoa_baseline(inst, inst_id, e_g, exact, args.source_depth,
                                   args.runs, args.seed, params=_load_params(args))
    rows = [[inst_id, r, rec.energy, int(rec.hit), round(rec.model_time_ns, 6)]
            for r, rec in enumerate(bench.runs)]
    _write_csv(args.out, "solve-qaoa",
               {"instance": inst_id, "source_depth": args.source_depth,
                "runs": args.runs, "seed": args.seed, "ground_energy": e_g,
                "ground_exact": int(exact)},
               ["instance", "run", "e_best", "hit", "model_time_ns"], rows)
    print(f"qaoa: p_success={bench.p_success:.4f} tts={bench.tts_s:.6g} s")
    return 0


def cmd_tts(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, _, exact = pipeline.ground_truth(inst, seed=args.seed)
    if args.algorithm == "sa":
        bench = pipeline.sa_benchmark(inst, inst_id, e_g, exact, args.sweeps,
                                      args.runs, args.seed)
    elif args.algorithm == "qaoa":
        bench = pipeline.qaoa_baseline(inst, inst_id, e_g, exact,
                                       args.source_depth, args.runs, args.seed,
                                       params=_load_params(args))
    else:
        backend = "statevector" if args.algorithm == "qjump" else "classical-random"
        cfg = SamplerConfig(args.layers, args.source_depth, args.alpha,
                            args.shots, backend=backend, eta=args.eta,
                            seed=args.seed)
        bench = pipeline.qjump_benchmark(
            inst, inst_id, e_g, exact, QjumpConfig(cfg, args.iterations, seed=args.seed),
            args.runs, args.seed,
            params=_load_params(args) if backend == "statevector" else None)
    _write_csv(args.out, "tts",
               {"instance": inst_id, "algorithm": args.algorithm,
                "runs": args.runs, "seed": args.seed,
                "ground_energy": e_g, "ground_exact": int(exact)},
               ["instance", "algorithm", "runs", "p_success", "t_run_s", "tts_s"],
               [[inst_id, args.algorithm, args.runs, bench.p_success,
                 bench.mean_model_time_s, bench.tts_s]])
    print(f"{args.algorithm}: p_success={bench.p_success:.4f} "
          f"t_run={bench.mean_model_time_s:.6g} s tts={bench.tts_s:.6g} s")
    return 0


def _compare_one(work) -> tuple:
    """Worker for one instance of the fixed-budget comparison (picklable)."""
    path, args_dict = work
    inst = load_instance(path)
    inst_id = _instance_id(inst, path)
    e_g, minimizers, exact = pipeline.ground_truth(inst, seed=args_dict["seed"])
    cfg = SamplerConfig(args_dict["layers"], args_dict["source_depth"],
                        args_dict["alpha"], args_dict["shots"],
                        seed=args_dict["seed"])
    params = TransferParams.load(args_dict["params_file"])
    entries = pipeline.fixed_budget_comparison(
        inst, inst_id, e_g, exact, args_dict["budget_ms"], args_dict["seed"],
        QjumpConfig(cfg, args_dict["iterations"], seed=args_dict["seed"]),
        sa_sweeps=args_dict["sweeps"], qaoa_depth=args_dict["qaoa_depth"],
        params=params)
    return path, inst, inst_id, e_g, minimizers, exact, entries


def cmd_compare(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    work = [(path, {"seed": args.seed, "layers": args.layers,
                    "source_depth": args.source_depth, "alpha": args.alpha,
                    "shots": args.shots, "iterations": args.iterations,
                    "budget_ms": args.budget_ms, "sweeps": args.sweeps,
                    "qaoa_depth": args.qaoa_depth,
                    "params_file": args.params_file})
            for path in sorted(args.instances)]
    if args.jobs > 1 and len(work) > 1:
        import multiprocessing
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_compare_one, work)
        results.sort(key=lambda r: r[0])  # aggregation is order-independent
    else:
        results = [_compare_one(w) for w in work]

    summary_rows = []
    for path, inst, inst_id, e_g, minimizers, exact, entries in results:
        for entry in entries:
            if entry.n_runs == 0:
                print(f"warning: budget below one {entry.algorithm} run "
                      f"({entry.run_time_ns:.0f} ns) on {inst_id}", file=sys.stderr)
            summary_rows.append([inst_id, entry.algorithm,
                                 round(entry.run_time_ns, 6), entry.n_runs,
                                 entry.bench.p_success if entry.bench else "",
                                 entry.bench.tts_s if entry.bench else ""])
            if entry.bench is None:
                continue
            bits = np.array([rec.bits for rec in entry.bench.runs], dtype=np.uint8)
            grid = analysis.occurrence_grid(bits, inst, e_g, minimizers,
                                            exact_ground=exact)
            meta = {"instance": inst_id, "algorithm": entry.algorithm,
                    "budget_ms": args.budget_ms, "n_runs": entry.n_runs,
                    "run_time_ns": round(entry.run_time_ns, 6),
                    "box_e": grid.box_e, "box_hd": grid.box_hd,
                    "ground_energy": grid.e_ground, "seed": args.seed,
                    "total": grid.total}
            _write_csv(out_dir / f"grid_{entry.algorithm}_{inst_id}.csv",
                       "compare-grid", meta, ["box_e_index", "box_hd_index", "count"],
                       [[ie, ihd, c] for (ie, ihd), c in sorted(grid.counts.items())])
            indices, masses = analysis.square_region_sums(
                grid.normalize(), indices=np.arange(inst.n + 1))
            _write_csv(out_dir / f"regions_{entry.algorithm}_{inst_id}.csv",
                       "compare-regions", meta, ["hd_index", "count"],
                       [[int(d), m * grid.total] for d, m in zip(indices, masses)])
    _write_csv(out_dir / "summary.csv", "compare",
               {"budget_ms": args.budget_ms, "seed": args.seed,
                "sweeps": args.sweeps, "qaoa_depth": args.qaoa_depth},
               ["instance", "algorithm", "run_time_ns", "n_runs", "p_success",
                "tts_s"], summary_rows)
    print(f"wrote {out_dir / 'summary.csv'}")
    return 0


def cmd_analyze_grid(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, minimizers, exact = pipeline.ground_truth(inst, seed=args.seed)
    params = _load_params(args)
    schedule = build_schedule(params, inst, args.layers, args.source_depth)
    rng = np.random.default_rng(args.seed)
    starts = _warm_starts(rng, minimizers[0], args.warm_hd, args.starts)
    all_samples = []
    for i in range(args.starts):
        if args.sampler == "quantum":
            state = sampler.run_circuit(inst, starts[i], schedule, args.alpha)
            raw = sampler.sample(state, args.shots, int(rng.integers(0, 2 ** 63 - 1)))
        else:
            raw = sampler.classical_random_sample(starts[i], args.eta, args.shots,
                                                  int(rng.integers(0, 2 ** 63 - 1)))
        if args.local_search:
            searched = np.empty_like(raw)
            table = ising.delta_table(inst, starts[i])
            for m in range(raw.shape[0]):
                searched[m] = greedy_descent(inst, starts[i], table, raw[m]).bits
            raw = searched
        all_samples.append(raw)
    samples = np.concatenate(all_samples, axis=0)
    grid = analysis.occurrence_grid(samples, inst, e_g, minimizers,
                                    box_e=args.box_e, box_hd=args.box_hd,
                                    exact_ground=exact)
    rows = [[ie, ihd, count] for (ie, ihd), count in sorted(grid.counts.items())]
    _write_csv(args.out, "analyze-grid",
               {"instance": inst_id, "sampler": args.sampler,
                "layers": args.layers, "source_depth": args.source_depth,
                "alpha": args.alpha, "eta": args.eta, "shots": args.shots,
                "starts": args.starts, "warm_hd": args.warm_hd,
                "local_search": int(args.local_search),
                "box_e": args.box_e, "box_hd": args.box_hd,
                "ground_energy": e_g, "seed": args.seed,
                "total": grid.total},
               ["box_e_index", "box_hd_index", "count"], rows)
    print(f"wrote {args.out} ({len(rows)} occupied boxes, {grid.total:g} samples)")
    return 0


def _read_grid_csv(path) -> analysis.OccurrenceGrid:
    meta = {}
    counts = {}
    with open(path) as f:
        reader = csv.reader(f)
        for row in reader:
            if not row:
                continue
            if row[0].startswith("#"):
                text = row[0].lstrip("# ")
                if "=" in text:
                    key, val = text.split("=", 1)
                    meta[key] = val
                continue
            if row[0] == "box_e_index":
                continue
            counts[(int(row[0]), int(row[1]))] = float(row[2])
    total = sum(counts.values())
    return analysis.OccurrenceGrid(float(meta.get("box_e", 0.01)),
                                   float(meta.get("box_hd", 2)), counts, total,
                                   float(meta.get("ground_energy", -1.0)))


def cmd_analyze_regions(args) -> int:
    grid = _read_grid_csv(args.grid).normalize()
    indices, masses = analysis.square_region_sums(
        grid, energy_per_index=args.energy_per_index)
    _write_csv(args.out, "analyze-regions",
               {"grid": Path(args.grid).name,
                "energy_per_index": args.energy_per_index
                if args.energy_per_index is not None else grid.box_e / grid.box_hd},
               ["hd_index", "mass"],
               [[int(d), m] for d, m in zip(indices, masses)])
    print(f"wrote {args.out}")
    return 0


def cmd_analyze_fxpath(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, minimizers, _ = pipeline.ground_truth(inst, seed=args.seed)
    target = minimizers[0]
    decomp = sampler.decompose_fx(inst, target, args.gamma, args.beta)
    rows = [[int(d), e, comp.real, comp.imag]
            for d, e, comp in zip(decomp.distances, decomp.energies,
                                  decomp.components)]
    _write_csv(args.out, "analyze-fxpath",
               {"instance": inst_id, "gamma": args.gamma, "beta": args.beta,
                "amplitude_re": decomp.amplitude.real,
                "amplitude_im": decomp.amplitude.imag, "seed": args.seed},
               ["d", "energy", "re", "im"], rows)
    print(f"wrote {args.out} (|F_x| = {abs(decomp.amplitude):.6g})")
    return 0


def cmd_analyze_hdprofile(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, minimizers, _ = pipeline.ground_truth(inst, seed=args.seed)
    d, counts, weights, products = sampler.hd_contribution_profile(
        inst, minimizers[0], args.beta)
    _write_csv(args.out, "analyze-hdprofile",
               {"instance": inst_id, "beta": args.beta, "seed": args.seed},
               ["d", "count", "weight", "product"],
               [[int(a), b, c, p] for a, b, c, p in zip(d, counts, weights, products)])
    print(f"wrote {args.out}")
    return 0


def cmd_analyze_gaussmodel(args) -> int:
    model = analysis.GaussianModel(args.sigma_e, args.cov)
    g_star = analysis.gamma_star(model)
    lo, hi = sorted((0.0, 2.0 * g_star)) if g_star != 0 else (-1.0, 1.0)
    gammas = np.linspace(lo, hi, args.points)
    rows = [[g, analysis.gaussian_prob(model, g)] for g in gammas]
    _write_csv(args.out, "analyze-gaussmodel",
               {"sigma_e": args.sigma_e, "cov": args.cov,
                "gamma_star": g_star, "peak": analysis.gaussian_peak(model)},
               ["gamma", "prob"], rows)
    print(f"gamma_star={g_star:.6g} peak={analysis.gaussian_peak(model):.6g}")
    return 0


def cmd_analyze_condmc(args) -> int:
    inst = load_instance(args.instance)
    inst_id = _instance_id(inst, args.instance)
    e_g, minimizers, _ = pipeline.ground_truth(inst, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    warm = _warm_starts(rng, minimizers[0], args.warm_hd, 1)[0]
    if args.target_hd is None:
        target = minimizers[0]
    else:
        target = _warm_starts(rng, warm, args.target_hd, 1)[0]
    theta = sampler.reference_angle(args.alpha)
    samples = analysis.conditional_mc_sample(inst, target, warm, theta,
                                             args.beta, args.shots, args.seed)
    d, rho, stderr, counts = analysis.local_covariance(samples, radius=args.radius)
    _write_csv(args.out, "analyze-condmc",
               {"instance": inst_id, "alpha": args.alpha, "beta": args.beta,
                "shots": args.shots, "warm_hd": args.warm_hd,
                "target_hd": args.target_hd if args.target_hd is not None else "ground",
                "radius": args.radius, "seed": args.seed},
               ["d", "rho", "stderr", "count"],
               [[int(a), b, c, int(m)] for a, b, c, m in zip(d, rho, stderr, counts)])
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master RNG seed")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for multi-instance commands")
    common.add_argument("--params-file", default=None,
                        help="transfer-parameter JSON (default: packaged file)")

    parser = argparse.ArgumentParser(
        prog="qjump",
        description="Hybrid quantum-classical Ising optimizer toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common],
                       help="generate random lattice instances")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--lattice-l", type=int, required=True)
    p.add_argument("--mask", type=int, nargs="*", default=None)
    p.add_argument("--sigma-j", type=float, default=2.0)
    p.add_argument("--sigma-h", type=float, default=1.0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("filter", parents=[common],
                       help="generate, rank by SA TTS, keep hardest classical jumps")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--lattice-l", type=int, required=True)
    p.add_argument("--mask", type=int, nargs="*", default=None)
    p.add_argument("--keep-tts", type=int, required=True)
    p.add_argument("--keep-cjump", type=int, required=True)
    p.add_argument("--sweeps", type=int, default=2000)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--cjump-runs", type=int, default=40)
    p.add_argument("--cjump-eta", type=float, default=0.3)
    p.add_argument("--sigma-j", type=float, default=2.0)
    p.add_argument("--sigma-h", type=float, default=1.0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_filter)

    solve = sub.add_parser("solve", help="run one solver on one instance")
    solve_sub = solve.add_subparsers(dest="solver", required=True)

    p = solve_sub.add_parser("sa", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--sweeps", type=int, default=2000)
    p.add_argument("--schedule", choices=["inverse", "geometric", "linear"],
                   default="inverse")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_solve_sa)

    for name in ("qjump", "cjump"):
        p = solve_sub.add_parser(name, parents=[common])
        p.add_argument("--instance", required=True)
        p.add_argument("--layers", "--l", dest="layers", type=int, default=2)
        p.add_argument("--source-depth", "--q", dest="source_depth", type=int, default=20)
        p.add_argument("--alpha", type=float, default=0.6)
        p.add_argument("--shots", "--m", dest="shots", type=int, default=20)
        p.add_argument("--iterations", type=int, default=12)
        p.add_argument("--runs", type=int, default=1)
        p.add_argument("--out-prefix", required=True)
        if name == "qjump":
            p.add_argument("--backend", choices=["statevector", "classical-random"],
                           default="statevector")
            p.add_argument("--eta", type=float, default=None)
            p.set_defaults(func=lambda a: cmd_solve_qjump(a, backend=a.backend))
        else:
            p.add_argument("--eta", type=float, required=True)
            p.set_defaults(func=lambda a: cmd_solve_qjump(a, backend="classical-random"))

    p = solve_sub.add_parser("qaoa", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--source-depth", "--q", dest="source_depth", type=int, default=6)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_solve_qaoa)

    p = sub.add_parser("tts", parents=[common],
                       help="aggregate success probability into a TTS estimate")
    p.add_argument("--instance", required=True)
    p.add_argument("--algorithm", choices=["sa", "qjump", "qaoa", "cjump"],
                   required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--sweeps", type=int, default=2000)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--source-depth", type=int, default=20)
    p.add_argument("--alpha", type=float, default=0.6)
    p.add_argument("--shots", type=int, default=20)
    p.add_argument("--iterations", type=int, default=12)
    p.add_argument("--eta", type=float, default=0.3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tts)

    p = sub.add_parser("compare", parents=[common],
                       help="fixed-time-budget comparison across algorithms")
    p.add_argument("--instances", nargs="+", required=True)
    p.add_argument("--budget-ms", type=float, required=True)
    p.add_argument("--sweeps", type=int, default=700)
    p.add_argument("--qaoa-depth", type=int, default=6)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--source-depth", type=int, default=20)
    p.add_argument("--alpha", type=float, default=0.6)
    p.add_argument("--shots", type=int, default=20)
    p.add_argument("--iterations", type=int, default=12)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_compare)

    analyze = sub.add_parser("analyze", help="landscape and sampler analyses")
    analyze_sub = analyze.add_subparsers(dest="analysis", required=True)

    p = analyze_sub.add_parser("grid", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--sampler", choices=["quantum", "classical"], default="quantum")
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--source-depth", type=int, default=20)
    p.add_argument("--alpha", type=float, default=0.6)
    p.add_argument("--eta", type=float, default=0.3)
    p.add_argument("--shots", type=int, default=2000)
    p.add_argument("--starts", type=int, default=10)
    p.add_argument("--warm-hd", type=int, required=True)
    p.add_argument("--local-search", action="store_true")
    p.add_argument("--box-e", type=float, default=0.01)
    p.add_argument("--box-hd", type=float, default=2.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_grid)

    p = analyze_sub.add_parser("regions", parents=[common])
    p.add_argument("--grid", required=True)
    p.add_argument("--energy-per-index", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_regions)

    p = analyze_sub.add_parser("fxpath", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_fxpath)

    p = analyze_sub.add_parser("hdprofile", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_hdprofile)

    p = analyze_sub.add_parser("gaussmodel", parents=[common])
    p.add_argument("--sigma-e", type=float, required=True)
    p.add_argument("--cov", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_gaussmodel)

    p = analyze_sub.add_parser("condmc", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--alpha", type=float, default=0.6)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--warm-hd", type=int, required=True)
    p.add_argument("--target-hd", type=int, default=None)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_condmc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
