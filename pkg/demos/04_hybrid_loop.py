"""The full hybrid loop against annealing and the full-depth baseline.

One hard 16-qubit instance; every algorithm is scored by success probability
and by time-to-solution under the envisioned-hardware cost model.

Run:  python3 demos/04_hybrid_loop.py   (about a minute)
"""

import numpy as np

from qjump import (QjumpConfig, SamplerConfig, TransferParams,
                   brute_force_ground, build_schedule, generate_regular_instance,
                   run_qjump, tts)
from qjump.pipeline import qaoa_baseline, qjump_benchmark, sa_benchmark

inst = generate_regular_instance(16, 4, seed=3299)  # small global basin
e_g, minimizers = brute_force_ground(inst)
print(f"instance: n=16, ground energy {e_g:.4f}")

params = TransferParams.load()
schedule = build_schedule(params, inst, 2, 20)
print(f"[2,20]-sampler parameters: gammas {np.round(schedule.gammas, 4)}, "
      f"betas {np.round(schedule.betas, 4)}")

# One verbose run to watch the warm-start feedback at work.
cfg = SamplerConfig(2, 20, alpha=0.5, shots=20, seed=0)
trace = run_qjump(inst, QjumpConfig(cfg, 8, seed=1), schedule=schedule)
print("\nbest energy per iteration:")
for rec in trace.iterations:
    marker = " <- ground" if rec.best_energy <= e_g + 1e-9 else ""
    print(f"  iter {rec.index}: {rec.best_energy:.4f} "
          f"(mean descent steps {rec.descent_steps.mean():.1f}){marker}")

# Benchmark all three at matched effort, modeled on the envisioned hardware.
runs = 60
qj = qjump_benchmark(inst, "demo", e_g, True,
                     QjumpConfig(cfg, 12, seed=0), runs, seed=2, params=params)
sa = sa_benchmark(inst, "demo", e_g, True, sweeps=700, restarts=runs, seed=2)
qa = qaoa_baseline(inst, "demo", e_g, True, source_depth=6, runs=runs, seed=2,
                   params=params)

print(f"\n{'algorithm':<10} {'p_success':>9} {'t_run (model)':>14} {'TTS':>12}")
for bench in (qj, sa, qa):
    print(f"{bench.algorithm:<10} {bench.p_success:9.3f} "
          f"{bench.mean_model_time_s * 1e3:11.4f} ms "
          f"{tts(bench.mean_model_time_s, bench.p_success):12.6g} s")
print("\n(model times use the 104-qubit classical cost table; treat them as")
print(" illustrative at this toy size)")
