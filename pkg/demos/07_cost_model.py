"""The envisioned-hardware runtime model and its headline numbers.

Run:  python3 demos/07_cost_model.py
"""

import numpy as np

from qjump import (CostModel, LatticeSpec, SaConfig, estimate_runtime,
                   generate_lattice_instance, init_temperatures, qaoa_run_ns,
                   run_sa, sa_time_model, tts)

model = CostModel.for_size(104)

print("quantum block, [2,20]-sampler (depth 33):",
      model.quantum_block_ns(2), "ns")
eta = 500.0 / (104 * model.t_flip_ns)  # energy replay worth ~500 ns
print("classical block (18 descent steps):",
      round(model.classical_block_ns(104, eta, 18.0), 1), "ns")

hybrid = estimate_runtime(model, layers=2, shots=20, iterations=12, n=104,
                          eta=eta, descent_steps=18.0)
serial = estimate_runtime(model, 2, 20, 12, 104, eta, 18.0, pipelined=False)
print(f"hybrid run, pipelined: {hybrid * 1e-6:.3f} ms (serial bound "
      f"{serial * 1e-6:.3f} ms)")
print(f"full-depth baseline, Q=6 (depth 97): {qaoa_run_ns(model, 6) * 1e-3:.2f} us")

# annealing model time needs a measured acceptance fraction
inst = generate_lattice_instance(LatticeSpec(7, mask=tuple(range(8))), seed=1)
t0, t_end = init_temperatures(inst, seed=2)
acc = float(np.mean([run_sa(inst, SaConfig(700, t0, t_end, seed=50 + r)).acceptance
                     for r in range(10)]))
print(f"annealing, 700 sweeps at measured acceptance {acc:.3f}: "
      f"{sa_time_model(104, 700, acc) * 1e-6:.3f} ms")

print("\nruns affordable in a 40 ms budget:")
for name, t_ns in (("hybrid", hybrid), ("annealing", sa_time_model(104, 700, acc)),
                   ("full-depth", qaoa_run_ns(model, 6))):
    print(f"  {name:<11} {int(40e6 // t_ns):>6}")

print("\ntime-to-solution at t_run = 0.78 ms:")
for p in (0.05, 0.2, 0.5, 0.9, 0.99):
    print(f"  p_success={p:.2f}: TTS = {tts(0.78e-3, p) * 1e3:8.2f} ms")
