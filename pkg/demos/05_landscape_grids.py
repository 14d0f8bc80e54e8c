"""Occurrence grids: where do locally-searched samples land, quantum vs classical?

Samples are binned in the plane of energy (as 1 - E/E_ground) and Hamming
distance to the optimum; origin-anchored square regions then measure how
much mass qualifies as an effective jump. The classical baseline flips bits
at the quantum sampler's own measured flip ratio, so the comparison isolates
interference from mere flip volume.

Run:  python3 demos/05_landscape_grids.py
"""

import numpy as np

from qjump import (TransferParams, all_state_energies, basin_map,
                   brute_force_ground, build_schedule, generate_regular_instance,
                   hamming_to_all, occurrence_grid, run_circuit,
                   square_region_sums)

n, warm_hd = 16, 6
inst = generate_regular_instance(n, 4, seed=3299)
e_g, minimizers = brute_force_ground(inst)
roots, _ = basin_map(inst)
diag = all_state_energies(inst)
params = TransferParams.load()
schedule = build_schedule(params, inst, 2, 20)

rng = np.random.default_rng(4)
warm = minimizers[0].copy()
warm[rng.choice(n, size=warm_hd, replace=False)] ^= 1
d_warm = hamming_to_all(warm, n).astype(np.float64)
print(f"warm start at Hamming distance {warm_hd} from the optimum, alpha=0.5")

state = run_circuit(inst, warm, schedule, alpha=0.5, energies=diag)
p_quantum = np.abs(state) ** 2
eta = float((p_quantum * d_warm).sum() / n)
p_classical = eta ** d_warm * (1 - eta) ** (n - d_warm)
print(f"measured flip ratio eta = {eta:.3f} (classical baseline matched)")


def searched_grid(p):
    landed = np.zeros(1 << n)
    np.add.at(landed, roots, p)
    occupied = np.flatnonzero(landed)
    rows = ((occupied[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    return occurrence_grid(rows, inst, e_g, minimizers,
                           weights=landed[occupied]).normalize()


for name, p in (("quantum", p_quantum), ("classical", p_classical)):
    grid = searched_grid(p)
    indices, masses = square_region_sums(grid, indices=np.arange(0, n + 1, 2))
    print(f"\n{name} sampler, cumulative mass in origin-anchored regions:")
    for d, m in zip(indices, masses):
        print(f"  region HD<={int(d):2d}: {m:.4f} {'#' * int(60 * m)}")
