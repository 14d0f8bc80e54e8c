"""Tour of the problem representation: energies, flip tables, lattices, exact grounds.

Run:  python3 demos/01_ising_playground.py
"""

import numpy as np

from qjump import (IsingInstance, LatticeSpec, apply_flip, brute_force_ground,
                   delta_table, energy, generate_lattice_instance, hamming,
                   load_instance, random_bits, save_instance)

# Two ferromagnetically coupled spins: aligned is good, anti-aligned is not.
pair = IsingInstance(2, [(0, 1, 1.0)], [0.0, 0.0])
print("E(00) =", energy(pair, [0, 0]), "  E(01) =", energy(pair, [0, 1]))

# The rotated-lattice family used for benchmarking: 2 L (L+1) sites with
# nearest-neighbor couplings ~ N(0, 4) and fields ~ N(0, 1).
for L in (5, 6, 7):
    inst = generate_lattice_instance(LatticeSpec(L), seed=7)
    print(f"L={L}: n={inst.n}, edges={inst.num_edges}, "
          f"max degree={max(inst.degree(j) for j in range(inst.n))}")

# Trimming a 112-site L=7 lattice down to 104 sites with a mask.
inst104 = generate_lattice_instance(LatticeSpec(7, mask=tuple(range(8))), seed=7)
print("masked L=7:", inst104.n, "sites")

# Incremental flip tables: energy bookkeeping in O(degree) per flip.
rng = np.random.default_rng(0)
inst = generate_lattice_instance(LatticeSpec(4), seed=3)
bits = random_bits(inst.n, rng)
table = delta_table(inst, bits)
print("\nstart energy:", round(table.energy, 4))
for _ in range(5):
    j = int(np.argmin(table.deltas))  # most beneficial flip
    if table.deltas[j] >= 0:
        break
    apply_flip(inst, bits, table, j)
    print(f"  flip {j:2d} -> energy {table.energy:.4f}")
print("recomputed from scratch:", round(energy(inst, bits), 4))

# Exact ground states by enumeration (fine up to ~24 spins).
small = generate_lattice_instance(LatticeSpec(3), seed=5)
e_g, minimizers = brute_force_ground(small)
print(f"\nn={small.n} ground energy {e_g:.4f} with {len(minimizers)} minimizer(s)")
print("Hamming distance between complements:",
      hamming(minimizers[0], 1 - minimizers[0]))

# Instances round-trip through a human-diffable JSON format.
save_instance(small, "/tmp/demo_instance.json")
again = load_instance("/tmp/demo_instance.json")
print("round-trip preserves edges:", again.edges == small.edges)
