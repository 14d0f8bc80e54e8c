import numpy as np
import pytest

from qjump.ising import (IsingInstance, all_state_energies, bits_to_index,
                         brute_force_ground, delta_table, energy, hamming,
                         index_to_bits, generate_regular_instance, random_bits)
from qjump.local_search import (basin_map, basin_of, global_basin_probability,
                                greedy_descent)
from oracles import naive_descent


def test_fixed_point_returns_unchanged(regular16, rng):
    e_g, minimizers = brute_force_ground(regular16)
    start = minimizers[0]
    res = greedy_descent(regular16, start, delta_table(regular16, start), start)
    assert np.array_equal(res.bits, start)
    assert res.descent_steps == 0
    assert res.energy == pytest.approx(e_g, abs=1e-9)


def test_two_spin_descent(ferro_pair):
    start = np.array([0, 0], dtype=np.uint8)
    res = greedy_descent(ferro_pair, start, delta_table(ferro_pair, start),
                         np.array([0, 1], dtype=np.uint8))
    assert res.energy == -1.0
    assert res.bits.tolist() in ([0, 0], [1, 1])


def test_descent_matches_naive_oracle(rng):
    # bit-for-bit agreement of the incremental and full-recompute paths
    for trial in range(200):
        n = int(rng.integers(6, 17))
        inst = generate_regular_instance(n, min(4, n - 2), seed=trial)
        start = random_bits(n, rng)
        candidate = random_bits(n, rng)
        res = greedy_descent(inst, start, delta_table(inst, start), candidate)
        ref_bits, ref_energy, ref_steps = naive_descent(inst, candidate)
        assert np.array_equal(res.bits, ref_bits)
        assert res.energy == pytest.approx(ref_energy, abs=1e-9)
        assert res.descent_steps == ref_steps
        assert res.replay_flips == hamming(start, candidate)
        assert np.all(res.table.deltas >= 0)


def test_descent_result_invariants(regular16, rng):
    for _ in range(50):
        candidate = random_bits(16, rng)
        start = random_bits(16, rng)
        res = greedy_descent(regular16, start, delta_table(regular16, start),
                             candidate)
        assert res.energy <= energy(regular16, candidate) + 1e-9
        assert res.energy == pytest.approx(energy(regular16, res.bits), abs=1e-9)


def test_descent_idempotent(regular16, rng):
    candidate = random_bits(16, rng)
    start = random_bits(16, rng)
    res = greedy_descent(regular16, start, delta_table(regular16, start), candidate)
    again = greedy_descent(regular16, res.bits, res.table, res.bits)
    assert again.descent_steps == 0
    assert np.array_equal(again.bits, res.bits)


def test_descent_checks_inconsistent_table(regular16, rng):
    bits = random_bits(16, rng)
    table = delta_table(regular16, bits)
    table.deltas[3] += 1.0
    with pytest.raises(RuntimeError):
        greedy_descent(regular16, bits, table, bits, check=True)


def test_basin_of_fixed_point_and_determinism(regular16, rng):
    s = random_bits(16, rng)
    root = basin_of(regular16, s)
    assert np.array_equal(basin_of(regular16, root), root)
    assert np.array_equal(basin_of(regular16, s), root)


def test_basin_map_matches_scalar(regular16, rng):
    roots, energies = basin_map(regular16)
    for idx in rng.integers(0, 1 << 16, size=300):
        scalar_root = basin_of(regular16, index_to_bits(int(idx), 16))
        assert bits_to_index(scalar_root) == roots[idx]


def test_basin_map_partition(regular16):
    # every state has exactly one root; roots are their own roots and local minima
    roots, energies = basin_map(regular16)
    assert roots.shape == (1 << 16,)
    unique_roots = np.unique(roots)
    assert np.array_equal(roots[unique_roots], unique_roots)
    for root in unique_roots[:50]:
        table = delta_table(regular16, index_to_bits(int(root), 16))
        assert np.all(table.deltas >= 0)
    # basin energies never exceed the member's own energy
    assert np.all(energies[roots] <= energies + 1e-9)


def test_global_basin_probability_concentrated(regular16):
    e_g, minimizers = brute_force_ground(regular16)
    probs = np.zeros(1 << 16)
    probs[bits_to_index(minimizers[0])] = 1.0
    assert global_basin_probability(regular16, probs=probs, e_ground=e_g) == 1.0


def test_global_basin_probability_uniform_ferro(ferro_pair):
    p = global_basin_probability(ferro_pair, probs=np.full(4, 0.25), e_ground=-1.0)
    assert p == pytest.approx(1.0)


def test_global_basin_probability_modes_agree(rng):
    inst = generate_regular_instance(12, 4, seed=31)
    e_g, _ = brute_force_ground(inst)
    energies = all_state_energies(inst)
    probs = np.exp(-0.2 * (energies - energies.min()))
    probs /= probs.sum()
    exact = global_basin_probability(inst, probs=probs, e_ground=e_g)
    idx = rng.choice(1 << 12, size=4000, p=probs)
    rows = np.array([index_to_bits(int(i), 12) for i in idx], dtype=np.uint8)
    sampled = global_basin_probability(inst, samples=rows, e_ground=e_g)
    sigma = np.sqrt(exact * (1 - exact) / 4000)
    assert abs(sampled - exact) < 5 * sigma + 1e-12


def test_global_basin_probability_requires_ground(regular16):
    with pytest.raises(ValueError):
        global_basin_probability(regular16, probs=np.full(1 << 16, 2.0 ** -16))
