import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from qjump.analysis import (ConditionalSamples, GaussianModel,
                            conditional_mc_sample, conditional_weights,
                            flip_ratio_stats, gamma_star, gaussian_peak,
                            gaussian_prob, local_covariance, occurrence_grid,
                            square_region_sums)
from qjump.ising import (IsingInstance, all_state_energies, bits_to_index,
                         brute_force_ground, energy, generate_regular_instance,
                         hamming_to_all, random_bits)
from qjump.sampler import classical_random_sample, reference_angle
from oracles import golden_section_max


def test_grid_single_ground_sample(regular16):
    e_g, minimizers = brute_force_ground(regular16)
    grid = occurrence_grid(minimizers[0][None, :], regular16, e_g, minimizers)
    assert grid.counts == {(0, 0): 1.0}


def test_grid_mass_conservation(regular16, rng):
    e_g, minimizers = brute_force_ground(regular16)
    samples = np.array([random_bits(16, rng) for _ in range(500)])
    grid = occurrence_grid(samples, regular16, e_g, minimizers)
    assert grid.total == 500
    assert sum(grid.counts.values()) == pytest.approx(500)


def test_grid_marginal_matches_energy_histogram(regular16, rng):
    e_g, minimizers = brute_force_ground(regular16)
    samples = np.array([random_bits(16, rng) for _ in range(2000)])
    grid = occurrence_grid(samples, regular16, e_g, minimizers)
    energies = np.array([energy(regular16, s) for s in samples])
    one_minus_r = 1.0 - energies / e_g
    expected = np.bincount(np.floor(one_minus_r / 0.01 + 1e-12).astype(int))
    marginal = grid.energy_marginal()
    for ie, count in marginal.items():
        assert count == expected[ie]
    assert sum(marginal.values()) == 2000


def test_grid_requires_negative_ground(regular16, rng):
    samples = random_bits(16, rng)[None, :]
    with pytest.raises(ValueError):
        occurrence_grid(samples, regular16, +1.0, [samples[0]])


def test_grid_rebins_on_better_sample(regular16):
    e_g, minimizers = brute_force_ground(regular16)
    ground = minimizers[0]
    # believed ground above the true one: exact mode raises, loose mode rebins
    with pytest.raises(ValueError):
        occurrence_grid(ground[None, :], regular16, e_g * 0.9, [ground])
    grid = occurrence_grid(ground[None, :], regular16, e_g * 0.9, [ground],
                           exact_ground=False)
    assert grid.e_ground == pytest.approx(e_g)
    assert grid.counts == {(0, 0): 1.0}


def test_region_sums_full_plane_and_monotone(regular16, rng):
    e_g, minimizers = brute_force_ground(regular16)
    samples = np.array([random_bits(16, rng) for _ in range(300)])
    grid = occurrence_grid(samples, regular16, e_g, minimizers).normalize()
    # the whole-plane check needs the region's energy reach to cover every
    # sampled 1-R value, so take the index range far beyond n
    indices, masses = square_region_sums(grid, indices=np.arange(0, 1001))
    assert np.all(np.diff(masses) >= -1e-12)
    assert masses[-1] == pytest.approx(1.0)
    assert masses[16] < 1.0


def test_region_sums_requires_normalized(regular16, rng):
    e_g, minimizers = brute_force_ground(regular16)
    grid = occurrence_grid(random_bits(16, rng)[None, :], regular16, e_g, minimizers)
    with pytest.raises(ValueError):
        square_region_sums(grid)


def test_gaussian_model_basics():
    assert gamma_star(GaussianModel(2.0, 0.0)) == 0.0
    assert gamma_star(GaussianModel(1.0, -1.0)) == pytest.approx(math.pi / 2)
    model = GaussianModel(1.3, -0.7)
    assert gaussian_prob(model, gamma_star(model)) == pytest.approx(
        gaussian_peak(model), rel=1e-12)
    with pytest.raises(ValueError):
        GaussianModel(0.0, 1.0)


def test_gamma_star_matches_numeric_maximum(rng):
    for _ in range(100):
        model = GaussianModel(float(rng.uniform(0.2, 5.0)),
                              float(rng.uniform(-3.0, 3.0)))
        g = gamma_star(model)
        span = max(1.0, 4 * abs(g))
        numeric = golden_section_max(lambda x: gaussian_prob(model, x),
                                     g - span, g + span)
        assert abs(numeric - g) < 1e-6
        res = minimize_scalar(lambda x: -gaussian_prob(model, x),
                              bounds=(g - span, g + span), method="bounded",
                              options={"xatol": 1e-9})
        assert abs(res.x - g) < 1e-6


def test_conditional_weights_alpha_zero():
    # theta = pi/2: the warm-start suppression disappears and the weight
    # depends only on the distance to the target
    t_circ, t_x = conditional_weights(reference_angle(0.0), 0.3)
    assert t_circ == pytest.approx(1.0)
    assert t_x == pytest.approx(math.tan(0.3), abs=1e-12)


def test_conditional_mc_matches_enumeration(rng):
    inst = generate_regular_instance(12, 4, seed=60)
    s_circ = random_bits(12, rng)
    s_x = s_circ.copy()
    s_x[rng.choice(12, size=4, replace=False)] ^= 1
    theta, beta = reference_angle(0.6), 0.25
    samples = conditional_mc_sample(inst, s_x, s_circ, theta, beta,
                                    shots=200_000, seed=8)
    t_circ, t_x = conditional_weights(theta, beta)
    d0 = hamming_to_all(s_circ, 12).astype(float)
    dx = hamming_to_all(s_x, 12).astype(float)
    weights = t_circ ** d0 * t_x ** dx
    weights /= weights.sum()
    idx = samples.bits @ (1 << np.arange(12))
    empirical = np.bincount(idx, minlength=1 << 12) / len(idx)
    tv = 0.5 * np.abs(empirical - weights).sum()
    assert tv < 0.03
    # chain energies match direct evaluation
    energies = all_state_energies(inst)
    assert np.allclose(samples.energies[:500], energies[idx[:500]], atol=1e-9)


def test_conditional_mc_empty_support():
    inst = generate_regular_instance(8, 4, seed=61)
    s_circ = np.zeros(8, dtype=np.uint8)
    s_x = s_circ.copy()
    s_x[0] ^= 1
    with pytest.raises(ValueError, match="empty support"):
        conditional_mc_sample(inst, s_x, s_circ, 0.0, 0.3, shots=10, seed=0)


def test_conditional_mc_deterministic():
    inst = generate_regular_instance(10, 4, seed=62)
    s_circ = np.zeros(10, dtype=np.uint8)
    s_x = s_circ.copy(); s_x[:3] ^= 1
    a = conditional_mc_sample(inst, s_x, s_circ, 1.0, 0.3, shots=1000, seed=3)
    b = conditional_mc_sample(inst, s_x, s_circ, 1.0, 0.3, shots=1000, seed=3)
    assert np.array_equal(a.bits, b.bits)


def test_local_covariance_constant_energy():
    # no couplings, no fields: energy is identically zero, covariance vanishes
    inst = IsingInstance(12, [], np.zeros(12))
    s_circ = np.zeros(12, dtype=np.uint8)
    s_x = s_circ.copy(); s_x[:4] ^= 1
    samples = conditional_mc_sample(inst, s_x, s_circ, reference_angle(0.5), 0.3,
                                    shots=50_000, seed=9)
    d, rho, stderr, counts = local_covariance(samples)
    assert np.all(np.abs(rho) <= 3 * stderr + 1e-12)
    assert np.allclose(rho, 0.0, atol=1e-9)


def test_local_covariance_windowing():
    energies = np.array([0.0, 1.0, 2.0, 3.0, 10.0])
    d_x = np.array([0, 1, 2, 3, 50])
    samples = ConditionalSamples(np.zeros((5, 4), dtype=np.uint8), energies,
                                 d_x.copy(), d_x.copy(), 1.0, 0.3)
    d, rho, stderr, counts = local_covariance(samples, radius=4)
    # the far-away point is excluded from the low-d windows
    assert counts[0] == 4
    low = (energies[:4] - energies[:4].mean()) @ (d_x[:4] - d_x[:4].mean()) / 3
    assert rho[0] == pytest.approx(low)
    assert counts[-1] == 1 and rho[-1] == 0.0


def test_flip_ratio_stats(rng):
    base = random_bits(20, rng)
    rows = np.tile(base, (7, 1))
    stats = flip_ratio_stats(rows, base)
    assert stats.mean_eta == 0.0
    rows = classical_random_sample(base, 0.3, 20_000, seed=3)
    stats = flip_ratio_stats(rows, base)
    sigma = math.sqrt(0.3 * 0.7 / (20 * 20_000))
    assert abs(stats.mean_eta - 0.3) < 3 * sigma
    with pytest.raises(ValueError):
        flip_ratio_stats(np.empty((0, 20), dtype=np.uint8), base)


def test_flip_ratio_uniform_sampler(rng):
    # unbiased sampling flips half the bits on average
    from qjump.sampler import encode, sample
    base = random_bits(10, rng)
    state = encode(base, 0.0)
    rows = sample(state, 20_000, seed=4)
    stats = flip_ratio_stats(rows, base)
    sigma = math.sqrt(0.25 / (10 * 20_000))
    assert abs(stats.mean_eta - 0.5) < 3 * sigma
