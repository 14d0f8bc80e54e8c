"""Landscape statistics: energy/Hamming-distance grids, the bivariate-Gaussian
probability model, conditional Monte Carlo sampling, and flip-ratio summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .ising import IsingInstance, as_bits, delta_table, hamming


@dataclass
class OccurrenceGrid:
    """Sparse 2-D histogram over (1 - E/E_g, Hamming distance to the optimum).

    counts maps (energy box index, HD box index) -> weight; boxes are
    box_e wide on the energy axis and box_hd wide on the distance axis.
    """

    box_e: float
    box_hd: float
    counts: dict[tuple[int, int], float]
    total: float
    e_ground: float
    normalized: bool = False

    def normalize(self) -> "OccurrenceGrid":
        if self.total <= 0:
            raise ValueError("cannot normalize an empty grid")
        scaled = {k: v / self.total for k, v in self.counts.items()}
        return OccurrenceGrid(self.box_e, self.box_hd, scaled, 1.0,
                              self.e_ground, normalized=True)

    def energy_marginal(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for (ie, _), v in self.counts.items():
            out[ie] = out.get(ie, 0.0) + v
        return out

    def hd_marginal(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for (_, ihd), v in self.counts.items():
            out[ihd] = out.get(ihd, 0.0) + v
        return out


def occurrence_grid(samples: np.ndarray, inst: IsingInstance, e_ground: float,
                    minimizers: list[np.ndarray], box_e: float = 0.01,
                    box_hd: float = 2.0, weights: np.ndarray | None = None,
                    exact_ground: bool = True) -> OccurrenceGrid:
    """Bin bitstrings by (1 - E/E_g, minimal HD to any global minimizer).

    E_g must be negative (1 - R is only meaningful then). With
    exact_ground=False a sample below the believed ground energy lowers E_g
    and triggers a re-binning pass instead of raising.
    """
    if e_ground >= 0:
        raise ValueError("ground-state energy must be negative for the 1-R axis")
    if not minimizers:
        raise ValueError("at least one reference minimizer is required")
    rows = np.asarray(samples, dtype=np.uint8)
    if rows.ndim != 2 or rows.shape[1] != inst.n:
        raise ValueError("samples must be rows of n-bit strings")
    if weights is None:
        weights = np.ones(rows.shape[0])
    weights = np.asarray(weights, dtype=np.float64)

    s = 1.0 - 2.0 * rows.astype(np.float64)
    energies = -(s[:, inst.edge_j] * s[:, inst.edge_k]) @ inst.edge_w - s @ inst.h
    e_min = float(energies.min())
    if e_min < e_ground - 1e-9:
        if exact_ground:
            raise ValueError(
                f"sample energy {e_min} below the exact ground energy {e_ground}")
        e_ground = e_min

    refs = np.asarray([as_bits(m) for m in minimizers], dtype=np.uint8)
    dists = np.min(
        (rows[:, None, :] != refs[None, :, :]).sum(axis=2), axis=1)

    one_minus_r = 1.0 - energies / e_ground
    ie = np.floor(one_minus_r / box_e + 1e-12).astype(np.int64)
    ihd = np.floor(dists / box_hd + 1e-12).astype(np.int64)
    counts: dict[tuple[int, int], float] = {}
    for a, b, w in zip(ie, ihd, weights):
        key = (int(a), int(b))
        counts[key] = counts.get(key, 0.0) + float(w)
    return OccurrenceGrid(box_e, box_hd, counts, float(weights.sum()), e_ground)


def square_region_sums(grid: OccurrenceGrid, indices=None,
                       energy_per_index: float | None = None
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative mass of origin-anchored square regions, indexed by HD.

    The region with index d covers boxes whose HD extent fits below d and
    whose energy extent fits below d * energy_per_index (default ties the
    energy reach to box_e/box_hd per index, the natural aspect ratio of the
    boxes; the caption's choice of ratio is flexible, so it is a parameter).
    """
    if not grid.normalized:
        raise ValueError("square_region_sums expects a normalized grid")
    if energy_per_index is None:
        energy_per_index = grid.box_e / grid.box_hd
    if indices is None:
        max_hd = max((ihd for (_, ihd) in grid.counts), default=0)
        indices = np.arange(0, int((max_hd + 1) * grid.box_hd) + 1)
    indices = np.asarray(indices)
    masses = np.zeros(indices.shape[0])
    for (ie, ihd), v in grid.counts.items():
        e_hi = (ie + 1) * grid.box_e
        hd_hi = (ihd + 1) * grid.box_hd
        inside = (hd_hi <= indices + 1e-12) & (e_hi <= indices * energy_per_index + 1e-12)
        masses[inside] += v
    return indices, masses


@dataclass
class GaussianModel:
    """Bivariate-Gaussian landscape model: energy spread and its covariance
    with the mixer-biased Hamming distance."""

    sigma_e: float
    cov: float

    def __post_init__(self):
        if not self.sigma_e > 0:
            raise ValueError("sigma_e must be positive")


def gaussian_prob(model: GaussianModel, gamma: float) -> float:
    """Relative sampling probability exp(-g^2 s^2 - pi g Cov) of the target."""
    return math.exp(-gamma ** 2 * model.sigma_e ** 2 - math.pi * gamma * model.cov)


def gamma_star(model: GaussianModel) -> float:
    """Phase angle maximizing gaussian_prob: -pi Cov / (2 sigma_e^2)."""
    return -math.pi * model.cov / (2.0 * model.sigma_e ** 2)


def gaussian_peak(model: GaussianModel) -> float:
    """gaussian_prob at its maximum: exp(pi^2 Cov^2 / (4 sigma_e^2))."""
    return math.exp(math.pi ** 2 * model.cov ** 2 / (4.0 * model.sigma_e ** 2))


@njit(cache=True)
def _metropolis_chain(adj_off, adj_sites, adj_weights, bits, deltas, energy,
                      ref_circ, ref_x, log_t_circ, log_t_x,
                      bit_picks, log_accept, burn_in, stride,
                      out_bits, out_energy, out_d_circ, out_d_x):
    n = bits.shape[0]
    d_circ = 0
    d_x = 0
    for j in range(n):
        if bits[j] != ref_circ[j]:
            d_circ += 1
        if bits[j] != ref_x[j]:
            d_x += 1
    kept = 0
    total = out_energy.shape[0]
    for step in range(bit_picks.shape[0]):
        j = bit_picks[step]
        delta_log = log_t_circ * (1.0 if bits[j] == ref_circ[j] else -1.0) \
            + log_t_x * (1.0 if bits[j] == ref_x[j] else -1.0)
        if log_accept[step] < delta_log:
            s_j = 1.0 - 2.0 * bits[j]
            energy += deltas[j]
            deltas[j] = -deltas[j]
            for idx in range(adj_off[j], adj_off[j + 1]):
                k = adj_sites[idx]
                s_k = 1.0 - 2.0 * bits[k]
                deltas[k] -= 4.0 * adj_weights[idx] * s_j * s_k
            if bits[j] == ref_circ[j]:
                d_circ += 1
            else:
                d_circ -= 1
            if bits[j] == ref_x[j]:
                d_x += 1
            else:
                d_x -= 1
            bits[j] ^= 1
        if step >= burn_in and (step - burn_in) % stride == stride - 1:
            if kept < total:
                for b in range(n):
                    out_bits[kept, b] = bits[b]
                out_energy[kept] = energy
                out_d_circ[kept] = d_circ
                out_d_x[kept] = d_x
                kept += 1
    return kept


@dataclass
class ConditionalSamples:
    """Metropolis samples from the conditional jump weight, with the chain's
    incrementally tracked energies and distances to both references."""

    bits: np.ndarray
    energies: np.ndarray
    d_circ: np.ndarray
    d_x: np.ndarray
    theta: float
    beta: float


def conditional_weights(theta: float, beta: float) -> tuple[float, float]:
    """Per-unit-distance weights (t_circ, t_x) of the conditional distribution
    p(y | x, warm start) ~ t_circ^{d0y} * t_x^{dxy}."""
    t_circ = math.tan(theta / 2.0)
    denom = math.sqrt(math.cos(beta) ** 2
                      + math.sin(beta) ** 2 * math.cos(theta) ** 2)
    t_x = abs(math.sin(theta) * math.sin(beta)) / denom
    return t_circ, t_x


def conditional_mc_sample(inst: IsingInstance, s_x: np.ndarray,
                          s_circ: np.ndarray, theta: float, beta: float,
                          shots: int, seed: int, burn_in: int | None = None,
                          stride: int | None = None) -> ConditionalSamples:
    """Single-bit-flip Metropolis sampling of the conditional jump weight.

    Valid at any system size; energies are maintained incrementally through
    the flip table. burn_in and stride default to 500n and n steps.
    """
    s_x = as_bits(s_x)
    s_circ = as_bits(s_circ)
    n = inst.n
    t_circ, t_x = conditional_weights(theta, beta)
    if t_circ == 0.0 and hamming(s_x, s_circ) > 0:
        raise ValueError("conditional distribution has empty support "
                         "(theta=0 with a target away from the warm start)")
    if burn_in is None:
        burn_in = 500 * n
    if stride is None:
        stride = n
    steps = burn_in + shots * stride
    rng = np.random.default_rng(seed)
    bit_picks = rng.integers(0, n, size=steps)
    log_accept = np.log(1.0 - rng.random(steps))  # log of uniform (0,1]

    log_t_circ = math.log(t_circ) if t_circ > 0 else -math.inf
    log_t_x = math.log(t_x) if t_x > 0 else -math.inf
    bits = s_circ.copy()
    table = delta_table(inst, bits)
    out_bits = np.empty((shots, n), dtype=np.uint8)
    out_energy = np.empty(shots)
    out_d_circ = np.empty(shots, dtype=np.int64)
    out_d_x = np.empty(shots, dtype=np.int64)
    kept = _metropolis_chain(inst.adj_off, inst.adj_sites, inst.adj_weights,
                             bits, table.deltas, table.energy,
                             s_circ, s_x, log_t_circ, log_t_x,
                             bit_picks, log_accept, burn_in, stride,
                             out_bits, out_energy, out_d_circ, out_d_x)
    if kept != shots:
        raise RuntimeError(f"chain produced {kept} samples, expected {shots}")
    return ConditionalSamples(out_bits, out_energy, out_d_circ, out_d_x,
                              theta, beta)


def local_covariance(samples: ConditionalSamples, radius: int = 4
                     ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Windowed covariance of (energy, distance-to-target) along the distance axis.

    For each distance value d present in the samples, the covariance is
    taken over samples whose d_x lies within `radius` of d. Returns
    (d values, covariance, standard error, window sample count).
    """
    d_x = samples.d_x
    energies = samples.energies
    d_values = np.unique(d_x)
    rho = np.zeros(d_values.shape[0])
    stderr = np.zeros(d_values.shape[0])
    counts = np.zeros(d_values.shape[0], dtype=np.int64)
    for i, d in enumerate(d_values):
        window = np.abs(d_x - d) <= radius
        m = int(window.sum())
        counts[i] = m
        if m < 2:
            rho[i] = 0.0
            stderr[i] = 0.0
            continue
        e_w = energies[window]
        d_w = d_x[window].astype(np.float64)
        prods = (e_w - e_w.mean()) * (d_w - d_w.mean())
        rho[i] = prods.sum() / (m - 1)
        stderr[i] = prods.std(ddof=1) / math.sqrt(m) if m > 2 else 0.0
    return d_values, rho, stderr, counts


@dataclass
class FlipRatioStats:
    mean_eta: float
    ratios: np.ndarray


def flip_ratio_stats(samples: np.ndarray, s_circ: np.ndarray) -> FlipRatioStats:
    """Per-sample fraction of bits flipped relative to the warm start."""
    rows = np.asarray(samples, dtype=np.uint8)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise ValueError("samples must be a nonempty matrix of bit rows")
    base = as_bits(s_circ)
    ratios = (rows != base[None, :]).mean(axis=1)
    return FlipRatioStats(float(ratios.mean()), ratios)
