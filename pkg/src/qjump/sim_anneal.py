"""Simulated annealing with precomputed flip tables and acceptance thresholds.

The inner loop follows the usual highly-optimized pattern for sparse Ising
problems: per-bit flip energies are maintained incrementally, the Metropolis
test exp(-dE/T) > u is replaced by the equivalent dE < -T ln(u) against
precomputed thresholds, bits are visited in fixed sequential order, and the
threshold list is cyclically shifted by a random offset each sweep so that
one table serves many runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .ising import IsingInstance, delta_table, random_bits


@dataclass
class SaConfig:
    sweeps: int
    t0: float
    t_end: float
    schedule: str = "inverse"
    seed: int = 0

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if not (self.t0 > self.t_end > 0):
            raise ValueError("need t0 > t_end > 0")
        if self.schedule not in ("inverse", "geometric", "linear"):
            raise ValueError(f"unknown schedule {self.schedule!r}")


def temperature_schedule(t0: float, t_end: float, sweeps: int,
                         kind: str = "inverse") -> np.ndarray:
    """One temperature per sweep, interpolating t0 -> t_end.

    "inverse" anneals linearly in inverse temperature (the usual choice for
    optimized annealers; most sweeps are spent cold), "geometric" spends
    equal sweep counts per temperature decade, "linear" interpolates T
    directly.
    """
    if sweeps == 1:
        return np.array([t0])
    if kind == "inverse":
        return 1.0 / np.linspace(1.0 / t0, 1.0 / t_end, sweeps)
    if kind == "geometric":
        return t0 * (t_end / t0) ** (np.arange(sweeps) / (sweeps - 1))
    if kind == "linear":
        return np.linspace(t0, t_end, sweeps)
    raise ValueError(f"unknown schedule {kind!r}")


def init_temperatures(inst: IsingInstance, seed: int, probes: int = 10,
                      accept_prob: float = 0.90) -> tuple[float, float]:
    """Temperature bracket from the mean flip energy of random bitstrings.

    t0 is set so a move of the mean |dE| is accepted with probability
    `accept_prob`; t_end is one hundredth of t0.
    """
    rng = np.random.default_rng(seed)
    total = 0.0
    for _ in range(probes):
        bits = random_bits(inst.n, rng)
        total += float(np.abs(delta_table(inst, bits).deltas).mean())
    mean_abs = total / probes
    if mean_abs == 0.0:
        raise ValueError("degenerate instance: every flip energy is zero")
    t0 = -mean_abs / np.log(accept_prob)
    return t0, 0.01 * t0


@dataclass
class RTable:
    """Precomputed acceptance thresholds r[sweep, bit] = -T_sweep * ln(u).

    The thresholds are reusable across runs; each run applies its own random
    cyclic shift per sweep, so reuse does not correlate runs.
    """

    temps: np.ndarray
    thresholds: np.ndarray

    @classmethod
    def build(cls, temps: np.ndarray, n: int, rng: np.random.Generator) -> "RTable":
        u = 1.0 - rng.random((len(temps), n))  # uniform on (0, 1]
        return cls(np.asarray(temps, dtype=np.float64),
                   -np.asarray(temps)[:, None] * np.log(u))


@dataclass
class SaResult:
    bits: np.ndarray
    energy: float
    final_bits: np.ndarray
    final_energy: float
    acceptance: float
    accepted_flips: int
    attempted_flips: int


@njit(cache=True)
def _sa_sweeps(nbr_sites, nbr_weights, bits, deltas, energy,
               thresholds, shifts, best_bits):
    # neighbor arrays have a fixed row width (padded with zero-weight self
    # entries) so the update loop has a constant trip count
    n = bits.shape[0]
    cap = nbr_sites.shape[1]
    n_sweeps = thresholds.shape[0]
    e_best = energy
    accepted = 0
    for sw in range(n_sweeps):
        row = thresholds[sw]
        shift = shifts[sw]
        for j in range(n):
            if deltas[j] < row[(j + shift) % n]:
                s_j = 1.0 - 2.0 * bits[j]
                energy += deltas[j]
                deltas[j] = -deltas[j]
                for idx in range(cap):
                    k = nbr_sites[j, idx]
                    s_k = 1.0 - 2.0 * bits[k]
                    deltas[k] -= 4.0 * nbr_weights[j, idx] * s_j * s_k
                bits[j] ^= 1
                accepted += 1
                if energy < e_best:
                    e_best = energy
                    for b in range(n):
                        best_bits[b] = bits[b]
    return energy, e_best, accepted


def run_sa(inst: IsingInstance, config: SaConfig,
           rtable: RTable | None = None,
           s_init: np.ndarray | None = None) -> SaResult:
    """One annealing run; deterministic given (instance, config, inputs).

    The seed drives, in order: the initial bitstring (when not supplied),
    the threshold table (when not supplied), and the per-sweep shifts.
    """
    rng = np.random.default_rng(config.seed)
    bits = random_bits(inst.n, rng) if s_init is None else np.asarray(s_init, np.uint8).copy()
    if rtable is None:
        temps = temperature_schedule(config.t0, config.t_end, config.sweeps, config.schedule)
        rtable = RTable.build(temps, inst.n, rng)
    if rtable.thresholds.shape != (config.sweeps, inst.n):
        raise ValueError("threshold table shape does not match (sweeps, n)")
    shifts = rng.integers(0, inst.n, size=config.sweeps)

    nbr_sites, nbr_weights = inst.padded_adjacency()
    table = delta_table(inst, bits)
    best_bits = bits.copy()
    e_final, e_best, accepted = _sa_sweeps(
        nbr_sites, nbr_weights, bits, table.deltas, table.energy,
        rtable.thresholds, shifts.astype(np.int64), best_bits)
    attempted = config.sweeps * inst.n
    return SaResult(best_bits, float(e_best), bits, float(e_final),
                    accepted / attempted, int(accepted), attempted)


def sa_time_model(n: int, sweeps: int, acceptance: float,
                  accept_ns: float = 18.0, reject_ns: float = 0.8) -> float:
    """Modeled single-core runtime in nanoseconds for one annealing run."""
    if not 0.0 <= acceptance <= 1.0:
        raise ValueError("acceptance must lie in [0, 1]")
    return sweeps * n * (acceptance * accept_ns + (1.0 - acceptance) * reject_ns)
