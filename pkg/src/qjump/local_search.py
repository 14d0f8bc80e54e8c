"""Greedy steepest-descent local search and energy-basin analysis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .ising import (IsingInstance, DeltaTable, all_state_energies, as_bits,
                    delta_table)


@njit(cache=True)
def _descend(adj_off, adj_sites, adj_weights, bits, deltas, energy, candidate):
    """Replay flips from `bits` to `candidate`, then steepest-descend.

    Mutates bits/deltas in place. Ties on the most negative delta break to
    the lowest index; a zero delta never triggers a flip. Returns
    (energy, descent_steps, replay_flips).
    """
    n = bits.shape[0]
    replay = 0
    for j in range(n):
        if bits[j] != candidate[j]:
            s_j = 1.0 - 2.0 * bits[j]
            energy += deltas[j]
            deltas[j] = -deltas[j]
            for idx in range(adj_off[j], adj_off[j + 1]):
                k = adj_sites[idx]
                s_k = 1.0 - 2.0 * bits[k]
                deltas[k] -= 4.0 * adj_weights[idx] * s_j * s_k
            bits[j] ^= 1
            replay += 1

    steps = 0
    while True:
        j_best = 0
        d_best = deltas[0]
        for j in range(1, n):
            if deltas[j] < d_best:
                d_best = deltas[j]
                j_best = j
        if d_best >= 0.0:
            break
        s_j = 1.0 - 2.0 * bits[j_best]
        energy += d_best
        deltas[j_best] = -d_best
        for idx in range(adj_off[j_best], adj_off[j_best + 1]):
            k = adj_sites[idx]
            s_k = 1.0 - 2.0 * bits[k]
            deltas[k] -= 4.0 * adj_weights[idx] * s_j * s_k
        bits[j_best] ^= 1
        steps += 1
    return energy, steps, replay


@dataclass
class SearchResult:
    """Outcome of one greedy descent: a local minimum and its flip table."""

    bits: np.ndarray
    energy: float
    table: DeltaTable
    descent_steps: int
    replay_flips: int


def greedy_descent(inst: IsingInstance, start_bits: np.ndarray,
                   start_table: DeltaTable, candidate: np.ndarray,
                   check: bool = False) -> SearchResult:
    """Descend from `candidate`, reusing the flip table cached at `start_bits`.

    The candidate's energy is obtained by replaying its differing bits
    incrementally on the start table, then the most negative flip energy is
    taken repeatedly until all are >= 0. Inputs are not mutated.
    """
    bits = as_bits(start_bits).copy()
    cand = as_bits(candidate)
    if bits.shape != cand.shape or bits.shape != (inst.n,):
        raise ValueError("bitstring lengths do not match the instance")
    if check:
        ref = delta_table(inst, bits)
        if not np.allclose(ref.deltas, start_table.deltas, atol=1e-9):
            raise RuntimeError("start table is inconsistent with start bitstring")
    deltas = start_table.deltas.copy()
    e, steps, replay = _descend(inst.adj_off, inst.adj_sites, inst.adj_weights,
                                bits, deltas, float(start_table.energy), cand)
    return SearchResult(bits, float(e), DeltaTable(deltas, float(e)), int(steps), int(replay))


def basin_of(inst: IsingInstance, bits: np.ndarray) -> np.ndarray:
    """The local minimum reached by deterministic steepest descent from `bits`."""
    table = delta_table(inst, bits)
    return greedy_descent(inst, bits, table, bits).bits


def basin_map(inst: IsingInstance, chunk: int = 1 << 17
              ) -> tuple[np.ndarray, np.ndarray]:
    """Steepest-descent root of every basis state, by exhaustive enumeration.

    Returns (roots, energies): roots[i] is the basis index of the local
    minimum that state i descends to (same tie-break as greedy_descent),
    energies[i] the energy of state i. Memory and time are O(2^n * n).
    """
    n = inst.n
    total = 1 << n
    energies = all_state_energies(inst)
    jmat = inst.coupling_matrix()
    succ = np.empty(total, dtype=np.int64)
    shifts = np.arange(n, dtype=np.uint32)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((idx[:, None].astype(np.uint32) >> shifts) & 1).astype(np.float64)
        s = 1.0 - 2.0 * bits
        deltas = 2.0 * s * (s @ jmat + inst.h)
        j_best = np.argmin(deltas, axis=1)
        d_best = deltas[np.arange(idx.size), j_best]
        flipped = idx ^ (np.int64(1) << j_best)
        succ[start:start + idx.size] = np.where(d_best < 0.0, flipped, idx)
    # Pointer jumping: descent paths are strictly energy-decreasing, so the
    # successor graph is a forest and this converges in O(log path length).
    while True:
        nxt = succ[succ]
        if np.array_equal(nxt, succ):
            break
        succ = nxt
    return succ, energies


def global_basin_probability(inst: IsingInstance,
                             probs: np.ndarray | None = None,
                             samples: np.ndarray | None = None,
                             e_ground: float | None = None,
                             atol: float = 1e-9) -> float:
    """Probability mass of states whose descent reaches a global minimum.

    Pass either `probs` (length 2^n distribution over basis states; exact
    enumeration of every basin) or `samples` (rows of bitstrings, descended
    individually). The ground-state energy must be supplied.
    """
    if e_ground is None:
        raise ValueError("ground-state energy is required to identify the global basin")
    if (probs is None) == (samples is None):
        raise ValueError("pass exactly one of probs or samples")
    if probs is not None:
        probs = np.asarray(probs, dtype=np.float64)
        if probs.shape != (1 << inst.n,):
            raise ValueError("probs must cover all 2^n basis states")
        roots, energies = basin_map(inst)
        reached = energies[roots] <= e_ground + atol
        return float(probs[reached].sum())
    hits = 0
    for row in np.asarray(samples, dtype=np.uint8):
        table = delta_table(inst, row)
        res = greedy_descent(inst, row, table, row)
        if res.energy <= e_ground + atol:
            hits += 1
    return hits / len(samples)
