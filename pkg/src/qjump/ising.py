"""Ising problem representation: energies, flip tables, lattice generation, exact ground states."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

INSTANCE_FORMAT = "qjump-instance/1"

# Popcount lookup for 16-bit halves; used to vectorize Hamming distances
# between a fixed bitstring and every basis index.
_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed or violates invariants."""


class IsingInstance:
    """An Ising problem -sum J_jk s_j s_k - sum h_j s_j on n spins.

    Spin convention: bit 0 maps to spin +1, bit 1 to spin -1. Edges are
    (j, k, J) triples with j < k; the instance is immutable after
    construction and safe to share across workers.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]],
                 fields: Sequence[float], metadata: dict | None = None):
        if n < 1:
            raise ValueError(f"need at least one spin, got n={n}")
        h = np.asarray(fields, dtype=np.float64)
        if h.shape != (n,):
            raise ValueError(f"fields must have length n={n}, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise ValueError("fields contain non-finite values")

        seen: set[tuple[int, int]] = set()
        edge_list: list[tuple[int, int, float]] = []
        for j, k, w in edges:
            j, k, w = int(j), int(k), float(w)
            if j == k:
                raise ValueError(f"self-loop on site {j}")
            if not (0 <= j < k < n):
                raise ValueError(f"edge ({j},{k}) out of range or not j<k for n={n}")
            if (j, k) in seen:
                raise ValueError(f"duplicate edge ({j},{k})")
            if not math.isfinite(w):
                raise ValueError(f"non-finite coupling on edge ({j},{k})")
            seen.add((j, k))
            edge_list.append((j, k, w))
        edge_list.sort()

        self.n = n
        self.edges = tuple(edge_list)
        self.h = h
        self.h.setflags(write=False)
        self.metadata = dict(metadata or {})

        m = len(edge_list)
        self.edge_j = np.fromiter((e[0] for e in edge_list), dtype=np.int32, count=m)
        self.edge_k = np.fromiter((e[1] for e in edge_list), dtype=np.int32, count=m)
        self.edge_w = np.fromiter((e[2] for e in edge_list), dtype=np.float64, count=m)
        for a in (self.edge_j, self.edge_k, self.edge_w):
            a.setflags(write=False)

        # CSR adjacency: neighbors of j are adj_sites[adj_off[j]:adj_off[j+1]].
        deg = np.zeros(n, dtype=np.int32)
        for j, k, _ in edge_list:
            deg[j] += 1
            deg[k] += 1
        off = np.zeros(n + 1, dtype=np.int32)
        np.cumsum(deg, out=off[1:])
        sites = np.zeros(2 * m, dtype=np.int32)
        wts = np.zeros(2 * m, dtype=np.float64)
        cursor = off[:-1].copy()
        for j, k, w in edge_list:
            sites[cursor[j]] = k
            wts[cursor[j]] = w
            cursor[j] += 1
            sites[cursor[k]] = j
            wts[cursor[k]] = w
            cursor[k] += 1
        self.adj_off = off
        self.adj_sites = sites
        self.adj_weights = wts
        for a in (self.adj_off, self.adj_sites, self.adj_weights):
            a.setflags(write=False)

    @property
    def adjacency(self) -> list[np.ndarray]:
        """Per-site neighbor index lists, derived from the edge set."""
        return [self.adj_sites[self.adj_off[j]:self.adj_off[j + 1]] for j in range(self.n)]

    def padded_adjacency(self, min_capacity: int = 4
                         ) -> tuple[np.ndarray, np.ndarray]:
        """Fixed-capacity neighbor arrays (sites, weights), each row padded to
        max(min_capacity, max degree) with zero-weight self entries.

        The fixed trip count lets tight inner loops unroll; padding entries
        are harmless because their coupling weight is zero.
        """
        cap = max(min_capacity, int(np.diff(self.adj_off).max(initial=0)))
        cached = getattr(self, "_padded_adjacency", None)
        if cached is not None and cached[0].shape[1] >= cap:
            return cached
        sites = np.tile(np.arange(self.n, dtype=np.int32)[:, None], (1, cap))
        wts = np.zeros((self.n, cap))
        for j in range(self.n):
            lo, hi = self.adj_off[j], self.adj_off[j + 1]
            sites[j, :hi - lo] = self.adj_sites[lo:hi]
            wts[j, :hi - lo] = self.adj_weights[lo:hi]
        self._padded_adjacency = (sites, wts)
        return sites, wts

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, j: int) -> int:
        return int(self.adj_off[j + 1] - self.adj_off[j])

    def coupling_matrix(self) -> np.ndarray:
        """Dense symmetric coupling matrix (zeros off the edge set)."""
        jm = np.zeros((self.n, self.n))
        jm[self.edge_j, self.edge_k] = self.edge_w
        jm[self.edge_k, self.edge_j] = self.edge_w
        return jm

    def __repr__(self) -> str:
        return f"IsingInstance(n={self.n}, edges={self.num_edges})"


@dataclass
class DeltaTable:
    """Cached per-bit flip energies for one bitstring.

    deltas[j] is the energy change if bit j of the associated bitstring is
    flipped; energy is the energy of that bitstring. Maintained in O(degree)
    per flip by apply_flip.
    """

    deltas: np.ndarray
    energy: float

    def copy(self) -> "DeltaTable":
        return DeltaTable(self.deltas.copy(), self.energy)


def as_bits(bits: Sequence[int] | np.ndarray) -> np.ndarray:
    out = np.asarray(bits, dtype=np.uint8)
    if out.ndim != 1 or not np.all((out == 0) | (out == 1)):
        raise ValueError("bitstring must be a 1-D array of {0,1}")
    return out


def bits_from_string(s: str) -> np.ndarray:
    """Parse '0110...' with bit 0 first."""
    return as_bits([int(c) for c in s])


def bits_to_string(bits: np.ndarray) -> str:
    return "".join(str(int(b)) for b in bits)


def bits_to_index(bits: np.ndarray) -> int:
    """Basis index with bit 0 as the least significant bit."""
    return int(sum(int(b) << j for j, b in enumerate(bits)))

def index_to_bits(index: int, n: int) -> np.ndarray:
    return ((index >> np.arange(n)) & 1).astype(np.uint8)


def random_bits(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.uint8)


def complement(bits: np.ndarray) -> np.ndarray:
    return (1 - as_bits(bits)).astype(np.uint8)


def hamming(a: Sequence[int] | np.ndarray, b: Sequence[int] | np.ndarray) -> int:
    """Number of differing positions between two equal-length bitstrings."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def spins(bits: np.ndarray) -> np.ndarray:
    """Map bits to spins: 0 -> +1, 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def energy(inst: IsingInstance, bits: Sequence[int] | np.ndarray) -> float:
    """Energy -sum J_jk s_j s_k - sum h_j s_j of one bitstring."""
    b = as_bits(bits)
    if b.shape != (inst.n,):
        raise ValueError(f"bitstring length {b.shape[0]} != instance n {inst.n}")
    s = spins(b)
    coupling = float(np.dot(inst.edge_w, s[inst.edge_j] * s[inst.edge_k]))
    return -coupling - float(np.dot(inst.h, s))


def delta_table(inst: IsingInstance, bits: Sequence[int] | np.ndarray) -> DeltaTable:
    """Build the flip-energy table: deltas[j] = 2 s_j (sum_k J_jk s_k + h_j)."""
    b = as_bits(bits)
    if b.shape != (inst.n,):
        raise ValueError(f"bitstring length {b.shape[0]} != instance n {inst.n}")
    s = spins(b)
    local = inst.coupling_matrix() @ s + inst.h
    return DeltaTable(2.0 * s * local, energy(inst, b))


def apply_flip(inst: IsingInstance, bits: np.ndarray, table: DeltaTable, j: int
               ) -> tuple[np.ndarray, DeltaTable]:
    """Flip bit j in place, updating energy and the O(degree) affected deltas."""
    if not 0 <= j < inst.n:
        raise IndexError(f"bit index {j} out of range for n={inst.n}")
    s_j = 1.0 - 2.0 * bits[j]
    table.energy += table.deltas[j]
    table.deltas[j] = -table.deltas[j]
    lo, hi = inst.adj_off[j], inst.adj_off[j + 1]
    for idx in range(lo, hi):
        k = inst.adj_sites[idx]
        s_k = 1.0 - 2.0 * bits[k]
        table.deltas[k] -= 4.0 * inst.adj_weights[idx] * s_j * s_k
    bits[j] ^= 1
    return bits, table


@dataclass
class LatticeSpec:
    """Rotated square-lattice layout parameter.

    The full lattice has 2*L*(L+1) sites; mask lists site indices to remove
    (with their incident edges), e.g. trimming a 112-site L=7 lattice to 104.
    """

    L: int
    mask: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")
        self.mask = tuple(sorted(set(int(i) for i in self.mask)))
        full = 2 * self.L * (self.L + 1)
        if self.mask and not (0 <= self.mask[0] and self.mask[-1] < full):
            raise ValueError(f"mask indices must lie in [0, {full})")
        if len(self.mask) >= full:
            raise ValueError("mask removes every site")


def lattice_sites(L: int) -> list[tuple[int, int]]:
    """Grid coordinates of the rotated-lattice patch, in sorted order.

    The patch is the set of integer (u, v) with 0 <= u-v <= 2L-1 and
    0 <= u+v <= 2L+1; nearest neighbors differ by one unit in u or v. This
    is a square lattice cut along its diagonals, with 2L(L+1) sites.
    """
    sites = []
    for u in range(0, 2 * L + 1):
        v_lo = max(u - (2 * L - 1), -u)
        v_hi = min(u, 2 * L + 1 - u)
        for v in range(v_lo, v_hi + 1):
            sites.append((u, v))
    return sites


def generate_lattice_instance(spec: LatticeSpec, seed: int,
                              sigma_J: float = 2.0, sigma_h: float = 1.0
                              ) -> IsingInstance:
    """Random nearest-neighbor instance on the rotated lattice.

    Couplings are N(0, sigma_J^2) and fields N(0, sigma_h^2), drawn
    deterministically from the seed on the full lattice before masking, so
    different masks of the same seed share weight values on surviving sites.
    """
    sites = lattice_sites(spec.L)
    index = {c: i for i, c in enumerate(sites)}
    full_edges = []
    for (u, v) in sites:
        for nb in ((u + 1, v), (u, v + 1)):
            if nb in index:
                a, b = index[(u, v)], index[nb]
                full_edges.append((min(a, b), max(a, b)))
    full_edges.sort()

    rng = np.random.default_rng(seed)
    couplings = rng.normal(0.0, sigma_J, size=len(full_edges))
    fields = rng.normal(0.0, sigma_h, size=len(sites))

    removed = set(spec.mask)
    keep = [i for i in range(len(sites)) if i not in removed]
    if not keep:
        raise ValueError("mask removes every site")
    relabel = {old: new for new, old in enumerate(keep)}

    edges = [(relabel[a], relabel[b], float(w))
             for (a, b), w in zip(full_edges, couplings)
             if a in relabel and b in relabel]
    meta = {
        "kind": "rotated-lattice",
        "L": spec.L,
        "mask": list(spec.mask),
        "seed": int(seed),
        "sigma_J": float(sigma_J),
        "sigma_h": float(sigma_h),
    }
    return IsingInstance(len(keep), edges, fields[keep], metadata=meta)


def generate_regular_instance(n: int, degree: int, seed: int,
                              sigma_J: float = 2.0, sigma_h: float = 1.0
                              ) -> IsingInstance:
    """Random d-regular instance with Gaussian couplings and fields."""
    import networkx as nx

    g = nx.random_regular_graph(degree, n, seed=int(seed))
    rng = np.random.default_rng(seed)
    edges = sorted((min(a, b), max(a, b)) for a, b in g.edges())
    couplings = rng.normal(0.0, sigma_J, size=len(edges))
    fields = rng.normal(0.0, sigma_h, size=n)
    meta = {"kind": "random-regular", "degree": degree, "seed": int(seed),
            "sigma_J": float(sigma_J), "sigma_h": float(sigma_h)}
    return IsingInstance(n, [(a, b, float(w)) for (a, b), w in zip(edges, couplings)],
                         fields, metadata=meta)


def all_state_energies(inst: IsingInstance, chunk: int = 1 << 18) -> np.ndarray:
    """Energies of every basis state 0..2^n-1 (bit 0 least significant)."""
    n = inst.n
    total = 1 << n
    out = np.empty(total, dtype=np.float64)
    shifts = np.arange(n, dtype=np.uint32)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        bits = (idx[:, None] >> shifts) & 1
        s = 1.0 - 2.0 * bits
        coup = (s[:, inst.edge_j] * s[:, inst.edge_k]) @ inst.edge_w
        out[start:start + idx.size] = -coup - s @ inst.h
    return out


def hamming_to_all(bits: np.ndarray, n: int) -> np.ndarray:
    """Hamming distance from `bits` to every basis index 0..2^n-1."""
    ref = bits_to_index(bits)
    idx = np.arange(1 << n, dtype=np.uint32) ^ np.uint32(ref)
    d = _POPCOUNT16[idx & 0xFFFF].astype(np.uint8) + _POPCOUNT16[idx >> 16]
    return d


BRUTE_FORCE_CAP = 26


def brute_force_ground(inst: IsingInstance, cap: int = BRUTE_FORCE_CAP
                       ) -> tuple[float, list[np.ndarray]]:
    """Exhaustive ground-state search; returns (E_g, all minimizing bitstrings)."""
    if inst.n > cap:
        raise ValueError(
            f"brute force refused for n={inst.n} > cap={cap}; "
            "raise cap explicitly if you really want an exhaustive sweep")
    energies = all_state_energies(inst)
    e_min = float(energies.min())
    minimizers = [index_to_bits(int(i), inst.n) for i in np.flatnonzero(energies == e_min)]
    return e_min, minimizers


def save_instance(inst: IsingInstance, path) -> None:
    """Write the instance as a JSON document (lossless round-trip)."""
    doc = {
        "format": INSTANCE_FORMAT,
        "n": inst.n,
        "edges": [[int(j), int(k), float(w)] for j, k, w in inst.edges],
        "h": [float(x) for x in inst.h],
        "metadata": inst.metadata,
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1, sort_keys=True)
        f.write("\n")


def load_instance(path) -> IsingInstance:
    """Read an instance JSON file, enforcing all structural invariants."""
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as err:
        raise InstanceFormatError(f"{path}: invalid JSON at line {err.lineno}: {err.msg}") from err
    for key in ("n", "edges", "h"):
        if key not in doc:
            raise InstanceFormatError(f"{path}: missing field '{key}'")
    try:
        return IsingInstance(int(doc["n"]), [tuple(e) for e in doc["edges"]],
                             doc["h"], metadata=doc.get("metadata"))
    except (ValueError, TypeError) as err:
        raise InstanceFormatError(f"{path}: {err}") from err
