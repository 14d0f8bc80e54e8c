"""Exact statevector simulation of the warm-start sampling circuit.

The circuit is an encoder of per-bit Y rotations biased toward a reference
bitstring, followed by alternating diagonal cost layers e^{-i gamma H} and
transverse-field mixer layers e^{-i beta sum X_j}, then projective
measurement. Closed-form amplitude oracles and the classical random-flip
baseline live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ising import IsingInstance, all_state_energies, as_bits, hamming_to_all

STATEVECTOR_CAP = 24


@dataclass
class SamplerConfig:
    """[L, Q]-sampler settings: L circuit layers drawn from a depth-Q schedule."""

    layers: int
    source_depth: int
    alpha: float
    shots: int
    backend: str = "statevector"
    seed: int = 0
    eta: float | None = None  # flip ratio for the classical-random backend

    def __post_init__(self):
        if not 1 <= self.layers <= self.source_depth:
            raise ValueError("need 1 <= layers <= source_depth")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.backend not in ("statevector", "classical-random"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == "classical-random":
            if self.eta is None or not 0.0 <= self.eta <= 1.0:
                raise ValueError("classical-random backend needs eta in [0, 1]")


def mixing_angles(s_circ: np.ndarray, alpha: float) -> np.ndarray:
    """Per-bit encoder angles theta_j = 2 arcsin sqrt(0.5 + (s_j - 0.5) alpha)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    s = as_bits(s_circ).astype(np.float64)
    return 2.0 * np.arcsin(np.sqrt(0.5 + (s - 0.5) * alpha))


def reference_angle(alpha: float) -> float:
    """Uniform angle theta = 2 arcsin sqrt(0.5 - 0.5 alpha) of the frame where
    the warm-start bitstring is all zeros."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    return 2.0 * math.asin(math.sqrt(0.5 - 0.5 * alpha))


def encode(s_circ: np.ndarray, alpha: float) -> np.ndarray:
    """Product state of Y(theta_j)|0> rotations biased toward s_circ."""
    thetas = mixing_angles(s_circ, alpha)
    n = thetas.shape[0]
    state = np.ones(1, dtype=np.complex128)
    for theta in thetas:
        qubit = np.array([math.cos(theta / 2.0), math.sin(theta / 2.0)],
                         dtype=np.complex128)
        state = (qubit[:, None] * state[None, :]).reshape(-1)
    return state


def _apply_single_qubit(state: np.ndarray, gate: np.ndarray, qubit: int) -> np.ndarray:
    """Apply a 2x2 gate to one qubit (bit 0 is the least significant index bit)."""
    view = state.reshape(-1, 2, 1 << qubit)
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = gate[0, 0] * lo + gate[0, 1] * hi
    view[:, 1, :] = gate[1, 0] * lo + gate[1, 1] * hi
    return state


def apply_cost(state: np.ndarray, inst: IsingInstance, gamma: float,
               energies: np.ndarray | None = None) -> np.ndarray:
    """Diagonal phase layer: amplitude of basis state s gains e^{-i gamma E(s)}."""
    if energies is None:
        energies = all_state_energies(inst)
    state *= np.exp(-1j * gamma * energies)
    return state


def apply_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """Transverse-field layer: e^{-i beta X} on every qubit."""
    n = int(round(math.log2(state.shape[0])))
    gate = np.array([[math.cos(beta), -1j * math.sin(beta)],
                     [-1j * math.sin(beta), math.cos(beta)]], dtype=np.complex128)
    for q in range(n):
        _apply_single_qubit(state, gate, q)
    return state


def apply_aligned_mixer(state: np.ndarray, beta: float, thetas: np.ndarray) -> np.ndarray:
    """Variant mixer rotating each qubit about its encoder axis (sin t X + cos t Z)."""
    for q, theta in enumerate(thetas):
        c, s = math.cos(beta), math.sin(beta)
        x, z = math.sin(theta), math.cos(theta)
        gate = np.array([[c - 1j * s * z, -1j * s * x],
                         [-1j * s * x, c + 1j * s * z]], dtype=np.complex128)
        _apply_single_qubit(state, gate, q)
    return state


def run_circuit(inst: IsingInstance, s_circ: np.ndarray, schedule,
                alpha: float, mixer: str = "x", cap: int = STATEVECTOR_CAP,
                energies: np.ndarray | None = None) -> np.ndarray:
    """Full sampler statevector: encoder then L cost+mixer layers.

    `schedule` provides per-layer gammas/betas (ParamSchedule or any object
    with those attributes); pass layers=0 via an empty schedule to get the
    encoder output alone.
    """
    if inst.n > cap:
        raise ValueError(
            f"statevector simulation refused for n={inst.n} > cap={cap}; use the "
            "conditional Monte Carlo model for large systems")
    state = encode(s_circ, alpha)
    if schedule is None:
        gammas = betas = np.empty(0)
    elif hasattr(schedule, "gammas"):
        gammas = np.atleast_1d(np.asarray(schedule.gammas, dtype=np.float64))
        betas = np.atleast_1d(np.asarray(schedule.betas, dtype=np.float64))
    else:
        gammas, betas = (np.atleast_1d(np.asarray(part, dtype=np.float64))
                         for part in schedule)
    if gammas.size != betas.size:
        raise ValueError("schedule gamma/beta lengths differ")
    if gammas.size and energies is None:
        energies = all_state_energies(inst)
    thetas = mixing_angles(s_circ, alpha) if mixer == "aligned" else None
    for gamma, beta in zip(gammas, betas):
        apply_cost(state, inst, float(gamma), energies)
        if mixer == "x":
            apply_mixer(state, float(beta))
        elif mixer == "aligned":
            apply_aligned_mixer(state, float(beta), thetas)
        else:
            raise ValueError(f"unknown mixer {mixer!r}")
    return state


def sample(state: np.ndarray, shots: int, seed: int) -> np.ndarray:
    """Draw `shots` bitstrings from |amplitude|^2; rows are bit arrays."""
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    n = int(round(math.log2(state.shape[0])))
    rng = np.random.default_rng(seed)
    idx = rng.choice(state.shape[0], size=shots, p=probs)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def classical_random_sample(s_circ: np.ndarray, eta: float, shots: int,
                            seed: int) -> np.ndarray:
    """Baseline sampler: flip each bit of s_circ independently with probability eta."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    base = as_bits(s_circ)
    rng = np.random.default_rng(seed)
    flips = (rng.random((shots, base.shape[0])) < eta).astype(np.uint8)
    return base[None, :] ^ flips


WS_SUM_CAP = 20


def ws_amplitude_closed_form(inst: IsingInstance, s_circ: np.ndarray,
                             s_x: np.ndarray, theta: float, gamma: float,
                             beta: float, cap: int = WS_SUM_CAP) -> complex:
    """Single-layer warm-start amplitude <s^x|circuit(s_circ)> by exhaustive sum.

    F_x = cos^N(t/2) cos^N(b) * sum_y e^{-i g E_y} tan^{d0y}(t/2) (-i tan b)^{dxy},
    where d0y and dxy are Hamming distances of y to the warm start and to s^x.
    The tan^{d0y}(t/2) factor is the exponential suppression that localizes
    the superposition around the warm start; at theta = pi/2 (alpha = 0) the
    expression reduces to the uniform-start single-layer amplitude.
    """
    if inst.n > cap:
        raise ValueError(f"exhaustive amplitude sum refused for n={inst.n} > cap={cap}")
    n = inst.n
    energies = all_state_energies(inst)
    d_circ = hamming_to_all(as_bits(s_circ), n).astype(np.float64)
    d_x = hamming_to_all(as_bits(s_x), n).astype(np.float64)
    t_half = math.tan(theta / 2.0)
    total = np.sum(np.exp(-1j * gamma * energies)
                   * t_half ** d_circ
                   * (-1j * math.tan(beta)) ** d_x)
    return complex(math.cos(theta / 2.0) ** n * math.cos(beta) ** n * total)


@dataclass
class FxDecomposition:
    """Per-bitstring components of a single-layer uniform-start amplitude.

    Components are grouped by Hamming distance to the target and sorted by
    energy within each group; cumulative partial sums trace the meandering
    interference path whose end-to-end span is |F_x|.
    """

    distances: np.ndarray
    energies: np.ndarray
    components: np.ndarray

    @property
    def amplitude(self) -> complex:
        return complex(self.components.sum())

    def path_points(self) -> np.ndarray:
        """Vertices of the interference path (cumulative sums, origin first)."""
        return np.concatenate([[0.0 + 0.0j], np.cumsum(self.components)])

    def group_sums(self) -> tuple[np.ndarray, np.ndarray]:
        """Total complex contribution per Hamming-distance group."""
        d_values = np.arange(self.distances.max() + 1)
        sums = np.zeros(d_values.size, dtype=np.complex128)
        np.add.at(sums, self.distances, self.components)
        return d_values, sums


def decompose_fx(inst: IsingInstance, s_x: np.ndarray, gamma: float,
                 beta: float, cap: int = WS_SUM_CAP) -> FxDecomposition:
    """Expand the uniform-start single-layer amplitude on s_x into its 2^n terms.

    Each basis state y contributes magnitude 2^{-n/2} cos^n(b) tan^{dxy}(b)
    at phase -(gamma E_y + (pi/2) dxy).
    """
    if inst.n > cap:
        raise ValueError(f"amplitude decomposition refused for n={inst.n} > cap={cap}")
    n = inst.n
    energies = all_state_energies(inst)
    d_x = hamming_to_all(as_bits(s_x), n)
    prefactor = 2.0 ** (-n / 2.0) * math.cos(beta) ** n
    components = prefactor * (np.exp(-1j * (gamma * energies + (math.pi / 2.0) * d_x))
                              * math.tan(beta) ** d_x.astype(np.float64))
    order = np.lexsort((energies, d_x))
    return FxDecomposition(d_x[order].astype(np.int64), energies[order],
                           components[order])


def hd_contribution_profile(inst: IsingInstance, s_x: np.ndarray, beta: float
                            ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Count, weight tan^d(beta), and their product per Hamming distance d.

    The product shows which distance shells dominate the amplitude on s_x:
    small beta concentrates the mass at short distances even though shell
    sizes grow combinatorially.
    """
    as_bits(s_x)
    n = inst.n
    d = np.arange(n + 1)
    counts = np.array([math.comb(n, int(k)) for k in d], dtype=np.float64)
    weights = math.tan(beta) ** d.astype(np.float64)
    return d, counts, weights, counts * weights
