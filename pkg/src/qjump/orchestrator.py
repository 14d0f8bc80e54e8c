"""The hybrid sampling + local-search loop, TTS metric, and runtime cost model."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ising import IsingInstance, all_state_energies, delta_table, random_bits
from .local_search import greedy_descent
from .params import ParamSchedule
from .sampler import SamplerConfig, classical_random_sample, run_circuit, sample


@dataclass
class QjumpConfig:
    """Hybrid-loop settings; the encoder mixing is forced to alpha=0 in the
    first iteration so the loop starts from an unbiased superposition."""

    sampler: SamplerConfig
    iterations: int
    seed: int = 0
    s_init: np.ndarray | None = None

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass
class IterationRecord:
    """Best-so-far solution after one iteration plus per-sample search stats."""

    index: int
    best_bits: np.ndarray
    best_energy: float
    sample_energies: np.ndarray
    descent_steps: np.ndarray
    replay_flips: np.ndarray


@dataclass
class QjumpTrace:
    iterations: list[IterationRecord] = field(default_factory=list)

    @property
    def best_bits(self) -> np.ndarray:
        return self.iterations[-1].best_bits

    @property
    def best_energy(self) -> float:
        return self.iterations[-1].best_energy

    def best_energy_sequence(self) -> np.ndarray:
        return np.array([rec.best_energy for rec in self.iterations])

    def mean_descent_steps(self) -> float:
        return float(np.concatenate([rec.descent_steps for rec in self.iterations]).mean())

    def mean_replay_flips(self) -> float:
        return float(np.concatenate([rec.replay_flips for rec in self.iterations]).mean())


def run_qjump(inst: IsingInstance, config: QjumpConfig,
              schedule: ParamSchedule | None = None,
              cap: int = 24) -> QjumpTrace:
    """Iterate quantum (or classical-random) sampling with greedy local search.

    Each iteration draws M candidates around the current warm start, descends
    every candidate from the warm start's cached flip table, and feeds the
    best solution seen so far back as the next warm start. Ties on energy
    keep the earliest-seen sample, so traces are deterministic.
    """
    cfg = config.sampler
    if cfg.backend == "statevector" and schedule is None:
        raise ValueError("statevector backend requires a parameter schedule")
    rng = np.random.default_rng(config.seed)
    warm = random_bits(inst.n, rng) if config.s_init is None \
        else np.asarray(config.s_init, dtype=np.uint8).copy()
    warm_table = delta_table(inst, warm)

    energies_diag = all_state_energies(inst) if (cfg.backend == "statevector"
                                                 and inst.n <= cap) else None
    best_bits = warm.copy()
    best_energy = math.inf
    best_table = warm_table
    trace = QjumpTrace()

    for it in range(config.iterations):
        shot_seed = int(rng.integers(0, 2 ** 63 - 1))
        if cfg.backend == "statevector":
            alpha = 0.0 if it == 0 else cfg.alpha
            state = run_circuit(inst, warm, schedule, alpha, cap=cap,
                                energies=energies_diag)
            samples = sample(state, cfg.shots, shot_seed)
        else:
            samples = classical_random_sample(warm, cfg.eta, cfg.shots, shot_seed)

        sample_energies = np.empty(cfg.shots)
        steps = np.empty(cfg.shots, dtype=np.int64)
        replays = np.empty(cfg.shots, dtype=np.int64)
        for m in range(cfg.shots):
            res = greedy_descent(inst, warm, warm_table, samples[m])
            sample_energies[m] = res.energy
            steps[m] = res.descent_steps
            replays[m] = res.replay_flips
            if res.energy < best_energy:
                best_energy = res.energy
                best_bits = res.bits
                best_table = res.table

        trace.iterations.append(IterationRecord(
            it, best_bits.copy(), best_energy, sample_energies, steps, replays))
        warm = best_bits
        warm_table = best_table
    return trace


def tts(t_run: float, p_success: float) -> float:
    """Time to reach the target with 99% confidence: t_run ln(0.01)/ln(1-p).

    Returns t_run for p >= 0.99 (one run already suffices) and infinity for
    p = 0.
    """
    if not 0.0 <= p_success <= 1.0:
        raise ValueError("success probability must lie in [0, 1]")
    if p_success == 0.0:
        return math.inf
    if p_success >= 0.99:
        return t_run
    return t_run * math.log(0.01) / math.log(1.0 - p_success)


# Measured per-operation costs (ns) of the classical search loop on a
# 2.3 GHz single core, by system size: flip+table update, table minimum
# scan, and per-iteration propose/bookkeeping overhead.
CLASSICAL_COSTS_NS = {
    60: (25.3, 87.7, 1378.8),
    84: (27.8, 107.6, 1260.6),
    104: (28.6, 128.2, 1249.2),
}


@dataclass
class CostModel:
    """Envisioned-hardware timing constants for the runtime model.

    Quantum block: reset + circuit depth * layer time + measure + feedback.
    Classical block: energy replay (eta*N flips) plus descent steps, each a
    table-minimum scan and a flip. All constants are overridable.
    """

    reset_ns: float = 200.0
    layer_ns: float = 40.0
    measure_ns: float = 500.0
    feedback_ns: float = 500.0
    depth_per_layer: int = 16
    encoder_depth: int = 1
    t_flip_ns: float = 28.6
    t_scan_ns: float = 128.2
    t_propose_ns: float = 1249.2

    @classmethod
    def for_size(cls, n: int, **overrides) -> "CostModel":
        if n not in CLASSICAL_COSTS_NS:
            raise KeyError(f"no measured classical costs for n={n}; "
                           f"known sizes: {sorted(CLASSICAL_COSTS_NS)}")
        t_sf, t_ml, t_po = CLASSICAL_COSTS_NS[n]
        return cls(t_flip_ns=t_sf, t_scan_ns=t_ml, t_propose_ns=t_po, **overrides)

    def circuit_depth(self, layers: int) -> int:
        return self.encoder_depth + self.depth_per_layer * layers

    def quantum_block_ns(self, layers: int) -> float:
        return (self.reset_ns + self.circuit_depth(layers) * self.layer_ns
                + self.measure_ns + self.feedback_ns)

    def classical_block_ns(self, n: int, eta: float, descent_steps: float) -> float:
        return (eta * n * self.t_flip_ns
                + descent_steps * (self.t_scan_ns + self.t_flip_ns))


def estimate_runtime(model: CostModel, layers: int, shots: int, iterations: int,
                     n: int, eta: float, descent_steps: float,
                     pipelined: bool = True) -> float:
    """Modeled wall time (ns) of one hybrid run.

    In the pipelined model the quantum sampler starts one round ahead and
    streams in parallel with the classical search, so each iteration costs
    t_q + (M-1)*max(t_q, t_c) + t_c plus the per-iteration propose overhead;
    the serial model (pipelined=False) is the upper bound M*(t_q + t_c).
    """
    t_q = model.quantum_block_ns(layers)
    t_c = model.classical_block_ns(n, eta, descent_steps)
    if pipelined:
        per_iter = t_q + (shots - 1) * max(t_q, t_c) + t_c + model.t_propose_ns
    else:
        per_iter = shots * (t_q + t_c) + model.t_propose_ns
    return iterations * per_iter


def qaoa_run_ns(model: CostModel, depth: int) -> float:
    """Modeled sampler time of one full-depth run (quantum block only)."""
    return model.quantum_block_ns(depth)
