"""Truncated parameter transfer: depth-Q reference schedules rescaled per instance."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .ising import IsingInstance

PARAMS_FORMAT = "qjump-params/1"


class TransferParams:
    """Reference per-depth (gamma, beta) schedules for unweighted problems.

    The shipped data file holds near-optimal dimensionless schedules for
    Gaussian-weighted degree-4 problems, calibrated once by numerical
    optimization (see tools/fit_transfer_params.py); build_schedule rescales
    them to a concrete weighted instance.
    """

    def __init__(self, depths: dict[int, tuple[np.ndarray, np.ndarray]],
                 source: str = "memory"):
        self.depths = {}
        for q, (g, b) in depths.items():
            g = np.asarray(g, dtype=np.float64)
            b = np.asarray(b, dtype=np.float64)
            if g.shape != (q,) or b.shape != (q,):
                raise ValueError(f"depth {q}: schedule arrays must have length {q}")
            if not (np.all(np.isfinite(g)) and np.all(np.isfinite(b))):
                raise ValueError(f"depth {q}: non-finite parameter values")
            self.depths[int(q)] = (g, b)
        self.source = source

    @classmethod
    def load(cls, path=None) -> "TransferParams":
        """Load a schedule file; defaults to the packaged data file."""
        if path is None:
            ref = resources.files("qjump.data").joinpath("transfer_params.json")
            doc = json.loads(ref.read_text())
            source = "packaged"
        else:
            with open(path) as f:
                doc = json.load(f)
            source = str(path)
        entries = doc["depths"] if "depths" in doc else doc
        parsed = {int(q): (np.array(e["gammas"]), np.array(e["betas"]))
                  for q, e in entries.items()}
        return cls(parsed, source=source)

    @classmethod
    def fallback_ramp(cls, q: int, gamma_max: float = 0.6,
                      beta_max: float = math.pi / 4) -> "TransferParams":
        """Linear annealing-style ramp: gamma rises to gamma_max, beta falls from beta_max.

        A structural stand-in for depths absent from a data file; midpoint
        spacing (l-1/2)/Q keeps endpoints away from zero.
        """
        frac = (np.arange(1, q + 1) - 0.5) / q
        return cls({q: (gamma_max * frac, beta_max * (1.0 - frac))}, source="fallback-ramp")

    def available(self) -> list[int]:
        return sorted(self.depths)

    def get(self, q: int) -> tuple[np.ndarray, np.ndarray]:
        if q not in self.depths:
            raise KeyError(
                f"no depth-{q} schedule in {self.source}; available depths: "
                f"{self.available()}")
        return self.depths[q]

    def save(self, path) -> None:
        doc = {"format": PARAMS_FORMAT,
               "depths": {str(q): {"gammas": list(map(float, g)),
                                   "betas": list(map(float, b))}
                          for q, (g, b) in sorted(self.depths.items())}}
        with open(path, "w") as f:
            json.dump(doc, f, indent=1, sort_keys=True)
            f.write("\n")


@dataclass
class ParamSchedule:
    """Concrete per-layer circuit parameters for an [L, Q]-sampler."""

    layers: int
    source_depth: int
    gammas: np.ndarray
    betas: np.ndarray
    rescale: float
    mean_degree: float

    def __post_init__(self):
        self.gammas = np.asarray(self.gammas, dtype=np.float64)
        self.betas = np.asarray(self.betas, dtype=np.float64)
        if self.gammas.shape != (self.layers,) or self.betas.shape != (self.layers,):
            raise ValueError("parameter arrays must have length `layers`")
        if not self.rescale > 0:
            raise ValueError("rescale factor must be positive")


def rescale_factor(inst: IsingInstance) -> float:
    """Root-mean-square weight scale over the nonzero couplings and fields.

    A = sqrt(mean of J^2 over nonzero couplings + mean of h^2 over nonzero
    fields); a term with no nonzero entries contributes 0.
    """
    jw = inst.edge_w[inst.edge_w != 0.0]
    hw = inst.h[inst.h != 0.0]
    if jw.size == 0 and hw.size == 0:
        raise ValueError("all couplings and fields are zero")
    total = 0.0
    if jw.size:
        total += float(np.mean(jw ** 2))
    if hw.size:
        total += float(np.mean(hw ** 2))
    return math.sqrt(total)


def average_degree(inst: IsingInstance) -> float:
    """Mean degree of the coupling graph (nonzero couplings only)."""
    nonzero = int(np.count_nonzero(inst.edge_w))
    return 2.0 * nonzero / inst.n


def build_schedule(params: TransferParams, inst: IsingInstance,
                   layers: int, source_depth: int) -> ParamSchedule:
    """Truncate the depth-Q reference schedule to its first L layers and rescale.

    gamma_l = A * arctan(1/sqrt(D-1)) * gamma_ref_l and beta_l = beta_ref_l,
    where A is the instance weight scale and D its average degree.
    """
    if not 1 <= layers <= source_depth:
        raise ValueError(f"need 1 <= layers <= source depth, got L={layers}, Q={source_depth}")
    d = average_degree(inst)
    if d <= 1.0:
        raise ValueError(f"average degree {d} <= 1: degree rescaling undefined")
    gammas_ref, betas_ref = params.get(source_depth)
    a = rescale_factor(inst)
    factor = a * math.atan(1.0 / math.sqrt(d - 1.0))
    return ParamSchedule(layers, source_depth,
                         factor * gammas_ref[:layers], betas_ref[:layers].copy(),
                         a, d)
