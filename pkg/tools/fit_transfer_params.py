"""Calibrate the packaged transfer-parameter schedules.

Produces src/qjump/data/transfer_params.json: for each depth Q, a
dimensionless (gamma, beta) schedule that minimizes the mean normalized
sampler energy over a fixed seeded ensemble of Gaussian-weighted 4-regular
instances, evaluated through the same per-instance rescaling used at run
time (so the calibration absorbs the rescale convention). Depths are
bootstrapped: each depth starts from a linear interpolation of the previous
optimum and is polished with L-BFGS.

Run from the repository root:
    python3 tools/fit_transfer_params.py [--out src/qjump/data/transfer_params.json]
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from qjump.ising import all_state_energies, generate_regular_instance
from qjump.params import TransferParams, average_degree, rescale_factor
from qjump.sampler import apply_mixer, encode

ENSEMBLE_SIZE = 4
ENSEMBLE_N = 12
ENSEMBLE_DEGREE = 4
ENSEMBLE_SEEDS = [101, 202, 303, 404]
DEPTHS = list(range(1, 21))


def build_ensemble():
    ensemble = []
    for seed in ENSEMBLE_SEEDS[:ENSEMBLE_SIZE]:
        inst = generate_regular_instance(ENSEMBLE_N, ENSEMBLE_DEGREE, seed)
        energies = all_state_energies(inst)
        factor = rescale_factor(inst) * math.atan(
            1.0 / math.sqrt(average_degree(inst) - 1.0))
        ensemble.append((energies, float(energies.min()), factor))
    return ensemble


def mean_normalized_energy(gammas_inf, betas_inf, ensemble) -> float:
    base = encode(np.zeros(ENSEMBLE_N, dtype=np.uint8), 0.0)
    total = 0.0
    for energies, e_min, factor in ensemble:
        state = base.copy()
        for g_inf, beta in zip(gammas_inf, betas_inf):
            state *= np.exp(-1j * (factor * g_inf) * energies)
            apply_mixer(state, float(beta))
        mean_e = float(np.real(np.vdot(state, energies * state)))
        total += mean_e / abs(e_min)
    return total / len(ensemble)


def optimize_depth(q: int, x0: np.ndarray, ensemble, maxiter: int) -> tuple[np.ndarray, float]:
    def objective(x):
        return mean_normalized_energy(x[:q], x[q:], ensemble)

    res = minimize(objective, x0, method="L-BFGS-B",
                   options={"maxiter": maxiter, "ftol": 1e-10})
    return res.x, float(res.fun)


def interp_bootstrap(prev: np.ndarray, q_prev: int, q_new: int) -> np.ndarray:
    """Stretch a depth-q schedule to q+1 layers by linear interpolation."""
    old_pos = (np.arange(1, q_prev + 1) - 0.5) / q_prev
    new_pos = (np.arange(1, q_new + 1) - 0.5) / q_new
    g = np.interp(new_pos, old_pos, prev[:q_prev])
    b = np.interp(new_pos, old_pos, prev[q_prev:])
    return np.concatenate([g, b])


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(Path(__file__).resolve().parents[1]
                                             / "src/qjump/data/transfer_params.json"))
    args = parser.parse_args()

    ensemble = build_ensemble()

    # Depth 1: coarse grid, then polish.
    best = None
    for g in np.linspace(0.05, 1.2, 16):
        for b in np.linspace(-0.8, 0.8, 17):
            val = mean_normalized_energy([g], [b], ensemble)
            if best is None or val < best[1]:
                best = (np.array([g, b]), val)
    x, val = optimize_depth(1, best[0], ensemble, maxiter=200)
    print(f"Q=1: objective {val:.6f} gamma {x[0]:.4f} beta {x[1]:.4f}")

    results = {1: x}
    for q in DEPTHS[1:]:
        t0 = time.time()
        x0 = interp_bootstrap(results[q - 1], q - 1, q)
        maxiter = 200 if q <= 6 else 120
        x, val = optimize_depth(q, x0, ensemble, maxiter=maxiter)
        results[q] = x
        print(f"Q={q}: objective {val:.6f} ({time.time()-t0:.1f} s) "
              f"gamma[0]={x[0]:.4f} beta[0]={x[q]:.4f} "
              f"gamma[-1]={x[q-1]:.4f} beta[-1]={x[-1]:.4f}")

    params = TransferParams({q: (results[q][:q], results[q][q:]) for q in DEPTHS})
    params.save(args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
