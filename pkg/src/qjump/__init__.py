"""Hybrid quantum-classical Ising optimizer with warm-start shallow-circuit sampling."""

from .ising import (IsingInstance, DeltaTable, LatticeSpec, InstanceFormatError,
                    energy, delta_table, apply_flip, hamming, complement,
                    generate_lattice_instance, generate_regular_instance,
                    brute_force_ground, all_state_energies, save_instance,
                    load_instance, random_bits, bits_to_index, index_to_bits,
                    hamming_to_all)
from .local_search import (SearchResult, greedy_descent, basin_of, basin_map,
                           global_basin_probability)
from .sim_anneal import (SaConfig, RTable, SaResult, init_temperatures, run_sa,
                         sa_time_model, temperature_schedule)
from .sampler import (SamplerConfig, encode, apply_cost, apply_mixer,
                      run_circuit, sample, classical_random_sample,
                      ws_amplitude_closed_form, decompose_fx,
                      hd_contribution_profile, mixing_angles, reference_angle)
from .params import (TransferParams, ParamSchedule, rescale_factor,
                     average_degree, build_schedule)
from .orchestrator import (QjumpConfig, QjumpTrace, CostModel, run_qjump, tts,
                           estimate_runtime, qaoa_run_ns)
from .analysis import (OccurrenceGrid, GaussianModel, occurrence_grid,
                       square_region_sums, gaussian_prob, gamma_star,
                       gaussian_peak, conditional_mc_sample, conditional_weights,
                       local_covariance, flip_ratio_stats)
from .pipeline import (BenchmarkRun, RunRecord, FilterRecord, ground_truth,
                       sa_benchmark, qjump_benchmark, qaoa_baseline,
                       filter_instances, fixed_budget_comparison)

__version__ = "0.1.0"
