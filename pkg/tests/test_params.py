import math

import numpy as np
import pytest

from qjump.ising import IsingInstance, generate_lattice_instance, generate_regular_instance, LatticeSpec
from qjump.params import (ParamSchedule, TransferParams, average_degree,
                          build_schedule, rescale_factor)
from oracles import naive_rescale_factor


def test_rescale_unit_couplings():
    inst = IsingInstance(4, [(0, 1, 1.0), (1, 2, -1.0), (2, 3, 1.0)],
                         [0.0, 0.0, 0.0, 0.0])
    assert rescale_factor(inst) == pytest.approx(1.0, abs=1e-12)


def test_rescale_fields_only():
    inst = IsingInstance(3, [], [2.0, -2.0, 2.0])
    assert rescale_factor(inst) == pytest.approx(2.0, abs=1e-12)


def test_rescale_matches_naive():
    inst = generate_lattice_instance(LatticeSpec(5), seed=2)
    assert inst.n == 60
    assert rescale_factor(inst) == pytest.approx(naive_rescale_factor(inst), abs=1e-12)


def test_rescale_all_zero_errors():
    inst = IsingInstance(2, [(0, 1, 0.0)], [0.0, 0.0])
    with pytest.raises(ValueError):
        rescale_factor(inst)


def test_average_degree():
    assert average_degree(generate_regular_instance(12, 4, seed=1)) == pytest.approx(4.0)
    assert average_degree(IsingInstance(2, [(0, 1, 0.5)], [0, 0])) == pytest.approx(1.0)
    assert average_degree(IsingInstance(3, [], [0, 0, 0])) == pytest.approx(0.0)


def test_build_schedule_full_and_prefix(regular16):
    params = TransferParams.load()
    full = build_schedule(params, regular16, 20, 20)
    assert full.layers == 20
    for layers in range(1, 21):
        trunc = build_schedule(params, regular16, layers, 20)
        assert np.allclose(trunc.gammas, full.gammas[:layers], atol=1e-12)
        assert np.allclose(trunc.betas, full.betas[:layers], atol=1e-12)


def test_build_schedule_degree_two_factor():
    # ring graph: D = 2 so the angle factor is arctan(1) = pi/4
    ring = IsingInstance(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)],
                         [0.0] * 4)
    params = TransferParams.fallback_ramp(3)
    sched = build_schedule(params, ring, 3, 3)
    g_ref, _ = params.get(3)
    assert np.allclose(sched.gammas, 1.0 * (math.pi / 4) * g_ref, atol=1e-12)


def test_build_schedule_errors(regular16):
    params = TransferParams.load()
    with pytest.raises(ValueError):
        build_schedule(params, regular16, 5, 4)
    with pytest.raises(KeyError, match="available depths"):
        build_schedule(params, regular16, 1, 99)
    single_edge = IsingInstance(2, [(0, 1, 1.0)], [0, 0])
    with pytest.raises(ValueError, match="degree"):
        build_schedule(params, single_edge, 1, 1)


def test_scale_covariance():
    # scaling every coupling and field by c scales A and every gamma by c
    # and leaves beta untouched
    base = generate_regular_instance(12, 4, seed=50)
    c = 3.5
    scaled = IsingInstance(12, [(j, k, c * w) for j, k, w in base.edges],
                           c * np.asarray(base.h))
    params = TransferParams.load()
    s_base = build_schedule(params, base, 4, 20)
    s_scaled = build_schedule(params, scaled, 4, 20)
    assert s_scaled.rescale == pytest.approx(c * s_base.rescale, rel=1e-12)
    assert np.allclose(s_scaled.gammas, c * s_base.gammas, rtol=1e-12)
    assert np.array_equal(s_scaled.betas, s_base.betas)


def test_fallback_ramp_shape():
    ramp = TransferParams.fallback_ramp(8)
    g, b = ramp.get(8)
    assert np.all(np.diff(g) > 0)
    assert np.all(np.diff(b) < 0)
    assert g.shape == b.shape == (8,)


def test_params_file_round_trip(tmp_path):
    params = TransferParams.fallback_ramp(5)
    path = tmp_path / "p.json"
    params.save(path)
    back = TransferParams.load(path)
    g0, b0 = params.get(5)
    g1, b1 = back.get(5)
    assert np.allclose(g0, g1) and np.allclose(b0, b1)


def test_packaged_depths_present():
    params = TransferParams.load()
    for q in (1, 2, 3, 6, 20):
        g, b = params.get(q)
        assert g.shape == (q,) and b.shape == (q,)


def test_schedule_validation():
    with pytest.raises(ValueError):
        ParamSchedule(2, 4, np.array([0.1]), np.array([0.2, 0.3]), 1.0, 4.0)
    with pytest.raises(ValueError):
        ParamSchedule(1, 4, np.array([0.1]), np.array([0.2]), -1.0, 4.0)
