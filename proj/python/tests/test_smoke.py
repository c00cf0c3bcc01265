# SPDX-License-Identifier: Apache-2.0
import math

import numpy as np
import pytest

import irs_sensing as irs


def test_reference_geometry():
    cfg = irs.SystemConfig()
    g = irs.geometry(cfg)
    assert g["d_bs_irs"] == pytest.approx(math.sqrt(2.0))
    assert g["d_irs_target"] == pytest.approx(6.0)
    assert irs.path_loss(math.sqrt(2.0), 2.2, cfg) == pytest.approx(1e-3 * 2.0**-1.1)
    assert abs(irs.target_coefficient(cfg)) ** 2 == pytest.approx((1e-3 / 36.0) ** 2)


def test_steering_vector_is_unit_modulus():
    s = irs.steering_vector(9, 0.5, 0.4)
    assert s.shape == (9,)
    np.testing.assert_allclose(np.abs(s), 1.0, atol=1e-12)


def test_los_joint_matches_closed_form():
    cfg = irs.SystemConfig()
    ch = irs.los_channels(cfg)
    phases = irs.los_optimal_phases(ch.irs_steering, ch.target_steering)
    fully, semi = irs.snr_opt_tx(phases, ch, cfg.p0, cfg.sigma2)
    ref_fully, ref_semi = irs.closed_form_snr_los(cfg, cfg.n)
    assert fully == pytest.approx(ref_fully, rel=1e-9)
    assert semi == pytest.approx(ref_semi, rel=1e-9)
    threshold, integer = irs.los_crossover(cfg)
    assert integer == 47
    assert threshold == pytest.approx(1.0 / math.sqrt(1e-3 * 2.0**-1.1))


def test_rayleigh_optimizers():
    cfg = irs.SystemConfig()
    cfg.n = 8
    ch = irs.rayleigh_channels(cfg, seed=3)
    assert ch.bs_to_irs.shape == (8, 5)
    assert ch.irs_to_bs.shape == (5, 8)
    assert ch.irs_steering is None

    p3 = irs.optimize_p3(ch, seed=1)
    assert 0.0 < p3["achieved"] <= p3["sdp_objective"] * (1 + 1e-6)
    p2 = irs.optimize_p2(ch, seed=1)
    trace = p2["objective_trace"]
    assert all(b >= a for a, b in zip(trace, trace[1:]))
    assert p2["phases"].shape == (8,)

    fully, semi = irs.snr_opt_tx(p2["phases"], ch, cfg.p0, cfg.sigma2)
    assert fully > 0.0 and semi > 0.0


def test_sdp_two_by_two():
    sol = irs.solve_unit_diag_sdp(np.ones((2, 2), dtype=complex))
    assert sol["converged"]
    assert sol["objective"] == pytest.approx(4.0, rel=1e-6)
    np.testing.assert_allclose(np.diag(sol["v"]).real, 1.0, atol=1e-6)


def test_bounds_and_fit():
    lo, hi = irs.rayleigh_bounds_fully(10, 5, 5)
    assert lo == pytest.approx((25 * math.pi + 40) ** 2)
    assert hi == pytest.approx(math.pi**2 * 25 * 1e4 / 16)
    ns = [10, 20, 40, 80]
    assert irs.fit_scaling_exponent(ns, [n**2 for n in ns]) == pytest.approx(2.0)
    with pytest.raises(irs.NonPositiveData):
        irs.fit_scaling_exponent([1, 2, 3], [1.0, 0.0, 2.0])


def test_config_errors():
    cfg = irs.parse_config("m_t = 3\nn_min = 4\nn_max = 8\nn_step = 4\n")
    assert cfg.system.m_t == 3
    assert cfg.sweep.grid() == [4, 8]
    with pytest.raises(irs.ConfigInvalid):
        irs.parse_config("unknown_key = 1\n")
    with pytest.raises(irs.IoError):
        irs.load_config("/nonexistent/file.cfg")
    assert issubclass(irs.ConfigInvalid, irs.IrsError)


def test_sweep_is_deterministic(tmp_path):
    cfg_path = tmp_path / "s.cfg"
    cfg_path.write_text("n_min = 4\nn_max = 8\nn_step = 4\ntrials = 2\nrand_count = 10\n")
    a = irs.run_sweep_file(cfg_path, tmp_path / "a.csv", 5)
    b = irs.run_sweep_file(cfg_path, tmp_path / "b.csv", 5)
    assert a == b
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert irs.CSV_HEADER in (tmp_path / "a.csv").read_text().splitlines()
    los = [r for r in a if r["channel"] == "los"]
    assert all(r["trials"] == 1 and r["snr_db_ci95"] == 0.0 for r in los)


def test_checks_pass():
    assert all(passed for _, passed, _ in irs.run_checks(irs.SystemConfig()))
