import math

import numpy as np
import pytest

import mechent


def test_compute_operating_point():
    rep = mechent.compute(gain_over_kappa=0.26)
    assert rep["stable"]
    assert rep["E_N"] == pytest.approx(2.00687846671313, rel=1e-10)


def test_unstable_point_refused_unless_lenient():
    with pytest.raises(mechent.UnstableError):
        mechent.compute(gain_over_kappa=0.6)
    assert mechent.compute(gain_over_kappa=0.6, strict=False)["E_N"] is None


def test_config_errors_are_value_like():
    with pytest.raises(mechent.ConfigError):
        mechent.compute({"reduced": {"kapa": 1.0}})
    with pytest.raises(mechent.ConfigError):
        mechent.compute(bogus=1.0)
    assert issubclass(mechent.ConfigError, mechent.MechentError)


def test_params_round_trip():
    resolved = mechent.resolve_params({"reduced": {"kappa": 1000.0}})
    assert resolved["reduced"]["kappa"] == pytest.approx(2 * math.pi * 1000.0)
    assert mechent.resolve_params(resolved) == resolved


def test_sweep_ceiling():
    t = mechent.sweep([("gain_over_kappa", 0.0, 0.499, 50)], r=0.0, n=0.0)
    e = t["E_N"]
    assert t["coordinates"].shape == (50, 1)
    assert np.all(np.diff(e) > 0)
    assert e.max() <= math.log(2) + 1e-9


def test_sweep_masks_unstable_points():
    t = mechent.sweep([("gain_over_kappa", 0.4, 0.6, 5)])
    assert t["stable"] == [True, True, False, False, False]
    assert np.isnan(t["E_N"][-1])


def test_figure_signatures():
    out = mechent.figure("fig5", points=41)
    assert out["summary"]["all_passed"]
    assert out["coordinates"].shape == (4 * 41, 2)


def test_optimize_and_validate():
    rep = mechent.optimize([("theta", 0.0, math.pi)], gain_over_kappa=0.26)
    assert rep["argmax"]["theta"] < 0.02 * math.pi
    val = mechent.validate(gain_over_kappa=0.26, coupling_over_kappa=0.02)
    assert val["passed"]


def test_matrix_helpers():
    s = 0.7
    ch, sh = 0.5 * math.cosh(2 * s), 0.5 * math.sinh(2 * s)
    r = np.array([[ch, 0, sh, 0], [0, ch, 0, -sh], [sh, 0, ch, 0], [0, -sh, 0, ch]])
    e_n, v_s = mechent.log_negativity(r)
    assert e_n == pytest.approx(2 * s)
    b = -np.eye(2)
    f = 2 * np.eye(2)
    assert np.allclose(mechent.solve_lyapunov(b, f), np.eye(2))
    assert mechent.thermal_occupancy(2 * math.pi * 947e3, 42e-6) == pytest.approx(0.5, rel=0.05)
