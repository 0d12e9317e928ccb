import math

import numpy as np
import pytest
from scipy.interpolate import CubicSpline

from pathlab.errors import NumericFailure, UnsupportedProblem
from pathlab.feynman_kac import (ParabolicProblem, heat_reference,
                                 solve_parabolic_mc, trapezoid_bias_profile)
from pathlab.rng import RngStream


def _gauss(x):
    return np.exp(-np.asarray(x, dtype=float) ** 2)


def test_problem_validation():
    with pytest.raises(ValueError):
        ParabolicProblem(c2=0.0, t=1.0, f=_gauss)
    with pytest.raises(ValueError):
        ParabolicProblem(c2=1.0, t=-1.0, f=_gauss)


def test_mc_argument_validation():
    prob = ParabolicProblem(c2=0.5, t=0.5, f=_gauss)
    with pytest.raises(ValueError):
        solve_parabolic_mc(prob, 0.0, 0, 8, RngStream(1, 0))
    with pytest.raises(ValueError):
        solve_parabolic_mc(prob, 0.0, 8, 0, RngStream(1, 0))


def test_constant_initial_data_exact():
    # f == 1, V == 0: every path contributes exactly 1
    prob = ParabolicProblem(c2=0.5, t=1.0, f=lambda x: np.ones_like(np.asarray(x, dtype=float)))
    s = solve_parabolic_mc(prob, 2.0, 5000, 4, RngStream(21, 0))
    assert s.mean == 1.0
    assert s.std_error == 0.0


def test_heat_reference_gaussian_closed_form():
    # Gaussian initial data stays Gaussian: variance 1/2 -> 1/2 + 2 c2 t
    c2, t = 0.7, 0.9
    prob = ParabolicProblem(c2=c2, t=t, f=_gauss)
    for x in (-1.3, 0.0, 0.4, 2.2):
        s2 = 0.5 + 2.0 * c2 * t
        exact = math.sqrt(0.5 / s2) * math.exp(-x * x / (2.0 * s2))
        assert abs(heat_reference(prob, x) - exact) < 1e-12


def test_heat_reference_rejects_potential():
    prob = ParabolicProblem(c2=0.5, t=0.5, f=_gauss,
                            potential=lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    with pytest.raises(UnsupportedProblem):
        heat_reference(prob, 0.0)


def test_mc_converges_to_heat_reference():
    prob = ParabolicProblem(c2=0.5, t=0.5, f=_gauss)
    for i, x in enumerate((-1.0, 0.0, 0.8)):
        s = solve_parabolic_mc(prob, x, 200_000, 1, RngStream(601, i + 1))
        ref = heat_reference(prob, x)
        assert abs(s.mean - ref) < 3.0 * s.std_error + 1e-12


def test_constant_potential_factorizes():
    # V == v0 multiplies every weight by exp(-v0 t) exactly, so the two
    # estimators agree path for path when run from the same stream
    v0, t = 0.8, 0.5
    base = ParabolicProblem(c2=0.5, t=t, f=_gauss)
    prob = ParabolicProblem(
        c2=0.5, t=t, f=_gauss,
        potential=lambda x, v=v0: np.full_like(np.asarray(x, dtype=float), v))
    s0 = solve_parabolic_mc(base, 0.3, 50_000, 16, RngStream(602, 1))
    s1 = solve_parabolic_mc(prob, 0.3, 50_000, 16, RngStream(602, 1))
    assert abs(s1.mean - s0.mean * math.exp(-v0 * t)) < 1e-14
    # and the analytic target sits inside the Monte Carlo band
    ref = heat_reference(base, 0.3) * math.exp(-v0 * t)
    assert abs(s1.mean - ref) < 3.0 * s1.std_error


def test_positivity_preserved():
    prob = ParabolicProblem(c2=0.5, t=0.5, f=_gauss,
                            potential=lambda x: np.cos(np.asarray(x, dtype=float)))
    s = solve_parabolic_mc(prob, 0.0, 2000, 16, RngStream(22, 0))
    assert s.mean > 0.0


def test_deterministic_replay():
    prob = ParabolicProblem(c2=0.5, t=0.5, f=_gauss,
                            potential=lambda x: np.asarray(x, dtype=float) ** 2)
    a = solve_parabolic_mc(prob, 0.1, 30_000, 8, RngStream(23, 4))
    b = solve_parabolic_mc(prob, 0.1, 30_000, 8, RngStream(23, 4))
    assert a == b


def test_weight_overflow_flagged():
    # V = -3000 makes exp(-int V) = exp(3000 t) blow past the guard
    prob = ParabolicProblem(
        c2=0.5, t=1.0, f=_gauss,
        potential=lambda x: np.full_like(np.asarray(x, dtype=float), -3000.0))
    with pytest.raises(NumericFailure):
        solve_parabolic_mc(prob, 0.0, 100, 8, RngStream(24, 0))


def test_bias_profile_validation():
    no_v = ParabolicProblem(c2=0.5, t=1.0, f=_gauss)
    with pytest.raises(UnsupportedProblem):
        trapezoid_bias_profile(no_v, 0.0, 100, (8,), 64, RngStream(1, 0))
    prob = ParabolicProblem(c2=0.5, t=1.0, f=_gauss,
                            potential=lambda x: np.asarray(x, dtype=float) ** 2)
    with pytest.raises(ValueError):
        trapezoid_bias_profile(prob, 0.0, 100, (7,), 64, RngStream(1, 0))


def test_bias_profile_second_order():
    # common-skeleton subsampling isolates the trapezoid bias; halving
    # the step count must shrink it by about 4 (slope -2 on a log grid)
    prob = ParabolicProblem(c2=0.5, t=1.0, f=_gauss,
                            potential=lambda x: np.asarray(x, dtype=float) ** 2)
    bias = trapezoid_bias_profile(prob, 0.0, 1 << 17, (8, 16, 32), 256,
                                  RngStream(20250825, 0))
    ns = np.array(sorted(bias))
    mags = np.array([abs(bias[n]) for n in ns])
    assert np.all(mags > 0.0)
    slope = np.polyfit(np.log(ns), np.log(mags), 1)[0]
    assert -2.35 < slope < -1.65


def test_two_stage_composition():
    # evolving to t in one stage agrees with evolving to t/2, spline
    # interpolating the intermediate profile, and evolving again
    c2, t, x0 = 0.5, 0.5, 0.2
    prob_full = ParabolicProblem(c2=c2, t=t, f=_gauss)
    prob_half = ParabolicProblem(c2=c2, t=t / 2.0, f=_gauss)

    grid = np.arange(-6.0, 6.0 + 1e-9, 0.05)
    stage1 = [solve_parabolic_mc(prob_half, float(g), 40_000, 1,
                                 RngStream(401, i + 1))
              for i, g in enumerate(grid)]
    mid = CubicSpline(grid, [s.mean for s in stage1])
    se1_max = max(s.std_error for s in stage1)

    prob_restart = ParabolicProblem(c2=c2, t=t / 2.0,
                                    f=lambda y: mid(np.asarray(y, dtype=float)))
    s2 = solve_parabolic_mc(prob_restart, x0, 40_000, 1, RngStream(402, 1))
    direct = solve_parabolic_mc(prob_full, x0, 40_000, 1, RngStream(402, 2))

    band = 3.0 * (s2.std_error + direct.std_error + se1_max)
    assert abs(s2.mean - direct.mean) < band
