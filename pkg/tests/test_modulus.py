import numpy as np
import pytest

from pathlab.nogo.modulus import (DYADIC_LAGS, brownian_grid_path,
                                  levy_modulus_diagnostics,
                                  modulus_ratio_of_path, modulus_study,
                                  quotient_slope_of_path)
from pathlab.rng import RngStream


def test_path_validation():
    with pytest.raises(ValueError):
        brownian_grid_path(RngStream(1, 0), 1 << 10)
    with pytest.raises(ValueError):
        brownian_grid_path(RngStream(1, 0), (1 << 16) + 5)


def test_path_shape_and_start():
    w = brownian_grid_path(RngStream(1, 0), 1 << 16)
    assert w.shape == ((1 << 16) + 1,)
    assert w[0] == 0.0


def test_ratio_scaling_exact():
    # the statistic is positively homogeneous: ratio(c W) = c ratio(W),
    # bit-for-bit when c is a power of two
    w = brownian_grid_path(RngStream(2, 3), 1 << 16)
    r = modulus_ratio_of_path(w)
    assert modulus_ratio_of_path(4.0 * w) == 4.0 * r


def test_ratio_resolution_floor():
    w = np.zeros((1 << 8) + 1)
    with pytest.raises(ValueError):
        modulus_ratio_of_path(w)


def test_quotient_slope_affine_path_is_zero():
    # W_t = t has difference quotient exactly 1 at every lag: slope 0
    t = np.linspace(0.0, 1.0, (1 << 16) + 1)
    assert abs(quotient_slope_of_path(t)) < 1e-12


def test_quotient_slope_smoke_band():
    # single-path statistics at 2^16: both quantities land in wide
    # brackets implied by the sharp modulus and h^{-1/2} divergence
    ratio, slope = levy_modulus_diagnostics(RngStream(3, 5), 1 << 16)
    assert 0.6 < ratio < 1.4
    assert 0.25 < slope < 0.75


def test_study_deterministic_and_thread_invariant(monkeypatch):
    monkeypatch.setenv("PATHLAB_THREADS", "1")
    r1, s1 = modulus_study(99, 6, 1 << 16)
    monkeypatch.setenv("PATHLAB_THREADS", "5")
    r2, s2 = modulus_study(99, 6, 1 << 16)
    assert np.array_equal(r1, r2)
    assert np.array_equal(s1, s2)
    assert r1.shape == s1.shape == (6,)


def test_study_matches_single_calls():
    ratios, slopes = modulus_study(7, 3, 1 << 16)
    for i in range(3):
        r, s = levy_modulus_diagnostics(RngStream(7, i), 1 << 16)
        assert ratios[i] == r
        assert slopes[i] == s


def test_study_validation():
    with pytest.raises(ValueError):
        modulus_study(1, 0, 1 << 16)


def test_lags_span_three_octaves():
    assert DYADIC_LAGS == tuple(range(4, 13))
