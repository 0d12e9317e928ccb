"""Path-geometry diagnostics: the sharp modulus of continuity of
Brownian motion and the divergence of its difference quotients.

For a standard Brownian path W on [0, 1], the increments at lag h obey
sup_t |W_{t+h} - W_t| ~ sqrt(2 h log(1/h)) as h -> 0 (with the sup
scanning the scale-h dyadic grid, the form in which the bound is sharp
at accessible lags), while the difference quotients |W_{t+h} - W_t| / h
blow up like h^{-1/2} up to the log factor.  Together these witness
nowhere-differentiability: no derivative functional of the path exists.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..reduce import thread_count
from ..rng import RngStream

DYADIC_LAGS = tuple(range(4, 13))   # h = 2^-4 .. 2^-12


def brownian_grid_path(rng: RngStream, n_grid: int) -> np.ndarray:
    """Standard Brownian motion on [0, 1] at resolution n_grid (n_grid+1 values)."""
    if n_grid < (1 << 16) or (n_grid & (n_grid - 1)) != 0:
        raise ValueError(f"n_grid must be a power of two >= 2^16, got {n_grid}")
    g = rng.generator()
    dt = 1.0 / n_grid
    inc = g.normal(0.0, math.sqrt(dt), n_grid)
    w = np.empty(n_grid + 1)
    w[0] = 0.0
    np.cumsum(inc, out=w[1:])
    return w


def modulus_ratio_of_path(w: np.ndarray) -> float:
    """Max over dyadic lags of the scale-aligned increment ratio

        max_t |W_{t+h} - W_t| / sqrt(2 h log(1/h)),

    t ranging over the lag-h grid.  Defined on a precomputed path so
    scaling fields (c W) can be checked directly.
    """
    n_grid = len(w) - 1
    best = 0.0
    for j in DYADIC_LAGS:
        h = 2.0 ** -j
        lag = n_grid >> j
        if lag < 1:
            raise ValueError(f"path resolution too coarse for lag 2^-{j}")
        pts = w[::lag]
        mx = float(np.max(np.abs(np.diff(pts))))
        best = max(best, mx / math.sqrt(2.0 * h * math.log(1.0 / h)))
    return best


def quotient_slope_of_path(w: np.ndarray) -> float:
    """Log-log slope of max_t |W_{t+h} - W_t| / h against 1/h, the sup
    running over every grid offset t."""
    n_grid = len(w) - 1
    log_inv_h, log_quot = [], []
    for j in DYADIC_LAGS:
        h = 2.0 ** -j
        lag = n_grid >> j
        diffs = np.abs(w[lag:] - w[:-lag])
        log_inv_h.append(math.log(1.0 / h))
        log_quot.append(math.log(float(diffs.max()) / h))
    a = np.vstack([log_inv_h, np.ones(len(log_inv_h))]).T
    slope, _ = np.linalg.lstsq(a, np.asarray(log_quot), rcond=None)[0]
    return float(slope)


def levy_modulus_ratio(rng: RngStream, n_grid: int) -> float:
    """Simulate one path and return its modulus ratio statistic."""
    return modulus_ratio_of_path(brownian_grid_path(rng, n_grid))


def levy_modulus_diagnostics(rng: RngStream, n_grid: int):
    """(ratio, quotient slope) from a single simulated path."""
    w = brownian_grid_path(rng, n_grid)
    return modulus_ratio_of_path(w), quotient_slope_of_path(w)


def modulus_study(seed: int, n_seeds: int, n_grid: int):
    """Ratio and slope arrays over n_seeds independent streams.

    Streams are fixed by index, partial results are collected in index
    order, so the output is independent of worker scheduling.
    """
    if n_seeds < 1:
        raise ValueError("need at least one seed")
    streams = [RngStream(seed, i) for i in range(n_seeds)]
    workers = min(thread_count(), n_seeds)
    if workers <= 1:
        results = [levy_modulus_diagnostics(s, n_grid) for s in streams]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda s: levy_modulus_diagnostics(s, n_grid), streams))
    ratios = np.array([r for r, _ in results])
    slopes = np.array([s for _, s in results])
    return ratios, slopes
