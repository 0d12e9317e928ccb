"""Monte Carlo solution of the parabolic problem

    du/dt = c2 d2u/dx2 - V u,      u(0, x) = f(x)

by averaging f(B_t) exp(-int_0^t V(B_s) ds) over Brownian paths whose
generator is exactly c2 d2/dx2 (variance 2 c2 s at time s).  The time
integral uses the trapezoid rule on the path grid; its bias is measured
by tests, not assumed away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .errors import NumericFailure, UnsupportedProblem
from .reduce import SummaryStat, chunked_mc
from .rng import RngStream

# exp overflows just above exp(709); flag paths well before that
_EXP_GUARD = 700.0


@dataclass(frozen=True)
class ParabolicProblem:
    """Diffusion constant, potential, initial data, final time.

    potential=None means V identically zero (and enables the exact
    heat_reference comparator).
    """

    c2: float
    t: float
    f: Callable[[np.ndarray], np.ndarray]
    potential: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if self.c2 <= 0:
            raise ValueError(f"c2 must be positive, got {self.c2}")
        if self.t <= 0:
            raise ValueError(f"t must be positive, got {self.t}")


def solve_parabolic_mc(prob: ParabolicProblem, x: float, n_paths: int,
                       n_steps: int, rng: RngStream) -> SummaryStat:
    """Estimate u(t, x) = E_x[ f(B_t) exp(-int_0^t V(B_s) ds) ]."""
    if n_paths < 1:
        raise ValueError(f"n_paths must be >= 1, got {n_paths}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")

    dt = prob.t / n_steps
    scale = math.sqrt(2.0 * prob.c2)

    def sampler(stream: RngStream, n: int) -> np.ndarray:
        g = stream.generator()
        inc = g.normal(0.0, math.sqrt(dt), (n, n_steps))
        b = np.empty((n, n_steps + 1))
        b[:, 0] = x
        np.cumsum(inc, axis=1, out=b[:, 1:])
        b[:, 1:] *= scale
        b[:, 1:] += x
        endpoints = b[:, -1]
        if prob.potential is None:
            return np.asarray(prob.f(endpoints), dtype=float)
        v = np.asarray(prob.potential(b), dtype=float)
        integral = dt * (v[:, 1:-1].sum(axis=1) + 0.5 * (v[:, 0] + v[:, -1]))
        if np.max(-integral) > _EXP_GUARD:
            raise NumericFailure(
                f"exponential weight overflow on stream "
                f"(seed={stream.seed}, stream_id={stream.stream_id})")
        return np.asarray(prob.f(endpoints), dtype=float) * np.exp(-integral)

    return chunked_mc(sampler, rng, n_paths)


def trapezoid_bias_profile(prob: ParabolicProblem, x: float, n_paths: int,
                           coarse_steps: tuple, fine_steps: int,
                           rng: RngStream, chunk_size: int = 8192) -> dict:
    """Bias of the trapezoid time integral versus step count.

    Simulates Brownian skeletons at fine_steps resolution and evaluates
    the estimator on every coarse grid by subsampling the same knots, so
    the returned est(n) - est(fine_steps) differences isolate the
    quadrature bias from Monte Carlo noise (common paths cancel it).
    Each coarse count must divide fine_steps.
    """
    if prob.potential is None:
        raise UnsupportedProblem("bias profile needs a potential")
    for n in coarse_steps:
        if n < 1 or fine_steps % n != 0:
            raise ValueError(f"coarse step count {n} must divide {fine_steps}")
    dt_fine = prob.t / fine_steps
    scale = math.sqrt(2.0 * prob.c2 * dt_fine)
    levels = (*coarse_steps, fine_steps)
    sums = {n: 0.0 for n in levels}
    n_chunks = max(1, n_paths // chunk_size)
    for ci in range(n_chunks):
        g = rng.split(ci + 1).generator()
        inc = g.standard_normal((chunk_size, fine_steps))
        b = np.empty((chunk_size, fine_steps + 1))
        b[:, 0] = x
        np.cumsum(inc, axis=1, out=b[:, 1:])
        b[:, 1:] *= scale
        b[:, 1:] += x
        fx = np.asarray(prob.f(b[:, -1]), dtype=float)
        for n in levels:
            knots = b[:, :: fine_steps // n]
            v = np.asarray(prob.potential(knots), dtype=float)
            dt = prob.t / n
            integral = dt * (v[:, 1:-1].sum(axis=1)
                             + 0.5 * (v[:, 0] + v[:, -1]))
            if np.max(-integral) > _EXP_GUARD:
                raise NumericFailure(
                    f"exponential weight overflow on stream "
                    f"(seed={rng.seed}, chunk={ci})")
            sums[n] += float(np.mean(fx * np.exp(-integral)))
    return {n: sums[n] / n_chunks - sums[fine_steps] / n_chunks
            for n in coarse_steps}


def heat_reference(prob: ParabolicProblem, x: float) -> float:
    """Exact u(t, x) for V = 0 by quadrature of the heat kernel

        (4 pi c2 t)^{-1/2} exp(-(x-y)^2 / (4 c2 t))

    against f.  Raises for problems with a potential.
    """
    if prob.potential is not None:
        raise UnsupportedProblem("heat_reference requires V identically zero")
    s2 = 2.0 * prob.c2 * prob.t  # kernel variance
    norm = 1.0 / math.sqrt(2.0 * math.pi * s2)

    def integrand(y):
        return norm * math.exp(-(x - y) ** 2 / (2.0 * s2)) * float(prob.f(np.asarray(y)))

    half_width = 40.0 * math.sqrt(s2)
    val, err = quad(integrand, x - half_width, x + half_width,
                    epsabs=1e-13, epsrel=1e-12, limit=400)
    if not math.isfinite(val) or err > 1e-8:
        raise NumericFailure(f"heat kernel quadrature failed (err={err:.2e})")
    return val
