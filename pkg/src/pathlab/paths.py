"""Path samplers: Brownian trajectories, Poisson velocity flips, and the
subordinator laws behind the relativistic semigroup.

All samplers are pure functions of (RngStream, parameters); identical
inputs reproduce identical output bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import RngStream

BROWNIAN = "brownian"
FLIP_TIMES = "flip_times"


@dataclass(frozen=True)
class PathSample:
    """One realized trajectory.

    kind=brownian   : times is a uniform grid starting at 0, values are
                      positions, values[0] = declared start point.
    kind=flip_times : times[0] = 0 with values[0] = +1 (initial velocity
                      sign); times[1:] are the flip events in (0, t) and
                      values[j] is the sign held on [times[j], times[j+1]).
    """

    times: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in (BROWNIAN, FLIP_TIMES):
            raise ValueError(f"unknown path kind {self.kind!r}")
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if len(self.times) == 0 or self.times[0] != 0.0:
            raise ValueError("path must start at time 0")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def flip_events(self) -> np.ndarray:
        """Event times only (excludes the t=0 anchor)."""
        if self.kind != FLIP_TIMES:
            raise ValueError("flip_events is defined for kind=flip_times")
        return self.times[1:]


def gaussian_path(rng: RngStream, x0: float, t: float, n_steps: int) -> PathSample:
    """Standard Brownian path from x0 on a uniform grid over [0, t].

    Increments are N(0, t/n_steps), so the endpoint has variance t.
    Diffusion-constant scalings are applied by the callers that need
    them; the raw path is always unit-diffusion.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    g = rng.generator()
    dt = t / n_steps
    inc = g.normal(0.0, math.sqrt(dt), n_steps)
    values = np.empty(n_steps + 1)
    values[0] = x0
    np.cumsum(inc, out=values[1:])
    values[1:] += x0
    times = np.linspace(0.0, t, n_steps + 1)
    return PathSample(times=times, values=values, kind=BROWNIAN)


def poisson_flip_times(rng: RngStream, rate: float, t: float) -> PathSample:
    """Sign process driven by Poisson(rate) flips on (0, t).

    Returns the piecewise-constant velocity sign: values[j] is the sign
    on [times[j], times[j+1]), starting at +1.
    """
    if rate < 0:
        raise ValueError(f"rate must be nonnegative, got {rate}")
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    g = rng.generator()
    n = g.poisson(rate * t) if rate > 0 else 0
    events = np.sort(g.uniform(0.0, t, n)) if n else np.empty(0)
    times = np.concatenate(([0.0], events))
    signs = np.empty(len(times))
    signs[0::2] = 1.0
    signs[1::2] = -1.0
    return PathSample(times=times, values=signs, kind=FLIP_TIMES)


@dataclass(frozen=True)
class SubordinatorSample:
    """One draw of the operational time T_t.

    s is a sample of the normalized subordinator law; log_mass = -m*t is
    the log total mass of the defining sub-probability measure, carried
    separately so that s remains a proper probability draw.
    """

    t: float
    m: float
    s: float
    log_mass: float

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("operational time must be positive")


def _levy_sample(g: np.random.Generator, t: float) -> float:
    # exact transform: Z standard normal => t^2/(2 Z^2) has the stated
    # 1/2-stable density (change of variables through P(|Z| < t/sqrt(2s)))
    z = g.standard_normal()
    if z == 0.0:
        z = 1e-8
    return t * t / (2.0 * z * z)


def _inverse_gaussian_sample(g: np.random.Generator, t: float, m: float) -> float:
    # two-root construction for IG(mu = t/(2m), lam = t^2/2): sample a
    # chi-square, take the smaller root of the defining quadratic with
    # probability mu/(mu + root).  The root is written in divided form
    # (lam/mu = t*m, no explicit mu) so the m -> 0 limit degrades to the
    # exact one-sided stable sampler instead of overflowing.
    nu = g.standard_normal() ** 2
    if nu == 0.0:
        nu = 1e-16
    lam = t * t / 2.0
    b = t * m
    r = b / nu
    x = (lam / nu) / (r + 0.5 + math.sqrt(r + 0.25))
    q = b * x / lam
    if g.uniform() <= 1.0 / (1.0 + q):
        return x
    return (lam / b) ** 2 / x


def sample_subordinator(rng: RngStream, t: float, m: float) -> SubordinatorSample:
    """Draw the operational time of e^{-t sqrt(-Lap + m^2)}.

    m = 0: one-sided 1/2-stable (Levy) law with density
           t/(2 sqrt(pi)) s^{-3/2} exp(-t^2/(4s)).
    m > 0: inverse-Gaussian with mean t/(2m) and shape t^2/2, the
           normalized version of the same density tilted by e^{-m^2 s};
           the removed mass e^{-mt} is returned in log_mass.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    g = rng.generator()
    if m == 0.0:
        s = _levy_sample(g, t)
    else:
        s = _inverse_gaussian_sample(g, t, m)
    return SubordinatorSample(t=t, m=m, s=s, log_mass=-m * t)


def sample_subordinator_block(rng: RngStream, t: float, m: float, n: int) -> np.ndarray:
    """Vectorized operational-time draws (same laws as sample_subordinator)."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    g = rng.generator()
    if m == 0.0:
        z = g.standard_normal(n)
        z[z == 0.0] = 1e-8
        return t * t / (2.0 * z * z)
    lam = t * t / 2.0
    b = t * m
    nu = g.standard_normal(n) ** 2
    nu[nu == 0.0] = 1e-16
    r = b / nu
    x = (lam / nu) / (r + 0.5 + np.sqrt(r + 0.25))
    take_other = g.uniform(size=n) > 1.0 / (1.0 + b * x / lam)
    x[take_other] = (lam / b) ** 2 / x[take_other]
    return x
