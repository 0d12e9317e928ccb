"""Kac velocity-jump Monte Carlo for the telegrapher equation

    d2u/dt2 + 2 lambda du/dt = c^2 d2u/dx2,   u(0)=f, du/dt(0)=0

plus a deterministic kinetic finite-difference reference for the
two-speed system  dp+/dt + c dp+/dx = lambda (p- - p+)  (and mirrored
for p-), used as the oracle for the stochastic representation

    u(t, x) = 1/2 E[f(x + S_t)] + 1/2 E[f(x - S_t)],

S_t the displacement of a speed-c particle whose velocity sign flips at
Poisson(lambda) times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .paths import poisson_flip_times
from .reduce import SummaryStat, chunked_mc
from .rng import RngStream


@dataclass(frozen=True)
class TelegrapherConfig:
    lam: float          # flip rate, 1/seconds
    c: float            # propagation speed
    t: float            # final time
    f: Callable[[np.ndarray], np.ndarray]   # initial data, du/dt(0) = 0

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.t <= 0:
            raise ValueError(f"t must be positive, got {self.t}")


def kac_displacement(rng: RngStream, cfg: TelegrapherConfig) -> float:
    """One exact draw of S_t = c int_0^t sigma(s) ds, sigma the flip sign."""
    path = poisson_flip_times(rng, cfg.lam, cfg.t)
    times = np.append(path.times, cfg.t)
    return cfg.c * float(np.sum(path.values * np.diff(times)))


def sample_displacements(rng: RngStream, cfg: TelegrapherConfig,
                         n: int) -> np.ndarray:
    """Vectorized draws of S_t (same law as kac_displacement).

    Event counts are Poisson(lambda t); given K events the flip times
    are K sorted uniforms, and S_t is the alternating sum of the
    inter-event gaps.  Paths are padded to the realized maximum count,
    with pad events parked at t where they contribute zero.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    g = rng.generator()
    if cfg.lam == 0.0:
        return np.full(n, cfg.c * cfg.t)
    counts = g.poisson(cfg.lam * cfg.t, n)
    kmax = int(counts.max())
    if kmax == 0:
        return np.full(n, cfg.c * cfg.t)
    u = g.uniform(0.0, cfg.t, (n, kmax))
    u[np.arange(kmax)[None, :] >= counts[:, None]] = cfg.t
    u.sort(axis=1)
    # S = c * sum_j (-1)^j (tau_{j+1} - tau_j), tau_0 = 0, tau_{K+1} = t
    nodes = np.concatenate([np.zeros((n, 1)), u, np.full((n, 1), cfg.t)], axis=1)
    gaps = np.diff(nodes, axis=1)
    signs = (-1.0) ** np.arange(kmax + 1)
    return cfg.c * gaps @ signs


def solve_telegrapher_mc(cfg: TelegrapherConfig, x: float, n_paths: int,
                         rng: RngStream) -> SummaryStat:
    """Estimate u(t, x) by the symmetrized two-wave average.

    Each path contributes (f(x + S) + f(x - S)) / 2, so the lam = 0 case
    reduces to the exact d'Alembert splitting with zero variance.
    """
    if n_paths < 1:
        raise ValueError(f"n_paths must be >= 1, got {n_paths}")

    def sampler(stream: RngStream, n: int) -> np.ndarray:
        s = sample_displacements(stream, cfg, n)
        return 0.5 * (np.asarray(cfg.f(x + s), dtype=float)
                      + np.asarray(cfg.f(x - s), dtype=float))

    return chunked_mc(sampler, rng, n_paths)


@dataclass(frozen=True)
class KineticState:
    """Densities of the two velocity populations on a periodic grid."""

    x: np.ndarray
    dx: float
    p_plus: np.ndarray
    p_minus: np.ndarray

    def __post_init__(self):
        if self.dx <= 0:
            raise ValueError("dx must be positive")
        if len(self.x) != len(self.p_plus) or len(self.x) != len(self.p_minus):
            raise ValueError("grid and densities must have equal length")
        if np.any(self.p_plus < 0) or np.any(self.p_minus < 0):
            raise ValueError("kinetic densities must be nonnegative")

    def u(self) -> np.ndarray:
        return self.p_plus + self.p_minus

    def mass(self) -> float:
        return float((self.p_plus.sum() + self.p_minus.sum()) * self.dx)

    @staticmethod
    def from_initial(f, x: np.ndarray, dx: float) -> "KineticState":
        """Equal split p+ = p- = f/2, the du/dt(0) = 0 convention."""
        fx = np.asarray(f(x), dtype=float)
        return KineticState(x=x, dx=dx, p_plus=fx / 2.0, p_minus=fx / 2.0)


def _kinetic_step(p_plus: np.ndarray, p_minus: np.ndarray, nu: float,
                  decay: float):
    # upwind transport (convex combination, positivity preserving)
    p_plus = (1.0 - nu) * p_plus + nu * np.roll(p_plus, 1)
    p_minus = (1.0 - nu) * p_minus + nu * np.roll(p_minus, -1)
    # exact two-state relaxation: mean invariant, difference decays
    mean = 0.5 * (p_plus + p_minus)
    half_diff = 0.5 * (p_plus - p_minus) * decay
    return mean + half_diff, mean - half_diff


def solve_kinetic_fd(state0: KineticState, cfg: TelegrapherConfig,
                     dt: float) -> KineticState:
    """March state0 to time cfg.t by split upwind transport + relaxation.

    Requires the CFL bound c dt <= dx and the relaxation bound
    lambda dt <= 1; mass is conserved exactly by both substeps.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if cfg.c * dt > state0.dx * (1.0 + 1e-12):
        raise ValueError(
            f"CFL violation: c*dt = {cfg.c * dt:.3e} exceeds dx = {state0.dx:.3e}")
    if cfg.lam * dt > 1.0 + 1e-12:
        raise ValueError(
            f"relaxation bound violation: lam*dt = {cfg.lam * dt:.3e} exceeds 1")
    n_steps = int(round(cfg.t / dt))
    if abs(n_steps * dt - cfg.t) > 1e-9 * max(1.0, cfg.t) or n_steps < 1:
        raise ValueError(f"t = {cfg.t} is not a whole number of steps of dt = {dt}")

    nu = cfg.c * dt / state0.dx
    decay = math.exp(-2.0 * cfg.lam * dt)
    p_plus, p_minus = state0.p_plus.copy(), state0.p_minus.copy()
    for _ in range(n_steps):
        p_plus, p_minus = _kinetic_step(p_plus, p_minus, nu, decay)
    return KineticState(x=state0.x, dx=state0.dx,
                        p_plus=p_plus, p_minus=p_minus)


def check_chapman_kolmogorov(cfg: TelegrapherConfig, t: float, s: float,
                             state0: KineticState, dt: float) -> float:
    """Max abs deviation between evolving t+s at once and composing
    evolve(t) after evolve(s), same grid and step size."""
    if t <= 0 or s <= 0:
        raise ValueError("t and s must be positive")
    cfg_s = TelegrapherConfig(cfg.lam, cfg.c, s, cfg.f)
    cfg_t = TelegrapherConfig(cfg.lam, cfg.c, t, cfg.f)
    cfg_ts = TelegrapherConfig(cfg.lam, cfg.c, t + s, cfg.f)
    mid = solve_kinetic_fd(state0, cfg_s, dt)
    if mid.x.shape != state0.x.shape or not np.array_equal(mid.x, state0.x):
        raise ValueError("grid mismatch between composed evolutions")
    two_leg = solve_kinetic_fd(mid, cfg_t, dt)
    one_leg = solve_kinetic_fd(state0, cfg_ts, dt)
    return float(max(np.max(np.abs(two_leg.p_plus - one_leg.p_plus)),
                     np.max(np.abs(two_leg.p_minus - one_leg.p_minus))))
