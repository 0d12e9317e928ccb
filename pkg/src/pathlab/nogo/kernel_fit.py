"""Best nonnegative translation-invariant kernel fits.

For a propagator P acting on a periodic cell, find the nonnegative
kernel row p >= 0 minimizing

    J(p) = 1/2 sum_j || (p conv f_j) dx - P f_j ||^2

over a fixed library of 8 band-limited test initial conditions f_j.
The heat propagator admits a (sampled Gaussian) kernel and the misfit
is tiny at every grid size.  The Dirac (1,1) component does not: its
Fourier multiplier has modulus increasing away from k = 0, while any
nonnegative kernel's transform peaks at k = 0, so the residual stays
bounded away from zero under refinement.

Solver: projected gradient with fixed step 1/||A^T A||, the spectral
norm estimated by power iteration, stopping at relative projected
gradient 1e-8 or 1e5 iterations.  The grid_n = 16 Dirac instance has
been solved to global optimality by exhaustive active-set enumeration
(all 2^16 supports); the certified optimum is recorded in
DIRAC16_ORACLE and pinned by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dirac import DiracParams, SpinorGrid, dirac_evolve

CELL_LENGTH = 2.0 * np.pi
LIBRARY_SIZE = 8
LIBRARY_BAND = 6
LIBRARY_SEED = 20250825
# spectral energy of the library per mode k = 0..6; weight is piled onto
# k = 0 and the band edge, where the Dirac multiplier's modulus ordering
# is most incompatible with a nonnegative kernel
LIBRARY_PROFILE = (3.0, 1.0, 0.2, 0.2, 0.5, 1.5, 2.0)

# certified global optimum of the grid_n = 16 Dirac fit (t = 0.5, m = 1),
# found by enumerating all supports and confirmed by an active-set solve
DIRAC16_ORACLE = 0.318459639


@dataclass(frozen=True)
class KernelFitReport:
    grid_n: int
    t: float
    residual_rel: float
    kernel_min: float
    converged: bool
    iterations: int


def test_library(n: int) -> np.ndarray:
    """The 8 frozen band-limited test functions sampled on n grid points.

    Construction: mode 0 carries a real coefficient, modes 1..6 carry
    fixed pseudo-random phases (Philox key LIBRARY_SEED) with amplitudes
    sqrt(profile/8); the same continuum functions are returned at every
    n, so refinements share one library.
    """
    if n < 2 * LIBRARY_BAND + 2:
        raise ValueError(f"grid too coarse for the band-{LIBRARY_BAND} library")
    rng = np.random.Generator(np.random.Philox(key=LIBRARY_SEED))
    fs = np.empty((LIBRARY_SIZE, n))
    for j in range(LIBRARY_SIZE):
        coef = np.zeros(n, dtype=complex)
        coef[0] = np.sqrt(LIBRARY_PROFILE[0] / LIBRARY_SIZE)
        for k in range(1, LIBRARY_BAND + 1):
            amp = np.sqrt(LIBRARY_PROFILE[k] / LIBRARY_SIZE)
            phase = 2.0 * np.pi * rng.random()
            c = amp * np.exp(1j * phase)
            coef[k] = c
            coef[n - k] = np.conj(c)
        fs[j] = np.fft.ifft(coef).real * n
    return fs


def _propagated(propagator: str, fs: np.ndarray, t: float, m: float,
                n: int) -> np.ndarray:
    dx = CELL_LENGTH / n
    if propagator == "heat":
        if t < 0:
            raise ValueError("heat propagator needs t >= 0")
        k = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
        mult = np.exp(-k * k * t)
        return np.fft.ifft(np.fft.fft(fs, axis=1) * mult[None, :], axis=1).real
    if propagator == "dirac-component":
        if t <= 0:
            raise ValueError("dirac propagator needs t > 0")
        params = DiracParams(m=m)
        out = np.empty_like(fs)
        for j, f in enumerate(fs):
            psi0 = np.zeros((n, 2), dtype=complex)
            psi0[:, 0] = f
            evolved = dirac_evolve(SpinorGrid(L=CELL_LENGTH, psi=psi0), params, t)
            out[j] = evolved.psi[:, 0].real
        return out
    raise ValueError(f"unknown propagator {propagator!r}")


def nnls_kernel_fit(propagator: str, t: float, grid_n: int,
                    m: float = 1.0, max_iter: int = 100_000,
                    grad_tol: float = 1e-8) -> KernelFitReport:
    """Projected-gradient solve of the nonnegative kernel fit."""
    report, _ = fit_kernel(propagator, t, grid_n, m=m, max_iter=max_iter,
                           grad_tol=grad_tol)
    return report


def fit_kernel(propagator: str, t: float, grid_n: int,
               m: float = 1.0, max_iter: int = 100_000,
               grad_tol: float = 1e-8):
    """As nnls_kernel_fit, but also returns the fitted kernel row."""
    if grid_n < 4 or grid_n > 1024 or (grid_n & (grid_n - 1)) != 0:
        raise ValueError(f"grid_n must be a power of two in [4, 1024], got {grid_n}")
    n = grid_n
    dx = CELL_LENGTH / n
    fs = test_library(n)
    gs = _propagated(propagator, fs, t, m, n)

    fhat = np.fft.fft(fs, axis=1)
    ghat = np.fft.fft(gs, axis=1)
    w = np.sum(np.abs(fhat) ** 2, axis=0)           # library spectral energy
    cross = np.sum(np.conj(fhat) * ghat, axis=0)
    target_norm2 = float(np.sum(np.abs(gs) ** 2))

    # Hessian of J is the circulant q -> dx^2 ifft(w qhat); estimate its
    # spectral norm by power iteration from an impulse (overlaps every mode)
    v = np.zeros(n)
    v[0] = 1.0
    lam = 0.0
    for _ in range(80):
        hv = dx * dx * np.fft.ifft(w * np.fft.fft(v)).real
        lam = float(np.linalg.norm(hv))
        if lam == 0.0:
            break
        v = hv / lam
    if lam <= 0.0:
        raise ValueError("degenerate library: zero spectral energy")
    step = 1.0 / lam

    def grad(p):
        # sum_j conj(fhat_j) (dx fhat_j phat - ghat_j) collapses to a circulant
        phat = np.fft.fft(p)
        return dx * np.fft.ifft(dx * w * phat - cross).real

    def resid2(p):
        r = np.fft.ifft(dx * np.fft.fft(p)[None, :] * fhat, axis=1).real - gs
        return float(np.sum(r * r))

    p = np.full(n, 1.0 / (n * dx))     # unit-mass start
    scale = float(np.linalg.norm(grad(p)))
    converged = False
    iterations = 0
    for it in range(1, max_iter + 1):
        g = grad(p)
        p_next = np.maximum(p - step * g, 0.0)
        # projected-gradient optimality measure
        pg = (p - p_next) / step
        p = p_next
        iterations = it
        if np.linalg.norm(pg) <= grad_tol * max(scale, 1e-300):
            converged = True
            break

    residual_rel = float(np.sqrt(resid2(p) / target_norm2))
    report = KernelFitReport(grid_n=n, t=t, residual_rel=residual_rel,
                             kernel_min=float(p.min()), converged=converged,
                             iterations=iterations)
    return report, p
