"""Experiment registry for the CLI.

Each experiment validates its parameter map against a declared schema
(unknown keys are rejected), runs the corresponding solvers or
diagnostics, and returns (csv_header, csv_rows, summary).  The CLI
persists the CSV plus a JSON run record embedding the fully resolved
configuration, so every output is reproducible from its record alone.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from . import dirac as dirac_mod
from . import relativistic
from .feynman_kac import ParabolicProblem, heat_reference, solve_parabolic_mc
from .nogo.gram import bochner_gram_min_eig
from .nogo.kernel_fit import nnls_kernel_fit
from .nogo.modulus import modulus_study
from .nogo.oscillatory import (FRESNEL_LIMIT, PhaseFunctional,
                               fresnel_truncated, tv_refinement,
                               tv_regularized)
from .rng import RngStream
from .telegrapher import (KineticState, TelegrapherConfig, solve_kinetic_fd,
                          solve_telegrapher_mc)

SCHEMA_VERSION = "pathlab-run/1"


class ConfigError(ValueError):
    """Configuration rejected (unknown key, bad type, bad value)."""


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    seed: int
    params: dict
    output_path: str = "."


def _gaussian(x):
    return np.exp(-np.asarray(x, dtype=float) ** 2 / 2.0)


def _ones(x):
    return np.ones_like(np.asarray(x, dtype=float))

_INITIAL_DATA = {"gaussian": _gaussian, "one": _ones}


def _validate(params: Mapping, schema: Mapping[str, tuple]) -> dict:
    out = {}
    for key in params:
        if key not in schema:
            raise ConfigError(f"unknown parameter key: {key!r}")
    for key, (caster, default) in schema.items():
        raw = params.get(key, default)
        try:
            out[key] = caster(raw) if raw is not None else None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc
    return out

def _floats(v):
    return [float(x) for x in v]

def _ints(v):
    return [int(x) for x in v]

def _initial(v):
    if v not in _INITIAL_DATA:
        raise ConfigError(f"initial must be one of {sorted(_INITIAL_DATA)}, got {v!r}")
    return v


def run_heat(seed: int, params: Mapping):
    schema = {
        "c2": (float, 0.5), "t": (float, 0.5), "v0": (float, None),
        "initial": (_initial, "gaussian"),
        "probes": (_floats, [round(-3.0 + 0.4 * i, 10) for i in range(16)]),
        "n_paths": (int, 100_000), "n_steps": (int, 64),
    }
    p = _validate(params, schema)
    f = _INITIAL_DATA[p["initial"]]
    v0 = p["v0"]
    potential = None if v0 is None else (lambda x, v=v0: np.full_like(np.asarray(x, dtype=float), v))
    prob = ParabolicProblem(c2=p["c2"], t=p["t"], f=f, potential=potential)
    ref_prob = ParabolicProblem(c2=p["c2"], t=p["t"], f=f, potential=None)
    rows = []
    for i, x in enumerate(p["probes"]):
        stat = solve_parabolic_mc(prob, x, p["n_paths"], p["n_steps"],
                                  RngStream(seed, (i + 1) << 20))
        ref = heat_reference(ref_prob, x)
        if v0 is not None:
            ref *= math.exp(-v0 * p["t"])
        rows.append([x, stat.mean, stat.std_error, stat.n, ref])
    worst = max(abs(r[1] - r[4]) for r in rows)
    return (["x", "estimate", "std_error", "n", "reference"], rows,
            {"max_abs_error": worst, "params": p})


def run_telegrapher(seed: int, params: Mapping):
    schema = {
        "lam": (float, 1.0), "c": (float, 1.0), "t": (float, 1.0),
        "initial": (_initial, "gaussian"),
        "probes": (_floats, [round(-3.0 + 0.4 * i, 10) for i in range(16)]),
        "n_paths": (int, 100_000),
        "domain": (float, 16.0), "n_grid": (int, 1 << 11),
    }
    p = _validate(params, schema)
    f = _INITIAL_DATA[p["initial"]]
    cfg = TelegrapherConfig(lam=p["lam"], c=p["c"], t=p["t"], f=f)
    half = p["domain"] / 2.0
    dx = p["domain"] / p["n_grid"]
    x_grid = -half + dx * np.arange(p["n_grid"])
    state0 = KineticState.from_initial(f, x_grid, dx)
    dt = dx / p["c"]
    n_steps = max(1, int(round(p["t"] / dt)))
    dt = p["t"] / n_steps
    fd = solve_kinetic_fd(state0, cfg, dt)
    u_fd = fd.u()
    rows = []
    for i, x in enumerate(p["probes"]):
        # snap to the nearest grid node so MC and FD share a coordinate
        j = int(np.argmin(np.abs(x_grid - x)))
        xj = float(x_grid[j])
        stat = solve_telegrapher_mc(cfg, xj, p["n_paths"],
                                    RngStream(seed, (i + 1) << 20))
        rows.append([xj, stat.mean, stat.std_error, stat.n, float(u_fd[j])])
    worst = max(abs(r[1] - r[4]) for r in rows)
    return (["x", "estimate", "std_error", "n", "fd_reference"], rows,
            {"max_abs_error": worst, "params": p})


def run_dirac(seed: int, params: Mapping):
    schema = {
        "m": (float, 1.0), "t": (float, 0.5),
        "domain": (float, 8.0 * math.pi), "n_grid": (int, 1 << 10),
        "n_unitarity_steps": (int, 1000),
    }
    p = _validate(params, schema)
    par = dirac_mod.DiracParams(m=p["m"])
    n, L = p["n_grid"], p["domain"]
    x = -L / 2.0 + (L / n) * np.arange(n)
    psi0 = np.zeros((n, 2), dtype=complex)
    psi0[:, 0] = np.exp(-(x - 1.0) ** 2)
    psi0[:, 1] = 0.5 * np.exp(-x ** 2) * np.cos(x)
    state = dirac_mod.SpinorGrid(L=L, psi=psi0)
    norm0 = state.norm()

    cur = state
    dt = p["t"] / p["n_unitarity_steps"]
    drift = 0.0
    for _ in range(p["n_unitarity_steps"]):
        cur = dirac_mod.dirac_evolve(cur, par, dt)
        drift = max(drift, abs(cur.norm() / norm0 - 1.0))

    one_shot = dirac_mod.dirac_evolve(state, par, p["t"])
    group_dev = float(np.max(np.abs(one_shot.psi - cur.psi)))
    back = dirac_mod.dirac_evolve(one_shot, par, -p["t"])
    reverse_dev = float(np.max(np.abs(back.psi - state.psi)))

    par0 = dirac_mod.DiracParams(m=0.0)
    shift = dirac_mod.dirac_evolve(state, par0, p["t"])
    k = state.wavenumbers()
    hat = np.fft.fft(state.psi, axis=0)
    expected = np.empty_like(psi0)
    expected[:, 0] = np.fft.ifft(hat[:, 0] * np.exp(-1j * k * p["t"]))
    expected[:, 1] = np.fft.ifft(hat[:, 1] * np.exp(1j * k * p["t"]))
    transport_err = float(np.max(np.abs(shift.psi - expected)))

    phi = lambda y: np.exp(-(y - 0.7) ** 2 / 2.0)
    pairing = dirac_mod.kernel_pairing(phi, par, p["t"], L=L, n=n)

    rows = [
        ["unitarity_drift", drift],
        ["group_law_deviation", group_dev],
        ["reverse_deviation", reverse_dev],
        ["m0_transport_error", transport_err],
        ["pairing_11_re", pairing[0, 0].real], ["pairing_11_im", pairing[0, 0].imag],
        ["pairing_12_re", pairing[0, 1].real], ["pairing_12_im", pairing[0, 1].imag],
        ["pairing_21_re", pairing[1, 0].real], ["pairing_21_im", pairing[1, 0].imag],
        ["pairing_22_re", pairing[1, 1].real], ["pairing_22_im", pairing[1, 1].imag],
    ]
    return (["metric", "value"], rows,
            {"unitarity_drift": drift, "group_law_deviation": group_dev,
             "params": p})


def run_kg(seed: int, params: Mapping):
    schema = {
        "m": (float, 1.0), "t": (float, 0.5),
        "domain": (float, 128.0), "n_grid": (int, 1 << 11),
        "probes": (_floats, [round(-3.0 + 0.4 * i, 10) for i in range(16)]),
        "n_paths": (int, 200_000),
    }
    p = _validate(params, schema)
    prob = relativistic.KgProblem(m=p["m"], t=p["t"], f=_gaussian,
                                  probes=tuple(p["probes"]))
    grid_x = relativistic.kg_grid(p["domain"], p["n_grid"])
    spec = relativistic.kg_semigroup_spectral(prob, p["domain"], p["n_grid"])
    rows = []
    for i, x in enumerate(p["probes"]):
        # snap to the nearest grid node so MC and spectral share a coordinate
        j = int(np.argmin(np.abs(grid_x - x)))
        xj = float(grid_x[j])
        stat = relativistic.kg_semigroup_mc(prob, xj, p["n_paths"],
                                            RngStream(seed, (i + 1) << 20))
        rows.append([xj, stat.mean, stat.std_error, stat.n, float(spec[j])])
    worst = max(abs(r[1] - r[4]) for r in rows)
    return (["x", "estimate", "std_error", "n", "spectral_reference"], rows,
            {"max_abs_error": worst, "params": p})


def run_nogo_fresnel(seed: int, params: Mapping):
    schema = {"r_min": (float, 5.0), "r_max": (float, 500.0),
              "n_values": (int, 20)}
    p = _validate(params, schema)
    rs = np.geomspace(p["r_min"], p["r_max"], p["n_values"])
    rows = []
    for r in rs:
        val = fresnel_truncated(float(r))
        dev = abs(val - FRESNEL_LIMIT)
        envelope = (1.0 / r) * 1.01
        rows.append([float(r), val.real, val.imag, dev, envelope,
                     dev <= envelope])
    all_ok = all(r[5] for r in rows)
    return (["R", "re", "im", "abs_deviation", "envelope", "within_envelope"],
            rows, {"all_within_envelope": all_ok,
                   "limit_re": FRESNEL_LIMIT.real, "params": p})


def run_nogo_tv(seed: int, params: Mapping):
    schema = {"eps_levels": (int, 11), "depth": (int, 20),
              "interval_end": (float, 20.0)}
    p = _validate(params, schema)
    rows = []
    eps_vals = [2.0 ** -j for j in range(p["eps_levels"])]
    tvs = [tv_regularized(e) for e in eps_vals]
    for e, tv in zip(eps_vals, tvs):
        rows.append(["regularized", e, tv])
    a = np.vstack([np.log(eps_vals), np.ones(len(eps_vals))]).T
    slope = float(np.linalg.lstsq(a, np.log(tvs), rcond=None)[0][0])
    phase = PhaseFunctional(fn=lambda x: x * x, label="x^2")
    sums = tv_refinement(phase, (0.0, p["interval_end"]), p["depth"])
    for j, s in enumerate(sums):
        rows.append(["refinement", float(j), float(s)])
    rows.append(["slope", float("nan"), slope])
    return (["kind", "key", "value"], rows,
            {"slope": slope, "refinement_terminal": float(sums[-1]),
             "params": p})


def run_nogo_bochner(seed: int, params: Mapping):
    schema = {"n_nodes": (int, 8), "node_max": (float, 3.0)}
    p = _validate(params, schema)
    nodes = np.linspace(0.0, p["node_max"], p["n_nodes"])
    cases = [
        ("gaussian", lambda xi: np.exp(-np.asarray(xi) ** 2 / 2.0)),
        ("fresnel_phase", lambda xi: np.exp(1j * np.asarray(xi) ** 2)),
        ("constant_one", lambda xi: np.ones_like(np.asarray(xi, dtype=float))),
    ]
    rows = []
    summary = {}
    for label, gamma in cases:
        rep = bochner_gram_min_eig(gamma, nodes)
        rows.append([label, rep.min_eigenvalue, rep.matrix_dim, rep.residual])
        summary[label] = rep.min_eigenvalue
    summary["params"] = p
    return (["gamma", "min_eigenvalue", "dim", "residual"], rows, summary)


def run_nogo_kernel_fit(seed: int, params: Mapping):
    schema = {"t": (float, 0.5), "m": (float, 1.0),
              "dirac_grids": (_ints, [16, 128, 256, 512]),
              "heat_grids": (_ints, [16, 128, 256, 512])}
    p = _validate(params, schema)
    rows = []
    heat_max = 0.0
    dirac_fine_min = float("inf")
    for g in p["heat_grids"]:
        rep = nnls_kernel_fit("heat", p["t"], g)
        heat_max = max(heat_max, rep.residual_rel)
        rows.append(["heat", g, rep.residual_rel, rep.kernel_min,
                     rep.converged, rep.iterations])
    for g in p["dirac_grids"]:
        rep = nnls_kernel_fit("dirac-component", p["t"], g, m=p["m"])
        if g >= 128:
            dirac_fine_min = min(dirac_fine_min, rep.residual_rel)
        rows.append(["dirac-component", g, rep.residual_rel, rep.kernel_min,
                     rep.converged, rep.iterations])
    return (["propagator", "grid_n", "residual_rel", "kernel_min",
             "converged", "iterations"], rows,
            {"heat_max_residual": heat_max,
             "dirac_min_residual_fine": dirac_fine_min, "params": p})


def run_nogo_levy(seed: int, params: Mapping):
    schema = {"n_seeds": (int, 32), "n_grid": (int, 1 << 20)}
    p = _validate(params, schema)
    ratios, slopes = modulus_study(seed, p["n_seeds"], p["n_grid"])
    rows = [[i, float(r), float(s)]
            for i, (r, s) in enumerate(zip(ratios, slopes))]
    rows.append([-1, float(ratios.mean()), float(slopes.mean())])
    return (["seed_index", "ratio", "quotient_slope"], rows,
            {"mean_ratio": float(ratios.mean()),
             "mean_slope": float(slopes.mean()), "params": p})


RUNNERS: dict[str, Callable] = {
    "heat": run_heat,
    "telegrapher": run_telegrapher,
    "dirac": run_dirac,
    "kg": run_kg,
    "nogo-fresnel": run_nogo_fresnel,
    "nogo-tv": run_nogo_tv,
    "nogo-bochner": run_nogo_bochner,
    "nogo-kernel-fit": run_nogo_kernel_fit,
    "nogo-levy": run_nogo_levy,
}


def execute(config: RunConfig):
    """Run one experiment; returns (header, rows, record)."""
    if config.experiment not in RUNNERS:
        raise ConfigError(f"unknown experiment {config.experiment!r}")
    start = time.time()
    header, rows, summary = RUNNERS[config.experiment](config.seed,
                                                      config.params)
    params = summary.pop("params", dict(config.params))
    record = {
        "schema": SCHEMA_VERSION,
        "experiment": config.experiment,
        "seed": config.seed,
        "params": params,
        "summary": summary,
        "wall_time_s": time.time() - start,
        "created_unix": time.time(),
    }
    return header, rows, record
