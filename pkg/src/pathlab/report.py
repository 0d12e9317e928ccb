"""Aggregate no-go diagnostics into a single verdict report.

The report consumes run records produced by the obstruction experiments
and checks each numerical diagnostic against its acceptance window.  The
Grassmann route is listed explicitly as out of numerical scope: it has
no commutative sample space, so there is nothing to simulate.
"""

from __future__ import annotations

import glob
from dataclasses import dataclass

from ._io import read_run_record

# experiment name -> report category
REQUIRED = {
    "nogo-tv": "oscillatory_tv",
    "nogo-bochner": "positive_definiteness",
    "nogo-kernel-fit": "distributional_kernel",
    "nogo-levy": "path_geometry",
}

GRASSMANN_NOTE = "out of numerical scope"


@dataclass(frozen=True)
class Diagnostic:
    category: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class NoGoReport:
    diagnostics: tuple[Diagnostic, ...]
    obstructions: tuple[tuple[str, str], ...]
    grassmann_note: str
    complete: bool

    @property
    def all_passed(self) -> bool:
        return self.complete and all(d.passed for d in self.diagnostics)

    def lines(self) -> list[str]:
        out = ["no-go obstruction report", "=" * 40]
        for d in self.diagnostics:
            tag = "PASS" if d.passed else "FAIL"
            out.append(f"[{tag}] {d.category}: {d.detail}")
        out.append("-" * 40)
        for name, verdict in self.obstructions:
            out.append(f"obstruction {name}: {verdict}")
        out.append(f"obstruction grassmann: {self.grassmann_note}")
        return out


def _check_tv(summary: dict) -> Diagnostic:
    slope = float(summary["slope"])
    ok = abs(slope - (-1.0)) <= 1e-6
    return Diagnostic("oscillatory_tv", ok,
                      f"regularized mass slope {slope:.9f} (want -1 +/- 1e-6)")


def _check_bochner(summary: dict) -> Diagnostic:
    lam = float(summary["fresnel_phase"])
    ok = lam <= -0.01
    return Diagnostic("positive_definiteness", ok,
                      f"fresnel phase Gram min eigenvalue {lam:.6f} (want <= -0.01)")


def _check_kernel(summary: dict) -> Diagnostic:
    heat = float(summary["heat_max_residual"])
    dirac = float(summary["dirac_min_residual_fine"])
    ok = heat <= 1e-3 and dirac >= 0.05
    return Diagnostic(
        "distributional_kernel", ok,
        f"heat residual {heat:.3e} (want <= 1e-3), "
        f"dirac residual floor {dirac:.4f} (want >= 0.05)")


def _check_levy(summary: dict) -> Diagnostic:
    ratio = float(summary["mean_ratio"])
    slope = float(summary["mean_slope"])
    ok = 0.8 <= ratio <= 1.15 and 0.4 <= slope <= 0.6
    return Diagnostic(
        "path_geometry", ok,
        f"modulus ratio {ratio:.4f} (want [0.8, 1.15]), "
        f"quotient slope {slope:.4f} (want [0.4, 0.6])")

_CHECKS = {
    "nogo-tv": _check_tv,
    "nogo-bochner": _check_bochner,
    "nogo-kernel-fit": _check_kernel,
    "nogo-levy": _check_levy,
}


def build_report(record_paths: list[str]) -> NoGoReport:
    """Build the verdict from run-record paths (latest record per category)."""
    latest: dict[str, dict] = {}
    for path in record_paths:
        rec = read_run_record(path)
        exp = rec.get("experiment")
        if exp not in REQUIRED:
            continue
        prev = latest.get(exp)
        if prev is None or rec.get("created_unix", 0) > prev.get("created_unix", 0):
            latest[exp] = rec
    diags = []
    complete = True
    for exp in REQUIRED:
        if exp in latest:
            diags.append(_CHECKS[exp](latest[exp]["summary"]))
        else:
            complete = False
            diags.append(Diagnostic(REQUIRED[exp], False,
                                    f"no run record for {exp}"))
    by_cat = {d.category: d.passed for d in diags}
    # Minkowski-signature obstruction needs both the oscillatory mass
    # blow-up and the positive-definiteness failure.
    obstructions = (
        ("minkowski_measure", _verdict(by_cat["oscillatory_tv"]
                                       and by_cat["positive_definiteness"])),
        ("nonnegative_kernel", _verdict(by_cat["distributional_kernel"])),
        ("path_regularity", _verdict(by_cat["path_geometry"])),
    )
    return NoGoReport(diagnostics=tuple(diags), obstructions=obstructions,
                      grassmann_note=GRASSMANN_NOTE, complete=complete)


def collect_records(pattern: str) -> list[str]:
    return sorted(glob.glob(pattern))


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"
