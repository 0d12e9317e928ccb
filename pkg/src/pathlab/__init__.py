"""Stochastic path representations for linear evolution equations.

Positive probabilistic representations (Brownian functionals, velocity
jump processes, subordinated Brownian motion) are implemented next to
deterministic references, and the obstruction diagnostics quantify why
the same construction cannot extend to the Dirac evolution.
"""

from .dirac import DiracParams, SpinorGrid, dirac_evolve, kernel_pairing
from .errors import NumericFailure, ResolutionError, UnsupportedProblem
from .feynman_kac import ParabolicProblem, heat_reference, solve_parabolic_mc
from .paths import (PathSample, SubordinatorSample, gaussian_path,
                    poisson_flip_times, sample_subordinator)
from .reduce import SummaryStat, chunked_mc, mc_reduce
from .relativistic import KgProblem, kg_semigroup_mc, kg_semigroup_spectral
from .rng import RngStream
from .telegrapher import (KineticState, TelegrapherConfig, solve_kinetic_fd,
                          solve_telegrapher_mc)

__version__ = "0.1.0"

__all__ = [
    "DiracParams", "SpinorGrid", "dirac_evolve", "kernel_pairing",
    "NumericFailure", "ResolutionError", "UnsupportedProblem",
    "ParabolicProblem", "heat_reference", "solve_parabolic_mc",
    "PathSample", "SubordinatorSample", "gaussian_path",
    "poisson_flip_times", "sample_subordinator",
    "SummaryStat", "chunked_mc", "mc_reduce",
    "KgProblem", "kg_semigroup_mc", "kg_semigroup_spectral",
    "RngStream",
    "KineticState", "TelegrapherConfig", "solve_kinetic_fd",
    "solve_telegrapher_mc",
    "__version__",
]
