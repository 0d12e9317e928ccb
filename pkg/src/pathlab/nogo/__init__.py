"""Numerical witnesses for the obstructions to a Dirac path measure:
total-variation blow-up of oscillatory set functions, conditional
convergence of the Fresnel integral, failure of positive-definiteness,
nonexistence of nonnegative transition kernels, and the path-geometry
(modulus of continuity) diagnostics.
"""

from .oscillatory import (ChiBump, PhaseFunctional, fresnel_truncated,
                          tv_refinement, tv_regularized)
from .gram import GramReport, bochner_gram_min_eig
from .kernel_fit import (KernelFitReport, fit_kernel, nnls_kernel_fit,
                         test_library)
from .modulus import (levy_modulus_diagnostics, levy_modulus_ratio,
                      modulus_ratio_of_path)

__all__ = [
    "ChiBump", "PhaseFunctional", "fresnel_truncated", "tv_refinement",
    "tv_regularized", "GramReport", "bochner_gram_min_eig",
    "KernelFitReport", "fit_kernel", "nnls_kernel_fit", "test_library",
    "levy_modulus_diagnostics", "levy_modulus_ratio", "modulus_ratio_of_path",
]
