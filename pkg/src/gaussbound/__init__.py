"""Gaussian RBF interpolation on equally spaced simplex centers, with the
improved exponential-type error bound and the classical bound it replaces."""

from .constants import (
    bound_value,
    compare_bounds,
    gamma_sequence,
    legacy_constants,
    theorem_constants,
)
from .errors import AdmissibilityError, ConditioningError, ConfigError, GeometryError
from .harness import ExperimentConfig, plan_experiment, run_config, run_experiment
from .interpolation import (
    GaussianKernel,
    KernelCombination,
    fit_interpolant,
    native_norm,
)
from .simplex import build_simplex, equally_spaced_grid, regular_simplex, reproduction_weights

__version__ = "0.1.0"
