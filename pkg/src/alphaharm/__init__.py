"""Numerics for alpha-harmonic functions on the unit disk."""
from .errors import AlphaHarmError, DomainError, InvariantError, PreconditionError
from .special import AlphaParam, beta, c_alpha, gamma, gamma_ratio, p_alpha_k, p_alpha_k_table
from .jacobian import WirtingerPair
from .kernel import integral_means, kernel_modulus, kernel_wirtinger, poisson_kernel
from .dirichlet import (AlphaHarmonicFunction, BoundaryData, check_coefficient_bounds,
                        evaluate_poisson, evaluate_series, normalization_flags, solve_dirichlet)
from .analysis import (alpha_harmonicity_residual, step_boundary, hyperbolic_distance,
                       lipschitz_check, schwarz_pick_check, wirtinger)
from .landau import LandauInputs, solve_rho0, univalence_probe

__version__ = "0.1.0"

__all__ = [
    "AlphaHarmError", "AlphaHarmonicFunction", "AlphaParam", "BoundaryData", "DomainError",
    "InvariantError", "LandauInputs", "PreconditionError", "WirtingerPair",
    "alpha_harmonicity_residual", "beta", "c_alpha", "check_coefficient_bounds",
    "step_boundary", "evaluate_poisson", "evaluate_series", "gamma", "gamma_ratio",
    "hyperbolic_distance", "integral_means", "kernel_modulus", "kernel_wirtinger",
    "lipschitz_check", "normalization_flags", "p_alpha_k", "p_alpha_k_table",
    "poisson_kernel", "schwarz_pick_check", "solve_dirichlet", "solve_rho0",
    "univalence_probe", "wirtinger",
]
