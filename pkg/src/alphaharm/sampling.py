"""Random boundary data, random bounded functions and sample-point sets."""
from __future__ import annotations

import numpy as np
from scipy.stats import qmc

from .dirichlet import AlphaHarmonicFunction, BoundaryData, solve_dirichlet


def random_in_disk(rng, n, radius=1.0):
    """``n`` points uniform in the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def disk_points(n: int = 200, radius: float = 0.95):
    """Deterministic low-discrepancy points in a disk (Halton, square-root radius map)."""
    u = qmc.Halton(d=2, scramble=False).random(n)
    return radius * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])


def random_boundary(rng, degree: int, decay: float = 0.0) -> BoundaryData:
    """Complex Gaussian Fourier coefficients of degree ``<= degree``, boundary sup 1."""
    n = np.arange(-degree, degree + 1)
    c = (rng.normal(size=n.size) + 1j * rng.normal(size=n.size)) / (1.0 + np.abs(n)) ** decay
    b = BoundaryData(c)
    return BoundaryData(c / b.sup_norm_M)


def random_unit_function(alpha, degree: int, rng) -> AlphaHarmonicFunction:
    """Random alpha-harmonic function with sampled sup over the closed disk at most 1."""
    f = solve_dirichlet(alpha, random_boundary(rng, degree))
    # declared_sup_M already carries the sampling safety factor, so the sup is < 1
    return AlphaHarmonicFunction(alpha, f.coefficients / f.declared_sup_M, 1.0)
