"""Wirtinger calculus on alpha-harmonic functions and the Schwarz-Pick family of checks.

Derivatives always come from the coefficient expansion, never from differencing
a quadrature; finite differences appear only in the tests as oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dirichlet import (AlphaHarmonicFunction, BoundaryData, evaluate_series,
                        project_boundary, series_with_derivatives)
from .errors import DomainError, PreconditionError
from .jacobian import WirtingerPair, sampled_norms
from .special import c_alpha

__all__ = [
    "BoundReport", "CheckRecord", "WirtingerPair", "alpha_harmonicity_residual",
    "step_boundary", "hyperbolic_distance", "lipschitz_check", "sampled_norms",
    "schwarz_pick_check", "wirtinger", "wirtinger_arrays",
]

#: relative slack on bound checks, for rounding when a bound is attained
CHECK_RTOL = 1e-12


@dataclass(frozen=True)
class CheckRecord:
    z: complex
    quantity: float
    bound: float
    z2: complex = None

    @property
    def ratio(self) -> float:
        if self.bound == 0.0:
            return 0.0 if self.quantity == 0.0 else math.inf
        return self.quantity / self.bound

    @property
    def passed(self) -> bool:
        return bool(self.quantity <= self.bound * (1.0 + CHECK_RTOL))

    def as_dict(self):
        doc = {"z": [self.z.real, self.z.imag], "quantity": self.quantity,
               "bound": self.bound, "ratio": self.ratio, "pass": self.passed}
        if self.z2 is not None:
            doc["z2"] = [self.z2.real, self.z2.imag]
        return doc


@dataclass(frozen=True)
class BoundReport:
    """Per-sample outcomes of one inequality, kept in sample order."""

    name: str
    records: tuple = field(default_factory=tuple)

    @property
    def violations(self):
        return [r for r in self.records if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def worst_ratio(self) -> float:
        return max((r.ratio for r in self.records), default=0.0)

    def to_records(self):
        return [r.as_dict() for r in self.records]


def wirtinger_arrays(f: AlphaHarmonicFunction, z):
    """``(f_z, f_zbar)`` as arrays over the points ``z``."""
    _, fz, fzb = series_with_derivatives(f, z)
    return fz, fzb


def wirtinger(f: AlphaHarmonicFunction, z) -> WirtingerPair:
    """Wirtinger derivatives of ``f`` at a single point of the open disk."""
    fz, fzb = wirtinger_arrays(f, complex(z))
    return WirtingerPair(complex(fz), complex(fzb))


def _points(samples):
    return np.atleast_1d(np.asarray(samples, dtype=np.complex128))


def schwarz_pick_check(f: AlphaHarmonicFunction, samples, M=None, form: int = 1) -> BoundReport:
    """Test ``|Df(z)|`` against the Schwarz-Pick type bound at each sample point.

    ``form=1`` compares ``|Df(z)| (1 - |z|)`` with ``M (alpha+2)/c_alpha``;
    ``form=2`` compares ``|Df(z)| (1 - |z|**2)`` with twice that.  A violation
    means ``M`` is not a sup bound for ``f`` on the closed disk.
    """
    M = f.declared_sup_M if M is None else float(M)
    z = _points(samples)
    fz, fzb = wirtinger_arrays(f, z)
    norm = np.abs(fz) + np.abs(fzb)
    const = M * (f.alpha + 2.0) / c_alpha(f.alpha)
    if form == 1:
        q, bound = norm * (1.0 - np.abs(z)), const
    elif form == 2:
        q, bound = norm * (1.0 - np.abs(z) ** 2), 2.0 * const
    else:
        raise ValueError("form must be 1 or 2")
    recs = tuple(CheckRecord(complex(a), float(b), float(bound)) for a, b in zip(z, q))
    return BoundReport(f"schwarz-pick-{form}", recs)


def hyperbolic_distance(z1, z2) -> float:
    """Hyperbolic distance in the unit disk (curvature -1, density 2/(1-|z|^2))."""
    z1, z2 = complex(z1), complex(z2)
    if not (abs(z1) < 1.0 and abs(z2) < 1.0):
        raise DomainError("both points must lie in the open unit disk")
    num = abs(z1 - z2)
    den = abs(1.0 - z1 * z2.conjugate())
    # log((den + num)/(den - num)) written without the cancellation in den - num
    return 2.0 * math.atanh(num / den)


def lipschitz_check(f: AlphaHarmonicFunction, pairs) -> BoundReport:
    """``|f(z1) - f(z2)| <= (alpha+2)/c_alpha * d_h(z1, z2)`` for functions into the disk."""
    if f.declared_sup_M > 1.0:
        raise PreconditionError(
            f"Lipschitz bound needs f to map into the unit disk (declared M = {f.declared_sup_M})")
    pairs = np.asarray(pairs, dtype=np.complex128).reshape(-1, 2)
    vals = np.asarray(evaluate_series(f, pairs), dtype=np.complex128).reshape(-1, 2)
    const = (f.alpha + 2.0) / c_alpha(f.alpha)
    recs = []
    for (a, b), (fa, fb) in zip(pairs, vals):
        recs.append(CheckRecord(complex(a), float(abs(fa - fb)),
                                const * hyperbolic_distance(a, b), complex(b)))
    return BoundReport("lipschitz", tuple(recs))


def alpha_harmonicity_residual(f: AlphaHarmonicFunction, z, step: float = 1e-4) -> float:
    """``|d/dz [(1-|w|^2)^{-alpha} f_zbar(w)]|`` at ``z`` by centred differences.

    The bracket is computed analytically on the stencil ``z +- step, z +- 2 step``
    (and the same along the imaginary axis); the fourth-order difference leaves an
    O(step^4) truncation error, so alpha-harmonic functions give nearly zero.
    """
    z = complex(z)
    step = float(step)
    if not step > 0.0:
        raise DomainError("step must be positive")
    if not abs(z) + 2.0 * step < 1.0:
        raise DomainError("finite-difference stencil leaves the disk")
    offsets = step * np.array([1.0, -1.0, 2.0, -2.0])
    stencil = z + np.concatenate([offsets, 1j * offsets])
    _, fzb = wirtinger_arrays(f, stencil)
    g = (1.0 - np.abs(stencil) ** 2) ** (-f.alpha) * fzb
    weights = np.array([8.0, -8.0, -1.0, 1.0]) / (12.0 * step)
    gx = weights @ g[:4]
    gy = weights @ g[4:]
    return float(abs(0.5 * (gx - 1j * gy)))


def step_boundary(degree: int = 64, samples: int = 4096, M=None) -> BoundaryData:
    """Fourier projection of the boundary values of ``(2/pi) arg((1+z)/(1-z))``.

    Those values are ``+1`` on the upper and ``-1`` on the lower half circle.  The
    truncated series overshoots near the jumps (Gibbs), so its sup exceeds 1.
    """
    def values(t):
        s = np.sin(t)
        return np.where(np.abs(s) < 1e-12, 0.0, np.sign(s))  # mean value at the jumps

    return project_boundary(values, degree, samples, M)
