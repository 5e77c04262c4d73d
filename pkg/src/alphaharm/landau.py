"""Landau-type univalence radius for bounded, normalized alpha-harmonic functions.

With ``A = beta c_alpha / (M (alpha + 2))`` the radius ``rho0`` is the unique
zero in (0, 1) of

    phi(x) = A + (M + 5) x (x - 2) / (1 - x)**2,

found by bisection.  ``x (2 - x) = 1 - (1 - x)**2`` also gives it in closed form,
``rho0 = 1 - sqrt((M + 5) / (A + M + 5))``, which is only used as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .analysis import wirtinger, wirtinger_arrays
from .dirichlet import (AlphaHarmonicFunction, NormalizationFlags, check_coefficient_bounds,
                        evaluate_series, normalization_flags)
from .errors import DomainError, InvariantError, PreconditionError
from .sampling import random_in_disk
from .special import AlphaParam, c_alpha

BRACKET_EPS = 1e-9
#: bisection and closed form must agree this closely or solve_rho0 raises
ROOT_AGREEMENT = 1e-12


@dataclass(frozen=True)
class LandauInputs:
    """``(alpha, M, beta)``; ``relaxed`` admits ``-1 < alpha < 0`` for diagnostics."""

    alpha: float
    M: float
    beta: float
    relaxed: bool = False

    def __post_init__(self):
        alpha = AlphaParam(self.alpha)
        if alpha < 0.0 and not self.relaxed:
            raise DomainError(f"the Landau radius needs alpha >= 0, got {float(alpha)}")
        if not float(self.M) > 0.0:
            raise DomainError(f"M must be positive, got {self.M!r}")
        if not float(self.beta) > 0.0:
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "M", float(self.M))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def A(self) -> float:
        """Lower bound ``beta c_alpha / (M (alpha+2))`` for ``l(Df(0))``."""
        return self.beta * c_alpha(self.alpha) / (self.M * (self.alpha + 2.0))

    @classmethod
    def from_function(cls, f: AlphaHarmonicFunction, relaxed: bool = False):
        """``beta = |J_f(0)| = |Df(0)| l(Df(0))`` and ``M`` from the declared bound."""
        beta = wirtinger(f, 0.0).jacobian_abs
        return cls(f.alpha, f.declared_sup_M, beta, relaxed)


@dataclass(frozen=True)
class LandauResult:
    inputs: LandauInputs
    rho0: float
    R0_lower: float
    phi_at_rho0: float
    rho0_closed_form: float

    def as_dict(self):
        return {"alpha": float(self.inputs.alpha), "M": self.inputs.M, "beta": self.inputs.beta,
                "rho0": self.rho0, "R0_lower": self.R0_lower, "phi_residual": self.phi_at_rho0}


def phi(x: float, inputs: LandauInputs) -> float:
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise DomainError(f"phi is defined on [0, 1), got {x!r}")
    return inputs.A + (inputs.M + 5.0) * x * (x - 2.0) / (1.0 - x) ** 2


def phi_prime(x: float, inputs: LandauInputs) -> float:
    return -2.0 * (inputs.M + 5.0) / (1.0 - float(x)) ** 3


def rho0_closed_form(inputs: LandauInputs) -> float:
    a, m5 = inputs.A, inputs.M + 5.0
    # 1 - sqrt(m5/(a+m5)) without cancellation for small a
    return (a / (a + m5)) / (1.0 + math.sqrt(m5 / (a + m5)))


def covering_radius(rho0: float, M: float) -> float:
    return (M + 5.0) * (rho0 / (1.0 - rho0)) ** 2


def solve_rho0(inputs: LandauInputs) -> LandauResult:
    """Root of ``phi`` on ``[0, 1 - 1e-9]`` and the covered-disk radius bound."""
    hi = 1.0 - BRACKET_EPS
    if phi(hi, inputs) >= 0.0:
        raise DomainError("A is so large that the root lies above 1 - 1e-9")
    root = optimize.bisect(phi, 0.0, hi, args=(inputs,), xtol=1e-300,
                           rtol=4.0 * np.finfo(float).eps, maxiter=400)
    closed = rho0_closed_form(inputs)
    if abs(root - closed) > ROOT_AGREEMENT:
        raise InvariantError(f"bisection root {root!r} and closed form {closed!r} disagree")
    return LandauResult(inputs, float(root), covering_radius(root, inputs.M),
                        phi(root, inputs), closed)


# ------------------------------------------------------------- checks ---


@dataclass(frozen=True)
class GrowthRecord:
    z: complex
    quantity: float
    bound: float

    @property
    def passed(self):
        return bool(self.quantity <= self.bound * (1.0 + 1e-12))

    def as_dict(self):
        return {"z": [self.z.real, self.z.imag], "quantity": self.quantity, "bound": self.bound,
                "ratio": self.quantity / self.bound if self.bound else 0.0, "pass": self.passed}


@dataclass(frozen=True)
class GrowthReport:
    M: float
    records: tuple

    @property
    def violations(self):
        return [r for r in self.records if not r.passed]

    @property
    def passed(self):
        return not self.violations

    def to_records(self):
        return [r.as_dict() for r in self.records]


def growth_bound(rho, M):
    rho = np.asarray(rho, dtype=float)
    return (M + 5.0) * rho * (2.0 - rho) / (1.0 - rho) ** 2


def growth_bound_check(f: AlphaHarmonicFunction, flags: NormalizationFlags = None,
                       samples=(), M=None) -> GrowthReport:
    """Check ``|f_z(z)-f_z(0)| + |f_zbar(z)-f_zbar(0)| <= (M+5)|z|(2-|z|)/(1-|z|)**2``.

    Only proved under the normalization ``c_{-1}=0, c_{-2}=1, |c_{-k}|<=k-1`` and
    ``alpha >= 0``; anything else is a :class:`PreconditionError`.
    """
    flags = normalization_flags(f) if flags is None else flags
    if not flags.normalized:
        raise PreconditionError("growth bound requires c_{-1}=0, c_{-2}=1, |c_{-k}|<=k-1")
    if f.alpha < 0.0:
        raise PreconditionError("growth bound requires alpha >= 0")
    M = f.declared_sup_M if M is None else float(M)
    z = np.atleast_1d(np.asarray(samples, dtype=np.complex128))
    fz, fzb = wirtinger_arrays(f, np.concatenate([[0j], z]))
    lhs = np.abs(fz[1:] - fz[0]) + np.abs(fzb[1:] - fzb[0])
    rhs = growth_bound(np.abs(z), M)
    return GrowthReport(M, tuple(GrowthRecord(complex(a), float(b), float(c))
                                 for a, b, c in zip(z, lhs, rhs)))


@dataclass(frozen=True)
class ProbeReport:
    rho: float
    rho0: float
    trials: int
    separation_bound: float
    min_separation: float
    separation_violations: int
    injectivity_violations: int
    covering_bound: float
    min_covering: float
    covering_violations: int

    @property
    def passed(self) -> bool:
        return not (self.separation_violations or self.injectivity_violations
                    or self.covering_violations)

    def as_dict(self):
        doc = dict(self.__dict__)
        doc["pass"] = self.passed
        return doc


def univalence_probe(f: AlphaHarmonicFunction, rho: float, inputs: LandauInputs = None,
                     trials: int = 10_000, seed: int = 0, circle_points: int = 720) -> ProbeReport:
    """Sample pairs in the disk of radius ``rho`` looking for a failure of univalence.

    Every pair must satisfy ``|f(z2)-f(z1)| >= [A - (M+5) rho(2-rho)/(1-rho)**2] |z2-z1|``
    and every point of the circle ``|zeta| = rho`` must satisfy
    ``|f(zeta) - f(0)| >= A rho - (M+5) rho**2/(1-rho)``.
    """
    inputs = LandauInputs.from_function(f) if inputs is None else inputs
    result = solve_rho0(inputs)
    rho = float(rho)
    if not 0.0 < rho <= result.rho0 * (1.0 + 1e-12):
        raise PreconditionError(f"probe radius {rho} must lie in (0, rho0 = {result.rho0}]")
    A, m5 = inputs.A, inputs.M + 5.0
    rng = np.random.default_rng(seed)
    z1 = random_in_disk(rng, trials, rho)
    z2 = random_in_disk(rng, trials, rho)
    keep = z1 != z2
    z1, z2 = z1[keep], z2[keep]
    vals = evaluate_series(f, np.concatenate([z1, z2]))
    f1, f2 = vals[:z1.size], vals[z1.size:]
    sep = np.abs(f2 - f1) / np.abs(z2 - z1)
    sep_bound = A - m5 * rho * (2.0 - rho) / (1.0 - rho) ** 2
    # 1e-12 relative slack for rounding in the differences
    sep_viol = int(np.count_nonzero(sep < sep_bound - 1e-12 * max(1.0, abs(sep_bound))))
    inj_viol = int(np.count_nonzero(f1 == f2))

    zeta = rho * np.exp(2j * np.pi * np.arange(circle_points) / circle_points)
    cover = np.abs(evaluate_series(f, zeta) - evaluate_series(f, 0.0))
    cover_bound = A * rho - m5 * rho ** 2 / (1.0 - rho)
    cover_viol = int(np.count_nonzero(cover < cover_bound - 1e-12 * max(1.0, abs(cover_bound))))
    return ProbeReport(rho, result.rho0, int(z1.size), float(sep_bound), float(sep.min()),
                       sep_viol, inj_viol, float(cover_bound), float(cover.min()), cover_viol)


def random_normalized_function(alpha, degree: int, rng, analytic_scale: float = 0.5,
                        anti_scale: float = 0.5, max_tries: int = 100) -> AlphaHarmonicFunction:
    """Random finite alpha-harmonic ``f`` meeting the Landau-theorem hypotheses.

    ``f(0) = 0``, ``|c_1| = 1``, ``c_{-1} = 0``, ``c_{-2} = 1`` and
    ``|c_{-k}| <= k - 1``; ``M`` is the sampled closed-disk sup.  Draws whose
    coefficient bounds fail against that ``M`` are rejected.
    """
    alpha = AlphaParam(alpha)
    if degree < 2:
        raise DomainError("degree must be at least 2 to carry c_{-2} = 1")
    for _ in range(max_tries):
        c = {1: np.exp(2j * np.pi * rng.uniform()), -2: 1.0}
        for k in range(2, degree + 1):
            c[k] = analytic_scale * complex(random_in_disk(rng, 1)[0])
        for k in range(3, degree + 1):
            c[-k] = anti_scale * (k - 1) * complex(random_in_disk(rng, 1)[0])
        f = AlphaHarmonicFunction.from_mapping(alpha, c)
        if check_coefficient_bounds(f).passed:
            return f
    raise RuntimeError("could not draw a function satisfying the coefficient bounds")
