"""Gamma/Beta helpers, the constant c_alpha and the coefficient functions P_{alpha,k}.

``P_{alpha,k}(w) = int_0^1 t**(k-1) * (1 - t*w)**alpha dt`` multiplies the
anti-analytic part of an alpha-harmonic expansion.  It is evaluated by its
binomial power series for ``w <= switch`` and by Gauss-Legendre quadrature of
the incomplete-beta form above that (see :mod:`alphaharm._kernels`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError

#: switchover between the series and the quadrature branch of P_{alpha,k}
P_SWITCH = _kernels.DEFAULT_SWITCH


class AlphaParam(float):
    """A weight exponent, validated to satisfy ``alpha > -1``.

    Behaves as a plain float everywhere else.
    """

    def __new__(cls, value):
        value = float(value)
        if not value > -1.0 or not math.isfinite(value):
            raise DomainError(f"alpha must be a finite real > -1, got {value!r}")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"AlphaParam({float(self)!r})"


@dataclass(frozen=True)
class PAlphaKEvaluation:
    alpha: float
    k: int
    w: float
    value: float
    derivative: float


def gamma(s: float) -> float:
    s = float(s)
    if not s > 0.0:
        raise DomainError(f"gamma is only provided for s > 0, got {s!r}")
    return math.gamma(s)


def beta(p: float, q: float) -> float:
    p, q = float(p), float(q)
    if not (p > 0.0 and q > 0.0):
        raise DomainError(f"beta needs p, q > 0, got ({p!r}, {q!r})")
    if p + q < 170.0:
        return math.gamma(p) * math.gamma(q) / math.gamma(p + q)
    return math.exp(math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q))


def c_alpha(alpha: float) -> float:
    """``Gamma(alpha/2 + 1)**2 / Gamma(alpha + 1)``."""
    alpha = AlphaParam(alpha)
    return math.gamma(0.5 * alpha + 1.0) ** 2 / math.gamma(alpha + 1.0)


def gamma_ratio(k: int, alpha: float) -> float:
    """``Gamma(k + alpha + 1) / (Gamma(k) * Gamma(alpha + 1))``, i.e. ``1/B(k, alpha+1)``.

    Evaluated as the finite product ``k * prod_{j=1..k} (alpha + j)/j`` so it
    neither overflows nor loses digits to gamma-function cancellation.
    """
    alpha = AlphaParam(alpha)
    k = _check_k(k)
    out = float(k)
    for j in range(1, k + 1):
        out *= (alpha + j) / j
    return out


def gamma_ratios(kmax: int, alpha: float) -> np.ndarray:
    """:func:`gamma_ratio` for ``k = 1..kmax`` as an array."""
    alpha = AlphaParam(alpha)
    if kmax <= 0:
        return np.zeros(0)
    j = np.arange(1, kmax + 1, dtype=float)
    return j * np.cumprod((alpha + j) / j)


def _check_k(k):
    if int(k) != k or k < 1:
        raise DomainError(f"index k must be a positive integer, got {k!r}")
    return int(k)


def p_alpha_k_table(alpha: float, kmax: int, w, switch: float = None):
    """Values and w-derivatives of ``P_{alpha,k}(w)`` for ``k = 1..kmax``.

    ``w`` is a scalar or 1-D array in ``[0, 1)``; returns two arrays of shape
    ``(len(w), kmax)``.
    """
    alpha = AlphaParam(alpha)
    switch = P_SWITCH if switch is None else float(switch)
    if not 0.0 < switch < 1.0:
        raise DomainError(f"switch must lie in (0, 1), got {switch!r}")
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if w.ndim != 1:
        raise DomainError("w must be a scalar or a 1-D array")
    if np.any(~(w >= 0.0) | ~(w < 1.0)):
        raise DomainError("P_{alpha,k}(w) needs 0 <= w < 1")
    kmax = int(kmax)
    if kmax < 1:
        return np.zeros((w.shape[0], 0)), np.zeros((w.shape[0], 0))
    coef = _kernels.series_coefficients(float(alpha), switch)
    glx, glw, gloff = _kernels.gauss_legendre_levels()
    return _kernels.palpha_table(float(alpha), kmax, np.ascontiguousarray(w),
                                 switch, coef, glx, glw, gloff)


def p_alpha_k(alpha: float, k: int, w: float, switch: float = None) -> PAlphaKEvaluation:
    """Evaluate ``P_{alpha,k}(w)`` together with its derivative in ``w``.

    >>> p_alpha_k(1.0, 1, 0.5).value
    0.75
    """
    k = _check_k(k)
    vals, ders = p_alpha_k_table(alpha, k, float(w), switch)
    return PAlphaKEvaluation(float(alpha), k, float(w), float(vals[0, -1]), float(ders[0, -1]))
