"""The Poisson-type kernel ``P_alpha``, its Wirtinger derivatives and integral means.

``P_alpha(z) = (1 - |z|**2)**(alpha+1) / ((1 - z) * (1 - conj(z))**(alpha+1))``

The non-integer power uses the principal branch; its base ``1 - conj(z e^{-i theta})``
has positive real part on the open disk, so that branch is continuous there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError
from .jacobian import WirtingerPair
from .special import AlphaParam, c_alpha

#: successive trapezoid levels must agree to this before integral_means stops
MEANS_TOL = 1e-11
MAX_MEANS_NODES = 1 << 20
#: radii above this are refused by integral_means (kernel spike vs node budget)
R_MAX = 0.999


@dataclass(frozen=True)
class KernelPoint:
    alpha: float
    z: complex
    theta: float
    value: complex


@dataclass(frozen=True)
class IntegralMeans:
    alpha: float
    r: float
    value: float
    quadrature_nodes: int


def _check_disk(z, what="z"):
    z = np.asarray(z, dtype=np.complex128)
    if np.any(~(np.abs(z) < 1.0)):
        raise DomainError(f"{what} must lie in the open unit disk")
    return z


def _cpow(base, p):
    return np.exp(p * np.log(base))


def poisson_kernel(alpha, z, theta=0.0):
    """``P_alpha(z e^{-i theta})``; broadcasts over array ``z`` and ``theta``.

    >>> poisson_kernel(0.0, 0.5)
    (3.0000000000000004+0j)
    """
    alpha = AlphaParam(alpha)
    z = _check_disk(z)
    zeta = z * np.exp(-1j * np.asarray(theta, dtype=float))
    r2 = zeta.real ** 2 + zeta.imag ** 2
    om = 1.0 - zeta
    out = (1.0 - r2) ** (alpha + 1.0) / (om * _cpow(np.conj(om), alpha + 1.0))
    return out[()] if out.ndim == 0 else out


def kernel_point(alpha, z, theta=0.0) -> KernelPoint:
    return KernelPoint(float(alpha), complex(z), float(theta), complex(poisson_kernel(alpha, z, theta)))


def kernel_modulus(alpha, z, theta=0.0):
    """``K_alpha(z e^{-i theta}) = c_alpha |P_alpha(z e^{-i theta})|``."""
    alpha = AlphaParam(alpha)
    z = _check_disk(z)
    zeta = z * np.exp(-1j * np.asarray(theta, dtype=float))
    r2 = zeta.real ** 2 + zeta.imag ** 2
    out = c_alpha(alpha) * (1.0 - r2) ** (alpha + 1.0) / np.abs(1.0 - zeta) ** (alpha + 2.0)
    return out[()] if out.ndim == 0 else out


def kernel_wirtinger(alpha, z, theta=0.0) -> WirtingerPair:
    """Wirtinger derivatives in ``z`` of ``P_alpha(z e^{-i theta})`` (closed form)."""
    alpha = AlphaParam(alpha)
    z = complex(_check_disk(z))
    theta = float(theta)
    e = complex(math.cos(theta), -math.sin(theta))  # e^{-i theta}
    zb = z.conjugate()
    a = 1.0 - abs(z) ** 2
    one_z = 1.0 - z * e
    one_zb = one_z.conjugate()  # 1 - conj(z) e^{i theta}
    lead = a ** alpha
    fz = lead * (e * a - (alpha + 1.0) * zb * one_z) / (one_z ** 2 * _cpow(one_zb, alpha + 1.0))
    fzbar = (alpha + 1.0) * lead * e.conjugate() / _cpow(one_zb, alpha + 2.0)
    return WirtingerPair(complex(fz), complex(fzbar))


def trapezoid_theta(n):
    return 2.0 * np.pi * np.arange(n) / n


def integral_means(alpha, r, nodes: int = 64) -> IntegralMeans:
    """Circular mean of ``K_alpha(r e^{i theta})`` by node-doubling trapezoid.

    Doubling stops once two successive levels differ by less than ``MEANS_TOL``.
    """
    alpha = AlphaParam(alpha)
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r!r}")
    if r > R_MAX:
        raise DomainError(f"radius {r!r} exceeds {R_MAX}; evaluate the limit by extrapolation")
    if int(nodes) < 16:
        raise DomainError("integral_means needs at least 16 nodes")
    n = int(nodes)
    scale = c_alpha(alpha)
    value = _kernels.modulus_mean(float(alpha), r, trapezoid_theta(n))
    while True:
        if n >= MAX_MEANS_NODES:
            break
        # midpoints of the current grid complete the next level
        odd = _kernels.modulus_mean(float(alpha), r, trapezoid_theta(n) + np.pi / n)
        refined = 0.5 * (value + odd)
        n *= 2
        converged = abs(refined - value) * scale < MEANS_TOL
        value = refined
        if converged:
            break
    return IntegralMeans(float(alpha), r, float(scale * value), n)
