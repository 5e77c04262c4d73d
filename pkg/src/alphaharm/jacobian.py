"""Wirtinger pairs and the two matrix functions of a real 2x2 Jacobian."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize


@dataclass(frozen=True)
class WirtingerPair:
    """``(f_z, f_zbar)`` at a point plus the derived operator quantities.

    ``norm_Df = |f_z| + |f_zbar|`` is the operator norm of the real Jacobian,
    ``little_l = ||f_z| - |f_zbar||`` its minimum stretch, and
    ``jacobian_abs`` their product ``||f_z|**2 - |f_zbar|**2|``.
    """

    fz: complex
    fzbar: complex
    norm_Df: float = field(init=False)
    little_l: float = field(init=False)
    jacobian_abs: float = field(init=False)

    def __post_init__(self):
        a, b = abs(self.fz), abs(self.fzbar)
        object.__setattr__(self, "norm_Df", a + b)
        object.__setattr__(self, "little_l", abs(a - b))
        object.__setattr__(self, "jacobian_abs", (a + b) * abs(a - b))

    def directional(self, direction):
        """``Df(z) varsigma = f_z varsigma + f_zbar conj(varsigma)``."""
        direction = np.asarray(direction)
        return self.fz * direction + self.fzbar * np.conj(direction)

    def real_jacobian(self):
        """The matrix ``[[u_x, u_y], [v_x, v_y]]``."""
        fx = self.fz + self.fzbar
        fy = 1j * (self.fz - self.fzbar)
        return np.array([[fx.real, fy.real], [fx.imag, fy.imag]])


def sampled_norms(pair: WirtingerPair, directions: int = 360, polish: bool = False):
    """Max and min of ``|Df(z) varsigma|`` over equally spaced unit directions.

    The grid minimum has an error of order ``sqrt(|f_z f_zbar|) * 2 pi / directions``
    when the Jacobian is nearly singular; ``polish`` refines both extrema with a
    bounded scalar search around the best grid directions.
    """
    h = 2.0 * np.pi / directions
    phi = h * np.arange(directions)
    mags = np.abs(pair.directional(np.exp(1j * phi)))
    big, small = float(mags.max()), float(mags.min())
    if polish:
        mag = lambda t: abs(complex(pair.directional(np.exp(1j * t))))
        t0 = phi[mags.argmax()]
        res = optimize.minimize_scalar(lambda t: -mag(t), bounds=(t0 - h, t0 + h),
                                       method="bounded", options={"xatol": 1e-12})
        big = max(big, -float(res.fun))
        t0 = phi[mags.argmin()]
        res = optimize.minimize_scalar(mag, bounds=(t0 - h, t0 + h),
                                       method="bounded", options={"xatol": 1e-12})
        small = min(small, float(res.fun))
    return big, small
