"""Boundary data, alpha-harmonic functions and the two Dirichlet solution routes.

An alpha-harmonic function with finitely many coefficients is stored densely as

    f(z) = sum_{k>=0} c_k z**k + sum_{k>=1} c_{-k} P_{alpha,k}(|z|**2) conj(z)**k

Solving from boundary data maps Fourier coefficients to ``c_k`` directly
(:func:`solve_dirichlet`); :func:`evaluate_poisson` instead integrates the
Poisson-type kernel against the boundary values, an independent route to the
same function.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import optimize

from . import _kernels, special
from .errors import DomainError
from .kernel import trapezoid_theta
from .special import AlphaParam, beta, gamma_ratios, p_alpha_k_table

logger = logging.getLogger("alphaharm")

SUP_SAMPLES = 4096
SUP_SAFETY = 1.0 + 1e-6
SUP_RADII = 129
POISSON_TOL = 1e-11
MAX_POISSON_NODES = 1 << 16
#: slack for roundoff when a bound is attained with equality
BOUND_RTOL = 1e-12
SAT2_RADII = tuple(round(0.1 * i, 1) for i in range(1, 10))


def _dense(mapping, what):
    items = {}
    for n, c in dict(mapping).items():
        if int(n) != n:
            raise DomainError(f"{what} index {n!r} is not an integer")
        c = complex(c)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise DomainError(f"{what} {n} is not finite")
        items[int(n)] = items.get(int(n), 0j) + c
    nz = [abs(n) for n, c in items.items() if c != 0]
    degree = max(nz, default=0)
    dense = np.zeros(2 * degree + 1, dtype=np.complex128)
    for n, c in items.items():
        if abs(n) <= degree:
            dense[n + degree] = c
    dense.setflags(write=False)
    return dense


def _readonly(a):
    a = np.array(a, dtype=np.complex128)
    if a.ndim != 1 or a.shape[0] % 2 != 1:
        raise DomainError("dense coefficient arrays must be 1-D with odd length 2N+1")
    a.setflags(write=False)
    return a


def trig_values(dense, theta):
    """``sum_n a_n e^{i n theta}`` for a dense two-sided table ``a_{-N..N}``."""
    theta = np.asarray(theta, dtype=float)
    degree = (dense.shape[0] - 1) // 2
    n = np.arange(-degree, degree + 1)
    return np.exp(1j * np.multiply.outer(theta, n)) @ dense


def _grid_values(dense, samples):
    degree = (dense.shape[0] - 1) // 2
    if samples <= 2 * degree:
        raise DomainError("sampling grid too coarse for the trigonometric degree")
    buf = np.zeros(samples, dtype=np.complex128)
    for i, n in enumerate(range(-degree, degree + 1)):
        buf[n % samples] += dense[i]
    return np.fft.ifft(buf) * samples


def trig_sup(dense, samples: int = SUP_SAMPLES, polish: bool = True) -> float:
    """Maximum of ``|sum_n a_n e^{i n theta}|``: grid maximum, optionally polished."""
    vals = np.abs(_grid_values(dense, samples))
    best = float(vals.max())
    if not polish or best == 0.0:
        return best
    h = 2.0 * np.pi / samples
    for j in np.argsort(vals)[-4:]:
        res = optimize.minimize_scalar(
            lambda t: -abs(trig_values(dense, t)), bounds=(j * h - h, j * h + h),
            method="bounded", options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return best


@dataclass(frozen=True)
class BoundaryData:
    """Finite Fourier table of boundary values plus a sup bound ``M`` on the circle.

    ``coefficients[n + N]`` holds the n-th Fourier coefficient for ``-N <= n <= N``.
    """

    coefficients: np.ndarray
    sup_norm_M: float = None

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _readonly(self.coefficients))
        if self.sup_norm_M is None:
            object.__setattr__(self, "sup_norm_M", trig_sup(self.coefficients) * SUP_SAFETY)
        else:
            m = float(self.sup_norm_M)
            if not m > 0.0:
                raise DomainError(f"sup bound M must be positive, got {m!r}")
            object.__setattr__(self, "sup_norm_M", m)

    @classmethod
    def from_mapping(cls, mapping, M=None):
        return cls(_dense(mapping, "Fourier coefficient"), M)

    @property
    def degree(self) -> int:
        return (self.coefficients.shape[0] - 1) // 2

    def fourier(self, n: int) -> complex:
        if abs(n) > self.degree:
            return 0j
        return complex(self.coefficients[n + self.degree])

    def values(self, theta):
        return trig_values(self.coefficients, theta)

    def grid_sup(self, samples: int = SUP_SAMPLES) -> float:
        return trig_sup(self.coefficients, samples, polish=False)

    def sup_consistent(self, samples: int = SUP_SAMPLES) -> bool:
        """Whether the declared bound covers the sampled boundary values."""
        return self.grid_sup(samples) <= self.sup_norm_M * (1.0 + 1e-9)


@dataclass(frozen=True)
class AlphaHarmonicFunction:
    """``alpha`` together with the two-sided coefficients ``c_{-N..N}``.

    ``declared_sup_M`` is a bound for ``|f|`` on the closed disk.  When omitted it
    is estimated with :func:`disk_sup`.
    """

    alpha: float
    coefficients: np.ndarray
    declared_sup_M: float = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", AlphaParam(self.alpha))
        object.__setattr__(self, "coefficients", _readonly(self.coefficients))
        if self.declared_sup_M is None:
            object.__setattr__(self, "declared_sup_M", disk_sup(self) * SUP_SAFETY)
        else:
            m = float(self.declared_sup_M)
            if not m > 0.0:
                raise DomainError(f"sup bound M must be positive, got {m!r}")
            object.__setattr__(self, "declared_sup_M", m)

    @classmethod
    def from_mapping(cls, alpha, mapping, M=None):
        return cls(alpha, _dense(mapping, "coefficient"), M)

    @property
    def degree(self) -> int:
        return (self.coefficients.shape[0] - 1) // 2

    def c(self, k: int) -> complex:
        if abs(k) > self.degree:
            return 0j
        return complex(self.coefficients[k + self.degree])

    @property
    def analytic(self) -> np.ndarray:
        """``c_0, c_1, ..., c_N``."""
        return self.coefficients[self.degree:]

    @property
    def antianalytic(self) -> np.ndarray:
        """``c_{-1}, c_{-2}, ..., c_{-N}``."""
        return self.coefficients[:self.degree][::-1]

    def with_sup(self, M):
        return AlphaHarmonicFunction(self.alpha, self.coefficients, M)

    def boundary(self, M=None) -> BoundaryData:
        """Boundary values as Fourier data; inverts :func:`solve_dirichlet`."""
        n = self.degree
        dense = np.array(self.coefficients)
        for k in range(1, n + 1):
            dense[n - k] *= beta(k, self.alpha + 1.0)
        return BoundaryData(dense, M)

    def __call__(self, z):
        return evaluate_series(self, z)


@dataclass(frozen=True)
class NormalizationFlags:
    """Whether ``c_{-1} = 0``, ``c_{-2} = 1`` and ``|c_{-k}| <= k - 1`` for ``k >= 3``."""

    normalized: bool


def normalization_flags(f: AlphaHarmonicFunction, atol: float = 1e-12) -> NormalizationFlags:
    ok = abs(f.c(-1)) <= atol and abs(f.c(-2) - 1.0) <= atol
    for k in range(3, f.degree + 1):
        ok = ok and abs(f.c(-k)) <= (k - 1) * (1.0 + BOUND_RTOL)
    return NormalizationFlags(bool(ok))


def solve_dirichlet(alpha, boundary: BoundaryData, M=None) -> AlphaHarmonicFunction:
    """Coefficients of the alpha-harmonic extension of ``boundary``.

    ``c_k`` is the k-th Fourier coefficient for ``k >= 0`` and
    ``c_{-k} = Gamma(k+alpha+1)/(Gamma(k)Gamma(alpha+1))`` times the (-k)-th.
    The sup bound defaults to the larger of the boundary bound and the sampled
    sup over the closed disk.
    """
    alpha = AlphaParam(alpha)
    n = boundary.degree
    dense = np.array(boundary.coefficients)
    dense[:n] *= gamma_ratios(n, alpha)[::-1]
    if M is None:
        provisional = AlphaHarmonicFunction(alpha, dense, boundary.sup_norm_M)
        M = max(boundary.sup_norm_M, disk_sup(provisional) * SUP_SAFETY)
    return AlphaHarmonicFunction(alpha, dense, M)


def _check_points(z):
    z = np.asarray(z, dtype=np.complex128)
    if np.any(~(np.abs(z) < 1.0)):
        raise DomainError("evaluation points must lie in the open unit disk")
    return z


def series_with_derivatives(f: AlphaHarmonicFunction, z):
    """``(f, f_z, f_zbar)`` at the points ``z`` from the coefficient expansion."""
    z = _check_points(z)
    flat = np.ascontiguousarray(z.ravel())
    switch = special.P_SWITCH
    coef = _kernels.series_coefficients(float(f.alpha), switch)
    glx, glw, gloff = _kernels.gauss_legendre_levels()
    out = _kernels.series_eval(float(f.alpha), np.ascontiguousarray(f.analytic),
                               np.ascontiguousarray(f.antianalytic), flat,
                               switch, coef, glx, glw, gloff)
    return tuple(a.reshape(z.shape) for a in out)


def evaluate_series(f: AlphaHarmonicFunction, z):
    """Evaluate ``f`` at ``z`` (scalar or array) from its coefficients."""
    val = series_with_derivatives(f, z)[0]
    return complex(val) if val.ndim == 0 else val


def evaluate_poisson(alpha, boundary: BoundaryData, z, nodes: int = None):
    """Poisson-type integral of the boundary values, by node-doubling trapezoid.

    Each point is refined until two successive levels differ by less than
    ``POISSON_TOL`` (relative to ``max(1, |f|)``).
    """
    alpha = AlphaParam(alpha)
    z = _check_points(z)
    flat = np.ascontiguousarray(z.ravel())
    floor = 4 * (boundary.degree + 1)
    if nodes is None:
        nodes = max(64, floor)
    elif nodes < floor:
        raise DomainError(f"need at least {floor} nodes for degree {boundary.degree}")
    n = int(nodes)
    theta = trapezoid_theta(n)
    value = _kernels.poisson_mean(float(alpha), flat, theta, boundary.values(theta))
    active = np.arange(flat.shape[0])
    while active.size and n < MAX_POISSON_NODES:
        mid = theta + np.pi / n
        odd = _kernels.poisson_mean(float(alpha), flat[active], mid, boundary.values(mid))
        refined = 0.5 * (value[active] + odd)
        done = np.abs(refined - value[active]) <= POISSON_TOL * np.maximum(1.0, np.abs(refined))
        value[active] = refined
        active = active[~done]
        n *= 2
        theta = trapezoid_theta(n)
    if active.size:
        logger.warning("evaluate_poisson: %d points not converged at %d nodes", active.size, n)
    out = value.reshape(z.shape)
    return complex(out) if out.ndim == 0 else out


def _angles(angles):
    if np.ndim(angles) == 0:
        return trapezoid_theta(int(angles))
    return np.asarray(angles, dtype=float)


def radial_restriction(f: AlphaHarmonicFunction, r: float, angles=256):
    """Samples of the dilation ``f_r(e^{i theta}) = f(r e^{i theta})``.

    ``angles`` is either a count (equally spaced from 0) or an array of angles.
    """
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r!r}")
    theta = _angles(angles)
    return np.asarray(evaluate_series(f, r * np.exp(1j * theta)), dtype=np.complex128)


def circle_coefficients(f: AlphaHarmonicFunction, r: float) -> np.ndarray:
    """Fourier table (dense, ``-N..N``) of ``theta -> f(r e^{i theta})``, ``0 <= r <= 1``.

    At ``r = 1`` this is the boundary data, with ``P_{alpha,k}(1) = B(k, alpha+1)``.
    """
    n = f.degree
    out = np.array(f.coefficients)
    k = np.arange(1, n + 1)
    if r >= 1.0:
        out[:n] *= np.array([beta(j, f.alpha + 1.0) for j in range(n, 0, -1)])
        return out
    rk = float(r) ** k
    out[n + 1:] *= rk
    if n:
        p = p_alpha_k_table(f.alpha, n, r * r)[0][0]
        out[:n] *= (p * rk)[::-1]
    return out


def _polar_value(f, r, theta):
    if r >= 1.0:
        return trig_values(circle_coefficients(f, 1.0), theta)
    return evaluate_series(f, r * np.exp(1j * theta))


def disk_sup(f: AlphaHarmonicFunction, radii: int = SUP_RADII, angles: int = SUP_SAMPLES,
             polish: bool = True) -> float:
    """Sampled maximum of ``|f|`` over the closed disk (polar grid, then local polish).

    Without a maximum principle for alpha > 0 the interior has to be searched as
    well as the circle.
    """
    if f.degree == 0:
        return abs(f.c(0))
    rs = np.linspace(0.0, 1.0, radii)
    cands = []
    for r in rs:
        vals = np.abs(_grid_values(circle_coefficients(f, r), angles))
        j = int(vals.argmax())
        cands.append((float(vals[j]), float(r), 2.0 * np.pi * j / angles))
    cands.sort(reverse=True)
    best = cands[0][0]
    if not polish:
        return best
    h = 2.0 * np.pi / angles
    for _, r0, t0 in cands[:3]:
        res = optimize.minimize(
            lambda x: -abs(_polar_value(f, min(max(x[0], 0.0), 1.0), x[1])),
            x0=(r0, t0), method="Nelder-Mead",
            bounds=[(0.0, 1.0), (t0 - 4 * h, t0 + 4 * h)],
            options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
        best = max(best, -float(res.fun))
    return best


def project_boundary(func, degree: int, samples: int = SUP_SAMPLES, M=None) -> BoundaryData:
    """Fourier projection of sampled boundary values onto degree ``<= degree``.

    ``func`` maps an array of angles to (complex) values; it is sampled on
    ``samples`` equally spaced angles and transformed with an FFT.
    """
    if samples <= 2 * degree:
        raise DomainError("samples must exceed twice the projection degree")
    theta = trapezoid_theta(samples)
    vals = np.asarray(func(theta), dtype=np.complex128)
    return project_samples(vals, degree, M)


def project_samples(values, degree: int, M=None) -> BoundaryData:
    values = np.asarray(values, dtype=np.complex128)
    samples = values.shape[0]
    if samples <= 2 * degree:
        raise DomainError("need more than 2*degree samples")
    spec = np.fft.fft(values) / samples
    dense = np.array([spec[n % samples] for n in range(-degree, degree + 1)])
    return BoundaryData(dense, M)


# ------------------------------------------------------- bound reports ---


@dataclass(frozen=True)
class CoefficientRow:
    check: str  # "coef-sup", "pair-sum" or "dilated"
    k: int
    r: float
    quantity: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.quantity

    @property
    def passed(self) -> bool:
        return bool(self.quantity <= self.bound * (1.0 + BOUND_RTOL))

    def as_dict(self):
        return {"check": self.check, "k": self.k, "r": self.r, "quantity": self.quantity,
                "bound": self.bound, "margin": self.margin, "pass": self.passed}


@dataclass(frozen=True)
class CoefficientReport:
    alpha: float
    M: float
    rows: tuple = field(default_factory=tuple)

    @property
    def violations(self):
        return [row for row in self.rows if not row.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self):
        return {"alpha": float(self.alpha), "M": float(self.M), "pass": self.passed,
                "violations": len(self.violations), "rows": [r.as_dict() for r in self.rows]}


def check_coefficient_bounds(f: AlphaHarmonicFunction, radii=SAT2_RADII, M=None) -> CoefficientReport:
    """Tabulate the three coefficient bounds for ``f`` against its sup bound.

    * ``|c_k| <= M`` for ``k >= 0``
    * ``|c_k| + |c_{-k}| B(k, alpha+1) <= 4M/pi`` for ``k >= 1``
    * ``(|c_k| + |c_{-k}| P_{alpha,k}(r**2)) r**k <= 4M/pi`` for each ``r`` in ``radii``

    A failing row means ``M`` does not bound ``|f|``; nothing is raised.
    """
    M = f.declared_sup_M if M is None else float(M)
    bound2 = 4.0 * M / math.pi
    rows = [CoefficientRow("coef-sup", k, 1.0, abs(f.c(k)), M) for k in range(f.degree + 1)]
    for k in range(1, f.degree + 1):
        q = abs(f.c(k)) + abs(f.c(-k)) * beta(k, f.alpha + 1.0)
        rows.append(CoefficientRow("pair-sum", k, 1.0, q, bound2))
    if f.degree:
        for r in radii:
            r = float(r)
            p = p_alpha_k_table(f.alpha, f.degree, r * r)[0][0]
            for k in range(1, f.degree + 1):
                q = (abs(f.c(k)) + abs(f.c(-k)) * p[k - 1]) * r ** k
                rows.append(CoefficientRow("dilated", k, r, q, bound2))
    return CoefficientReport(float(f.alpha), M, tuple(rows))


# ------------------------------------------------------------ file I/O ---


def _coeff_records(dense, key):
    degree = (dense.shape[0] - 1) // 2
    return [{key: n, "re": float(c.real), "im": float(c.imag)}
            for n, c in zip(range(-degree, degree + 1), dense) if c != 0]


def _parse_records(records, key):
    if not isinstance(records, list):
        raise DomainError("'coefficients' must be a list")
    mapping = {}
    for rec in records:
        try:
            n = rec[key]
            c = complex(float(rec.get("re", 0.0)), float(rec.get("im", 0.0)))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DomainError(f"malformed coefficient record {rec!r}") from exc
        if not isinstance(n, int) or isinstance(n, bool):
            raise DomainError(f"coefficient index must be an integer, got {n!r}")
        mapping[n] = mapping.get(n, 0j) + c
    return mapping


def boundary_to_dict(boundary: BoundaryData, alpha=None) -> dict:
    doc = {}
    if alpha is not None:
        doc["alpha"] = float(alpha)
    doc["M"] = boundary.sup_norm_M
    doc["coefficients"] = _coeff_records(boundary.coefficients, "n")
    return doc


def boundary_from_dict(doc: dict):
    """Parse the boundary-data schema; returns ``(BoundaryData, alpha or None)``."""
    if not isinstance(doc, dict) or "coefficients" not in doc:
        raise DomainError("boundary data must be an object with a 'coefficients' list")
    alpha = doc.get("alpha")
    if alpha is not None:
        alpha = AlphaParam(alpha)
    M = doc.get("M")
    return BoundaryData.from_mapping(_parse_records(doc["coefficients"], "n"), M), alpha


def function_to_dict(f: AlphaHarmonicFunction) -> dict:
    return {"kind": "alpha_harmonic", "alpha": float(f.alpha), "M": f.declared_sup_M,
            "coefficients": _coeff_records(f.coefficients, "k")}


def function_from_dict(doc: dict) -> AlphaHarmonicFunction:
    if not isinstance(doc, dict) or "coefficients" not in doc or "alpha" not in doc:
        raise DomainError("function file must carry 'alpha' and 'coefficients'")
    return AlphaHarmonicFunction.from_mapping(
        doc["alpha"], _parse_records(doc["coefficients"], "k"), doc.get("M"))


def load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read JSON from {path}: {exc}") from exc


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
