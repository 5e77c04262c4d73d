"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The two flavours share signatures and agree to rounding.  The public modules
call the names bound at the bottom of this file, which follow
``ALPHAHARM_BACKEND``; tests and the benchmark reach both sets via
:data:`BACKENDS`.

All coefficient-function kernels take the same quadrature/series tables,
produced by :func:`series_coefficients` and :func:`gauss_legendre_levels`.
"""
import cmath
import math
from functools import lru_cache

import numpy as np

from ._accel import HAVE_NUMBA, njit, requested_backend

DEFAULT_SWITCH = 0.5
GL_LEVELS = (16, 32, 64, 128, 256, 512, 1024)
# relative change between successive Gauss-Legendre levels accepted as converged
GL_RTOL = 1e-14
# panel width in the log variable; bounds rounding amplification of node errors
PANEL_WIDTH = 2.0


@lru_cache(maxsize=64)
def series_coefficients(alpha, switch=DEFAULT_SWITCH):
    """Coefficients ``binom(alpha, j) * (-1)**j`` of ``(1 - x)**alpha``.

    Enough terms are kept that ``switch**j`` drops below 1e-17.
    """
    nterms = int(math.ceil(math.log(1e-17) / math.log(switch))) + 2
    coef = np.empty(nterms)
    coef[0] = 1.0
    for j in range(1, nterms):
        coef[j] = -coef[j - 1] * (alpha - j + 1) / j
    coef.setflags(write=False)
    return coef


@lru_cache(maxsize=1)
def gauss_legendre_levels():
    xs, ws, offsets = [], [], [0]
    for n in GL_LEVELS:
        x, w = np.polynomial.legendre.leggauss(n)
        xs.append(x)
        ws.append(w)
        offsets.append(offsets[-1] + n)
    out = (np.concatenate(xs), np.concatenate(ws), np.asarray(offsets, dtype=np.int64))
    for a in out:
        a.setflags(write=False)
    return out


# ---------------------------------------------------------------- numba ---


@njit
def _palpha_table_nb(alpha, kmax, w, switch, coef, glx, glw, gloff):
    nw = w.shape[0]
    vals = np.empty((nw, kmax))
    ders = np.empty((nw, kmax))
    nterms = coef.shape[0]
    nlev = gloff.shape[0] - 1
    cur = np.empty(kmax)
    prev = np.empty(kmax)
    for i in range(nw):
        wi = w[i]
        if wi <= switch:
            for k in range(1, kmax + 1):
                val = coef[0] / k
                der = 0.0
                wp = 1.0
                for j in range(1, nterms):
                    cj = coef[j]
                    der += cj * j * wp / (k + j)
                    wp *= wi
                    val += cj * wp / (k + j)
                vals[i, k - 1] = val
                ders[i, k - 1] = der
            continue
        # x = 1 - e^s maps [log(1-w), 0] onto [w, 0]; integrand is entire in s
        s0 = math.log1p(-wi)
        npan = max(1, int(math.ceil(-s0 / PANEL_WIDTH)))
        hh = -0.5 * s0 / npan
        for lev in range(nlev):
            for k in range(kmax):
                cur[k] = 0.0
            for p in range(npan):
                mid = s0 + (2 * p + 1) * hh
                for m in range(gloff[lev], gloff[lev + 1]):
                    s = mid + hh * glx[m]
                    ratio = -math.expm1(s) / wi
                    term = glw[m] * hh * math.exp((alpha + 1.0) * s) / wi
                    for k in range(kmax):
                        cur[k] += term
                        term *= ratio
            if lev > 0:
                done = True
                for k in range(kmax):
                    if abs(cur[k] - prev[k]) > GL_RTOL * abs(cur[k]):
                        done = False
                        break
                if done:
                    break
            for k in range(kmax):
                prev[k] = cur[k]
        tail = (1.0 - wi) ** alpha
        for k in range(kmax):
            vals[i, k] = cur[k]
            ders[i, k] = (tail - (k + 1) * cur[k]) / wi
    return vals, ders


@njit
def _series_eval_nb(alpha, cpos, cneg, z, switch, coef, glx, glw, gloff):
    n = z.shape[0]
    npos = cpos.shape[0]
    nneg = cneg.shape[0]
    f = np.zeros(n, dtype=np.complex128)
    fz = np.zeros(n, dtype=np.complex128)
    fzb = np.zeros(n, dtype=np.complex128)
    w = np.empty(n)
    for i in range(n):
        w[i] = z[i].real * z[i].real + z[i].imag * z[i].imag
    if nneg > 0:
        vals, ders = _palpha_table_nb(alpha, nneg, w, switch, coef, glx, glw, gloff)
    else:
        vals = np.zeros((n, 1))
        ders = np.zeros((n, 1))
    for i in range(n):
        zi = z[i]
        acc = 0j
        dacc = 0j
        for k in range(npos - 1, -1, -1):
            dacc = dacc * zi + acc
            acc = acc * zi + cpos[k]
        zb = zi.conjugate()
        zbk = 1.0 + 0j  # conj(z)**(k-1)
        fa = 0j
        fza = 0j
        fzba = 0j
        for k in range(1, nneg + 1):
            c = cneg[k - 1]
            p = vals[i, k - 1]
            dp = ders[i, k - 1]
            zbk1 = zbk * zb
            fa += c * p * zbk1
            fza += c * dp * zbk1 * zb
            fzba += c * (k * p * zbk + dp * zi * zbk1)
            zbk = zbk1
        f[i] = acc + fa
        fz[i] = dacc + fza
        fzb[i] = fzba
    return f, fz, fzb


@njit
def _poisson_mean_nb(alpha, z, theta, fvals):
    n = z.shape[0]
    m = theta.shape[0]
    out = np.empty(n, dtype=np.complex128)
    a1 = alpha + 1.0
    for i in range(n):
        # Neumaier-compensated sums of real and imaginary parts
        sr = 0.0
        cr = 0.0
        si = 0.0
        ci = 0.0
        for j in range(m):
            zeta = z[i] * cmath.exp(-1j * theta[j])
            r2 = zeta.real * zeta.real + zeta.imag * zeta.imag
            om = 1.0 - zeta
            val = (1.0 - r2) ** a1 / (om * cmath.exp(a1 * cmath.log(om.conjugate())))
            val = val * fvals[j]
            x = val.real
            t = sr + x
            if abs(sr) >= abs(x):
                cr += (sr - t) + x
            else:
                cr += (x - t) + sr
            sr = t
            x = val.imag
            t = si + x
            if abs(si) >= abs(x):
                ci += (si - t) + x
            else:
                ci += (x - t) + si
            si = t
        out[i] = complex(sr + cr, si + ci) / m
    return out


@njit
def _modulus_mean_nb(alpha, r, theta):
    # mean over theta of |P_alpha(r e^{i theta})|, i.e. K_alpha / c_alpha
    m = theta.shape[0]
    scale = (1.0 - r * r) ** (alpha + 1.0)
    ex = 0.5 * (alpha + 2.0)
    s = 0.0
    c = 0.0
    for j in range(m):
        x = scale / (1.0 - 2.0 * r * math.cos(theta[j]) + r * r) ** ex
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return (s + c) / m


# ---------------------------------------------------------------- numpy ---


def _palpha_table_np(alpha, kmax, w, switch, coef, glx, glw, gloff):
    w = np.asarray(w, dtype=float)
    vals = np.empty((w.shape[0], kmax))
    ders = np.empty((w.shape[0], kmax))
    k = np.arange(1, kmax + 1, dtype=float)
    lo = w <= switch
    if lo.any():
        wl = w[lo]
        j = np.arange(coef.shape[0])
        inv = 1.0 / (k[:, None] + j[None, :])
        powers = wl[:, None] ** j
        vals[lo] = (powers * coef) @ inv.T
        dpowers = np.zeros_like(powers)
        dpowers[:, 1:] = j[1:] * wl[:, None] ** (j[1:] - 1)
        ders[lo] = (dpowers * coef) @ inv.T
    hi = ~lo
    if hi.any():
        wh = w[hi]
        s0 = np.log1p(-wh)
        npan = np.maximum(1, np.ceil(-s0 / PANEL_WIDTH)).astype(int)
        hh = -0.5 * s0 / npan
        cur = np.zeros((wh.shape[0], kmax))
        prev = None
        for lev in range(gloff.shape[0] - 1):
            x = glx[gloff[lev]:gloff[lev + 1]]
            g = glw[gloff[lev]:gloff[lev + 1]]
            cur = np.zeros((wh.shape[0], kmax))
            for p in range(int(npan.max())):
                active = p < npan
                mid = s0[active] + (2 * p + 1) * hh[active]
                s = mid[:, None] + hh[active, None] * x
                ratio = -np.expm1(s) / wh[active, None]
                base = g * hh[active, None] * np.exp((alpha + 1.0) * s) / wh[active, None]
                terms = np.empty(s.shape + (kmax,))
                terms[..., 0] = base
                if kmax > 1:
                    terms[..., 1:] = ratio[..., None]
                    np.cumprod(terms, axis=-1, out=terms)
                cur[active] += terms.sum(axis=1)
            if prev is not None and np.all(np.abs(cur - prev) <= GL_RTOL * np.abs(cur)):
                break
            prev = cur
        vals[hi] = cur
        ders[hi] = ((1.0 - wh)[:, None] ** alpha - k * cur) / wh[:, None]
    return vals, ders


def _series_eval_np(alpha, cpos, cneg, z, switch, coef, glx, glw, gloff):
    z = np.asarray(z, dtype=np.complex128)
    npos = cpos.shape[0]
    nneg = cneg.shape[0]
    kp = np.arange(npos)
    zp = z[:, None] ** kp
    f = zp @ cpos
    fz = np.zeros_like(f)
    if npos > 1:
        fz = (zp[:, :-1] * kp[1:]) @ cpos[1:]
    fzb = np.zeros_like(f)
    if nneg:
        w = z.real ** 2 + z.imag ** 2
        vals, ders = _palpha_table_np(alpha, nneg, w, switch, coef, glx, glw, gloff)
        kn = np.arange(1, nneg + 1)
        zb = np.conj(z)
        zbk = zb[:, None] ** (kn - 1)  # conj(z)**(k-1)
        zbk1 = zbk * zb[:, None]
        f = f + (vals * zbk1) @ cneg
        fz = fz + (ders * zbk1 * zb[:, None]) @ cneg
        fzb = (kn * vals * zbk + ders * z[:, None] * zbk1) @ cneg
    return f, fz, fzb


def _poisson_mean_np(alpha, z, theta, fvals, chunk=256):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty(z.shape[0], dtype=np.complex128)
    rot = np.exp(-1j * theta)
    for start in range(0, z.shape[0], chunk):
        zeta = z[start:start + chunk, None] * rot
        r2 = zeta.real ** 2 + zeta.imag ** 2
        om = 1.0 - zeta
        kern = (1.0 - r2) ** (alpha + 1.0) / (om * np.exp((alpha + 1.0) * np.log(np.conj(om))))
        out[start:start + chunk] = np.mean(kern * fvals, axis=1)
    return out


def _modulus_mean_np(alpha, r, theta):
    d = 1.0 - 2.0 * r * np.cos(theta) + r * r
    return float(np.mean((1.0 - r * r) ** (alpha + 1.0) / d ** (0.5 * (alpha + 2.0))))


NUMPY_BACKEND = {
    "palpha_table": _palpha_table_np,
    "series_eval": _series_eval_np,
    "poisson_mean": _poisson_mean_np,
    "modulus_mean": _modulus_mean_np,
}
BACKENDS = {"numpy": NUMPY_BACKEND}
if HAVE_NUMBA:
    BACKENDS["numba"] = {
        "palpha_table": _palpha_table_nb,
        "series_eval": _series_eval_nb,
        "poisson_mean": _poisson_mean_nb,
        "modulus_mean": _modulus_mean_nb,
    }

BACKEND = requested_backend()
_active = BACKENDS[BACKEND]
palpha_table = _active["palpha_table"]
series_eval = _active["series_eval"]
poisson_mean = _active["poisson_mean"]
modulus_mean = _active["modulus_mean"]
