import os
import subprocess
import sys

import numpy as np
import pytest

from alphaharm import _kernels

pytestmark = pytest.mark.skipif("numba" not in _kernels.BACKENDS, reason="numba unavailable")


def _args(alpha):
    coef = _kernels.series_coefficients(alpha)
    glx, glw, gloff = _kernels.gauss_legendre_levels()
    return _kernels.DEFAULT_SWITCH, coef, glx, glw, gloff


def both(name):
    return _kernels.BACKENDS["numpy"][name], _kernels.BACKENDS["numba"][name]


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.3, 4.0])
def test_palpha_table_parity(alpha):
    w = np.concatenate([np.linspace(0, 0.999, 41), [0.5, 1 - 1e-9]])
    a, b = (fn(alpha, 12, w, *_args(alpha)) for fn in both("palpha_table"))
    for x, y in zip(a, b):
        assert np.allclose(x, y, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.5])
def test_series_eval_parity(alpha, rng):
    cpos = rng.normal(size=9) + 1j * rng.normal(size=9)
    cneg = rng.normal(size=8) + 1j * rng.normal(size=8)
    z = 0.97 * np.sqrt(rng.uniform(size=60)) * np.exp(2j * np.pi * rng.uniform(size=60))
    a, b = (fn(alpha, cpos, cneg, z, *_args(alpha)) for fn in both("series_eval"))
    for x, y in zip(a, b):
        assert np.max(np.abs(x - y)) <= 1e-12 * max(1.0, np.max(np.abs(x)))


def test_poisson_mean_parity(rng):
    z = 0.9 * np.sqrt(rng.uniform(size=30)) * np.exp(2j * np.pi * rng.uniform(size=30))
    theta = 2 * np.pi * np.arange(512) / 512
    fvals = np.exp(2j * theta) + 0.3 * np.exp(-1j * theta)
    a, b = (fn(1.7, z, theta, fvals) for fn in both("poisson_mean"))
    assert np.max(np.abs(a - b)) <= 1e-13


def test_modulus_mean_parity():
    theta = 2 * np.pi * np.arange(1024) / 1024
    for r in (0.0, 0.5, 0.95):
        a, b = (fn(2.5, r, theta) for fn in both("modulus_mean"))
        assert a == pytest.approx(b, rel=1e-13)


def test_env_flag_selects_numpy():
    env = dict(os.environ, ALPHAHARM_BACKEND="numpy")
    code = ("from alphaharm import _kernels, evaluate_series, AlphaHarmonicFunction as F;"
            "print(_kernels.BACKEND, evaluate_series(F.from_mapping(1.0, {-1: 1.0}, 1.0), 0.5))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, value = out.stdout.split(maxsplit=1)
    assert name == "numpy"
    # P_{1,1}(0.25) = 1 - 0.25/2
    assert complex(value) == pytest.approx(0.875 * 0.5)
