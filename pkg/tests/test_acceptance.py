"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or directly
with ``python3 tests/test_acceptance.py`` for the summary alone.
"""
import math
import sys
import time

import numpy as np
import pytest

from alphaharm.analysis import (alpha_harmonicity_residual, step_boundary, schwarz_pick_check,
                                wirtinger, wirtinger_arrays)
from alphaharm.dirichlet import (AlphaHarmonicFunction, check_coefficient_bounds, evaluate_poisson,
                                 evaluate_series, solve_dirichlet)
from alphaharm.jacobian import WirtingerPair, sampled_norms
from alphaharm.kernel import integral_means
from alphaharm.landau import (LandauInputs, random_normalized_function, rho0_closed_form, solve_rho0,
                              univalence_probe)
from alphaharm.sampling import disk_points, random_boundary, random_in_disk, random_unit_function
from alphaharm.special import c_alpha, p_alpha_k

# tolerances
DUAL_PATH_TOL = 1e-9
DUAL_PATH_SECONDS = 10.0
MEANS_UPPER = 1.0 + 1e-9
MEANS_ALPHA0_TOL = 1e-10
MEANS_ORIGIN_TOL = 1e-12
MEANS_ROUNDING = 1e-12
STEP_EXTREMAL_TOL = 1e-4
RHO0_TOL = 1e-12
PHI_RESIDUAL_TOL = 1e-13
R0_TOL = 1e-12
RESIDUAL_TOL = 1e-6
HOLOMORPHIC_TOL = 1e-13
FD_TOL = 1e-6
NORM_SAMPLING_TOL = 1e-4

SEED = 20240601
#: lines collected for the pytest terminal summary (see conftest.py)
LINES = []


def report(number, title, passed, detail):
    line = f"{'PASS' if passed else 'FAIL'}  [{number}] {title}: {detail}"
    LINES.append(line)
    print(line)
    return passed


def criterion_1():
    rng = np.random.default_rng(SEED)
    warm = solve_dirichlet(0.5, random_boundary(rng, 2))
    evaluate_series(warm, 0.1)
    evaluate_poisson(0.5, warm.boundary(), 0.1)
    start = time.perf_counter()
    worst = 0.0
    for alpha in (-0.5, 0.0, 1.0, 2.5):
        for _ in range(20):
            b = random_boundary(rng, int(rng.integers(0, 9)))
            f = solve_dirichlet(alpha, b, M=1.0)
            z = random_in_disk(rng, 50, 0.95)
            worst = max(worst, float(np.max(np.abs(evaluate_series(f, z) - evaluate_poisson(alpha, b, z)))))
    elapsed = time.perf_counter() - start
    ok = worst <= DUAL_PATH_TOL and elapsed < DUAL_PATH_SECONDS
    return report(1, "dual-path Dirichlet agreement", ok,
                  f"max |series - poisson| = {worst:.2e} (tol {DUAL_PATH_TOL:g}), {elapsed:.2f} s")


def criterion_2():
    radii = np.arange(20) * 0.05
    ok, notes = True, []
    for alpha in (0.0, 1.0, 2.5):
        vals = np.array([integral_means(alpha, r).value for r in radii])
        drop = float(np.min(np.diff(vals)))
        top = float(vals.max())
        origin = abs(vals[0] - c_alpha(alpha))
        ok &= drop >= -MEANS_ROUNDING and top <= MEANS_UPPER and origin <= MEANS_ORIGIN_TOL
        if alpha == 0.0:
            dev = float(np.max(np.abs(vals - 1.0)))
            ok &= dev <= MEANS_ALPHA0_TOL
            notes.append(f"alpha=0 |M-1| <= {dev:.1e}")
        notes.append(f"alpha={alpha:g} min step {drop:.1e}, max {top:.6f}, |M(0)-c| {origin:.0e}")
    return report(2, "integral means monotone and bounded", bool(ok), "; ".join(notes))


def criterion_3():
    f = solve_dirichlet(0.0, step_boundary(64))
    norm0 = wirtinger(f, 0.0).norm_Df
    z = disk_points(200, 0.99)
    unit = schwarz_pick_check(f, z, M=1.0)
    own = schwarz_pick_check(f, z)
    ok = abs(norm0 - 4 / math.pi) <= STEP_EXTREMAL_TOL and unit.passed and own.passed
    return report(3, "sharp constant for the step extremal", ok,
                  f"|Df(0)| = {norm0:.8f} vs 4/pi = {4 / math.pi:.8f}; worst ratio (M=1) "
                  f"{unit.worst_ratio:.4f}, (M={f.declared_sup_M:.4f}) {own.worst_ratio:.4f}, "
                  f"{len(unit.violations) + len(own.violations)} violations")


def criterion_4():
    rng = np.random.default_rng(SEED + 4)
    alphas = (-0.5, 0.0, 0.5, 1.0, 2.5)
    counts = {"coef-sup": 0, "pair-sum": 0, "dilated": 0}
    max_grid_sup = 0.0
    for i in range(500):
        b = random_boundary(rng, int(rng.integers(1, 9)))
        max_grid_sup = max(max_grid_sup, b.grid_sup())
        rep = check_coefficient_bounds(solve_dirichlet(alphas[i % len(alphas)], b), M=1.0)
        for row in rep.violations:
            counts[row.check] += 1
    ok = max_grid_sup <= 1.0 and not any(counts.values())
    return report(4, "coefficient bounds on 500 random data", ok,
                  f"violations {counts}, max boundary grid sup {max_grid_sup:.12f}")


def criterion_5():
    res = solve_rho0(LandauInputs(0.0, 1.0, 1.0))
    closed = 1 - math.sqrt(12 / 13)
    r0 = 6 * (res.rho0 / (1 - res.rho0)) ** 2
    ok = (abs(res.rho0 - closed) <= RHO0_TOL and abs(res.phi_at_rho0) <= PHI_RESIDUAL_TOL
          and abs(res.R0_lower - r0) <= R0_TOL)
    rng = np.random.default_rng(SEED + 5)
    worst = 0.0
    for alpha, M, beta in zip(rng.uniform(0, 10, 100), rng.uniform(0.01, 50, 100),
                              10 ** rng.uniform(-6, 2, 100)):
        inp = LandauInputs(alpha, M, beta)
        worst = max(worst, abs(solve_rho0(inp).rho0 - rho0_closed_form(inp)))
    ok = ok and worst <= RHO0_TOL
    return report(5, "Landau radius", ok,
                  f"rho0 = {res.rho0:.15f}, |rho0 - (1-sqrt(12/13))| = {abs(res.rho0 - closed):.1e}, "
                  f"phi residual {abs(res.phi_at_rho0):.1e}, R0 = {res.R0_lower:.12f}; "
                  f"100 triples worst gap {worst:.1e}")


def criterion_6():
    rng = np.random.default_rng(SEED + 6)
    alphas = (0.0, 0.5, 1.0, 2.5)
    inj = sep = 0
    worst_margin = math.inf
    for i in range(20):
        f = random_normalized_function(alphas[i % 4], 6, rng)
        rho0 = solve_rho0(LandauInputs.from_function(f)).rho0
        rep = univalence_probe(f, 0.9 * rho0, trials=10_000, seed=SEED + i)
        inj += rep.injectivity_violations
        sep += rep.separation_violations
        worst_margin = min(worst_margin, rep.min_separation - rep.separation_bound)
    ok = inj == 0 and sep == 0
    return report(6, "univalence probe", ok,
                  f"20 functions x 1e4 pairs: {inj} injectivity, {sep} separation violations, "
                  f"smallest separation margin {worst_margin:.3e}")


def criterion_7():
    rng = np.random.default_rng(SEED + 7)
    z = disk_points(100, 0.9)
    worst = 0.0
    for alpha in (0.5, 1.7):
        for _ in range(20):
            f = random_unit_function(alpha, int(rng.integers(1, 9)), rng)
            worst = max(worst, max(alpha_harmonicity_residual(f, zi) for zi in z))
    holo = 0.0
    for alpha in (0.5, 1.7):
        c = rng.normal(size=7) + 1j * rng.normal(size=7)
        f = AlphaHarmonicFunction.from_mapping(alpha, dict(enumerate(c)), 10.0)
        holo = max(holo, max(alpha_harmonicity_residual(f, zi) for zi in z))
    ok = worst <= RESIDUAL_TOL and holo <= HOLOMORPHIC_TOL
    return report(7, "alpha-harmonicity certificate", ok,
                  f"max residual {worst:.2e} (tol {RESIDUAL_TOL:g}), holomorphic {holo:.1e}")


def _fd_wirtinger(f, z, h=1e-5):
    fx = (evaluate_series(f, z + h) - evaluate_series(f, z - h)) / (2 * h)
    fy = (evaluate_series(f, z + 1j * h) - evaluate_series(f, z - 1j * h)) / (2 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def criterion_8():
    rng = np.random.default_rng(SEED + 8)
    wirt = 0.0
    norms = raw_min = 0.0
    for alpha in (-0.5, 0.0, 1.0, 2.5):
        f = random_unit_function(alpha, 8, rng)
        z = random_in_disk(rng, 50, 0.9)
        fz, fzb = wirtinger_arrays(f, z)
        ofz, ofzb = _fd_wirtinger(f, z)
        wirt = max(wirt, float(np.max(np.abs(fz - ofz))), float(np.max(np.abs(fzb - ofzb))))
        for a, b in zip(fz, fzb):
            p = WirtingerPair(complex(a), complex(b))
            big, small = sampled_norms(p, 360, polish=True)
            norms = max(norms, abs(big - p.norm_Df), abs(small - p.little_l))
            raw_min = max(raw_min, abs(sampled_norms(p, 360)[1] - p.little_l))
    ident = 0.0
    h = 1e-6
    for alpha in (-0.5, 0.5, 1.7, 3.0):
        for k in (1, 2, 5, 10):
            for w in np.arange(1, 10) / 10:
                d = p_alpha_k(alpha, k, w).derivative
                fd = (p_alpha_k(alpha, k, w + h).value - p_alpha_k(alpha, k, w - h).value) / (2 * h)
                ident = max(ident, abs(d - fd))
    ok = wirt <= FD_TOL and ident <= FD_TOL and norms <= NORM_SAMPLING_TOL
    return report(8, "derivative calculus", ok,
                  f"wirtinger vs FD {wirt:.1e}; P' identity vs FD {ident:.1e}; matrix norms vs "
                  f"360 directions (polished) {norms:.1e}, unpolished grid minimum {raw_min:.1e}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
