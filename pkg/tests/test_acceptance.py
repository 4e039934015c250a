"""Acceptance suite: every criterion prints one PASS/FAIL line.

Run as ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; each criterion is a separate test with its tolerance pinned inline.
"""

import math
import time

import numpy as np
import pytest

from perpetua import conjugacy as cj
from perpetua import families as cat
from perpetua import kappa as ka
from perpetua import mellin as ml
from perpetua import montecarlo as mc

FULL_CATALOG = cat.catalog()


def report(number: int, name: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"{status} criterion {number:2d}: {name}{suffix}")
    assert passed, f"criterion {number} ({name}) failed: {detail}"


def test_criterion_01_gamma_reduction():
    start = time.perf_counter()
    f = cat.trivial().function
    worst = 0.0
    for r in (0.5, 1.0, 2.0, 3.0, 4.5):
        worst = max(worst, abs(ml.R_product(f, r).value / ml.gamma_fn(r) - 1.0))
    elapsed = time.perf_counter() - start
    report(
        1,
        "trivial entry reproduces the Gamma function",
        worst <= 1e-6 and elapsed < 1.0,
        f"worst rel {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_02_stable_closed_forms():
    start = time.perf_counter()
    worst = 0.0
    for alpha in (0.3, 0.5, 0.7):
        entry = cat.stable(alpha)
        f = entry.function
        kap = ka.kappa_for(entry)
        for r in (0.5, 1.5, 2.0, 3.0, 5.0):
            r_exact = ml.gamma_fn(r) ** alpha
            i_exact = ml.gamma_fn(r) ** (1.0 - alpha)
            worst = max(
                worst,
                abs(ml.R_product(f, r).value / r_exact - 1.0),
                abs(ka.R_integral(f, kap, r).value / r_exact - 1.0),
                abs(ml.I_product(f, r).value / i_exact - 1.0),
                abs(ka.I_integral(f, kap, r).value / i_exact - 1.0),
            )
    elapsed = time.perf_counter() - start
    report(
        2,
        "stable family matches Gamma powers on both routes",
        worst <= 1e-5 and elapsed < 10.0,
        f"worst rel {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_03_factorization_identity():
    worst = 0.0
    for entry in FULL_CATALOG:
        for r in (0.3, 0.7, 1.0, 1.5, 2.8, 5.0):
            val = (
                ml.R_product(entry.function, r).value
                * ml.I_product(entry.function, r).value
                / ml.gamma_fn(r)
            )
            worst = max(worst, abs(val - 1.0))
    report(
        3,
        "perpetuity times remainder transform equals Gamma on every entry",
        worst <= 1e-5,
        f"worst rel {worst:.2e}",
    )


def test_criterion_04_moment_identity():
    worst = 0.0
    for entry in FULL_CATALOG:
        f = entry.function
        for n in range(1, 7):
            worst = max(
                worst,
                abs(ml.R_product(f, n + 1.0).value / ml.moments_R(f, n) - 1.0),
                abs(ml.I_product(f, n + 1.0).value / ml.moments_I(f, n) - 1.0),
            )
    report(
        4,
        "products at integer arguments reproduce the moment formulas",
        worst <= 1e-6,
        f"worst rel {worst:.2e}",
    )


def test_criterion_05_route_cross_check():
    worst = 0.0
    for entry in FULL_CATALOG:
        if entry.closed_kappa is None:
            continue
        f = entry.function
        kap = ka.kappa_for(entry)
        for r in (0.5, 1.5, 2.0, 3.5):
            worst = max(
                worst,
                abs(ka.R_integral(f, kap, r).value / ml.R_product(f, r).value - 1.0),
                abs(ka.I_integral(f, kap, r).value / ml.I_product(f, r).value - 1.0),
            )
    report(
        5,
        "product and kappa-integral routes agree on every entry",
        worst <= 1e-5,
        f"worst rel {worst:.2e}",
    )


def test_criterion_06_classification_table():
    expectations = {
        "stable:alpha=0.3": dict(i_mid=True, logR_sd=True, logI_sd=True),
        "stable:alpha=0.5": dict(i_mid=True, logR_sd=True, logI_sd=True),
        "stable:alpha=0.7": dict(i_mid=True, logR_sd=True, logI_sd=True),
        "expcp:c=1": dict(i_mid=True, logR_sd=True, logI_sd=True),
        "expcp:c=2": dict(i_mid=True, logR_sd=True, logI_sd=True),
        "geomcp:c=0,q=0.5": dict(i_mid=False),
        "geomcp:c=0.1,q=0.5": dict(i_mid=False),
        "gamma": dict(i_mid=True, logR_sd=True, logI_sd=True),
        # inverse local time of the radial OU diffusion: the log-remainder
        # column is asserted only in the two special parameter cases
        "rou:alpha=0.3,mu=1.66667": dict(i_mid=True, logI_sd=True, logR_sd=True),
        "rou:alpha=0.7,mu=1.66667": dict(i_mid=True, logI_sd=True, logR_sd=True),
        "rou:alpha=0.5,mu=1": dict(i_mid=True, logI_sd=True, logR_sd=True),
        "rou:alpha=0.4,mu=1": dict(i_mid=True, logI_sd=True),
    }
    mismatches = []
    for entry in FULL_CATALOG:
        want = expectations.get(entry.id)
        if want is None:
            continue
        rep = ka.classify(entry)
        got = dict(i_mid=rep.i_mid, logR_sd=rep.logR_sd, logI_sd=rep.logI_sd)
        for key, value in want.items():
            if got[key] != value:
                mismatches.append((entry.id, key, got[key], value))
        if not rep.r_mid:
            mismatches.append((entry.id, "r_mid", rep.r_mid, True))
    report(
        6,
        "classification table reproduces the stated booleans exactly",
        not mismatches,
        "exact match" if not mismatches else str(mismatches),
    )


def test_criterion_07_urbanik_equivalence():
    mismatches = []
    for entry in FULL_CATALOG:
        if entry.closed_kappa is None:
            continue
        kap = ka.kappa_for(entry)
        if ka.sm_le_pi(kap).ok != ka.mid_check_I(kap).ok:
            mismatches.append(entry.id)
    report(
        7,
        "S-transform domination agrees with the m.i.d. criterion everywhere",
        not mismatches,
        "exact boolean match" if not mismatches else str(mismatches),
    )


def test_criterion_08_conjugacy_swap():
    res = cj.swap_check(cat.stable(0.3).function, (0.5, 1.0, 2.0, 3.0, 5.0))
    worst = max(max(a, b) for _, a, b in res)
    report(
        8,
        "Mellin transforms swap across the conjugate stable pair",
        worst <= 1e-5,
        f"worst residual {worst:.2e}",
    )


def test_criterion_09_monte_carlo_expcp():
    start = time.perf_counter()
    entry = cat.expcp(1.0)
    model = mc.model_for(entry)
    dl = 1e-3
    L = mc.default_truncation(model, dl)  # exp(-L/2) < 1e-6
    assert math.exp(-L * 0.5) < 1e-6
    est1 = mc.estimate_mellin_I(model, 2.0, N=100_000, dl=dl, L=L, seed=20260809)
    est2 = mc.estimate_mellin_I(model, 3.0, N=100_000, dl=dl, L=L, seed=20260809)
    elapsed = time.perf_counter() - start
    band1 = 3.0 * est1.stderr + est1.bias_bound
    band2 = 3.0 * est2.stderr + est2.bias_bound
    ok = abs(est1.mean - 2.0) < band1 and abs(est2.mean - 6.0) < band2 and elapsed < 120.0
    report(
        9,
        "Monte Carlo perpetuity moments for the exponential family",
        ok,
        f"E[I]={est1.mean:.4f} (band {band1:.4f}), "
        f"E[I^2]={est2.mean:.4f} (band {band2:.4f}), {elapsed:.1f}s",
    )


def test_criterion_10_convolution_residuals():
    worst = 0.0
    grid = (0.25, 0.5, 1.0, 2.0)
    for c in (1.0, 2.0):
        entry = cat.expcp(c)
        for which in ("theta_eq25", "eta_eq26"):
            residuals = ka.convolution_residual(entry, which, grid)
            worst = max(worst, max(r for _, r in residuals))
    report(
        10,
        "convolution identities hold for the exponential family",
        worst <= 1e-3,
        f"worst residual {worst:.2e}",
    )


def test_criterion_11_log_convexity_negative():
    f = cat.trivial().function

    def perturbed(r):
        return ml.R_product(f, r).value * math.exp(0.15 * math.sin(2.0 * math.pi * r))

    # the candidate keeps the normalization and the shift recursion...
    recursion_ok = abs(perturbed(1.0) - 1.0) <= 1e-8 and all(
        abs(perturbed(r + 1.0) / (float(f(r)) * perturbed(r)) - 1.0) <= 1e-7
        for r in (0.7, 1.3, 2.6)
    )
    grid = np.linspace(1.0, 3.0, 21)
    detected = not ml.check_logconvex([(r, perturbed(r)) for r in grid])
    honest_ok = ml.check_logconvex([(r, ml.R_product(f, r).value) for r in grid])
    report(
        11,
        "log-convexity check rejects a recursion-respecting impostor",
        recursion_ok and detected and honest_ok,
        f"recursion holds={recursion_ok}, impostor rejected={detected}, genuine accepted={honest_ok}",
    )


def test_criterion_12_geometric_q_products():
    worst = 0.0
    for c, q in ((0.0, 0.5), (0.1, 0.5)):
        entry = cat.geomcp(c, q)
        f = entry.function
        for r in (1.5, 2.0, 3.0):
            worst = max(
                worst,
                abs(ml.R_product(f, r).value / entry.closed_R(r) - 1.0),
                abs(ml.I_product(f, r).value / entry.closed_I(r) - 1.0),
            )
    report(
        12,
        "truncated q-products match the limit products",
        worst <= 1e-6,
        f"worst rel {worst:.2e}",
    )
