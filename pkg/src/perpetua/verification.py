"""Named cross-checks tying every computation route to the others.

Each check compares two independently computed quantities (closed form vs
product, product vs integral representation, structural flag vs grid
verdict) and reports a pass/fail outcome with the worst observed deviation.
The CLI ``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import bernstein as bs
from . import conjugacy as cj
from . import kappa as ka
from . import mellin as ml
from .families import CatalogEntry, catalog, get_entry, stable
from .errors import UnsupportedError

__all__ = ["CheckOutcome", "run_entry_checks", "run_global_checks", "run_all"]

R_GRID = (0.3, 0.7, 1.0, 1.5, 2.8, 5.0)
ROUTE_GRID = (0.5, 1.5, 2.0, 3.5)
S_GRID = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
SWAP_GRID = (0.5, 1.0, 2.0, 3.0, 5.0)


@dataclass(frozen=True)
class CheckOutcome:
    entry: str
    check: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {
            "entry": self.entry,
            "check": self.check,
            "passed": self.passed,
            "detail": self.detail,
        }


def _outcome(entry_id, check, worst, tol, extra=""):
    note = f"worst {worst:.3e} vs tol {tol:.1e}" + (f" ({extra})" if extra else "")
    return CheckOutcome(entry_id, check, bool(worst <= tol), note)


def check_phi_basics(entry: CatalogEntry) -> list[CheckOutcome]:
    f = entry.function
    out = []
    zero = bs.eval_phi(f, 0.0)
    out.append(
        CheckOutcome(entry.id, "phi-null-at-zero", zero == 0.0, f"Phi(0) = {zero!r}")
    )
    out.append(
        CheckOutcome(
            entry.id,
            "phi-shape",
            bs.check_phi_shape(f),
            "nondecreasing and concave on the log grid",
        )
    )
    return out


def check_levy_match(entry: CatalogEntry, rtol: float = 1e-5) -> list[CheckOutcome]:
    f = entry.function
    if f.levy is None:
        return []
    worst = 0.0
    for s in S_GRID:
        approx = bs.eval_phi_from_levy(f.levy, s, tol=1e-6)
        worst = max(worst, abs(approx / float(f(s)) - 1.0))
    value = f.levy.check_integrability()
    return [
        _outcome(entry.id, "levy-quadrature-match", worst, rtol),
        CheckOutcome(
            entry.id,
            "levy-integrability",
            math.isfinite(value),
            f"integral (x^1) d-levy = {value:.6g}",
        ),
    ]


def check_conjugate_involution(entry: CatalogEntry, rtol: float = 1e-10) -> list[CheckOutcome]:
    f = entry.function
    if f.is_in_sigma is not True:
        return []
    double = bs.conjugate(bs.conjugate(f))
    grid = np.array([0.25, 0.5, 1.0, 2.0, 5.0, 10.0])
    worst = float(np.max(np.abs(np.asarray(double.phi(grid)) / np.asarray(f.phi(grid)) - 1.0)))
    return [_outcome(entry.id, "conjugate-involution", worst, rtol)]


def check_power_identity(entry: CatalogEntry) -> list[CheckOutcome]:
    f = entry.function
    g = bs.power_subordinate(f, 1.0)
    grid = np.array([0.1, 1.0, 3.0, 10.0])
    worst = float(np.max(np.abs(np.asarray(g.phi(grid)) - np.asarray(f.phi(grid)))))
    return [_outcome(entry.id, "power-identity", worst, 0.0)]


def check_product_identity(entry: CatalogEntry, rtol: float = 1e-6,
                           grid=R_GRID) -> list[CheckOutcome]:
    f = entry.function
    worst = 0.0
    for r in grid:
        val = ml.R_product(f, r).value * ml.I_product(f, r).value / ml.gamma_fn(r)
        worst = max(worst, abs(val - 1.0))
    return [_outcome(entry.id, "product-identity", worst, rtol)]


def check_moment_identity(entry: CatalogEntry, rtol: float = 1e-6,
                          n_max: int = 6) -> list[CheckOutcome]:
    f = entry.function
    worst = 0.0
    for n in range(1, n_max + 1):
        worst = max(
            worst,
            abs(ml.R_product(f, n + 1.0).value / ml.moments_R(f, n) - 1.0),
            abs(ml.I_product(f, n + 1.0).value / ml.moments_I(f, n) - 1.0),
        )
    return [_outcome(entry.id, "moment-identity", worst, rtol)]


def check_closed_forms(entry: CatalogEntry, rtol: float = 1e-6,
                       grid=(0.5, 1.5, 2.0, 2.8, 3.0, 5.0)) -> list[CheckOutcome]:
    f = entry.function
    out = []
    if entry.closed_R is not None:
        worst = max(
            abs(ml.R_product(f, r).value / entry.closed_R(r) - 1.0) for r in grid
        )
        out.append(_outcome(entry.id, "closed-R-match", worst, rtol))
    if entry.closed_I is not None:
        worst = max(
            abs(ml.I_product(f, r).value / entry.closed_I(r) - 1.0) for r in grid
        )
        out.append(_outcome(entry.id, "closed-I-match", worst, rtol))
    if entry.closed_R is not None and entry.closed_I is not None:
        worst = max(
            abs(entry.closed_R(r) * entry.closed_I(r) / ml.gamma_fn(r) - 1.0)
            for r in grid
        )
        out.append(_outcome(entry.id, "closed-form-factorization", worst, 1e-10))
    return out


def check_kappa(entry: CatalogEntry, rtol: float = 1e-5) -> list[CheckOutcome]:
    try:
        kap = ka.kappa_for(entry, rtol=rtol)
    except UnsupportedError:
        return []
    f = entry.function
    worst = max(
        abs(ka.laplace_transform_kappa(kap, s) / float(f.log_deriv(s)) - 1.0)
        for s in (0.5, 1.0, 2.0, 5.0)
    )
    out = [_outcome(entry.id, "kappa-laplace-match", worst, rtol)]

    worst_r = worst_i = 0.0
    for r in ROUTE_GRID:
        worst_r = max(
            worst_r,
            abs(ka.R_integral(f, kap, r).value / ml.R_product(f, r).value - 1.0),
        )
        worst_i = max(
            worst_i,
            abs(ka.I_integral(f, kap, r).value / ml.I_product(f, r).value - 1.0),
        )
    out.append(_outcome(entry.id, "route-agreement-R", worst_r, rtol))
    out.append(_outcome(entry.id, "route-agreement-I", worst_i, rtol))

    mid = ka.mid_check_I(kap)
    sm = ka.sm_le_pi(kap)
    out.append(
        CheckOutcome(
            entry.id,
            "urbanik-equivalence",
            sm.ok == mid.ok,
            f"sm_le_pi={sm.ok} mid_check_I={mid.ok}",
        )
    )

    rep = ka.classify(entry)
    exp = entry.expected_classification
    mismatches = [
        name
        for name, got, want in (
            ("i_mid", rep.i_mid, exp.i_mid),
            ("logR_sd", rep.logR_sd, exp.logR_sd),
            ("logI_sd", rep.logI_sd, exp.logI_sd),
        )
        if want is not None and got != want
    ]
    out.append(
        CheckOutcome(
            entry.id,
            "classification-expected",
            not mismatches,
            "matches stated booleans" if not mismatches else f"mismatch: {mismatches}",
        )
    )
    return out


def check_functional_equations(entry: CatalogEntry, rtol: float = 1e-6,
                               grid=(0.5, 1.0, 2.0)) -> list[CheckOutcome]:
    res = ml.check_functional_eqs(entry.function, grid)
    worst = max(max(a, b) for _, a, b in res)
    return [_outcome(entry.id, "functional-equations", worst, rtol)]


def check_sigma_and_swap(entry: CatalogEntry, rtol: float = 1e-6) -> list[CheckOutcome]:
    f = entry.function
    if f.is_in_sigma is not True:
        return []
    out = []
    res = cj.swap_check(f, SWAP_GRID)
    worst = max(max(a, b) for _, a, b in res)
    out.append(_outcome(entry.id, "swap-residuals", worst, rtol))

    # Partition of Lebesgue measure between the pair's kappa densities.
    alpha = entry.params.get("alpha")
    if alpha is not None:
        k = ka.kappa_for(entry)
        k_star = ka.kappa_for(stable(1.0 - alpha))
        grid = ka.default_grid(50)
        worst = float(
            np.max(np.abs(k.density_at(grid) + k_star.density_at(grid) - 1.0))
        )
        out.append(_outcome(entry.id, "sigma-density-partition", worst, 1e-12))

        h = lambda x, a=alpha: np.asarray(x, float) ** (a - 1.0) / special.gamma(a)
        rebuilt = cj.conjugate_bernstein_of_h(0.0, cj.PotentialDensity(0.0, h))
        worst = max(
            abs(float(rebuilt(s)) / (s ** (1.0 - alpha)) - 1.0) for s in (0.5, 1.0, 2.0, 5.0)
        )
        out.append(_outcome(entry.id, "conjugate-from-potential", worst, 1e-5))
    return out


def check_convolutions(entry: CatalogEntry, tol: float = 1e-3,
                       grid=(0.25, 0.5, 1.0, 2.0)) -> list[CheckOutcome]:
    out = []
    for which in ("theta_eq25", "eta_eq26", "zeta_eq27"):
        try:
            res = ka.convolution_residual(entry, which, grid)
        except UnsupportedError:
            continue
        worst = max(r for _, r in res)
        out.append(_outcome(entry.id, f"convolution-{which.split('_')[1]}", worst, tol))
    return out


def check_gamma_kappa_shape(entry: CatalogEntry) -> list[CheckOutcome]:
    if entry.id != "gamma":
        return []
    k = entry.closed_kappa
    grid = np.geomspace(1e-3, 50.0, 80)
    vals = k.density_at(grid)
    increasing = bool(np.all(np.diff(vals) >= -1e-12))
    near_one = bool(vals[-1] > 0.99)
    return [
        CheckOutcome(
            entry.id,
            "gamma-kappa-increasing-to-one",
            increasing and near_one,
            f"monotone={increasing}, k(50)={vals[-1]:.6f}",
        )
    ]


def check_product_monotone(entry: CatalogEntry) -> list[CheckOutcome]:
    f = entry.function
    r0 = 0.5
    ns = [16, 32, 64, 128, 256, 512]
    h_vals = [ml.raw_product(f, n, r0) for n in ns]
    decreasing = all(b <= a * (1.0 + 1e-12) for a, b in zip(h_vals, h_vals[1:]))
    limit = ml.R_product(f, r0).value
    above = all(h >= limit * (1.0 - 1e-9) for h in h_vals)
    return [
        CheckOutcome(
            entry.id,
            "product-monotone-approach",
            decreasing and above,
            f"h decreasing={decreasing}, bounded below by limit={above}",
        )
    ]


def run_entry_checks(entry: CatalogEntry, rtol: float = 1e-5) -> list[CheckOutcome]:
    """All checks relevant to one entry; ``rtol`` tightens/loosens the route checks."""
    out = []
    out += check_phi_basics(entry)
    out += check_levy_match(entry)
    out += check_conjugate_involution(entry)
    out += check_power_identity(entry)
    out += check_product_identity(entry)
    out += check_moment_identity(entry)
    out += check_closed_forms(entry)
    out += check_kappa(entry, rtol=rtol)
    out += check_functional_equations(entry)
    out += check_sigma_and_swap(entry)
    out += check_convolutions(entry)
    out += check_gamma_kappa_shape(entry)
    out += check_product_monotone(entry)
    return out


def run_global_checks() -> list[CheckOutcome]:
    """Checks not tied to a single entry."""
    worst = max(
        abs(ka.gamma_integral_rep(r) / ml.gamma_fn(r) - 1.0) for r in (0.5, 1.0, 2.5, 6.0)
    )
    out = [_outcome("(global)", "gamma-kernel-selftest", worst, 1e-8)]
    gamma_euler = 0.5772156649015329
    worst = max(
        abs(ka.digamma_rep(r) - exact)
        for r, exact in (
            (1.0, -gamma_euler),
            (2.0, 1.0 - gamma_euler),
            (0.5, -gamma_euler - 2.0 * math.log(2.0)),
        )
    )
    out.append(_outcome("(global)", "digamma-kernel-selftest", worst, 1e-10))
    return out


def run_all(entry_ids=None, rtol: float = 1e-5) -> list[CheckOutcome]:
    entries = catalog() if entry_ids is None else [get_entry(e) for e in entry_ids]
    out = run_global_checks()
    for entry in entries:
        out += run_entry_checks(entry, rtol=rtol)
    return out
