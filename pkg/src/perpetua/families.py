"""Catalog of subordinator families with their closed forms.

Each entry bundles a Bernstein function with whatever is known in closed
form for that family: the Levy triple, the Mellin transforms of the
remainder R and the perpetuity I, the kappa measure (Laplace transform
Phi'/Phi), samplable laws of I or R, the densities entering the convolution
identities, and the expected distributional classification where it is
known (None = not asserted, to be reported from the numeric grid only).

Entries are addressable by string ids shared with the CLI:

    trivial
    stable:alpha=0.5
    expcp:c=1
    geomcp:c=0.1,q=0.5
    gamma
    by451:alpha=0.5,c=2
    by452:alpha=0.5,b=1.5,c=2
    rou:alpha=0.5,mu=1

Families:

* ``trivial``   Phi(s) = s, deterministic unit-drift subordinator, I = 1 and
  R standard exponential.
* ``stable``    Phi(s) = s^alpha; conjugate pair with the (1-alpha)-stable
  exponent, R(r) = Gamma(r)^alpha and I(r) = Gamma(r)^(1-alpha).
* ``expcp``     compound Poisson with exponential jumps, Phi(s) = s/(s+c);
  I is gamma(c+1), R is beta(1,c).
* ``geomcp``    compound Poisson with geometric jumps on the lattice
  -n log q, Phi(s) = (1-q^s)/(1-c q^(s-1)); Mellin transforms are
  q-products, kappa is atomic so I is not m.i.d.
* ``gamma``     gamma subordinator, Phi(s) = log(1+s); the kappa density is
  exp(-x) * integral_0^inf x^l/Gamma(l+1) dl, increasing to 1.
* ``by451``     Phi(s) = alpha s Gamma(alpha(s-1+c))/Gamma(alpha(s+c)),
  alpha in (0,1), c > 1; I is alpha^(-1) gamma_{alpha c}^alpha.
* ``by452``     Phi(s) = s Gamma(alpha(s+c)) / ((b+s-1) Gamma(alpha(s-1+c))),
  1 < b <= c; R is beta(1,b-1) * gamma_{alpha c}^alpha.
* ``rou``       inverse local time at 0 of a radial Ornstein-Uhlenbeck
  process with parameter mu and dimension 2(1-alpha):
  Phi(s) = Gamma(s/(2 mu)+alpha)/Gamma(s/(2 mu)).  Closed Mellin forms in
  the two special cases 2*mu*alpha = 1 and 2*mu*(1-alpha) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate, special

from .bernstein import BernsteinFunction, LevyTriple
from .errors import ParameterError
from .kappa import DensityFunction, KappaMeasure

__all__ = [
    "CatalogEntry",
    "ExpectedClassification",
    "catalog",
    "get_entry",
    "parse_entry_id",
    "trivial",
    "stable",
    "expcp",
    "geomcp",
    "gamma_process",
    "by451",
    "by452",
    "rou",
]


@dataclass(frozen=True)
class ExpectedClassification:
    """Classification booleans asserted in closed form; None = not asserted."""

    r_mid: bool = True
    i_mid: Optional[bool] = None
    logR_sd: Optional[bool] = None
    logI_sd: Optional[bool] = None


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    function: BernsteinFunction
    params: dict = field(default_factory=dict)
    closed_R: Optional[Callable[[float], float]] = None
    closed_I: Optional[Callable[[float], float]] = None
    closed_kappa: Optional[KappaMeasure] = None
    known_law_I: Optional[str] = None
    known_law_R: Optional[str] = None
    expected_classification: ExpectedClassification = ExpectedClassification()
    # Closed forms feeding the convolution identities, where available.
    theta_density: Optional[DensityFunction] = None
    r_density: Optional[DensityFunction] = None
    r_survival: Optional[DensityFunction] = None
    lambda_bar: Optional[Callable[[float], float]] = None
    rho_density: Optional[Callable[[float], float]] = None

    def describe(self) -> dict:
        ec = self.expected_classification
        return {
            "id": self.id,
            "params": self.params,
            "is_complete_bernstein": self.function.is_complete_bernstein,
            "is_in_sigma": self.function.is_in_sigma,
            "closed_R": self.closed_R is not None,
            "closed_I": self.closed_I is not None,
            "closed_kappa": self.closed_kappa is not None,
            "known_law_I": self.known_law_I,
            "known_law_R": self.known_law_R,
            "expected_classification": {
                "r_mid": ec.r_mid,
                "i_mid": ec.i_mid,
                "logR_sd": ec.logR_sd,
                "logI_sd": ec.logI_sd,
            },
        }


def _gamma_ratio(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) through log space."""
    return math.exp(special.gammaln(a) - special.gammaln(b))


def _lgamma_diff(z, a: float):
    """log Gamma(z+a) - log Gamma(z), stable for large z.

    The direct difference of two log-gammas loses ~z*eps absolute accuracy to
    cancellation, which is fatal inside long products whose tail terms are
    O(1/z).  Beyond z = 200 the Stirling form

        (z - 1/2) log1p(a/z) + a log(z+a) - a - a/(12 z (z+a)) - ...

    carries no large-term cancellation and its truncation error is far below
    double precision there.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = z <= 200.0
    if np.any(small):
        zs = z[small]
        out[small] = special.gammaln(zs + a) - special.gammaln(zs)
    if np.any(~small):
        zl = z[~small]
        out[~small] = (
            (zl - 0.5) * np.log1p(a / zl)
            + a * np.log(zl + a)
            - a
            - a / (12.0 * zl * (zl + a))
            - (1.0 / 360.0) * ((zl + a) ** -3 - zl**-3)
        )
    return out


def trivial() -> CatalogEntry:
    f = BernsteinFunction(
        name="trivial",
        phi=lambda s: np.asarray(s, dtype=float),
        phi_prime=lambda s: np.ones_like(np.asarray(s, dtype=float)),
        log_phi=lambda s: np.log(np.asarray(s, dtype=float)),
        levy=LevyTriple(drift=1.0),
        is_complete_bernstein=True,
        is_in_sigma=False,
    )
    kappa = KappaMeasure(
        name="kappa(trivial)", density=lambda x: np.ones_like(np.asarray(x, dtype=float))
    )
    return CatalogEntry(
        id="trivial",
        function=f,
        closed_R=lambda r: float(special.gamma(r)),
        closed_I=lambda r: 1.0,
        closed_kappa=kappa,
        known_law_I="constant(1)",
        known_law_R="exponential(1)",
        expected_classification=ExpectedClassification(
            i_mid=True, logR_sd=True, logI_sd=True
        ),
    )


def stable(alpha: float) -> CatalogEntry:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"stable index must lie in (0,1), got alpha={alpha}")
    coef = alpha / special.gamma(1.0 - alpha)

    f = BernsteinFunction(
        name=f"stable({alpha:g})",
        phi=lambda s: np.asarray(s, dtype=float) ** alpha,
        phi_prime=lambda s: alpha * np.asarray(s, dtype=float) ** (alpha - 1.0),
        log_phi=lambda s: alpha * np.log(np.asarray(s, dtype=float)),
        levy=LevyTriple(density=lambda x: coef * np.asarray(x, dtype=float) ** (-1.0 - alpha)),
        is_complete_bernstein=True,
        is_in_sigma=True,
    )
    kappa = KappaMeasure(
        name=f"kappa(stable:{alpha:g})",
        density=lambda x: np.full_like(np.asarray(x, dtype=float), alpha),
    )
    return CatalogEntry(
        id=f"stable:alpha={alpha:g}",
        function=f,
        params={"alpha": alpha},
        closed_R=lambda r: float(special.gamma(r)) ** alpha,
        closed_I=lambda r: float(special.gamma(r)) ** (1.0 - alpha),
        closed_kappa=kappa,
        expected_classification=ExpectedClassification(
            i_mid=True, logR_sd=True, logI_sd=True
        ),
    )


def expcp(c: float) -> CatalogEntry:
    if c <= 0:
        raise ParameterError(f"exponential jump rate must be positive, got c={c}")

    f = BernsteinFunction(
        name=f"expcp({c:g})",
        phi=lambda s: np.asarray(s, dtype=float) / (np.asarray(s, dtype=float) + c),
        phi_prime=lambda s: c / (np.asarray(s, dtype=float) + c) ** 2,
        log_phi=lambda s: -np.log1p(c / np.asarray(s, dtype=float)),
        levy=LevyTriple(density=lambda x: c * np.exp(-c * np.asarray(x, dtype=float))),
        is_complete_bernstein=True,
        is_in_sigma=False,
    )
    kappa = KappaMeasure(
        name=f"kappa(expcp:{c:g})",
        density=lambda x: -np.expm1(-c * np.asarray(x, dtype=float)),
    )
    lg_c1 = special.gammaln(c + 1.0)
    return CatalogEntry(
        id=f"expcp:c={c:g}",
        function=f,
        params={"c": c},
        closed_R=lambda r: math.exp(lg_c1 + special.gammaln(r) - special.gammaln(c + r)),
        closed_I=lambda r: math.exp(special.gammaln(c + r) - lg_c1),
        closed_kappa=kappa,
        known_law_I=f"gamma({c + 1:g})",
        known_law_R=f"beta(1,{c:g})",
        expected_classification=ExpectedClassification(
            i_mid=True, logR_sd=True, logI_sd=True
        ),
        theta_density=DensityFunction(
            kind="density_I",
            support=(0.0, math.inf),
            eval=lambda v: np.exp(c * np.log(v) - v - lg_c1),
        ),
        r_density=DensityFunction(
            kind="density_R",
            support=(0.0, 1.0),
            eval=lambda v: c * (1.0 - v) ** (c - 1.0),
        ),
        r_survival=DensityFunction(
            kind="survival_R",
            support=(0.0, 1.0),
            eval=lambda v: (1.0 - v) ** c,
        ),
        lambda_bar=lambda x: math.exp(-c * x),
    )


def _qpochhammer_log_terms(r: float, c: float, q: float, tol: float = 1e-16):
    """Log factors of the q-product for R(r); truncated when factors reach 1."""
    lq = math.log(q)
    terms = []
    for j in range(100000):
        t = (
            math.log1p(-math.exp((j + 1.0) * lq))
            + (math.log1p(-c * math.exp((j + r - 1.0) * lq)) if c > 0 else 0.0)
            - math.log1p(-math.exp((j + r) * lq))
            - (math.log1p(-c * math.exp(j * lq)) if c > 0 else 0.0)
        )
        terms.append(t)
        if abs(t) < tol:
            break
    return terms


def geomcp(c: float, q: float) -> CatalogEntry:
    if not (0.0 <= c < q < 1.0):
        raise ParameterError(f"geometric family needs 0 <= c < q < 1, got c={c}, q={q}")
    lq = math.log(q)

    def phi(s):
        s = np.asarray(s, dtype=float)
        return -np.expm1(s * lq) / (1.0 - c * np.exp((s - 1.0) * lq))

    def log_phi(s):
        s = np.asarray(s, dtype=float)
        return np.log1p(-np.exp(s * lq)) - np.log1p(-c * np.exp((s - 1.0) * lq))

    def phi_prime(s):
        s = np.asarray(s, dtype=float)
        qs = np.exp(s * lq)
        qsm = np.exp((s - 1.0) * lq)
        dlog = -lq * (qs / (1.0 - qs) - c * qsm / (1.0 - c * qsm))
        return phi(s) * dlog

    # Jump measure: geometric weights on the lattice -n log q.
    jump_atoms = []
    n = 1
    while True:
        mass = (c / q) ** (n - 1) * (1.0 - c / q)
        if mass < 1e-18 or n > 10000:
            break
        jump_atoms.append((-n * lq, mass))
        n += 1
        if c == 0.0:
            break

    f = BernsteinFunction(
        name=f"geomcp({c:g},{q:g})",
        phi=phi,
        phi_prime=phi_prime,
        log_phi=log_phi,
        levy=LevyTriple(atoms=tuple(jump_atoms)),
        is_complete_bernstein=False,
        is_in_sigma=False,
    )

    n_atoms = max(200, int(math.ceil(500.0 / -lq)))
    kappa = KappaMeasure(
        name=f"kappa(geomcp:{c:g},{q:g})",
        atoms=tuple(
            (-n * lq, -lq * (1.0 - (c / q) ** n)) for n in range(1, n_atoms + 1)
        ),
    )

    def closed_R(r: float) -> float:
        return math.exp(sum(_qpochhammer_log_terms(r, c, q)))

    def closed_I(r: float) -> float:
        return math.exp(special.gammaln(r) - sum(_qpochhammer_log_terms(r, c, q)))

    return CatalogEntry(
        id=f"geomcp:c={c:g},q={q:g}",
        function=f,
        params={"c": c, "q": q},
        closed_R=closed_R,
        closed_I=closed_I,
        closed_kappa=kappa,
        expected_classification=ExpectedClassification(
            i_mid=False, logR_sd=False, logI_sd=False
        ),
    )


def _volterra_density() -> Callable:
    """k(x) = integral_0^inf exp(l log x - log Gamma(l+1) - x) dl, in (0,1)."""

    def k_scalar(x: float) -> float:
        if x <= 0.0:
            return 0.0
        lnx = math.log(x)
        upper = max(50.0, 10.0 * x)
        val, _ = integrate.quad(
            lambda l: math.exp(l * lnx - special.gammaln(l + 1.0) - x),
            0.0,
            upper,
            limit=200,
            points=(min(x, 0.9 * upper),),
        )
        return val

    return np.vectorize(k_scalar, otypes=[float])


def gamma_process() -> CatalogEntry:
    f = BernsteinFunction(
        name="gamma",
        phi=lambda s: np.log1p(np.asarray(s, dtype=float)),
        phi_prime=lambda s: 1.0 / (1.0 + np.asarray(s, dtype=float)),
        log_phi=lambda s: np.log(np.log1p(np.asarray(s, dtype=float))),
        levy=LevyTriple(
            density=lambda x: np.exp(-np.asarray(x, dtype=float))
            / np.asarray(x, dtype=float)
        ),
        is_complete_bernstein=True,
        is_in_sigma=False,
    )
    kappa = KappaMeasure(name="kappa(gamma)", density=_volterra_density())
    return CatalogEntry(
        id="gamma",
        function=f,
        closed_kappa=kappa,
        expected_classification=ExpectedClassification(
            i_mid=True, logR_sd=True, logI_sd=True
        ),
    )


def by451(alpha: float, c: float) -> CatalogEntry:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0,1), got {alpha}")
    if c <= 1.0:
        raise ParameterError(f"this family needs c > 1, got c={c}")
    ln_alpha = math.log(alpha)

    def log_phi(s):
        s = np.asarray(s, dtype=float)
        return ln_alpha + np.log(s) - _lgamma_diff(alpha * (s - 1.0 + c), alpha)

    def phi(s):
        return np.exp(log_phi(s))

    def phi_prime(s):
        s = np.asarray(s, dtype=float)
        dlog = (
            1.0 / s
            + alpha * special.digamma(alpha * (s - 1.0 + c))
            - alpha * special.digamma(alpha * (s + c))
        )
        return phi(s) * dlog

    inv_gamma_alpha = 1.0 / special.gamma(alpha)

    def levy_density(x):
        x = np.asarray(x, dtype=float)
        base = -np.expm1(-x / alpha)
        return (
            inv_gamma_alpha
            * np.exp(-(c - 1.0) * x)
            * base ** (alpha - 2.0)
            * ((c - 1.0) * base + (1.0 - alpha) / alpha * np.exp(-x / alpha))
        )

    def kappa_density(x):
        x = np.asarray(x, dtype=float)
        return 1.0 - np.exp((1.0 - c) * x) * np.expm1(-x) / np.expm1(-x / alpha)

    f = BernsteinFunction(
        name=f"by451({alpha:g},{c:g})",
        phi=phi,
        phi_prime=phi_prime,
        log_phi=log_phi,
        levy=LevyTriple(density=levy_density),
        is_complete_bernstein=True,
        is_in_sigma=False,
    )
    lg_ac = special.gammaln(alpha * c)
    return CatalogEntry(
        id=f"by451:alpha={alpha:g},c={c:g}",
        function=f,
        params={"alpha": alpha, "c": c},
        closed_R=lambda r: math.exp(
            (r - 1.0) * ln_alpha
            + special.gammaln(r)
            + lg_ac
            - special.gammaln(alpha * (r - 1.0 + c))
        ),
        closed_I=lambda r: math.exp(
            (1.0 - r) * ln_alpha + special.gammaln(alpha * (r - 1.0 + c)) - lg_ac
        ),
        closed_kappa=KappaMeasure(name=f"kappa(by451:{alpha:g},{c:g})", density=kappa_density),
        known_law_I=f"{1.0 / alpha:g}*gamma({alpha * c:g})^{alpha:g}",
        expected_classification=ExpectedClassification(i_mid=True, logI_sd=True),
    )


def by452(alpha: float, b: float, c: float) -> CatalogEntry:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0,1), got {alpha}")
    if not 1.0 < b <= c:
        raise ParameterError(f"this family needs 1 < b <= c, got b={b}, c={c}")

    def log_phi(s):
        s = np.asarray(s, dtype=float)
        return np.log(s) - np.log(b + s - 1.0) + _lgamma_diff(alpha * (s - 1.0 + c), alpha)

    def phi(s):
        return np.exp(log_phi(s))

    def phi_prime(s):
        s = np.asarray(s, dtype=float)
        dlog = (
            1.0 / s
            - 1.0 / (s + b - 1.0)
            + alpha * special.digamma(alpha * (s + c))
            - alpha * special.digamma(alpha * (s - 1.0 + c))
        )
        return phi(s) * dlog

    def kappa_density(x):
        x = np.asarray(x, dtype=float)
        return -np.expm1(-(b - 1.0) * x) + np.exp(-(c - 1.0) * x) * np.expm1(
            -x
        ) / np.expm1(-x / alpha)

    f = BernsteinFunction(
        name=f"by452({alpha:g},{b:g},{c:g})",
        phi=phi,
        phi_prime=phi_prime,
        log_phi=log_phi,
        is_complete_bernstein=True,
        is_in_sigma=False,
    )
    lg_ac = special.gammaln(alpha * c)
    lg_b = special.gammaln(b)

    def closed_R(r: float) -> float:
        return math.exp(
            math.log(b - 1.0)
            - lg_ac
            + special.gammaln(r)
            + special.gammaln(b - 1.0)
            - special.gammaln(r + b - 1.0)
            + special.gammaln(alpha * (r - 1.0 + c))
        )

    def closed_I(r: float) -> float:
        return math.exp(
            lg_ac
            + special.gammaln(r - 1.0 + b)
            - lg_b
            - special.gammaln(alpha * (r - 1.0 + c))
        )

    return CatalogEntry(
        id=f"by452:alpha={alpha:g},b={b:g},c={c:g}",
        function=f,
        params={"alpha": alpha, "b": b, "c": c},
        closed_R=closed_R,
        closed_I=closed_I,
        closed_kappa=KappaMeasure(
            name=f"kappa(by452:{alpha:g},{b:g},{c:g})", density=kappa_density
        ),
        known_law_R=f"beta(1,{b - 1.0:g})*gamma({alpha * c:g})^{alpha:g}",
        expected_classification=ExpectedClassification(i_mid=True),
    )


def rou(alpha: float, mu: float) -> CatalogEntry:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0,1), got {alpha}")
    if mu <= 0:
        raise ParameterError(f"mu must be positive, got {mu}")
    two_mu = 2.0 * mu

    def log_phi(s):
        s = np.asarray(s, dtype=float)
        return _lgamma_diff(s / two_mu, alpha)

    def phi(s):
        return np.exp(log_phi(s))

    def phi_prime(s):
        s = np.asarray(s, dtype=float)
        dlog = (special.digamma(s / two_mu + alpha) - special.digamma(s / two_mu)) / two_mu
        return phi(s) * dlog

    lev_coef = two_mu * alpha / special.gamma(1.0 - alpha)

    def levy_density(x):
        x = np.asarray(x, dtype=float)
        return lev_coef * np.exp(-two_mu * alpha * x) * (-np.expm1(-two_mu * x)) ** (
            -1.0 - alpha
        )

    def kappa_density(x):
        x = np.asarray(x, dtype=float)
        return np.expm1(-two_mu * alpha * x) / np.expm1(-two_mu * x)

    f = BernsteinFunction(
        name=f"rou({alpha:g},{mu:g})",
        phi=phi,
        phi_prime=phi_prime,
        log_phi=log_phi,
        levy=LevyTriple(density=levy_density),
        is_complete_bernstein=True,
        is_in_sigma=False,
    )

    case_a = abs(two_mu * alpha - 1.0) < 1e-12
    case_b = abs(two_mu * (1.0 - alpha) - 1.0) < 1e-12
    closed_R = closed_I = None
    known_law_I = known_law_R = None
    rho_density = None
    r_density = None
    logR_sd_expected: Optional[bool] = None
    if case_a:
        lg_a = special.gammaln(alpha)
        closed_R = lambda r: math.exp(special.gammaln(alpha * r) - lg_a)
        closed_I = lambda r: math.exp(lg_a + special.gammaln(r) - special.gammaln(alpha * r))
        known_law_R = f"gamma({alpha:g})^{alpha:g}"
        norm = 1.0 / (alpha * special.gamma(alpha))
        rho_density = lambda x: norm * (-np.expm1(-np.asarray(x, dtype=float) / alpha)) ** (
            alpha - 1.0
        )
        r_density = DensityFunction(
            kind="density_R",
            support=(0.0, math.inf),
            eval=lambda v: norm * np.exp(-np.asarray(v, dtype=float) ** (1.0 / alpha)),
        )
        logR_sd_expected = True
    elif case_b:
        beta = 1.0 - alpha
        closed_I = lambda r: math.exp(
            (1.0 - r) * math.log(beta) + special.gammaln(beta * (r - 1.0) + 1.0)
        )
        closed_R = lambda r: math.exp(
            (r - 1.0) * math.log(beta)
            + special.gammaln(r)
            - special.gammaln(beta * (r - 1.0) + 1.0)
        )
        known_law_I = f"{1.0 / beta:.12g}*exponential(1)^{beta:.12g}"
        known_law_R = f"{beta:.12g}*posstable({beta:.12g})^{alpha - 1.0:.12g}"
        logR_sd_expected = True

    return CatalogEntry(
        id=f"rou:alpha={alpha:g},mu={mu:g}",
        function=f,
        params={"alpha": alpha, "mu": mu},
        closed_R=closed_R,
        closed_I=closed_I,
        closed_kappa=KappaMeasure(name=f"kappa(rou:{alpha:g},{mu:g})", density=kappa_density),
        known_law_I=known_law_I,
        known_law_R=known_law_R,
        expected_classification=ExpectedClassification(
            i_mid=True, logI_sd=True, logR_sd=logR_sd_expected
        ),
        rho_density=rho_density,
        r_density=r_density,
    )


_BUILDERS = {
    "trivial": (trivial, ()),
    "stable": (stable, ("alpha",)),
    "expcp": (expcp, ("c",)),
    "geomcp": (geomcp, ("c", "q")),
    "gamma": (gamma_process, ()),
    "by451": (by451, ("alpha", "c")),
    "by452": (by452, ("alpha", "b", "c")),
    "rou": (rou, ("alpha", "mu")),
}


def parse_entry_id(entry_id: str) -> tuple[str, dict]:
    """Split "family:key=value,..." into the family name and float parameters."""
    family, _, paramstr = entry_id.partition(":")
    family = family.strip()
    if family not in _BUILDERS:
        raise ParameterError(
            f"unknown family {family!r}; known: {', '.join(sorted(_BUILDERS))}"
        )
    params: dict = {}
    if paramstr:
        for piece in paramstr.split(","):
            key, _, value = piece.partition("=")
            if not value:
                raise ParameterError(f"malformed parameter {piece!r} in {entry_id!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError as exc:
                raise ParameterError(f"non-numeric parameter in {entry_id!r}") from exc
    return family, params


def get_entry(entry_id: str) -> CatalogEntry:
    """Build the catalog entry addressed by an id string."""
    family, params = parse_entry_id(entry_id)
    builder, names = _BUILDERS[family]
    missing = [n for n in names if n not in params]
    extra = [k for k in params if k not in names]
    if missing:
        raise ParameterError(f"{entry_id!r} is missing parameters {missing}")
    if extra:
        raise ParameterError(f"{entry_id!r} has unknown parameters {extra}")
    return builder(**params)


def catalog() -> list[CatalogEntry]:
    """The default set of entries exercised by the verification suite."""
    mu_a = 1.0 / 0.6  # 2*mu*alpha = 1 at alpha = 0.3; 2*mu*(1-alpha) = 1 at 0.7
    return [
        trivial(),
        stable(0.3),
        stable(0.5),
        stable(0.7),
        expcp(1.0),
        expcp(2.0),
        geomcp(0.0, 0.5),
        geomcp(0.1, 0.5),
        gamma_process(),
        by451(0.5, 2.0),
        by452(0.5, 1.5, 2.0),
        rou(0.3, mu_a),
        rou(0.7, mu_a),
        rou(0.5, 1.0),
        rou(0.4, 1.0),
    ]
