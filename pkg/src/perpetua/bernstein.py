"""Bernstein functions of subordinators and their Levy data.

A subordinator with one-dimensional laws E[exp(-s xi_l)] = exp(-l Phi(s)) is
described here by its exponent

    Phi(s) = a*s + integral_(0,inf) (1 - exp(-s*x)) lambda(dx),   Phi(0) = 0,

with drift a >= 0 and a Levy measure lambda satisfying
integral (x ^ 1) lambda(dx) < infinity.  ``BernsteinFunction`` wraps a
closed-form evaluator for Phi together with optional structural data: the
Levy triple, a closed-form derivative, a log-scale evaluator (needed when
Phi is a ratio of Gamma functions and the plain value would overflow at
large arguments), and structural flags.

The conjugate Phi*(s) = s / Phi(s) and the fractional powers Phi^alpha
(alpha in (0,1]) are again Bernstein functions; both constructions are
provided as operations returning new ``BernsteinFunction`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError

__all__ = [
    "LevyTriple",
    "BernsteinFunction",
    "eval_phi",
    "eval_phi_from_levy",
    "conjugate",
    "power_subordinate",
    "check_phi_shape",
]


@dataclass(frozen=True)
class LevyTriple:
    """Drift plus jump measure of a subordinator.

    ``density`` is the absolutely continuous part of the Levy measure
    (a vectorized map x > 0 -> density value); ``atoms`` is a tuple of
    (location, mass) pairs with strictly positive locations.
    """

    drift: float = 0.0
    density: Optional[Callable[[np.ndarray], np.ndarray]] = None
    atoms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.drift < 0:
            raise DomainError(f"drift must be >= 0, got {self.drift}")
        for x, m in self.atoms:
            if x <= 0:
                raise DomainError(f"atom location must be > 0, got {x}")
            if m <= 0:
                raise DomainError(f"atom mass must be > 0, got {m}")

    def tail(self, x: float) -> float:
        """lambda((x, inf)): tail mass of the jump measure beyond x."""
        total = 0.0
        if self.density is not None:
            val, _ = integrate.quad(self.density, x, np.inf, limit=200)
            total += val
        total += sum(m for loc, m in self.atoms if loc > x)
        return total

    def size_biased(self, x: np.ndarray) -> np.ndarray:
        """Density of x * lambda(dx) where the jump measure has a density."""
        if self.density is None:
            raise DomainError("size-biased density needs an absolutely continuous part")
        x = np.asarray(x, dtype=float)
        return x * self.density(x)

    def check_integrability(self, tol: float = 1e-8) -> float:
        """Numerically verify integral (x ^ 1) lambda(dx) < inf; returns the value."""
        total = sum(min(x, 1.0) * m for x, m in self.atoms)
        if self.density is not None:
            near, near_err = integrate.quad(
                lambda x: x * self.density(x), 0.0, 1.0, limit=400
            )
            far, far_err = integrate.quad(self.density, 1.0, np.inf, limit=400)
            if not np.isfinite(near + far):
                raise QuadratureError(
                    "integral (x ^ 1) lambda(dx) diverges", partial_value=total
                )
            if near_err + far_err > max(tol, 1e-6 * abs(near + far)):
                raise QuadratureError(
                    "integrability quadrature did not converge",
                    partial_value=total + near + far,
                    err_estimate=near_err + far_err,
                )
            total += near + far
        return total


@dataclass(frozen=True)
class BernsteinFunction:
    """Closed-form Bernstein function with optional structure.

    ``phi`` must vectorize over numpy arrays and satisfy phi(0) = 0 exactly.
    ``log_phi`` (optional) evaluates log Phi(s) for s > 0 without overflow.
    Flags use None for "unknown"; classification code never promotes an
    unknown flag to a decision.
    """

    name: str
    phi: Callable[[np.ndarray], np.ndarray]
    phi_prime: Optional[Callable[[np.ndarray], np.ndarray]] = None
    log_phi: Optional[Callable[[np.ndarray], np.ndarray]] = None
    levy: Optional[LevyTriple] = None
    is_complete_bernstein: Optional[bool] = None
    is_in_sigma: Optional[bool] = None
    # Recorded value at 0.  Proper Bernstein functions are null at 0; the
    # conjugate construction stores the limit s -> 0 of s/Phi(s) here, which
    # may be positive (then the conjugate is not itself in the class).
    value_at_zero: float = 0.0

    def __call__(self, s):
        return eval_phi(self, s)

    def prime(self, s):
        """Phi'(s) for s > 0, central differences when no closed form is set."""
        s_arr = np.asarray(s, dtype=float)
        if np.any(s_arr <= 0):
            raise DomainError("Phi' is evaluated for s > 0 only")
        if self.phi_prime is not None:
            out = np.asarray(self.phi_prime(s_arr), dtype=float)
        else:
            h = np.maximum(1e-6, 1e-6 * s_arr)
            out = (self.phi(s_arr + h) - self.phi(np.maximum(s_arr - h, 0.0))) / (
                s_arr + h - np.maximum(s_arr - h, 0.0)
            )
        return out if out.ndim else float(out)

    def logphi(self, s):
        """log Phi(s) for s > 0; falls back to log of the plain evaluator."""
        s_arr = np.asarray(s, dtype=float)
        if np.any(s_arr <= 0):
            raise DomainError("log Phi is evaluated for s > 0 only")
        if self.log_phi is not None:
            out = np.asarray(self.log_phi(s_arr), dtype=float)
        else:
            out = np.log(np.asarray(self.phi(s_arr), dtype=float))
        return out if out.ndim else float(out)

    def log_deriv(self, s):
        """Phi'(s)/Phi(s), the Laplace transform of the kappa measure."""
        return self.prime(s) / eval_phi(self, s)

    def with_flags(self, **kwargs) -> "BernsteinFunction":
        return replace(self, **kwargs)


def eval_phi(f: BernsteinFunction, s) -> float:
    """Evaluate Phi(s) for s >= 0; exactly 0 at s = 0."""
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0):
        raise DomainError(f"Phi is defined for s >= 0, got {s}")
    out = np.where(s_arr == 0.0, 0.0, f.phi(np.where(s_arr == 0.0, 1.0, s_arr)))
    if out.ndim == 0:
        return float(out)
    return out


def eval_phi_from_levy(triple: LevyTriple, s: float, tol: float = 1e-9) -> float:
    """Quadrature of a*s + integral (1-exp(-s*x)) lambda(dx) + atom sum.

    The jump integral is split at x = 1: the possibly singular part on (0,1]
    is integrated with an adaptive rule that tolerates an integrable endpoint
    singularity, the tail on (1,inf) with the infinite-interval transform.
    Raises QuadratureError (carrying the partial value) when the combined
    error estimate exceeds ``tol``.
    """
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    if s == 0:
        return 0.0
    total = triple.drift * s
    err = 0.0
    for x, m in triple.atoms:
        total += m * -np.expm1(-s * x)
    if triple.density is not None:

        def integrand(x):
            return -np.expm1(-s * x) * triple.density(x)

        near, near_err = integrate.quad(integrand, 0.0, 1.0, limit=400)
        far, far_err = integrate.quad(integrand, 1.0, np.inf, limit=400)
        total += near + far
        err = near_err + far_err
    if err > max(tol, 1e-10 * abs(total)):
        raise QuadratureError(
            f"Levy quadrature error {err:.3e} above tol {tol:.3e} at s={s}",
            partial_value=total,
            err_estimate=err,
        )
    return total


def _limit_at_zero(f: BernsteinFunction) -> float:
    """Numeric limit of s/Phi(s) as s -> 0+.

    Sampled on a decreasing geometric grid; the sequence of values of a
    completely monotone s/Phi is monotone near 0, so the last sample plus a
    one-step extrapolation is an adequate record of the limit.
    """
    svals = np.array([1e-4, 1e-6, 1e-8])
    vals = svals / np.asarray(f.phi(svals), dtype=float)
    d1, d2 = vals[1] - vals[0], vals[2] - vals[1]
    if abs(d2) < 1e-14 * max(1.0, abs(vals[2])):
        return float(vals[2])
    ratio = d2 / d1 if d1 != 0 else 0.0
    if 0 < ratio < 1:
        return float(vals[2] + d2 * ratio / (1 - ratio))
    return float(vals[2])


def conjugate(f: BernsteinFunction) -> BernsteinFunction:
    """The conjugate s -> s/Phi(s), with its limit at 0 recorded.

    When Phi lies in the symmetry class (flag True) the conjugate is again a
    Bernstein function null at 0 and inherits the flag; otherwise the limit
    at 0 decides: a positive limit rules membership out.
    """
    limit0 = _limit_at_zero(f)

    def phi_star(s):
        s = np.asarray(s, dtype=float)
        return s / np.asarray(f.phi(s), dtype=float)

    def phi_star_prime(s):
        s = np.asarray(s, dtype=float)
        phi = np.asarray(f.phi(s), dtype=float)
        return (phi - s * np.asarray(f.prime(s), dtype=float)) / phi**2

    def log_phi_star(s):
        s = np.asarray(s, dtype=float)
        return np.log(s) - np.asarray(f.logphi(s), dtype=float)

    if f.is_in_sigma is True:
        sigma_flag = True
    elif limit0 > 1e-8:
        sigma_flag = False
    else:
        sigma_flag = None

    return BernsteinFunction(
        name=f"conjugate({f.name})",
        phi=phi_star,
        phi_prime=phi_star_prime,
        log_phi=log_phi_star,
        is_in_sigma=sigma_flag,
        value_at_zero=limit0,
    )


def power_subordinate(f: BernsteinFunction, alpha: float) -> BernsteinFunction:
    """Phi^alpha for alpha in (0,1]: the exponent of a stable-subordinated process."""
    if not 0 < alpha <= 1:
        raise DomainError(f"power must lie in (0,1], got {alpha}")
    if alpha == 1:
        return f

    def phi_pow(s):
        return np.asarray(f.phi(s), dtype=float) ** alpha

    def phi_pow_prime(s):
        s = np.asarray(s, dtype=float)
        phi = np.asarray(f.phi(s), dtype=float)
        return alpha * phi ** (alpha - 1) * np.asarray(f.prime(s), dtype=float)

    def log_phi_pow(s):
        return alpha * np.asarray(f.logphi(s), dtype=float)

    return BernsteinFunction(
        name=f"{f.name}^{alpha:g}",
        phi=phi_pow,
        phi_prime=phi_pow_prime,
        log_phi=log_phi_pow,
    )


def check_phi_shape(f: BernsteinFunction, grid=None, rel_tol: float = 1e-9) -> bool:
    """Necessary-condition check: Phi nondecreasing and concave on a grid.

    First differences must be >= 0 and second differences <= 0 up to
    ``rel_tol`` relative to the local scale.  This can refute but never
    certify membership in the Bernstein class.
    """
    if grid is None:
        grid = np.exp(np.linspace(np.log(1e-3), np.log(50.0), 120))
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(f.phi(grid), dtype=float)
    scale = np.max(np.abs(vals))
    d1 = np.diff(vals)
    if np.any(d1 < -rel_tol * scale):
        return False
    # Concavity in the divided-difference sense; the grid may be nonuniform.
    slopes = d1 / np.diff(grid)
    return not np.any(np.diff(slopes) > rel_tol * scale)
