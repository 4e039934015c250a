"""The symmetry class: conjugate pairs and the perpetuity/remainder swap.

A Bernstein function Phi belongs to the symmetry class when
Phi*(s) = s/Phi(s) is again a Bernstein function null at 0.  Membership is
equivalent to the potential measure (Laplace transform 1/Phi) having the
form  rho(dx) = b delta_0(dx) + h(x) dx  with h decreasing to 0, and then

    Phi*(s) = b s - integral (1 - exp(-s x)) dh(x)
            = s * (b + integral exp(-s x) h(x) dx),

the second form by parts, needing only h values.  For conjugate pairs the
perpetuity of Phi has the law of the remainder of Phi* and vice versa, so
the two Mellin transforms must swap; ``swap_check`` measures the residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .bernstein import BernsteinFunction, conjugate
from .errors import DomainError, QuadratureError, UnsupportedError, ValidationError
from .mellin import I_product, R_product

__all__ = ["PotentialDensity", "sigma_check", "conjugate_bernstein_of_h", "swap_check"]


@dataclass(frozen=True)
class PotentialDensity:
    """Potential measure rho(dx) = b delta_0(dx) + h(x) dx."""

    point_mass_b: float
    h: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def h_at(self, x):
        if self.h is None:
            x = np.asarray(x, dtype=float)
            return np.zeros_like(x)
        return np.asarray(self.h(np.asarray(x, dtype=float)), dtype=float)

    def check_shape(self, tol: float = 1e-9) -> bool:
        """h nonincreasing on a grid and vanishing at infinity.

        Vanishing is accepted either outright (h(50) below 1e-6 * h(1)) or
        as sustained decay along 50, 500, 5000: polynomially decaying
        potential densities (the stable family) are legitimate members and
        reach 0 only slowly.
        """
        if self.h is None:
            return True
        grid = np.geomspace(1e-4, 50.0, 200)
        vals = self.h_at(grid)
        if np.any(np.diff(vals) > tol * (1.0 + np.abs(vals[:-1]))):
            return False
        h1 = float(self.h_at(1.0))
        if h1 == 0.0:
            return True
        far = self.h_at(np.array([50.0, 500.0, 5000.0]))
        if far[0] <= 1e-6 * h1:
            return True
        return bool(far[2] < far[1] < far[0] and far[2] <= 0.5 * far[0])

    def laplace(self, s: float, tol: float = 1e-7) -> float:
        """b + integral exp(-s x) h(x) dx, the transform of rho."""
        total = self.point_mass_b
        if self.h is not None:
            near, e1 = integrate.quad(
                lambda x: np.exp(-s * x) * float(self.h_at(x)), 0.0, 1.0, limit=400
            )[:2]
            far, e2 = integrate.quad(
                lambda x: np.exp(-s * x) * float(self.h_at(x)), 1.0, np.inf, limit=400
            )[:2]
            if e1 + e2 > max(tol, 1e-7 * abs(near + far)):
                raise QuadratureError(
                    "potential-density transform did not converge",
                    partial_value=total + near + far,
                    err_estimate=e1 + e2,
                )
            total += near + far
        return total


def sigma_check(entry, rho: Optional[PotentialDensity] = None,
                s_grid=(0.5, 1.0, 2.0, 5.0), rtol: float = 1e-5) -> bool:
    """Symmetry-class membership for a catalog entry.

    With a supplied potential density the transform b + L[h](s) is validated
    against 1/Phi on the grid (a mismatch means the candidate is simply not
    the potential measure of this function and raises ValidationError), and
    the decreasing-to-zero shape decides membership.  Without one, the
    entry's recorded flag is returned; an unknown flag is an error rather
    than a guess.
    """
    f = entry.function if hasattr(entry, "function") else entry
    if rho is not None:
        for s in s_grid:
            lhs = rho.laplace(s)
            rhs = 1.0 / float(f(s))
            if abs(lhs - rhs) > rtol * abs(rhs):
                raise ValidationError(
                    f"potential transform {lhs!r} != 1/Phi {rhs!r} at s={s}"
                )
        return rho.check_shape()
    if f.is_in_sigma is None:
        raise UnsupportedError(
            "no potential density supplied and no recorded symmetry flag"
        )
    return bool(f.is_in_sigma)


def conjugate_bernstein_of_h(b: float, h: PotentialDensity) -> BernsteinFunction:
    """Build Phi*(s) = b s - integral (1-exp(-sx)) dh(x) from the potential data.

    Evaluated by parts as s * (b + L[h](s)), which only requires h itself.
    Raises QuadratureError when the transform integral diverges.
    """
    if b < 0:
        raise DomainError(f"point mass must be >= 0, got {b}")
    pot = PotentialDensity(point_mass_b=b, h=h.h if isinstance(h, PotentialDensity) else h)
    # Convergence probe: the transform must be finite at a small argument.
    pot.laplace(1e-2)

    @np.vectorize
    def phi_star(s):
        if s == 0.0:
            return 0.0
        return s * pot.laplace(float(s))

    return BernsteinFunction(name="conjugate-of-potential", phi=phi_star)


def swap_check(f: BernsteinFunction, grid, tol: float = 1e-8):
    """Residuals of the Mellin swap between a function and its conjugate.

    Requires confirmed membership in the symmetry class.  For each r the
    pair (|R*(r)/I(r) - 1|, |I*(r)/R(r) - 1|) is returned, every transform
    computed through the limit products on Phi and on s/Phi(s).
    """
    if f.is_in_sigma is not True:
        raise DomainError(
            f"{f.name} is not a confirmed member of the symmetry class; "
            "the Mellin swap only holds for conjugate pairs"
        )
    star = conjugate(f)
    out = []
    for r in grid:
        r = float(r)
        res1 = abs(R_product(star, r, tol).value / I_product(f, r, tol).value - 1.0)
        res2 = abs(I_product(star, r, tol).value / R_product(f, r, tol).value - 1.0)
        out.append((r, res1, res2))
    return out
