"""Exponential approximations to the centrifugal barrier ``1/r**2``.

The improved scheme replaces ``1/r**2`` by ``delta**2 * (d0 + v + v**2)``
with ``v = exp(-delta*r) / (1 - exp(-delta*r))``.  The constant ``d0`` is
chosen so that the approximation is exact at ``delta*r = gamma``; setting
``d0 = 0`` recovers the Greene-Aldrich ("usual") form.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Scale ``gamma = r0 * delta`` at which the improved form is matched.
GAMMA = 0.4990429999
#: Shift constant belonging to :data:`GAMMA`, as printed to 16 digits.
D0 = 0.0823058167837972


class Scheme(str, enum.Enum):
    PRESENT = "present"
    USUAL = "usual"


def d0_of_gamma(gamma):
    """Shift constant making the approximation exact at ``delta*r = gamma``."""
    if not (gamma > 0 and math.isfinite(gamma)):
        raise DomainError(f"gamma must be positive and finite, got {gamma!r}")
    q = math.expm1(gamma)
    return 1.0 / gamma**2 - 1.0 / q - 1.0 / q**2


@dataclass(frozen=True)
class SchemeParams:
    kind: Scheme
    d0: float
    gamma: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Scheme(self.kind))
        if self.kind is Scheme.USUAL:
            if self.d0 != 0.0:
                raise DomainError("the usual scheme has d0 = 0 exactly")
        else:
            if not (self.d0 > 0 and self.gamma is not None and self.gamma > 0):
                raise DomainError("the present scheme needs d0 > 0 and gamma > 0")

    @classmethod
    def present(cls, gamma=GAMMA, d0=D0):
        return cls(Scheme.PRESENT, d0, gamma)

    @classmethod
    def usual(cls):
        return cls(Scheme.USUAL, 0.0, None)

    @classmethod
    def from_name(cls, name):
        if Scheme(name) is Scheme.PRESENT:
            return cls.present()
        return cls.usual()

    def consistency_residual(self):
        """``d0 - d0_of_gamma(gamma)``; zero for the usual scheme."""
        if self.gamma is None:
            return 0.0
        return self.d0 - d0_of_gamma(self.gamma)


PRESENT = SchemeParams.present()
USUAL = SchemeParams.usual()


def _check_positive(x, name):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DomainError(f"{name} must be positive and finite")
    return x


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


def v_of(delta_r):
    """``exp(-x) / (1 - exp(-x))`` evaluated as ``1/expm1(x)``.

    Accepts scalars or arrays; non-positive or non-finite input raises
    :class:`DomainError`.
    """
    x = _check_positive(delta_r, "delta_r")
    with np.errstate(over="ignore"):
        return _scalar_or_array(1.0 / np.expm1(x))


def usual_kernel(delta_r):
    """The closed form ``exp(x) / (exp(x) - 1)**2`` of ``v + v**2``."""
    x = _check_positive(delta_r, "delta_r")
    with np.errstate(over="ignore"):
        return _scalar_or_array(1.0 / (np.expm1(x) * -np.expm1(-x)))


def approx_centrifugal(r, delta, scheme=PRESENT):
    """Approximate ``1/r**2`` as ``delta**2 * (d0 + v + v**2)``."""
    r = _check_positive(r, "r")
    delta = float(_check_positive(delta, "delta"))
    v = np.asarray(v_of(delta * r))
    return _scalar_or_array(delta**2 * (scheme.d0 + v + v * v))


def slope_residual(gamma):
    """Residual of the first-order matching condition at ``gamma``.

    Matching the linear term of ``(1 + x)**-2`` about ``x = 0`` requires
    ``gamma**3 * exp(g) * (exp(g) + 1) / (exp(g) - 1)**3 = 2``; the value
    returned is the left side minus 2.
    """
    if not (gamma > 0 and math.isfinite(gamma)):
        raise DomainError(f"gamma must be positive and finite, got {gamma!r}")
    q = math.expm1(gamma)
    return gamma**3 * (q + 1.0) * (q + 2.0) / q**3 - 2.0


@dataclass(frozen=True)
class GammaSolution:
    gamma: float
    d0: float
    residual: float
    bracketed: bool


def solve_gamma_d0(tolerance=1e-12, upper=4.0, n_scan=400):
    """Look for the root of :func:`slope_residual` on ``(0, upper]``.

    A sign change on the scan grid is refined by bisection followed by
    secant steps until ``|residual| <= tolerance``.  Without a sign change
    the published constants are returned together with their residual and
    ``bracketed=False``.
    """
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")
    grid = np.linspace(upper / n_scan, upper, n_scan)
    values = [slope_residual(g) for g in grid]
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0.0:
            return GammaSolution(float(a), d0_of_gamma(a), 0.0, True)
        if fa * fb < 0:
            break
    else:
        return GammaSolution(GAMMA, D0, slope_residual(GAMMA), False)

    a, b = float(a), float(b)
    for _ in range(30):
        m = 0.5 * (a + b)
        fm = slope_residual(m)
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    x0, x1 = a, b
    f0, f1 = fa, fb
    for _ in range(50):
        if abs(f1) <= tolerance or f1 == f0:
            break
        x0, x1 = x1, x1 - f1 * (x1 - x0) / (f1 - f0)
        f0, f1 = f1, slope_residual(x1)
    return GammaSolution(x1, d0_of_gamma(x1), f1, True)


def limit_consistency_check(delta_values, r, scheme=PRESENT):
    """Relative error ``|approx * r**2 - 1|`` for each screening value."""
    r = float(_check_positive(r, "r"))
    return [abs(approx_centrifugal(r, d, scheme) * r * r - 1.0) for d in delta_values]


@dataclass(frozen=True)
class CentrifugalCurve:
    delta: float
    delta_r: np.ndarray
    exact: np.ndarray
    approx: np.ndarray

    @property
    def samples(self):
        return list(zip(self.delta_r.tolist(), self.exact.tolist(), self.approx.tolist()))

    def max_relative_gap(self):
        return float(np.max(np.abs(self.approx - self.exact) / self.exact))


FIGURE1_DELTAS = (0.05, 0.10, 0.15, 0.20, 0.25)


def figure1_data(deltas=FIGURE1_DELTAS, x_range=(0.05, 2.0), n_points=400, scheme=PRESENT):
    """Sample ``1/r**2`` and its approximation against ``x = delta*r``.

    The approximation is evaluated through the closed form
    ``delta**2 * (d0 + exp(x)/(exp(x) - 1)**2)``.
    """
    deltas = list(deltas)
    if not deltas:
        raise ValueError("at least one screening value is required")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    lo, hi = x_range
    if not 0 < lo < hi:
        raise ValueError("x_range must satisfy 0 < min < max")
    x = np.linspace(lo, hi, n_points)
    curves = []
    for d in deltas:
        d = float(_check_positive(d, "delta"))
        exact = d * d / (x * x)
        approx = d * d * (scheme.d0 + usual_kernel(x))
        curves.append(CentrifugalCurve(d, x, exact, approx))
    return curves
