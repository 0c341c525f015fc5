"""Special functions needed by the closed-form wavefunctions.

Everything that involves Gamma functions of large argument is carried in
logarithms; Pochhammer products are accumulated term by term.
"""

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import DomainError


def ln_gamma(x):
    """Natural logarithm of ``Gamma(x)`` for ``x > 0``."""
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"ln_gamma needs a positive finite argument, got {x!r}")
    return math.lgamma(x)


def ln_beta(x, y):
    if not (x > 0 and y > 0):
        raise DomainError(f"beta needs positive arguments, got ({x!r}, {y!r})")
    return ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)


def beta(x, y):
    """``Gamma(x) Gamma(y) / Gamma(x + y)`` computed through logarithms."""
    return math.exp(ln_beta(x, y))


@dataclass(frozen=True)
class JacobiParams:
    n: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"Jacobi degree must be a nonnegative integer, got {self.n!r}")
        if not (self.a > -1 and self.b > -1):
            raise DomainError(f"Jacobi parameters must exceed -1, got ({self.a!r}, {self.b!r})")
        object.__setattr__(self, "n", int(self.n))


def jacobi_eval(p, x):
    """Evaluate ``P_n^{(a,b)}(x)`` by the three-term recurrence in degree.

    ``x`` may be a scalar or an array.
    """
    n, a, b = p.n, p.a, p.b
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return _out(p0)
    p1 = 0.5 * (a - b + (a + b + 2.0) * x)
    ab = a + b
    for k in range(2, n + 1):
        c = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (a * a - b * b)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c
        p0, p1 = p1, ((a2 + a3 * x) * p1 - a4 * p0) / a1
    return _out(p1)


def jacobi_sum(p, x):
    """Evaluate ``P_n^{(a,b)}(x)`` from its explicit binomial sum.

    ``sum_k C(n+a, k) C(n+b, n-k) ((x-1)/2)**(n-k) ((x+1)/2)**k`` with the
    binomials written through Gamma functions.  Slower than
    :func:`jacobi_eval` and used to cross-check it.
    """
    n, a, b = p.n, p.a, p.b
    x = np.asarray(x, dtype=float)
    lead = math.lgamma(n + a + 1) + math.lgamma(n + b + 1)
    total = np.zeros_like(x)
    for k in range(n + 1):
        ln_c = lead - (
            math.lgamma(k + 1)
            + math.lgamma(n + a - k + 1)
            + math.lgamma(b + k + 1)
            + math.lgamma(n - k + 1)
        )
        total = total + math.exp(ln_c) * ((x - 1) / 2) ** (n - k) * ((x + 1) / 2) ** k
    return _out(total)


def jacobi_at_one(p):
    """``P_n^{(a,b)}(1) = Gamma(n+a+1) / (n! Gamma(a+1))``."""
    return math.exp(math.lgamma(p.n + p.a + 1) - math.lgamma(p.n + 1) - math.lgamma(p.a + 1))


def hyp2f1_terminating(n, b, c, x):
    """``2F1(-n, b; c; x)`` as the finite sum over ``k = 0..n``.

    Each term is obtained from the previous one by the ratio
    ``(k - n)(b + k) / ((c + k)(k + 1)) * x``.  The alternating sum is
    accumulated in ``np.longdouble`` to limit cancellation near zeros.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"terminating series needs integer n >= 0, got {n!r}")
    n = int(n)
    for k in range(n):
        if c + k == 0:
            raise DomainError(f"2F1 pole: c + {k} = 0 before termination")
    x = np.asarray(x, dtype=np.longdouble)
    b, c = np.longdouble(b), np.longdouble(c)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(n):
        term = term * ((k - n) * (b + k) / ((c + k) * (k + 1))) * x
        total = total + term
    return _out(total.astype(float))


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


class RuleKind(str, enum.Enum):
    LEGENDRE = "legendre"
    JACOBI = "jacobi"


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule on ``(0, 1)``.

    For ``kind == JACOBI`` the weights already contain
    ``s**alpha * (1 - s)**beta``; for Legendre the weight is 1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: RuleKind
    alpha: float = 0.0
    beta: float = 0.0

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_rule(m, kind=RuleKind.LEGENDRE, alpha=0.0, beta=0.0):
    """Gauss-Legendre or Gauss-Jacobi rule with ``m`` nodes mapped to (0, 1)."""
    if int(m) != m or m < 1:
        raise ValueError(f"a quadrature rule needs at least one node, got {m!r}")
    kind = RuleKind(kind)
    if kind is RuleKind.LEGENDRE:
        return _legendre(int(m))
    if not (alpha > -1 and beta > -1):
        raise DomainError("Jacobi weight exponents must exceed -1")
    return _jacobi(int(m), float(alpha), float(beta))


@lru_cache(maxsize=64)
def _legendre(m):
    t, w = roots_legendre(m)
    nodes = 0.5 * (t + 1.0)
    weights = 0.5 * w
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights, RuleKind.LEGENDRE)


@lru_cache(maxsize=256)
def _jacobi(m, alpha, beta):
    # s = (1 + t)/2 turns s**alpha (1-s)**beta into scipy's (1-t)**beta (1+t)**alpha.
    t, w = roots_jacobi(m, beta, alpha)
    order = np.argsort(t)
    nodes = 0.5 * (t[order] + 1.0)
    # Rescale to the exact total mass so large exponents cannot distort it.
    rel = w[order] / np.sum(w)
    weights = rel * beta_mass(alpha, beta)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights, RuleKind.JACOBI, alpha, beta)


def beta_mass(alpha, beta_):
    """``int_0^1 s**alpha (1-s)**beta ds``."""
    return beta(alpha + 1.0, beta_ + 1.0)
