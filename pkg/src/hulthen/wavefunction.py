"""Closed-form radial eigenfunctions of the Hulthen problem.

With ``s = exp(-delta r)`` the radial function is

    u(r) = N * s**eps * (1 - s)**(l+1) * P_n^{(2 eps, 2l+1)}(1 - 2s).

Magnitudes are carried as logarithms until output because ``s**eps``
underflows for the large ``eps`` of weakly screened low states.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .centrifugal import PRESENT, USUAL
from .errors import DomainError, NotNormalizable
from .spectrum import PhysicalSystem, QuantumNumbers, energy, epsilon_nl, threshold_delta


def _require_normalizable(sys, q):
    eps = epsilon_nl(sys, q)
    if not eps > 0:
        raise NotNormalizable(
            f"{q.label} at delta={sys.delta:g} has eps={eps:.6g}; a normalizable state needs eps > 0"
        )
    return eps


def _polynomial(q, eps, s, method):
    if method == "jacobi":
        return specfun.jacobi_eval(specfun.JacobiParams(q.n, 2 * eps, 2 * q.l + 1), 1.0 - 2.0 * s)
    if method == "hyp2f1":
        # P_n^{(a,b)}(1-2s) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; s)
        a = 2 * eps
        lead = math.exp(math.lgamma(a + 1 + q.n) - math.lgamma(a + 1) - math.lgamma(q.n + 1))
        return lead * specfun.hyp2f1_terminating(q.n, q.n + 2 * (eps + q.l + 1), a + 1, s)
    raise ValueError(f"unknown evaluation method {method!r}")


def log_u(q, sys, r, method="jacobi"):
    """``(log|u|, sign)`` of the unnormalized radial function at ``r``."""
    eps = _require_normalizable(sys, q)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial function is defined for r > 0")
    x = sys.delta * r
    s = np.exp(-x)
    p = np.asarray(_polynomial(q, eps, s, method))
    with np.errstate(divide="ignore"):
        mag = -eps * x + (q.l + 1) * np.log(-np.expm1(-x)) + np.log(np.abs(p))
    return mag, np.sign(p)


def u_unnormalized(q, sys, r, method="jacobi"):
    """``s**eps (1-s)**(l+1) P_n^{(2eps, 2l+1)}(1-2s)``; ``method`` picks the
    Jacobi recurrence or the terminating 2F1 series for the polynomial."""
    mag, sign = log_u(q, sys, r, method)
    out = sign * np.exp(mag)
    return float(out) if np.ndim(out) == 0 else out


def _rule_for(q, eps_a, eps_b, n_b):
    return specfun.gauss_rule(
        q.n + n_b + 2, specfun.RuleKind.JACOBI, alpha=eps_a + eps_b - 1.0, beta=2.0 * q.l + 2.0
    )


def normalization_integral(q, sys):
    """``int_0^1 s**(2eps-1) (1-s)**(2l+2) P(1-2s)**2 ds`` by Gauss-Jacobi.

    The weight is absorbed by the rule, leaving a degree-``2n`` polynomial
    that ``n + 2`` nodes integrate exactly.
    """
    eps = _require_normalizable(sys, q)
    rule = _rule_for(q, eps, eps, q.n)
    p = _polynomial(q, eps, rule.nodes, "jacobi")
    return float(np.dot(rule.weights, p * p))


def log_norm(q, sys):
    return 0.5 * (math.log(sys.delta) - math.log(normalization_integral(q, sys)))


def _log_sum_signed(logs, signs):
    logs = np.asarray(logs)
    top = np.max(logs)
    total = float(np.sum(np.asarray(signs) * np.exp(logs - top)))
    return top, total


def norm_double_sum(q, sys):
    """Printed double-sum closed form for the normalization constant.

    Factorials of non-integer arguments are read as Gamma functions.
    Returns ``(value, relative deviation from the quadrature constant)``;
    ``value`` is ``nan`` when the double sum is not positive.
    """
    eps = _require_normalizable(sys, q)
    n, l = q.n, q.l
    lg = math.lgamma
    ln_f = []
    sign_f = []
    for p in range(n + 1):
        ln_f.append(lg(p + 1) + lg(2 * eps + n - p + 1) + lg(2 * l + p + 2) + lg(n + p + 1))
        sign_f.append(-1.0 if p % 2 else 1.0)
    logs, signs = [], []
    for p in range(n + 1):
        for qq in range(n + 1):
            logs.append(-(ln_f[p] + ln_f[qq] + lg(2 * l + p + qq + 3)))
            signs.append(sign_f[p] * sign_f[qq])
    top, scaled = _log_sum_signed(logs, signs)
    if not scaled > 0:
        return math.nan, math.nan
    ln_sum = top + math.log(scaled)
    ln_val = -lg(n + 2 * l + 2) - lg(2 * eps + n + 1) + 0.5 * (
        math.log(sys.delta) + lg(2 * eps + 2 * n + 2 * l + 4) - lg(2 * eps + 2 * n + 1) - ln_sum
    )
    ln_quad = log_norm(q, sys)
    return math.exp(ln_val), math.expm1(ln_val - ln_quad)


def default_grid(q, sys, n_points=2000):
    """Log-spaced points near the origin, then uniform out to the tail.

    The outer radius is ``max(30/(eps delta), 20/delta)``; a fifth of the
    points cover four decades below ``min(1/delta, Bohr radius)``.
    """
    eps = _require_normalizable(sys, q)
    if n_points < 10:
        raise ValueError("grid needs at least 10 points")
    r_max = max(30.0 / (eps * sys.delta), 20.0 / sys.delta)
    inner = min(1.0 / sys.delta, 1.0 / sys.coupling)
    n_log = n_points // 5
    head = np.geomspace(1e-4 * inner, inner, n_log, endpoint=False)
    tail = np.linspace(inner, r_max, n_points - n_log)
    return np.concatenate([head, tail])


@dataclass(frozen=True)
class RadialWavefunction:
    state: QuantumNumbers
    sys: PhysicalSystem
    eps: float
    norm_quadrature: float
    norm_analytic: float | None
    r: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    log_abs_u: np.ndarray = field(repr=False)
    sign: np.ndarray = field(repr=False)

    @property
    def delta(self):
        return self.sys.delta

    @property
    def grid(self):
        return list(zip(self.r.tolist(), self.u.tolist()))

    @property
    def node_count(self):
        s = self.sign[self.sign != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))

    def __call__(self, r, method="jacobi"):
        """Normalized ``u`` at arbitrary radii."""
        mag, sign = log_u(self.state, self.sys, r, method)
        out = sign * np.exp(mag + math.log(self.norm_quadrature))
        return float(out) if np.ndim(out) == 0 else out


def normalize(q, sys, r=None, n_points=2000):
    """Normalized wavefunction sampled on ``r`` (default :func:`default_grid`)."""
    eps = _require_normalizable(sys, q)
    if r is None:
        r = default_grid(q, sys, n_points)
    r = np.asarray(r, dtype=float)
    ln_n = log_norm(q, sys)
    mag, sign = log_u(q, sys, r)
    mag = mag + ln_n
    analytic, _ = norm_double_sum(q, sys)
    return RadialWavefunction(
        q, sys, eps, math.exp(ln_n), analytic, r, sign * np.exp(mag), mag, sign
    )


def orthogonality_check(a, b, sys, sys_b=None):
    """Overlap ``int u_a u_b dr`` of two normalized states with equal ``l``.

    Evaluated exactly by a Gauss-Jacobi rule in ``s`` whose weight carries
    ``s**(eps_a + eps_b - 1) (1-s)**(2l+2)``.
    """
    if sys_b is not None and sys_b.delta != sys.delta:
        raise ValueError("overlap needs both states at the same screening")
    if a.l != b.l:
        raise ValueError(f"overlap needs equal l, got {a.label} and {b.label}")
    ea = _require_normalizable(sys, a)
    eb = _require_normalizable(sys, b)
    rule = _rule_for(a, ea, eb, b.n)
    pa = _polynomial(a, ea, rule.nodes, "jacobi")
    pb = _polynomial(b, eb, rule.nodes, "jacobi")
    integral = float(np.dot(rule.weights, pa * pb))
    return math.exp(log_norm(a, sys) + log_norm(b, sys)) * integral / sys.delta


@dataclass(frozen=True)
class CriticalCurve:
    state: QuantumNumbers
    delta_c: float
    r: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    normalizable: bool = False

    @property
    def node_count(self):
        s = np.sign(self.u)
        s = s[s != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))


def critical_state(q, sys=PhysicalSystem(1.0), r=None, n_points=2000):
    """Zero-energy edge function ``(1-s)**(l+1) P_n^{(0,2l+1)}(1-2s)``.

    The screening is set to the usual-scheme threshold of ``q``; only the
    units of ``sys`` are used.  The function tends to a constant at large
    ``r`` and is not normalizable.
    """
    dc = threshold_delta(sys, q)
    if r is None:
        r = np.linspace(0.01 / dc, 40.0 / dc, n_points)
    r = np.asarray(r, dtype=float)
    s = np.exp(-dc * r)
    p = specfun.jacobi_eval(specfun.JacobiParams(q.n, 0.0, 2 * q.l + 1), 1.0 - 2.0 * s)
    u = (-np.expm1(-dc * r)) ** (q.l + 1) * p
    return CriticalCurve(q, dc, r, u)


def outer_turning_point(q, sys):
    """Outer root of ``V(r) + l(l+1)/(2 mu r**2) = E`` at the closed-form energy."""
    E = energy(sys, q, PRESENT).energy
    if E >= 0:
        E = energy(sys, q, USUAL).energy
    k = sys.hbar**2 * q.l * (q.l + 1) / (2.0 * sys.mu)

    def f(r):
        return float(sys.potential(r)) + k / r**2 - E

    # f < 0 inside the well, f -> -E > 0 far away.
    hi = 1.0 / sys.coupling
    while f(hi) < 0 or hi < q.N**2 / sys.coupling:
        hi *= 2.0
    lo = hi / 2.0
    while f(lo) > 0:
        lo /= 2.0
        if lo < 1e-8:
            raise DomainError(f"no turning point found for {q.label}")
    return brentq(f, lo, hi)
