"""Numerov shooting solver for the radial equation with the exact barrier.

The equation ``u'' = [l(l+1)/r**2 + 2 mu (V - E)/hbar**2] u`` is integrated
on a logarithmic grid ``r = exp(x)``.  With ``u = sqrt(r) y`` it becomes

    y''(x) = [(l + 1/2)**2 + 2 mu r**2 (V(r) - E) / hbar**2] y(x),

which is regular at the origin, so the ``r**(l+1)`` seed is exact to
leading order.  Outward and inward solutions are matched at the outer
classical turning point; eigenvalues are isolated by node counting and
polished with Brent's method on the log-derivative mismatch.
"""

import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.optimize import brentq

from .centrifugal import PRESENT, USUAL
from .errors import ConfigurationError, ConvergenceError, NoBoundState
from .spectrum import PhysicalSystem, QuantumNumbers, energy, epsilon_nl, threshold_delta

_BIG = 1e200


@numba.njit(cache=True)
def _outward(a, b, E, h, stop, lhalf):
    """Integrate outward to index ``stop``; return (y[stop-1], y[stop], nodes)."""
    h12 = h * h / 12.0
    y0 = 1.0
    y1 = math.exp(lhalf * h)
    w0 = 1.0 - h12 * (a[0] - E * b[0])
    w1 = 1.0 - h12 * (a[1] - E * b[1])
    nodes = 0
    for i in range(1, stop):
        w2 = 1.0 - h12 * (a[i + 1] - E * b[i + 1])
        y2 = ((12.0 - 10.0 * w1) * y1 - w0 * y0) / w2
        if y2 != 0.0 and (y2 < 0.0) != (y1 < 0.0):
            nodes += 1
        y0, y1 = y1, y2
        w0, w1 = w1, w2
        if abs(y1) > _BIG:
            y0 /= _BIG
            y1 /= _BIG
    return y0, y1, nodes


@numba.njit(cache=True)
def _inward(a, b, r, E, h, stop, kappa):
    """Integrate inward from the last node to ``stop``; return (y[stop], y[stop+1])."""
    h12 = h * h / 12.0
    m = a.shape[0] - 1
    y0 = 1.0
    y1 = math.sqrt(r[m] / r[m - 1]) * math.exp(kappa * (r[m] - r[m - 1]))
    w0 = 1.0 - h12 * (a[m] - E * b[m])
    w1 = 1.0 - h12 * (a[m - 1] - E * b[m - 1])
    for i in range(m - 1, stop, -1):
        w2 = 1.0 - h12 * (a[i - 1] - E * b[i - 1])
        y2 = ((12.0 - 10.0 * w1) * y1 - w0 * y0) / w2
        y0, y1 = y1, y2
        w0, w1 = w1, w2
        if abs(y1) > _BIG:
            y0 /= _BIG
            y1 /= _BIG
    return y1, y0


@numba.njit(cache=True)
def _full_solution(a, b, r, E, h, c, kappa, lhalf):
    """Matched solution on the whole grid, scaled so that max |y| = 1."""
    h12 = h * h / 12.0
    m = a.shape[0] - 1
    w = 1.0 - h12 * (a - E * b)
    y = np.empty(m + 1)
    y[0] = 1.0
    y[1] = math.exp(lhalf * h)
    for i in range(1, c):
        y[i + 1] = ((12.0 - 10.0 * w[i]) * y[i] - w[i - 1] * y[i - 1]) / w[i + 1]
        if abs(y[i + 1]) > _BIG:
            for j in range(i + 2):
                y[j] /= _BIG
    yin = np.empty(m + 1)
    yin[m] = 1.0
    yin[m - 1] = math.sqrt(r[m] / r[m - 1]) * math.exp(kappa * (r[m] - r[m - 1]))
    for i in range(m - 1, c, -1):
        yin[i - 1] = ((12.0 - 10.0 * w[i]) * yin[i] - w[i + 1] * yin[i + 1]) / w[i - 1]
        if abs(yin[i - 1]) > _BIG:
            for j in range(i - 1, m + 1):
                yin[j] /= _BIG
    scale = y[c] / yin[c]
    for j in range(c + 1, m + 1):
        y[j] = yin[j] * scale
    big = 0.0
    for j in range(m + 1):
        if abs(y[j]) > big:
            big = abs(y[j])
    return y / big


@dataclass(frozen=True)
class ShootingConfig:
    """Grid and search settings; ``None`` fields are chosen per state."""

    r_min: float = 1e-6
    r_max: float | None = None
    n_steps: int = 4000
    energy_bracket: tuple | None = None
    match_tolerance: float = 1e-15
    max_iterations: int = 200
    grid_tolerance: float = 1e-9
    max_refinements: int = 6

    def __post_init__(self):
        if not self.r_min > 0:
            raise ConfigurationError("r_min must be positive")
        if self.r_max is not None and not self.r_max > self.r_min:
            raise ConfigurationError("r_max must exceed r_min")
        if self.n_steps < 1000:
            raise ConfigurationError("n_steps must be at least 1000")
        if self.energy_bracket is not None:
            lo, hi = self.energy_bracket
            if not lo < hi < 0:
                raise ConfigurationError("energy bracket must satisfy E_lo < E_hi < 0")


class RadialGrid:
    """Logarithmic grid with the energy-independent parts of the equation."""

    def __init__(self, sys, l, r_min, r_max, n_steps):
        if not 0 < r_min < r_max:
            raise ConfigurationError("grid needs 0 < r_min < r_max")
        self.sys = sys
        self.l = l
        self.h = (math.log(r_max) - math.log(r_min)) / n_steps
        self.x = math.log(r_min) + self.h * np.arange(n_steps + 1)
        self.r = np.exp(self.x)
        self.r[-1] = r_max
        two_mu = 2.0 * sys.mu / sys.hbar**2
        self.b = two_mu * self.r**2
        self.a = (l + 0.5) ** 2 + self.b * sys.potential(self.r)
        self.lhalf = l + 0.5

    def kappa(self, E):
        return math.sqrt(-2.0 * self.sys.mu * E) / self.sys.hbar

    def turning_index(self, E):
        """Last grid index inside the classically allowed region at ``E``."""
        allowed = np.nonzero(self.a - E * self.b < 0)[0]
        if allowed.size == 0:
            raise ConfigurationError(f"no classically allowed region at E={E:.6g}")
        c = int(allowed[-1])
        if c < 2 or c > len(self.r) - 3:
            raise ConfigurationError(
                f"turning point r={self.r[c]:.6g} lies outside ({self.r[0]:.3g}, {self.r[-1]:.3g})"
            )
        return c

    def shoot(self, E, c):
        """``(nodes, mismatch)`` with mismatch = u'_out/u_out - u'_in/u_in at r_c."""
        h = self.h
        ym, yc, nodes = _outward(self.a, self.b, E, h, c, self.lhalf)
        zc, zp = _inward(self.a, self.b, self.r, E, h, c, self.kappa(E))
        yp = zp * (yc / zc)
        w = 1.0 - h * h / 12.0 * (self.a[c - 1 : c + 2] - E * self.b[c - 1 : c + 2])
        jump = (w[2] * yp + w[0] * ym - (12.0 - 10.0 * w[1]) * yc) / (h * yc)
        return nodes, -jump / self.r[c]

    def solution(self, E, c):
        """Matched ``u(r)`` on the grid, unnormalized."""
        y = _full_solution(self.a, self.b, self.r, E, self.h, c, self.kappa(E), self.lhalf)
        return np.sqrt(self.r) * y


def _count_nodes(u, floor=1e-10):
    """Sign changes of ``u``, ignoring samples below ``floor * max|u|``."""
    big = np.max(np.abs(u))
    keep = u[np.abs(u) > floor * big]
    return int(np.count_nonzero(np.signbit(keep[1:]) != np.signbit(keep[:-1])))


def integrate_radial(sys, l, E, config=ShootingConfig()):
    """Two-sided integration at fixed energy.

    Returns ``(r_out, u_out, r_in, u_in, mismatch)``: the outward solution up
    to one point past the turning point, the inward one from one point
    before it, both scaled to agree at the turning point, and the
    log-derivative mismatch there.
    """
    if not E < 0:
        raise ConfigurationError("bound-state integration needs E < 0")
    r_max = _outer_radius(sys, E, config)
    grid = RadialGrid(sys, l, config.r_min, r_max, config.n_steps)
    c = grid.turning_index(E)
    _, mismatch = grid.shoot(E, c)
    u = grid.solution(E, c)
    return grid.r[: c + 2], u[: c + 2], grid.r[c - 1 :], u[c - 1 :], mismatch


def default_bracket(sys, q):
    """Bracket around the closed forms, widened by ten times their gap."""
    e_usual = energy(sys, q, USUAL).energy
    e_present = energy(sys, q, PRESENT).energy
    gap = abs(e_present - e_usual)
    # s-states have no gap; keep a finite width.
    gap = max(gap, 1e-3 * abs(e_usual), 1e-9)
    return e_usual - 10.0 * gap, min(-1e-12, e_usual + 10.0 * gap)


@dataclass(frozen=True)
class OracleResult:
    state: QuantumNumbers
    delta: float
    energy: float
    node_count: int
    match_residual: float
    grid_convergence: float
    n_steps: int
    r_max: float
    history: tuple = field(default=(), repr=False)

    @property
    def binding(self):
        return -self.energy


def _warm_start(sys, q):
    """Negative energy near the eigenvalue, from the two closed forms."""
    e_usual = energy(sys, q, USUAL).energy
    e_present = energy(sys, q, PRESENT).energy
    return min(0.5 * (e_usual + e_present), 0.5 * e_usual)


def _outer_radius(sys, guess, config):
    if config.r_max is not None:
        return config.r_max
    kappa = math.sqrt(-2.0 * sys.mu * guess) / sys.hbar
    return max(3.0 / kappa + 20.0 / sys.delta, 50.0)


def _solve_on_grid(grid, q, lo, hi, guess, config):
    """Eigenvalue with ``q.n`` nodes on a fixed grid, matched near ``guess``."""
    floor = float(np.min(grid.a / grid.b))
    if floor >= 0:
        raise NoBoundState(f"effective potential of {q.label} has no well", threshold_delta(grid.sys, q))
    if guess <= floor:
        guess = 0.5 * floor
    c = grid.turning_index(guess)

    def classify(E):
        nodes, f = grid.shoot(E, c)
        if nodes != q.n:
            return (1 if nodes > q.n else -1), nodes, f
        return (1 if f < 0 else -1), nodes, f

    width = hi - lo
    iters = 0
    s_lo = classify(lo)
    while s_lo[0] != -1:
        iters += 1
        if iters > config.max_iterations:
            raise ConvergenceError("could not bracket from below", {"E_lo": lo})
        lo -= width
        width *= 2.0
        s_lo = classify(lo)
    s_hi = classify(hi)
    while s_hi[0] != 1:
        iters += 1
        if hi >= -1e-12 or iters > config.max_iterations:
            raise NoBoundState(
                f"no eigenvalue with {q.n} nodes below E={hi:.6g} for {q.label}",
                delta_max=threshold_delta(grid.sys, q),
            )
        hi = min(hi + width, -1e-12)
        width *= 2.0
        s_hi = classify(hi)

    while not (s_lo[1] == q.n and s_hi[1] == q.n):
        iters += 1
        if iters > config.max_iterations:
            raise ConvergenceError(
                "node-count bisection did not converge",
                {"E_lo": lo, "E_hi": hi, "nodes_lo": s_lo[1], "nodes_hi": s_hi[1]},
            )
        mid = 0.5 * (lo + hi)
        s_mid = classify(mid)
        if s_mid[0] < 0:
            lo, s_lo = mid, s_mid
        else:
            hi, s_hi = mid, s_mid

    def mismatch(E):
        return grid.shoot(E, c)[1]

    E, info = brentq(
        mismatch, lo, hi, xtol=config.match_tolerance, rtol=4 * np.finfo(float).eps,
        maxiter=config.max_iterations, full_output=True,
    )
    if not info.converged:
        raise ConvergenceError("Brent refinement failed", {"E": E, "iterations": info.iterations})
    return E, c, mismatch(E)


def solve_eigenvalue(sys, q, config=ShootingConfig()):
    """Eigenvalue of the exact radial equation with ``q.n`` radial nodes.

    The grid is doubled until two successive energies differ by at most
    ``config.grid_tolerance``; the finest one is reported.
    """
    if epsilon_nl(sys, q) < 0:
        raise NoBoundState(
            f"{q.label} is not bound at delta={sys.delta:g}", delta_max=threshold_delta(sys, q)
        )
    lo, hi = config.energy_bracket or default_bracket(sys, q)
    guess = _warm_start(sys, q)
    r_max = _outer_radius(sys, guess, config)

    steps = config.n_steps
    history = []
    prev = None
    for _ in range(config.max_refinements + 1):
        grid = RadialGrid(sys, q.l, config.r_min, r_max, steps)
        E, c, resid = _solve_on_grid(grid, q, lo, hi, guess, config)
        history.append((steps, E))
        if prev is not None and abs(E - prev) <= config.grid_tolerance:
            nodes = _count_nodes(grid.solution(E, c))
            return OracleResult(
                q, sys.delta, E, nodes, resid, abs(E - prev), steps, r_max, tuple(history)
            )
        prev = E
        steps *= 2
    raise ConvergenceError(
        f"grid refinement did not reach {config.grid_tolerance:g}",
        {"history": history},
    )


def convergence_order(sys, q, steps=(1000, 2000, 4000), config=ShootingConfig()):
    """Observed order ``log2(|E1 - E2| / |E2 - E3|)`` over three grids."""
    lo, hi = config.energy_bracket or default_bracket(sys, q)
    guess = _warm_start(sys, q)
    r_max = _outer_radius(sys, guess, config)
    es = []
    for m in steps:
        grid = RadialGrid(sys, q.l, config.r_min, r_max, m)
        es.append(_solve_on_grid(grid, q, lo, hi, guess, config)[0])
    return math.log2(abs(es[0] - es[1]) / abs(es[1] - es[2])), es


@dataclass(frozen=True)
class ReportRow:
    state: str
    delta: float
    present: float
    usual: float
    numerov: float
    err_present: float
    err_usual: float
    l: int

    @property
    def present_closer(self):
        return self.err_present < self.err_usual


def approximation_error_report(cells, base=PhysicalSystem(0.025), config=ShootingConfig()):
    """Binding energies of both closed forms and the oracle for each cell.

    ``cells`` is an iterable of ``(QuantumNumbers, delta)`` pairs.
    """
    rows = []
    for q, delta in cells:
        sys = base.with_delta(delta)
        bp = energy(sys, q, PRESENT).binding
        bu = energy(sys, q, USUAL).binding
        bn = solve_eigenvalue(sys, q, config).binding
        rows.append(ReportRow(q.label, delta, bp, bu, bn, abs(bp - bn), abs(bu - bn), q.l))
    return rows
