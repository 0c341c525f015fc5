"""Closed-form bound-state energies of the Hulthen potential.

``V(r) = -Z e**2 delta / (exp(delta r) - 1)``.  With ``N = n + l + 1`` and
``c1 = 2 mu Z e**2 / (hbar**2 delta)`` the decay exponent is
``eps = c1/(2N) - N/2`` and the energy is

    E = hbar**2 delta**2 / (2 mu) * (l(l+1) d0 - eps**2).

``d0 = 0`` gives the usual (Greene-Aldrich) spectrum, which depends on
``N`` only.
"""

import math
import re
import string
from dataclasses import dataclass, field

import numpy as np

from .centrifugal import PRESENT, SchemeParams
from .errors import DomainError, NoBoundState, ParseError

# Spectroscopic letters: s p d f, then alphabetical from g skipping j.
L_LETTERS = "spdf" + "".join(c for c in string.ascii_lowercase[6:] if c not in "jps")


@dataclass(frozen=True)
class PhysicalSystem:
    delta: float
    hbar: float = 1.0
    mu: float = 1.0
    Z: float = 1.0
    e: float = 1.0

    def __post_init__(self):
        for name in ("delta", "hbar", "mu", "Z", "e"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")

    @property
    def coupling(self):
        """``mu Z e**2 / hbar**2``, the inverse Bohr radius."""
        return self.mu * self.Z * self.e**2 / self.hbar**2

    @property
    def c1(self):
        return 2.0 * self.coupling / self.delta

    @property
    def energy_unit(self):
        """``hbar**2 delta**2 / (2 mu)``."""
        return self.hbar**2 * self.delta**2 / (2.0 * self.mu)

    def with_delta(self, delta):
        return PhysicalSystem(delta, self.hbar, self.mu, self.Z, self.e)

    def potential(self, r):
        """Hulthen potential, written as ``-Z e**2 delta / expm1(delta r)``."""
        return -self.Z * self.e**2 * self.delta / np.expm1(self.delta * np.asarray(r, dtype=float))


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int
    N: int = field(init=False)
    label: str = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or int(self.l) != self.l or self.n < 0 or self.l < 0:
            raise DomainError(f"quantum numbers must be nonnegative integers, got n={self.n!r}, l={self.l!r}")
        if self.l >= len(L_LETTERS):
            raise DomainError(f"no spectroscopic letter for l={self.l}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "N", self.n + self.l + 1)
        object.__setattr__(self, "label", f"{self.N}{L_LETTERS[self.l]}")

    @classmethod
    def from_principal(cls, N, l):
        return cls(N - l - 1, l)


_LABEL_RE = re.compile(r"^([1-9][0-9]*)([a-z])$")


def parse_state(label):
    """``"6g"`` -> ``QuantumNumbers(n=1, l=4)``."""
    m = _LABEL_RE.match(label.strip().lower())
    if not m or m.group(2) not in L_LETTERS:
        raise ParseError(f"malformed state label {label!r}")
    N, l = int(m.group(1)), L_LETTERS.index(m.group(2))
    if l >= N:
        raise ParseError(f"state {label!r} needs l < N (l={l}, N={N})")
    return QuantumNumbers.from_principal(N, l)


@dataclass(frozen=True)
class SpectrumParams:
    eps_nl: float
    c1: float
    c2: int
    dE_l: float


def spectrum_params(sys, q, scheme=PRESENT):
    c2 = q.l * (q.l + 1)
    return SpectrumParams(epsilon_nl(sys, q), sys.c1, c2, c2 * scheme.d0)


def epsilon_nl(sys, q):
    """``c1/(2N) - N/2``; independent of the scheme and possibly negative."""
    return sys.c1 / (2.0 * q.N) - q.N / 2.0


def threshold_delta(sys, q):
    """Largest screening with ``eps_nl >= 0``: ``2 mu Z e**2 / (hbar**2 N**2)``."""
    return 2.0 * sys.coupling / q.N**2


@dataclass(frozen=True)
class EnergyRecord:
    state: QuantumNumbers
    delta: float
    scheme: SchemeParams
    energy: float
    eps: float

    @property
    def binding(self):
        return -self.energy

    @property
    def above_zero(self):
        """Positive energy with ``eps >= 0``: an artifact of the shifted barrier."""
        return self.energy > 0


def energy(sys, q, scheme=PRESENT):
    """Energy record for state ``q``; raises :class:`NoBoundState` if ``eps < 0``."""
    eps = epsilon_nl(sys, q)
    if eps < 0:
        dmax = threshold_delta(sys, q)
        raise NoBoundState(
            f"{q.label} is not bound at delta={sys.delta:g} (eps={eps:.6g}); "
            f"bound states need delta <= {dmax:.7g}",
            delta_max=dmax,
        )
    c = sys.coupling / (sys.delta * q.N) - q.N / 2.0
    E = sys.energy_unit * (q.l * (q.l + 1) * scheme.d0 - c * c)
    return EnergyRecord(q, sys.delta, scheme, E, eps)


def critical_screening(sys, q, scheme=PRESENT):
    """Screening at which the closed-form energy of ``q`` reaches zero.

    Solves ``l(l+1) d0 = (coupling/(delta N) - N/2)**2`` on the branch
    ``0 < delta <= 2 coupling / N**2``.
    """
    root = math.sqrt(q.l * (q.l + 1) * scheme.d0)
    return sys.coupling / (q.N * (q.N / 2.0 + root))


def enumerate_bound_states(sys, scheme=PRESENT, l_max=3):
    """All states with ``l <= l_max`` and ``eps_nl >= 0``, lowest energy first.

    Ties are ordered by ``(l, n)``.
    """
    if l_max < 0:
        raise DomainError("l_max must be nonnegative")
    # eps >= 0  <=>  N**2 <= c1; one extra N absorbs rounding at the threshold.
    out = []
    for N in range(1, int(math.sqrt(sys.c1)) + 2):
        for l in range(min(l_max, N - 1) + 1):
            q = QuantumNumbers.from_principal(N, l)
            if epsilon_nl(sys, q) >= 0:
                out.append((q, energy(sys, q, scheme)))
    out.sort(key=lambda t: (t[1].energy, t[0].l, t[0].n))
    return out
