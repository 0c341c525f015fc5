"""Bound states of the Hulthen potential under an improved approximation
to the centrifugal term, with a Numerov shooting oracle for reference."""

from .centrifugal import (
    D0,
    GAMMA,
    PRESENT,
    USUAL,
    Scheme,
    SchemeParams,
    approx_centrifugal,
    figure1_data,
    slope_residual,
    solve_gamma_d0,
)
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    HulthenError,
    NoBoundState,
    NotNormalizable,
    ParseError,
)
from .numerov import ShootingConfig, approximation_error_report, solve_eigenvalue
from .spectrum import (
    PhysicalSystem,
    QuantumNumbers,
    critical_screening,
    energy,
    enumerate_bound_states,
    epsilon_nl,
    parse_state,
)
from .wavefunction import critical_state, normalize, orthogonality_check

__version__ = "0.1.0"
