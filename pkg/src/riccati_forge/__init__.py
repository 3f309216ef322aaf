"""Riccati gauge group, Backlund/Darboux transformations and exactly solvable potentials."""

from .darboux import (
    FactorizationData,
    GammaGauge,
    TransformReport,
    finite_difference_backlund,
    generalized_backlund,
    intertwine_pair,
    map_eigenfunction,
    schrodinger_backlund,
)
from .errors import (
    ConvergenceError,
    DegenerateInput,
    DomainError,
    GaugeError,
    InvalidSolution,
    NotGroundState,
    NotNormalizable,
    OrderError,
    ParameterError,
    ResidualError,
    RiccatiForgeError,
)
from .fnspace import Domain, Interval, ScalarFunction, derivative, make_function, restrict_to_sign_intervals
from .reduction import SchrodingerProblem, SignConvention, log_derivative, reconstruct_wavefunction, schrodinger_to_riccati
from .riccati import (
    CoefficientTriple,
    GaugeCurve,
    RiccatiEquation,
    act_on_coefficients,
    act_on_solution,
    cocycle_theta,
    compose,
    inverse,
    representation_B,
    residual,
)

__version__ = "0.1.0"
