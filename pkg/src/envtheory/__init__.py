"""Envelope-theory bounds for N-body systems of identical particles.

The package reduces an N-body Hamiltonian with identical kinematics and
pairwise/one-body interactions to a one-dimensional stationarity problem,
solves it numerically, classifies the result as an upper bound, lower
bound, or exact level, and cross-checks against exact and brute-force
oracles.
"""

from .analysis import (
    CriticalCoupling,
    PerturbationSpec,
    classify_bound,
    classify_two_body,
    critical_coupling,
    perturbed_energy,
    term_convexity,
)
from .apps import (
    BaryonParams,
    BosonStarParams,
    baryon_bounds,
    boson_star_limit,
    boson_star_mass,
    boson_star_max_mass,
    minimal_length_energy,
)
from .errors import (
    CollapseRegime,
    ConfigError,
    ConstraintViolation,
    DimensionTooSmall,
    EmptyState,
    EnvelopeError,
    EvaluationDomainError,
    InvalidAuxiliaryExponent,
    MissingSection,
    NoCriticalPoint,
    NonPositiveArgument,
    NoStationaryPoint,
    NotConverged,
    NotShortRange,
    PerturbationSizeWarning,
    ScanExhausted,
    TypeMismatch,
    UnboundedBelow,
    UnboundOscillator,
    UnknownKey,
    UnsupportedAuxiliary,
)
from .model import (
    BoundKind,
    Convexity,
    ConvexityVerdict,
    CustomProfile,
    EnvelopeSolution,
    EvalMode,
    KineticFamily,
    KineticLaw,
    PotentialFamily,
    PotentialLaw,
    StateSpec,
    StationaryRoot,
    Statistics,
    SystemSpec,
    b_second_derivative,
    eval_term,
)
from .oracle import (
    RadialProblem,
    SemiclassicalGeometry,
    centripetal_balance,
    harmonic_exact,
    mean_separation,
    radial_eigenvalue,
    radial_eigenvalues,
)
from .qnum import (
    QProvenance,
    QValue,
    airy_ai,
    airy_zero,
    q_boson_ground,
    q_fermion_asymptotic,
    q_from_quanta,
    q_two_body_auxiliary,
)
from .solver import (
    SolverConfig,
    auxiliary_energy,
    nbody_energy,
    solve_nbody,
    solve_two_body,
    stationary_residual,
    two_body_energy,
    two_body_residual,
)

__version__ = "0.1.0"

__all__ = [
    "BaryonParams",
    "BosonStarParams",
    "BoundKind",
    "CollapseRegime",
    "ConfigError",
    "ConstraintViolation",
    "Convexity",
    "ConvexityVerdict",
    "CriticalCoupling",
    "CustomProfile",
    "DimensionTooSmall",
    "EmptyState",
    "EnvelopeError",
    "EnvelopeSolution",
    "EvalMode",
    "EvaluationDomainError",
    "InvalidAuxiliaryExponent",
    "KineticFamily",
    "KineticLaw",
    "MissingSection",
    "NoCriticalPoint",
    "NonPositiveArgument",
    "NoStationaryPoint",
    "NotConverged",
    "NotShortRange",
    "PerturbationSizeWarning",
    "PerturbationSpec",
    "PotentialFamily",
    "PotentialLaw",
    "QProvenance",
    "QValue",
    "RadialProblem",
    "ScanExhausted",
    "SemiclassicalGeometry",
    "SolverConfig",
    "StateSpec",
    "StationaryRoot",
    "Statistics",
    "SystemSpec",
    "TypeMismatch",
    "UnboundOscillator",
    "UnboundedBelow",
    "UnknownKey",
    "UnsupportedAuxiliary",
    "airy_ai",
    "airy_zero",
    "auxiliary_energy",
    "b_second_derivative",
    "baryon_bounds",
    "boson_star_limit",
    "boson_star_mass",
    "boson_star_max_mass",
    "centripetal_balance",
    "classify_bound",
    "classify_two_body",
    "critical_coupling",
    "eval_term",
    "harmonic_exact",
    "mean_separation",
    "minimal_length_energy",
    "nbody_energy",
    "perturbed_energy",
    "q_boson_ground",
    "q_fermion_asymptotic",
    "q_from_quanta",
    "q_two_body_auxiliary",
    "radial_eigenvalue",
    "radial_eigenvalues",
    "solve_nbody",
    "solve_two_body",
    "stationary_residual",
    "term_convexity",
    "two_body_energy",
    "two_body_residual",
]
