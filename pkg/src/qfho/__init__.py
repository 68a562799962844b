"""Driven quantum harmonic oscillator toolkit.

The evolution operator of a harmonically bound particle under an arbitrary
time-dependent force factorizes into a harmonic rotation and a
translation/boost/phase layer whose parameters obey a small classical ODE
system.  This package integrates that system, exposes the resulting
symplectic phase-space map and the closed-form propagator, evolves wave
packets by quadrature against the propagator, and ships an independent
split-step grid solver that every closed form is tested against.
"""

from .classical import (
    PhysicalParams,
    Trajectory,
    TrajectoryPoint,
    closed_form_constant_force,
    integrate_trajectory,
    lagrangian,
    trajectory_rhs,
)
from .errors import (
    CausticSingular,
    ConfigError,
    EvalDomainError,
    ExpressionError,
    ExpressionSyntaxError,
    GridTooCoarse,
    NotNormalized,
    OutOfTableRange,
    PacketTouchesBoundary,
    PhysicsDomainError,
    QfhoError,
    TimeOutOfRange,
    UnknownIdentifierError,
)
from .evolution import (
    EvolutionParams,
    SymplecticMap,
    ehrenfest_expectations,
    evolution_params,
    heisenberg_point,
    symplectic_map,
)
from .force import (
    Constant,
    Expression,
    ForceProfile,
    GaussianPulse,
    Sinusoid,
    Tabulated,
    Zero,
    eval_force,
    load_table,
    parse_force_expression,
    render_profile,
    time_shifted,
    to_expression,
)
from .grid import (
    Grid,
    WaveFunction,
    evolve,
    expectation_p,
    expectation_q,
    make_gaussian,
    overlap,
    step,
)
from .kernel import EPS_CAUSTIC, evolve_by_kernel, forced_kernel, ho_kernel
from .scenario import Scenario, load_scenario

__version__ = "0.1.0"

__all__ = [
    "PhysicalParams",
    "Trajectory",
    "TrajectoryPoint",
    "closed_form_constant_force",
    "integrate_trajectory",
    "lagrangian",
    "trajectory_rhs",
    "EvolutionParams",
    "SymplecticMap",
    "ehrenfest_expectations",
    "evolution_params",
    "heisenberg_point",
    "symplectic_map",
    "Zero",
    "Constant",
    "Sinusoid",
    "GaussianPulse",
    "Tabulated",
    "Expression",
    "ForceProfile",
    "eval_force",
    "load_table",
    "parse_force_expression",
    "render_profile",
    "time_shifted",
    "to_expression",
    "Grid",
    "WaveFunction",
    "evolve",
    "expectation_p",
    "expectation_q",
    "make_gaussian",
    "overlap",
    "step",
    "EPS_CAUSTIC",
    "evolve_by_kernel",
    "forced_kernel",
    "ho_kernel",
    "Scenario",
    "load_scenario",
    "QfhoError",
    "ConfigError",
    "PhysicsDomainError",
    "ExpressionError",
    "ExpressionSyntaxError",
    "UnknownIdentifierError",
    "EvalDomainError",
    "OutOfTableRange",
    "TimeOutOfRange",
    "CausticSingular",
    "GridTooCoarse",
    "PacketTouchesBoundary",
    "NotNormalized",
    "__version__",
]
