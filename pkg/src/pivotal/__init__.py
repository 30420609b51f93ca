"""Engine and workbench for decision problems under deep uncertainty.

The library models decision problems (states, actions, objectives,
constraints, structural property assessments), scores their analytical
complexity, recommends uncertainty-robust strategies from a fixed
catalog, and searches Pareto trade-off fronts over discrete or continuous
action spaces.  A CLI and a stateless HTTP API expose the same pipeline.
"""

__version__ = "0.1.0"

from .problem_model import (
    Action,
    ActionSpace,
    AssessmentMode,
    CandidateSolution,
    Constraint,
    DecisionProblem,
    DecisionVariable,
    Diagnostic,
    Direction,
    MetricKind,
    Objective,
    PropertyAssessment,
    SpaceKind,
    StateDescriptor,
    ValidationFailedError,
    evaluate_action,
    validate,
)
from .scoring import ComplexityScore, ResolutionConfig, complexity, complexity_binary, resolution
from .recommender import GapReport, Recommendation, gap_report, recommend
from .moo import (
    ParetoFront,
    SearchConfig,
    TradeoffSummary,
    dominates,
    pareto_filter,
    solve_continuous,
    solve_discrete,
    tradeoff_summary,
)
from .io_format import parse_problem, serialize_problem, build_report, render_report
from .taxonomy import catalog, property_by_id, strategies_for

__all__ = [
    "__version__",
    "Action",
    "ActionSpace",
    "AssessmentMode",
    "CandidateSolution",
    "ComplexityScore",
    "Constraint",
    "DecisionProblem",
    "DecisionVariable",
    "Diagnostic",
    "Direction",
    "GapReport",
    "MetricKind",
    "Objective",
    "ParetoFront",
    "PropertyAssessment",
    "Recommendation",
    "ResolutionConfig",
    "SearchConfig",
    "SpaceKind",
    "StateDescriptor",
    "TradeoffSummary",
    "ValidationFailedError",
    "build_report",
    "catalog",
    "complexity",
    "complexity_binary",
    "dominates",
    "evaluate_action",
    "gap_report",
    "pareto_filter",
    "parse_problem",
    "property_by_id",
    "recommend",
    "render_report",
    "resolution",
    "serialize_problem",
    "solve_continuous",
    "solve_discrete",
    "strategies_for",
    "tradeoff_summary",
    "validate",
]
