"""Data model for decision problems under deep uncertainty.

A problem bundles the pieces an analyst works with: descriptive states of
the world, a space of candidate actions (an explicit list or a box of real
decision variables), primary objectives, auxiliary metrics such as
resilience or accumulated knowledge, hard upper-bound constraints, and a
set of structural property assessments used for complexity scoring.

Values are immutable after construction.  Structural problems are reported
by :func:`validate` as diagnostics rather than raised, so a user interface
can show all of them at once; :func:`evaluate_action` assumes a problem
that validates cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .expressions import Expression, evaluate, free_variables


class Direction(str, Enum):
    """Optimization sense of a metric."""

    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class MetricKind(str, Enum):
    """Whether a metric is a primary objective or an auxiliary one."""

    PRIMARY = "primary"
    AUXILIARY = "auxiliary"


class SpaceKind(str, Enum):
    """Shape of the action space."""

    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


class AssessmentMode(str, Enum):
    """How a structural property was judged."""

    BINARY = "binary"
    RESOLUTION = "resolution"
    COUNT = "count"


@dataclass(frozen=True)
class StateDescriptor:
    """A possible state of the world, descriptive only.

    No probabilities are attached; the model targets settings where the
    uncertainty resists quantification.
    """

    id: str
    description: str = ""


@dataclass(frozen=True)
class DecisionVariable:
    """One real-valued knob of a continuous action space."""

    name: str
    lower: float
    upper: float


@dataclass(frozen=True)
class Action:
    """A single candidate decision in a discrete action space.

    ``metric_values`` maps each metric id of the owning problem to either a
    literal number or an expression; expressions are evaluated against
    ``bindings``.
    """

    id: str
    name: str = ""
    metric_values: dict[str, Union[float, Expression]] = field(default_factory=dict)
    bindings: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "metric_values", dict(self.metric_values))
        object.__setattr__(self, "bindings", dict(self.bindings))


@dataclass(frozen=True)
class ActionSpace:
    """Either an explicit list of actions or a box of decision variables."""

    kind: SpaceKind
    actions: tuple[Action, ...] = ()
    variables: tuple[DecisionVariable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "variables", tuple(self.variables))


@dataclass(frozen=True)
class Objective:
    """A metric to optimize, primary or auxiliary.

    ``definition`` holds the expression that computes the metric from
    decision variables.  Discrete problems may leave it unset and list the
    value per action instead (the tabular form); if both are present the
    per-action table wins and the expression is documentary.
    """

    id: str
    name: str
    direction: Direction
    kind: MetricKind = MetricKind.PRIMARY
    definition: Expression | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", Direction(self.direction))
        object.__setattr__(self, "kind", MetricKind(self.kind))


@dataclass(frozen=True)
class Constraint:
    """Hard upper bound: expression value must not exceed ``bound``.

    Only the ≤ relation is modeled; rewrite ≥ constraints by negating the
    expression.
    """

    id: str
    expression: Expression
    bound: float

    RELATION = "<="


@dataclass(frozen=True)
class PropertyAssessment:
    """The analyst's judgment of one structural property of the problem.

    Exactly the field matching ``mode`` is populated: ``present`` for
    binary, ``resolution`` for resolution, ``count`` for count.
    """

    property_id: int
    mode: AssessmentMode
    present: bool | None = None
    resolution: float | None = None
    count: int | None = None
    rationale: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", AssessmentMode(self.mode))


@dataclass(frozen=True)
class DecisionProblem:
    """A complete decision problem ready for scoring and trade-off search."""

    id: str
    title: str
    description: str
    action_space: ActionSpace
    objectives: tuple[Objective, ...] = ()
    aux_metrics: tuple[Objective, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    assessments: tuple[PropertyAssessment, ...] = ()
    states: tuple[StateDescriptor, ...] = ()
    analyst_profile: str | None = None

    def __post_init__(self) -> None:
        for name in ("objectives", "aux_metrics", "constraints", "assessments", "states"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def metrics(self) -> tuple[Objective, ...]:
        """All metrics, primary first, each group in declaration order."""
        return self.objectives + self.aux_metrics

    @property
    def metric_ids(self) -> tuple[str, ...]:
        return tuple(metric.id for metric in self.metrics)

    @property
    def directions(self) -> tuple[Direction, ...]:
        return tuple(metric.direction for metric in self.metrics)


@dataclass(frozen=True)
class CandidateSolution:
    """One evaluated action: objective vector, slacks, feasibility.

    ``origin`` is the action id for discrete problems or the decision
    vector for continuous ones.  Objectives follow the owning problem's
    metric order (primary then auxiliary).  Slack is expression value minus
    bound, so feasible means every slack is ≤ 0.
    """

    origin: Union[str, tuple[float, ...]]
    objectives: tuple[float, ...]
    constraint_slacks: tuple[float, ...] = ()
    feasible: bool = True


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding: a machine-readable code plus prose."""

    code: str
    message: str
    where: str = ""


class ValidationFailedError(ValueError):
    """Raised by callers that require a clean problem; carries diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        lines = [f"{d.code}: {d.message}" for d in self.diagnostics]
        super().__init__("problem failed validation:\n" + "\n".join(lines))


class DimensionMismatchError(ValueError):
    """A vector input does not match the problem's declared dimensions."""


PROPERTY_ID_RANGE = range(1, 15)


def _check_assessment_fields(a: PropertyAssessment, out: list[Diagnostic], where: str) -> None:
    populated = {
        "present": a.present is not None,
        "resolution": a.resolution is not None,
        "count": a.count is not None,
    }
    expected = {
        AssessmentMode.BINARY: "present",
        AssessmentMode.RESOLUTION: "resolution",
        AssessmentMode.COUNT: "count",
    }[a.mode]
    wanted = {name: name == expected for name in populated}
    if populated != wanted:
        out.append(
            Diagnostic(
                "ASSESSMENT_FIELDS",
                f"mode {a.mode.value!r} requires exactly the {expected!r} field",
                where,
            )
        )
        return
    if a.mode is AssessmentMode.RESOLUTION and not 0.0 <= a.resolution <= 1.0:
        out.append(
            Diagnostic(
                "ASSESSMENT_RANGE",
                f"resolution {a.resolution!r} is outside [0, 1]",
                where,
            )
        )
    if a.mode is AssessmentMode.COUNT and (a.count < 0 or a.count != int(a.count)):
        out.append(
            Diagnostic(
                "ASSESSMENT_RANGE",
                f"count {a.count!r} is not a non-negative integer",
                where,
            )
        )


def _check_expression_vars(
    expr: Expression, declared: set[str], out: list[Diagnostic], where: str
) -> None:
    unknown = sorted(free_variables(expr.root) - declared)
    if unknown:
        out.append(
            Diagnostic(
                "UNDECLARED_VARIABLE",
                "expression references undeclared variable(s): " + ", ".join(unknown),
                where,
            )
        )


def validate(problem: DecisionProblem) -> list[Diagnostic]:
    """Check every structural invariant; return all findings, throw nothing.

    An empty result means the problem is well formed and every expression
    references only names that will be bound at evaluation time.
    """
    out: list[Diagnostic] = []
    space = problem.action_space

    if not problem.objectives:
        out.append(Diagnostic("MISSING_OBJECTIVE", "at least one primary objective is required"))

    seen_metric_ids: set[str] = set()
    for group, kind in ((problem.objectives, MetricKind.PRIMARY), (problem.aux_metrics, MetricKind.AUXILIARY)):
        for metric in group:
            where = f"metric {metric.id!r}"
            if metric.id in seen_metric_ids:
                out.append(Diagnostic("DUPLICATE_METRIC", f"metric id {metric.id!r} is declared twice", where))
            seen_metric_ids.add(metric.id)
            if metric.kind is not kind:
                out.append(
                    Diagnostic(
                        "METRIC_KIND_MISMATCH",
                        f"metric {metric.id!r} is listed as {kind.value} but marked {metric.kind.value}",
                        where,
                    )
                )

    seen_states: set[str] = set()
    for state in problem.states:
        if not state.id:
            out.append(Diagnostic("EMPTY_ID", "state id must be non-empty", "states"))
        elif state.id in seen_states:
            out.append(Diagnostic("DUPLICATE_STATE", f"state id {state.id!r} is declared twice", "states"))
        seen_states.add(state.id)

    seen_props: set[int] = set()
    for a in problem.assessments:
        where = f"assessment property {a.property_id}"
        if a.property_id not in PROPERTY_ID_RANGE:
            out.append(
                Diagnostic("UNKNOWN_PROPERTY", f"property id {a.property_id} is outside 1..14", where)
            )
        if a.property_id in seen_props:
            out.append(
                Diagnostic("DUPLICATE_ASSESSMENT", f"property {a.property_id} is assessed twice", where)
            )
        seen_props.add(a.property_id)
        _check_assessment_fields(a, out, where)

    if space.kind is SpaceKind.DISCRETE:
        _validate_discrete(problem, out)
    else:
        _validate_continuous(problem, out)

    for constraint in problem.constraints:
        if not math.isfinite(constraint.bound):
            out.append(
                Diagnostic(
                    "BAD_BOUND",
                    f"constraint {constraint.id!r} bound must be finite, got {constraint.bound!r}",
                    f"constraint {constraint.id!r}",
                )
            )

    return out


def _validate_discrete(problem: DecisionProblem, out: list[Diagnostic]) -> None:
    space = problem.action_space
    if not space.actions:
        out.append(Diagnostic("EMPTY_ACTION_SPACE", "discrete action space lists no actions"))
    if space.variables:
        out.append(
            Diagnostic("SPACE_KIND_MISMATCH", "discrete action space must not declare variables")
        )
    seen: set[str] = set()
    metric_ids = set(problem.metric_ids)
    for action in space.actions:
        where = f"action {action.id!r}"
        if action.id in seen:
            out.append(Diagnostic("DUPLICATE_ACTION", f"action id {action.id!r} is declared twice", where))
        seen.add(action.id)
        bound_names = set(action.bindings)
        for name, value in action.bindings.items():
            if not math.isfinite(value):
                out.append(
                    Diagnostic(
                        "NONFINITE_VALUE",
                        f"binding {name!r} of action {action.id!r} must be finite, got {value!r}",
                        where,
                    )
                )
        for metric_id in problem.metric_ids:
            if metric_id not in action.metric_values:
                out.append(
                    Diagnostic(
                        "MISSING_METRIC_VALUE",
                        f"action {action.id!r} gives no value for metric {metric_id!r}",
                        where,
                    )
                )
        for metric_id, entry in action.metric_values.items():
            if metric_id not in metric_ids:
                out.append(
                    Diagnostic(
                        "UNKNOWN_METRIC",
                        f"action {action.id!r} sets undeclared metric {metric_id!r}",
                        where,
                    )
                )
            if isinstance(entry, Expression):
                _check_expression_vars(entry, bound_names, out, where)
            elif not math.isfinite(entry):
                out.append(
                    Diagnostic(
                        "NONFINITE_VALUE",
                        f"action {action.id!r} value for metric {metric_id!r} must be finite, got {entry!r}",
                        where,
                    )
                )
        for constraint in problem.constraints:
            _check_expression_vars(
                constraint.expression, bound_names, out, f"constraint {constraint.id!r} at {where}"
            )


def _validate_continuous(problem: DecisionProblem, out: list[Diagnostic]) -> None:
    space = problem.action_space
    if not space.variables:
        out.append(Diagnostic("EMPTY_ACTION_SPACE", "continuous action space declares no variables"))
    if space.actions:
        out.append(
            Diagnostic("SPACE_KIND_MISMATCH", "continuous action space must not list actions")
        )
    names: set[str] = set()
    for var in space.variables:
        where = f"variable {var.name!r}"
        if var.name in names:
            out.append(Diagnostic("DUPLICATE_VARIABLE", f"variable {var.name!r} is declared twice", where))
        names.add(var.name)
        if not (math.isfinite(var.lower) and math.isfinite(var.upper)) or not var.lower < var.upper:
            out.append(
                Diagnostic(
                    "BAD_BOUNDS",
                    f"variable {var.name!r} needs finite bounds with lower < upper, "
                    f"got [{var.lower!r}, {var.upper!r}]",
                    where,
                )
            )
    for metric in problem.metrics:
        where = f"metric {metric.id!r}"
        if metric.definition is None:
            out.append(
                Diagnostic(
                    "MISSING_DEFINITION",
                    f"metric {metric.id!r} of a continuous problem needs an expression",
                    where,
                )
            )
        else:
            _check_expression_vars(metric.definition, names, out, where)
    for constraint in problem.constraints:
        _check_expression_vars(
            constraint.expression, names, out, f"constraint {constraint.id!r}"
        )


def evaluate_action(
    problem: DecisionProblem,
    action_or_point: Union[Action, tuple[float, ...], list[float]],
) -> CandidateSolution:
    """Evaluate one candidate: metric vector, constraint slacks, feasibility.

    Accepts an :class:`Action` for discrete problems or a vector with one
    entry per decision variable for continuous ones.  Deterministic; raises
    :class:`DimensionMismatchError` on shape problems and propagates
    expression evaluation errors.
    """
    if isinstance(action_or_point, Action):
        action = action_or_point
        bindings = dict(action.bindings)
        values = []
        for metric in problem.metrics:
            if metric.id not in action.metric_values:
                raise DimensionMismatchError(
                    f"action {action.id!r} gives no value for metric {metric.id!r}"
                )
            entry = action.metric_values[metric.id]
            values.append(evaluate(entry, bindings) if isinstance(entry, Expression) else float(entry))
        origin: Union[str, tuple[float, ...]] = action.id
    else:
        variables = problem.action_space.variables
        point = tuple(float(v) for v in action_or_point)
        if len(point) != len(variables):
            raise DimensionMismatchError(
                f"expected {len(variables)} coordinate(s), got {len(point)}"
            )
        bindings = {var.name: value for var, value in zip(variables, point)}
        values = []
        for metric in problem.metrics:
            if metric.definition is None:
                raise DimensionMismatchError(f"metric {metric.id!r} has no expression to evaluate")
            values.append(evaluate(metric.definition, bindings))
        origin = point

    slacks = tuple(
        evaluate(constraint.expression, bindings) - constraint.bound
        for constraint in problem.constraints
    )
    # NaN slack compares false, so an undefined constraint marks infeasible.
    feasible = all(slack <= 0.0 for slack in slacks)
    return CandidateSolution(origin, tuple(values), slacks, feasible)
