"""Problem documents and report rendering.

A problem travels as a JSON document with a top-level ``format_version``
and a ``problem`` object.  Parsing is strict: unknown fields are rejected
rather than ignored, so a typo cannot silently drop analyst input.
Serialization is canonical (sorted keys, two-space indent, shortest
round-trip reals, expressions printed in normalized form), which makes
byte equality a usable test for structural equality.

Reports bundle the scoring, recommendation, and trade-off outputs for one
problem and render to JSON (numbers exact) or markdown (numbers to six
significant digits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .expressions import ExpressionError, parse as parse_expression, to_source
from .moo import (
    ParetoFront,
    SearchConfig,
    TradeoffSummary,
    solve_continuous,
    solve_discrete,
    tradeoff_summary,
)
from .problem_model import (
    Action,
    ActionSpace,
    AssessmentMode,
    CandidateSolution,
    Constraint,
    DecisionProblem,
    DecisionVariable,
    Direction,
    MetricKind,
    Objective,
    PropertyAssessment,
    SpaceKind,
    StateDescriptor,
    ValidationFailedError,
    validate,
)
from .recommender import GapReport, Recommendation, gap_report, recommend
from .scoring import ComplexityScore, ResolutionConfig, complexity
from .taxonomy import property_by_id

FORMAT_VERSION = "1"


class DocumentError(ValueError):
    """Base class for document-level failures; carries a machine code."""

    code = "DOCUMENT_ERROR"


class MalformedDocumentError(DocumentError):
    code = "MALFORMED_DOCUMENT"


class UnknownFieldError(DocumentError):
    code = "UNKNOWN_FIELD"


class VersionUnsupportedError(DocumentError):
    code = "VERSION_UNSUPPORTED"


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise MalformedDocumentError(f"{path}: expected an object")
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise MalformedDocumentError(f"{path}: expected an array")
    return value


def _expect_text(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise MalformedDocumentError(f"{path}: expected text")
    return value


def _expect_real(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocumentError(f"{path}: expected a number")
    return float(value)


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedDocumentError(f"{path}: expected an integer")
    return value


def _expect_bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise MalformedDocumentError(f"{path}: expected true or false")
    return value


def _take(obj: dict, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> None:
    """Enforce the strict schema: required keys present, no strangers."""
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise UnknownFieldError(f"{path}: unknown field(s): " + ", ".join(unknown))
    missing = sorted(set(required) - set(obj))
    if missing:
        raise MalformedDocumentError(f"{path}: missing field(s): " + ", ".join(missing))


def _expression(value: Any, path: str):
    source = _expect_text(value, path)
    try:
        return parse_expression(source)
    except ExpressionError as exc:
        raise MalformedDocumentError(f"{path}: {exc}") from exc


def _state_from(obj: Any, path: str) -> StateDescriptor:
    obj = _expect_object(obj, path)
    _take(obj, path, ("id",), ("description",))
    return StateDescriptor(
        id=_expect_text(obj["id"], f"{path}.id"),
        description=_expect_text(obj.get("description", ""), f"{path}.description"),
    )


def _variable_from(obj: Any, path: str) -> DecisionVariable:
    obj = _expect_object(obj, path)
    _take(obj, path, ("name", "lower", "upper"))
    return DecisionVariable(
        name=_expect_text(obj["name"], f"{path}.name"),
        lower=_expect_real(obj["lower"], f"{path}.lower"),
        upper=_expect_real(obj["upper"], f"{path}.upper"),
    )


def _action_from(obj: Any, path: str) -> Action:
    obj = _expect_object(obj, path)
    _take(obj, path, ("id",), ("name", "metric_values", "bindings"))
    metric_values = {}
    for key, raw in _expect_object(obj.get("metric_values", {}), f"{path}.metric_values").items():
        entry_path = f"{path}.metric_values.{key}"
        if isinstance(raw, str):
            metric_values[key] = _expression(raw, entry_path)
        else:
            metric_values[key] = _expect_real(raw, entry_path)
    bindings = {
        key: _expect_real(raw, f"{path}.bindings.{key}")
        for key, raw in _expect_object(obj.get("bindings", {}), f"{path}.bindings").items()
    }
    return Action(
        id=_expect_text(obj["id"], f"{path}.id"),
        name=_expect_text(obj.get("name", ""), f"{path}.name"),
        metric_values=metric_values,
        bindings=bindings,
    )


def _space_from(obj: Any, path: str) -> ActionSpace:
    obj = _expect_object(obj, path)
    _take(obj, path, ("kind",), ("actions", "variables"))
    kind_text = _expect_text(obj["kind"], f"{path}.kind")
    try:
        kind = SpaceKind(kind_text)
    except ValueError:
        raise MalformedDocumentError(f"{path}.kind: not one of discrete, continuous") from None
    actions = tuple(
        _action_from(entry, f"{path}.actions[{i}]")
        for i, entry in enumerate(_expect_list(obj.get("actions", []), f"{path}.actions"))
    )
    variables = tuple(
        _variable_from(entry, f"{path}.variables[{i}]")
        for i, entry in enumerate(_expect_list(obj.get("variables", []), f"{path}.variables"))
    )
    return ActionSpace(kind=kind, actions=actions, variables=variables)


def _objective_from(obj: Any, path: str, kind: MetricKind) -> Objective:
    obj = _expect_object(obj, path)
    _take(obj, path, ("id", "name", "direction"), ("definition",))
    direction_text = _expect_text(obj["direction"], f"{path}.direction")
    try:
        direction = Direction(direction_text)
    except ValueError:
        raise MalformedDocumentError(f"{path}.direction: not one of maximize, minimize") from None
    definition = None
    if "definition" in obj:
        definition = _expression(obj["definition"], f"{path}.definition")
    return Objective(
        id=_expect_text(obj["id"], f"{path}.id"),
        name=_expect_text(obj["name"], f"{path}.name"),
        direction=direction,
        kind=kind,
        definition=definition,
    )


def _constraint_from(obj: Any, path: str) -> Constraint:
    obj = _expect_object(obj, path)
    _take(obj, path, ("id", "expression", "bound"))
    return Constraint(
        id=_expect_text(obj["id"], f"{path}.id"),
        expression=_expression(obj["expression"], f"{path}.expression"),
        bound=_expect_real(obj["bound"], f"{path}.bound"),
    )


def _assessment_from(obj: Any, path: str) -> PropertyAssessment:
    obj = _expect_object(obj, path)
    _take(obj, path, ("property_id", "mode"), ("present", "resolution", "count", "rationale"))
    mode_text = _expect_text(obj["mode"], f"{path}.mode")
    try:
        mode = AssessmentMode(mode_text)
    except ValueError:
        raise MalformedDocumentError(
            f"{path}.mode: not one of binary, resolution, count"
        ) from None
    present = _expect_bool(obj["present"], f"{path}.present") if "present" in obj else None
    resolution = (
        _expect_real(obj["resolution"], f"{path}.resolution") if "resolution" in obj else None
    )
    count = _expect_int(obj["count"], f"{path}.count") if "count" in obj else None
    return PropertyAssessment(
        property_id=_expect_int(obj["property_id"], f"{path}.property_id"),
        mode=mode,
        present=present,
        resolution=resolution,
        count=count,
        rationale=_expect_text(obj.get("rationale", ""), f"{path}.rationale"),
    )


def problem_from_document(document: Any, check: bool = True) -> DecisionProblem:
    """Build a problem from decoded JSON; strict schema, then validation."""
    document = _expect_object(document, "document")
    _take(document, "document", ("format_version", "problem"))
    version = _expect_text(document["format_version"], "document.format_version")
    if version != FORMAT_VERSION:
        raise VersionUnsupportedError(
            f"document.format_version: {version!r} is not supported (expected {FORMAT_VERSION!r})"
        )
    obj = _expect_object(document["problem"], "problem")
    _take(
        obj,
        "problem",
        ("id", "title", "description", "action_space", "objectives"),
        ("analyst_profile", "states", "aux_metrics", "constraints", "assessments"),
    )
    problem = DecisionProblem(
        id=_expect_text(obj["id"], "problem.id"),
        title=_expect_text(obj["title"], "problem.title"),
        description=_expect_text(obj["description"], "problem.description"),
        action_space=_space_from(obj["action_space"], "problem.action_space"),
        objectives=tuple(
            _objective_from(entry, f"problem.objectives[{i}]", MetricKind.PRIMARY)
            for i, entry in enumerate(_expect_list(obj["objectives"], "problem.objectives"))
        ),
        aux_metrics=tuple(
            _objective_from(entry, f"problem.aux_metrics[{i}]", MetricKind.AUXILIARY)
            for i, entry in enumerate(_expect_list(obj.get("aux_metrics", []), "problem.aux_metrics"))
        ),
        constraints=tuple(
            _constraint_from(entry, f"problem.constraints[{i}]")
            for i, entry in enumerate(_expect_list(obj.get("constraints", []), "problem.constraints"))
        ),
        assessments=tuple(
            _assessment_from(entry, f"problem.assessments[{i}]")
            for i, entry in enumerate(_expect_list(obj.get("assessments", []), "problem.assessments"))
        ),
        states=tuple(
            _state_from(entry, f"problem.states[{i}]")
            for i, entry in enumerate(_expect_list(obj.get("states", []), "problem.states"))
        ),
        analyst_profile=(
            _expect_text(obj["analyst_profile"], "problem.analyst_profile")
            if "analyst_profile" in obj
            else None
        ),
    )
    if check:
        diagnostics = validate(problem)
        if diagnostics:
            raise ValidationFailedError(diagnostics)
    return problem


def parse_problem(text: str, check: bool = True) -> DecisionProblem:
    """Parse document text; raise a document error or validation failure."""
    if not text.strip():
        raise MalformedDocumentError("document is empty")
    try:
        decoded = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"not valid JSON: {exc}") from exc
    return problem_from_document(decoded, check=check)


def _metric_entry_out(entry) -> Any:
    if isinstance(entry, (int, float)):
        return float(entry)
    return to_source(entry.root)


def problem_to_document(problem: DecisionProblem) -> dict:
    """Canonical JSON-ready form; empty optional sections are omitted."""
    space = problem.action_space
    space_out: dict[str, Any] = {"kind": space.kind.value}
    if space.kind is SpaceKind.DISCRETE:
        space_out["actions"] = [
            {
                "id": action.id,
                **({"name": action.name} if action.name else {}),
                "metric_values": {
                    key: _metric_entry_out(value) for key, value in action.metric_values.items()
                },
                **({"bindings": {k: float(v) for k, v in action.bindings.items()}}
                   if action.bindings else {}),
            }
            for action in space.actions
        ]
    else:
        space_out["variables"] = [
            {"name": v.name, "lower": float(v.lower), "upper": float(v.upper)}
            for v in space.variables
        ]

    def objective_out(metric: Objective) -> dict:
        out: dict[str, Any] = {
            "id": metric.id,
            "name": metric.name,
            "direction": metric.direction.value,
        }
        if metric.definition is not None:
            out["definition"] = to_source(metric.definition.root)
        return out

    problem_out: dict[str, Any] = {
        "id": problem.id,
        "title": problem.title,
        "description": problem.description,
        "action_space": space_out,
        "objectives": [objective_out(m) for m in problem.objectives],
    }
    if problem.analyst_profile is not None:
        problem_out["analyst_profile"] = problem.analyst_profile
    if problem.states:
        problem_out["states"] = [
            {"id": s.id, **({"description": s.description} if s.description else {})}
            for s in problem.states
        ]
    if problem.aux_metrics:
        problem_out["aux_metrics"] = [objective_out(m) for m in problem.aux_metrics]
    if problem.constraints:
        problem_out["constraints"] = [
            {"id": c.id, "expression": to_source(c.expression.root), "bound": float(c.bound)}
            for c in problem.constraints
        ]
    if problem.assessments:
        problem_out["assessments"] = [_assessment_out(a) for a in problem.assessments]
    return {"format_version": FORMAT_VERSION, "problem": problem_out}


def _assessment_out(a: PropertyAssessment) -> dict:
    out: dict[str, Any] = {"property_id": a.property_id, "mode": a.mode.value}
    if a.present is not None:
        out["present"] = a.present
    if a.resolution is not None:
        out["resolution"] = float(a.resolution)
    if a.count is not None:
        out["count"] = int(a.count)
    if a.rationale:
        out["rationale"] = a.rationale
    return out


def serialize_problem(problem: DecisionProblem) -> str:
    """Canonical document text: sorted keys, two-space indent, one trailing newline."""
    document = problem_to_document(problem)
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + "\n"


# Report assembly and rendering.

@dataclass(frozen=True)
class Report:
    """Engine outputs for one problem, ready to render."""

    problem_id: str
    title: str
    complexity: ComplexityScore
    recommendations: tuple[Recommendation, ...]
    gaps: GapReport
    front: ParetoFront | None = None
    tradeoffs: TradeoffSummary | None = None
    metric_ids: tuple[str, ...] = ()


def build_report(
    problem: DecisionProblem,
    config: ResolutionConfig | None = None,
    search: SearchConfig | None = None,
    include_front: bool = True,
) -> Report:
    """Run the whole pipeline: score, recommend, gaps, then trade-offs."""
    config = config or ResolutionConfig()
    score = complexity(problem, config)
    recommendations = tuple(recommend(problem, config))
    gaps = gap_report(problem, config)
    front = None
    tradeoffs = None
    if include_front:
        if problem.action_space.kind is SpaceKind.DISCRETE:
            front = solve_discrete(problem)
        else:
            front = solve_continuous(problem, search or SearchConfig())
        tradeoffs = tradeoff_summary(front) if front.members else None
    return Report(
        problem_id=problem.id,
        title=problem.title,
        complexity=score,
        recommendations=recommendations,
        gaps=gaps,
        front=front,
        tradeoffs=tradeoffs,
        metric_ids=problem.metric_ids,
    )


def candidate_to_dict(candidate: CandidateSolution) -> dict:
    origin: Any = candidate.origin
    if isinstance(origin, tuple):
        origin = [float(v) for v in origin]
    return {
        "origin": origin,
        "objectives": [float(v) for v in candidate.objectives],
        "constraint_slacks": [float(v) for v in candidate.constraint_slacks],
        "feasible": candidate.feasible,
    }


def complexity_to_dict(score: ComplexityScore) -> dict:
    return {
        "h": score.h,
        "k": score.k,
        "factors": [
            {"property_id": f.property_id, "resolution": f.resolution, "factor": f.factor}
            for f in score.factors
        ],
    }


def recommendation_to_dict(rec: Recommendation) -> dict:
    return {
        "strategy": {
            "id": rec.strategy.id,
            "name": rec.strategy.name,
            "enabling_properties": sorted(rec.strategy.enabling_properties),
        },
        "supporting_properties": [
            {"property_id": pid, "resolution": r} for pid, r in rec.supporting_properties
        ],
        "score": rec.score,
    }


def gaps_to_dict(gaps: GapReport) -> dict:
    return {
        "absent_properties": list(gaps.absent_properties),
        "hardest_nut": gaps.hardest_nut,
    }


def front_to_dict(front: ParetoFront) -> dict:
    return {
        "members": [candidate_to_dict(c) for c in front.members],
        "directions": [d.value for d in front.directions],
        "warnings": list(front.warnings),
    }


def tradeoffs_to_dict(summary: TradeoffSummary) -> dict:
    return {
        "extremes": [
            {
                "objective_index": e.objective_index,
                "best": candidate_to_dict(e.best),
                "worst": candidate_to_dict(e.worst),
            }
            for e in summary.extremes
        ],
        "knee": candidate_to_dict(summary.knee),
        "knee_index": summary.knee_index,
    }


def report_to_dict(report: Report) -> dict:
    out = {
        "problem": {
            "id": report.problem_id,
            "title": report.title,
            "metric_ids": list(report.metric_ids),
        },
        "complexity": complexity_to_dict(report.complexity),
        "recommendations": [recommendation_to_dict(r) for r in report.recommendations],
        "gaps": gaps_to_dict(report.gaps),
        "front": front_to_dict(report.front) if report.front is not None else None,
        "tradeoffs": tradeoffs_to_dict(report.tradeoffs) if report.tradeoffs is not None else None,
    }
    return out


def _sig(value: float) -> str:
    return f"{value:.6g}"


def _origin_text(candidate: CandidateSolution) -> str:
    if isinstance(candidate.origin, tuple):
        return "(" + ", ".join(_sig(v) for v in candidate.origin) + ")"
    return str(candidate.origin)


HARDEST_NUT_ADVISORY = (
    "No cataloged strategy applies: none of the fourteen structural "
    "properties is present. Problems like this are the hardest nuts; "
    "revisit the assessments or widen the framing before committing to a "
    "course of action."
)


def render_report(report: Report, target: str = "markdown") -> str:
    """Render a report deterministically as markdown or JSON text."""
    if target == "json":
        return json.dumps(report_to_dict(report), sort_keys=True, indent=2, allow_nan=False) + "\n"
    if target != "markdown":
        raise ValueError(f"unknown render target {target!r}")

    lines: list[str] = []
    lines.append(f"# {report.title}")
    lines.append("")
    lines.append(f"Problem `{report.problem_id}`.")
    lines.append("")
    lines.append("## Complexity")
    lines.append("")
    lines.append(f"H = {_sig(report.complexity.h)} (k = {report.complexity.k} resolved "
                 f"propert{'y' if report.complexity.k == 1 else 'ies'})")
    if report.complexity.factors:
        lines.append("")
        lines.append("| id | property | resolution | factor |")
        lines.append("|---:|----------|-----------:|-------:|")
        for f in report.complexity.factors:
            name = property_by_id(f.property_id).name
            lines.append(
                f"| {f.property_id} | {name} | {_sig(f.resolution)} | {_sig(f.factor)} |"
            )
    lines.append("")
    lines.append("## Recommended strategies")
    lines.append("")
    if report.recommendations:
        for i, rec in enumerate(report.recommendations, start=1):
            via = ", ".join(
                f"{pid} ({property_by_id(pid).name})" for pid, _ in rec.supporting_properties
            )
            lines.append(
                f"{i}. {rec.strategy.name} (score {_sig(rec.score)}; via {via})"
            )
    else:
        lines.append(HARDEST_NUT_ADVISORY)
    lines.append("")
    lines.append("## Missing properties")
    lines.append("")
    if report.gaps.absent_properties:
        lines.append(
            ", ".join(
                f"{pid} ({property_by_id(pid).name})" for pid in report.gaps.absent_properties
            )
        )
    else:
        lines.append("None; every property contributes.")
    if report.front is not None:
        lines.append("")
        lines.append("## Trade-off front")
        lines.append("")
        if report.front.members:
            labels = report.metric_ids or tuple(
                f"objective {j}" for j in range(len(report.front.directions))
            )
            lines.append("| origin | " + " | ".join(labels) + " |")
            lines.append("|--------|" + "---:|" * len(report.front.directions))
            for member in report.front.members:
                cells = " | ".join(_sig(v) for v in member.objectives)
                lines.append(f"| {_origin_text(member)} | {cells} |")
            if report.tradeoffs is not None:
                lines.append("")
                lines.append(f"Knee point: {_origin_text(report.tradeoffs.knee)}")
        else:
            lines.append("No feasible candidates.")
            for warning in report.front.warnings:
                lines.append(f"Warning: {warning}")
    lines.append("")
    return "\n".join(lines)
