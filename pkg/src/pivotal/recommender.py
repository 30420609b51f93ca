"""Strategy recommendations from tagged properties.

Every strategy in the catalog is enabled by one or more structural
properties.  Once a problem's assessments are turned into resolutions,
each strategy whose enabling properties carry any weight becomes a
recommendation, ranked by the summed resolution of its supporters.  The
additive rule is a convention of this artifact: it surfaces strategies
backed by several strong properties first and is easy to audit.

The gap report is the inverse view: which properties the problem lacks.
A problem missing all fourteen is flagged, since no cataloged strategy
applies to it at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .problem_model import DecisionProblem, ValidationFailedError, validate
from .scoring import PROPERTY_IDS, ResolutionConfig, resolution
from .taxonomy import Strategy, catalog


@dataclass(frozen=True)
class Recommendation:
    """One applicable strategy with the properties that enable it here."""

    strategy: Strategy
    supporting_properties: tuple[tuple[int, float], ...]
    score: float


@dataclass(frozen=True)
class GapReport:
    """Properties the problem lacks; hardest_nut when that is all of them."""

    absent_properties: tuple[int, ...]
    hardest_nut: bool


def _resolutions(problem: DecisionProblem, config: ResolutionConfig) -> dict[int, float]:
    diagnostics = validate(problem)
    if diagnostics:
        raise ValidationFailedError(diagnostics)
    by_property = {a.property_id: a for a in problem.assessments}
    return {
        pid: resolution(by_property[pid], config) if pid in by_property else 0.0
        for pid in PROPERTY_IDS
    }


def recommend(
    problem: DecisionProblem,
    config: ResolutionConfig | None = None,
    top: int | None = None,
) -> list[Recommendation]:
    """Rank every strategy enabled by a property the problem actually has.

    Sorted by summed supporter resolution descending; ties fall back to
    the catalog row of the first supporting property, then to the slug.
    ``top`` truncates the list.
    """
    config = config or ResolutionConfig()
    res = _resolutions(problem, config)
    out = []
    for strategy in catalog().strategies:
        supporting = tuple(
            (pid, res[pid]) for pid in sorted(strategy.enabling_properties) if res[pid] > 0.0
        )
        if supporting:
            score = sum(r for _, r in supporting)
            out.append(Recommendation(strategy, supporting, score))
    out.sort(key=lambda rec: (-rec.score, rec.supporting_properties[0][0], rec.strategy.id))
    return out[:top] if top is not None else out


def gap_report(problem: DecisionProblem, config: ResolutionConfig | None = None) -> GapReport:
    """List the properties with zero resolution; flag the all-absent case."""
    config = config or ResolutionConfig()
    res = _resolutions(problem, config)
    absent = tuple(pid for pid in PROPERTY_IDS if res[pid] == 0.0)
    return GapReport(absent_properties=absent, hardest_nut=len(absent) == len(PROPERTY_IDS))
