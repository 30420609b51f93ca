"""Analytical complexity scoring.

Each structural property an analyst tags on a problem resolves some of its
difficulty.  With per-property resolutions r_i in [0, 1], the remaining
complexity is the product of the unresolved shares:

    h = prod over properties i of (1 - r_i)

Unassessed or absent properties contribute r_i = 0, so they leave h
untouched.  When every tagged property is a plain yes with a shared
constant c, the product collapses to the closed form (1 - c) ** k for k
tagged properties.  h = 1 means nothing about the problem's structure
helps; h = 0 means some property resolves it outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .problem_model import (
    AssessmentMode,
    DecisionProblem,
    PropertyAssessment,
    ValidationFailedError,
    validate,
)

PROPERTY_IDS = tuple(range(1, 15))


@dataclass(frozen=True)
class ResolutionConfig:
    """Knobs of the resolution functions.

    ``default_c`` is the resolution credited to a plain yes/no tag;
    ``overrides`` replaces it per property id.  ``count_scale`` is the
    count n at which a tally-based resolution has decayed to 1 - tanh(1),
    about 0.238.
    """

    default_c: float = 0.5
    count_scale: float = 10.0
    overrides: dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0.0 < self.default_c <= 1.0:
            raise ValueError(f"default_c must be in (0, 1], got {self.default_c!r}")
        if not self.count_scale > 0.0:
            raise ValueError(f"count_scale must be positive, got {self.count_scale!r}")
        object.__setattr__(self, "overrides", dict(self.overrides))
        for pid, c in self.overrides.items():
            if not 0.0 < c <= 1.0:
                raise ValueError(f"override for property {pid} must be in (0, 1], got {c!r}")

    def c_for(self, property_id: int) -> float:
        return self.overrides.get(property_id, self.default_c)


@dataclass(frozen=True)
class Factor:
    """One property's contribution: resolution r and multiplier 1 - r."""

    property_id: int
    resolution: float
    factor: float


@dataclass(frozen=True)
class ComplexityScore:
    """The product h with its nontrivial factors and their count k."""

    h: float
    factors: tuple[Factor, ...]
    k: int


def resolution(assessment: PropertyAssessment, config: ResolutionConfig) -> float:
    """Resolution r in [0, 1] contributed by one assessment.

    Binary mode yields the configured c when the property is present and 0
    otherwise; resolution mode passes the elicited value through; count
    mode maps a tally n to 1 - tanh(n / count_scale), so small spaces
    resolve strongly and large ones barely at all.
    """
    if assessment.mode is AssessmentMode.BINARY:
        return config.c_for(assessment.property_id) if assessment.present else 0.0
    if assessment.mode is AssessmentMode.RESOLUTION:
        return float(assessment.resolution)
    return 1.0 - math.tanh(assessment.count / config.count_scale)


def complexity(problem: DecisionProblem, config: ResolutionConfig | None = None) -> ComplexityScore:
    """Score a validated problem.

    Multiplies the factors in ascending property id so the result is
    reproducible and independent of assessment list order.  Raises
    :class:`ValidationFailedError` on a malformed problem.
    """
    config = config or ResolutionConfig()
    diagnostics = validate(problem)
    if diagnostics:
        raise ValidationFailedError(diagnostics)

    by_property = {a.property_id: a for a in problem.assessments}
    h = 1.0
    factors = []
    for pid in PROPERTY_IDS:
        assessment = by_property.get(pid)
        r = resolution(assessment, config) if assessment is not None else 0.0
        h *= 1.0 - r
        if r > 0.0:
            factors.append(Factor(pid, r, 1.0 - r))
    return ComplexityScore(h=h, factors=tuple(factors), k=len(factors))


def complexity_binary(k: int, c: float) -> float:
    """Closed form (1 - c) ** k for k uniform binary-present tags."""
    if not 0.0 < c <= 1.0:
        raise ValueError(f"c must be in (0, 1], got {c!r}")
    if not 0 <= k <= len(PROPERTY_IDS):
        raise ValueError(f"k must be in 0..{len(PROPERTY_IDS)}, got {k!r}")
    return (1.0 - c) ** k
