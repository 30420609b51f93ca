"""Builders and independent oracles shared across the test suite.

The oracles here deliberately take different routes than the library:
the front oracle is a full pairwise dominance matrix, while the library
filters incrementally; random problems are assembled field by field so
round-trip failures point at the serializer, not the generator.
"""

from __future__ import annotations

import random

import numpy as np

from pivotal import (
    Action,
    ActionSpace,
    CandidateSolution,
    Constraint,
    DecisionProblem,
    DecisionVariable,
    Objective,
    PropertyAssessment,
    StateDescriptor,
)
from pivotal.expressions import parse


def candidate(objectives, feasible=True, origin=None, slacks=()):
    if origin is None:
        origin = f"c{id(objectives) % 9973}"
    return CandidateSolution(
        origin=origin,
        objectives=tuple(float(v) for v in objectives),
        constraint_slacks=tuple(slacks),
        feasible=feasible,
    )


def oracle_front_indices(vectors, directions, feasible=None):
    """Brute-force nondominated indices via one pairwise comparison matrix."""
    pts = np.asarray(vectors, dtype=float).reshape(-1, len(directions))
    n = pts.shape[0]
    if n == 0:
        return set()
    if feasible is None:
        feasible = [True] * n
    feas = np.asarray(feasible, dtype=bool)
    # Direction is a str enum, so enum members and plain strings compare alike
    sign = np.array([1.0 if d == "maximize" else -1.0 for d in directions])
    oriented = pts * sign
    a = oriented[:, None, :]
    b = oriented[None, :, :]
    dominates = (a >= b).all(axis=2) & (a > b).any(axis=2)
    dominates &= feas[:, None] & feas[None, :]
    dominated = dominates.any(axis=0)
    return {int(i) for i in np.flatnonzero(feas & ~dominated)}


_WORDS = (
    "harbor", "signal", "quarry", "lattice", "meadow", "cinder", "drift",
    "summit", "ledger", "orchard", "beacon", "tides",
)


def _text(rng: random.Random, n: int = 3) -> str:
    return " ".join(rng.choice(_WORDS) for _ in range(n))


def _real(rng: random.Random) -> float:
    pick = rng.random()
    if pick < 0.2:
        return float(rng.randint(-50, 50))
    if pick < 0.3:
        return rng.uniform(-1e6, 1e6)
    if pick < 0.4:
        return rng.uniform(-1e-6, 1e-6)
    return round(rng.uniform(-100.0, 100.0), 4)


def random_assessment(rng: random.Random, property_id: int) -> PropertyAssessment:
    mode = rng.choice(("binary", "resolution", "count"))
    rationale = _text(rng) if rng.random() < 0.5 else ""
    if mode == "binary":
        return PropertyAssessment(property_id=property_id, mode="binary",
                                  present=rng.random() < 0.7, rationale=rationale)
    if mode == "resolution":
        return PropertyAssessment(property_id=property_id, mode="resolution",
                                  resolution=round(rng.random(), 6), rationale=rationale)
    return PropertyAssessment(property_id=property_id, mode="count",
                              count=rng.randint(0, 40), rationale=rationale)


def random_assessments(rng: random.Random) -> list[PropertyAssessment]:
    ids = rng.sample(range(1, 15), rng.randint(0, 14))
    return [random_assessment(rng, pid) for pid in sorted(ids)]


_EXPR_TEMPLATES = (
    "{a} * {x} + {b}",
    "{x}^2 - {a}",
    "tanh({x}) + {b} * {y}",
    "min({x}, {y}) * {a}",
    "max({x} - {b}, {y})",
    "exp({x} / 10) + {a}",
    "abs({y}) + {x}",
    "sqrt(abs({x}) + 1) - {y}",
)


def _random_expression(rng: random.Random, names: list[str]):
    template = rng.choice(_EXPR_TEMPLATES)
    x = rng.choice(names)
    y = rng.choice(names)
    a = round(rng.uniform(0.5, 5.0), 2)
    b = round(rng.uniform(-3.0, 3.0), 2)
    return parse(template.format(x=x, y=y, a=a, b=b))


def random_problem(rng: random.Random) -> DecisionProblem:
    """A valid problem with random shape, metrics, and assessments."""
    n_objectives = rng.randint(1, 4)
    n_aux = rng.randint(0, 2)
    metric_ids = [f"m{i}" for i in range(n_objectives + n_aux)]
    directions = [rng.choice(("maximize", "minimize")) for _ in metric_ids]
    discrete = rng.random() < 0.5

    if discrete:
        n_actions = rng.randint(1, 6)
        with_bindings = rng.random() < 0.4
        actions = []
        for i in range(n_actions):
            bindings = {"u": _real(rng)} if with_bindings else {}
            values = {}
            for mid in metric_ids:
                if with_bindings and rng.random() < 0.3:
                    values[mid] = _random_expression(rng, ["u"])
                else:
                    values[mid] = _real(rng)
            actions.append(Action(id=f"a{i}", name=_text(rng, 2) if rng.random() < 0.6 else "",
                                  metric_values=values, bindings=bindings))
        space = ActionSpace(kind="discrete", actions=actions)
        constraints = []
        if with_bindings and rng.random() < 0.5:
            constraints.append(Constraint(id="limit", expression=parse("u"),
                                          bound=round(rng.uniform(-50, 50), 3)))
        definitions = {mid: None for mid in metric_ids}
    else:
        n_vars = rng.randint(1, 3)
        names = [f"v{i}" for i in range(n_vars)]
        variables = []
        for name in names:
            lower = round(rng.uniform(-10.0, 5.0), 3)
            upper = lower + round(rng.uniform(0.5, 10.0), 3)
            variables.append(DecisionVariable(name=name, lower=lower, upper=upper))
        space = ActionSpace(kind="continuous", variables=variables)
        constraints = []
        if rng.random() < 0.4:
            constraints.append(Constraint(id="limit", expression=_random_expression(rng, names),
                                          bound=round(rng.uniform(-20, 20), 3)))
        definitions = {mid: _random_expression(rng, names) for mid in metric_ids}

    objectives = tuple(
        Objective(id=mid, name=_text(rng, 2), direction=directions[i], kind="primary",
                  definition=definitions[mid])
        for i, mid in enumerate(metric_ids[:n_objectives])
    )
    aux = tuple(
        Objective(id=mid, name=_text(rng, 2), direction=directions[n_objectives + i],
                  kind="auxiliary", definition=definitions[mid])
        for i, mid in enumerate(metric_ids[n_objectives:])
    )
    states = tuple(
        StateDescriptor(id=f"s{i}", description=_text(rng))
        for i in range(rng.randint(0, 2))
    )
    return DecisionProblem(
        id=f"problem-{rng.randrange(10**6)}",
        title=_text(rng, 4),
        description=_text(rng, 8),
        action_space=space,
        objectives=objectives,
        aux_metrics=aux,
        constraints=tuple(constraints),
        assessments=tuple(random_assessments(rng)),
        states=states,
        analyst_profile=_text(rng) if rng.random() < 0.3 else None,
    )
