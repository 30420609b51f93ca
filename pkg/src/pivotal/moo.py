"""Multi-objective search over action spaces.

Discrete problems are solved exactly: every action is evaluated and the
dominated ones are dropped.  Continuous problems run a seeded evolutionary
search (nondominated-rank plus crowding selection, blend crossover,
Gaussian mutation) and return the nondominated subset of every feasible
point evaluated along the way.  Infeasible candidates never reach a front;
the constraints are hard bounds, not penalties.

Fronts keep exact duplicates: two actions with identical outcomes are
still different decisions, and the analyst gets to see both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .expressions import EvaluationError
from .problem_model import (
    CandidateSolution,
    DecisionProblem,
    DimensionMismatchError,
    Direction,
    SpaceKind,
    ValidationFailedError,
    evaluate_action,
    validate,
)

DirectionLike = Union[Direction, str]


@dataclass(frozen=True)
class ParetoFront:
    """Feasible, mutually nondominated candidates in input order."""

    members: tuple[CandidateSolution, ...]
    directions: tuple[Direction, ...]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class SearchConfig:
    """Evolutionary search parameters; identical configs replay identically."""

    population: int = 64
    generations: int = 100
    seed: int = 0
    mutation_rate: float = 0.1
    mutation_sigma_fraction: float = 0.05
    crossover_rate: float = 0.9

    def __post_init__(self) -> None:
        if self.population < 4 or self.population % 2:
            raise ValueError(f"population must be even and at least 4, got {self.population!r}")
        if self.generations < 1:
            raise ValueError(f"generations must be positive, got {self.generations!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit an unsigned 64-bit integer, got {self.seed!r}")
        for name in ("mutation_rate", "crossover_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {rate!r}")
        if self.mutation_sigma_fraction < 0.0:
            raise ValueError(
                f"mutation_sigma_fraction must be non-negative, got {self.mutation_sigma_fraction!r}"
            )


class SolveError(RuntimeError):
    """A candidate could not be evaluated; carries the offending origin."""

    def __init__(self, origin, cause: Exception):
        self.origin = origin
        super().__init__(f"evaluation failed for {origin!r}: {cause}")


def _as_directions(directions: Sequence[DirectionLike]) -> tuple[Direction, ...]:
    return tuple(Direction(d) for d in directions)


def dominates(
    a: CandidateSolution, b: CandidateSolution, directions: Sequence[DirectionLike]
) -> bool:
    """True iff a is at least as good everywhere and strictly better once."""
    dirs = _as_directions(directions)
    if len(a.objectives) != len(b.objectives) or len(a.objectives) != len(dirs):
        raise DimensionMismatchError(
            f"objective lengths {len(a.objectives)}, {len(b.objectives)} "
            f"do not both match {len(dirs)} direction(s)"
        )
    strictly_better = False
    for av, bv, d in zip(a.objectives, b.objectives, dirs):
        if d is Direction.MINIMIZE:
            av, bv = -av, -bv
        if av < bv:
            return False
        if av > bv:
            strictly_better = True
    return strictly_better


def _oriented(candidates: Sequence[CandidateSolution], dirs: tuple[Direction, ...]) -> np.ndarray:
    sign = np.array([1.0 if d is Direction.MAXIMIZE else -1.0 for d in dirs])
    return np.array([c.objectives for c in candidates], dtype=float) * sign


def _nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Boolean mask of the maximal points, keeping exact duplicates."""
    if points.shape[1] == 2 and np.isfinite(points).all():
        return _mask_by_sweep(points)
    return _mask_by_cull(points)


def _mask_by_sweep(points: np.ndarray) -> np.ndarray:
    """Two-objective case in O(n log n) by a sorted sweep.

    After sorting by (first desc, second desc), a row is maximal iff its
    second coordinate beats every earlier row's; equal rows sort adjacent,
    so whole duplicate runs inherit their head's verdict.
    """
    n = points.shape[0]
    order = np.lexsort((-points[:, 1], -points[:, 0]))
    sorted_points = points[order]
    second = sorted_points[:, 1]
    prev_best = np.concatenate(([-np.inf], np.maximum.accumulate(second)[:-1]))
    new_front = second > prev_best
    duplicate = np.concatenate(
        ([False], (sorted_points[1:] == sorted_points[:-1]).all(axis=1))
    )
    run_id = np.cumsum(~duplicate) - 1
    keep_sorted = new_front[~duplicate][run_id]
    mask = np.zeros(n, dtype=bool)
    mask[order] = keep_sorted
    return mask


def _mask_by_cull(points: np.ndarray) -> np.ndarray:
    """General case: a running front that each arrival is checked against.

    Arrivals evict any front member they dominate.  Dominance is
    transitive, so nothing evicted or skipped can belong to the answer.
    """
    n, m = points.shape
    buffer = np.empty((n, m))
    indices = np.empty(n, dtype=np.intp)
    count = 0
    for i in range(n):
        p = points[i]
        if count:
            front = buffer[:count]
            worse_eq = (front >= p).all(axis=1)
            if bool((worse_eq & (front > p).any(axis=1)).any()):
                continue
            evict = (front <= p).all(axis=1) & (front < p).any(axis=1)
            if evict.any():
                survivors = ~evict
                kept = int(survivors.sum())
                buffer[:kept] = front[survivors]
                indices[:kept] = indices[:count][survivors]
                count = kept
        buffer[count] = p
        indices[count] = i
        count += 1
    mask = np.zeros(n, dtype=bool)
    mask[indices[:count]] = True
    return mask


def pareto_filter(
    candidates: Sequence[CandidateSolution], directions: Sequence[DirectionLike]
) -> ParetoFront:
    """Drop infeasible candidates, then dominated ones; keep input order."""
    dirs = _as_directions(directions)
    for c in candidates:
        if len(c.objectives) != len(dirs):
            raise DimensionMismatchError(
                f"candidate {c.origin!r} has {len(c.objectives)} objective(s), "
                f"expected {len(dirs)}"
            )
    feasible = [c for c in candidates if c.feasible]
    if not feasible:
        return ParetoFront((), dirs, warnings=("no feasible candidates",))
    mask = _nondominated_mask(_oriented(feasible, dirs))
    members = tuple(c for c, keep in zip(feasible, mask) if keep)
    return ParetoFront(members, dirs)


def _require_clean(problem: DecisionProblem, kind: SpaceKind) -> None:
    diagnostics = validate(problem)
    if diagnostics:
        raise ValidationFailedError(diagnostics)
    if problem.action_space.kind is not kind:
        raise ValueError(f"{kind.value} action space required")


def solve_discrete(problem: DecisionProblem) -> ParetoFront:
    """Evaluate every action exhaustively and filter; no sampling."""
    _require_clean(problem, SpaceKind.DISCRETE)
    candidates = []
    for action in problem.action_space.actions:
        try:
            candidates.append(evaluate_action(problem, action))
        except EvaluationError as exc:
            raise SolveError(action.id, exc) from exc
    return pareto_filter(candidates, problem.directions)


def _constrained_domination(objs: np.ndarray, feas: np.ndarray, viol: np.ndarray) -> np.ndarray:
    """Pairwise matrix d[i, j]: candidate i beats candidate j.

    Feasible beats infeasible; two infeasibles compare by total violation;
    two feasibles compare by plain dominance on oriented objectives.
    """
    better_eq = (objs[:, None, :] >= objs[None, :, :]).all(axis=2)
    better = (objs[:, None, :] > objs[None, :, :]).any(axis=2)
    plain = better_eq & better
    fi = feas[:, None]
    fj = feas[None, :]
    by_violation = viol[:, None] < viol[None, :]
    return (fi & ~fj) | (fi & fj & plain) | (~fi & ~fj & by_violation)


def _rank_by_fronts(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    counts = d.sum(axis=0).astype(int)
    rank = np.zeros(n, dtype=int)
    level = 0
    current = np.flatnonzero(counts == 0)
    while current.size:
        rank[current] = level
        counts = counts - d[current].sum(axis=0)
        counts[current] = -1
        current = np.flatnonzero(counts == 0)
        level += 1
    return rank


def _crowding(objs: np.ndarray) -> np.ndarray:
    n, m = objs.shape
    dist = np.zeros(n)
    for j in range(m):
        col = objs[:, j]
        order = np.argsort(col, kind="stable")
        dist[order[0]] = dist[order[-1]] = np.inf
        span = col[order[-1]] - col[order[0]]
        if span > 0 and n > 2:
            dist[order[1:-1]] += (col[order[2:]] - col[order[:-2]]) / span
    return dist


def solve_continuous(
    problem: DecisionProblem, config: SearchConfig | None = None
) -> ParetoFront:
    """Seeded evolutionary approximation of the feasible Pareto front.

    Population initialized uniformly within bounds; each generation blends
    parent pairs, perturbs coordinates with Gaussian noise sized to a
    fraction of each variable's range, clamps to bounds, then keeps the
    best half of parents plus children by nondominated rank and crowding.
    The returned front is filtered over every point ever evaluated.
    """
    config = config or SearchConfig()
    _require_clean(problem, SpaceKind.CONTINUOUS)
    variables = problem.action_space.variables
    dirs = problem.directions
    lows = np.array([v.lower for v in variables])
    highs = np.array([v.upper for v in variables])
    sigma = config.mutation_sigma_fraction * (highs - lows)
    rng = np.random.default_rng(config.seed)

    def evaluate_points(points: np.ndarray) -> list[CandidateSolution]:
        out = []
        for row in points:
            point = tuple(float(v) for v in row)
            try:
                out.append(evaluate_action(problem, point))
            except EvaluationError as exc:
                raise SolveError(point, exc) from exc
        return out

    n = config.population
    population = rng.uniform(lows, highs, size=(n, len(variables)))
    evaluated = evaluate_points(population)
    archive = list(evaluated)

    for _ in range(config.generations):
        order = rng.permutation(n)
        children = population[order].copy()
        for i in range(0, n, 2):
            if rng.random() < config.crossover_rate:
                blend = rng.random(len(variables))
                a, b = children[i].copy(), children[i + 1].copy()
                children[i] = blend * a + (1.0 - blend) * b
                children[i + 1] = (1.0 - blend) * a + blend * b
        mutate = rng.random(children.shape) < config.mutation_rate
        children = children + mutate * rng.normal(0.0, 1.0, children.shape) * sigma
        children = np.clip(children, lows, highs)

        child_candidates = evaluate_points(children)
        archive.extend(child_candidates)

        pool = np.vstack([population, children])
        pool_candidates = evaluated + child_candidates
        objs = _oriented(pool_candidates, dirs)
        feas = np.array([c.feasible for c in pool_candidates])
        viol = np.array(
            [sum(max(s, 0.0) for s in c.constraint_slacks) for c in pool_candidates]
        )
        rank = _rank_by_fronts(_constrained_domination(objs, feas, viol))
        crowd = np.zeros(len(pool_candidates))
        for level in np.unique(rank):
            idx = np.flatnonzero(rank == level)
            crowd[idx] = _crowding(objs[idx])
        keep = np.lexsort((-crowd, rank))[:n]
        population = pool[keep]
        evaluated = [pool_candidates[i] for i in keep]

    front = pareto_filter(archive, dirs)
    if not front.members:
        return ParetoFront((), front.directions, warnings=("no feasible candidates",))
    return front


@dataclass(frozen=True)
class ObjectiveExtreme:
    """Best and worst front members for one objective, per its direction."""

    objective_index: int
    best: CandidateSolution
    worst: CandidateSolution


@dataclass(frozen=True)
class TradeoffSummary:
    """Per-objective extremes plus the front's knee point."""

    extremes: tuple[ObjectiveExtreme, ...]
    knee: CandidateSolution
    knee_index: int


_TIE_TOLERANCE = 1e-12


def tradeoff_summary(front: ParetoFront) -> TradeoffSummary:
    """Report per-objective extremes and the member with the best balance.

    The knee is the member farthest from the hyperplane through the
    normalized per-objective extreme members.  When that test cannot
    separate members (collinear or degenerate fronts), the member closest
    to the normalized ideal wins, and remaining ties go to the earliest
    member.
    """
    if not front.members:
        raise ValueError("tradeoff_summary requires a non-empty front")
    members = front.members
    raw = np.array([c.objectives for c in members], dtype=float)
    oriented = _oriented(members, front.directions)

    extremes = []
    for j in range(len(front.directions)):
        best_i = int(np.argmax(oriented[:, j]))
        worst_i = int(np.argmin(oriented[:, j]))
        extremes.append(ObjectiveExtreme(j, members[best_i], members[worst_i]))

    knee_index = _knee_index(oriented)
    return TradeoffSummary(tuple(extremes), members[knee_index], knee_index)


def _knee_index(oriented: np.ndarray) -> int:
    k, m = oriented.shape
    if k == 1:
        return 0
    mins = oriented.min(axis=0)
    spans = oriented.max(axis=0) - mins
    # Degenerate spread collapses that axis rather than dividing by zero.
    safe = np.where(spans > 0, spans, 1.0)
    norm = (oriented - mins) / safe

    distances = np.zeros(k)
    anchor_rows = norm[[int(np.argmax(norm[:, j])) for j in range(m)]]
    base = anchor_rows[-1]
    span_matrix = anchor_rows[:-1] - base
    if span_matrix.size:
        # Unit normal of the hyperplane through the anchors, via the
        # smallest singular direction; a rank-deficient anchor set keeps
        # every distance at zero and falls through to the tie breakers.
        _, singular, vh = np.linalg.svd(span_matrix)
        if singular[-1] > _TIE_TOLERANCE:
            distances = np.abs((norm - base) @ vh[-1])

    best = distances.max()
    tied = np.flatnonzero(distances >= best - _TIE_TOLERANCE)
    if tied.size == 1:
        return int(tied[0])
    to_ideal = np.linalg.norm(norm[tied] - 1.0, axis=1)
    closest = to_ideal.min()
    final = tied[to_ideal <= closest + _TIE_TOLERANCE]
    return int(final[0])
