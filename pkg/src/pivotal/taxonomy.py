"""Catalog of the 14 pivotal properties of decision problems and the
uncertainty-robust solution strategies each property enables.

The catalog is a fixed knowledge base: read-only after import, identical
across calls and process restarts. A strategy listed under several
properties (for example trial-and-error) is a single record whose
enabling_properties set covers every row that names it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Cluster(str, Enum):
    DECISION_CONTEXT = "decision-context"
    ACTION_EVENT_SPACE = "action-event-space"


@dataclass(frozen=True)
class PivotalProperty:
    id: int  # row number, 1..14
    name: str
    cluster: Cluster
    definition: str
    epistemic: bool


@dataclass(frozen=True)
class Strategy:
    id: str  # lowercase-hyphenated slug of the name
    name: str
    enabling_properties: frozenset[int]


@dataclass(frozen=True)
class Catalog:
    properties: tuple[PivotalProperty, ...]
    strategies: tuple[Strategy, ...]


class UnknownPropertyError(KeyError):
    def __init__(self, property_id: int):
        super().__init__(f"no pivotal property with id {property_id}; valid ids are 1..14")
        self.property_id = property_id


# One row per property: (id, name, cluster, definition, strategy cell).
# Strategy cells are already split into individual strategy strings.
_ROWS: tuple[tuple[int, str, Cluster, str, tuple[str, ...]], ...] = (
    (
        1,
        "Easily satisficeable",
        Cluster.DECISION_CONTEXT,
        "Easily satisficeable refers to problems where feasible solutions are "
        "easily found and/or where many of the feasible solutions are likely "
        "acceptable to the stakeholders, and therefore finding and comparing "
        "alternative solutions is easier.",
        ("Find a feasible solution", "Use the default action", "Select a solution using heuristics"),
    ),
    (
        2,
        "Reversible with acceptable losses",
        Cluster.DECISION_CONTEXT,
        "Reversible means that the action could be changed in the future with acceptable costs.",
        ("Best guess", "trial-and-error", "Wait and see"),
    ),
    (
        3,
        "Few objectives and/or Few similar stakeholders",
        Cluster.DECISION_CONTEXT,
        "Few objectives means that only one or several objectives are important, "
        "and few or similar stakeholders means that the action needs to satisfy "
        "only a small number of stakeholders, or equivalently a group that's "
        "internally similar to each other.",
        ("Optimization of total outcome", "Decision by polling or delegation (while maintaining fairness)"),
    ),
    (
        4,
        "Delayed onset, or drawn-out impact",
        Cluster.DECISION_CONTEXT,
        "Delayed onset or drawn-out impact refers to events that are anticipated "
        "to occur after a relatively long period of time, or to have gradual "
        "(and thus potentially reducible) impact.",
        ("Expansive analysis", "Preparation and planning"),
    ),
    (
        5,
        "Small event space, or Small action space",
        Cluster.ACTION_EVENT_SPACE,
        "Small event or action space means that the set of possible actions or outcomes is small.",
        ("Evaluation and comparison of all events and actions", "Focused planning"),
    ),
    (
        6,
        "Controllable system design",
        Cluster.ACTION_EVENT_SPACE,
        "Controllable system design means that it is possible to design the "
        "system at risk for the event, or at least a subset of that system.",
        ("Robust design", "Resilience planning", "Dedicated response unit", "Optionality", "Evolutionary architecture"),
    ),
    (
        7,
        "Indexable outcomes",
        Cluster.ACTION_EVENT_SPACE,
        "Indexable outcomes are outcomes that could be expressed using random "
        "variables (e.g. the market value of the investment, the number of "
        "infections and few others).",
        ("Statistical modeling", "Computation of benchmarks and volatility"),
    ),
    (
        8,
        "Transferable risk",
        Cluster.DECISION_CONTEXT,
        "Transferable risk means that the risk could be transferred substantially to another party.",
        ("Risk contracts", "Insurance & financial instruments"),
    ),
    (
        9,
        "Learnable phenomenon",
        Cluster.ACTION_EVENT_SPACE,
        "Learnable phenomenon refers to whether additional research and analysis "
        "is productive, and often means that the phenomenon is bound by laws or "
        "processes (possibly with time-varying parameters).",
        ("Basic research", "Meta-learning of unknowns", "Knowledge dissemination"),
    ),
    (
        10,
        "Well-understood phenomenon",
        Cluster.ACTION_EVENT_SPACE,
        "Well-understood phenomenon means that a body of knowledge exists to "
        "describe the phenomenon such as scientific understanding, data or "
        "human experience.",
        (
            "System models (mathematical, computational, predictive)",
            "Maximization of expected utility",
            "Probabilistic risk management",
            "Decision templates",
            "Expert elicitation and judgment",
        ),
    ),
    (
        11,
        "Well-understood adversary",
        Cluster.ACTION_EVENT_SPACE,
        "Well-understood adversary means that the decision must consider an "
        "adversary that acts to improve their outcome and can reduce ours, but "
        "we have knowledge about their capabilities.",
        ("Randomization and game-theoretic analysis", "Misdirection/Deception", "Rapid adaptation"),
    ),
    (
        12,
        "Sequentially interactable system",
        Cluster.ACTION_EVENT_SPACE,
        "Sequentially interactable refers to the ability to perform actions and "
        "observe outcomes, gradually learning the system and to optimize actions.",
        ("Trial-and-error", "Stochastic search", "Reinforcement learning"),
    ),
    (
        13,
        "Detectable hazard",
        Cluster.ACTION_EVENT_SPACE,
        "Detectable means that the event could be recognized before it occurs, "
        "or soon after it has occurred.",
        ("Early detection before impact", "Rapid identification after event"),
    ),
    (
        14,
        "Bounded hazard",
        Cluster.ACTION_EVENT_SPACE,
        "Bounded hazard means that the event is bounded by space, time or other "
        "measures (e.g. environmental contamination, extreme weather), as "
        "opposed to having an essentially total effect, or affects all of our "
        "outcomes or objectives.",
        ("Minimize area or time of impact", "Deflect", "Delay"),
    ),
)

# Properties 9 and 10 (learnable, well-understood) are the two epistemic ones.
_EPISTEMIC_IDS = frozenset({9, 10})

PROPERTY_IDS = tuple(range(1, 15))


def slugify(name: str) -> str:
    out = []
    prev_dash = True
    for ch in name.lower():
        if ch.isalnum():
            out.append(ch)
            prev_dash = False
        elif not prev_dash:
            out.append("-")
            prev_dash = True
    return "".join(out).strip("-")


def _canonical_name(cell: str) -> str:
    return cell[0].upper() + cell[1:] if cell else cell


def _build() -> tuple[Catalog, dict[int, tuple[Strategy, ...]]]:
    properties = tuple(
        PivotalProperty(id=pid, name=name, cluster=cluster, definition=definition, epistemic=pid in _EPISTEMIC_IDS)
        for pid, name, cluster, definition, _ in _ROWS
    )
    merged: dict[str, tuple[str, list[int]]] = {}
    order: list[str] = []
    for pid, _, _, _, cell in _ROWS:
        for item in cell:
            key = item.casefold()
            if key in merged:
                merged[key][1].append(pid)
            else:
                merged[key] = (_canonical_name(item), [pid])
                order.append(key)
    strategies = tuple(
        Strategy(id=slugify(name), name=name, enabling_properties=frozenset(pids))
        for name, pids in (merged[k] for k in order)
    )
    by_name = {s.name.casefold(): s for s in strategies}
    per_property = {
        pid: tuple(by_name[item.casefold()] for item in cell) for pid, _, _, _, cell in _ROWS
    }
    return Catalog(properties=properties, strategies=strategies), per_property


_CATALOG, _PER_PROPERTY = _build()


def catalog() -> Catalog:
    """The full static knowledge base: 14 properties plus all strategies."""
    return _CATALOG


def property_by_id(property_id: int) -> PivotalProperty:
    if property_id not in range(1, 15):
        raise UnknownPropertyError(property_id)
    return _CATALOG.properties[property_id - 1]


def strategies_for(property_id: int) -> tuple[Strategy, ...]:
    """Strategies enabled by a property, in catalog row order.

    Raises UnknownPropertyError for ids outside 1..14.
    """
    if property_id not in _PER_PROPERTY:
        raise UnknownPropertyError(property_id)
    return _PER_PROPERTY[property_id]


def catalog_as_dict() -> dict:
    """JSON-ready form of the catalog, used by the CLI export and the service."""
    return {
        "properties": [
            {
                "id": p.id,
                "name": p.name,
                "cluster": p.cluster.value,
                "definition": p.definition,
                "epistemic": p.epistemic,
                "strategy_ids": [s.id for s in strategies_for(p.id)],
            }
            for p in _CATALOG.properties
        ],
        "strategies": [
            {
                "id": s.id,
                "name": s.name,
                "enabling_properties": sorted(s.enabling_properties),
            }
            for s in _CATALOG.strategies
        ],
    }
