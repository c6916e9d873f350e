"""Parking game data model, validation and cost semantics.

Agents, slots and gates are addressed by 0-based position. Human-readable
names (``"c1"``, ``"s2"``, ...) ride along for file I/O only.

Costs are plain floats; an agent that cannot park at its chosen slot gets
``INFINITE`` (IEEE ``inf``), which orders above every finite cost and
absorbs sums, so no sentinel arithmetic is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

INFINITE = math.inf


class ValidationError(ValueError):
    """A scenario violates one of the game structure invariants."""

    def __init__(self, message: str, ids: Sequence = ()):
        super().__init__(message)
        self.ids = tuple(ids)


class DuplicateResilience(ValidationError):
    pass


class ResilienceOutOfRange(ValidationError):
    pass


class NegativeTime(ValidationError):
    pass


class MissingReachEntry(ValidationError):
    pass


class UnknownGate(ValidationError):
    pass


@dataclass(frozen=True)
class Agent:
    gate: int
    time_limit: float
    resilience: float
    name: str = ""


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Scenario:
    """A parking game instance.

    ``reach[j, h]`` is the number of minutes needed to reach slot ``j`` from
    gate ``h``. A NaN entry marks a missing value and fails validation.
    """

    agents: tuple
    reach: np.ndarray
    slot_names: tuple = ()
    gate_names: tuple = ()

    def __post_init__(self):
        reach = np.asarray(self.reach, dtype=float)
        if reach.size == 0 and reach.ndim != 2:
            reach = np.zeros((0, len(self.gate_names)))
        if reach.ndim != 2:
            raise ValueError(f"reach must be a slots x gates matrix, got shape {reach.shape}")
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "reach", _frozen_array(reach))
        m, l = self.reach.shape
        if not self.slot_names:
            object.__setattr__(self, "slot_names", tuple(f"s{j + 1}" for j in range(m)))
        if not self.gate_names:
            object.__setattr__(self, "gate_names", tuple(f"g{h + 1}" for h in range(l)))
        named = tuple(a if a.name else Agent(a.gate, a.time_limit, a.resilience, f"c{i + 1}")
                      for i, a in enumerate(self.agents))
        object.__setattr__(self, "agents", named)

    @property
    def n_agents(self) -> int:
        return len(self.agents)

    @property
    def n_slots(self) -> int:
        return self.reach.shape[0]

    @property
    def n_gates(self) -> int:
        return self.reach.shape[1]

    @property
    def agent_names(self) -> tuple:
        return tuple(a.name for a in self.agents)

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return (self.agents == other.agents
                and self.slot_names == other.slot_names
                and self.gate_names == other.gate_names
                and self.reach.shape == other.reach.shape
                and np.array_equal(self.reach, other.reach, equal_nan=True))

    __hash__ = None


def single_gate_scenario(time_limits, resilience, reach) -> Scenario:
    """Build a one-gate scenario from per-agent limits and a reach vector."""
    agents = [Agent(0, float(t), float(f)) for t, f in zip(time_limits, resilience)]
    return Scenario(agents, np.asarray(reach, dtype=float).reshape(-1, 1))


def validate(scenario: Scenario) -> None:
    """Raise the first violated invariant as a ``ValidationError`` subclass."""
    m, l = scenario.reach.shape
    for i, a in enumerate(scenario.agents):
        if not 0 <= a.gate < l:
            raise UnknownGate(f"agent {a.name} uses unknown gate {a.gate}", [a.name])
    missing = np.argwhere(np.isnan(scenario.reach))
    if len(missing):
        j, h = missing[0]
        raise MissingReachEntry(
            f"no reaching time for slot {scenario.slot_names[j]} from gate {scenario.gate_names[h]}",
            [scenario.slot_names[j], scenario.gate_names[h]])
    for a in scenario.agents:
        if not 0.0 <= a.resilience <= 1.0:
            raise ResilienceOutOfRange(f"agent {a.name} has resilience {a.resilience}", [a.name])
    for a in scenario.agents:
        if not a.time_limit >= 0:
            raise NegativeTime(f"agent {a.name} has time limit {a.time_limit}", [a.name])
    negative = np.argwhere(scenario.reach < 0)
    if len(negative):
        j, h = negative[0]
        raise NegativeTime(
            f"slot {scenario.slot_names[j]} has negative reaching time from gate {scenario.gate_names[h]}",
            [scenario.slot_names[j], scenario.gate_names[h]])
    seen = {}
    for a in scenario.agents:
        if a.resilience in seen:
            raise DuplicateResilience(
                f"agents {seen[a.resilience]} and {a.name} share resilience {a.resilience}",
                [seen[a.resilience], a.name])
        seen[a.resilience] = a.name


def resolve_resilience_ties(scenario: Scenario) -> Scenario:
    """Make resilience values distinct by nudging ties upward, earlier agents first.

    The relative order of already-distinct values is preserved; each tied value
    moves by the minimum number of ulps needed.
    """
    order = sorted(range(scenario.n_agents), key=lambda i: (scenario.agents[i].resilience, i))
    new = [a.resilience for a in scenario.agents]
    prev = -math.inf
    for i in order:
        if new[i] <= prev:
            new[i] = math.nextafter(prev, math.inf)
        prev = new[i]
    agents = [Agent(a.gate, a.time_limit, f, a.name) for a, f in zip(scenario.agents, new)]
    return Scenario(agents, scenario.reach, scenario.slot_names, scenario.gate_names)


@dataclass(frozen=True, eq=False)
class ProjectedScenario:
    """A scenario seen after every car has been bound to its entrance gate.

    The per-agent reach vector is a view onto the gate's column of the source
    matrix, so projection costs O(n) memory regardless of slot count.
    """

    source: Scenario
    time_limits: np.ndarray = field(init=False)
    resilience: np.ndarray = field(init=False)
    gates: np.ndarray = field(init=False)

    def __post_init__(self):
        agents = self.source.agents
        object.__setattr__(self, "time_limits", _frozen_array([a.time_limit for a in agents]))
        object.__setattr__(self, "resilience", _frozen_array([a.resilience for a in agents]))
        object.__setattr__(self, "gates", _frozen_array([a.gate for a in agents], dtype=np.intp))

    @property
    def n_agents(self) -> int:
        return self.source.n_agents

    @property
    def n_slots(self) -> int:
        return self.source.n_slots

    @property
    def agents(self) -> tuple:
        return self.source.agents

    def reach_of(self, agent: int) -> np.ndarray:
        return self.source.reach[:, self.gates[agent]]

    def reach_time(self, agent: int, slot: int) -> float:
        return float(self.source.reach[slot, self.gates[agent]])

    def can_reach(self, agent: int, slot: int) -> bool:
        return float(self.time_limits[agent]) - self.reach_time(agent, slot) >= 0


def project_to_gates(scenario: Scenario) -> ProjectedScenario:
    validate(scenario)
    return ProjectedScenario(scenario)


def residual_cost(projected: ProjectedScenario, agent: int, slot: int) -> float:
    """Cost for ``agent`` parking alone at ``slot``: resilience times leftover minutes."""
    slack = float(projected.time_limits[agent]) - projected.reach_time(agent, slot)
    if slack < 0:
        return INFINITE
    return float(projected.resilience[agent]) * slack


def profile_costs(projected: ProjectedScenario, profile: Sequence[Optional[int]]) -> tuple:
    """Per-agent costs of a strategy profile.

    Among the agents that pick one slot and can reach it, only the one with the
    lowest resilience pays a finite cost. A ``None`` entry means the agent holds
    no slot; it pays ``INFINITE`` and pre-empts nobody.
    """
    if len(profile) != projected.n_agents:
        raise ValueError(f"profile has {len(profile)} entries for {projected.n_agents} agents")
    holder = {}
    for i, slot in enumerate(profile):
        if slot is None or not projected.can_reach(i, slot):
            continue
        k = holder.get(slot)
        if k is None or projected.resilience[i] < projected.resilience[k]:
            holder[slot] = i
    return tuple(residual_cost(projected, i, slot) if slot is not None and holder.get(slot) == i
                 else INFINITE
                 for i, slot in enumerate(profile))


@dataclass(frozen=True)
class PayoffSummary:
    parked_count: int
    finite_sum: float
    has_infinite: bool


def payoff(costs: Sequence[float]) -> PayoffSummary:
    finite = [c for c in costs if c != INFINITE]
    return PayoffSummary(len(finite), math.fsum(finite), len(finite) < len(costs))
