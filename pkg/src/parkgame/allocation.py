"""Slot allocation: the resilience-ordered equilibrium algorithm and the greedy baseline."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .model import INFINITE, ProjectedScenario, residual_cost


class Objective(enum.Enum):
    MIN_RESIDUAL = "min"
    MAX_RESIDUAL = "max"


class GreedyOrder(enum.Enum):
    ARRIVAL = "arrival"
    RESILIENCE = "resilience"


@dataclass(frozen=True)
class AllocationConfig:
    objective: Objective = Objective.MIN_RESIDUAL
    greedy_order: GreedyOrder = GreedyOrder.ARRIVAL
    # slot ties always go to the lowest slot index

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective(self.objective))
        object.__setattr__(self, "greedy_order", GreedyOrder(self.greedy_order))


@dataclass(frozen=True)
class Allocation:
    """Outcome of allocating slots to a group of agents.

    ``agents``, ``slots`` and ``costs`` are aligned; a ``None`` slot marks an
    unparked agent, whose cost is ``INFINITE``.
    """

    agents: tuple
    slots: tuple
    costs: tuple

    @property
    def assigned(self) -> dict:
        return {a: s for a, s in zip(self.agents, self.slots) if s is not None}

    @property
    def unparked(self) -> tuple:
        return tuple(a for a, s in zip(self.agents, self.slots) if s is None)

    @property
    def parked_count(self) -> int:
        return len(self.agents) - len(self.unparked)

    @property
    def finite_cost_sum(self) -> float:
        return math.fsum(c for c in self.costs if c != INFINITE)

    def choices(self, n_agents: int) -> tuple:
        """Per-agent slot vector over all ``n_agents``; agents not covered map to ``None``."""
        out = [None] * n_agents
        for a, s in zip(self.agents, self.slots):
            out[a] = s
        return tuple(out)


def merge_allocations(parts: Iterable[Allocation]) -> Allocation:
    agents, slots, costs = [], [], []
    for part in parts:
        agents.extend(part.agents)
        slots.extend(part.slots)
        costs.extend(part.costs)
    return Allocation(tuple(agents), tuple(slots), tuple(costs))


def resilience_order(projected: ProjectedScenario, agents: Optional[Sequence[int]] = None) -> list:
    if agents is None:
        agents = range(projected.n_agents)
    return sorted(agents, key=lambda i: (projected.resilience[i], i))


def _finalize(projected, order, picks) -> Allocation:
    agents = tuple(sorted(order))
    slots = tuple(picks[a] for a in agents)
    costs = tuple(INFINITE if s is None else residual_cost(projected, a, s) for a, s in zip(agents, slots))
    return Allocation(agents, slots, costs)


def nash_allocate(projected: ProjectedScenario, config: AllocationConfig = AllocationConfig(), *,
                  agents: Optional[Sequence[int]] = None,
                  available: Optional[np.ndarray] = None) -> Allocation:
    """Allocate slots to agents in ascending resilience order.

    Each agent scans the available slots, takes the one with the best finite
    residual cost (lowest index on ties) and retires it. ``available`` is a
    boolean mask over slots; when given it is updated in place, which is how
    staged runs share one inventory.
    """
    if available is None:
        available = np.ones(projected.n_slots, dtype=bool)
    order = resilience_order(projected, agents)
    maximize = config.objective is Objective.MAX_RESIDUAL
    blocked = -np.inf if maximize else np.inf
    picks = {}
    for a in order:
        slack = projected.time_limits[a] - projected.reach_of(a)
        ok = available & (slack >= 0)
        if not ok.any():
            picks[a] = None
            continue
        cost = np.where(ok, projected.resilience[a] * slack, blocked)
        slot = int(np.argmax(cost) if maximize else np.argmin(cost))
        available[slot] = False
        picks[a] = slot
    return _finalize(projected, order, picks)


def greedy_allocate(projected: ProjectedScenario, config: AllocationConfig = AllocationConfig(), *,
                    agents: Optional[Sequence[int]] = None,
                    available: Optional[np.ndarray] = None) -> Allocation:
    """Each agent in turn takes the nearest remaining slot it can still reach in time."""
    if available is None:
        available = np.ones(projected.n_slots, dtype=bool)
    if agents is None:
        agents = range(projected.n_agents)
    if config.greedy_order is GreedyOrder.RESILIENCE:
        order = resilience_order(projected, agents)
    else:
        order = list(agents)
    picks = {}
    for a in order:
        reach = projected.reach_of(a)
        ok = available & (reach <= projected.time_limits[a])
        if not ok.any():
            picks[a] = None
            continue
        slot = int(np.argmin(np.where(ok, reach, np.inf)))
        available[slot] = False
        picks[a] = slot
    return _finalize(projected, order, picks)


def allocation_to_profile(alloc: Allocation, fallback: int, n_agents: Optional[int] = None) -> tuple:
    """Total strategy profile: parked agents keep their slot, the rest go to ``fallback``."""
    if n_agents is None:
        n_agents = max(alloc.agents, default=-1) + 1
    return tuple(fallback if s is None else s for s in alloc.choices(n_agents))
