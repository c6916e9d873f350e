"""Exhaustive ground truth for small games: equilibrium checks, enumeration, social optimum."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import INFINITE, ProjectedScenario, profile_costs, residual_cost

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Deviation:
    agent: int
    slot: int
    old_cost: float
    new_cost: float


@dataclass(frozen=True)
class NashCheck:
    is_equilibrium: bool
    witness: Optional[Deviation] = None

    def __bool__(self):
        return self.is_equilibrium


def deviation_cost(projected: ProjectedScenario, profile: Sequence[Optional[int]], agent: int, slot: int) -> float:
    """Cost ``agent`` would pay by moving to ``slot`` while everyone else stays put."""
    if not projected.can_reach(agent, slot):
        return INFINITE
    f = projected.resilience[agent]
    for k, s in enumerate(profile):
        if k != agent and s == slot and projected.resilience[k] < f and projected.can_reach(k, slot):
            return INFINITE
    return residual_cost(projected, agent, slot)


def find_deviation(projected: ProjectedScenario, profile: Sequence[Optional[int]],
                   costs: Optional[Sequence[float]] = None) -> Optional[Deviation]:
    """First strictly improving unilateral move, scanning agents then slots in index order.

    ``None`` entries (agents holding no slot) are allowed: such an agent sits
    at ``INFINITE`` and may deviate to any slot.
    """
    if costs is None:
        costs = profile_costs(projected, profile)
    for i in range(projected.n_agents):
        for j in range(projected.n_slots):
            if j == profile[i]:
                continue
            new = deviation_cost(projected, profile, i, j)
            if new < costs[i]:
                return Deviation(i, j, costs[i], new)
    return None


def is_nash(projected: ProjectedScenario, profile: Sequence[Optional[int]]) -> NashCheck:
    witness = find_deviation(projected, profile)
    return NashCheck(witness is None, witness)


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceeded(f"{count} profiles exceed the enumeration budget of {budget}")


def enumerate_nash(projected: ProjectedScenario, limit: Optional[int] = None,
                   budget: int = DEFAULT_BUDGET) -> list:
    """All pure equilibria as ``(profile, costs)`` pairs in lexicographic profile order."""
    n, m = projected.n_agents, projected.n_slots
    _check_budget(m**n, budget)
    found = []
    for profile in itertools.product(range(m), repeat=n):
        if limit is not None and len(found) >= limit:
            break
        costs = profile_costs(projected, profile)
        if find_deviation(projected, profile, costs) is None:
            found.append((profile, costs))
    return found


@dataclass(frozen=True)
class SocialOptimum:
    assignment: tuple
    parked_count: int
    finite_sum: float


def social_optimum(projected: ProjectedScenario, budget: int = DEFAULT_BUDGET) -> SocialOptimum:
    """Best injective assignment: most cars parked, then least total cost.

    Candidates are visited in lexicographic order with "no slot" sorting after
    every real slot; the first best one wins ties.
    """
    n, m = projected.n_agents, projected.n_slots
    _check_budget((m + 1)**n, budget)
    options = [[j for j in range(m) if projected.can_reach(i, j)] + [None] for i in range(n)]
    best = None
    best_key = None
    chosen = [None] * n
    used = set()

    def visit(i):
        nonlocal best, best_key
        if i == n:
            costs = [residual_cost(projected, a, s) for a, s in enumerate(chosen) if s is not None]
            key = (-len(costs), math.fsum(costs))
            if best_key is None or key < best_key:
                best, best_key = tuple(chosen), key
            return
        for s in options[i]:
            if s is not None:
                if s in used:
                    continue
                used.add(s)
            chosen[i] = s
            visit(i + 1)
            if s is not None:
                used.discard(s)
        chosen[i] = None

    visit(0)
    return SocialOptimum(best, -best_key[0], best_key[1])
