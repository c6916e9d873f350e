"""Queue-batch simulation: cars are allocated one batch at a time against a shared inventory."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .allocation import AllocationConfig, nash_allocate
from .model import ProjectedScenario, Scenario, project_to_gates


@dataclass(frozen=True)
class StagePlan:
    scenario: Scenario
    batches: tuple

    def __post_init__(self):
        batches = tuple(tuple(int(a) for a in b) for b in self.batches)
        object.__setattr__(self, "batches", batches)
        flat = sorted(a for b in batches for a in b)
        if flat != list(range(self.scenario.n_agents)):
            raise ValueError("every car must appear in exactly one batch")

    @classmethod
    def by_batch_size(cls, scenario: Scenario, size: int) -> "StagePlan":
        if size < 1:
            raise ValueError("batch size must be at least 1")
        n = scenario.n_agents
        return cls(scenario, tuple(tuple(range(i, min(i + size, n))) for i in range(0, n, size)))


def run_stages(plan: StagePlan, config: AllocationConfig = AllocationConfig(),
               projected: ProjectedScenario = None) -> list:
    """One allocation per batch; slots taken in a stage stay taken afterwards."""
    if projected is None:
        projected = project_to_gates(plan.scenario)
    available = np.ones(projected.n_slots, dtype=bool)
    return [nash_allocate(projected, config, agents=batch, available=available) for batch in plan.batches]
