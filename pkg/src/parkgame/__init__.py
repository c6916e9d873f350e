"""Equilibrium parking-slot allocation for multi-car, multi-gate parking games."""

from .allocation import (
    Allocation,
    AllocationConfig,
    GreedyOrder,
    Objective,
    allocation_to_profile,
    greedy_allocate,
    nash_allocate,
)
from .generate import GenSpec, SplitMix64, generate, splitmix64_next
from .model import (
    INFINITE,
    Agent,
    DuplicateResilience,
    MissingReachEntry,
    NegativeTime,
    PayoffSummary,
    ProjectedScenario,
    ResilienceOutOfRange,
    Scenario,
    UnknownGate,
    ValidationError,
    payoff,
    profile_costs,
    project_to_gates,
    residual_cost,
    resolve_resilience_ties,
    single_gate_scenario,
    validate,
)
from .oracle import BudgetExceeded, enumerate_nash, is_nash, social_optimum
from .stages import StagePlan, run_stages

__version__ = "0.1.0"
