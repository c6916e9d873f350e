"""Seeded, platform-independent random scenarios.

All randomness comes from splitmix64 with integer-only arithmetic, so a seed
produces the same scenario everywhere. Draw order is fixed: every reach entry
(slot-major, gates inner), then every time limit, then every resilience value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Agent, Scenario

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
RESILIENCE_DIGITS = 12


def splitmix64_next(state: int) -> tuple:
    """Advance a splitmix64 state; returns ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state, out = splitmix64_next(self.state)
        return out

    def randint(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]`` by modulo reduction."""
        return self.next() % (hi - lo + 1) + lo

    def unit(self, digits: int = RESILIENCE_DIGITS) -> float:
        """``output / 2**64`` rounded half-up to ``digits`` decimals, in [0, 1]."""
        scale = 10**digits
        q, r = divmod(self.next() * scale, 1 << 64)
        if 2 * r >= 1 << 64:
            q += 1
        return q / scale


@dataclass(frozen=True)
class GenSpec:
    n_cars: int
    m_slots: int
    l_gates: int = 1
    reach_range: tuple = (1, 10)
    time_range: tuple = (1, 12)
    seed: int = 0

    def __post_init__(self):
        if min(self.n_cars, self.m_slots, self.l_gates) < 0:
            raise ValueError("counts must be non-negative")
        if self.n_cars > 0 and self.l_gates == 0:
            raise ValueError("cars need at least one gate")
        for name in ("reach_range", "time_range"):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ValueError(f"{name} must satisfy 0 <= lo <= hi, got {(lo, hi)}")
            object.__setattr__(self, name, (int(lo), int(hi)))
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def generate(spec: GenSpec) -> Scenario:
    rng = SplitMix64(spec.seed)
    reach = np.array([[rng.randint(*spec.reach_range) for _ in range(spec.l_gates)]
                      for _ in range(spec.m_slots)], dtype=float).reshape(spec.m_slots, spec.l_gates)
    times = [rng.randint(*spec.time_range) for _ in range(spec.n_cars)]
    resilience = []
    seen = set()
    for _ in range(spec.n_cars):
        f = rng.unit()
        while f in seen:
            f = rng.unit()
        seen.add(f)
        resilience.append(f)
    agents = [Agent(i % spec.l_gates, float(t), f) for i, (t, f) in enumerate(zip(times, resilience))]
    return Scenario(agents, reach)
