"""Equilibrium-vs-greedy comparisons and allocation timing benchmarks."""

from __future__ import annotations

import csv
import dataclasses
import time
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .allocation import AllocationConfig, greedy_allocate, nash_allocate
from .generate import MASK64, GenSpec, generate
from .model import Scenario, project_to_gates

COMPARE_COLUMNS = ("run", "seed", "pssg_parked", "gpg_parked", "total_cars")
BENCH_COLUMNS = ("slots", "cars", "seconds")


@dataclass(frozen=True)
class RunResult:
    run: int
    seed: int
    pssg_parked: int
    gpg_parked: int
    total_cars: int
    total_slots: int


@dataclass(frozen=True)
class ComparisonReport:
    runs: tuple

    @property
    def mean_pssg(self) -> float:
        return float(np.mean([r.pssg_parked for r in self.runs]))

    @property
    def mean_gpg(self) -> float:
        return float(np.mean([r.gpg_parked for r in self.runs]))

    def _fraction(self, pred) -> float:
        return sum(1 for r in self.runs if pred(r)) / len(self.runs)

    @property
    def pssg_better(self) -> float:
        return self._fraction(lambda r: r.pssg_parked > r.gpg_parked)

    @property
    def tie(self) -> float:
        return self._fraction(lambda r: r.pssg_parked == r.gpg_parked)

    @property
    def pssg_worse(self) -> float:
        return self._fraction(lambda r: r.pssg_parked < r.gpg_parked)

    @property
    def histogram(self) -> dict:
        """Run count keyed by ``pssg_parked - gpg_parked``."""
        return dict(sorted(Counter(r.pssg_parked - r.gpg_parked for r in self.runs).items()))

    def summary(self) -> dict:
        return {
            "runs": len(self.runs),
            "mean_pssg_parked": self.mean_pssg,
            "mean_gpg_parked": self.mean_gpg,
            "pssg_better": self.pssg_better,
            "tie": self.tie,
            "pssg_worse": self.pssg_worse,
            "histogram": {str(k): v for k, v in self.histogram.items()},
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COMPARE_COLUMNS)
            for r in self.runs:
                writer.writerow([r.run, r.seed, r.pssg_parked, r.gpg_parked, r.total_cars])


def parked_counts(scenario: Scenario, config: AllocationConfig = AllocationConfig()) -> tuple:
    """``(equilibrium_parked, greedy_parked)`` for one scenario."""
    projected = project_to_gates(scenario)
    return (nash_allocate(projected, config).parked_count,
            greedy_allocate(projected, config).parked_count)


def compare(runs: int, template: GenSpec, seed: int, sizes: Optional[Sequence[int]] = None,
            config: AllocationConfig = AllocationConfig()) -> ComparisonReport:
    """Run ``runs`` generated instances with seeds ``seed + r``.

    With ``sizes``, run ``r`` uses ``sizes[r % len(sizes)]`` cars and as many
    slots, in the manner of an n-cars-n-slots sweep; otherwise the template's
    counts are used as is.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    results = []
    for r in range(runs):
        run_seed = (seed + r) & MASK64
        spec = dataclasses.replace(template, seed=run_seed)
        if sizes:
            size = sizes[r % len(sizes)]
            spec = dataclasses.replace(spec, n_cars=size, m_slots=size)
        pssg, gpg = parked_counts(generate(spec), config)
        results.append(RunResult(r, run_seed, pssg, gpg, spec.n_cars, spec.m_slots))
    return ComparisonReport(tuple(results))


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log(y) against log(x); ``None`` below two points."""
    if len(xs) < 2:
        return None
    ys = np.maximum(np.asarray(ys, dtype=float), 1e-9)
    return float(np.polyfit(np.log(np.asarray(xs, dtype=float)), np.log(ys), 1)[0])


def time_allocation(scenario: Scenario, repeats: int = 1, config: AllocationConfig = AllocationConfig()) -> tuple:
    """Best wall-clock seconds of ``nash_allocate`` over ``repeats``, plus the parked count."""
    projected = project_to_gates(scenario)
    best = float("inf")
    parked = None
    for _ in range(repeats):
        start = time.perf_counter()
        alloc = nash_allocate(projected, config)
        best = min(best, time.perf_counter() - start)
        parked = alloc.parked_count
    return best, parked


@dataclass(frozen=True)
class BenchRow:
    slots: int
    cars: int
    seconds: float
    parked: int


@dataclass(frozen=True)
class BenchReport:
    rows: tuple

    @property
    def slope(self) -> Optional[float]:
        return loglog_slope([r.cars for r in self.rows], [r.seconds for r in self.rows])

    def summary(self) -> dict:
        return {"rows": [dataclasses.asdict(r) for r in self.rows], "loglog_slope": self.slope}

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(BENCH_COLUMNS)
            for r in self.rows:
                writer.writerow([r.slots, r.cars, f"{r.seconds:.6f}"])


def bench(slots: Optional[int], cars_schedule: Sequence[int], seed: int, gates: int = 1,
          repeats: int = 1) -> BenchReport:
    """Time the equilibrium allocation for each car count.

    ``slots=None`` ties the slot count to the car count. Generation and I/O
    stay outside the timed region.
    """
    if not cars_schedule:
        raise ValueError("cars schedule must not be empty")
    rows = []
    for cars in cars_schedule:
        m = cars if slots is None else slots
        scenario = generate(GenSpec(cars, m, gates, seed=seed))
        seconds, parked = time_allocation(scenario, repeats)
        rows.append(BenchRow(m, cars, seconds, parked))
    return BenchReport(tuple(rows))


def doubling_schedule(start: int, doublings: int) -> list:
    return [start * 2**k for k in range(doublings + 1)]
