"""Command-line entry point.

Exit codes: 0 success, 1 invalid scenario or input file, 2 enumeration
budget exceeded, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats
from .allocation import AllocationConfig, allocation_to_profile, greedy_allocate, merge_allocations, nash_allocate
from .experiments import GenSpec, bench, compare, doubling_schedule
from .generate import generate
from .model import ValidationError, payoff, project_to_gates, resolve_resilience_ties
from .oracle import DEFAULT_BUDGET, BudgetExceeded, find_deviation, is_nash, enumerate_nash, social_optimum
from .stages import StagePlan, run_stages

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(args):
    try:
        scenario = formats.load_scenario(args.scenario)
    except OSError as exc:
        raise UsageError(f"cannot read scenario: {exc}") from None
    if getattr(args, "resolve_resilience_ties", False):
        scenario = resolve_resilience_ties(scenario)
    return scenario, project_to_gates(scenario)


def _config(args) -> AllocationConfig:
    return AllocationConfig(objective=args.objective, greedy_order=getattr(args, "greedy_order", "arrival"))


def cmd_gen(args):
    spec = GenSpec(args.cars, args.slots, args.gates, tuple(args.reach_range), tuple(args.time_range), args.seed)
    _emit(formats.dumps(formats.scenario_to_dict(generate(spec))), args.output)


def cmd_allocate(args):
    scenario, projected = _load(args)
    allocate = nash_allocate if args.algorithm == "nash" else greedy_allocate
    alloc = allocate(projected, _config(args))
    _emit(formats.dumps(formats.allocation_to_dict(alloc, scenario)), args.output)


def cmd_stages(args):
    scenario, projected = _load(args)
    if args.batches:
        with open(args.batches, encoding="utf-8") as fh:
            names = json.load(fh)
        index = {name: i for i, name in enumerate(scenario.agent_names)}
        try:
            batches = [[index[c] for c in batch] for batch in names]
        except KeyError as exc:
            raise ValidationError(f"batches file references unknown car {exc}") from None
        plan = StagePlan(scenario, batches)
    else:
        plan = StagePlan.by_batch_size(scenario, args.batch_size)
    parts = run_stages(plan, _config(args), projected)
    total = formats.allocation_to_dict(merge_allocations(parts), scenario)
    total["stages"] = [formats.allocation_to_dict(p, scenario) for p in parts]
    _emit(formats.dumps(total), args.output)


def cmd_oracle(args):
    scenario, projected = _load(args)
    slots = scenario.slot_names
    if args.check:
        with open(args.check, encoding="utf-8") as fh:
            alloc = formats.allocation_from_dict(json.load(fh), scenario)
        if alloc.unparked:
            witness = find_deviation(projected, alloc.choices(scenario.n_agents))
        else:
            witness = is_nash(projected, allocation_to_profile(alloc, 0, scenario.n_agents)).witness
        report = {"equilibrium": witness is None, "witness": None}
        if witness is not None:
            report["witness"] = {"car": scenario.agent_names[witness.agent], "slot": slots[witness.slot],
                                 "old_cost": formats.canonical_number(witness.old_cost),
                                 "new_cost": formats.canonical_number(witness.new_cost)}
            print(f"not an equilibrium: car {scenario.agent_names[witness.agent]} lowers its cost from "
                  f"{witness.old_cost} to {witness.new_cost} by moving to slot {slots[witness.slot]}",
                  file=sys.stderr)
        _emit(formats.dumps(report), args.output)
    elif args.optimum:
        best = social_optimum(projected, args.budget)
        report = {"assignment": {scenario.agent_names[a]: slots[s] for a, s in enumerate(best.assignment)
                                 if s is not None},
                  "parked_count": best.parked_count,
                  "finite_cost_sum": formats.canonical_number(best.finite_sum)}
        _emit(formats.dumps(report), args.output)
    else:
        found = enumerate_nash(projected, args.limit, args.budget)
        report = [{"profile": [slots[s] for s in profile], "costs": formats.costs_to_list(costs),
                   "parked_count": payoff(costs).parked_count}
                  for profile, costs in found]
        _emit(formats.dumps(report), args.output)


def cmd_compare(args):
    template = GenSpec(args.cars, args.slots, args.gates, seed=args.seed)
    report = compare(args.runs, template, args.seed, sizes=args.sizes)
    if args.csv:
        report.write_csv(args.csv)
    _emit(formats.dumps(report.summary()), None)


def cmd_bench(args):
    report = bench(args.slots, doubling_schedule(args.cars_start, args.doublings), args.seed, args.gates,
                   args.repeats)
    if args.csv:
        report.write_csv(args.csv)
    _emit(formats.dumps(report.summary()), None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parkgame", description="Equilibrium parking-slot allocation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def alloc_flags(p):
        p.add_argument("--objective", choices=["min", "max"], default="min")
        p.add_argument("--resolve-resilience-ties", action="store_true",
                       help="break equal resilience values by car order instead of failing")
        p.add_argument("-o", "--output")

    p = sub.add_parser("gen", help="write a random scenario")
    p.add_argument("--cars", type=int, required=True)
    p.add_argument("--slots", type=int, required=True)
    p.add_argument("--gates", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reach-range", type=int, nargs=2, default=[1, 10], metavar=("LO", "HI"))
    p.add_argument("--time-range", type=int, nargs=2, default=[1, 12], metavar=("LO", "HI"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("allocate", help="allocate slots for a scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--algorithm", choices=["nash", "greedy"], default="nash")
    p.add_argument("--greedy-order", choices=["arrival", "resilience"], default="arrival")
    alloc_flags(p)
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("stages", help="allocate queue batches against a shared inventory")
    p.add_argument("--scenario", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--batch-size", type=int)
    group.add_argument("--batches", help="JSON list of lists of car ids")
    alloc_flags(p)
    p.set_defaults(func=cmd_stages)

    p = sub.add_parser("oracle", help="brute-force equilibrium checks")
    p.add_argument("--scenario", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--check", metavar="FILE", help="allocation JSON to test for equilibrium")
    group.add_argument("--enumerate", action="store_true", help="list all pure equilibria (default)")
    group.add_argument("--optimum", action="store_true", help="most cars parked, then least total cost")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--limit", type=int)
    p.add_argument("--resolve-resilience-ties", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="equilibrium vs greedy over seeded runs")
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--cars", type=int, default=10)
    p.add_argument("--slots", type=int, default=10)
    p.add_argument("--gates", type=int, default=1)
    p.add_argument("--sizes", type=int, nargs="+", help="cycle n-cars-n-slots sizes across runs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="time the equilibrium allocation")
    p.add_argument("--slots", type=int, required=True)
    p.add_argument("--cars-start", type=int, default=200)
    p.add_argument("--doublings", type=int, default=8)
    p.add_argument("--gates", type=int, default=1)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
