"""JSON scenario/allocation files.

Output is canonical: sorted keys, two-space indent, numbers rounded to 12
significant digits and integral values written as integers, so the same
data always serializes to the same bytes.
"""

from __future__ import annotations

import json

import numpy as np

from .allocation import Allocation
from .model import INFINITE, Agent, MissingReachEntry, Scenario, UnknownGate, ValidationError


def canonical_number(x):
    if x == INFINITE:
        return "inf"
    x = float(format(float(x), ".12g"))
    if x.is_integer() and abs(x) < 1e15:
        return int(x)
    return x


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _unique(names, kind):
    seen = set()
    for name in names:
        if name in seen:
            raise ValidationError(f"duplicate {kind} id {name!r}", [name])
        seen.add(name)


def scenario_from_dict(data: dict) -> Scenario:
    try:
        gate_names = [str(g) for g in data["gates"]]
        slots = data["slots"]
        cars = data["cars"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"scenario is missing field {exc}") from None
    _unique(gate_names, "gate")
    gate_index = {g: h for h, g in enumerate(gate_names)}
    slot_names = [str(s["id"]) for s in slots]
    _unique(slot_names, "slot")
    reach = np.full((len(slots), len(gate_names)), np.nan)
    for j, slot in enumerate(slots):
        for g, minutes in slot.get("reach", {}).items():
            if g not in gate_index:
                raise UnknownGate(f"slot {slot_names[j]} lists reach from unknown gate {g!r}", [slot_names[j], g])
            reach[j, gate_index[g]] = float(minutes)
        for g in gate_names:
            if g not in slot.get("reach", {}):
                raise MissingReachEntry(f"slot {slot_names[j]} has no reaching time from gate {g}",
                                        [slot_names[j], g])
    agents = []
    for car in cars:
        name = str(car["id"])
        gate = str(car["gate"])
        if gate not in gate_index:
            raise UnknownGate(f"car {name} uses unknown gate {gate!r}", [name, gate])
        agents.append(Agent(gate_index[gate], float(car["time_limit"]), float(car["resilience"]), name))
    _unique([a.name for a in agents], "car")
    return Scenario(agents, reach, tuple(slot_names), tuple(gate_names))


def scenario_to_dict(scenario: Scenario) -> dict:
    gates = list(scenario.gate_names)
    return {
        "gates": gates,
        "slots": [{"id": name, "reach": {g: canonical_number(scenario.reach[j, h]) for h, g in enumerate(gates)}}
                  for j, name in enumerate(scenario.slot_names)],
        "cars": [{"id": a.name, "gate": gates[a.gate], "time_limit": canonical_number(a.time_limit),
                  "resilience": canonical_number(a.resilience)} for a in scenario.agents],
    }


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None
    return scenario_from_dict(data)


def save_scenario(scenario: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(scenario_to_dict(scenario)))


def allocation_to_dict(alloc: Allocation, scenario: Scenario) -> dict:
    cars, slots = scenario.agent_names, scenario.slot_names
    return {
        "assignments": [{"car": cars[a], "slot": slots[s], "cost": canonical_number(c)}
                        for a, s, c in zip(alloc.agents, alloc.slots, alloc.costs) if s is not None],
        "unparked": [cars[a] for a in alloc.unparked],
        "parked_count": alloc.parked_count,
        "finite_cost_sum": canonical_number(alloc.finite_cost_sum),
    }


def allocation_from_dict(data: dict, scenario: Scenario) -> Allocation:
    """Rebuild an allocation over every car; cars not listed in assignments are unparked."""
    car_index = {name: i for i, name in enumerate(scenario.agent_names)}
    slot_index = {name: j for j, name in enumerate(scenario.slot_names)}
    slots = [None] * scenario.n_agents
    costs = [INFINITE] * scenario.n_agents
    for item in data.get("assignments", []):
        try:
            a, s = car_index[item["car"]], slot_index[item["slot"]]
        except KeyError as exc:
            raise ValidationError(f"allocation references unknown id {exc}") from None
        slots[a] = s
        cost = item.get("cost", INFINITE)
        costs[a] = INFINITE if cost == "inf" else float(cost)
    return Allocation(tuple(range(scenario.n_agents)), tuple(slots), tuple(costs))


def costs_to_list(costs) -> list:
    return [canonical_number(c) for c in costs]
