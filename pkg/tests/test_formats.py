import json

import pytest

from parkgame import GenSpec, MissingReachEntry, UnknownGate, ValidationError, generate, nash_allocate, project_to_gates
from parkgame.formats import (
    allocation_from_dict,
    allocation_to_dict,
    canonical_number,
    dumps,
    scenario_from_dict,
    scenario_to_dict,
)

TWO_GATES = {
    "gates": ["g1", "g2"],
    "slots": [{"id": "s1", "reach": {"g1": 2, "g2": 5}}, {"id": "s2", "reach": {"g1": 4, "g2": 1}}],
    "cars": [{"id": "c1", "gate": "g1", "time_limit": 5, "resilience": 0.5},
             {"id": "c2", "gate": "g2", "time_limit": 3, "resilience": 0.25}],
}


def test_read_two_gates():
    scenario = scenario_from_dict(TWO_GATES)
    assert scenario.reach.tolist() == [[2, 5], [4, 1]]
    assert [a.gate for a in scenario.agents] == [0, 1]
    assert scenario.agent_names == ("c1", "c2")


def test_round_trip_is_byte_stable():
    scenario = generate(GenSpec(5, 4, 2, seed=8))
    text = dumps(scenario_to_dict(scenario))
    again = scenario_from_dict(json.loads(text))
    assert again == scenario
    assert dumps(scenario_to_dict(again)) == text


def test_missing_reach_key():
    data = json.loads(json.dumps(TWO_GATES))
    del data["slots"][1]["reach"]["g2"]
    with pytest.raises(MissingReachEntry):
        scenario_from_dict(data)


@pytest.mark.parametrize("where", ["car", "slot"])
def test_unknown_gate(where):
    data = json.loads(json.dumps(TWO_GATES))
    if where == "car":
        data["cars"][0]["gate"] = "g9"
    else:
        data["slots"][0]["reach"]["g9"] = 3
    with pytest.raises(UnknownGate):
        scenario_from_dict(data)


def test_duplicate_ids():
    data = json.loads(json.dumps(TWO_GATES))
    data["cars"][1]["id"] = "c1"
    with pytest.raises(ValidationError):
        scenario_from_dict(data)


def test_missing_section():
    with pytest.raises(ValidationError):
        scenario_from_dict({"gates": []})


@pytest.mark.parametrize("x,expected", [(2.0, 2), (0.018, 0.018), (1 / 3, 0.333333333333), (float("inf"), "inf")])
def test_canonical_number(x, expected):
    assert canonical_number(x) == expected


def test_allocation_round_trip(toy):
    alloc = nash_allocate(project_to_gates(toy))
    data = allocation_to_dict(alloc, toy)
    assert data == {
        "assignments": [{"car": "c1", "slot": "s2", "cost": 1},
                        {"car": "c2", "slot": "s1", "cost": 0},
                        {"car": "c3", "slot": "s3", "cost": 0}],
        "unparked": [],
        "parked_count": 3,
        "finite_cost_sum": 1,
    }
    assert allocation_from_dict(data, toy).slots == alloc.slots
