import pytest
from hypothesis import given
from hypothesis import strategies as st

from parkgame import GenSpec, StagePlan, generate, nash_allocate, project_to_gates, run_stages
from strategies import games


def test_single_batch_is_plain_allocation(toy, toy_projected):
    (only,) = run_stages(StagePlan(toy, [[0, 1, 2]]))
    assert only == nash_allocate(toy_projected)


def test_toy_one_car_per_stage(toy):
    stages = run_stages(StagePlan.by_batch_size(toy, 1))
    # alone, car1 grabs slot3 (least slack); car2 then takes slot1; car3 still reaches slot2
    assert [s.slots for s in stages] == [(2,), (0,), (1,)]
    assert sum(s.parked_count for s in stages) == 3


def test_batch_after_inventory_runs_out():
    scenario = generate(GenSpec(6, 2, seed=3, time_range=(12, 12)))
    stages = run_stages(StagePlan.by_batch_size(scenario, 2))
    assert stages[0].parked_count == 2
    assert all(s.parked_count == 0 for s in stages[1:])


def test_plan_must_cover_every_car_once(toy):
    with pytest.raises(ValueError):
        StagePlan(toy, [[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        StagePlan(toy, [[0, 1]])
    with pytest.raises(ValueError):
        StagePlan.by_batch_size(toy, 0)


@given(games(), st.integers(1, 4))
def test_no_slot_assigned_twice_across_stages(scenario, size):
    stages = run_stages(StagePlan.by_batch_size(scenario, size))
    used = [s for stage in stages for s in stage.slots if s is not None]
    assert len(used) == len(set(used))
    p = project_to_gates(scenario)
    for stage in stages:
        for a, s in stage.assigned.items():
            assert p.can_reach(a, s)


@given(games())
def test_batch_of_everyone_equals_unstaged(scenario):
    n = scenario.n_agents
    stages = run_stages(StagePlan.by_batch_size(scenario, max(n, 1)))
    if n:
        assert stages[0] == nash_allocate(project_to_gates(scenario))
