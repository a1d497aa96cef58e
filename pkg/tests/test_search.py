from dataclasses import replace

import pytest

from builders import complete_graph
from fixtures import load_fixture
from generator import GeneratorParams, random_regular
from graph_core import triangle_degrees
from graph_io import encode_graph6
from moves import apply, enumerate_feasible, random_switching
from objectives import ObjectiveKind, evaluate, f1, f2, f3, is_improvement
from parallel_search import parallel_search
from rng import XorShift64Star
from search import (
    SearchConfig,
    greedy_descent,
    shake,
    suggest_degree,
    validate_trace,
    vns,
)
from errors import InvalidConfig


def perturbed_fixture_one(seed):
    g = load_fixture(1).graph
    return apply(g, random_switching(g, XorShift64Star(seed)))


# ========== GREEDY ==========

def test_greedy_fixed_point_at_td_graph():
    g, value, steps = greedy_descent(load_fixture(5).graph, ObjectiveKind.F2)
    assert value.value == 0
    assert steps == 0
    assert g == load_fixture(5).graph


def test_greedy_on_k4():
    g, value, steps = greedy_descent(complete_graph(4), ObjectiveKind.F2)
    assert value.value == 6
    assert steps == 0


def test_greedy_from_perturbed_fixture_does_not_get_worse():
    start = perturbed_fixture_one(42)
    start_value = f3(triangle_degrees(start))
    g, value, steps = greedy_descent(start, ObjectiveKind.F3)
    assert value.value <= start_value
    assert g.regular_degree() == 10
    assert value.value == pytest.approx(f3(triangle_degrees(g)))


@pytest.mark.parametrize('kind', list(ObjectiveKind))
def test_greedy_ends_in_local_optimum(kind):
    g0 = random_regular(GeneratorParams(10, 5, seed=4))
    g, value, _ = greedy_descent(g0, kind, stop_on_td=False)
    assert g.regular_degree() == 5
    for sw in enumerate_feasible(g):
        neighbour = evaluate(kind, triangle_degrees(apply(g, sw)))
        assert not is_improvement(kind, neighbour, value.value)


@pytest.mark.parametrize('kind', list(ObjectiveKind))
def test_greedy_improves_strictly_at_every_step(kind):
    g0 = random_regular(GeneratorParams(12, 6, seed=21))
    values = [evaluate(kind, triangle_degrees(g0))]
    g, value, steps = greedy_descent(g0, kind, stop_on_td=False, on_step=lambda step, v: values.append(v))

    assert steps >= 1
    assert len(values) == steps + 1
    for before, after in zip(values, values[1:]):
        assert is_improvement(kind, after, before)
    assert values[-1] == value.value == evaluate(kind, triangle_degrees(g))


def test_greedy_respects_stop_callback():
    g0 = random_regular(GeneratorParams(12, 6, seed=9))
    g, value, steps = greedy_descent(g0, ObjectiveKind.F3, should_stop=lambda: True)
    assert steps == 0
    assert g == g0


# ========== SHAKE ==========

def test_shake_one_switching():
    g = random_regular(GeneratorParams(14, 6, seed=2))
    shaken = shake(g, 1, XorShift64Star(3))
    assert len(set(g.edges()) ^ set(shaken.edges())) == 4


def test_shake_keeps_regularity(rng):
    for _ in range(1000):
        n = 6 + rng.below(15)
        r = 2 + 2 * rng.below((n - 3) // 2)
        g = random_regular(GeneratorParams(n, r, seed=rng.next_u64(), mixing_steps=5))
        assert shake(g, 1 + rng.below(5), rng).regular_degree() == r


def test_shake_is_deterministic():
    g = random_regular(GeneratorParams(14, 6, seed=2))
    assert shake(g, 5, XorShift64Star(3)) == shake(g, 5, XorShift64Star(3))


def test_shake_needs_positive_strength():
    with pytest.raises(ValueError):
        shake(complete_graph(4), 0, XorShift64Star(1))


# ========== CONFIG ==========

@pytest.mark.parametrize('kwargs', [
    dict(n=7, r=3),
    dict(n=7, r=7),
    dict(n=21, r=4),
    dict(n=8, r=5, k_max=0),
    dict(n=8, r=5, workers=0),
    dict(n=8, r=5, time_limit=-1),
])
def test_invalid_config(kwargs):
    with pytest.raises(InvalidConfig):
        SearchConfig(**kwargs).validate()


def test_suggest_degree():
    assert suggest_degree(21) == 10
    assert suggest_degree(7) == 4
    assert suggest_degree(24) == 12
    with pytest.raises(InvalidConfig):
        suggest_degree(3)


def test_start_graph_must_match():
    config = SearchConfig(n=21, r=10, max_shakes=0)
    with pytest.raises(InvalidConfig):
        vns(config, start=load_fixture(7).graph)


# ========== VNS ==========

def test_vns_small_instance_terminates():
    config = SearchConfig(n=7, r=4, objective=ObjectiveKind.F2, time_limit=30, stagnation_limit=3)
    report = vns(config)
    assert report.best_graph.n == 7
    assert report.best_graph.regular_degree() == 4
    assert report.elapsed < 30
    assert report.stop_reason in ('stagnation', 'time_limit')
    assert not report.is_td


def test_vns_returns_immediately_from_td_start():
    config = SearchConfig(n=22, r=10, objective=ObjectiveKind.F2, time_limit=60)
    report = vns(config, start=load_fixture(5).graph)
    assert report.is_td
    assert report.best_value.value == 0
    assert report.shakes == 0
    assert report.stop_reason == 'td'
    assert report.distinct_values == 22
    assert f3(triangle_degrees(report.best_graph)) < 22


def test_vns_time_limit():
    config = SearchConfig(n=20, r=8, objective=ObjectiveKind.F3, time_limit=0.5)
    report = vns(config)
    assert report.best_graph.regular_degree() == 8
    assert report.elapsed < 30


def test_vns_trace_follows_protocol():
    config = SearchConfig(n=10, r=5, objective=ObjectiveKind.F2, k_max=4, max_shakes=30, record_trace=True, seed=5)
    report = vns(config)
    assert len(report.events) == report.shakes == 30
    assert validate_trace(report.events, ObjectiveKind.F2, k_max=4, r=5) == []
    assert report.k_final == report.events[-1].k_after

    best_seen = min(event.value for event in report.events)
    assert report.best_value.value <= best_seen


def test_trace_validator_flags_tampering():
    config = SearchConfig(n=10, r=5, objective=ObjectiveKind.F2, k_max=3, max_shakes=10, record_trace=True, seed=6)
    events = [event.to_dict() for event in vns(config).events]
    events[4]['k_after'] = 99
    events[6]['graph6'] = encode_graph6(complete_graph(10))
    problems = validate_trace(events, ObjectiveKind.F2, k_max=3, r=5)
    assert any('event 5' in p for p in problems)
    assert any('not 5-regular' in p for p in problems)


def test_vns_is_deterministic():
    config = SearchConfig(n=12, r=6, objective=ObjectiveKind.F3, stagnation_limit=2, k_max=3, max_shakes=40, seed=17)
    a, b = vns(config), vns(config)
    assert a.best_graph == b.best_graph
    assert a.best_value == b.best_value
    assert (a.iterations, a.shakes, a.k_final) == (b.iterations, b.shakes, b.k_final)


def test_report_fields():
    config = SearchConfig(n=10, r=5, objective=ObjectiveKind.F1, max_shakes=3, seed=1)
    report = vns(config)
    profile = triangle_degrees(report.best_graph)
    assert report.is_td == (f2(profile) == 0)
    assert report.tied_pairs == f2(profile)
    assert report.distinct_values == f1(profile) == report.best_value.value
    data = report.to_dict()
    assert data['r'] == 5
    assert data['objective'] == 'f1'
    assert data['direction'] == 'maximize'


# ========== PARALLEL ==========

def test_single_worker_matches_vns():
    config = SearchConfig(n=12, r=6, objective=ObjectiveKind.F2, max_shakes=5, seed=3)
    a = parallel_search(config)
    b = vns(config)
    assert a.best_graph == b.best_graph
    assert a.best_value == b.best_value
    assert a.worker_id == b.worker_id == 0


def test_parallel_picks_best_worker_when_none_is_td():
    config = SearchConfig(n=10, r=5, objective=ObjectiveKind.F2, max_shakes=3, workers=3, seed=10)
    report = parallel_search(config)

    # without a TD graph no worker is stopped early, so each run replays in-process
    replays = [vns(replace(config, seed=config.seed + i, workers=1), worker_id=i) for i in range(config.workers)]
    for replay in replays:
        assert replay.best_graph.regular_degree() == 5
        assert not replay.is_td
    best = min(replays, key=lambda rep: (rep.best_value.value, rep.worker_id))

    assert report.worker_id == best.worker_id
    assert report.seed == 10 + report.worker_id
    assert report.best_graph == best.best_graph
    assert report.best_value == best.best_value
    assert report.best_graph.regular_degree() == 5


def test_parallel_td_start_wins_immediately():
    config = SearchConfig(n=22, r=10, objective=ObjectiveKind.F2, time_limit=120, workers=2)
    report = parallel_search(config, start=load_fixture(5).graph)
    assert report.is_td
    assert report.best_graph == load_fixture(5).graph


@pytest.mark.slow
def test_vns_recovers_td_graph_from_perturbed_fixture():
    start = perturbed_fixture_one(42)
    config = SearchConfig(n=21, r=10, objective=ObjectiveKind.F3, k_max=10, time_limit=60, seed=42)
    report = vns(config, start=start)
    assert report.is_td
    assert report.best_graph.regular_degree() == 10
    assert report.best_graph.n == 21


@pytest.mark.slow
def test_four_workers_on_perturbed_fixture():
    start = perturbed_fixture_one(42)
    config = SearchConfig(n=21, r=10, objective=ObjectiveKind.F3, time_limit=60, seed=42, workers=4)
    report = parallel_search(config, start=start)
    assert report.is_td
    assert report.best_graph.regular_degree() == 10


def test_config_roundtrip_for_workers():
    config = SearchConfig(n=12, r=6, workers=3, seed=7)
    assert replace(config, seed=9, workers=1).to_dict()['seed'] == 9
    assert config.to_dict()['objective'] == 'f3'


@pytest.mark.slow
def test_vns_shakes_its_way_back_from_several_switchings():
    start = shake(load_fixture(1).graph, 4, XorShift64Star(7))
    start_value = f3(triangle_degrees(start))
    config = SearchConfig(n=21, r=10, objective=ObjectiveKind.F3, time_limit=120, seed=7, record_trace=True)
    report = vns(config, start=start)
    assert report.best_graph.regular_degree() == 10
    assert report.best_value.value <= start_value
    assert validate_trace(report.events, ObjectiveKind.F3, k_max=config.k_max, r=10) == []
    if not report.is_td:
        assert report.shakes > 0
