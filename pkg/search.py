"""
Greedy descent and variable neighbourhood search over r-regular graphs.

The neighbourhood of a graph is every graph one feasible switching away.
Greedy moves to the strictly best neighbour until none improves; VNS shakes
the incumbent with k random switchings, descends again, and resets k to 1 on
improvement or raises it by one (up to k_max) otherwise.
"""

import logging
import time
from dataclasses import dataclass, field, asdict
from typing import Optional

from config import Config
from graph_core import Graph
from graph_io import encode_graph6, decode_graph6
from generator import GeneratorParams, random_regular
from moves import WorkingGraph
from objectives import (
    ObjectiveKind,
    ObjectiveValue,
    check_necessary_condition,
    evaluate,
    f1,
    f2,
    is_improvement,
    is_triangle_distinct,
)
from rng import XorShift64Star
from errors import InvalidConfig, NoFeasibleSwitching

logger = logging.getLogger(__name__)

# Offset between the generator seed and the shaking seed of one worker
SHAKE_SEED_OFFSET = 1 << 32


@dataclass(frozen=True)
class SearchConfig:
    n: int
    r: int
    objective: ObjectiveKind = ObjectiveKind.F3
    k_max: int = Config.KMAX
    time_limit: Optional[float] = None
    seed: int = 0
    workers: int = 1
    stop_on_td: bool = True
    # Stop after this many consecutive non-improving shakes at k_max
    stagnation_limit: Optional[int] = None
    max_shakes: Optional[int] = None
    mixing_steps: Optional[int] = None
    record_trace: bool = False

    def validate(self):
        if self.n < 2:
            raise InvalidConfig(f"n={self.n} is too small")
        if not 0 <= self.r < self.n:
            raise InvalidConfig(f"degree r={self.r} needs 0 <= r < n={self.n}")
        if self.n * self.r % 2:
            raise InvalidConfig(f"n*r = {self.n * self.r} is odd, no {self.r}-regular graph on {self.n} vertices")
        if not check_necessary_condition(self.n, self.r):
            raise InvalidConfig(
                f"C({self.r},2) < n-1 = {self.n - 1}: no {self.r}-regular triangle-distinct graph on {self.n} vertices"
            )
        if self.k_max < 1:
            raise InvalidConfig("k_max must be at least 1")
        if self.workers < 1:
            raise InvalidConfig("workers must be at least 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise InvalidConfig("time_limit must be positive")
        return True

    def to_dict(self):
        data = asdict(self)
        data['objective'] = self.objective.value
        return data


@dataclass
class VnsEvent:
    """One shake-and-descend round of VNS."""
    index: int
    k: int
    incumbent: float
    value: float
    improved: bool
    k_after: int
    steps: int
    graph6: str

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**{name: data[name] for name in cls.__dataclass_fields__})


@dataclass
class SearchReport:
    best_graph: Graph
    best_value: ObjectiveValue
    is_td: bool
    iterations: int
    shakes: int
    k_final: int
    elapsed: float
    worker_id: int = 0
    seed: int = 0
    tied_pairs: int = 0
    distinct_values: int = 0
    stop_reason: str = ''
    events: list = field(default_factory=list)

    def to_dict(self):
        return {
            'graph6': encode_graph6(self.best_graph),
            'n': self.best_graph.n,
            'r': self.best_graph.regular_degree(),
            **self.best_value.to_dict(),
            'is_td': self.is_td,
            'iterations': self.iterations,
            'shakes': self.shakes,
            'k_final': self.k_final,
            'elapsed': round(self.elapsed, 3),
            'worker_id': self.worker_id,
            'seed': self.seed,
            'tied_pairs': self.tied_pairs,
            'distinct_values': self.distinct_values,
            'stop_reason': self.stop_reason,
        }


def suggest_degree(n):
    """The degree nearest n/2 with n*r even that passes the necessary condition."""
    candidates = [r for r in range(1, n) if n * r % 2 == 0 and check_necessary_condition(n, r)]
    if not candidates:
        raise InvalidConfig(f"no degree admits a regular triangle-distinct graph on {n} vertices")
    return min(candidates, key=lambda r: (abs(2 * r - n), r))


# ========== GREEDY ==========

def _descend(work, kind, stop_on_td=True, should_stop=None, on_step=None):
    """Best-improvement descent on a WorkingGraph, in place; returns (value, steps).

    on_step(steps, value) is called after every accepted move.
    """
    current = evaluate(kind, work.t)
    steps = 0
    while True:
        if stop_on_td and is_triangle_distinct(work.t):
            break
        if should_stop is not None and should_stop():
            break

        best_move = None
        best_value = current
        for sw in list(work.feasible_switchings()):
            work.switch(sw)
            value = evaluate(kind, work.t)
            work.switch(sw.inverse())
            if is_improvement(kind, value, best_value):
                best_move, best_value = sw, value

        if best_move is None:
            break
        work.switch(best_move)
        current = best_value
        steps += 1
        logger.debug(f"greedy step {steps}: {kind.value}={current}")
        if on_step is not None:
            on_step(steps, current)
    return current, steps


def greedy_descent(g, objective, stop_on_td=True, should_stop=None, on_step=None):
    """Descend from g to a local optimum; returns (graph, ObjectiveValue, steps)."""
    work = WorkingGraph(g)
    value, steps = _descend(work, objective, stop_on_td, should_stop, on_step)
    return work.freeze(), ObjectiveValue(value, objective), steps


def _shake(work, k, rng):
    for _ in range(k):
        work.switch(work.random_switching(rng))


def shake(g, k, rng):
    """Apply k random feasible switchings in sequence."""
    if k < 1:
        raise ValueError("shaking strength k must be at least 1")
    work = WorkingGraph(g, track_profile=False)
    _shake(work, k, rng)
    return work.freeze()


# ========== VNS ==========

def _check_start(config, start):
    if start.n != config.n or start.regular_degree() != config.r:
        raise InvalidConfig(f"start graph is not {config.r}-regular on {config.n} vertices")


def vns(config, start=None, stop_event=None, worker_id=0):
    config.validate()
    started = time.monotonic()
    deadline = started + config.time_limit if config.time_limit else None
    kind = config.objective

    if start is None:
        start = random_regular(GeneratorParams(config.n, config.r, config.seed, config.mixing_steps))
    _check_start(config, start)
    rng = XorShift64Star(config.seed + SHAKE_SEED_OFFSET)

    def should_stop():
        if deadline is not None and time.monotonic() >= deadline:
            return True
        return stop_event is not None and stop_event.is_set()

    work = WorkingGraph(start)
    best_value, iterations = _descend(work, kind, config.stop_on_td, should_stop)
    best_graph, best_profile = work.freeze(), work.profile()
    logger.info(f"[worker {worker_id}] initial descent: {kind.value}={best_value} after {iterations} steps")

    k = 1
    shakes = 0
    stagnant = 0
    events = []
    stop_reason = ''
    while True:
        if config.stop_on_td and is_triangle_distinct(best_profile):
            stop_reason = 'td'
            break
        if should_stop():
            stop_reason = 'stopped' if stop_event is not None and stop_event.is_set() else 'time_limit'
            break
        if config.max_shakes is not None and shakes >= config.max_shakes:
            stop_reason = 'max_shakes'
            break
        if config.stagnation_limit is not None and stagnant >= config.stagnation_limit:
            stop_reason = 'stagnation'
            break

        work = WorkingGraph(best_graph, best_profile)
        try:
            _shake(work, k, rng)
        except NoFeasibleSwitching as e:
            logger.warning(f"[worker {worker_id}] cannot shake: {e}")
            stop_reason = 'no_moves'
            break
        shakes += 1

        value, steps = _descend(work, kind, config.stop_on_td, should_stop)
        iterations += steps
        incumbent = best_value
        k_used = k
        improved = is_improvement(kind, value, best_value)
        if improved:
            best_graph, best_profile, best_value = work.freeze(), work.profile(), value
            k = 1
            stagnant = 0
            logger.info(
                f"[worker {worker_id}] improved {kind.value}={best_value} "
                f"(k={k_used}, shake {shakes}, {time.monotonic() - started:.1f}s)"
            )
        else:
            if k == config.k_max:
                stagnant += 1
            k = min(k + 1, config.k_max)

        if config.record_trace:
            events.append(VnsEvent(
                index=shakes,
                k=k_used,
                incumbent=incumbent,
                value=value,
                improved=improved,
                k_after=k,
                steps=steps,
                graph6=encode_graph6(work.freeze()),
            ))

    is_td = f2(best_profile) == 0
    elapsed = time.monotonic() - started
    if is_td:
        logger.info(f"✅ [worker {worker_id}] triangle-distinct graph found after {shakes} shakes, {elapsed:.1f}s")
    else:
        logger.info(f"[worker {worker_id}] stopped ({stop_reason}) with {kind.value}={best_value}, {f2(best_profile)} tied pairs")

    return SearchReport(
        best_graph=best_graph,
        best_value=ObjectiveValue(best_value, kind),
        is_td=is_td,
        iterations=iterations,
        shakes=shakes,
        k_final=k,
        elapsed=elapsed,
        worker_id=worker_id,
        seed=config.seed,
        tied_pairs=f2(best_profile),
        distinct_values=f1(best_profile),
        stop_reason=stop_reason,
        events=events,
    )


def validate_trace(events, kind, k_max, r=None):
    """Replay a VNS trace; returns a list of protocol violations (empty when clean)."""
    problems = []
    expected_k = 1
    for event in events:
        if isinstance(event, dict):
            event = VnsEvent.from_dict(event)
        if event.k != expected_k:
            problems.append(f"event {event.index}: shook with k={event.k}, expected {expected_k}")
        if event.improved != is_improvement(kind, event.value, event.incumbent):
            problems.append(f"event {event.index}: improved flag disagrees with {event.value} vs {event.incumbent}")
        wanted = 1 if event.improved else min(event.k + 1, k_max)
        if event.k_after != wanted:
            problems.append(f"event {event.index}: k became {event.k_after}, expected {wanted}")
        if r is not None:
            degree = decode_graph6(event.graph6).regular_degree()
            if degree != r:
                problems.append(f"event {event.index}: graph is not {r}-regular")
        expected_k = event.k_after
    return problems
