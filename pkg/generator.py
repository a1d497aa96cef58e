"""
Random r-regular starting graphs: a circulant seed graph randomised by a
walk of edge switchings.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from config import Config
from graph_core import Graph
from moves import WorkingGraph
from rng import XorShift64Star
from errors import NoSuchRegularGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    r: int
    seed: int = 0
    mixing_steps: Optional[int] = None

    def steps(self):
        if self.mixing_steps is not None:
            return self.mixing_steps
        return Config.MIXING_FACTOR * self.n * self.r

    def validate(self):
        if not 0 <= self.r < self.n:
            raise NoSuchRegularGraph(f"degree r={self.r} needs 0 <= r < n={self.n}")
        if self.n * self.r % 2:
            raise NoSuchRegularGraph(f"n*r = {self.n * self.r} is odd, no {self.r}-regular graph on {self.n} vertices")


def circulant_regular(n, r):
    """i ~ i±1, ..., i±floor(r/2) (mod n), plus i ~ i+n/2 when r is odd."""
    GeneratorParams(n, r).validate()
    rows = [0] * n
    for i in range(n):
        for d in range(1, r // 2 + 1):
            rows[i] |= 1 << ((i + d) % n)
            rows[i] |= 1 << ((i - d) % n)
        if r % 2:
            rows[i] |= 1 << ((i + n // 2) % n)
    return Graph(n, tuple(rows))


def random_regular(params):
    params.validate()
    graph = circulant_regular(params.n, params.r)
    steps = params.steps()
    # empty and complete graphs are the only r-regular graphs of their order
    if steps == 0 or params.r in (0, params.n - 1):
        return graph

    rng = XorShift64Star(params.seed)
    work = WorkingGraph(graph, track_profile=False)
    for _ in range(steps):
        work.switch(work.random_switching(rng))

    logger.debug(f"Generated {params.r}-regular graph on {params.n} vertices (seed={params.seed}, {steps} switchings)")
    return work.freeze()
