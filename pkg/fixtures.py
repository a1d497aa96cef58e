"""
The eleven published regular triangle-distinct graphs, kept verbatim in
published_graphs.txt with their triangle-degree columns.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from graph_core import Graph
from graph_io import parse_adjacency_list
from errors import UnknownFixture

GRAPHS_FILE = Path(__file__).with_name('published_graphs.txt')
HEADER_RE = re.compile(r'^# graph (\d+): n=(\d+) r=(\d+)\s*$', re.MULTILINE)


@dataclass(frozen=True)
class Fixture:
    id: int
    n: int
    r: int
    graph: Graph
    published_t: tuple
    text: str


@lru_cache(maxsize=1)
def _load_all():
    document = GRAPHS_FILE.read_text(encoding='utf-8')
    headers = list(HEADER_RE.finditer(document))
    fixtures = {}
    for i, header in enumerate(headers):
        end = headers[i + 1].start() if i + 1 < len(headers) else len(document)
        block = document[header.start():end].strip() + '\n'
        graph, published_t = parse_adjacency_list(block)
        fixture_id, n, r = (int(x) for x in header.groups())
        fixtures[fixture_id] = Fixture(fixture_id, n, r, graph, published_t, block)
    return fixtures


def fixture_ids():
    return sorted(_load_all())


def load_fixture(fixture_id):
    fixtures = _load_all()
    if fixture_id not in fixtures:
        raise UnknownFixture(f"no fixture #{fixture_id}, known ids are {min(fixtures)}..{max(fixtures)}")
    return fixtures[fixture_id]


def all_fixtures():
    return [load_fixture(i) for i in fixture_ids()]
