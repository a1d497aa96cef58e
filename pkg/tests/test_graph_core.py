from itertools import combinations
from math import comb

import pytest

from builders import complete_graph, cycle_graph, random_graph
from fixtures import all_fixtures, load_fixture
from generator import circulant_regular
from graph_core import (
    Graph,
    complement,
    complement_triangle_degree,
    degrees_from_matrix,
    triangle_count,
    triangle_degrees,
    triangle_degrees_from_matrix,
)
from graph_io import from_adjacency_list
from objectives import is_triangle_distinct
from errors import (
    AsymmetricInput,
    DuplicateNeighbour,
    GraphFormatError,
    LabelOutOfRange,
    NonIntegerResult,
    SelfLoop,
)


# ========== ADJACENCY LISTS ==========

def test_triangle_from_adjacency_list():
    g = from_adjacency_list("1: 2 3\n2: 1 3\n3: 1 2\n")
    assert g.n == 3
    assert g.edge_count == 3
    assert g == complete_graph(3)


def test_fixture_one_is_ten_regular():
    g = from_adjacency_list(load_fixture(1).text)
    assert g.n == 21
    assert g.degrees() == [10] * 21
    assert [v + 1 for v in g.neighbours(0)] == [2, 3, 4, 8, 11, 13, 14, 16, 19, 21]


def test_missing_reciprocal_edge():
    with pytest.raises(AsymmetricInput):
        from_adjacency_list("1: 2\n2:\n")


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        from_adjacency_list("1: 1 2\n2: 1\n")


def test_duplicate_neighbour_rejected():
    with pytest.raises(DuplicateNeighbour):
        from_adjacency_list("1: 2 2\n2: 1\n")


def test_label_out_of_range():
    with pytest.raises(LabelOutOfRange):
        from_adjacency_list("1: 2 5\n2: 1\n")


def test_comments_blank_lines_and_t_column():
    text = "# a triangle\n\n1: 2 3 | 1\n2: 1 3 | 1   # trailing comment\n3: 1 2 | 1\n"
    assert from_adjacency_list(text) == complete_graph(3)


def test_garbage_row():
    with pytest.raises(GraphFormatError):
        from_adjacency_list("1: 2 x\n2: 1\n")


def test_vertex_cap():
    with pytest.raises(GraphFormatError):
        Graph.empty(10_000)


# ========== TRIANGLE DEGREES ==========

def test_five_cycle_is_triangle_free():
    assert triangle_degrees(cycle_graph(5)).t == (0, 0, 0, 0, 0)


def test_k4_profile():
    assert triangle_degrees(complete_graph(4)).t == (3, 3, 3, 3)


def test_fixture_one_profile():
    assert triangle_degrees(load_fixture(1).graph).t == tuple(range(10, 31))


def test_sorted_desc():
    profile = triangle_degrees(load_fixture(1).graph)
    assert profile.sorted_desc == tuple(range(30, 9, -1))


def test_matrix_oracle_on_random_graphs(rng):
    for _ in range(50):
        n = 2 + rng.below(63)
        g = random_graph(n, rng.random(), rng)
        assert triangle_degrees(g) == triangle_degrees_from_matrix(g)
        assert degrees_from_matrix(g) == g.degrees()


def test_brute_force_triangle_count(rng):
    for _ in range(30):
        n = 3 + rng.below(18)
        g = random_graph(n, 0.5, rng)
        brute = sum(
            1 for a, b, c in combinations(range(n), 3)
            if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
        )
        profile = triangle_degrees(g)
        assert sum(profile.t) == 3 * brute
        assert triangle_count(g) == brute


def test_profile_invariants(rng):
    for _ in range(30):
        g = random_graph(15, 0.6, rng)
        profile = triangle_degrees(g)
        assert sum(profile.t) % 3 == 0
        for v in range(g.n):
            assert 0 <= profile[v] <= comb(g.degree(v), 2)


# ========== COMPLEMENT ==========

def test_complement_of_k4_is_empty():
    assert complement(complete_graph(4)) == Graph.empty(4)


def test_complement_is_an_involution(rng):
    for _ in range(20):
        g = random_graph(12, 0.4, rng)
        assert complement(complement(g)) == g
        assert complement(g).is_symmetric()


def test_complement_of_fixture_one():
    other = complement(load_fixture(1).graph)
    assert other.n == 21
    assert other.regular_degree() == 10


def test_complement_triangle_degree_examples():
    assert complement_triangle_degree(21, 10, 10) == 30
    assert complement_triangle_degree(4, 3, 3) == 0


def test_complement_triangle_degree_non_integer():
    with pytest.raises(NonIntegerResult):
        complement_triangle_degree(5, 1, 0)


@pytest.mark.parametrize('fixture', all_fixtures(), ids=lambda f: f"graph{f.id}")
def test_complement_identity_on_fixtures(fixture):
    other = complement(fixture.graph)
    expected = tuple(complement_triangle_degree(fixture.n, fixture.r, t) for t in fixture.published_t)
    profile = triangle_degrees(other)
    assert profile.t == expected
    assert other.regular_degree() == fixture.n - 1 - fixture.r
    assert is_triangle_distinct(profile)


def test_complement_identity_on_circulants():
    for n, r in [(9, 4), (10, 3), (12, 5), (13, 6)]:
        g = circulant_regular(n, r)
        t = triangle_degrees(g).t
        t_bar = triangle_degrees(complement(g)).t
        assert all(t_bar[v] == complement_triangle_degree(n, r, t[v]) for v in range(n))
