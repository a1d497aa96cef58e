"""
Simple graphs as bitset adjacency rows, triangle-degrees and complements.
Vertices are 0-based here; graph_io translates to the 1-based external formats.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from config import Config
from errors import NonIntegerResult, GraphFormatError


def iter_bits(mask):
    """Yield the indices of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adj[v] has bit u set iff uv is an edge."""
    n: int
    adj: tuple

    def __post_init__(self):
        if self.n > Config.MAX_VERTICES:
            raise GraphFormatError(f"{self.n} vertices exceeds the cap of {Config.MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphFormatError(f"expected {self.n} adjacency rows, got {len(self.adj)}")

    @classmethod
    def empty(cls, n):
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v):
        return list(iter_bits(self.adj[v]))

    def degree(self, v):
        return self.adj[v].bit_count()

    def degrees(self):
        return [row.bit_count() for row in self.adj]

    @property
    def edge_count(self):
        return sum(self.degrees()) // 2

    def edges(self):
        """Edges (u, v) with u < v, in row order."""
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def regular_degree(self):
        """The common degree r if the graph is regular, else None."""
        degrees = set(self.degrees())
        if len(degrees) == 1:
            return degrees.pop()
        if not degrees:
            return 0
        return None

    def is_symmetric(self):
        for u, row in enumerate(self.adj):
            if row >> u & 1:
                return False
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    return False
        return True


@dataclass(frozen=True)
class TriangleProfile:
    t: tuple

    @cached_property
    def sorted_desc(self):
        return tuple(sorted(self.t, reverse=True))

    @property
    def n(self):
        return len(self.t)

    def __getitem__(self, v):
        return self.t[v]

    def __len__(self):
        return len(self.t)


def triangle_degrees(g):
    """t[v] = half the sum over neighbours u of |N(v) & N(u)|."""
    adj = g.adj
    t = []
    for v, row in enumerate(adj):
        total = 0
        for u in iter_bits(row):
            total += (row & adj[u]).bit_count()
        t.append(total // 2)
    return TriangleProfile(tuple(t))


def triangle_count(g):
    return sum(triangle_degrees(g).t) // 3


def adjacency_matrix(g):
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def triangle_degrees_from_matrix(g):
    """Half the diagonal of A^3; an independent oracle for triangle_degrees."""
    a = adjacency_matrix(g)
    return TriangleProfile(tuple(int(x) // 2 for x in np.diag(a @ a @ a)))


def degrees_from_matrix(g):
    """The diagonal of A^2 holds the vertex degrees."""
    a = adjacency_matrix(g)
    return [int(x) for x in np.diag(a @ a)]


def complement(g):
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def complement_triangle_degree(n, r, t):
    """Triangle-degree of a vertex in the complement of an r-regular graph of order n."""
    value = comb(n - 1, 2) - Fraction(3, 2) * r * (n - r - 1) - t
    if value.denominator != 1:
        raise NonIntegerResult(f"n={n}, r={r}, t={t} gives {value}, no r-regular graph matches")
    return int(value)
