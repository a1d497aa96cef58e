"""
Degree-preserving edge switchings.

A switching (u, s, v, t) deletes us and vt and adds ut and vs. It is feasible
when the four vertices are distinct, us and vt are edges and ut and vs are not.
The tuples (u,s,v,t), (v,t,u,s), (s,u,t,v) and (t,v,s,u) describe the same
move; the canonical one starts with the smallest vertex.
"""

import logging
from typing import NamedTuple

from graph_core import Graph, TriangleProfile, iter_bits, triangle_degrees
from errors import InfeasibleSwitching, NoFeasibleSwitching

logger = logging.getLogger(__name__)

# random_switching gives up after RETRY_FACTOR * m rejected draws
RETRY_FACTOR = 50


class Switching(NamedTuple):
    u: int
    s: int
    v: int
    t: int

    def inverse(self):
        return Switching(self.u, self.t, self.v, self.s)

    def canonical(self):
        u, s, v, t = self
        return min(
            Switching(u, s, v, t),
            Switching(v, t, u, s),
            Switching(s, u, t, v),
            Switching(t, v, s, u),
        )

    def one_based(self):
        return tuple(x + 1 for x in self)


def _feasible(adj, sw):
    u, s, v, t = sw
    if len({u, s, v, t}) != 4:
        return False
    return bool(adj[u] >> s & 1 and adj[v] >> t & 1
                and not adj[u] >> t & 1 and not adj[v] >> s & 1)


def is_feasible(g, sw):
    return _feasible(g.adj, sw)


def apply(g, sw):
    """Return G - {us, vt} + {ut, vs}."""
    if not _feasible(g.adj, sw):
        raise InfeasibleSwitching(f"switching {sw.one_based()} is not feasible")
    u, s, v, t = sw
    adj = list(g.adj)
    adj[u] ^= (1 << s) | (1 << t)
    adj[s] ^= (1 << u) | (1 << v)
    adj[v] ^= (1 << t) | (1 << s)
    adj[t] ^= (1 << v) | (1 << u)
    return Graph(g.n, tuple(adj))


def _enumerate(adj, n):
    full = (1 << n) - 1
    for u in range(n):
        above = full & ~((2 << u) - 1)
        for s in iter_bits(adj[u] & above):
            v_mask = above & ~adj[s] & ~(1 << s)
            t_base = above & ~adj[u]
            for v in iter_bits(v_mask):
                for t in iter_bits(adj[v] & t_base):
                    yield Switching(u, s, v, t)


def enumerate_feasible(g):
    """Every feasible move once, in lexicographic order of the canonical tuple."""
    return list(_enumerate(g.adj, g.n))


def _draw(edges, adj, rng):
    m = len(edges)
    if m < 2:
        raise NoFeasibleSwitching(f"{m} edge(s), a switching needs two")
    for _ in range(RETRY_FACTOR * m):
        i = rng.below(m)
        j = rng.below(m - 1)
        if j >= i:
            j += 1
        a, b = edges[i]
        c, d = edges[j]
        if rng.below(2):
            sw = Switching(a, b, d, c)
        else:
            sw = Switching(a, b, c, d)
        if _feasible(adj, sw):
            return sw.canonical()
    raise NoFeasibleSwitching(f"no feasible switching after {RETRY_FACTOR * m} draws")


def random_switching(g, rng):
    """Two distinct edges uniformly, one of the two reconnections uniformly, reject if infeasible."""
    return _draw(list(g.edges()), g.adj, rng)


class WorkingGraph:
    """Mutable copy of a graph with its triangle profile kept up to date.

    Owned by a single search worker; switch() mutates in place and
    switch(sw.inverse()) undoes it exactly.
    """

    def __init__(self, g, profile=None, track_profile=True):
        self.n = g.n
        self.adj = list(g.adj)
        if track_profile:
            self.t = list((profile or triangle_degrees(g)).t)
        else:
            self.t = None
        self._edges = None
        self._edge_index = None

    def freeze(self):
        return Graph(self.n, tuple(self.adj))

    def profile(self):
        return TriangleProfile(tuple(self.t))

    def is_feasible(self, sw):
        return _feasible(self.adj, sw)

    def feasible_switchings(self):
        return _enumerate(self.adj, self.n)

    def _toggle(self, x, y, sign):
        adj = self.adj
        if self.t is not None:
            common = adj[x] & adj[y]
            c = common.bit_count()
            t = self.t
            t[x] += sign * c
            t[y] += sign * c
            for w in iter_bits(common):
                t[w] += sign
        adj[x] ^= 1 << y
        adj[y] ^= 1 << x

    def switch(self, sw):
        """Delete us, delete vt, add ut, add vs, updating t against the live adjacency."""
        if not _feasible(self.adj, sw):
            raise InfeasibleSwitching(f"switching {sw.one_based()} is not feasible")
        u, s, v, t = sw
        self._toggle(u, s, -1)
        self._toggle(v, t, -1)
        self._toggle(u, t, +1)
        self._toggle(v, s, +1)
        if self._edges is not None:
            self._replace_edge((u, s), (u, t))
            self._replace_edge((v, t), (v, s))

    def _replace_edge(self, old, new):
        old = (min(old), max(old))
        new = (min(new), max(new))
        i = self._edge_index.pop(old)
        self._edges[i] = new
        self._edge_index[new] = i

    def random_switching(self, rng):
        if self._edges is None:
            self._edges = list(self.freeze().edges())
            self._edge_index = {e: i for i, e in enumerate(self._edges)}
        return _draw(self._edges, self.adj, rng)


def apply_with_profile(g, profile, sw):
    """Switch g and update its triangle profile from the four touched edges only."""
    work = WorkingGraph(g, profile)
    work.switch(sw)
    return work.freeze(), work.profile()
