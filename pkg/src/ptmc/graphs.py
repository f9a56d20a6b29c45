"""Finite simple graph views shared by the verifiers and search engines.

Vertices are arbitrary hashable, sortable values (integer tuples for grid
graphs, canonical vertex objects for the ternary compound). Adjacency is
kept as a plain dict of frozensets; everything downstream treats graphs as
immutable.
"""

from __future__ import annotations

from .metric import Ambient


class Graph:
    """Immutable adjacency view of a finite simple graph."""

    def __init__(self, adjacency: dict):
        self._adj = {v: frozenset(ns) for v, ns in adjacency.items()}
        for v, ns in self._adj.items():
            for u in ns:
                if u not in self._adj:
                    raise ValueError(f"edge endpoint {u!r} missing from vertex set")
                if v not in self._adj[u]:
                    raise ValueError(f"asymmetric edge {v!r}->{u!r}")
            if v in ns:
                raise ValueError(f"self-loop at {v!r}")

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(self._adj))

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> list:
        """Each undirected edge once, as a sorted pair, in sorted order."""
        out = []
        for v in sorted(self._adj):
            for u in self._adj[v]:
                if v < u:
                    out.append((v, u))
        return sorted(out)

    def edge_count(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2


def lattice_graph(a: Ambient) -> Graph:
    """Grid graph of an ambient: one edge per unit step in one axis.

    On a torus the steps wrap; note that moduli 1 and 2 collapse or double
    edges away (a modulus-2 axis yields a single edge, not two).
    """
    adj: dict = {v: set() for v in a.vertices()}
    n = a.dimension
    for v in adj:
        for i in range(n):
            for step in (1, -1):
                w = list(v)
                w[i] += step
                u = tuple(w)
                if a.is_torus:
                    u = a.wrap(u)
                elif not a.contains(u):
                    continue
                if u != v:
                    adj[v].add(u)
    return Graph(adj)


def grid_graph(m: int, n: int) -> Graph:
    """Cartesian product of two paths, P_m box P_n."""
    return lattice_graph(Ambient.window((0, m - 1), (0, n - 1)))
