"""Small undirected graph substrate.

A ``Graph`` stores neighbour sets plus an optional multiplicity table for
parallel edges.  Most code only ever sees the simple structure; the
multiplicities matter for crossing arguments, where a doubled edge cannot be
crossed for the price of one.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Hashable, Iterable, Sequence

Vertex = Hashable


class GraphError(ValueError):
    pass


def vkey(v):
    """Sort key that is total across vertex types; natural order within one type."""
    return (type(v).__name__, v)


def _key(u, v):
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


class Graph:
    """Immutable-by-convention graph with optional edge multiplicities."""

    __slots__ = ("_adj", "_mult", "_verts")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence[Vertex]] = ()):
        adj: dict = {v: set() for v in vertices}
        mult: dict = {}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
            k = _key(u, v)
            mult[k] = mult.get(k, 0) + 1
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._mult = {k: m for k, m in mult.items() if m > 1}
        self._verts = tuple(sorted(self._adj, key=vkey))

    @classmethod
    def _raw(cls, adj, mult):
        g = cls.__new__(cls)
        g._adj = adj
        g._mult = mult
        g._verts = tuple(sorted(adj, key=vkey))
        return g

    # basic queries
    @property
    def vertices(self) -> tuple:
        return self._verts

    def __len__(self):
        return len(self._adj)

    def __contains__(self, v):
        return v in self._adj

    def neighbors(self, v) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v) -> int:
        """Number of distinct neighbours (parallel edges count once)."""
        return len(self.neighbors(v))

    def has_edge(self, u, v) -> bool:
        return u in self._adj and v in self._adj[u]

    def multiplicity(self, u, v) -> int:
        if not self.has_edge(u, v):
            return 0
        return self._mult.get(_key(u, v), 1)

    def edges(self) -> list:
        """Distinct edges as sorted ``(u, v)`` pairs with ``u < v``."""
        out = []
        for u in self._verts:
            for v in self._adj[u]:
                if vkey(u) < vkey(v):
                    out.append((u, v))
        out.sort(key=lambda e: (vkey(e[0]), vkey(e[1])))
        return out

    def edge_count(self, with_multiplicity=False) -> int:
        m = sum(len(ns) for ns in self._adj.values()) // 2
        if with_multiplicity:
            m += sum(k - 1 for k in self._mult.values())
        return m

    @property
    def is_simple(self) -> bool:
        return not self._mult

    def simple(self) -> "Graph":
        return Graph._raw(self._adj, {})

    def min_degree(self) -> int:
        return min((len(ns) for ns in self._adj.values()), default=0)

    def __eq__(self, other):
        return isinstance(other, Graph) and self._adj == other._adj and self._mult == other._mult

    def __hash__(self):
        return hash((self._verts, tuple(self.edges())))

    def __repr__(self):
        return f"Graph(|V|={len(self)}, |E|={self.edge_count(True)})"


def _check_vertices(g: Graph, S):
    for v in S:
        if v not in g:
            raise GraphError(f"unknown vertex {v!r}")


def vertex_set(g: Graph, S: Iterable[Vertex]) -> list:
    S = set(S)
    _check_vertices(g, S)
    return sorted(S, key=vkey)


def closed_neighborhood(g: Graph, S: Iterable[Vertex]) -> list:
    S = set(S)
    _check_vertices(g, S)
    out = set(S)
    for v in S:
        out |= g.neighbors(v)
    return sorted(out, key=vkey)


def is_dominating(g: Graph, D: Iterable[Vertex]) -> bool:
    return len(closed_neighborhood(g, D)) == len(g)


def is_independent(g: Graph, S: Iterable[Vertex]) -> bool:
    S = set(S)
    _check_vertices(g, S)
    return all(not (g.neighbors(v) & S) for v in S)


def _reach(g: Graph, start, banned=frozenset()) -> set:
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for u in g.neighbors(v):
            if u not in seen and u not in banned:
                seen.add(u)
                todo.append(u)
    return seen


def is_connected(g: Graph) -> bool:
    if len(g) == 0:
        return True
    return len(_reach(g, g.vertices[0])) == len(g)


def is_3_connected(g: Graph) -> bool:
    # exhaustive 2-cut search, fine for a few hundred vertices
    n = len(g)
    if n < 4 or not is_connected(g):
        return False
    if g.min_degree() < 3:
        return False
    verts = g.vertices
    for a, b in combinations(verts, 2):
        banned = frozenset((a, b))
        start = next(v for v in verts if v not in banned)
        if len(_reach(g, start, banned)) != n - 2:
            return False
    return True


def delete_edge(g: Graph, e) -> Graph:
    """Remove one copy of edge ``e``."""
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"unknown edge {e!r}")
    k = _key(u, v)
    adj = dict(g._adj)
    mult = dict(g._mult)
    m = mult.get(k, 1)
    if m > 2:
        mult[k] = m - 1
    elif m == 2:
        del mult[k]
    else:
        adj[u] = adj[u] - {v}
        adj[v] = adj[v] - {u}
    return Graph._raw(adj, mult)


def delete_vertex(g: Graph, v) -> Graph:
    if v not in g:
        raise GraphError(f"unknown vertex {v!r}")
    adj = {u: ns - {v} for u, ns in g._adj.items() if u != v}
    mult = {k: m for k, m in g._mult.items() if v not in k}
    return Graph._raw(adj, mult)


def relabel(g: Graph, mapping) -> Graph:
    edges = []
    for u, v in g.edges():
        edges += [(mapping[u], mapping[v])] * g.multiplicity(u, v)
    return Graph((mapping[v] for v in g.vertices), edges)


# isomorphism

ISO_LIMIT = 64


def isomorphic(g1: Graph, g2: Graph, wall_constraints=None, limit: int = ISO_LIMIT) -> bool:
    """Backtracking isomorphism test respecting edge multiplicities.

    ``wall_constraints`` is a list of ``(seq1, seq2)`` pairs; the i-th vertex
    of ``seq1`` must map to the i-th vertex of ``seq2``.
    """
    return find_isomorphism(g1, g2, wall_constraints, limit) is not None


def find_isomorphism(g1: Graph, g2: Graph, wall_constraints=None, limit: int = ISO_LIMIT):
    if len(g1) > limit or len(g2) > limit:
        raise GraphError(f"isomorphism size limit {limit} exceeded")
    if len(g1) != len(g2) or g1.edge_count(True) != g2.edge_count(True):
        return None

    def sig(g, v):
        return (g.degree(v), sum(g.multiplicity(v, u) for u in g.neighbors(v)))

    if sorted(sig(g1, v) for v in g1.vertices) != sorted(sig(g2, v) for v in g2.vertices):
        return None

    fixed = {}
    for s1, s2 in wall_constraints or ():
        if len(s1) != len(s2):
            return None
        for a, b in zip(s1, s2):
            if fixed.get(a, b) != b:
                return None
            fixed[a] = b
    if len(set(fixed.values())) != len(fixed):
        return None
    for a, b in fixed.items():
        if a not in g1 or b not in g2 or sig(g1, a) != sig(g2, b):
            return None

    # BFS-ish order so that each new vertex tends to touch mapped ones
    order = list(fixed)
    placed = set(order)
    rest = sorted((v for v in g1.vertices if v not in placed), key=lambda v: -g1.degree(v))
    while rest:
        best = max(rest, key=lambda v: (len(g1.neighbors(v) & placed), g1.degree(v)))
        rest.remove(best)
        order.append(best)
        placed.add(best)

    mapping = {}
    used = set()

    def compatible(a, b):
        if sig(g1, a) != sig(g2, b):
            return False
        for x in g1.neighbors(a):
            if x in mapping:
                y = mapping[x]
                if not g2.has_edge(b, y) or g1.multiplicity(a, x) != g2.multiplicity(b, y):
                    return False
        # mapped non-neighbours must stay non-neighbours
        mapped_nb = sum(1 for x in g1.neighbors(a) if x in mapping)
        return mapped_nb == sum(1 for y in g2.neighbors(b) if y in used)

    def extend(i):
        if i == len(order):
            return True
        a = order[i]
        cands = [fixed[a]] if a in fixed else g2.vertices
        for b in cands:
            if b in used or not compatible(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return dict(mapping) if extend(0) else None
