"""Planarity, the decision cr <= 1, and 2-crossing-criticality.

Edges may carry multiplicity.  A drawing with one crossing can only cross
two single edges: crossing one copy of a doubled edge uv once would put the
endpoints of the other edge on both sides of the closed curve formed by the
two copies, which {u, v} cannot separate in a 3-connected graph.  Answers of
``True`` from ``crossing_le_1`` are always backed by an explicit planar
planarization; answers of ``False`` rely on the argument above when doubled
edges are present.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import networkx as nx

from .graphcore import Graph, GraphError, _key, delete_edge, is_3_connected, vkey

CROSSING = ("__crossing__",)


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(_nx(g))[0]


def _kuratowski_edges(h: nx.Graph):
    ok, cert = nx.check_planarity(h, counterexample=True)
    if ok:
        return None
    return [_key(*e) for e in cert.edges()]


def planarize_pair(g: Graph, e, f) -> Graph:
    """Replace independent edges e, f by a new vertex adjacent to all four ends."""
    (u, v), (x, y) = e, f
    if not g.has_edge(u, v) or not g.has_edge(x, y):
        raise GraphError("unknown edge")
    if len({u, v, x, y}) < 4:
        raise GraphError("edges must not share an endpoint")
    h = delete_edge(delete_edge(g, e), f)
    edges = []
    for a, b in h.edges():
        edges += [(a, b)] * h.multiplicity(a, b)
    edges += [(CROSSING, u), (CROSSING, v), (CROSSING, x), (CROSSING, y)]
    return Graph(list(h.vertices) + [CROSSING], edges)


def _planar_after(h: nx.Graph, e, f) -> bool:
    (u, v), (x, y) = e, f
    h.remove_edge(u, v)
    h.remove_edge(x, y)
    h.add_edges_from([(CROSSING, u), (CROSSING, v), (CROSSING, x), (CROSSING, y)])
    ok = nx.check_planarity(h)[0]
    h.remove_node(CROSSING)
    h.add_edge(u, v)
    h.add_edge(x, y)
    return ok


def _ekey(e):
    return vkey(e[0]), vkey(e[1])


def _pair(e, f):
    return (e, f) if _ekey(e) <= _ekey(f) else (f, e)


def crossing_le_1(g: Graph, hints=()):
    """Return ``(True, witness)`` when g has a drawing with at most one crossing.

    The witness is ``None`` for planar graphs and the crossing edge pair
    otherwise.  The search is exhaustive over independent pairs of single
    edges, restricted to pairs that hit every Kuratowski subgraph found on
    the way (a pair missing one leaves it intact).  ``hints`` are candidate
    pairs tried first.
    """
    h = _nx(g)
    if nx.check_planarity(h)[0]:
        return True, None
    single = {e for e in g.edges() if g.multiplicity(*e) == 1}
    for e, f in hints:
        if e in single and f in single and len(set(e) | set(f)) == 4 and _planar_after(h, e, f):
            return True, _pair(e, f)
    K = _kuratowski_edges(h)
    all_single = sorted(single, key=_ekey)
    tried = set()
    inner = sorted(set(K) & single, key=_ekey)
    # cheap pass: both edges from the same obstruction
    for i, e in enumerate(inner):
        for f in inner[i + 1:]:
            if len(set(e) | set(f)) < 4:
                continue
            tried.add((e, f))
            if _planar_after(h, e, f):
                return True, (e, f)
    for e in sorted(set(K) & single, key=_ekey):
        h.remove_edge(*e)
        K2 = _kuratowski_edges(h)
        h.add_edge(*e)
        pool = all_single if K2 is None else sorted(set(K2) & single, key=_ekey)
        for f in pool:
            if len(set(e) | set(f)) < 4:
                continue
            key = _pair(e, f)
            if key in tried:
                continue
            tried.add(key)
            if _planar_after(h, e, f):
                return True, key
    return False, None


@dataclass
class CriticalityReport:
    planar: bool
    cr_le_1: bool
    cr_le_1_witness: Optional[tuple]
    three_connected: bool
    critical_edges_ok: bool
    failing_edge: Optional[tuple]
    is_2cc: bool
    note: str = "edge deletions cover all proper subgraphs (crossing number is monotone under subgraphs)"

    def as_dict(self) -> dict:
        d = asdict(self)
        for k in ("cr_le_1_witness", "failing_edge"):
            if d[k] is not None:
                d[k] = _jsonable(d[k])
        return d


def _jsonable(x):
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int) and isinstance(x[1], str):
        return f"{x[0]}:{x[1]}"
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


def _deletion_ok(args):
    g, e = args
    return crossing_le_1(delete_edge(g, e))[0]


def _deletions_sequential(g, edges):
    hints = []
    out = []
    for e in edges:
        ok, wit = crossing_le_1(delete_edge(g, e), hints)
        out.append(ok)
        if wit is not None and wit not in hints:
            hints.insert(0, wit)
            del hints[8:]
    return out


def verify_2cc(g: Graph, workers: int = 1) -> CriticalityReport:
    """Check cr(g) >= 2 and cr(g - e) <= 1 for every edge e (one copy of a
    parallel class at a time)."""
    planar = is_planar(g)
    le1, wit = crossing_le_1(g)
    three = is_3_connected(g.simple())
    edges = g.edges()
    failing = None
    if not le1:
        if workers > 1:
            with ProcessPoolExecutor(workers) as ex:
                results = list(ex.map(_deletion_ok, [(g, e) for e in edges], chunksize=4))
        else:
            results = _deletions_sequential(g, edges)
        for e, ok in zip(edges, results):
            if not ok:
                failing = e
                break
        crit_ok = failing is None
    else:
        crit_ok = True  # monotone: every subgraph of a graph with cr <= 1 has cr <= 1
    return CriticalityReport(
        planar=planar,
        cr_le_1=le1,
        cr_le_1_witness=wit,
        three_connected=three,
        critical_edges_ok=crit_ok,
        failing_edge=failing,
        is_2cc=(not le1) and crit_ok,
    )
