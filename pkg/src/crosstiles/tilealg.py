"""Tile algebra: instantiation, wall inversions, join, cyclization, and the
graph builder for signatures.

Vertices are provenance labels ``(tile_index, local_id)``.  Identified
vertices are represented by their lexicographically least label, and the
full merge history is kept alongside the graph.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .catalog import Catalog, TileTemplate, default_catalog, make_template
from .graphcore import Graph
from .signature import Signature, parse_signature, render_signature

MODES = ("right_invert", "left_invert", "both_invert", "reverse")


class TileError(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        p.setdefault(x, x)
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        self.parent[b] = a


@dataclass(frozen=True)
class Tile:
    vertices: tuple
    edges: tuple  # repeated pairs are parallel edges
    left_wall: tuple
    right_wall: tuple
    history: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if set(self.left_wall) & set(self.right_wall):
            raise TileError("walls must be disjoint")

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)


def instantiate(template: TileTemplate, index: int) -> Tile:
    lab = lambda v: (index, v)
    return Tile(
        vertices=tuple(lab(v) for v in template.vertices),
        edges=tuple((lab(u), lab(v)) for u, v in template.edges),
        left_wall=tuple(lab(v) for v in template.left_wall),
        right_wall=tuple(lab(v) for v in template.right_wall),
    )


def transform(tile: Tile, mode: str) -> Tile:
    lw, rw = tile.left_wall, tile.right_wall
    if mode == "right_invert":
        lw, rw = lw, rw[::-1]
    elif mode == "left_invert":
        lw, rw = lw[::-1], rw
    elif mode == "both_invert":
        lw, rw = lw[::-1], rw[::-1]
    elif mode == "reverse":
        lw, rw = rw, lw
    else:
        raise TileError(f"unknown mode {mode!r}")
    return Tile(tile.vertices, tile.edges, lw, rw, tile.history)


def _quotient(vertices, edges, pairs, history):
    uf = _UnionFind()
    for v in vertices:
        uf.find(v)
    for a, b in pairs:
        uf.union(a, b)
    groups = {}
    for v in vertices:
        groups.setdefault(uf.find(v), []).append(v)
    hist = {}
    for rep, members in groups.items():
        labels = set()
        for m in members:
            labels.update(history.get(m, (m,)))
        if len(labels) > 1:
            hist[rep] = tuple(sorted(labels))
    verts = tuple(sorted(groups))
    new_edges = tuple((uf.find(u), uf.find(v)) for u, v in edges)
    return uf, verts, new_edges, hist


def join(t1: Tile, t2: Tile) -> Tile:
    if len(t1.right_wall) != len(t2.left_wall):
        raise TileError(
            f"incompatible walls: {len(t1.right_wall)} vs {len(t2.left_wall)} vertices"
        )
    if set(t1.vertices) & set(t2.vertices):
        raise TileError("tiles to be joined must be vertex-disjoint")
    hist = {**t1.history, **t2.history}
    uf, verts, edges, hist = _quotient(
        t1.vertices + t2.vertices, t1.edges + t2.edges, zip(t1.right_wall, t2.left_wall), hist
    )
    lw = tuple(uf.find(v) for v in t1.left_wall)
    rw = tuple(uf.find(v) for v in t2.right_wall)
    return Tile(verts, edges, lw, rw, hist)


def join_all(tiles) -> Tile:
    tiles = list(tiles)
    if not tiles:
        raise TileError("nothing to join")
    acc = tiles[0]
    for t in tiles[1:]:
        acc = join(acc, t)
    return acc


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    history: dict  # representative -> all labels fused into it

    @property
    def vertices(self):
        return self.graph.vertices

    def labels_of(self, v) -> tuple:
        return self.history.get(v, (v,))

    def find(self, label):
        """Vertex of the graph carrying ``label``, or None when it was suppressed."""
        if label in self.graph:
            return label
        for rep, labels in self.history.items():
            if label in labels and rep in self.graph:
                return rep
        return None

    def simple(self) -> "LabeledGraph":
        return LabeledGraph(self.graph.simple(), self.history)


def cyclize(t: Tile) -> LabeledGraph:
    """Identify ``left_wall[i]`` with ``right_wall[i]``; loops are dropped."""
    if len(t.left_wall) != len(t.right_wall):
        raise TileError("tile is not compatible with itself")
    uf, verts, edges, hist = _quotient(t.vertices, t.edges, zip(t.left_wall, t.right_wall), t.history)
    edges = [e for e in edges if e[0] != e[1]]
    return LabeledGraph(Graph(verts, edges), hist)


def _edge_counter(g: Graph) -> Counter:
    return Counter({e: g.multiplicity(*e) for e in g.edges()})


def suppress_degree2(g: Graph) -> Graph:
    """Smooth out degree-2 vertices (degree counted with multiplicity) until none remain."""
    adj = {v: Counter() for v in g.vertices}
    for (u, v), m in _edge_counter(g).items():
        adj[u][v] += m
        adj[v][u] += m
    todo = sorted(v for v in adj if sum(adj[v].values()) == 2)
    while todo:
        x = todo.pop(0)
        if x not in adj or sum(adj[x].values()) != 2:
            continue
        nbrs = sorted(adj[x].elements())
        del adj[x]
        for y in set(nbrs):
            del adj[y][x]
        a, b = nbrs
        if a != b:
            adj[a][b] += 1
            adj[b][a] += 1
        for y in sorted(set(nbrs)):
            if sum(adj[y].values()) == 2 and y not in todo:
                todo.append(y)
        todo.sort()
    edges = []
    for u in adj:
        for v, m in adj[u].items():
            if u < v:
                edges += [(u, v)] * m
    return Graph(adj, edges)


def simplify_parallel(g: Graph) -> Graph:
    return g.simple()


def _restrict(history, g):
    return {k: v for k, v in history.items() if k in g}


def assemble(templates) -> LabeledGraph:
    """Multigraph of the construction for a sequence of templates, before
    suppression: odd positions inverted, right wall of the join inverted,
    then cyclized."""
    if len(templates) < 3 or len(templates) % 2 == 0:
        raise TileError("need an odd number of at least 3 tiles")
    seq = []
    for i, tpl in enumerate(templates):
        t = instantiate(tpl, i)
        seq.append(transform(t, "both_invert") if i % 2 else t)
    return cyclize(transform(join_all(seq), "right_invert"))


def templates_for(sig: Signature, catalog: Catalog) -> list:
    out = []
    for token, frame in sig.tiles:
        pid, orient = catalog.resolve(token)
        out.append(make_template(catalog, pid, orient, frame))
    return out


def _coerce(sig, catalog):
    catalog = catalog or default_catalog()
    if isinstance(sig, str):
        sig = parse_signature(sig, catalog)
    return sig, catalog


def build_multigraph(sig, catalog: Catalog | None = None) -> LabeledGraph:
    """Construction graph with parallel edges kept (degree-2 vertices suppressed)."""
    sig, catalog = _coerce(sig, catalog)
    lg = assemble(templates_for(sig, catalog))
    g = suppress_degree2(lg.graph)
    return LabeledGraph(g, _restrict(lg.history, g))


def build_graph(sig, catalog: Catalog | None = None) -> LabeledGraph:
    """Simple graph of a signature: suppress, collapse parallel edges, repeat."""
    lg = build_multigraph(sig, catalog)
    g = lg.graph
    while True:
        h = suppress_degree2(g.simple())
        if h == g:
            break
        g = h
    return LabeledGraph(g, _restrict(lg.history, g))


def frame_template(catalog: Catalog, frame_id: str) -> TileTemplate:
    f = catalog.frames[frame_id]
    return TileTemplate(
        picture_id="",
        orientation="upright",
        frame_id=f.id,
        token="",
        vertices=f.vertices,
        edges=f.edges,
        left_wall=f.left_wall,
        right_wall=f.right_wall,
        marks=(),
        corners=f.corners,
    )


def build_frames_only(sig, catalog: Catalog | None = None) -> LabeledGraph:
    """The graph obtained from the frames alone (pictures left out)."""
    sig, catalog = _coerce(sig, catalog)
    lg = assemble([frame_template(catalog, fr) for _, fr in sig.tiles])
    g = suppress_degree2(lg.graph)
    return LabeledGraph(g, _restrict(lg.history, g))


def alternating_repeat(template: TileTemplate, k: int) -> LabeledGraph:
    """Join of T, T right-inverted, T, ... (k tiles), right-inverted and cyclized.

    Used only to compare against ``build_graph`` on k equal tiles.
    """
    if k < 3 or k % 2 == 0:
        raise TileError("k must be odd and at least 3")
    seq = []
    for i in range(k):
        t = instantiate(template, i)
        seq.append(transform(t, "right_invert") if i % 2 else t)
    lg = cyclize(transform(join_all(seq), "right_invert"))
    g = lg.graph
    while True:
        h = suppress_degree2(g.simple())
        if h == g:
            break
        g = h
    return LabeledGraph(g, _restrict(lg.history, g))


# export


def label_str(v) -> str:
    if isinstance(v, tuple) and len(v) == 2:
        return f"{v[0]}:{v[1]}"
    return str(v)


def to_json(lg, signature: str | None = None) -> str:
    g = lg.graph if isinstance(lg, LabeledGraph) else lg
    doc = {
        "vertices": [label_str(v) for v in g.vertices],
        "edges": [[label_str(u), label_str(v)] for u, v in g.edges()],
    }
    if signature is not None:
        doc = {"signature": signature, **doc}
    return json.dumps(doc, sort_keys=False)


def to_dot(lg, name: str = "G") -> str:
    g = lg.graph if isinstance(lg, LabeledGraph) else lg
    lines = [f"graph {json.dumps(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {json.dumps(label_str(v))};")
    for u, v in g.edges():
        for _ in range(g.multiplicity(u, v)):
            lines.append(f"  {json.dumps(label_str(u))} -- {json.dumps(label_str(v))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Tile",
    "LabeledGraph",
    "TileError",
    "instantiate",
    "transform",
    "join",
    "join_all",
    "cyclize",
    "suppress_degree2",
    "simplify_parallel",
    "build_graph",
    "build_multigraph",
    "build_frames_only",
    "alternating_repeat",
    "render_signature",
    "to_json",
    "to_dot",
]
