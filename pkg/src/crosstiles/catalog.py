"""Frames, pictures and the tiles built from them.

The catalog is a small text document (see ``data/default.catalog`` for the
grammar).  Loading validates every entry and fails without returning a
partial catalog.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .graphcore import Graph, find_isomorphism, is_connected

UPRIGHT = "upright"
ROTATED = "rotated180"
ORIENTATIONS = (UPRIGHT, ROTATED)

N_FRAMES = 2
N_PICTURES = 13
N_TILES = 42

ENV_CATALOG = "CROSSTILES_CATALOG"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    id: str
    vertices: tuple
    edges: tuple
    corners: tuple  # tl, tr, bl, br
    left_wall: tuple  # bottom to top
    right_wall: tuple


@dataclass(frozen=True)
class Picture:
    id: str
    vertices: tuple
    edges: tuple
    corners: tuple
    marks: tuple
    rotation_symmetric: bool

    @property
    def inner(self) -> tuple:
        return tuple(v for v in self.vertices if v not in self.corners)

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def rotated_id(self) -> str:
        return self.id if self.rotation_symmetric else self.id[::-1]


@dataclass(frozen=True)
class Catalog:
    frames: dict
    pictures: dict
    source: str = "<memory>"
    _tokens: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        toks = {}
        for p in self.pictures.values():
            toks[p.id] = (p.id, UPRIGHT)
            toks.setdefault(p.rotated_id(), (p.id, ROTATED))
        self._tokens.update(toks)

    def resolve(self, token: str):
        """Map a picture token such as ``"AIV"`` to ``(picture_id, orientation)``."""
        return self._tokens.get(token)

    @property
    def tokens(self) -> list:
        return sorted(self._tokens)

    def tile_names(self) -> list:
        return [t.name for t in enumerate_tiles(self)]


# parsing

_SECTION = re.compile(r"^\[\s*(frame|picture)\s+([A-Za-z0-9_]+)\s*\]$")
_ENTRY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_TOKEN = re.compile(r"\s*(\[|\]|,|[A-Za-z0-9_']+)")


def _parse_value(text: str, line: int):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CatalogError(f"line {line}: unexpected character {text[pos:].strip()[:1]!r}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    i = 0

    def value():
        nonlocal i
        if i >= len(toks):
            raise CatalogError(f"line {line}: missing value")
        t = toks[i]
        i += 1
        if t == "[":
            items = []
            if i < len(toks) and toks[i] == "]":
                i += 1
                return items
            while True:
                items.append(value())
                if i >= len(toks):
                    raise CatalogError(f"line {line}: unclosed list")
                if toks[i] == ",":
                    i += 1
                    continue
                if toks[i] == "]":
                    i += 1
                    return items
                raise CatalogError(f"line {line}: expected ',' or ']' near {toks[i]!r}")
        if t in ("]", ","):
            raise CatalogError(f"line {line}: unexpected {t!r}")
        if t == "true":
            return True
        if t == "false":
            return False
        return t

    v = value()
    if i != len(toks):
        raise CatalogError(f"line {line}: trailing text after value")
    return v


def parse_document(text: str) -> list:
    """Split a catalog document into ``(kind, id, entries, line)`` sections."""
    sections = []
    cur = None
    pending = None  # (key, buffer, start line)
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if pending is not None:
            key, buf, start = pending
            buf += " " + line
            if buf.count("[") <= buf.count("]"):
                cur[2][key] = (_parse_value(buf, start), start)
                pending = None
            else:
                pending = (key, buf, start)
            continue
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            cur = (m.group(1), m.group(2), {}, n)
            sections.append(cur)
            continue
        m = _ENTRY.match(line)
        if not m:
            raise CatalogError(f"line {n}: cannot parse {raw.strip()!r}")
        if cur is None:
            raise CatalogError(f"line {n}: entry outside of a section")
        key, val = m.group(1), m.group(2)
        if key in cur[2]:
            raise CatalogError(f"line {n}: duplicate key {key!r}")
        if val.count("[") > val.count("]"):
            pending = (key, val, n)
        else:
            cur[2][key] = (_parse_value(val, n), n)
    if pending is not None:
        raise CatalogError(f"line {pending[2]}: unclosed list at end of document")
    return sections


def _ids(val, what, line):
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise CatalogError(f"line {line}: {what} must be a list of vertex ids")
    return tuple(val)


def _edges(val, line):
    if not isinstance(val, list):
        raise CatalogError(f"line {line}: edges must be a list of pairs")
    out = []
    for e in val:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise CatalogError(f"line {line}: bad edge {e!r}")
        if e[0] == e[1]:
            raise CatalogError(f"line {line}: self-loop at {e[0]!r}")
        out.append(tuple(e))
    return tuple(out)


def _need(entries, key, kind, ident, line):
    if key not in entries:
        raise CatalogError(f"line {line}: {kind} {ident!r} lacks {key!r}")
    return entries[key]


def _diagonals(corners):
    tl, tr, bl, br = corners
    return {frozenset((tl, br)), frozenset((tr, bl))}


def _check_common(kind, ident, vertices, edges, corners, line):
    if len(set(vertices)) != len(vertices):
        raise CatalogError(f"{kind} {ident!r} (line {line}): repeated vertex id")
    if len(corners) != 4 or len(set(corners)) != 4:
        raise CatalogError(f"{kind} {ident!r} (line {line}): corners must be 4 distinct ids")
    vs = set(vertices)
    for c in corners:
        if c not in vs:
            raise CatalogError(f"{kind} {ident!r} (line {line}): corner {c!r} not a vertex")
    for u, v in edges:
        if u not in vs or v not in vs:
            raise CatalogError(f"{kind} {ident!r} (line {line}): edge {u}-{v} uses unknown vertex")
    diag = _diagonals(corners)
    for u, v in edges:
        if frozenset((u, v)) in diag:
            raise CatalogError(f"{kind} {ident!r} (line {line}): diagonal edge {u}-{v}")


def _frame(ident, entries, line):
    get = lambda k: _need(entries, k, "frame", ident, line)
    ids = lambda k: _ids(get(k)[0], k, get(k)[1])
    vertices, corners = ids("vertices"), ids("corners")
    lw, rw = ids("left_wall"), ids("right_wall")
    edges = _edges(*get("edges"))
    _check_common("frame", ident, vertices, edges, corners, line)
    if len(lw) != 2 or len(rw) != 2:
        raise CatalogError(f"frame {ident!r} (line {line}): walls must have exactly 2 vertices")
    if set(lw) & set(rw) or len(set(lw)) != 2 or len(set(rw)) != 2:
        raise CatalogError(f"frame {ident!r} (line {line}): walls must be disjoint")
    for v in lw + rw:
        if v not in vertices:
            raise CatalogError(f"frame {ident!r} (line {line}): wall vertex {v!r} not a vertex")
    if not is_connected(Graph(vertices, edges)):
        raise CatalogError(f"frame {ident!r} (line {line}): graph is disconnected")
    return Frame(ident, vertices, edges, corners, lw, rw)


def _picture(ident, entries, line):
    get = lambda k: _need(entries, k, "picture", ident, line)
    ids = lambda k: _ids(get(k)[0], k, get(k)[1])
    vertices, corners, marks = ids("vertices"), ids("corners"), ids("marks")
    edges = _edges(*get("edges"))
    sym, sline = get("rotation_symmetric")
    if not isinstance(sym, bool):
        raise CatalogError(f"line {sline}: rotation_symmetric must be true or false")
    _check_common("picture", ident, vertices, edges, corners, line)
    if not re.fullmatch(r"[ABDHIV]+", ident):
        raise CatalogError(f"picture {ident!r} (line {line}): id must use the letters A,B,D,H,I,V")
    g = Graph(vertices, edges)
    if not is_connected(g):
        raise CatalogError(f"picture {ident!r} (line {line}): graph is disconnected")
    for m in marks:
        if m not in g:
            raise CatalogError(f"picture {ident!r} (line {line}): mark {m!r} not a vertex")
    covered = set(marks)
    for m in marks:
        covered |= g.neighbors(m)
    if covered != set(vertices):
        raise CatalogError(f"picture {ident!r} (line {line}): marks do not dominate the picture")
    if len(marks) != expected_marks(ident):
        raise CatalogError(
            f"picture {ident!r} (line {line}): {len(marks)} marks, expected {expected_marks(ident)}"
        )
    for v in vertices:
        if v not in corners and v[:1] not in ("t", "b"):
            raise CatalogError(f"picture {ident!r} (line {line}): inner vertex {v!r} must start with t or b")
    return Picture(ident, vertices, edges, corners, marks, sym)


def expected_marks(picture_id: str) -> int:
    """Per-picture share of the domination upper bound."""
    s = picture_id.replace("I", "")
    n = sum(c in "ABDV" for c in s) + 2 * s.count("H")
    if picture_id in ("AIV", "VIA"):
        n -= 1
    return n


def load_catalog(source=None, *, expect_counts: bool = True) -> Catalog:
    """Load and validate a catalog.

    ``source`` may be document text, a path, or ``None`` for the bundled
    default (overridable through ``$CROSSTILES_CATALOG``).
    """
    if source is None:
        env = os.environ.get(ENV_CATALOG)
        if env:
            source = Path(env)
    if source is None:
        text = resources.files("crosstiles").joinpath("data/default.catalog").read_text()
        origin = "<bundled>"
    elif isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and os.path.exists(source)):
        text = Path(source).read_text()
        origin = str(source)
    else:
        text = source
        origin = "<text>"

    frames, pictures = {}, {}
    for kind, ident, entries, line in parse_document(text):
        target = frames if kind == "frame" else pictures
        if ident in target:
            raise CatalogError(f"line {line}: duplicate {kind} {ident!r}")
        target[ident] = (_frame if kind == "frame" else _picture)(ident, entries, line)

    if expect_counts:
        if len(frames) != N_FRAMES:
            raise CatalogError(f"expected {N_FRAMES} frames, found {len(frames)}")
        if len(pictures) != N_PICTURES:
            raise CatalogError(f"expected {N_PICTURES} pictures, found {len(pictures)}")
    for p in pictures.values():
        for f in frames.values():
            clash = set(p.inner) & set(f.vertices)
            if clash:
                raise CatalogError(f"picture {p.id!r} reuses frame vertex ids {sorted(clash)}")
    return Catalog(frames, pictures, origin)


_DEFAULT = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog()
    return _DEFAULT


# templates


@dataclass(frozen=True)
class TileTemplate:
    picture_id: str
    orientation: str
    frame_id: str
    token: str
    vertices: tuple
    edges: tuple  # repeated pairs are parallel edges
    left_wall: tuple
    right_wall: tuple
    marks: tuple
    corners: tuple  # frame corners: tl, tr, bl, br

    @property
    def name(self) -> str:
        return self.token + self.frame_id

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)


def _rotate_picture(p: Picture) -> dict:
    tl, tr, bl, br = p.corners
    m = {tl: br, br: tl, tr: bl, bl: tr}
    for v in p.inner:
        m[v] = {"t": "b", "b": "t"}[v[0]] + v[1:]
    if len(set(m.values())) != len(m):
        raise CatalogError(f"picture {p.id!r}: rotation renaming collides")
    return m


def make_template(catalog: Catalog, picture_id: str, orientation: str, frame_id: str) -> TileTemplate:
    try:
        p = catalog.pictures[picture_id]
    except KeyError:
        raise CatalogError(f"unknown picture {picture_id!r}") from None
    try:
        f = catalog.frames[frame_id]
    except KeyError:
        raise CatalogError(f"unknown frame {frame_id!r}") from None
    if orientation not in ORIENTATIONS:
        raise CatalogError(f"unknown orientation {orientation!r}")

    rot = _rotate_picture(p) if orientation == ROTATED else {v: v for v in p.vertices}
    # picture corner (after rotation) -> frame corner
    to_frame = dict(zip(p.corners, f.corners))
    place = {}
    for v in p.vertices:
        w = rot[v]
        place[v] = to_frame.get(w, w)

    fc = set(f.corners)
    edges = [e for e in f.edges if not (e[0] in fc and e[1] in fc)]
    edges += [(place[u], place[v]) for u, v in p.edges]
    verts = list(f.vertices) + [place[v] for v in p.inner]
    token = p.id if orientation == UPRIGHT else p.rotated_id()
    return TileTemplate(
        picture_id=p.id,
        orientation=orientation,
        frame_id=f.id,
        token=token,
        vertices=tuple(verts),
        edges=tuple(edges),
        left_wall=f.left_wall,
        right_wall=f.right_wall,
        marks=tuple(sorted(place[m] for m in p.marks)),
        corners=f.corners,
    )


def templates_equivalent(a: TileTemplate, b: TileTemplate) -> bool:
    ga, gb = a.graph(), b.graph()
    if find_isomorphism(ga, gb, [(a.left_wall, b.left_wall), (a.right_wall, b.right_wall)]):
        return True
    inv = [(a.left_wall, b.left_wall[::-1]), (a.right_wall, b.right_wall[::-1])]
    return find_isomorphism(ga, gb, inv) is not None


def enumerate_tiles(catalog: Catalog) -> list:
    """All picture x orientation x frame combinations up to equivalence."""
    kept = []
    for pid in catalog.pictures:
        for orient in ORIENTATIONS:
            for fid in catalog.frames:
                t = make_template(catalog, pid, orient, fid)
                if not any(templates_equivalent(t, k) for k in kept):
                    kept.append(t)
    return kept


def symmetry_mismatches(catalog: Catalog) -> list:
    """Pictures whose rotation_symmetric flag disagrees with the isomorphism check."""
    bad = []
    for p in catalog.pictures.values():
        fid = next(iter(catalog.frames))
        same = templates_equivalent(
            make_template(catalog, p.id, UPRIGHT, fid), make_template(catalog, p.id, ROTATED, fid)
        )
        if same != p.rotation_symmetric:
            bad.append(p.id)
    return bad


def dump_catalog(catalog: Catalog) -> str:
    """Render a catalog back into the document format."""
    lst = lambda xs: "[" + ", ".join(xs) + "]"
    out = []
    for f in catalog.frames.values():
        out += [
            f"[frame {f.id}]",
            f"vertices = {lst(f.vertices)}",
            f"edges = {lst(lst(e) for e in f.edges)}",
            f"corners = {lst(f.corners)}",
            f"left_wall = {lst(f.left_wall)}",
            f"right_wall = {lst(f.right_wall)}",
            "marks = []",
            "",
        ]
    for p in catalog.pictures.values():
        out += [
            f"[picture {p.id}]",
            f"vertices = {lst(p.vertices)}",
            f"edges = {lst(lst(e) for e in p.edges)}",
            f"corners = {lst(p.corners)}",
            f"marks = {lst(p.marks)}",
            f"rotation_symmetric = {'true' if p.rotation_symmetric else 'false'}",
            "",
        ]
    return "\n".join(out)
