"""Tile signatures: strings such as ``"VBdLVBdLVBdL"``.

Each tile is a picture token (upper-case letters) closed by a frame, ``L`` or
``dL``.  Whitespace is ignored on input and never emitted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .catalog import Catalog, default_catalog

ALPHABET = "LdABDHIV"
FRAMES = ("L", "dL")


class SignatureError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Signature:
    tiles: tuple  # ((picture token, frame), ...)

    @property
    def source_text(self) -> str:
        return render_signature(self)

    def __str__(self):
        return self.source_text

    def __len__(self):
        return len(self.tiles)


@dataclass(frozen=True)
class SymbolCounts:
    A: int = 0
    B: int = 0
    D: int = 0
    H: int = 0
    I: int = 0
    V: int = 0
    L: int = 0
    d: int = 0
    AIV: int = 0
    VIA: int = 0

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("A", "B", "D", "H", "I", "V", "L", "d", "AIV", "VIA")}

    def __add__(self, other):
        return SymbolCounts(**{k: v + other.as_dict()[k] for k, v in self.as_dict().items()})


def tokenize(text: str):
    """Yield ``(token, frame, offset)`` triples; no catalog or parity checks."""
    cur = []
    start = None
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            if cur:
                raise SignatureError("whitespace inside a tile", i)
            i += 1
            continue
        if start is None:
            start = i
        if ch == "L":
            yield "".join(cur), "L", start
            cur, start = [], None
        elif ch == "d":
            if i + 1 >= n or text[i + 1] != "L":
                raise SignatureError("'d' must be followed by 'L'", i)
            yield "".join(cur), "dL", start
            cur, start = [], None
            i += 1
        elif ch in "ABDHIV":
            cur.append(ch)
        else:
            raise SignatureError(f"unexpected character {ch!r}", i)
        i += 1
    if cur:
        raise SignatureError("picture token without a frame", start)


def parse_signature(text: str, catalog: Catalog | None = None) -> Signature:
    catalog = catalog or default_catalog()
    if not text or not text.strip():
        raise SignatureError("empty signature", 0)
    tiles = []
    for token, frame, off in tokenize(text):
        if not token:
            raise SignatureError("frame without a picture", off)
        if catalog.resolve(token) is None:
            raise SignatureError(f"unknown picture token {token!r}", off)
        tiles.append((token, frame))
    if len(tiles) % 2 == 0:
        raise SignatureError(f"tile count must be odd, got {len(tiles)}", len(text))
    if len(tiles) < 3:
        raise SignatureError(f"need at least 3 tiles, got {len(tiles)}", len(text))
    return Signature(tuple(tiles))


def render_signature(sig: Signature) -> str:
    return "".join(tok + fr for tok, fr in sig.tiles)


def counts_of_text(text: str) -> SymbolCounts:
    """Per-character counts of an already tokenized string, plus AIV/VIA tiles."""
    c = {k: text.count(k) for k in ALPHABET}
    toks = [t for t, _, _ in tokenize(text)]
    return SymbolCounts(**c, AIV=toks.count("AIV"), VIA=toks.count("VIA"))


def counts(sig: Signature) -> SymbolCounts:
    return counts_of_text(render_signature(sig))


def all_tile_pairs(catalog: Catalog | None = None) -> list:
    catalog = catalog or default_catalog()
    return [(t.token, t.frame_id) for t in _tiles(catalog)]


_TILE_CACHE: dict = {}


def _tiles(catalog):
    from .catalog import enumerate_tiles

    key = id(catalog)
    if key not in _TILE_CACHE:
        _TILE_CACHE[key] = (catalog, enumerate_tiles(catalog))
    return _TILE_CACHE[key][1]


def random_signature(num_tiles: int, allowed=None, seed: int = 0, catalog: Catalog | None = None) -> Signature:
    if num_tiles < 3 or num_tiles % 2 == 0:
        raise SignatureError(f"num_tiles must be odd and at least 3, got {num_tiles}", 0)
    pool = sorted(allowed) if allowed is not None else all_tile_pairs(catalog)
    if not pool:
        raise SignatureError("empty tile filter", 0)
    rng = random.Random(seed)
    return Signature(tuple(rng.choice(pool) for _ in range(num_tiles)))
