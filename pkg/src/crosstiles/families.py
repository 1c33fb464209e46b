"""The six extremal families and the k-fold repetition helper.

Expected values travel as metadata only; solvers never see them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .signature import Signature, SignatureError, counts, parse_signature, tokenize

FAMILY_IDS = ("G1", "G2", "G3", "G4", "G5", "G6")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    params: dict
    signature: Signature
    expected: dict
    notes: dict = field(default_factory=dict)

    @property
    def text(self) -> str:
        return self.signature.source_text


def repeat_tile(tile_text: str, k: int, min_k: int = 3) -> Signature:
    if k < min_k or k % 2 == 0:
        raise FamilyError(f"repeat count must be odd and at least {min_k}, got {k}")
    try:
        list(tokenize(tile_text))
    except SignatureError as exc:
        raise FamilyError(str(exc)) from exc
    return parse_signature(tile_text * k)


def _odd_n(params, least):
    n = params.get("n")
    if not isinstance(n, int) or n < least or n % 2 == 0:
        raise FamilyError(f"n must be an odd integer >= {least}, got {n!r}")
    return n


def _tiles(params, allowed):
    tiles = params.get("tiles")
    if not tiles:
        raise FamilyError("tiles=... required")
    tiles = list(tiles)
    bad = [t for t in tiles if t not in allowed]
    if bad:
        raise FamilyError(f"tiles {bad} not allowed here (allowed: {', '.join(allowed)})")
    if len(tiles) < 3 or len(tiles) % 2 == 0:
        raise FamilyError(f"need an odd number of at least 3 tiles, got {len(tiles)}")
    return tiles


def family_instance(family: str, **params) -> FamilyInstance:
    f = family.upper()
    if f == "G1":
        n = _odd_n(params, 3)
        return FamilyInstance(f, {"n": n}, repeat_tile("VBdL", n), {"gamma": 2 * n}, {"gamma": "upper bound attained"})
    if f == "G2":
        n = _odd_n(params, 3)
        return FamilyInstance(f, {"n": n}, repeat_tile("AIVL", n), {"gamma": n}, {"gamma": "upper bound attained"})
    if f == "G3":
        n = _odd_n(params, 1)
        sig = repeat_tile("DDLDDLAIVL", n, min_k=1)
        return FamilyInstance(f, {"n": n}, sig, {"gamma": 2 * n}, {"gamma": "lower bound attained"})
    if f == "G4":
        n = _odd_n(params, 3)
        return FamilyInstance(
            f, {"n": n}, repeat_tile("HdL", n), {"alpha": 3 * n, "vertices": 6 * n},
            {"alpha": "upper bound attained"},
        )
    if f == "G5":
        tiles = _tiles(params, ("DDdL", "DDL"))
        if all(t == "DDdL" for t in tiles):
            raise FamilyError("G5 needs at least one DDL tile")
        sig = parse_signature("".join(tiles))
        c = counts(sig)
        return FamilyInstance(f, {"tiles": tiles}, sig, {"alpha": c.L + c.d}, {"alpha": "lower bound attained"})
    if f == "G6":
        tiles = _tiles(params, ("DDdL", "VIAdL", "AIVdL"))
        if all(t == "VIAdL" for t in tiles) or all(t == "AIVdL" for t in tiles):
            raise FamilyError("G6 must not consist only of VIAdL or only of AIVdL tiles")
        sig = parse_signature("".join(tiles))
        c = counts(sig)
        return FamilyInstance(f, {"tiles": tiles}, sig, {"alpha": 2 * c.L - 1}, {"alpha": "lower bound attained"})
    raise FamilyError(f"unknown family {family!r}")


def parse_family_spec(spec: str) -> FamilyInstance:
    """``"G1:n=3"`` or ``"G5:tiles=DDdL,DDL,DDdL"``."""
    head, _, rest = spec.partition(":")
    params = {}
    if rest:
        for part in rest.split(";"):
            key, eq, val = part.partition("=")
            if not eq:
                raise FamilyError(f"bad parameter {part!r}")
            key = key.strip()
            if key == "n":
                try:
                    params["n"] = int(val)
                except ValueError:
                    raise FamilyError(f"n must be an integer, got {val!r}") from None
            elif key == "tiles":
                params["tiles"] = [t.strip() for t in val.split(",") if t.strip()]
            else:
                raise FamilyError(f"unknown parameter {key!r}")
    return family_instance(head.strip(), **params)
