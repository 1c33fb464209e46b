"""Closed-form bounds on domination and independence numbers, and the
explicit witness sets behind them."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Optional

from .catalog import Catalog, default_catalog
from .exact import BUDGET, alpha_exact, gamma_exact
from .graphcore import is_dominating, is_independent
from .signature import Signature, SymbolCounts, counts, parse_signature, render_signature
from .tilealg import LabeledGraph, build_frames_only, build_graph, label_str, templates_for


class WitnessError(RuntimeError):
    pass


def gamma_upper(c: SymbolCounts) -> int:
    return c.A + c.B + c.D + c.V + 2 * c.H - c.AIV - c.VIA


def gamma_lower(c: SymbolCounts) -> int:
    return ceil(2 * c.L / 3)


def alpha_upper(g) -> int:
    n = len(g.graph if isinstance(g, LabeledGraph) else g)
    return n // 2


def alpha_lower(c: SymbolCounts) -> int:
    return min(c.L + c.d, 2 * c.L - 1)


def construct_dominating_set(lg: LabeledGraph, sig: Signature, catalog: Catalog | None = None) -> list:
    """Union of every tile's picture marks, located in the final graph."""
    catalog = catalog or default_catalog()
    chosen = set()
    for i, tpl in enumerate(templates_for(sig, catalog)):
        for m in tpl.marks:
            v = lg.find((i, m))
            if v is None:
                raise WitnessError(f"mark {m!r} of tile {i} vanished during suppression")
            chosen.add(v)
    out = sorted(chosen)
    if not is_dominating(lg.graph, out):
        raise WitnessError("picture marks do not dominate the graph; catalog transcription bug")
    return out


def _frame_selection(frames) -> list:
    """Corner labels picked in the frames-only graph.

    All frames dL: tiles alternate between the two diagonals of their square
    and the last tile keeps only its top-left corner.  Otherwise every L tile
    gives its bottom-left corner, and each run of dL tiles is filled from
    right to left, starting with the top-left/bottom-right diagonal next to
    the L tile on its right.
    """
    n = len(frames)
    picks = []
    if "L" not in frames:
        for i in range(n):
            picks += [(i, "tl"), (i, "br")] if i % 2 == 0 else [(i, "tr"), (i, "bl")]
        picks.remove((n - 1, "br"))
        return picks
    for i in range(n):
        if frames[i] == "L":
            picks.append((i, "bl"))
            continue
        run = 0
        j = (i + 1) % n
        while frames[j] == "dL":
            run += 1
            j = (j + 1) % n
        picks += [(i, "tl"), (i, "br")] if run % 2 == 0 else [(i, "tr"), (i, "bl")]
    return picks


def construct_independent_set(lg: LabeledGraph, sig: Signature, catalog: Catalog | None = None) -> list:
    catalog = catalog or default_catalog()
    frames = [fr for _, fr in sig.tiles]
    fo = build_frames_only(sig, catalog)
    sel_fo = {fo.find(x) for x in _frame_selection(frames)}
    if None in sel_fo or not is_independent(fo.graph, sel_fo):
        raise WitnessError("frame selection is not independent in the frames-only graph")
    chosen = set()
    for v in sel_fo:
        w = lg.find(v)
        if w is None:
            raise WitnessError(f"corner {v!r} vanished in the full graph")
        chosen.add(w)
    out = sorted(chosen)
    if len(out) != len(sel_fo) or not is_independent(lg.graph, out):
        raise WitnessError("frame selection is not independent in the full graph")
    return out


@dataclass
class BoundsReport:
    signature: str
    counts: SymbolCounts
    n_vertices: int
    gamma_lower: int
    gamma_upper: int
    alpha_lower: int
    alpha_upper: int
    dom_witness: list
    ind_witness: list
    dom_witness_ok: bool
    ind_witness_ok: bool
    gamma_exact: Optional[int] = None
    alpha_exact: Optional[int] = None
    gamma_status: Optional[str] = None
    alpha_status: Optional[str] = None
    gamma_opt_witness: list = field(default_factory=list)
    alpha_opt_witness: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def gamma_sandwich(self) -> Optional[bool]:
        if self.gamma_exact is None:
            return None
        return self.gamma_lower <= self.gamma_exact <= self.gamma_upper

    @property
    def alpha_sandwich(self) -> Optional[bool]:
        if self.alpha_exact is None:
            return None
        return self.alpha_lower <= self.alpha_exact <= self.alpha_upper

    @property
    def budget_hit(self) -> bool:
        return BUDGET in (self.gamma_status, self.alpha_status)

    @property
    def ok(self) -> bool:
        flags = [self.dom_witness_ok, self.ind_witness_ok, self.gamma_sandwich, self.alpha_sandwich]
        return all(f is not False for f in flags)

    def as_dict(self) -> dict:
        gamma = {"lower": self.gamma_lower, "upper": self.gamma_upper}
        alpha = {"lower": self.alpha_lower, "upper": self.alpha_upper}
        if self.gamma_exact is not None:
            gamma.update(exact=self.gamma_exact, status=self.gamma_status,
                         witness=[label_str(v) for v in self.gamma_opt_witness])
        if self.alpha_exact is not None:
            alpha.update(exact=self.alpha_exact, status=self.alpha_status,
                         witness=[label_str(v) for v in self.alpha_opt_witness])
        gamma["construction"] = [label_str(v) for v in self.dom_witness]
        alpha["construction"] = [label_str(v) for v in self.ind_witness]
        return {
            "signature": self.signature,
            "counts": self.counts.as_dict(),
            "vertices": self.n_vertices,
            "gamma": gamma,
            "alpha": alpha,
            "checks": {
                "gamma_sandwich": self.gamma_sandwich,
                "alpha_sandwich": self.alpha_sandwich,
                "dom_witness_ok": self.dom_witness_ok,
                "ind_witness_ok": self.ind_witness_ok,
            },
            **({"stats": self.stats} if self.stats else {}),
        }


def bounds_report(sig, compute_exact: bool = False, catalog: Catalog | None = None,
                  max_nodes=None, max_seconds=None, graph: LabeledGraph | None = None) -> BoundsReport:
    catalog = catalog or default_catalog()
    if isinstance(sig, str):
        sig = parse_signature(sig, catalog)
    lg = graph or build_graph(sig, catalog)
    c = counts(sig)
    gu, gl, au, al = gamma_upper(c), gamma_lower(c), alpha_upper(lg), alpha_lower(c)

    try:
        dom = construct_dominating_set(lg, sig, catalog)
        dom_ok = len(dom) == gu
    except WitnessError:
        dom, dom_ok = [], False
    try:
        ind = construct_independent_set(lg, sig, catalog)
        ind_ok = len(ind) == al
    except WitnessError:
        ind, ind_ok = [], False

    rep = BoundsReport(render_signature(sig), c, len(lg.graph), gl, gu, al, au, dom, ind, dom_ok, ind_ok)
    if compute_exact:
        kw = {}
        if max_nodes is not None:
            kw["max_nodes"] = max_nodes
        if max_seconds is not None:
            kw["max_seconds"] = max_seconds
        gr = gamma_exact(lg.graph, **kw)
        ar = alpha_exact(lg.graph, **kw)
        rep.gamma_exact, rep.gamma_status, rep.gamma_opt_witness = gr.value, gr.status, list(gr.witness)
        rep.alpha_exact, rep.alpha_status, rep.alpha_opt_witness = ar.value, ar.status, list(ar.witness)
        rep.stats = {
            "gamma_nodes": gr.nodes_explored,
            "alpha_nodes": ar.nodes_explored,
        }
    return rep
