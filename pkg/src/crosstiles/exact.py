"""Exact domination and independence numbers with witnesses.

Two tiers: exhaustive oracles for tiny graphs, and bitmask branch-and-bound
solvers for the graphs this package builds (a few dozen vertices).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .graphcore import Graph, is_dominating, is_independent, vkey

BRUTE_LIMIT = 20
DEFAULT_NODES = 10**8
DEFAULT_SECONDS = 60.0

OPTIMAL = "optimal"
BUDGET = "budget_exceeded"


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: tuple
    nodes_explored: int
    elapsed: float
    status: str = OPTIMAL

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Budget(Exception):
    pass


def _index(g: Graph):
    verts = g.vertices
    pos = {v: i for i, v in enumerate(verts)}
    nb = [0] * len(verts)
    for i, v in enumerate(verts):
        m = 0
        for u in g.neighbors(v):
            m |= 1 << pos[u]
        nb[i] = m
    return verts, nb


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _guard(g):
    if len(g) > BRUTE_LIMIT:
        raise SolverError(f"brute force limited to {BRUTE_LIMIT} vertices, got {len(g)}")


def gamma_bruteforce(g: Graph) -> SolveResult:
    _guard(g)
    t0 = time.perf_counter()
    verts, nb = _index(g)
    n = len(verts)
    full = (1 << n) - 1
    closed = [nb[i] | (1 << i) for i in range(n)]
    nodes = 0
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            nodes += 1
            cov = 0
            for i in combo:
                cov |= closed[i]
            if cov == full:
                w = tuple(verts[i] for i in combo)
                return SolveResult(k, w, nodes, time.perf_counter() - t0)
    raise AssertionError("unreachable")


def alpha_bruteforce(g: Graph) -> SolveResult:
    _guard(g)
    t0 = time.perf_counter()
    verts, nb = _index(g)
    n = len(verts)
    nodes = 0
    for k in range(n, -1, -1):
        for combo in combinations(range(n), k):
            nodes += 1
            m = 0
            for i in combo:
                m |= 1 << i
            if all(not (nb[i] & m) for i in combo):
                w = tuple(verts[i] for i in combo)
                return SolveResult(k, w, nodes, time.perf_counter() - t0)
    raise AssertionError("unreachable")


class _Clock:
    def __init__(self, max_nodes, max_seconds):
        self.max_nodes = max_nodes
        self.deadline = time.perf_counter() + max_seconds if max_seconds is not None else None
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Budget
        if self.deadline is not None and not self.nodes & 1023 and time.perf_counter() > self.deadline:
            raise _Budget


def _greedy_dominating(n, closed, full):
    dom = 0
    chosen = []
    while dom != full:
        best = max(range(n), key=lambda i: (bin(closed[i] & ~dom).count("1"), -i))
        chosen.append(best)
        dom |= closed[best]
    return chosen


def gamma_exact(g: Graph, max_nodes: int | None = DEFAULT_NODES, max_seconds: float | None = DEFAULT_SECONDS,
                incumbent=None) -> SolveResult:
    """Minimum dominating set by branch and bound.

    Branches over the dominators of an undominated vertex with the fewest
    remaining options; earlier siblings are excluded in later branches.  The
    bound packs undominated vertices with pairwise disjoint option sets.
    """
    t0 = time.perf_counter()
    verts, nb = _index(g)
    n = len(verts)
    if n == 0:
        return SolveResult(0, (), 0, 0.0)
    full = (1 << n) - 1
    closed = [nb[i] | (1 << i) for i in range(n)]
    best = _greedy_dominating(n, closed, full)
    if incumbent is not None:
        pos = {v: i for i, v in enumerate(verts)}
        inc = [pos[v] for v in incumbent]
        cov = 0
        for i in inc:
            cov |= closed[i]
        if cov == full and len(inc) < len(best):
            best = inc
    best = list(best)
    clock = _Clock(max_nodes, max_seconds)
    popcount = int.bit_count if hasattr(int, "bit_count") else (lambda x: bin(x).count("1"))

    def lower_bound(undom, allowed):
        # disjoint option sets force distinct dominators
        used = 0
        count = 0
        items = sorted(_bits(undom), key=lambda u: popcount(closed[u] & allowed))
        for u in items:
            opts = closed[u] & allowed
            if not opts & used:
                used |= opts
                count += 1
        return count

    def search(dom, chosen, allowed):
        nonlocal best
        clock.tick()
        undom = full & ~dom
        if not undom:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        if len(chosen) + lower_bound(undom, allowed) >= len(best):
            return
        # pick the undominated vertex with fewest options
        pick, pick_opts, k = -1, 0, n + 1
        for u in _bits(undom):
            opts = closed[u] & allowed
            c = popcount(opts)
            if c < k:
                pick, pick_opts, k = u, opts, c
                if c <= 1:
                    break
        if k == 0:
            return
        cands = sorted(_bits(pick_opts), key=lambda w: (-popcount(closed[w] & undom), w))
        banned = 0
        for w in cands:
            chosen.append(w)
            search(dom | closed[w], chosen, allowed & ~banned & ~(1 << w))
            chosen.pop()
            banned |= 1 << w

    status = OPTIMAL
    try:
        search(0, [], full)
    except _Budget:
        status = BUDGET
    w = tuple(sorted((verts[i] for i in best), key=vkey))
    res = SolveResult(len(w), w, clock.nodes, time.perf_counter() - t0, status)
    if not is_dominating(g, w):
        raise SolverError("internal error: witness does not dominate")
    return res


def _clique_cover(sub, nb):
    """Greedy clique cover size of the vertices in mask ``sub``."""
    count = 0
    rest = sub
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique = low
        cand = nb[v] & rest
        while cand:
            lw = cand & -cand
            u = lw.bit_length() - 1
            clique |= lw
            cand &= nb[u]
        rest &= ~clique
        count += 1
    return count


def alpha_exact(g: Graph, max_nodes: int | None = DEFAULT_NODES, max_seconds: float | None = DEFAULT_SECONDS,
                incumbent=None) -> SolveResult:
    """Maximum independent set by branch and bound.

    Degree-0/1 vertices are taken greedily; graphs of maximum degree 2 (paths
    and cycles) are solved directly; otherwise branch on a vertex of maximum
    degree (include / exclude) with a greedy clique-cover bound.
    """
    t0 = time.perf_counter()
    verts, nb = _index(g)
    n = len(verts)
    clock = _Clock(max_nodes, max_seconds)
    popcount = int.bit_count if hasattr(int, "bit_count") else (lambda x: bin(x).count("1"))

    best = []
    if incumbent is not None:
        pos = {v: i for i, v in enumerate(verts)}
        cand = [pos[v] for v in incumbent]
        m = 0
        for i in cand:
            m |= 1 << i
        if all(not (nb[i] & m) for i in cand):
            best = cand

    def path_cycle(sub):
        # components of max degree <= 2
        out = []
        rest = sub
        while rest:
            low = rest & -rest
            s = low.bit_length() - 1
            ends = [u for u in _bits(rest) if popcount(nb[u] & rest) <= 1]
            # walk each component from an end if it has one
            comp = 0
            stack = [s]
            while stack:
                x = stack.pop()
                if comp >> x & 1:
                    continue
                comp |= 1 << x
                stack.extend(_bits(nb[x] & rest & ~comp))
            comp_ends = [u for u in ends if comp >> u & 1]
            start = comp_ends[0] if comp_ends else s
            order = [start]
            seen = 1 << start
            while True:
                nxt = nb[order[-1]] & comp & ~seen
                if not nxt:
                    break
                u = (nxt & -nxt).bit_length() - 1
                order.append(u)
                seen |= 1 << u
            # take every other vertex; on a cycle drop the last if it closes
            take = order[0::2]
            if not comp_ends and len(order) > 1 and len(order) % 2 == 1:
                take = take[:-1]
            out.extend(take)
            rest &= ~comp
        return out

    def search(sub, chosen):
        nonlocal best
        clock.tick()
        forced = []
        while True:
            progress = False
            for v in _bits(sub):
                if popcount(nb[v] & sub) <= 1:
                    forced.append(v)
                    sub &= ~(nb[v] | (1 << v))
                    progress = True
                    break
            if not progress:
                break
        chosen = chosen + forced
        if not sub:
            if len(chosen) > len(best):
                best = chosen
            return
        maxdeg, pick = -1, -1
        for v in _bits(sub):
            d = popcount(nb[v] & sub)
            if d > maxdeg:
                maxdeg, pick = d, v
        if maxdeg <= 2:
            full = chosen + path_cycle(sub)
            if len(full) > len(best):
                best = full
            return
        if len(chosen) + _clique_cover(sub, nb) <= len(best):
            return
        search(sub & ~(nb[pick] | (1 << pick)), chosen + [pick])
        search(sub & ~(1 << pick), chosen)

    status = OPTIMAL
    try:
        search((1 << n) - 1, [])
    except _Budget:
        status = BUDGET
    w = tuple(sorted((verts[i] for i in best), key=vkey))
    if not is_independent(g, w):
        raise SolverError("internal error: witness is not independent")
    return SolveResult(len(w), w, clock.nodes, time.perf_counter() - t0, status)
