"""Property-based checks of invariants across modules."""
import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from crosstiles.bounds import alpha_lower, alpha_upper, bounds_report, gamma_lower, gamma_upper
from crosstiles.exact import alpha_bruteforce, alpha_exact, gamma_bruteforce, gamma_exact
from crosstiles.graphcore import Graph, delete_edge, is_dominating, is_independent, isomorphic, relabel
from crosstiles.signature import Signature, all_tile_pairs, counts, parse_signature, render_signature
from crosstiles.tilealg import build_graph

from oracles import to_nx

PAIRS = all_tile_pairs()

tile = st.sampled_from(PAIRS)
odd_len = st.sampled_from([3, 5, 7])


@st.composite
def signatures(draw, sizes=odd_len):
    n = draw(sizes)
    return Signature(tuple(draw(tile) for _ in range(n)))


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True)) if possible else []
    return Graph(range(n), edges)


@given(signatures(), st.lists(st.sampled_from(" \t\n"), max_size=3))
def test_render_parse_roundtrip(sig, spaces):
    text = render_signature(sig)
    assert parse_signature(text) == sig
    spaced = "".join(a + b + "".join(spaces) for a, b in sig.tiles)
    assert parse_signature(spaced) == sig


@given(signatures(), signatures())
def test_counts_additive(a, b):
    joined = Signature(a.tiles + b.tiles)
    assert counts(joined) == counts(a) + counts(b)


@given(signatures(), st.integers(0, 6))
def test_rotation_invariance(sig, k):
    t = list(sig.tiles)
    k %= len(t)
    rotated = Signature(tuple(t[k:] + t[:k]))
    assert nx.is_isomorphic(to_nx(build_graph(sig).graph), to_nx(build_graph(rotated).graph))


@settings(max_examples=40)
@given(signatures())
def test_sandwich_and_witnesses(sig):
    rep = bounds_report(sig, compute_exact=True)
    assert rep.ok and not rep.budget_hit
    assert rep.dom_witness_ok and rep.ind_witness_ok
    c = counts(sig)
    assert gamma_lower(c) <= rep.gamma_exact <= gamma_upper(c)
    assert alpha_lower(c) <= rep.alpha_exact <= alpha_upper(build_graph(sig))


@given(signatures())
def test_built_graph_basic_shape(sig):
    g = build_graph(sig).graph
    assert g.is_simple
    assert g.min_degree() >= 3
    assert nx.is_connected(to_nx(g))


@given(graphs())
def test_exact_matches_brute(g):
    gr, ar = gamma_exact(g), alpha_exact(g)
    assert gr.value == gamma_bruteforce(g).value
    assert ar.value == alpha_bruteforce(g).value
    assert is_dominating(g, gr.witness)
    assert is_independent(g, ar.witness)


@given(graphs(), st.randoms(use_true_random=False))
def test_relabel_preserves_isomorphism(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    h = relabel(g, dict(zip(g.vertices, perm)))
    assert isomorphic(g, h)


@given(graphs(max_n=10), st.data())
def test_edge_deletion_monotone(g, data):
    if not g.edges():
        return
    e = data.draw(st.sampled_from(g.edges()))
    h = delete_edge(g, e)
    assert h.edge_count() == g.edge_count() - 1
    assert gamma_exact(h).value >= gamma_exact(g).value
    assert alpha_exact(h).value >= alpha_exact(g).value


@given(graphs())
def test_domination_superset_closed(g):
    # adding vertices to a dominating set keeps it dominating
    d = gamma_exact(g).witness
    assert is_dominating(g, set(d) | set(g.vertices[:2]))
