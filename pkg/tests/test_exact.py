import random

import pytest

from crosstiles.exact import (
    BUDGET, BRUTE_LIMIT, SolverError, alpha_bruteforce, alpha_exact, gamma_bruteforce, gamma_exact,
)
from crosstiles.graphcore import Graph, is_dominating, is_independent
from crosstiles.signature import parse_signature, random_signature
from crosstiles.tilealg import build_graph

from oracles import alpha_milp, gamma_milp


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(range(10), outer + inner + spokes)


@pytest.mark.parametrize("g, gamma, alpha", [
    (cycle(5), 2, 2),
    (cycle(6), 2, 3),
    (cycle(9), 3, 4),
    (petersen(), 3, 4),
    (Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), 1, 1),
    (Graph([0, 1, 2], []), 3, 3),
    (Graph(), 0, 0),
])
def test_known_values(g, gamma, alpha):
    for solve in (gamma_exact, gamma_bruteforce):
        assert solve(g).value == gamma
    for solve in (alpha_exact, alpha_bruteforce):
        assert solve(g).value == alpha


def test_brute_force_guard():
    with pytest.raises(SolverError):
        gamma_bruteforce(cycle(BRUTE_LIMIT + 1))


def test_brute_force_witness_is_lexicographically_least():
    assert gamma_bruteforce(cycle(6)).witness == (0, 3)
    assert alpha_bruteforce(cycle(6)).witness == (0, 2, 4)


def random_graph(rng, n, p):
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@pytest.mark.parametrize("seed", range(40))
def test_against_brute_force(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 14), rng.choice([0.15, 0.3, 0.5]))
    assert gamma_exact(g).value == gamma_bruteforce(g).value
    assert alpha_exact(g).value == alpha_bruteforce(g).value


@pytest.mark.parametrize("seed", range(8))
def test_against_milp_on_built_graphs(seed):
    g = build_graph(random_signature(5 + 2 * (seed % 2), seed=100 + seed)).graph
    gr, ar = gamma_exact(g), alpha_exact(g)
    assert gr.value == gamma_milp(g)
    assert ar.value == alpha_milp(g)
    assert is_dominating(g, gr.witness) and len(gr.witness) == gr.value
    assert is_independent(g, ar.witness) and len(ar.witness) == ar.value


def test_budget_returns_incumbent():
    g = build_graph(parse_signature("VBdLVBdLVBdLVBdLVBdL")).graph
    r = gamma_exact(g, max_nodes=1)
    assert r.status == BUDGET and not r.optimal
    assert is_dominating(g, r.witness)
    r = alpha_exact(g, max_nodes=1)
    assert r.status == BUDGET
    assert is_independent(g, r.witness)


def test_incumbent_is_used():
    g = petersen()
    r = gamma_exact(g, max_nodes=1, incumbent=[0, 7, 8])
    assert r.value == 3
    r = alpha_exact(g, max_nodes=1, incumbent=[0, 2, 8, 9])
    assert r.value == 4


def test_deterministic():
    g = build_graph(random_signature(7, seed=9)).graph
    a, b = gamma_exact(g), gamma_exact(g)
    assert (a.witness, a.nodes_explored) == (b.witness, b.nodes_explored)
