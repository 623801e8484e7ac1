import pytest

from pivotgraph.embed import induced_embedding
from pivotgraph.errors import BudgetExhausted
from pivotgraph.graphs import Graph


def test_embedding_examples():
    assert induced_embedding(Graph.path(3), Graph.cycle(5)) is not None
    assert induced_embedding(Graph.complete(3), Graph.cycle(5)) is None  # triangle-free host
    assert induced_embedding(Graph.cycle(4), Graph.complete(4)) is None  # chords everywhere


def test_embedding_is_induced_and_lex_least():
    host = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    pat = Graph.path(3)
    phi = induced_embedding(pat, host)
    assert phi is not None
    for u in range(pat.n):
        for v in range(u + 1, pat.n):
            assert pat.has_edge(u, v) == host.has_edge(phi[u], phi[v])
    again = induced_embedding(pat, host)
    assert phi == again


def test_embedding_budget():
    with pytest.raises(BudgetExhausted):
        induced_embedding(Graph.complete(4), Graph.cycle(9), budget=5)


def test_embedding_degenerate():
    assert induced_embedding(Graph.empty(0), Graph.cycle(4)) == ()
    assert induced_embedding(Graph.path(4), Graph.path(3)) is None
