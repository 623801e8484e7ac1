from fractions import Fraction
from random import Random

import pytest

from pivotgraph.errors import Oversize
from pivotgraph.graphs import Graph
from pivotgraph.mass import (MassedGraph, MassKind, chromatic_number,
                             massed_graph_from_json, massed_graph_to_json)

from helpers import random_graph


def random_weights(rng: Random, n: int) -> list[Fraction]:
    raw = [Fraction(rng.randrange(0, 8)) for _ in range(n)]
    total = sum(raw)
    if total == 0:
        raw[0] = Fraction(1)
        total = Fraction(1)
    return [w / total for w in raw]


def all_kinds(rng: Random, g: Graph) -> list[MassedGraph]:
    kinds = [MassedGraph.uniform(g), MassedGraph.weighted(g, random_weights(rng, g.n))]
    if g.n <= 10:
        kinds.append(MassedGraph.chromatic(g))
    return kinds


def test_chromatic_numbers():
    assert chromatic_number(Graph.empty(0)) == 0
    assert chromatic_number(Graph.empty(5)) == 1
    assert chromatic_number(Graph.path(6)) == 2
    assert chromatic_number(Graph.cycle(5)) == 3
    assert chromatic_number(Graph.complete(6)) == 6
    petersen = Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                     (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                                     (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)])
    assert chromatic_number(petersen) == 3
    with pytest.raises(Oversize):
        chromatic_number(Graph.empty(17))


def test_mass_examples():
    c5 = Graph.cycle(5)
    mg = MassedGraph.uniform(c5)
    assert mg.mass(range(5)) == 1
    assert mg.mass([0, 2]) == Fraction(2, 5)
    mk4 = MassedGraph.chromatic(Graph.complete(4))
    assert mk4.mass([0, 1]) == Fraction(1, 2)  # chi(K2)/chi(K4)
    assert mk4.mass([]) == 0 and mk4.mass(range(4)) == 1


def test_mass_axioms_randomized():
    rng = Random(2)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(1, 9))
        for mg in all_kinds(rng, g):
            full = g.full_mask
            assert mg.mass_mask(0) == 0
            assert mg.mass_mask(full) == 1
            for _ in range(12):
                x = rng.randrange(full + 1)
                y = rng.randrange(full + 1)
                mx, my = mg.mass_mask(x), mg.mass_mask(y)
                assert mg.mass_mask(x | y) <= mx + my          # subadditive
                assert mg.mass_mask(x & y) <= min(mx, my)      # monotone (via subset)
                assert mg.mass_mask(x) <= mg.mass_mask(x | y)  # monotone


def test_weight_validation():
    g = Graph.path(3)
    with pytest.raises(ValueError):
        MassedGraph.weighted(g, [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(ValueError):
        MassedGraph.weighted(g, [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(ValueError):
        MassedGraph.weighted(g, [Fraction(3, 2), Fraction(-1, 2), Fraction(0)])
    with pytest.raises(ValueError):
        MassedGraph.uniform(Graph.empty(0))


def test_integer_weights():
    g = Graph.path(4)
    nums, denom = MassedGraph.uniform(g).integer_weights()
    assert nums == (1, 1, 1, 1) and denom == 4
    mg = MassedGraph.weighted(g, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6), Fraction(0)])
    nums, denom = mg.integer_weights()
    assert denom == 6 and nums == (3, 2, 1, 0)
    assert MassedGraph.chromatic(Graph.path(3)).integer_weights() is None


def test_json_roundtrip():
    rng = Random(9)
    g = random_graph(rng, 6)
    for mg in all_kinds(rng, g):
        back = massed_graph_from_json(massed_graph_to_json(mg))
        assert back.g == mg.g and back.kind == mg.kind and back.weights == mg.weights
