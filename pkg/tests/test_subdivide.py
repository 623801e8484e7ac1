from random import Random

import pytest

from pivotgraph.canon import is_isomorphic
from pivotgraph.errors import BudgetExhausted, InvalidPlan, Oversize
from pivotgraph.graphs import Graph
from pivotgraph.subdivide import (EdgePlan, Fuzz, SubdivisionPlan, build_pfos,
                                  contains_induced_pfos, fillet, is_fuzzy_odd_path,
                                  is_linear_forest, is_pfos, path_replacement,
                                  plan_from_json, plan_to_json, uniform_subdivision)


def plan_for(base, entries):
    return SubdivisionPlan(base, tuple(entries))


# -- builders -------------------------------------------------------------


def test_uniform_subdivision_examples():
    # branch vertices keep the low indices: 0-2-1 is the subdivided edge
    assert is_isomorphic(uniform_subdivision(Graph.complete(2), 1), Graph.path(3))
    assert is_isomorphic(uniform_subdivision(Graph.complete(3), 2), Graph.cycle(9))
    g = Graph.from_edges(5, [(0, 3), (1, 4)])
    assert uniform_subdivision(g, 0) == g


def test_uniform_subdivision_counts():
    g = Graph.complete(4)
    s = uniform_subdivision(g, 3)
    assert s.n == 4 + 3 * 6
    assert s.edge_count() == 4 * 6


def test_path_replacement_examples():
    k3 = Graph.complete(3)
    same = path_replacement(k3, plan_for(k3, [EdgePlan(u, v, 1) for u, v in k3.edges()]))
    assert same == k3
    host = path_replacement(k3, plan_for(k3, [EdgePlan(u, v, 4) for u, v in k3.edges()]))
    assert host.n == 3 + 3 * 3 and is_isomorphic(host, Graph.cycle(12))
    mixed = path_replacement(k3, plan_for(k3, [EdgePlan(0, 1, 1), EdgePlan(0, 2, 2),
                                               EdgePlan(1, 2, 3)]))
    assert mixed.n == 6 and is_isomorphic(mixed, Graph.cycle(6))


def test_plan_validation():
    k3 = Graph.complete(3)
    with pytest.raises(InvalidPlan):
        path_replacement(k3, plan_for(k3, [EdgePlan(0, 1, 1)]))  # missing edges
    with pytest.raises(InvalidPlan):
        path_replacement(k3, plan_for(k3, [EdgePlan(0, 1, 0), EdgePlan(0, 2, 1),
                                           EdgePlan(1, 2, 1)]))
    with pytest.raises(InvalidPlan):
        path_replacement(k3, plan_for(Graph.complete(2), [EdgePlan(0, 1, 2)]))


def test_plan_json_roundtrip():
    k3 = Graph.complete(3)
    plan = plan_for(k3, [EdgePlan(0, 1, 5, Fuzz(1, "v")), EdgePlan(0, 2, 3), EdgePlan(1, 2, 3)])
    assert plan_from_json(plan_to_json(plan)) == plan


def test_fillet_triangle_gives_c5():
    tri = Graph.complete(3)
    out = fillet(tri, {(0, 1)}, {(1, 2): 1, (0, 2): 1})
    assert is_isomorphic(out, Graph.cycle(5))


def test_fillet_keep_all_and_errors():
    tri = Graph.complete(3)
    assert fillet(tri, {(u, v) for u, v in tri.edges()}, {}) == tri
    with pytest.raises(InvalidPlan):
        fillet(tri, set(), {(0, 1): 0, (0, 2): 1, (1, 2): 1})  # "at least once"
    with pytest.raises(InvalidPlan):
        fillet(tri, {(0, 1)}, {(0, 1): 2, (0, 2): 1, (1, 2): 1})  # kept but counted


def test_fillet_vertex_count():
    rng = Random(3)
    g = Graph.complete(4)
    counts = {(u, v): rng.randrange(1, 4) for u, v in g.edges() if (u, v) != (0, 1)}
    out = fillet(g, {(0, 1)}, counts)
    assert out.n == g.n + sum(counts.values())


def test_is_linear_forest():
    g = Graph.complete(4)
    assert is_linear_forest(g, {(0, 1), (2, 3)})
    assert is_linear_forest(g, {(0, 1), (1, 2)})
    assert not is_linear_forest(g, {(0, 1), (1, 2), (0, 2)})  # cycle
    assert not is_linear_forest(g, {(0, 1), (0, 2), (0, 3)})  # claw
    assert not is_linear_forest(Graph.empty(3), {(0, 1)})     # non-edge


# -- fuzzy odd paths ------------------------------------------------------


def test_fuzzy_odd_path_examples():
    assert is_fuzzy_odd_path(Graph.complete(2), 0, 1).ok           # length 1
    assert not is_fuzzy_odd_path(Graph.path(3), 0, 2).ok           # even
    assert is_fuzzy_odd_path(Graph.path(6), 0, 5).ok               # length 5
    fuzzed = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3)])
    verdict = is_fuzzy_odd_path(fuzzed, 0, 5)
    assert verdict.ok and verdict.fuzz == (1, 3) and verdict.length == 5


def test_fuzzy_odd_path_rejections():
    # chord touching an endpoint
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    assert not is_fuzzy_odd_path(g, 0, 3).ok
    # two chords
    g2 = Graph.from_edges(8, [(i, i + 1) for i in range(7)] + [(1, 3), (4, 6)])
    assert not is_fuzzy_odd_path(g2, 0, 7).ok
    # chord between distant internals (no triangle)
    g3 = Graph.from_edges(8, [(i, i + 1) for i in range(7)] + [(1, 4)])
    assert not is_fuzzy_odd_path(g3, 0, 7).ok
    # wrong endpoints
    assert not is_fuzzy_odd_path(Graph.path(4), 0, 2).ok
    assert not is_fuzzy_odd_path(Graph.path(4), 1, 1).ok
    # disconnected
    g4 = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_fuzzy_odd_path(g4, 0, 3).ok


def random_valid_plan(rng: Random, max_base_n: int = 5) -> SubdivisionPlan:
    n = rng.randrange(2, max_base_n + 1)
    base = Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6])
    entries = []
    for u, v in base.edges():
        length = rng.choice([3, 5])
        fuzz = None
        if length == 5 and rng.random() < 0.5:
            fuzz = Fuzz(rng.choice([1, 2]), rng.choice(["u", "v"]))
        entries.append(EdgePlan(u, v, length, fuzz))
    return SubdivisionPlan(base, tuple(entries))


def test_pfos_roundtrip_examples():
    k2 = Graph.complete(2)
    p4 = build_pfos(plan_for(k2, [EdgePlan(0, 1, 3)]))
    assert is_isomorphic(p4, Graph.path(4))
    assert is_pfos(p4, k2, (0, 1)).ok
    k3 = Graph.complete(3)
    nine = build_pfos(plan_for(k3, [EdgePlan(u, v, 3) for u, v in k3.edges()]))
    assert nine.n == 9
    assert is_pfos(nine, k3, (0, 1, 2)).ok
    with pytest.raises(InvalidPlan):
        build_pfos(plan_for(k2, [EdgePlan(0, 1, 2)]))  # even length


def test_pfos_roundtrip_randomized():
    rng = Random(123)
    for _ in range(200):
        plan = random_valid_plan(rng)
        g = build_pfos(plan)
        assert is_pfos(g, plan.base, tuple(range(plan.base.n))).ok


def test_pfos_rejects_mutants():
    k2 = Graph.complete(2)
    # direct edge between branch vertices alongside the path
    g = Graph.from_edges(4, [(0, 1), (0, 2), (2, 3), (3, 1)])
    assert not is_pfos(g, k2, (0, 1)).ok
    # stray edge between two replacement paths
    k3 = Graph.complete(3)
    base_plan = plan_for(k3, [EdgePlan(u, v, 3) for u, v in k3.edges()])
    good = build_pfos(base_plan)
    rows = [list() for _ in range(good.n)]
    bad = Graph.from_edges(good.n, good.edges() + [(3, 5)])
    assert not is_pfos(bad, k3, (0, 1, 2)).ok
    # missing replacement path
    sparse = Graph.from_edges(5, [(0, 2), (2, 3), (3, 1)])
    assert not is_pfos(sparse, k3, (0, 1, 4)).ok


def test_contains_induced_pfos_examples():
    k2 = Graph.complete(2)
    k3 = Graph.complete(3)
    host = build_pfos(plan_for(k3, [EdgePlan(u, v, 3) for u, v in k3.edges()]))
    emb = contains_induced_pfos(host, k3)
    assert emb is not None
    assert is_pfos(host.induced(sorted(emb.vertices)), k3,
                   tuple(sorted(emb.vertices).index(w) for w in emb.branch)).ok
    # any induced 3-path of the 6-cycle realizes the single-edge base
    assert contains_induced_pfos(Graph.cycle(6), k2) is not None
    # properness needs nine vertices for a triangle base
    assert contains_induced_pfos(Graph.complete(3), k3) is None


def test_contains_induced_pfos_budget_and_tier():
    with pytest.raises(BudgetExhausted):
        contains_induced_pfos(Graph.cycle(10), Graph.complete(2), budget=3)
    with pytest.raises(Oversize):
        contains_induced_pfos(Graph.empty(20), Graph.complete(2))


def test_contains_induced_pfos_finds_fuzzy_copies():
    k2 = Graph.complete(2)
    fuzzed = build_pfos(plan_for(k2, [EdgePlan(0, 1, 5, Fuzz(1, "u"))]))
    emb = contains_induced_pfos(fuzzed, k2)
    assert emb is not None and emb.vertices == frozenset(range(6))
