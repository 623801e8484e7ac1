from fractions import Fraction

import pytest

from pivotgraph.errors import NoProgress, PreconditionViolated
from pivotgraph.graphs import Graph
from pivotgraph.mass import MassedGraph
from pivotgraph.searches import assemble_pfos, find_fuzzy_odd_path
from pivotgraph.structures import Ladder, Tick
from pivotgraph.subdivide import is_fuzzy_odd_path, is_pfos

EPS = Fraction(1, 10000)


def fs(*xs):
    return frozenset(xs)


def check_output(g, fp, u, v, r, region):
    """Re-validate a returned path with the independent recognizer."""
    order = sorted(fp.vertices)
    verdict = is_fuzzy_odd_path(g.induced(order), order.index(fp.path[0]),
                                order.index(fp.path[-1]))
    assert verdict.ok
    assert fp.path[0] == u and fp.path[-1] == v
    assert fp.length <= 2 * r + 3
    assert fp.vertices <= set(region)
    assert (verdict.fuzz is None) == (fp.fuzz is None)


# -- find_fuzzy_odd_path ----------------------------------------------------


def test_whole_path_spec_example():
    g = Graph.path(4)
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0], [0, 1], 3, [3], [2, 3],
                             1, Fraction(1))
    assert fp.path == (0, 1, 2, 3) and fp.fuzz is None
    check_output(g, fp, 0, 3, 1, [0, 1, 2, 3])


def test_base_case_adjacent_endpoints():
    g = Graph.complete(2)
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0], [0], 1, [1], [1],
                             1, Fraction(1))
    assert fp.path == (0, 1) and fp.length == 1


def test_preconditions():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    with pytest.raises(PreconditionViolated):
        find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1], [0, 1], 3, [3], [3],
                            1, Fraction(1))
    p5 = Graph.path(5)
    with pytest.raises(PreconditionViolated):  # u not an r-centre of its set
        find_fuzzy_odd_path(MassedGraph.uniform(p5), 0, [0, 1, 2], [0, 1, 2], 4, [4], [4],
                            1, Fraction(1))
    with pytest.raises(PreconditionViolated):  # u = v
        find_fuzzy_odd_path(MassedGraph.uniform(p5), 0, [0], [0], 0, [0], [0],
                            1, Fraction(1))


def test_branch_one_plain():
    # two first-side stems, two frontier vertices bridged by an edge,
    # two second-side stems: the odd candidate avoids the chord
    g = Graph.from_edges(8, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (4, 5), (3, 6),
                             (7, 5), (7, 6)])
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1, 2], [0, 1, 2, 3, 4],
                             7, [7, 5, 6], [7, 5, 6, 3, 4], 1, EPS)
    assert fp.branch == "one" and fp.fuzz is None
    assert fp.path == (0, 1, 3, 4, 5, 7)
    check_output(g, fp, 0, 7, 1, range(8))


def test_branch_one_triangle_fuzz():
    # one stem adjacent to both frontier vertices: the even candidate is
    # rejected and the chord closes a triangle on the odd one
    g = Graph.from_edges(7, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (2, 5),
                             (6, 4), (6, 5)])
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1], [0, 1, 2, 3],
                             6, [6, 4, 5], [6, 4, 5, 2, 3], 1, EPS)
    assert fp.branch == "one" and fp.fuzz == (1, 3)
    assert fp.path == (0, 1, 2, 3, 4, 6)
    check_output(g, fp, 0, 6, 1, range(7))


def test_branch_two_plain():
    # frontier slab is anticomplete to the second anchor set; the bridge
    # runs through the second side's own frontier vertex
    g = Graph.from_edges(7, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)])
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1], [0, 1, 2, 3],
                             6, [6, 5], [6, 5, 4], 1, EPS)
    assert fp.branch == "two" and fp.fuzz is None
    assert fp.path == (0, 1, 3, 4, 5, 6)
    check_output(g, fp, 0, 6, 1, range(7))


def test_branch_two_triangle_fuzz():
    g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6),
                             (6, 7)])
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1, 2], [0, 1, 2, 3, 4],
                             7, [7, 6], [7, 6, 5], 2, EPS)
    assert fp.branch == "two" and fp.fuzz == (2, 4)
    assert fp.path == (0, 1, 2, 3, 4, 5, 6, 7)
    check_output(g, fp, 0, 7, 2, range(8))


def test_deep_layers_qualified_thresholds():
    # r = 2 with a two-layer first side; the slab masses clear the real
    # thresholds at this eps, and the bridge needs the fuzz chord
    g = Graph.from_edges(10, [(0, 1), (1, 2), (0, 3), (3, 4), (2, 5), (4, 5),
                              (2, 6), (6, 5), (5, 7), (7, 8), (8, 9)])
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1, 2, 3, 4],
                             [0, 1, 2, 3, 4, 5, 6], 9, [9, 8], [9, 8, 7], 2, EPS)
    assert fp.branch == "two" and fp.fuzz == (2, 5)
    assert fp.path == (0, 1, 2, 6, 5, 7, 8, 9)
    check_output(g, fp, 0, 9, 2, range(10))


def test_no_progress_is_named():
    # second side unreachable: the first-side frontier is empty
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(NoProgress) as e:
        find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1], [0, 1], 3, [3], [2, 3],
                            1, EPS)
    assert e.value.step == "first-side-frontier"


def test_swap_keeps_endpoint_order():
    # second anchor set lighter than the first with eps between them:
    # the sides are exchanged internally, the output is not
    g = Graph.path(6)
    fp = find_fuzzy_odd_path(MassedGraph.uniform(g), 0, [0, 1, 2], [0, 1, 2, 3],
                             5, [4, 5], [3, 4, 5], 2, Fraction(5, 12))
    assert fp.path == (0, 1, 2, 3, 4, 5)
    check_output(g, fp, 0, 5, 2, range(6))


# -- assemble_pfos -----------------------------------------------------------


def k2_fixture():
    """Two x-q-a-b-c chains whose C-vertices are joined by one edge."""
    def chain(base):
        return [(base, base + 1), (base + 1, base + 2), (base + 2, base + 3),
                (base + 3, base + 4)]
    g = Graph.from_edges(10, chain(0) + chain(5) + [(4, 9)])
    lad = Ladder((fs(2), fs(7)), (fs(3), fs(8)), (fs(4), fs(9)))
    ticks = [Tick((0,), ((1, 0),)), Tick((1,), ((6, 5),))]
    return g, lad, ticks


def k3_fixture():
    """Three ticks with two legs each; paired C-sets joined by one edge."""
    edges = []
    rung_of_tick = {0: (0, 1), 1: (2, 3), 2: (4, 5)}
    q = {}
    for j, rungs in rung_of_tick.items():
        for i in rungs:
            qi, ai, bi, ci = 3 + 4 * i, 4 + 4 * i, 5 + 4 * i, 6 + 4 * i
            q[i] = qi
            edges += [(j, qi), (qi, ai), (ai, bi), (bi, ci)]
    edges += [(6, 14), (10, 22), (18, 26)]  # c0-c2, c1-c4, c3-c5
    g = Graph.from_edges(27, edges)
    lad = Ladder(tuple(fs(4 + 4 * i) for i in range(6)),
                 tuple(fs(5 + 4 * i) for i in range(6)),
                 tuple(fs(6 + 4 * i) for i in range(6)))
    ticks = [Tick(rung_of_tick[j], tuple((q[i], j) for i in rung_of_tick[j]))
             for j in range(3)]
    return g, lad, ticks


def test_assemble_k2():
    g, lad, ticks = k2_fixture()
    asm = assemble_pfos(g, MassedGraph.uniform(g), lad, ticks, EPS)
    assert asm.branch == (0, 5)
    order = sorted(asm.vertices)
    bm = tuple(order.index(x) for x in asm.branch)
    assert is_pfos(g.induced(order), Graph.complete(2), bm).ok
    (_, path), = asm.paths
    assert len(path) - 1 == 9  # two even legs plus the crossing edge


def test_assemble_k3():
    g, lad, ticks = k3_fixture()
    asm = assemble_pfos(g, MassedGraph.uniform(g), lad, ticks, EPS)
    assert asm.branch == (0, 1, 2)
    order = sorted(asm.vertices)
    bm = tuple(order.index(x) for x in asm.branch)
    assert is_pfos(g.induced(order), Graph.complete(3), bm).ok
    assert len(asm.paths) == 3
    assert {key for key, _ in asm.paths} == {(0, 1), (0, 2), (1, 2)}


def test_assemble_edgeless_c_mutant():
    g, lad, ticks = k2_fixture()
    stripped = Graph.from_edges(10, [e for e in g.edges() if e != (4, 9)])
    with pytest.raises(NoProgress) as e:
        assemble_pfos(stripped, MassedGraph.uniform(stripped), lad, ticks, EPS)
    assert e.value.step.startswith("pair-1")


def test_assemble_rejects_bad_ladder():
    g, lad, ticks = k2_fixture()
    bad = Ladder((fs(2), fs(7)), (fs(3), fs(8)), (fs(4), fs(4)))
    with pytest.raises(PreconditionViolated):
        assemble_pfos(g, MassedGraph.uniform(g), bad, ticks, EPS)


def test_assemble_rejects_mixed_parity():
    # lengthen one leg so its canonical paths flip parity
    def chain(base):
        return [(base, base + 1), (base + 1, base + 2), (base + 2, base + 3),
                (base + 3, base + 4)]
    # tick 1 reaches its centre through an extra path vertex m=10
    edges = chain(0) + [(6, 7), (7, 8), (8, 9), (5, 10), (10, 6), (4, 9)]
    g = Graph.from_edges(11, edges)
    lad = Ladder((fs(2), fs(7)), (fs(3), fs(8)), (fs(4), fs(9)))
    ticks = [Tick((0,), ((1, 0),)), Tick((1,), ((6, 10, 5),))]
    with pytest.raises(PreconditionViolated) as e:
        assemble_pfos(g, MassedGraph.uniform(g), lad, ticks, EPS)
    assert "parity" in str(e.value)
