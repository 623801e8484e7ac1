"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's fast paths: brute
force permutations for isomorphism, full disjoint-pair enumeration for
the anticomplete maximizer, direct quantifier evaluation for
focusedness, and a from-scratch graph6 bit reader.  Tests compare the
library against these, never against itself.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from random import Random

from pivotgraph.graphs import Graph, bits_of
from pivotgraph.mass import MassedGraph
from pivotgraph.pivots import pivot


def random_graph(rng: Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_bipartite(rng: Random, n: int, p: float = 0.5) -> Graph:
    side = [rng.randrange(2) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if side[u] != side[v] and rng.random() < p]
    return Graph.from_edges(n, edges)


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    """All-permutations isomorphism, independent of canonical forms."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    for perm in permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) == g.has_edge(u, v)
               for u in range(g.n) for v in range(u + 1, g.n)):
            return True
    return False


def subset_neighborhoods(g: Graph) -> list[int]:
    """nbh[mask] = union of open neighborhoods over the mask."""
    nbh = [0] * (1 << g.n)
    for m in range(1, 1 << g.n):
        low = m & -m
        nbh[m] = nbh[m ^ low] | g.rows[low.bit_length() - 1]
    return nbh


def naive_max_anticomplete(mg: MassedGraph) -> Fraction:
    """Enumerate every disjoint nonempty pair (A, B) directly."""
    g = mg.g
    full = g.full_mask
    nbh = subset_neighborhoods(g)
    best = Fraction(-1)
    for a in range(1, full + 1):
        rest = full & ~a
        sub = rest
        while sub:
            if nbh[a] & sub == 0:
                val = min(mg.mass_mask(a), mg.mass_mask(sub))
                if val > best:
                    best = val
            sub = (sub - 1) & rest
    return best if best >= 0 else Fraction(0)


def naive_focused(mg: MassedGraph, delta: Fraction, r: int) -> bool:
    """Direct evaluation of the focusedness quantifier over all subsets."""
    g = mg.g
    for z in range(1, 1 << g.n):
        if mg.mass_mask(z) < delta:
            continue
        half = mg.mass_mask(z) / 2
        ok = False
        for v in bits_of(z):
            ball = 1 << v
            for _ in range(r):
                grown = ball
                for w in bits_of(ball):
                    grown |= g.rows[w]
                ball = grown & z
            if mg.mass_mask(ball) >= half:
                ok = True
                break
        if not ok:
            return False
    return True


def naive_pivot_minor(host: Graph, pattern: Graph) -> bool:
    """Raw-definition recursion: close under pivots with a concrete
    visited set (no canonical forms), branch on deletions, test leaves
    with the brute-force permutation oracle."""
    if pattern.n > host.n:
        return False
    seen_rows: set[tuple[int, ...]] = set()
    stack = [host]
    closure = []
    while stack:
        g = stack.pop()
        if g.rows in seen_rows:
            continue
        seen_rows.add(g.rows)
        closure.append(g)
        for u, v in g.edges():
            stack.append(pivot(g, u, v))
    if host.n == pattern.n:
        return any(brute_isomorphic(g, pattern) for g in closure)
    tried: set[tuple[int, ...]] = set()
    for g in closure:
        for v in range(g.n):
            child = g.delete_vertex(v)
            if child.rows in tried:
                continue
            tried.add(child.rows)
            if naive_pivot_minor(child, pattern):
                return True
    return False


def reference_graph6_decode(line: str) -> tuple[int, set[tuple[int, int]]]:
    """Independent graph6 reader: returns (n, edge set)."""
    data = [ord(c) - 63 for c in line.strip()]
    assert all(0 <= d <= 63 for d in data), "bad graph6 byte"
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) > 1 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        body = data[8:]
    bitstring = "".join(format(d, "06b") for d in body)
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstring[k] == "1":
                edges.add((i, j))
            k += 1
    return n, edges


def graph_from_edge_set(n: int, edges: set[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, sorted(edges))
