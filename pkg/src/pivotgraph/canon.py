"""Canonical labeling for small graphs.

Degree/neighborhood refinement followed by backtracking
individualization over the first non-singleton cell.  Twin vertices
(same closed or open neighborhood off each other) are interchangeable
by an automorphism, so only one per twin class is branched on; that
keeps complete graphs, independent sets, and other homogeneous cells
from exploding.  Exact up to the configured tier.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Oversize
from .graphs import Graph, bits_of

DEFAULT_CANONICAL_MAX_N = 12


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    bits: int
    # perm[v] = canonical position of source vertex v; not part of identity
    perm: tuple[int, ...] = field(compare=False, hash=False)


def _edge_bits(rows: tuple[int, ...], n: int) -> int:
    # column-major upper triangle, first pair in the highest bit
    out = 0
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            out = (out << 1) | ((rj >> i) & 1)
    return out


def _relabel_rows(g: Graph, perm: tuple[int, ...]) -> tuple[int, ...]:
    rows = [0] * g.n
    for v in range(g.n):
        r = 0
        for u in bits_of(g.rows[v]):
            r |= 1 << perm[u]
        rows[perm[v]] = r
    return tuple(rows)


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((g.rows[v] & m).bit_count() for m in masks) for v in cell}
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                new_cells.append(groups[key])
        cells = new_cells
    return cells


def _twin_representatives(g: Graph, cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        dup = False
        for u in reps:
            if (g.rows[v] & ~(1 << u)) == (g.rows[u] & ~(1 << v)):
                dup = True
                break
        if not dup:
            reps.append(v)
    return reps


def canonical_form(g: Graph, max_n: int = DEFAULT_CANONICAL_MAX_N) -> CanonicalForm:
    """Deterministic canonical form; equal forms iff isomorphic."""
    if g.n > max_n:
        raise Oversize(f"canonical tier is n <= {max_n}, got {g.n}")
    n = g.n
    if n == 0:
        return CanonicalForm(0, 0, ())
    best: list[tuple[int, tuple[int, ...]] | None] = [None]

    def descend(cells: list[list[int]]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            perm = [0] * n
            for pos, cell in enumerate(cells):
                perm[cell[0]] = pos
            perm_t = tuple(perm)
            bits = _edge_bits(_relabel_rows(g, perm_t), n)
            if best[0] is None or bits < best[0][0]:
                best[0] = (bits, perm_t)
            return
        cell = cells[target]
        for v in _twin_representatives(g, cell):
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            descend(_refine(g, child))

    descend(_refine(g, [list(range(n))]))
    assert best[0] is not None
    bits, perm = best[0]
    return CanonicalForm(n, bits, perm)


def is_isomorphic(g: Graph, h: Graph,
                  max_n: int = DEFAULT_CANONICAL_MAX_N) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g, max_n) == canonical_form(h, max_n)


def isomorphism(g: Graph, h: Graph,
                max_n: int = DEFAULT_CANONICAL_MAX_N) -> tuple[int, ...] | None:
    """A vertex map g -> h witnessing isomorphism, or None."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    cg = canonical_form(g, max_n)
    ch = canonical_form(h, max_n)
    if cg != ch:
        return None
    inv_h = [0] * h.n
    for v, pos in enumerate(ch.perm):
        inv_h[pos] = v
    return tuple(inv_h[cg.perm[v]] for v in range(g.n))


def enumerate_graphs(n: int, max_n: int = DEFAULT_CANONICAL_MAX_N) -> list[Graph]:
    """All graphs on exactly n vertices up to isomorphism.

    Built by extending each (n-1)-vertex representative with every
    possible neighborhood of a new vertex and deduplicating on
    canonical forms.  Output is sorted by (edge count, canonical bits).
    """
    if n > max_n:
        raise Oversize(f"enumeration tier is n <= {max_n}")
    if n == 0:
        return [Graph.empty(0)]
    reps = [Graph.empty(1)]
    for k in range(2, n + 1):
        seen: dict[tuple[int, int], Graph] = {}
        for g in reps:
            for nbrs in range(1 << (k - 1)):
                rows = [g.rows[v] | (((nbrs >> v) & 1) << (k - 1)) for v in range(k - 1)]
                rows.append(nbrs)
                cand = Graph(k, tuple(rows))
                cf = canonical_form(cand, max_n)
                seen.setdefault((cf.n, cf.bits), cand)
        reps = [seen[key] for key in sorted(seen)]
    return sorted(reps, key=lambda g: (g.edge_count(), canonical_form(g, max_n).bits))
