"""Constructive searches that mirror proof steps.

``find_fuzzy_odd_path`` walks the two-sided frontier construction:
layer the two anchor sets, pick the first heavy frontier slab on the
first side, then either bridge directly into the second side's layers
(branch one) or through the second side's own frontier (branch two).
``assemble_pfos`` greedily picks well-separated cross edges between the
C-sets of a laddered tick system and splices the canonical tick paths
into one fuzzy odd path per pattern edge.

Both never claim nonexistence: when a step's set is empty they raise
NoProgress naming the step.  Every returned object is re-validated by
the independent recognizers before it leaves the function.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NoProgress, PreconditionViolated
from .graphs import Graph, Relation, bits_of, mask_of, pair_relation, set_of
from .mass import MassedGraph
from .structures import Ladder, Tick, classify_tick, is_r_centre, validate_ladder
from .subdivide import FuzzyPathVerdict, is_fuzzy_odd_path, is_pfos, PfosVerdict


@dataclass(frozen=True)
class FuzzyPath:
    path: tuple[int, ...]              # underlying path, first endpoint first
    fuzz: tuple[int, int] | None
    branch: str                        # which construction branch produced it

    @property
    def length(self) -> int:
        return len(self.path) - 1

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.path)


def _lex_shortest_path(g: Graph, inside: int, start: int, goal: int) -> tuple[int, ...] | None:
    """Lex-least shortest path inside an induced vertex mask."""
    import heapq
    if not ((inside >> start) & 1) or not ((inside >> goal) & 1):
        return None
    heap = [(0, (start,))]
    best = {start: (0, (start,))}
    while heap:
        dist, path = heapq.heappop(heap)
        v = path[-1]
        if best.get(v, (dist, path)) < (dist, path):
            continue
        if v == goal:
            return path
        for w in bits_of(g.rows[v] & inside):
            cand = (dist + 1, path + (w,))
            if w in best and best[w] <= cand:
                continue
            best[w] = cand
            heapq.heappush(heap, cand)
    return None


def _layers(g: Graph, inside: int, centre: int, r: int) -> list[int]:
    """Masks of vertices at distance exactly j (j = 0..r) inside a set."""
    dist = g.distances(centre, within=inside)
    out = [0] * (r + 1)
    for v in bits_of(inside):
        if 0 <= dist[v] <= r:
            out[dist[v]] |= 1 << v
    return out


def _validated(g: Graph, verts: set[int], u: int, v: int, max_len: int,
               allowed: int, branch: str) -> FuzzyPath | None:
    order = sorted(verts)
    if mask_of(order) & ~allowed:
        return None
    sub = g.induced(order)
    verdict: FuzzyPathVerdict = is_fuzzy_odd_path(sub, order.index(u), order.index(v))
    if not verdict.ok or verdict.length > max_len:
        return None
    path = tuple(order[i] for i in verdict.path)
    fuzz = None if verdict.fuzz is None else (order[verdict.fuzz[0]], order[verdict.fuzz[1]])
    return FuzzyPath(path, fuzz, branch)


def find_fuzzy_odd_path(mg: MassedGraph, u: int, x_u: Sequence[int], a_set: Sequence[int],
                        v: int, x_v: Sequence[int], b_set: Sequence[int],
                        r: int, eps: Fraction) -> FuzzyPath:
    """Induced fuzzy odd path from u to v of length at most 2r+3 with
    all vertices inside the two anchor regions.

    Structural preconditions are enforced; the mass lower bounds are
    evaluated but not required, so the construction is attempted at any
    scale and raises NoProgress (never a nonexistence claim) when a
    proof step comes up empty.
    """
    g = mg.g
    eps = Fraction(eps)
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    if u == v:
        raise PreconditionViolated("endpoints must differ")
    xu = g.check_set(x_u)
    xv = g.check_set(x_v)
    am = g.check_set(a_set)
    bm = g.check_set(b_set)
    if g.has_edge(u, v):
        # base case: the single edge is already an odd path
        return FuzzyPath((u, v), None, "base")
    if not ((xu >> u) & 1) or not ((xv >> v) & 1):
        raise PreconditionViolated("each endpoint must lie in its own anchor set")
    if xu & ~am or xv & ~bm:
        raise PreconditionViolated("anchor sets must lie inside their regions")
    if pair_relation(g, set_of(xu), set_of(xv)).kind is not Relation.ANTICOMPLETE:
        raise PreconditionViolated("anchor sets must be anticomplete")
    if not is_r_centre(g, set_of(xu), u, r):
        raise PreconditionViolated("first endpoint is not an r-centre of its anchor set")
    if not is_r_centre(g, set_of(xv), v, r):
        raise PreconditionViolated("second endpoint is not an r-centre of its anchor set")
    for w in bits_of(am):
        if not ((xu >> w) & 1) and not (g.rows[w] & xu):
            raise PreconditionViolated("first region must lie in the closed neighborhood of its anchor set")
    for w in bits_of(bm):
        if not ((xv >> w) & 1) and not (g.rows[w] & xv):
            raise PreconditionViolated("second region must lie in the closed neighborhood of its anchor set")

    # mass floor of the lemma, recorded but not required
    floor = Fraction((r * (r + 1) * ((1 << (2 * r + 3)) + 3) + 1), 1) * eps
    _ = mg.mass_mask(am) >= floor and mg.mass_mask(bm) >= floor

    swapped = mg.mass_mask(xu) >= eps > mg.mass_mask(xv)
    if swapped:
        u, v = v, u
        xu, xv = xv, xu
        am, bm = bm, am

    allowed = am | bm
    max_len = 2 * r + 3

    def pick_level(masks: list[int], floor: Fraction) -> int | None:
        """Smallest level meeting the mass floor; the floors are not
        required, so degrade to the smallest nonempty level."""
        qualified = next((j for j, m in enumerate(masks) if mg.mass_mask(m) >= floor), None)
        if qualified is not None:
            return qualified
        return next((j for j, m in enumerate(masks) if m), None)

    def greedy_prefix(pool: int, target: int, floor: Fraction) -> int:
        """Accumulate pool vertices until N(prefix) & target reaches the
        floor, degrading to the first prefix with nonempty overlap."""
        chosen = 0
        fallback = 0
        for w in bits_of(pool):
            chosen |= 1 << w
            hit = g.neighborhood_of_set(chosen) & target
            if fallback == 0 and hit:
                fallback = chosen
            if mg.mass_mask(hit) >= floor:
                return chosen
        return fallback

    la = _layers(g, xu, u, r)
    da = []
    seen_nb = 0
    for j in range(r + 1):
        dj = (am & ~xu) & g.neighborhood_of_set(la[j]) & ~seen_nb
        da.append(dj)
        seen_nb |= g.neighborhood_of_set(la[j])
    slab_floor = Fraction((1 << max_len) + 3, 1) * eps  # (2^(2r+3) + 3) eps
    j_a = pick_level(da, slab_floor)
    if j_a is None:
        raise NoProgress("first-side-frontier")
    b_prime = bm & ~mask_of(w for j in range(j_a) for w in bits_of(da[j]))
    lb = _layers(g, xv, v, r)

    def finish(with_b1: set[int], without_b1: set[int], branch: str) -> FuzzyPath:
        for cand in (without_b1, with_b1):
            got = _validated(g, cand, u, v, max_len, allowed, branch)
            if got is not None:
                if swapped:
                    return FuzzyPath(tuple(reversed(got.path)), got.fuzz, got.branch)
                return got
        raise NoProgress(f"branch-{branch}-candidate-validation")

    def bridge(z: int, reached: int) -> tuple[int | None, int]:
        """Adjacent (b1, b2) with b2 in the reached part of the slab and
        b1 outside it; degrade to b2 alone when no such edge exists."""
        inside = z & reached
        outside = z & ~reached
        for b1 in bits_of(outside):
            hit = g.rows[b1] & inside
            if hit:
                return b1, (hit & -hit).bit_length() - 1
        return None, (inside & -inside).bit_length() - 1

    # branch one: some second-side layer already sees the heavy slab
    views = [g.neighborhood_of_set(lb[j]) & da[j_a] for j in range(r + 1)]
    j_b = next((j for j in range(r + 1)
                if mg.mass_mask(views[j]) >= Fraction(4 ** j, 1) * eps), None)
    if j_b is None:
        j_b = next((j for j in range(r + 1) if views[j]), None)
    if j_b is not None:
        z = g.neighborhood_of_set(lb[j_b]) & da[j_a]
        for p in range(j_b):
            z &= ~g.neighborhood_of_set(lb[p])
        if z == 0:
            raise NoProgress("branch-one-slab")
        chosen = greedy_prefix(lb[j_b], z, eps)
        if chosen == 0:
            raise NoProgress("branch-one-bridge-edge")
        b1, b2 = bridge(z, g.neighborhood_of_set(chosen))
        a2 = next(bits_of(g.rows[b2] & la[j_a]))
        c = next(bits_of(g.rows[b2] & chosen))
        p2 = _lex_shortest_path(g, xu, u, a2)
        pc = _lex_shortest_path(g, xv, v, c)
        if p2 is None or pc is None:
            raise NoProgress("branch-one-anchor-paths")
        without_b1 = set(p2) | {b2} | set(pc)
        if b1 is None:
            return finish(without_b1, without_b1, "one")
        a1 = next(bits_of(g.rows[b1] & la[j_a]))
        p1 = _lex_shortest_path(g, xu, u, a1)
        if p1 is None:
            raise NoProgress("branch-one-anchor-paths")
        return finish(set(p1) | {b1, b2} | set(pc), without_b1, "one")

    # branch two: the heavy slab avoids the second anchor set entirely
    z = da[j_a] & ~g.neighborhood_of_set(xv)
    if z == 0:
        raise NoProgress("branch-two-clear-slab")
    db = []
    seen_nb = 0
    for j in range(r + 1):
        dj = (b_prime & ~xv) & g.neighborhood_of_set(lb[j]) & ~seen_nb
        db.append(dj)
        seen_nb |= g.neighborhood_of_set(lb[j])
    j_b = pick_level(db, Fraction(3, 1) * eps)
    if j_b is None:
        raise NoProgress("second-side-frontier")
    chosen = greedy_prefix(db[j_b], z, eps)
    if chosen == 0:
        raise NoProgress("branch-two-bridge-edge")
    b1, b2 = bridge(z, g.neighborhood_of_set(chosen))
    a2 = next(bits_of(g.rows[b2] & la[j_a]))
    c1 = next(bits_of(g.rows[b2] & chosen))
    c2 = next(bits_of(g.rows[c1] & lb[j_b]))
    p2 = _lex_shortest_path(g, xu, u, a2)
    pc = _lex_shortest_path(g, xv, v, c2)
    if p2 is None or pc is None:
        raise NoProgress("branch-two-anchor-paths")
    without_b1 = set(p2) | {b2, c1} | set(pc)
    if b1 is None:
        return finish(without_b1, without_b1, "two")
    a1 = next(bits_of(g.rows[b1] & la[j_a]))
    p1 = _lex_shortest_path(g, xu, u, a1)
    if p1 is None:
        raise NoProgress("branch-two-anchor-paths")
    return finish(set(p1) | {b1, b2, c1} | set(pc), without_b1, "two")


# -- assembly of a proper fuzzy odd subdivision from ladders and ticks ----


@dataclass(frozen=True)
class Assembly:
    branch: tuple[int, ...]            # tick centres, one per pattern vertex
    paths: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    vertices: frozenset[int]


def assemble_pfos(g: Graph, mg: MassedGraph, lad: Ladder, ticks: Sequence[Tick],
                  eps: Fraction) -> Assembly:
    """Splice a clique's proper fuzzy odd subdivision out of a
    half-cleaned ladder with one uniform-parity tick per clique vertex.

    Greedy edge choices scan the paired C-sets in pair order and take
    the lexicographically least adjacent cross pair at distance >= 4
    from all earlier picks.  The result is validated by the subdivision
    recognizer before being returned.
    """
    n = len(ticks)
    if n < 2:
        raise PreconditionViolated("need at least two ticks")
    lv = validate_ladder(g, mg, lad, half_cleaned=True)
    if not lv.ok:
        raise PreconditionViolated(f"ladder invalid: {lv.failing} ({lv.detail})")
    if lad.k != n * (n - 1):
        raise PreconditionViolated(f"ladder must have {n * (n - 1)} rungs for {n} ticks")
    covered: set[int] = set()
    for t in ticks:
        if covered & set(t.indices):
            raise PreconditionViolated("ticks share a ladder rung")
        covered |= set(t.indices)
        if len(t.indices) != n - 1:
            raise PreconditionViolated(f"each tick must own {n - 1} rungs")
    if covered != set(range(lad.k)):
        raise PreconditionViolated("ticks must cover all ladder rungs")
    for i in range(n):
        for j in range(i + 1, n):
            if pair_relation(g, set_of(ticks[i].vertices_mask()),
                             set_of(ticks[j].vertices_mask())).kind is not Relation.ANTICOMPLETE:
                raise PreconditionViolated(f"ticks {i},{j} are not anticomplete")

    classifications = [classify_tick(g, lad, t) for t in ticks]
    kinds = {c.kind for c in classifications}
    if "invalid" in kinds:
        bad = next(i for i, c in enumerate(classifications) if c.kind == "invalid")
        raise PreconditionViolated(
            f"tick {bad} invalid: {classifications[bad].verdict.failing}")
    if len(kinds) != 1 or "mixed" in kinds:
        raise PreconditionViolated(f"ticks must share one parity, got {sorted(kinds)}")
    tick_paths = {key: path for c in classifications for key, path in c.paths}

    # pair each unordered pattern edge with one unused rung per side
    unused = {j: sorted(ticks[j].indices) for j in range(n)}
    pair_rungs: list[tuple[tuple[int, int], int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            pair_rungs.append(((i, j), unused[i].pop(0), unused[j].pop(0)))

    picks: list[tuple[int, int]] = []
    dist_floor: list[list[int]] = []  # BFS distances from earlier picks

    def far_enough(c: int, cp: int) -> bool:
        return all(min(d[c], d[cp]) >= 4 for d in dist_floor)

    chosen: list[tuple[tuple[int, int], int, int, int, int]] = []
    for m, ((i, j), s, sp) in enumerate(pair_rungs, start=1):
        found = None
        for c in sorted(lad.c[s]):
            for cp in sorted(bits_of(g.rows[c] & mask_of(lad.c[sp]))):
                if far_enough(c, cp):
                    found = (c, cp)
                    break
            if found:
                break
        if found is None:
            raise NoProgress(f"pair-{m}-cross-edge")
        c, cp = found
        picks.append((c, cp))
        for w in (c, cp):
            dist_floor.append(g.distances(w))
        chosen.append(((i, j), s, sp, c, cp))

    centre = {j: ticks[j].centre for j in range(n)}
    result_paths: list[tuple[tuple[int, int], tuple[int, ...]]] = []
    used_union: set[int] = set(centre.values())
    for (i, j), s, sp, c, cp in chosen:
        pc = tick_paths[(s, c)]
        pcp = tick_paths[(sp, cp)]
        both = set(pc) | set(pcp)
        candidates = (both, both - {c, cp})
        got = None
        for cand in candidates:
            order = sorted(cand)
            sub = g.induced(order)
            verdict = is_fuzzy_odd_path(sub, order.index(centre[i]), order.index(centre[j]))
            if verdict.ok and verdict.length >= 3:
                got = tuple(order[t] for t in verdict.path)
                break
        if got is None:
            raise NoProgress(f"pair-{i},{j}-fuzzy-path")
        result_paths.append(((i, j), got))
        used_union |= set(got)

    order = sorted(used_union)
    sub = g.induced(order)
    bm = tuple(order.index(centre[j]) for j in range(n))
    verdict: PfosVerdict = is_pfos(sub, Graph.complete(n), bm)
    if not verdict.ok:
        raise NoProgress(f"final-validation: {verdict.reason}")
    return Assembly(tuple(centre[j] for j in range(n)), tuple(result_paths),
                    frozenset(used_union))
