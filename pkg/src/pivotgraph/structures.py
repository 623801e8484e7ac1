"""Proof objects and their validators: ladders, ticks, realizations,
and frames, plus the caterpillar and r-centre primitives they build on.

Every validator is a pure function returning a verdict value whose
``failing`` field names the first violated condition; verdicts are
deterministic (conditions are checked in a fixed order, indices
ascending) so mutant fixtures can assert on the exact failure.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .canon import is_isomorphic
from .coherence import is_dominant
from .graphs import Graph, Relation, bits_of, mask_of, pair_relation, set_of
from .mass import MassedGraph


# -- caterpillars and centres --------------------------------------------


@dataclass(frozen=True)
class CaterpillarVerdict:
    ok: bool
    spine: tuple[int, ...] = ()
    leaves: frozenset[int] = frozenset()
    reason: str | None = None


def _is_tree(g: Graph) -> bool:
    return g.n > 0 and g.edge_count() == g.n - 1 and g.is_connected_set(g.full_mask)


def is_caterpillar(g: Graph, head: int | None = None) -> CaterpillarVerdict:
    """A tree whose non-leaf vertices induce a path (leaves removed once,
    not iterated).  With ``head`` given, the rooted variant additionally
    requires the head to end the spine; trees with an empty spine accept
    any head."""
    if not _is_tree(g):
        return CaterpillarVerdict(False, reason="not a tree")
    leaves = frozenset(v for v in range(g.n) if g.degree(v) <= 1)
    core = [v for v in range(g.n) if v not in leaves]
    if not core:
        if head is not None and not (0 <= head < g.n):
            return CaterpillarVerdict(False, reason="head is not a vertex")
        return CaterpillarVerdict(True, spine=(), leaves=leaves)
    core_mask = mask_of(core)
    degs = {v: (g.rows[v] & core_mask).bit_count() for v in core}
    if any(d > 2 for d in degs.values()):
        return CaterpillarVerdict(False, reason="non-leaf vertices do not induce a path")
    ends = [v for v in core if degs[v] <= 1]
    if len(core) == 1:
        spine = [core[0]]
    else:
        if len(ends) != 2 or not g.is_connected_set(core_mask):
            return CaterpillarVerdict(False, reason="non-leaf vertices do not induce a path")
        spine = [min(ends)]
        prev = -1
        while len(spine) < len(core):
            nxt = [u for u in bits_of(g.rows[spine[-1]] & core_mask) if u != prev]
            if len(nxt) != 1:
                return CaterpillarVerdict(False, reason="non-leaf vertices do not induce a path")
            prev = spine[-1]
            spine.append(nxt[0])
    if head is not None:
        if not (0 <= head < g.n):
            return CaterpillarVerdict(False, reason="head is not a vertex")
        if head not in (spine[0], spine[-1]):
            return CaterpillarVerdict(False, reason="head does not end the spine")
        if head == spine[-1]:
            spine = spine[::-1]
    return CaterpillarVerdict(True, spine=tuple(spine), leaves=leaves)


def is_r_centre(g: Graph, x: Iterable[int], v: int, r: int) -> bool:
    """True iff every vertex of x lies within distance r of v inside the
    induced subgraph on x.  (Adopted reading of the companion notion.)"""
    mask = g.check_set(x)
    if not (mask >> v) & 1:
        raise ValueError("centre must belong to the set")
    dist = g.distances(v, within=mask)
    return all(0 <= dist[u] <= r for u in bits_of(mask))


# -- verdicts ------------------------------------------------------------


@dataclass(frozen=True)
class StructureVerdict:
    ok: bool
    failing: str | None = None
    detail: str | None = None

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "failing": self.failing, "detail": self.detail},
                          sort_keys=True)


def _anticomplete(g: Graph, a: int, b: int) -> bool:
    rel = pair_relation(g, set_of(a), set_of(b))
    return rel.kind is Relation.ANTICOMPLETE


def _covers(g: Graph, x: int, y: int) -> bool:
    """Every vertex of y has a neighbor in x (vacuous for empty y)."""
    return all(g.rows[v] & x for v in bits_of(y))


# -- ladders -------------------------------------------------------------


@dataclass(frozen=True)
class Ladder:
    a: tuple[frozenset[int], ...]
    b: tuple[frozenset[int], ...]
    c: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.a)

    def all_mask(self) -> int:
        out = 0
        for fam in (self.a, self.b, self.c):
            for s in fam:
                out |= mask_of(s)
        return out


def validate_ladder(g: Graph, mg: MassedGraph | None, lad: Ladder,
                    half_cleaned: bool = False,
                    kappa: Fraction | None = None) -> StructureVerdict:
    """Check the 3k-set ladder conditions, optionally the half-cleaned
    triangular condition, optionally the per-rung mass floor."""
    if not (len(lad.a) == len(lad.b) == len(lad.c)):
        return StructureVerdict(False, "families-same-length")
    k = lad.k
    masks_a = [g.check_set(s) for s in lad.a]
    masks_b = [g.check_set(s) for s in lad.b]
    masks_c = [g.check_set(s) for s in lad.c]
    seen = 0
    for name, fam in (("A", masks_a), ("B", masks_b), ("C", masks_c)):
        for i, m in enumerate(fam):
            if m & seen:
                return StructureVerdict(False, "sets-disjoint", f"{name}{i} overlaps an earlier set")
            seen |= m
    for i in range(k):
        if masks_a[i] == 0 or not g.is_connected_set(masks_a[i]):
            return StructureVerdict(False, "A-connected", f"i={i}")
        if not _covers(g, masks_a[i], masks_b[i]):
            return StructureVerdict(False, "A-covers-B", f"i={i}")
        if not _covers(g, masks_b[i], masks_c[i]):
            return StructureVerdict(False, "B-covers-C", f"i={i}")
        if not _anticomplete(g, masks_a[i], masks_c[i]):
            return StructureVerdict(False, "A-anticomplete-C", f"i={i}")
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            if not _anticomplete(g, masks_a[i], masks_a[j] | masks_b[j] | masks_c[j]):
                return StructureVerdict(False, "A-anticomplete-other-rungs", f"i={i} j={j}")
    if half_cleaned:
        for i in range(k):
            for j in range(i + 1, k):
                if not _anticomplete(g, masks_b[i], masks_c[j]):
                    return StructureVerdict(False, "half-cleaned-B-anticomplete-C", f"i={i} j={j}")
    if kappa is not None:
        if mg is None:
            raise ValueError("mass floor requested without a massed graph")
        for i in range(k):
            if mg.mass_mask(masks_c[i]) < kappa:
                return StructureVerdict(False, "C-mass-floor", f"i={i}")
    return StructureVerdict(True)


# -- ticks ---------------------------------------------------------------


@dataclass(frozen=True)
class Tick:
    indices: tuple[int, ...]            # ladder rung indices, 0-based
    paths: tuple[tuple[int, ...], ...]  # paths[t] runs q_i .. centre

    @property
    def centre(self) -> int:
        return self.paths[0][-1]

    def vertices_mask(self) -> int:
        out = 0
        for p in self.paths:
            out |= mask_of(p)
        return out


def _is_induced_path(g: Graph, p: tuple[int, ...]) -> bool:
    if len(p) < 2 or len(set(p)) != len(p):
        return False
    for i in range(len(p) - 1):
        if not g.has_edge(p[i], p[i + 1]):
            return False
    for i in range(len(p)):
        for j in range(i + 2, len(p)):
            if g.has_edge(p[i], p[j]):
                return False
    return True


def validate_tick(g: Graph, lad: Ladder, tick: Tick) -> StructureVerdict:
    if len(tick.indices) != len(tick.paths) or not tick.indices:
        return StructureVerdict(False, "tick-shape", "one path per index required")
    if len(set(tick.indices)) != len(tick.indices):
        return StructureVerdict(False, "tick-shape", "duplicate rung index")
    if any(not (0 <= i < lad.k) for i in tick.indices):
        return StructureVerdict(False, "tick-shape", "rung index out of range")
    centre = tick.paths[0][-1]
    ends = []
    for t, p in enumerate(tick.paths):
        if not _is_induced_path(g, p):
            return StructureVerdict(False, "induced-path", f"leg {t}")
        if p[-1] != centre:
            return StructureVerdict(False, "common-centre", f"leg {t}")
        ends.append(p[0])
    if len(set(ends)) != len(ends) or centre in ends:
        return StructureVerdict(False, "distinct-ends")
    ladder_mask = lad.all_mask()
    for t, p in enumerate(tick.paths):
        i = tick.indices[t]
        q_i = p[0]
        body = mask_of(p) & ~(1 << centre)
        for s, other in enumerate(tick.paths):
            if s <= t:
                continue
            other_body = mask_of(other) & ~(1 << centre)
            if not _anticomplete(g, body, other_body):
                return StructureVerdict(False, "legs-anticomplete", f"legs {t},{s}")
        tail = mask_of(p) & ~(1 << q_i)
        if not _anticomplete(g, tail, ladder_mask):
            return StructureVerdict(False, "leg-anticomplete-ladder", f"leg {t}")
        if (1 << q_i) & ladder_mask:
            return StructureVerdict(False, "end-outside-ladder", f"leg {t}")
        if g.rows[q_i] & ladder_mask & ~mask_of(lad.a[i]):
            return StructureVerdict(False, "end-neighbours-in-own-A", f"leg {t}")
        if not g.is_connected_set(mask_of(lad.a[i]) | (1 << q_i)):
            return StructureVerdict(False, "A-plus-end-connected", f"leg {t}")
    return StructureVerdict(True)


def _constrained_path(g: Graph, allowed: int, start: int, goal: int,
                      count_once: int) -> tuple[int, ...] | None:
    """Shortest path from start to goal inside ``allowed`` using exactly
    one vertex of ``count_once``; lexicographically least among the
    shortest.  Dijkstra over (vertex, budget-used) states with walk
    semantics: a cost-minimal walk never repeats a vertex, so the first
    goal popped is the lex-least shortest admissible path."""
    if not ((allowed >> start) & 1) or not ((allowed >> goal) & 1):
        return None
    startb = 1 if (count_once >> start) & 1 else 0
    heap: list[tuple[int, tuple[int, ...], int]] = [(0, (start,), startb)]
    best: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {(start, startb): (0, (start,))}
    while heap:
        dist, path, used = heapq.heappop(heap)
        v = path[-1]
        if best.get((v, used), (dist, path)) < (dist, path):
            continue
        if v == goal and used == 1:
            return path
        for w in bits_of(g.rows[v] & allowed):
            wb = used + (1 if (count_once >> w) & 1 else 0)
            if wb > 1:
                continue
            cand = (dist + 1, path + (w,))
            key = (w, wb)
            if key in best and best[key] <= cand:
                continue
            best[key] = cand
            heapq.heappush(heap, (cand[0], cand[1], wb))
    return None


@dataclass(frozen=True)
class TickClassification:
    kind: str  # "odd" | "even" | "mixed" | "invalid"
    paths: tuple[tuple[tuple[int, int], tuple[int, ...]], ...] = ()  # ((rung, c), path)
    verdict: StructureVerdict | None = None


def classify_tick(g: Graph, lad: Ladder, tick: Tick) -> TickClassification:
    """For every rung i of the tick and every c in C_i, build the
    canonical c-to-centre path (shortest, then lexicographically least)
    that stays inside the leg plus its own rung, meets C_i only in c and
    B_i exactly once; classify by the shared parity of all such paths."""
    verdict = validate_tick(g, lad, tick)
    if not verdict.ok:
        return TickClassification("invalid", verdict=verdict)
    centre = tick.centre
    out = []
    parities = set()
    for t, p in enumerate(tick.paths):
        i = tick.indices[t]
        am, bm, cm = mask_of(lad.a[i]), mask_of(lad.b[i]), mask_of(lad.c[i])
        for c in sorted(lad.c[i]):
            allowed = (mask_of(p) | am | bm | (1 << c))
            path = _constrained_path(g, allowed, c, centre, bm)
            if path is None:
                return TickClassification(
                    "invalid",
                    verdict=StructureVerdict(False, "no-admissible-path", f"rung {i} c={c}"))
            out.append(((i, c), path))
            parities.add((len(path) - 1) % 2)
    if parities == {1}:
        kind = "odd"
    elif parities == {0}:
        kind = "even"
    else:
        kind = "mixed"
    return TickClassification(kind, paths=tuple(out))


# -- realizations --------------------------------------------------------


@dataclass(frozen=True)
class Realization:
    caterpillar: Graph
    head: int
    sets: tuple[frozenset[int], ...]  # indexed by caterpillar vertex
    delta: Fraction


def validate_realization(g: Graph, mg: MassedGraph, real: Realization) -> StructureVerdict:
    n = real.caterpillar
    cat = is_caterpillar(n, head=real.head)
    if not cat.ok:
        return StructureVerdict(False, "rooted-caterpillar", cat.reason)
    if len(real.sets) != n.n:
        return StructureVerdict(False, "assignment-shape", "one set per caterpillar vertex")
    masks = [g.check_set(s) for s in real.sets]
    seen = 0
    for v, m in enumerate(masks):
        if m & seen:
            return StructureVerdict(False, "sets-disjoint", f"X_{v}")
        seen |= m
    dist_to_head = n.distances(real.head)
    for u, v in n.edges():
        far, near = (u, v) if dist_to_head[u] > dist_to_head[v] else (v, u)
        if not _covers(g, masks[far], masks[near]):
            return StructureVerdict(False, "cover-toward-head", f"X_{far} must cover X_{near}")
    for u in range(n.n):
        for v in range(u + 1, n.n):
            if not n.has_edge(u, v) and not _anticomplete(g, masks[u], masks[v]):
                return StructureVerdict(False, "nonadjacent-anticomplete", f"X_{u},X_{v}")
    if mg.mass_mask(masks[real.head]) < real.delta:
        return StructureVerdict(False, "head-mass")
    for u in range(n.n):
        if u == real.head:
            continue
        if masks[u] == 0 or not g.is_connected_set(masks[u]):
            return StructureVerdict(False, "tail-connected", f"X_{u}")
        if not is_dominant(mg, set_of(masks[u]), real.delta):
            return StructureVerdict(False, "tail-dominant", f"X_{u}")
    return StructureVerdict(True)


# -- frames --------------------------------------------------------------


@dataclass(frozen=True)
class Frame:
    pattern: Graph                      # the abstract caterpillar T'
    vertices: tuple[int, ...]           # vertex set of the embedded copy T in g
    leaf_sets: Mapping[int, frozenset[int]]  # keyed by g-vertex of each leaf of T
    r: int
    kappa: Fraction


def validate_frame(g: Graph, mg: MassedGraph, frame: Frame) -> StructureVerdict:
    if frame.pattern.n < 3:
        return StructureVerdict(False, "pattern-size", "frames need caterpillars on >= 3 vertices")
    if not is_caterpillar(frame.pattern).ok:
        return StructureVerdict(False, "pattern-caterpillar")
    verts = list(dict.fromkeys(frame.vertices))
    if len(verts) != len(frame.vertices) or len(verts) != frame.pattern.n:
        return StructureVerdict(False, "embedding-shape", "vertex list must be distinct, one per pattern vertex")
    g.check_set(verts)
    t = g.induced(sorted(verts))
    if not is_isomorphic(t, frame.pattern, max_n=max(12, t.n)):
        return StructureVerdict(False, "embedded-copy-isomorphic")
    order = sorted(verts)
    tdeg = {order[i]: t.degree(i) for i in range(t.n)}
    spine = [v for v in order if tdeg[v] > 1]
    leaves = [v for v in order if tdeg[v] <= 1]
    spine_mask = mask_of(spine)
    anchors: dict[int, int] = {}
    for v in leaves:
        nb = [u for u in order if t.has_edge(order.index(v), order.index(u))]
        if len(nb) != 1 or tdeg[nb[0]] <= 1:
            return StructureVerdict(False, "leaf-anchor", f"leaf {v} has no spine anchor")
        anchors[v] = nb[0]
    if set(frame.leaf_sets) != set(leaves):
        return StructureVerdict(False, "leaf-sets-keys", "one set per leaf of the embedded copy")
    masks = {v: g.check_set(frame.leaf_sets[v]) for v in leaves}
    for v in sorted(leaves):
        m = masks[v]
        xv = anchors[v]
        if not (m >> v) & 1:
            return StructureVerdict(False, "leaf-in-own-set", f"leaf {v}")
        if (m >> xv) & 1:
            return StructureVerdict(False, "anchor-outside-set", f"leaf {v}")
        if not _anticomplete(g, m, spine_mask & ~(1 << xv)):
            return StructureVerdict(False, "set-avoids-other-spine", f"leaf {v}")
    for u in sorted(leaves):
        for v in sorted(leaves):
            if u < v and not _anticomplete(g, masks[u], masks[v]):
                return StructureVerdict(False, "leaf-sets-anticomplete", f"leaves {u},{v}")
    for v in sorted(leaves):
        if not is_r_centre(g, set_of(masks[v] | (1 << anchors[v])), anchors[v], frame.r):
            return StructureVerdict(False, "anchor-r-centre", f"leaf {v}")
    for v in sorted(leaves):
        if g.rows[anchors[v]] & masks[v] != (1 << v):
            return StructureVerdict(False, "unique-anchor-neighbour", f"leaf {v}")
    for v in sorted(leaves):
        if not is_dominant(mg, set_of(masks[v] | (1 << anchors[v])), frame.kappa):
            return StructureVerdict(False, "set-dominant", f"leaf {v}")
    return StructureVerdict(True)


# -- proof-object JSON ----------------------------------------------------


def proof_object_to_json(obj: Ladder | Tick | Realization | Frame) -> str:
    from .codec import encode_graph6
    if isinstance(obj, Ladder):
        payload = {"type": "ladder",
                   "a": [sorted(s) for s in obj.a],
                   "b": [sorted(s) for s in obj.b],
                   "c": [sorted(s) for s in obj.c]}
    elif isinstance(obj, Tick):
        payload = {"type": "tick",
                   "indices": list(obj.indices),
                   "paths": [list(p) for p in obj.paths]}
    elif isinstance(obj, Realization):
        payload = {"type": "realization",
                   "caterpillar": encode_graph6(obj.caterpillar),
                   "head": obj.head,
                   "sets": [sorted(s) for s in obj.sets],
                   "delta": str(obj.delta)}
    elif isinstance(obj, Frame):
        payload = {"type": "frame",
                   "pattern": encode_graph6(obj.pattern),
                   "vertices": list(obj.vertices),
                   "leaf_sets": {str(k): sorted(v) for k, v in sorted(obj.leaf_sets.items())},
                   "r": obj.r,
                   "kappa": str(obj.kappa)}
    else:
        raise TypeError(f"not a proof object: {obj!r}")
    return json.dumps(payload, sort_keys=True)


def proof_object_from_json(text: str) -> Ladder | Tick | Realization | Frame:
    from .codec import decode_graph6
    obj = json.loads(text)
    kind = obj["type"]
    if kind == "ladder":
        return Ladder(tuple(frozenset(s) for s in obj["a"]),
                      tuple(frozenset(s) for s in obj["b"]),
                      tuple(frozenset(s) for s in obj["c"]))
    if kind == "tick":
        return Tick(tuple(obj["indices"]), tuple(tuple(p) for p in obj["paths"]))
    if kind == "realization":
        return Realization(decode_graph6(obj["caterpillar"]), obj["head"],
                           tuple(frozenset(s) for s in obj["sets"]),
                           Fraction(obj["delta"]))
    if kind == "frame":
        return Frame(decode_graph6(obj["pattern"]), tuple(obj["vertices"]),
                     {int(k): frozenset(v) for k, v in obj["leaf_sets"].items()},
                     obj["r"], Fraction(obj["kappa"]))
    raise ValueError(f"unknown proof object type {kind!r}")
