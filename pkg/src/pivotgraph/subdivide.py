"""Subdivision builders and recognizers.

A SubdivisionPlan replaces each base edge by a path of a chosen length,
optionally with one extra "fuzz" chord joining two internal path
vertices at distance two (so the chord always lies in a triangle).
Builders use a deterministic vertex order: base vertices first, then
interior vertices grouped by sorted edge, in path order from the
smaller endpoint.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import BudgetExhausted, InvalidPlan, Oversize
from .graphs import Graph, bits_of, mask_of


@dataclass(frozen=True)
class Fuzz:
    pos: int        # chord joins path vertices pos and pos+2, counted from `attach`
    attach: str = "u"

    def __post_init__(self):
        if self.attach not in ("u", "v"):
            raise InvalidPlan(f"fuzz attach must be 'u' or 'v', got {self.attach!r}")


@dataclass(frozen=True)
class EdgePlan:
    u: int
    v: int
    length: int
    fuzz: Fuzz | None = None

    def key(self) -> tuple[int, int]:
        return (min(self.u, self.v), max(self.u, self.v))


@dataclass(frozen=True)
class SubdivisionPlan:
    base: Graph
    edges: tuple[EdgePlan, ...]

    def by_edge(self) -> dict[tuple[int, int], EdgePlan]:
        out: dict[tuple[int, int], EdgePlan] = {}
        for ep in self.edges:
            if ep.key() in out:
                raise InvalidPlan(f"duplicate plan entry for edge {ep.key()}")
            out[ep.key()] = ep
        return out


def plan_to_json(plan: SubdivisionPlan) -> str:
    from .codec import encode_graph6
    edges = []
    for ep in plan.edges:
        fuzz = None if ep.fuzz is None else {"pos": ep.fuzz.pos, "attach": ep.fuzz.attach}
        edges.append({"u": ep.u, "v": ep.v, "len": ep.length, "fuzz": fuzz})
    return json.dumps({"base": encode_graph6(plan.base), "edges": edges}, sort_keys=True)


def plan_from_json(text: str) -> SubdivisionPlan:
    from .codec import decode_graph6
    obj = json.loads(text)
    base = decode_graph6(obj["base"])
    edges = []
    for e in obj["edges"]:
        fuzz = e.get("fuzz")
        edges.append(EdgePlan(e["u"], e["v"], e["len"],
                              None if fuzz is None else Fuzz(fuzz["pos"], fuzz["attach"])))
    return SubdivisionPlan(base, tuple(edges))


def _validate_plan(plan: SubdivisionPlan, proper: bool) -> dict[tuple[int, int], EdgePlan]:
    base = plan.base
    by_edge = plan.by_edge()
    base_edges = {(u, v) for u, v in base.edges()}
    if set(by_edge) != base_edges:
        raise InvalidPlan("plan edges must cover the base edge set exactly")
    for key, ep in by_edge.items():
        if ep.length < 1:
            raise InvalidPlan(f"edge {key}: length must be >= 1")
        if proper and (ep.length % 2 == 0 or ep.length < 3):
            raise InvalidPlan(f"edge {key}: proper plans need odd length >= 3, got {ep.length}")
        if ep.fuzz is not None:
            if ep.length < 2:
                raise InvalidPlan(f"edge {key}: fuzz needs a replacement of length >= 2")
            p = ep.fuzz.pos
            if not (1 <= p and p + 2 <= ep.length - 1):
                raise InvalidPlan(
                    f"edge {key}: fuzz positions {p},{p + 2} are not both internal")
    return by_edge


def _fuzz_pos_from_low(ep: EdgePlan) -> int | None:
    """Chord position counted from the smaller endpoint of the edge."""
    if ep.fuzz is None:
        return None
    lo, _ = ep.key()
    anchor = ep.u if ep.fuzz.attach == "u" else ep.v
    if anchor == lo:
        return ep.fuzz.pos
    return ep.length - ep.fuzz.pos - 2


def build_from_plan(plan: SubdivisionPlan, proper: bool = False) -> Graph:
    """Carry out the per-edge path replacement described by the plan."""
    by_edge = _validate_plan(plan, proper)
    base = plan.base
    n = base.n + sum(ep.length - 1 for ep in by_edge.values())
    if n > 4096:
        raise Oversize(f"plan would build {n} vertices")
    edges: list[tuple[int, int]] = []
    nxt = base.n
    for key in sorted(by_edge):
        ep = by_edge[key]
        lo, hi = key
        chain = [lo] + list(range(nxt, nxt + ep.length - 1)) + [hi]
        nxt += ep.length - 1
        edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        pos = _fuzz_pos_from_low(ep)
        if pos is not None:
            edges.append((chain[pos], chain[pos + 2]))
    return Graph.from_edges(n, edges)


def uniform_subdivision(h: Graph, t: int) -> Graph:
    """Replace every edge with a path of length t+1 (t = 0 keeps h)."""
    if t < 0:
        raise InvalidPlan("t must be >= 0")
    plan = SubdivisionPlan(h, tuple(EdgePlan(u, v, t + 1) for u, v in h.edges()))
    return build_from_plan(plan)


def path_replacement(h: Graph, plan: SubdivisionPlan) -> Graph:
    """General per-edge path replacement; fuzz chords are not allowed."""
    if plan.base != h:
        raise InvalidPlan("plan base does not match the given graph")
    if any(ep.fuzz is not None for ep in plan.edges):
        raise InvalidPlan("path replacement does not take fuzz chords")
    return build_from_plan(plan)


def build_pfos(plan: SubdivisionPlan) -> Graph:
    """Build the proper fuzzy odd subdivision described by the plan
    (every length odd and >= 3; fuzz chords optional)."""
    return build_from_plan(plan, proper=True)


def fillet(g: Graph, keep: set[tuple[int, int]] | frozenset[tuple[int, int]],
           counts: dict[tuple[int, int], int]) -> Graph:
    """Subdivide every edge outside ``keep`` the given number of times
    (at least once) and no edge of ``keep``."""
    keep_norm = {(min(u, v), max(u, v)) for u, v in keep}
    base_edges = {(u, v) for u, v in g.edges()}
    if not keep_norm <= base_edges:
        raise InvalidPlan("keep set contains non-edges")
    counts_norm = {(min(u, v), max(u, v)): c for (u, v), c in counts.items()}
    if not set(counts_norm) <= base_edges:
        raise InvalidPlan("counts refer to non-edges")
    plans = []
    for u, v in sorted(base_edges):
        c = counts_norm.get((u, v), 0)
        if (u, v) in keep_norm:
            if c != 0:
                raise InvalidPlan(f"edge {(u, v)} is kept but has count {c}")
            plans.append(EdgePlan(u, v, 1))
        else:
            if c < 1:
                raise InvalidPlan(f"edge {(u, v)} must be subdivided at least once")
            plans.append(EdgePlan(u, v, c + 1))
    return build_from_plan(SubdivisionPlan(g, tuple(plans)))


def is_linear_forest(g: Graph, edges: set[tuple[int, int]]) -> bool:
    """True iff the given edge set forms a forest whose components are paths."""
    norm = {(min(u, v), max(u, v)) for u, v in edges}
    for u, v in norm:
        if not g.has_edge(u, v):
            return False
    deg: dict[int, int] = {}
    for u, v in norm:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d > 2 for d in deg.values()):
        return False
    sub = Graph.from_edges(g.n, sorted(norm))
    # no cycles: every component of the edge-induced subgraph is a tree
    seen = 0
    for s in range(g.n):
        if (seen >> s) & 1 or sub.degree(s) == 0:
            continue
        comp = 0
        frontier = 1 << s
        while frontier:
            comp |= frontier
            nxt = 0
            for w in bits_of(frontier):
                nxt |= sub.rows[w]
            frontier = nxt & ~comp
        seen |= comp
        verts = comp.bit_count()
        edge_cnt = sum(sub.degree(w) for w in bits_of(comp)) // 2
        if edge_cnt != verts - 1:
            return False
    return True


# -- fuzzy odd paths ----------------------------------------------------


@dataclass(frozen=True)
class FuzzyPathVerdict:
    ok: bool
    path: tuple[int, ...] | None = None   # underlying path vertices, u..v
    fuzz: tuple[int, int] | None = None   # chord, if any
    reason: str | None = None

    @property
    def length(self) -> int:
        return -1 if self.path is None else len(self.path) - 1


def _walk_path(g: Graph, start: int) -> list[int] | None:
    """Walk a degree-<=2 graph from a degree-1 vertex; None on branch."""
    order = [start]
    prev = -1
    cur = start
    while True:
        nxt = [w for w in bits_of(g.rows[cur]) if w != prev]
        if not nxt:
            return order
        if len(nxt) > 1:
            return None
        prev, cur = cur, nxt[0]
        order.append(cur)


def is_fuzzy_odd_path(g: Graph, u: int, v: int) -> FuzzyPathVerdict:
    """Accept iff g is exactly an odd u-v path, or such a path plus one
    chord between internal vertices at path distance two (which then
    lies in a triangle)."""
    n = g.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        return FuzzyPathVerdict(False, reason="endpoints must be two distinct vertices")
    m = g.edge_count()

    def check_pure(h: Graph) -> tuple[int, ...] | None:
        if h.edge_count() != n - 1:
            return None
        ones = [w for w in range(n) if h.degree(w) == 1]
        if sorted(ones) != sorted([u, v]):
            return None
        if any(h.degree(w) != 2 for w in range(n) if w not in (u, v)):
            return None
        order = _walk_path(h, u)
        if order is None or len(order) != n or order[-1] != v:
            return None
        return tuple(order)

    if m == n - 1:
        order = check_pure(g)
        if order is None:
            return FuzzyPathVerdict(False, reason="not a u-v path")
        if (len(order) - 1) % 2 == 0:
            return FuzzyPathVerdict(False, reason="path length is even")
        return FuzzyPathVerdict(True, path=order)

    if m == n:
        thirds = [w for w in range(n) if g.degree(w) == 3]
        if len(thirds) != 2 or not g.has_edge(thirds[0], thirds[1]):
            return FuzzyPathVerdict(False, reason="extra edge is not a chord between two degree-3 vertices")
        a, b = thirds
        rows = list(g.rows)
        rows[a] &= ~(1 << b)
        rows[b] &= ~(1 << a)
        stripped = Graph(n, tuple(rows))
        order = check_pure(stripped)
        if order is None:
            return FuzzyPathVerdict(False, reason="removing the chord does not leave a u-v path")
        ia, ib = order.index(a), order.index(b)
        if abs(ia - ib) != 2:
            return FuzzyPathVerdict(False, reason="chord endpoints are not at path distance two")
        if min(ia, ib) < 1 or max(ia, ib) > len(order) - 2:
            return FuzzyPathVerdict(False, reason="chord endpoint is not internal")
        if (len(order) - 1) % 2 == 0:
            return FuzzyPathVerdict(False, reason="path length is even")
        return FuzzyPathVerdict(True, path=order, fuzz=(min(a, b), max(a, b)))

    return FuzzyPathVerdict(False, reason="edge count fits neither a path nor a path plus one chord")


# -- proper fuzzy odd subdivision recognition ---------------------------


BranchMap = tuple[int, ...]


@dataclass(frozen=True)
class PfosVerdict:
    ok: bool
    reason: str | None = None
    paths: tuple[tuple[tuple[int, int], tuple[int, ...]], ...] = ()


def is_pfos(g: Graph, base: Graph, bm: BranchMap) -> PfosVerdict:
    """Accept iff g is exactly a proper fuzzy odd subdivision of base
    with branch vertices bm: deleting the branch images decomposes g
    into one fuzzy odd path (odd length >= 3) per base edge, with no
    stray edges anywhere."""
    if len(bm) != base.n or len(set(bm)) != len(bm):
        return PfosVerdict(False, reason="branch map must be injective over the base vertices")
    if any(not (0 <= w < g.n) for w in bm):
        return PfosVerdict(False, reason="branch map leaves the graph")
    img_mask = mask_of(bm)
    interior_mask = g.full_mask & ~img_mask

    comps: list[int] = []
    left = interior_mask
    while left:
        s = (left & -left).bit_length() - 1
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for w in bits_of(frontier):
                nxt |= g.rows[w]
            nxt &= interior_mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp

    img_index = {w: i for i, w in enumerate(bm)}
    base_edges = set(base.edges())
    assigned: dict[tuple[int, int], int] = {}
    for comp in comps:
        attach = set()
        for w in bits_of(comp):
            for x in bits_of(g.rows[w] & img_mask):
                attach.add(img_index[x])
        if len(attach) != 2:
            return PfosVerdict(False, reason=f"an interior component touches {len(attach)} branch vertices")
        a, b = sorted(attach)
        if (a, b) not in base_edges:
            return PfosVerdict(False, reason=f"interior component bridges the base non-edge {(a, b)}")
        if (a, b) in assigned:
            return PfosVerdict(False, reason=f"base edge {(a, b)} has two replacement components")
        assigned[(a, b)] = comp
    if set(assigned) != base_edges:
        missing = sorted(base_edges - set(assigned))
        return PfosVerdict(False, reason=f"base edges {missing} have no replacement path")

    total_edges = 0
    paths = []
    for (a, b), comp in sorted(assigned.items()):
        verts = comp | (1 << bm[a]) | (1 << bm[b])
        keep = sorted(bits_of(verts))
        sub = g.induced(keep)
        iu, iv = keep.index(bm[a]), keep.index(bm[b])
        verdict = is_fuzzy_odd_path(sub, iu, iv)
        if not verdict.ok:
            return PfosVerdict(False, reason=f"base edge {(a, b)}: {verdict.reason}")
        if verdict.length < 3:
            return PfosVerdict(False, reason=f"base edge {(a, b)}: replacement has length {verdict.length} < 3")
        total_edges += sub.edge_count()
        paths.append(((a, b), tuple(keep[i] for i in verdict.path)))
    if total_edges != g.edge_count():
        return PfosVerdict(False, reason="stray edges outside the replacement paths")
    return PfosVerdict(True, paths=tuple(paths))


# -- exhaustive induced-PFOS containment --------------------------------


@dataclass(frozen=True)
class PfosEmbedding:
    branch: BranchMap
    paths: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]

    @property
    def vertices(self) -> frozenset[int]:
        out = set(self.branch)
        for _, p in self.paths:
            out.update(p)
        return frozenset(out)


DEFAULT_PFOS_BUDGET = 2_000_000
DEFAULT_PFOS_HOST_MAX_N = 14


def contains_induced_pfos(host: Graph, base: Graph,
                          budget: int = DEFAULT_PFOS_BUDGET,
                          max_host_n: int = DEFAULT_PFOS_HOST_MAX_N) -> PfosEmbedding | None:
    """Exhaustively search for an induced proper fuzzy odd subdivision
    of base inside host.  None means the search space was exhausted."""
    if host.n > max_host_n:
        raise Oversize(f"induced-PFOS tier is host n <= {max_host_n}")
    base_edges = sorted((min(u, v), max(u, v)) for u, v in base.edges())
    nodes = 0

    def spend() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"induced-PFOS budget {budget} hit")

    def path_dfs(ei: int, bm: BranchMap, img_mask: int, used: int,
                 found: list[tuple[tuple[int, int], tuple[int, ...]]]) -> PfosEmbedding | None:
        if ei == len(base_edges):
            verts = sorted(bits_of(used | img_mask))
            sub = host.induced(verts)
            local_bm = tuple(verts.index(w) for w in bm)
            if is_pfos(sub, base, local_bm).ok:
                return PfosEmbedding(bm, tuple(found))
            return None
        a, b = base_edges[ei]
        start, goal = bm[a], bm[b]

        def extend(seq: list[int], chord_used: bool) -> PfosEmbedding | None:
            spend()
            last = seq[-1]
            for w in range(host.n):
                bit = 1 << w
                if bit & (used | img_mask) and w != goal:
                    continue
                if w in seq:
                    continue
                if not host.has_edge(last, w):
                    continue
                back = [i for i in range(len(seq) - 1) if host.has_edge(seq[i], w)]
                if w == goal:
                    if back:
                        continue
                    length = len(seq)
                    if length % 2 == 1 and length >= 3:
                        found.append(((a, b), tuple(seq + [w])))
                        interior = mask_of(seq[1:])
                        deeper = path_dfs(ei + 1, bm, img_mask, used | interior, found)
                        if deeper is not None:
                            return deeper
                        found.pop()
                    continue
                new_chord = chord_used
                if back:
                    if chord_used or len(back) > 1 or back[0] != len(seq) - 2 or back[0] < 1:
                        continue
                    new_chord = True
                # interior vertex: must stay clear of foreign branch images and prior paths
                if host.rows[w] & (img_mask & ~((1 << start) | (1 << goal))):
                    continue
                if host.rows[w] & used:
                    continue
                seq.append(w)
                deeper = extend(seq, new_chord)
                if deeper is not None:
                    return deeper
                seq.pop()
            return None

        return extend([start], False)

    def choose_branch(i: int, bm: list[int], img_mask: int) -> PfosEmbedding | None:
        if i == base.n:
            return path_dfs(0, tuple(bm), img_mask, 0, [])
        for w in range(host.n):
            bit = 1 << w
            if bit & img_mask:
                continue
            spend()
            # branch images must be pairwise nonadjacent in an induced PFOS
            if host.rows[w] & img_mask:
                continue
            bm.append(w)
            out = choose_branch(i + 1, bm, img_mask | bit)
            if out is not None:
                return out
            bm.pop()
        return None

    return choose_branch(0, [], 0)
