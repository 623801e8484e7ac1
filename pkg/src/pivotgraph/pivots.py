"""Edge pivoting, pivot/delete witnesses, orbits, and containment search.

Pivoting an edge uv partitions the other vertices into V1 = N(u)\\N[v],
V2 = N(v)\\N[u], V3 = N(u) & N(v), toggles every cross pair between the
three sets, and finally exchanges u and v.  A witness is an ordered list
of pivot/delete steps, always written against the *original* host
indices; application tracks the survivors through deletions.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .canon import DEFAULT_CANONICAL_MAX_N, CanonicalForm, canonical_form, isomorphism
from .errors import BudgetExhausted, MissingVertex, NotAnEdge, Oversize
from .graphs import Graph, bits_of


def pivot(g: Graph, u: int, v: int) -> Graph:
    """The graph obtained by pivoting the edge uv.

    Symmetric in u and v; an involution; preserves the edge uv and the
    vertex count.  Display labels stay attached to indices (the label
    exchange is realized by the adjacency swap).
    """
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise NotAnEdge(f"{u},{v} is not a vertex pair of the graph")
    if not g.has_edge(u, v):
        raise NotAnEdge(f"{u},{v} is not an edge")
    nu, nv = g.rows[u], g.rows[v]
    off = ~((1 << u) | (1 << v))
    v1 = nu & ~nv & off
    v2 = nv & ~nu & off
    v3 = nu & nv & off
    rows = list(g.rows)

    def toggle(a_mask: int, b_mask: int) -> None:
        for a in bits_of(a_mask):
            rows[a] ^= b_mask
        for b in bits_of(b_mask):
            rows[b] ^= a_mask

    toggle(v1, v2)
    toggle(v2, v3)
    toggle(v1, v3)
    # exchange u and v: swap their rows and transpose the bits u,v everywhere
    rows[u], rows[v] = rows[v], rows[u]
    for w in range(g.n):
        r = rows[w]
        bu = (r >> u) & 1
        bv = (r >> v) & 1
        if bu != bv:
            r ^= (1 << u) | (1 << v)
            rows[w] = r
    return Graph(g.n, tuple(rows), g.labels)


@dataclass(frozen=True, order=True)
class Delete:
    v: int


@dataclass(frozen=True, order=True)
class Pivot:
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError("pivot step needs two distinct vertices")
        if self.u > self.v:
            lo, hi = self.v, self.u
            object.__setattr__(self, "u", lo)
            object.__setattr__(self, "v", hi)


Step = Delete | Pivot


def step_key(s: Step) -> tuple[int, int, int]:
    """Deterministic ordering: deletions sort before pivots."""
    if isinstance(s, Delete):
        return (0, s.v, -1)
    return (1, s.u, s.v)


@dataclass(frozen=True)
class PivotWitness:
    steps: tuple[Step, ...]
    claimed_target: Graph | None = None


def format_witness(w: PivotWitness) -> str:
    lines = []
    for s in w.steps:
        if isinstance(s, Delete):
            lines.append(f"D {s.v}")
        else:
            lines.append(f"P {s.u} {s.v}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_witness(text: str) -> PivotWitness:
    steps: list[Step] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "D" and len(parts) == 2:
            steps.append(Delete(int(parts[1])))
        elif parts[0] == "P" and len(parts) == 3:
            steps.append(Pivot(int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"bad witness line {line!r}")
    return PivotWitness(tuple(steps))


@dataclass(frozen=True)
class ApplyResult:
    graph: Graph
    origin: tuple[int, ...]  # origin[current index] = original host index


def apply_witness(g: Graph, w: PivotWitness) -> ApplyResult:
    """Fold the witness over g.  Steps name original host indices;
    deletions reindex densely and the audit map is returned."""
    cur = g
    where: dict[int, int] = {v: v for v in range(g.n)}  # original -> current
    origin = list(range(g.n))
    for i, s in enumerate(w.steps):
        if isinstance(s, Delete):
            if s.v not in where:
                raise MissingVertex(f"step {i}: vertex {s.v} already deleted or unknown", step=i)
            cv = where.pop(s.v)
            cur = cur.delete_vertex(cv)
            origin.pop(cv)
            for k in where:
                if where[k] > cv:
                    where[k] -= 1
        else:
            if s.u not in where or s.v not in where:
                missing = s.u if s.u not in where else s.v
                raise MissingVertex(f"step {i}: vertex {missing} already deleted or unknown", step=i)
            cu, cv = where[s.u], where[s.v]
            if not cur.has_edge(cu, cv):
                raise NotAnEdge(f"step {i}: {s.u},{s.v} is not an edge at this point", step=i)
            cur = pivot(cur, cu, cv)
    return ApplyResult(cur, tuple(origin))


@dataclass(frozen=True)
class VerifyVerdict:
    accepted: bool
    isomorphism: tuple[int, ...] | None = None  # obtained-graph index -> target index
    reason: str | None = None
    failing_step: int | None = None


def verify_witness(host: Graph, target: Graph, w: PivotWitness,
                   max_n: int = DEFAULT_CANONICAL_MAX_N) -> VerifyVerdict:
    """Accept iff applying the witness to host yields a graph isomorphic
    to target.  Rejection is a value, never an exception."""
    try:
        res = apply_witness(host, w)
    except (MissingVertex, NotAnEdge) as e:
        return VerifyVerdict(False, reason=str(e), failing_step=e.step)
    got = res.graph
    if got.n != target.n:
        return VerifyVerdict(False, reason=f"result has {got.n} vertices, target has {target.n}")
    iso = isomorphism(got, target, max_n=max(max_n, target.n))
    if iso is None:
        return VerifyVerdict(False, reason="result not isomorphic to target (canonical mismatch)")
    return VerifyVerdict(True, isomorphism=iso)


@dataclass(frozen=True)
class OrbitResult:
    forms: frozenset[CanonicalForm]
    truncated: bool


DEFAULT_ORBIT_LIMIT = 100_000


def pivot_orbit(g: Graph, limit: int = DEFAULT_ORBIT_LIMIT,
                max_n: int = DEFAULT_CANONICAL_MAX_N) -> OrbitResult:
    """Canonical forms reachable from g by pivots alone (breadth-first
    closure with canonical dedup)."""
    if g.n > max_n:
        raise Oversize(f"orbit tier is n <= {max_n}")
    start = canonical_form(g, max_n)
    seen: dict[tuple[int, int], CanonicalForm] = {(start.n, start.bits): start}
    frontier = [g]
    truncated = False
    while frontier:
        nxt: list[Graph] = []
        for cur in frontier:
            for u, v in cur.edges():
                child = pivot(cur, u, v)
                cf = canonical_form(child, max_n)
                key = (cf.n, cf.bits)
                if key in seen:
                    continue
                if len(seen) >= limit:
                    truncated = True
                    continue
                seen[key] = cf
                nxt.append(child)
        frontier = nxt
    return OrbitResult(frozenset(seen.values()), truncated)


DEFAULT_SEARCH_BUDGET = 200_000


def find_pivot_minor(host: Graph, pattern: Graph,
                     budget: int = DEFAULT_SEARCH_BUDGET,
                     max_n: int = DEFAULT_CANONICAL_MAX_N) -> PivotWitness | None:
    """Exhaustive pivot-minor containment search.

    Best-first over (step count, lexicographic step sequence) with the
    admissible bound that every state still needs (n - pattern.n)
    deletions; pivots never change the vertex count, so the first goal
    popped carries a minimal-length witness with deterministic ties.
    Memoized on canonical forms stratified by vertex count.  Returns
    None only when the reachable closure was exhausted within budget.
    """
    if host.n > max_n:
        raise Oversize(f"containment search tier is n <= {max_n}")
    if pattern.n > host.n:
        return None
    target = canonical_form(pattern, max_n)

    def seq_key(steps: tuple[Step, ...]) -> tuple:
        return tuple(step_key(s) for s in steps)

    start_cf = canonical_form(host, max_n)
    h0 = host.n - pattern.n
    heap: list[tuple[int, tuple, tuple[Step, ...], Graph, tuple[int, ...]]] = [
        (h0, (), (), host, tuple(range(host.n)))
    ]
    expanded: set[tuple[int, int]] = set()
    frontier_best: dict[tuple[int, int], tuple[int, tuple]] = {
        (start_cf.n, start_cf.bits): (h0, ())
    }
    expansions = 0
    while heap:
        f, skey, steps, cur, origin = heapq.heappop(heap)
        cf = canonical_form(cur, max_n)
        key = (cf.n, cf.bits)
        if key in expanded:
            continue
        expanded.add(key)
        if key == (target.n, target.bits):
            return PivotWitness(tuple(steps), claimed_target=pattern)
        expansions += 1
        if expansions > budget:
            raise BudgetExhausted(f"containment search budget {budget} hit")
        if cur.n == pattern.n:
            children: list[tuple[Step, Graph, tuple[int, ...]]] = []
        else:
            children = [
                (Delete(origin[cv]), cur.delete_vertex(cv),
                 origin[:cv] + origin[cv + 1:])
                for cv in range(cur.n)
            ]
        for cu, cv in cur.edges():
            ou, ov = origin[cu], origin[cv]
            children.append((Pivot(min(ou, ov), max(ou, ov)), pivot(cur, cu, cv), origin))
        for step, child, corigin in children:
            if child.n < pattern.n:
                continue
            ccf = canonical_form(child, max_n)
            ckey = (ccf.n, ccf.bits)
            if ckey in expanded:
                continue
            csteps = steps + (step,)
            cost = (len(csteps) + child.n - pattern.n, seq_key(csteps))
            old = frontier_best.get(ckey)
            if old is not None and old <= cost:
                continue
            frontier_best[ckey] = cost
            heapq.heappush(heap, (cost[0], cost[1], csteps, child, corigin))
    return None
