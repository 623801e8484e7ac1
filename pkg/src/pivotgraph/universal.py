"""Universal hosts and explicit pivot witnesses for small patterns.

Four host families, each with an emitter that writes down the exact
pivot/delete sequence extracting any given pattern:

  SQUARE_CLIQUE            host = the 2-subdivision of a clique
  FUZZY_ODD_CLIQUE_SUB     host = any proper fuzzy odd subdivision of a
                           clique (caller supplies the plan); reduced
                           step by step down to the 2-subdivision case
  COMPLEMENT_CUBE_CLIQUE_JOIN
                           host = complement of the 3-subdivision of a
                           clique, joined with one apex vertex
  COMPLEMENT_MOD3          host = complement of a clique whose edges
                           were replaced by paths of length 1 mod 3
                           (>= 4); one branch vertex is freed up to act
                           as the apex, then reduced to the cube case

Witness steps are written against original host indices; every emitted
witness is meant to be checked with verify_witness.
"""
from __future__ import annotations

from enum import Enum

from .errors import InvalidPlan, Oversize, PivotGraphError
from .graphs import Graph
from .pivots import ApplyResult, Delete, Pivot, PivotWitness, Step, apply_witness
from .subdivide import (EdgePlan, SubdivisionPlan, _fuzz_pos_from_low,
                        build_pfos, is_pfos, path_replacement, uniform_subdivision)

DEFAULT_MAX_R = 4


class UniversalKind(Enum):
    SQUARE_CLIQUE = "square"
    FUZZY_ODD_CLIQUE_SUB = "fuzzy"
    COMPLEMENT_CUBE_CLIQUE_JOIN = "cube-join"
    COMPLEMENT_MOD3 = "mod3"


def _interior_table(r: int, lengths: dict[tuple[int, int], int],
                    first: int) -> dict[tuple[int, int], list[int]]:
    """Interior labels per sorted clique edge, matching the builder's
    deterministic vertex order."""
    out: dict[tuple[int, int], list[int]] = {}
    nxt = first
    for i in range(r):
        for j in range(i + 1, r):
            k = lengths[(i, j)] - 1
            out[(i, j)] = list(range(nxt, nxt + k))
            nxt += k
    return out


def default_pfos_plan(r: int) -> SubdivisionPlan:
    """Default plan over a clique: the first edge gets a length-5 fuzzy
    path, every other edge a plain length-3 path."""
    from .subdivide import Fuzz
    base = Graph.complete(r)
    plans = []
    for idx, (u, v) in enumerate(sorted(base.edges())):
        if idx == 0 and r >= 2:
            plans.append(EdgePlan(u, v, 5, fuzz=Fuzz(1, "u")))
        else:
            plans.append(EdgePlan(u, v, 3))
    return SubdivisionPlan(base, tuple(plans))


def default_mod3_plan(r: int) -> SubdivisionPlan:
    base = Graph.complete(r + 1)
    return SubdivisionPlan(base, tuple(EdgePlan(u, v, 4) for u, v in sorted(base.edges())))


def universal_host_and_witness(pattern: Graph, kind: UniversalKind,
                               plan: SubdivisionPlan | None = None,
                               max_r: int = DEFAULT_MAX_R) -> tuple[Graph, PivotWitness]:
    """Emit (host, witness) such that applying the witness to the host
    yields the pattern.  The witness follows the host family's
    extraction recipe literally."""
    r = pattern.n
    if r < 1:
        raise InvalidPlan("pattern must have at least one vertex")
    if r > max_r:
        raise Oversize(f"emitters support patterns up to {max_r} vertices")
    if kind is UniversalKind.SQUARE_CLIQUE:
        return _emit_square(pattern)
    if kind is UniversalKind.FUZZY_ODD_CLIQUE_SUB:
        if plan is None:
            plan = default_pfos_plan(r)
        return _emit_fuzzy(pattern, plan)
    if kind is UniversalKind.COMPLEMENT_CUBE_CLIQUE_JOIN:
        return _emit_cube_join(pattern)
    if kind is UniversalKind.COMPLEMENT_MOD3:
        if plan is None:
            plan = default_mod3_plan(r)
        return _emit_mod3(pattern, plan)
    raise ValueError(f"unknown kind {kind}")


# -- (a) 2-subdivided clique --------------------------------------------


def _emit_square(pattern: Graph) -> tuple[Graph, PivotWitness]:
    r = pattern.n
    host = uniform_subdivision(Graph.complete(r), 2)
    interiors = _interior_table(r, {e: 3 for e in
                                    ((i, j) for i in range(r) for j in range(i + 1, r))}, r)
    steps: list[Step] = []
    for i, j in sorted(pattern.edges()):
        y, z = interiors[(i, j)]
        steps.append(Pivot(y, z))
    for v in sorted(v for ints in interiors.values() for v in ints):
        steps.append(Delete(v))
    return host, PivotWitness(tuple(steps), claimed_target=pattern)


# -- (b) proper fuzzy odd subdivision of a clique -----------------------


def _emit_fuzzy(pattern: Graph, plan: SubdivisionPlan) -> tuple[Graph, PivotWitness]:
    r = pattern.n
    if plan.base != Graph.complete(r):
        raise InvalidPlan("fuzzy emitter needs a plan over the complete graph on the pattern vertices")
    host = build_pfos(plan)
    by_edge = plan.by_edge()
    lengths = {e: by_edge[e].length for e in by_edge}
    interiors = _interior_table(r, lengths, r)
    # tracked state per clique edge: path vertex labels u..v plus chord position
    paths: dict[tuple[int, int], list[int]] = {}
    fuzz_at: dict[tuple[int, int], int | None] = {}
    for (i, j), ints in interiors.items():
        paths[(i, j)] = [i] + ints + [j]
        fuzz_at[(i, j)] = _fuzz_pos_from_low(by_edge[(i, j)])

    steps: list[Step] = []

    def branch_degree(i: int) -> int:
        return r - 1

    def reduce_once() -> bool:
        for key in sorted(paths):
            p = paths[key]
            length = len(p) - 1
            f = fuzz_at[key]
            if length <= 3:
                continue
            if f is None:
                # first run of four consecutive degree-2 vertices
                for i in range(0, length - 2):
                    degs_ok = all(
                        (2 if 0 < i + t < length else branch_degree(p[i + t])) == 2
                        for t in range(4)
                    )
                    if not degs_ok:
                        continue
                    w, x, y, z = p[i], p[i + 1], p[i + 2], p[i + 3]
                    steps.append(Pivot(x, y))
                    steps.append(Delete(x))
                    steps.append(Delete(y))
                    paths[key] = p[:i + 1] + p[i + 3:]
                    return True
            else:
                # fuzz triangle configuration, either orientation
                for w_idx, x_idx, y_idx in ((f - 1, f, f + 1), (f + 3, f + 2, f + 1)):
                    deg_w = 2 if 0 < w_idx < length else branch_degree(p[w_idx])
                    if deg_w != 2:
                        continue
                    x, y = p[x_idx], p[y_idx]
                    steps.append(Pivot(x, y))
                    steps.append(Delete(x))
                    steps.append(Delete(y))
                    lo_removed = min(x_idx, y_idx)
                    paths[key] = p[:lo_removed] + p[lo_removed + 2:]
                    fuzz_at[key] = None
                    return True
                raise PivotGraphError(f"no reducible configuration on edge {key}")
        return False

    def check_intermediate() -> None:
        res: ApplyResult = apply_witness(host, PivotWitness(tuple(steps)))
        where = {orig: cur for cur, orig in enumerate(res.origin)}
        bm = tuple(where[i] for i in range(r))
        verdict = is_pfos(res.graph, Graph.complete(r), bm)
        if not verdict.ok:
            raise PivotGraphError(f"reduction left a non-subdivision state: {verdict.reason}")

    while reduce_once():
        check_intermediate()

    # now every path has length exactly 3: the 2-subdivision case
    for i, j in sorted(pattern.edges()):
        _, y, z, _ = paths[(i, j)]
        steps.append(Pivot(y, z))
    survivors = sorted(v for p in paths.values() for v in p[1:-1])
    for v in survivors:
        steps.append(Delete(v))
    return host, PivotWitness(tuple(steps), claimed_target=pattern)


# -- (c) complement of the 3-subdivided clique, plus an apex ------------


def _emit_cube_join(pattern: Graph) -> tuple[Graph, PivotWitness]:
    r = pattern.n
    k3 = uniform_subdivision(Graph.complete(r), 3)
    host = k3.complement().join(Graph.complete(1))
    apex = k3.n  # join vertex carries the last index
    interiors = _interior_table(r, {e: 4 for e in
                                    ((i, j) for i in range(r) for j in range(i + 1, r))}, r)
    steps: list[Step] = []
    for i in range(r):
        for j in range(i + 1, r):
            if pattern.has_edge(i, j):
                continue
            x1, x2, x3 = interiors[(i, j)]
            steps.append(Pivot(apex, x2))
            steps.append(Pivot(x1, x3))
    for v in sorted([v for ints in interiors.values() for v in ints] + [apex]):
        steps.append(Delete(v))
    return host, PivotWitness(tuple(steps), claimed_target=pattern)


# -- (d) complement of a 1-mod-3 path replacement of a clique ----------


def _emit_mod3(pattern: Graph, plan: SubdivisionPlan) -> tuple[Graph, PivotWitness]:
    r = pattern.n
    if plan.base != Graph.complete(r + 1):
        raise InvalidPlan("mod3 emitter needs a plan over the complete graph on r+1 vertices")
    by_edge = plan.by_edge()
    for key, ep in by_edge.items():
        if ep.fuzz is not None:
            raise InvalidPlan("mod3 plans take no fuzz chords")
        if ep.length < 4 or ep.length % 3 != 1:
            raise InvalidPlan(f"edge {key}: length must be >= 4 and 1 mod 3, got {ep.length}")
    subdiv = path_replacement(Graph.complete(r + 1), plan)
    host = subdiv.complement()
    apex = r  # last branch vertex of the (r+1)-clique becomes the apex
    lengths = {e: by_edge[e].length for e in by_edge}
    interiors = _interior_table(r + 1, lengths, r + 1)

    steps: list[Step] = []
    # free the apex: drop the interiors of every path that touches it
    for i in range(r):
        for v in interiors[(i, apex)]:
            steps.append(Delete(v))

    paths: dict[tuple[int, int], list[int]] = {}
    for i in range(r):
        for j in range(i + 1, r):
            paths[(i, j)] = [i] + interiors[(i, j)] + [j]

    # shorten every remaining path by three until all have length four
    progressing = True
    while progressing:
        progressing = False
        for key in sorted(paths):
            p = paths[key]
            if len(p) - 1 <= 4:
                continue
            x2, x3, x4 = p[1], p[2], p[3]
            steps.append(Pivot(apex, x3))
            steps.append(Pivot(x2, x4))
            steps.append(Delete(x2))
            steps.append(Delete(x3))
            steps.append(Delete(x4))
            paths[key] = [p[0]] + p[4:]
            progressing = True
            break

    # cube-join endgame on the surviving length-4 paths
    for i in range(r):
        for j in range(i + 1, r):
            if pattern.has_edge(i, j):
                continue
            _, x1, x2, x3, _ = paths[(i, j)]
            steps.append(Pivot(apex, x2))
            steps.append(Pivot(x1, x3))
    survivors = sorted([v for p in paths.values() for v in p[1:-1]] + [apex])
    for v in survivors:
        steps.append(Delete(v))
    return host, PivotWitness(tuple(steps), claimed_target=pattern)
