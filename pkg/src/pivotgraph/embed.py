"""Exhaustive induced-subgraph embedding."""
from __future__ import annotations

from .errors import BudgetExhausted
from .graphs import Graph

DEFAULT_EMBED_BUDGET = 2_000_000


def induced_embedding(pattern: Graph, host: Graph,
                      budget: int = DEFAULT_EMBED_BUDGET) -> tuple[int, ...] | None:
    """Injective map phi with u~v in pattern iff phi(u)~phi(v) in host.

    Pattern vertices are assigned in index order and host candidates
    tried in ascending order, so the first hit is the lexicographically
    least embedding.  Returns None only when the full search space was
    exhausted within budget; otherwise raises BudgetExhausted.
    """
    k = pattern.n
    if k > host.n:
        return None
    assignment: list[int] = []
    used = 0
    nodes = 0

    def extend() -> tuple[int, ...] | None:
        nonlocal used, nodes
        i = len(assignment)
        if i == k:
            return tuple(assignment)
        for cand in range(host.n):
            if (used >> cand) & 1:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(f"induced embedding budget {budget} hit")
            ok = True
            for j in range(i):
                if pattern.has_edge(j, i) != host.has_edge(assignment[j], cand):
                    ok = False
                    break
            if not ok:
                continue
            assignment.append(cand)
            used |= 1 << cand
            found = extend()
            if found is not None:
                return found
            assignment.pop()
            used &= ~(1 << cand)
        return None

    return extend()
