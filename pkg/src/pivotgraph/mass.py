"""Massed graphs: normalized, monotone, subadditive set functions.

Three built-in kinds:
  uniform    mu(X) = |X| / n
  weighted   mu(X) = sum of per-vertex nonnegative rationals (total 1)
  chromatic  mu(X) = chi(G[X]) / chi(G), chromatic numbers computed
             exactly by branch and bound (small tier)

All masses are exact rationals; coherence thresholds use strict
inequalities, so nothing here ever touches floats.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import Oversize
from .graphs import Graph, bits_of, set_of

CHROMATIC_MAX_N = 16


class MassKind(Enum):
    UNIFORM = "uniform"
    WEIGHTED = "weighted"
    CHROMATIC = "chromatic"


def _greedy_colors(g: Graph) -> int:
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    color: dict[int, int] = {}
    best = 0
    for v in order:
        used = {color[u] for u in g.neighbors(v) if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
        best = max(best, c + 1)
    return best


@lru_cache(maxsize=1 << 16)
def _chromatic_rows(rows: tuple[int, ...], n: int) -> int:
    if n == 0:
        return 0
    g = Graph(n, rows)
    if g.edge_count() == 0:
        return 1
    ub = _greedy_colors(g)
    order = sorted(range(n), key=lambda v: -g.degree(v))

    def colorable(k: int) -> bool:
        assign = [-1] * n

        def place(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            forbidden = 0
            for u in g.neighbors(v):
                if assign[u] >= 0:
                    forbidden |= 1 << assign[u]
            for c in range(min(used + 1, k)):
                if (forbidden >> c) & 1:
                    continue
                assign[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                assign[v] = -1
            return False

        return place(0, 0)

    k = 2
    while k < ub:
        if colorable(k):
            return k
        k += 1
    return ub


def chromatic_number(g: Graph, max_n: int = CHROMATIC_MAX_N) -> int:
    """Exact chromatic number by iterative-deepening branch and bound."""
    if g.n > max_n:
        raise Oversize(f"chromatic tier is n <= {max_n}")
    return _chromatic_rows(g.rows, g.n)


@dataclass(frozen=True)
class MassedGraph:
    g: Graph
    kind: MassKind
    weights: tuple[Fraction, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.g.n == 0:
            raise ValueError("massed graphs need at least one vertex")
        if self.kind is MassKind.WEIGHTED:
            if self.weights is None or len(self.weights) != self.g.n:
                raise ValueError("weighted mass needs one weight per vertex")
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be nonnegative")
            if sum(self.weights) != 1:
                raise ValueError("weights must sum to 1")
        elif self.weights is not None:
            raise ValueError(f"{self.kind.value} mass takes no weights")

    @staticmethod
    def uniform(g: Graph) -> "MassedGraph":
        return MassedGraph(g, MassKind.UNIFORM)

    @staticmethod
    def weighted(g: Graph, weights: Iterable[Fraction]) -> "MassedGraph":
        return MassedGraph(g, MassKind.WEIGHTED, tuple(Fraction(w) for w in weights))

    @staticmethod
    def chromatic(g: Graph) -> "MassedGraph":
        if g.n > CHROMATIC_MAX_N:
            raise Oversize(f"chromatic tier is n <= {CHROMATIC_MAX_N}")
        return MassedGraph(g, MassKind.CHROMATIC)

    @property
    def additive(self) -> bool:
        return self.kind in (MassKind.UNIFORM, MassKind.WEIGHTED)

    def mass_mask(self, mask: int) -> Fraction:
        if mask & ~self.g.full_mask:
            raise ValueError("mask outside the graph")
        if self.kind is MassKind.UNIFORM:
            return Fraction(mask.bit_count(), self.g.n)
        if self.kind is MassKind.WEIGHTED:
            assert self.weights is not None
            return sum((self.weights[v] for v in bits_of(mask)), Fraction(0))
        hit = self._cache.get(mask)
        if hit is not None:
            return hit
        sub = self.g.induced(set_of(mask))
        val = Fraction(chromatic_number(sub), chromatic_number(self.g))
        self._cache[mask] = val
        return val

    def mass(self, x: Iterable[int]) -> Fraction:
        return self.mass_mask(self.g.check_set(x))

    def integer_weights(self) -> tuple[tuple[int, ...], int] | None:
        """Per-vertex numerators over a common denominator, for the
        additive kinds; None when that is unsafe or not applicable."""
        if self.kind is MassKind.UNIFORM:
            return (1,) * self.g.n, self.g.n
        if self.kind is MassKind.WEIGHTED:
            assert self.weights is not None
            denom = 1
            for w in self.weights:
                denom = denom * w.denominator // math.gcd(denom, w.denominator)
            if denom > 1 << 40:
                return None
            return tuple(int(w * denom) for w in self.weights), denom
        return None


def massed_graph_to_json(mg: MassedGraph) -> str:
    from .codec import encode_graph6
    mass: dict = {"kind": mg.kind.value}
    if mg.kind is MassKind.WEIGHTED:
        assert mg.weights is not None
        mass["weights"] = [str(w) for w in mg.weights]
    return json.dumps({"graph": encode_graph6(mg.g), "mass": mass}, sort_keys=True)


def massed_graph_from_json(text: str) -> MassedGraph:
    from .codec import decode_graph6
    obj = json.loads(text)
    g = decode_graph6(obj["graph"])
    mass = obj["mass"]
    kind = MassKind(mass["kind"])
    if kind is MassKind.UNIFORM:
        return MassedGraph.uniform(g)
    if kind is MassKind.WEIGHTED:
        return MassedGraph.weighted(g, [Fraction(w) for w in mass["weights"]])
    return MassedGraph.chromatic(g)
