"""Dense labeled simple graphs over bit-packed adjacency rows.

Vertices are the integers 0..n-1.  ``rows[v]`` is an int whose bit ``u`` is
set iff ``u`` and ``v`` are adjacent.  Rows are plain Python ints, so any
``n`` is representable; exhaustive searches elsewhere enforce their own
size tiers.  All values are immutable and safe to share across threads.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import InvalidSet

EXHAUSTIVE_MAX_N = 64


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits_of(mask))


@dataclass(frozen=True)
class Graph:
    """Simple graph: symmetric, irreflexive, dense indices in [0, n)."""

    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError("rows length must equal n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside [0, n)")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
        for v, row in enumerate(self.rows):
            for u in bits_of(row):
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"asymmetric edge {v},{u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal n")

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   labels: tuple[str, ...] | None = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge {u},{v}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows), labels)

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << v) for v in range(n)))

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    # -- accessors ---------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors_mask(self, v: int) -> int:
        return self.rows[v]

    def closed_mask(self, v: int) -> int:
        return self.rows[v] | (1 << v)

    def neighbors(self, v: int) -> list[int]:
        return list(bits_of(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            for u in bits_of(self.rows[v] >> (v + 1) << (v + 1)):
                out.append((v, u))
        return out

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def check_set(self, x: Iterable[int]) -> int:
        """Validate a vertex set for this graph and return it as a mask."""
        m = mask_of(x)
        if m & ~self.full_mask or m < 0:
            raise InvalidSet(f"vertex set {sorted(set_of(m & ~0))} not within [0, {self.n})")
        return m

    # -- basic operations --------------------------------------------

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple((full ^ self.rows[v]) & ~(1 << v) for v in range(self.n)),
                     self.labels)

    def join(self, other: "Graph") -> "Graph":
        """Disjoint union plus every cross edge."""
        n = self.n + other.n
        mine = ((1 << other.n) - 1) << self.n
        rows = [self.rows[v] | mine for v in range(self.n)]
        base = (1 << self.n) - 1
        rows += [(other.rows[v] << self.n) | base for v in range(other.n)]
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = self.labels + other.labels
        return Graph(n, tuple(rows), labels)

    def induced(self, x: Iterable[int]) -> "Graph":
        """Induced subgraph on ``x``; kept vertices are reindexed in
        ascending order (new index i = i-th smallest member of x)."""
        mask = self.check_set(x)
        keep = list(bits_of(mask))
        pos = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for u in bits_of(self.rows[v] & mask):
                r |= 1 << pos[u]
            rows.append(r)
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[v] for v in keep)
        return Graph(len(keep), tuple(rows), labels)

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced(set_of(self.full_mask & ~(1 << v)))

    def neighborhood_of_set(self, mask: int) -> int:
        """Open neighborhood N(S) as a mask (may intersect S)."""
        out = 0
        for v in bits_of(mask):
            out |= self.rows[v]
        return out

    def closed_neighborhood_of_set(self, mask: int) -> int:
        return mask | self.neighborhood_of_set(mask)

    # -- distances ---------------------------------------------------

    def distances(self, v: int, within: int | None = None) -> list[int]:
        """BFS distances from v (-1 where unreachable).  ``within``
        restricts the walk to an induced vertex-mask; v must be in it."""
        allowed = self.full_mask if within is None else within
        dist = [-1] * self.n
        if not (allowed >> v) & 1:
            raise InvalidSet("source outside the restriction mask")
        dist[v] = 0
        frontier = 1 << v
        seen = frontier
        d = 0
        while frontier:
            nxt = 0
            for u in bits_of(frontier):
                nxt |= self.rows[u]
            nxt &= allowed & ~seen
            d += 1
            for u in bits_of(nxt):
                dist[u] = d
            seen |= nxt
            frontier = nxt
        return dist

    def ball(self, v: int, r: int) -> frozenset[int]:
        """Vertices at distance <= r from v (the closed r-ball)."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        dist = self.distances(v)
        return frozenset(u for u in range(self.n) if 0 <= dist[u] <= r)

    def shell(self, v: int, r: int) -> frozenset[int]:
        """Vertices at distance exactly r from v."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        dist = self.distances(v)
        return frozenset(u for u in range(self.n) if dist[u] == r)

    def is_connected_set(self, mask: int) -> bool:
        """True iff the induced subgraph on a nonempty mask is connected."""
        if mask == 0:
            return False
        start = (mask & -mask).bit_length() - 1
        reached = 1 << start
        frontier = reached
        while frontier:
            nxt = 0
            for u in bits_of(frontier):
                nxt |= self.rows[u]
            nxt &= mask & ~reached
            reached |= nxt
            frontier = nxt
        return reached == mask

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in bits_of(self.rows[v]):
                    if color[u] == -1:
                        color[u] = color[v] ^ 1
                        queue.append(u)
                    elif color[u] == color[v]:
                        return False
        return True


class Relation(Enum):
    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"
    MIXED = "mixed"
    OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class PairRelation:
    kind: Relation
    degenerate: bool  # set when either side is empty (vacuously both complete and anticomplete)


def pair_relation(g: Graph, a: Iterable[int], b: Iterable[int]) -> PairRelation:
    """Classify the cross edges between two vertex sets.

    Overlapping sets are reported as such.  An empty side makes the pair
    vacuously complete and anticomplete; by convention that is reported
    as anticomplete with the degenerate flag set, so callers cannot
    mistake a vacuous pair for a witness.
    """
    am = g.check_set(a)
    bm = g.check_set(b)
    if am & bm:
        return PairRelation(Relation.OVERLAPPING, False)
    if am == 0 or bm == 0:
        return PairRelation(Relation.ANTICOMPLETE, True)
    cross = 0
    want = am.bit_count() * bm.bit_count()
    for v in bits_of(am):
        cross += (g.rows[v] & bm).bit_count()
    if cross == 0:
        return PairRelation(Relation.ANTICOMPLETE, False)
    if cross == want:
        return PairRelation(Relation.COMPLETE, False)
    return PairRelation(Relation.MIXED, False)
