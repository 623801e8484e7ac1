"""Coherence and focusedness predicates, plus the complete/anticomplete
pair machinery they share.

The anticomplete maximizer sweeps seeds S over all subsets: every
anticomplete pair (A, B) is dominated by (A, V \\ N[A]) because masses
are monotone, so scoring min(mu(S), mu(V \\ N[S])) over all seeds is
exact.  Additive masses run on the compiled kernels; the chromatic mass
falls back to a direct sweep with the mass oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import _kernels
from .errors import Oversize
from .graphs import Graph, Relation, bits_of, mask_of, set_of
from .mass import MassedGraph, MassKind

SWEEP_MAX_N = 24
SWEEP_MAX_N_ORACLE = 12
FOCUSED_MAX_N = 20
FOCUSED_MAX_N_ORACLE = 10


@dataclass(frozen=True)
class Violation:
    kind: str  # vertex-mass | neighborhood-mass | ball-mass | anticomplete-pair | focus-witness
    vertex: int | None = None
    r: int | None = None
    pair: tuple[frozenset[int], frozenset[int]] | None = None
    witness: frozenset[int] | None = None
    value: Fraction | None = None


@dataclass(frozen=True)
class CoherenceVerdict:
    coherent: bool
    violation: Violation | None = None


@dataclass(frozen=True)
class AnticompleteBest:
    value: Fraction
    a: frozenset[int]
    b: frozenset[int]


def _sweep_oracle(mg: MassedGraph) -> tuple[Fraction, int, int]:
    g = mg.g
    full = g.full_mask
    best = (Fraction(-1), 0, 0)
    for s in range(1, full + 1):
        b = full & ~g.closed_neighborhood_of_set(s)
        if b == 0:
            continue
        val = min(mg.mass_mask(s), mg.mass_mask(b))
        if val > best[0]:
            best = (val, s, b)
    return best


def max_anticomplete_pair(mg: MassedGraph, max_n: int | None = None) -> AnticompleteBest:
    """Exact maximizer of min(mu(A), mu(B)) over anticomplete pairs.

    Ties are broken by the smallest seed mask.  Complete graphs (no
    anticomplete pair at all) report value 0 with empty witnesses.
    """
    g = mg.g
    cap = max_n if max_n is not None else (SWEEP_MAX_N if mg.additive else SWEEP_MAX_N_ORACLE)
    if g.n > cap:
        raise Oversize(f"anticomplete sweep tier is n <= {cap} for this mass kind")
    iw = mg.integer_weights() if g.n <= _kernels.KERNEL_MAX_N else None
    if iw is not None:
        nums, denom = iw
        closed = [g.closed_mask(v) for v in range(g.n)]
        best, a, b = _kernels.anticomplete_sweep(closed, list(nums))
        if best < 0:
            return AnticompleteBest(Fraction(0), frozenset(), frozenset())
        return AnticompleteBest(Fraction(best, denom), set_of(a), set_of(b))
    val, a, b = _sweep_oracle(mg)
    if val < 0:
        return AnticompleteBest(Fraction(0), frozenset(), frozenset())
    return AnticompleteBest(val, set_of(a), set_of(b))


def check_coherent(mg: MassedGraph, eps: Fraction,
                   max_n: int | None = None) -> CoherenceVerdict:
    """Vertex masses, open-neighborhood masses, and the best
    anticomplete pair must all stay strictly below eps."""
    eps = Fraction(eps)
    g = mg.g
    for v in range(g.n):
        val = mg.mass_mask(1 << v)
        if val >= eps:
            return CoherenceVerdict(False, Violation("vertex-mass", vertex=v, value=val))
    for v in range(g.n):
        val = mg.mass_mask(g.neighbors_mask(v))
        if val >= eps:
            return CoherenceVerdict(False, Violation("neighborhood-mass", vertex=v, value=val))
    best = max_anticomplete_pair(mg, max_n=max_n)
    if best.a and best.value >= eps:
        return CoherenceVerdict(False, Violation("anticomplete-pair", pair=(best.a, best.b),
                                                 value=best.value))
    return CoherenceVerdict(True)


def check_r_coherent(mg: MassedGraph, eps: Fraction, r: int,
                     max_n: int | None = None) -> CoherenceVerdict:
    """Closed r-ball masses plus the anticomplete bullet."""
    if r < 1:
        raise ValueError("r must be >= 1")
    eps = Fraction(eps)
    g = mg.g
    for v in range(g.n):
        val = mg.mass_mask(mask_of(g.ball(v, r)))
        if val >= eps:
            return CoherenceVerdict(False, Violation("ball-mass", vertex=v, r=r, value=val))
    best = max_anticomplete_pair(mg, max_n=max_n)
    if best.a and best.value >= eps:
        return CoherenceVerdict(False, Violation("anticomplete-pair", pair=(best.a, best.b),
                                                 value=best.value))
    return CoherenceVerdict(True)


def _focused_oracle(mg: MassedGraph, delta: Fraction, r: int) -> int:
    g = mg.g
    n = g.n
    subsets = sorted(range(1, 1 << n), key=lambda m: (m.bit_count(), m))
    for z in subsets:
        wz = mg.mass_mask(z)
        if wz < delta:
            continue
        ok = False
        for v in bits_of(z):
            ball = 1 << v
            for _ in range(r):
                nxt = ball
                for w in bits_of(ball):
                    nxt |= g.rows[w]
                nxt &= z
                if nxt == ball:
                    break
                ball = nxt
            if mg.mass_mask(ball) >= wz / 2:
                ok = True
                break
        if not ok:
            return z
    return -1


def check_focused(mg: MassedGraph, delta: Fraction, r: int,
                  max_n: int | None = None) -> CoherenceVerdict:
    """Exact (delta, r)-focusedness by subset enumeration: every subset
    of mass >= delta must hold a vertex whose in-subset r-ball carries
    half the subset's mass.  On failure the reported subset has minimum
    cardinality, smallest mask among those."""
    if r < 1:
        raise ValueError("r must be >= 1")
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    g = mg.g
    cap = max_n if max_n is not None else (FOCUSED_MAX_N if mg.additive else FOCUSED_MAX_N_ORACLE)
    if g.n > cap:
        raise Oversize(f"focusedness tier is n <= {cap} for this mass kind")
    z = -1
    used_kernel = False
    if g.n <= _kernels.KERNEL_MAX_N:
        iw = mg.integer_weights()
        if iw is not None:
            nums, denom = iw
            try:
                z = _kernels.focused_scan([g.neighbors_mask(v) for v in range(g.n)],
                                          list(nums), r,
                                          delta.numerator * denom, delta.denominator)
                used_kernel = True
            except OverflowError:
                used_kernel = False
    if not used_kernel:
        z = _focused_oracle(mg, delta, r)
    if z < 0:
        return CoherenceVerdict(True)
    return CoherenceVerdict(False, Violation("focus-witness", r=r, witness=set_of(z),
                                             value=mg.mass_mask(z)))


def is_dominant(mg: MassedGraph, x: Iterable[int], delta: Fraction) -> bool:
    """mu(N[X]) >= delta."""
    mask = mg.g.check_set(x)
    return mg.mass_mask(mg.g.closed_neighborhood_of_set(mask)) >= Fraction(delta)


@dataclass(frozen=True)
class EhResult:
    value: Fraction
    a: frozenset[int]
    b: frozenset[int]
    polarity: Relation


def eh_ratio(g: Graph, max_n: int = SWEEP_MAX_N) -> EhResult:
    """(1/n) * max over disjoint complete-or-anticomplete pairs of
    min(|A|, |B|): the anticomplete sweep on the graph and on its
    complement.  Ties report the anticomplete side."""
    if g.n == 0:
        raise ValueError("eh ratio needs at least one vertex")
    anti = max_anticomplete_pair(MassedGraph.uniform(g), max_n=max_n)
    comp = max_anticomplete_pair(MassedGraph.uniform(g.complement()), max_n=max_n)
    if comp.value > anti.value:
        return EhResult(comp.value, comp.a, comp.b, Relation.COMPLETE)
    return EhResult(anti.value, anti.a, anti.b, Relation.ANTICOMPLETE)
