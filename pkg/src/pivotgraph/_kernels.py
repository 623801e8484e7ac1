"""Hot subset-sweep kernels with two interchangeable backends.

The anticomplete-pair maximizer and the focusedness scan both walk all
2^n vertex subsets; that inner loop dominates the runtime of the
coherence checks.  The default backend compiles the loops with numba's
@njit; a pure-numpy vectorized path gives identical results and is
selected either automatically (numba missing) or explicitly via

    PIVOTGRAPH_BACKEND=numpy | numba

Both backends work on integer mass numerators over a common
denominator, so results are exact; callers convert back to Fractions.
``bench/bench_kernels.py`` compares the two.
"""
from __future__ import annotations

import os

import numpy as np

BACKEND_ENV = "PIVOTGRAPH_BACKEND"
KERNEL_MAX_N = 30  # bit masks stay comfortably inside int64

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        if args and callable(args[0]):
            return args[0]
        return wrap


def _resolve_backend() -> str:
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise RuntimeError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError(f"{BACKEND_ENV}=numba but numba is not importable")
    if choice == "numpy":
        return "numpy"
    return "numba" if HAVE_NUMBA else "numpy"


ACTIVE_BACKEND = _resolve_backend()


# -- anticomplete-pair sweep ---------------------------------------------
# For every nonempty seed S the maximal anticomplete partner is
# V \ N[S]; the sweep scores min(w(S), w(V \ N[S])) and keeps the best
# seed, ties broken by the smaller seed mask.  Returns (-1, 0, 0) when
# no seed has a nonempty partner.


@njit(cache=True)
def _sweep_numba(closed: np.ndarray, weights: np.ndarray, n: int):  # pragma: no cover - compiled
    full = (1 << n) - 1
    best = np.int64(-1)
    best_a = np.int64(0)
    best_b = np.int64(0)
    for s in range(1, full + 1):
        ws = np.int64(0)
        nbh = np.int64(0)
        for v in range(n):
            if s & (1 << v):
                ws += weights[v]
                nbh |= closed[v]
        b = full & ~nbh
        if b == 0:
            continue
        wb = np.int64(0)
        for v in range(n):
            if b & (1 << v):
                wb += weights[v]
        val = ws if ws < wb else wb
        if val > best:
            best = val
            best_a = s
            best_b = b
    return best, best_a, best_b


_SWEEP_CHUNK = 1 << 16


def _sweep_numpy(closed: np.ndarray, weights: np.ndarray, n: int):
    full = (1 << n) - 1
    best = np.int64(-1)
    best_a = np.int64(0)
    best_b = np.int64(0)
    for start in range(1, full + 1, _SWEEP_CHUNK):
        stop = min(start + _SWEEP_CHUNK, full + 1)
        s = np.arange(start, stop, dtype=np.int64)
        ws = np.zeros(len(s), dtype=np.int64)
        nbh = np.zeros(len(s), dtype=np.int64)
        for v in range(n):
            has = ((s >> v) & 1).astype(bool)
            ws[has] += weights[v]
            nbh[has] |= closed[v]
        b = full & ~nbh
        wb = np.zeros(len(s), dtype=np.int64)
        for v in range(n):
            has = ((b >> v) & 1).astype(bool)
            wb[has] += weights[v]
        val = np.minimum(ws, wb)
        val[b == 0] = -1
        i = int(np.argmax(val))  # first maximum = smallest seed in-chunk
        if val[i] > best:
            best = np.int64(val[i])
            best_a = np.int64(s[i])
            best_b = np.int64(b[i])
    return best, best_a, best_b


def anticomplete_sweep(closed_masks: list[int], weight_nums: list[int],
                       backend: str | None = None) -> tuple[int, int, int]:
    """Best (min-side numerator, seed mask, partner mask); -1 when no
    anticomplete pair exists."""
    n = len(closed_masks)
    if n > KERNEL_MAX_N:
        raise ValueError(f"kernel tier is n <= {KERNEL_MAX_N}")
    closed = np.asarray(closed_masks, dtype=np.int64)
    weights = np.asarray(weight_nums, dtype=np.int64)
    which = backend or ACTIVE_BACKEND
    if which == "numba":
        best, a, b = _sweep_numba(closed, weights, n)
    else:
        best, a, b = _sweep_numpy(closed, weights, n)
    return int(best), int(a), int(b)


# -- focusedness scan ----------------------------------------------------
# Scan subsets Z in (cardinality, mask) order; a subset violates when
# q*w(Z) >= p*D but no member's in-Z r-ball reaches half of w(Z).


@njit(cache=True)
def _focused_numba(adj: np.ndarray, weights: np.ndarray, n: int, r: int,
                   pd: np.int64, q: np.int64):  # pragma: no cover - compiled
    for k in range(1, n + 1):
        z = np.int64((1 << k) - 1)
        last = np.int64(((1 << k) - 1) << (n - k))
        while True:
            wz = np.int64(0)
            for v in range(n):
                if z & (1 << v):
                    wz += weights[v]
            if q * wz >= pd:
                ok = False
                for v in range(n):
                    if not (z & (1 << v)):
                        continue
                    ball = np.int64(1 << v)
                    for _ in range(r):
                        nxt = ball
                        for w in range(n):
                            if ball & (1 << w):
                                nxt |= adj[w]
                        nxt &= z
                        if nxt == ball:
                            break
                        ball = nxt
                    wb = np.int64(0)
                    for w in range(n):
                        if ball & (1 << w):
                            wb += weights[w]
                    if 2 * wb >= wz:
                        ok = True
                        break
                if not ok:
                    return z
            if z == last:
                break
            c = z & (-z)
            rr = z + c
            z = (((rr ^ z) >> 2) // c) | rr
    return np.int64(-1)


def _focused_numpy(adj: np.ndarray, weights: np.ndarray, n: int, r: int,
                   pd: int, q: int):
    total = 1 << n
    masks = np.arange(total, dtype=np.int64)
    pops = np.zeros(total, dtype=np.int64)
    for v in range(n):
        pops += (masks >> v) & 1
    order = np.lexsort((masks, pops))
    for start in range(0, total, _SWEEP_CHUNK):
        z = masks[order[start:start + _SWEEP_CHUNK]]
        z = z[pops[order[start:start + _SWEEP_CHUNK]] > 0]
        if len(z) == 0:
            continue
        wz = np.zeros(len(z), dtype=np.int64)
        for v in range(n):
            wz[((z >> v) & 1).astype(bool)] += weights[v]
        heavy = q * wz >= pd
        if not heavy.any():
            continue
        zc = z[heavy]
        wzc = wz[heavy]
        ok = np.zeros(len(zc), dtype=bool)
        for v in range(n):
            member = ((zc >> v) & 1).astype(bool)
            ball = np.where(member, np.int64(1 << v), np.int64(0))
            for _ in range(r):
                acc = np.zeros(len(zc), dtype=np.int64)
                for w in range(n):
                    acc[((ball >> w) & 1).astype(bool)] |= adj[w]
                ball = (ball | acc) & zc
            wb = np.zeros(len(zc), dtype=np.int64)
            for w in range(n):
                wb[((ball >> w) & 1).astype(bool)] += weights[w]
            ok |= member & (2 * wb >= wzc)
        bad = ~ok
        if bad.any():
            return int(zc[int(np.argmax(bad))])
    return -1


def focused_scan(adj_masks: list[int], weight_nums: list[int], r: int,
                 p_times_denom: int, q: int,
                 backend: str | None = None) -> int:
    """First violating subset in (cardinality, mask) order, or -1."""
    n = len(adj_masks)
    if n > KERNEL_MAX_N:
        raise ValueError(f"kernel tier is n <= {KERNEL_MAX_N}")
    if max(p_times_denom, q * sum(weight_nums)) >= 1 << 62:
        raise OverflowError("threshold too large for the integer kernels")
    adj = np.asarray(adj_masks, dtype=np.int64)
    weights = np.asarray(weight_nums, dtype=np.int64)
    which = backend or ACTIVE_BACKEND
    if which == "numba":
        return int(_focused_numba(adj, weights, n, r, np.int64(p_times_denom), np.int64(q)))
    return _focused_numpy(adj, weights, n, r, p_times_denom, q)
