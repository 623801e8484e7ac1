"""graph6 and plain edge-list text codecs.

graph6 follows McKay's format: an order field N(n) then the upper
triangle of the adjacency matrix in column-major order, packed into
6-bit groups offset by 63.  Both the short (n <= 62) and the two long
order forms are supported.
"""
from __future__ import annotations

from .errors import MalformedGraph6, Oversize
from .graphs import Graph

DEFAULT_DECODE_MAX_N = 4096


def _pair_index_iter(n: int):
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = [chr(126)]
        out += [chr(63 + ((n >> s) & 63)) for s in (12, 6, 0)]
    elif n <= 68719476735:
        out = [chr(126), chr(126)]
        out += [chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0)]
    else:
        raise Oversize("graph6 cannot encode n > 68719476735")
    acc = 0
    nbits = 0
    for i, j in _pair_index_iter(n):
        acc = (acc << 1) | ((g.rows[j] >> i) & 1)
        nbits += 1
        if nbits == 6:
            out.append(chr(acc + 63))
            acc = 0
            nbits = 0
    if nbits:
        acc <<= 6 - nbits
        out.append(chr(acc + 63))
    return "".join(out)


def decode_graph6(text: str, max_n: int = DEFAULT_DECODE_MAX_N) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedGraph6("empty line")
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise MalformedGraph6(f"character out of range in {s!r}")
    if data[0] < 63:
        n = data[0]
        body = data[1:]
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise MalformedGraph6("truncated long order field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        if len(data) < 8:
            raise MalformedGraph6("truncated very long order field")
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        body = data[8:]
    if n > max_n:
        raise Oversize(f"decoded n={n} exceeds limit {max_n}")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(f"body length {len(body)}, expected {need} for n={n}")
    rows = [0] * n
    k = 0
    for i, j in _pair_index_iter(n):
        if (body[k // 6] >> (5 - k % 6)) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        k += 1
    # padding bits must be zero
    if k % 6 and body and body[-1] & ((1 << (6 - k % 6)) - 1):
        raise MalformedGraph6("nonzero padding bits")
    return Graph(n, tuple(rows))


def encode_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def decode_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("edge-list header must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)
