"""Simple undirected graphs stored as bit rows.

Row ``u`` is a Python int whose bit ``v`` is set iff ``uv`` is an edge.  Graphs
are immutable; every operation returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_DENSE_N = 10_000


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, bad encodings)."""


def _popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``{0, ..., n-1}`` held as a bit mask."""

    mask: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        m = 0
        for v in vertices:
            if v < 0:
                raise GraphError(f"negative vertex {v}")
            m |= 1 << v
        return cls(m)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return _popcount(self.mask)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~other.mask)

    def sorted(self) -> list[int]:
        return list(iter_bits(self.mask))


def as_mask(vs: VertexSet | Iterable[int]) -> int:
    if isinstance(vs, VertexSet):
        return vs.mask
    return VertexSet.of(vs).mask


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, r in enumerate(self.rows):
            if r < 0 or r & ~full:
                raise GraphError(f"row {v} has bits outside 0..{self.n - 1}")
            if r >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for w in iter_bits(r):
                if not self.rows[w] >> v & 1:
                    raise GraphError(f"adjacency is not symmetric at ({v}, {w})")

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        """Skip validation; for internal callers whose rows are symmetric by construction."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    # --- elementary queries -------------------------------------------------

    @cached_property
    def edge_count(self) -> int:
        return sum(_popcount(r) for r in self.rows) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return _popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [_popcount(r) for r in self.rows]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return list(iter_bits(self.rows[v]))

    def d_within(self, v: int, s: VertexSet | Iterable[int]) -> int:
        """|N(v) & S|."""
        self._check(v)
        return _popcount(self.rows[v] & as_mask(s))

    def edges_within(self, s: VertexSet | Iterable[int]) -> int:
        m = as_mask(s)
        return sum(_popcount(self.rows[v] & m) for v in iter_bits(m)) // 2

    def cut_edges(self, s: VertexSet | Iterable[int], t: VertexSet | Iterable[int]) -> int:
        """Edges with one end in S and the other in T.

        An edge with both ends in ``S & T`` is counted once.
        """
        sm, tm = as_mask(s), as_mask(t)
        total = sum(_popcount(self.rows[v] & tm) for v in iter_bits(sm))
        return total - self.edges_within(VertexSet(sm & tm))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def components(self) -> list[int]:
        """Vertex masks of connected components, ordered by lowest vertex."""
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in iter_bits(frontier):
                    nxt |= self.rows[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_bipartite(self) -> bool:
        color: dict[int, int] = {}
        for start in range(self.n):
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in iter_bits(self.rows[u]):
                    if w not in color:
                        color[w] = color[u] ^ 1
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    # --- derived graphs ---------------------------------------------------------

    def induced_subgraph(self, s: VertexSet | Iterable[int]) -> "Graph":
        keep = list(iter_bits(as_mask(s) & self.all_mask))
        pos = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for w in iter_bits(self.rows[v]):
                i = pos.get(w)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        return Graph._trusted(len(keep), tuple(rows))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``order[i]``."""
        if sorted(order) != list(range(self.n)):
            raise GraphError("order must be a permutation of the vertices")
        inv = [0] * self.n
        for i, v in enumerate(order):
            inv[v] = i
        rows = []
        for v in order:
            r = 0
            for w in iter_bits(self.rows[v]):
                r |= 1 << inv[w]
            rows.append(r)
        return Graph._trusted(self.n, tuple(rows))

    def with_edges(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = ()) -> "Graph":
        rows = list(self.rows)
        for u, v in remove:
            self._check(u)
            self._check(v)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        for u, v in add:
            self._check(u)
            self._check(v)
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph._trusted(self.n, tuple(rows))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph._trusted(self.n + other.n, self.rows + tuple(r << shift for r in other.rows))

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        if self.n > MAX_DENSE_N:
            raise GraphError(f"dense adjacency limited to n <= {MAX_DENSE_N}")
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        e = self.edges()
        if not e:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        arr = np.asarray(e, dtype=np.int64)
        return arr[:, 0], arr[:, 1]


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, tuple(rows))


def common_intersection_lower_bound(sizes: Sequence[int], union_size: int) -> int:
    """Lower bound on |A_1 & ... & A_p| from the sizes and the size of the union.

    Each element outside the intersection is missed by at least one set, so
    sum |A_i| <= p*|I| + (p-1)*(|U| - |I|).
    """
    if not sizes:
        raise ValueError("need at least one set")
    if any(s > union_size or s < 0 for s in sizes):
        raise ValueError("set sizes must lie in 0..union_size")
    return sum(sizes) - (len(sizes) - 1) * union_size


# --- graph6 --------------------------------------------------------------------


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n < 1 << 36:
        return [63, 63] + [(n >> s) & 63 for s in range(30, -1, -6)]
    raise GraphError(f"n={n} too large for graph6")


def to_graph6(g: Graph) -> str:
    """graph6 line for ``g`` (no header, no newline)."""
    out = _encode_n(g.n)
    bits = []
    for j in range(1, g.n):
        rj = g.rows[j]
        for i in range(j):
            bits.append(rj >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v)
    return "".join(chr(c + 63) for c in out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise GraphError("graph6 bytes must lie in 63..126")
    if data[0] != 63:
        n, body = data[0], data[1:]
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise GraphError("truncated graph6 length header")
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        body = data[8:]
    else:
        if len(data) < 4:
            raise GraphError("truncated graph6 length header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise GraphError("graph6 padding bits are not zero")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))


def parse_edge_list(text: str) -> Graph:
    """Plain text: first token is n, then whitespace-separated ``u v`` pairs."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    tokens = " ".join(ln for ln in lines if ln).split()
    if not tokens:
        raise GraphError("empty edge list")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    n, rest = nums[0], nums[1:]
    if len(rest) % 2:
        raise GraphError("edge list has an odd number of endpoint tokens")
    return graph_from_edges(n, zip(rest[0::2], rest[1::2]))


def read_graphs(text: str) -> list[Graph]:
    """Parse either one edge-list graph or any number of graph6 lines."""
    stripped = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not stripped:
        raise GraphError("no graph in input")
    first = stripped[0].split()
    if first and first[0].lstrip("-").isdigit():
        return [parse_edge_list(text)]
    return [parse_graph6(ln) for ln in stripped]


# --- canonical forms ------------------------------------------------------------

CANON_MAX_N = 16


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """``(certificate, order)`` with ``order[i]`` the vertex at canonical position i.

    The certificate is the lexicographically largest graph6 bit string
    reachable by the refinement search, read as an integer.
    """
    from ._backend import kernels

    if g.n > CANON_MAX_N:
        raise GraphError(f"canonical forms are limited to n <= {CANON_MAX_N}")
    return kernels.canon(g.n, g.rows)


def canonical_form(g: Graph) -> Graph:
    _, order = canonical_labeling(g)
    return g.relabel(order)


def certificate(g: Graph) -> tuple[int, int]:
    """Hashable isomorphism invariant that is complete: equal iff isomorphic."""
    return g.n, canonical_labeling(g)[0]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.edge_count == h.edge_count and certificate(g) == certificate(h)
