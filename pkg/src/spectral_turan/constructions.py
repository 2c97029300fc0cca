"""Exact constructions of the named graphs: Turan graphs, flowers and the extremal families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, GraphError, graph_from_edges


@dataclass(frozen=True)
class FlowerSpec:
    """``s`` triangles and odd cycles of the given lengths sharing one apex.

    Lengths are kept sorted in descending order, so equal multisets compare
    equal.
    """

    s: int
    lengths: tuple[int, ...] = ()

    def __init__(self, s: int, lengths: Iterable[int] = ()):
        lengths = tuple(sorted((int(t) for t in lengths), reverse=True))
        if s < 0:
            raise ValueError(f"triangle count must be nonnegative, got {s}")
        for t in lengths:
            if t < 5 or t % 2 == 0:
                raise ValueError(f"cycle lengths must be odd and >= 5, got {t}")
        if s + len(lengths) < 1:
            raise ValueError("a flower needs at least one petal")
        object.__setattr__(self, "s", int(s))
        object.__setattr__(self, "lengths", lengths)

    @property
    def k(self) -> int:
        return len(self.lengths)

    @property
    def petals(self) -> int:
        return self.s + self.k

    @property
    def vertex_count(self) -> int:
        return 1 + 2 * self.s + sum(t - 1 for t in self.lengths)

    @property
    def edge_count(self) -> int:
        return 3 * self.s + sum(self.lengths)

    @property
    def c(self) -> int:
        """Longest cycle length in the flower."""
        return max([3] * (self.s > 0) + list(self.lengths))

    @property
    def cycle_lengths(self) -> tuple[int, ...]:
        """All petal lengths, triangles included, longest first."""
        return self.lengths + (3,) * self.s

    def __str__(self) -> str:
        cyc = ",".join(map(str, self.lengths))
        return f"H(s={self.s}; {cyc or '-'})"

    def to_json(self) -> dict:
        return {"s": self.s, "lengths": list(self.lengths)}


# --- utility graphs -----------------------------------------------------------


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph.empty(n)


def path(t: int) -> Graph:
    """P_t, the path on ``t`` vertices."""
    return graph_from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle(t: int) -> Graph:
    if t < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {t}")
    return graph_from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def star(t: int) -> Graph:
    """K_{1,t}: centre 0 and ``t`` leaves."""
    return graph_from_edges(t + 1, [(0, i) for i in range(1, t + 1)])


def matching(t: int) -> Graph:
    """M_t: ``t`` disjoint edges."""
    return graph_from_edges(2 * t, [(2 * i, 2 * i + 1) for i in range(t)])


def complete_bipartite(a: int, b: int) -> Graph:
    return graph_from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, outer + spokes + inner)


def disjoint_copies(g: Graph, copies: int) -> Graph:
    out = Graph.empty(0)
    for _ in range(copies):
        out = out.disjoint_union(g)
    return out


# --- Turan graphs and embeddings ------------------------------------------------


def turan_parts(n: int, r: int) -> list[range]:
    if r < 1:
        raise ValueError(f"need at least one part, got r={r}")
    if n < 0:
        raise ValueError(f"negative order {n}")
    q, rem = divmod(n, r)
    parts, start = [], 0
    for i in range(r):
        size = q + (i < rem)
        parts.append(range(start, start + size))
        start += size
    return parts


def turan(n: int, r: int) -> Graph:
    """T_r(n); part ``i`` occupies a contiguous block, larger parts first."""
    parts = turan_parts(n, r)
    part_of = [0] * n
    for i, p in enumerate(parts):
        for v in p:
            part_of[v] = i
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part_of[u] != part_of[v]])


@dataclass(frozen=True)
class EmbeddedTuranSpec:
    n: int
    q: Graph

    def __post_init__(self) -> None:
        if self.q.n > (self.n + 1) // 2:
            raise ValueError(f"Q on {self.q.n} vertices does not fit in a side of T_2({self.n})")


def embed_into_turan(spec: EmbeddedTuranSpec | int, q: Graph | None = None) -> Graph:
    """T_2(n) with Q placed on the lowest-numbered vertices of the larger side."""
    if not isinstance(spec, EmbeddedTuranSpec):
        if q is None:
            raise TypeError("embed_into_turan(n, q) needs a graph q")
        spec = EmbeddedTuranSpec(spec, q)
    base = turan(spec.n, 2)
    return base.with_edges(add=spec.q.edges())


def flower(spec: FlowerSpec) -> Graph:
    """H_{s,t_1..t_k}: apex 0, then the triangles, then the long cycles."""
    edges = []
    nxt = 1
    for _ in range(spec.s):
        a, b = nxt, nxt + 1
        edges += [(0, a), (a, b), (b, 0)]
        nxt += 2
    for t in spec.lengths:
        seq = list(range(nxt, nxt + t - 1))
        edges += [(0, seq[0]), (seq[-1], 0)]
        edges += list(zip(seq, seq[1:]))
        nxt += t - 1
    return graph_from_edges(nxt, edges)


def cycle_bouquet(k: int, q: int) -> Graph:
    """C_{k,q}: ``k`` cycles of odd length ``q`` through one vertex."""
    if k < 1:
        raise ValueError(f"need at least one cycle, got k={k}")
    if q < 3 or q % 2 == 0:
        raise ValueError(f"cycle length must be odd and >= 3, got q={q}")
    return flower(bouquet_spec(k, q))


def bouquet_spec(k: int, q: int) -> FlowerSpec:
    return FlowerSpec(k, ()) if q == 3 else FlowerSpec(0, (q,) * k)


FAMILY_VARIANTS = ("bipartite", "three_triangles")


def family_q(s: int, k: int, variant: str = "bipartite") -> Graph:
    if variant not in FAMILY_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {FAMILY_VARIANTS}")
    if variant == "three_triangles":
        if (s, k) != (3, 1):
            raise ValueError("the 3K_3 variant exists only for (s, k) = (3, 1)")
        return disjoint_copies(complete(3), 3)
    a = s + k - 1
    return complete_bipartite(a, a)


def extremal_family_member(n: int, s: int, k: int, variant: str = "bipartite") -> Graph:
    """T_2(n) with K_{s+k-1,s+k-1} (or 3K_3 when (s,k)=(3,1)) in the larger side."""
    if s < 0 or k < 0 or s + k < 1:
        raise ValueError(f"invalid petal counts s={s}, k={k}")
    return embed_into_turan(EmbeddedTuranSpec(n, family_q(s, k, variant)))


def family_edge_count(n: int, s: int, k: int) -> int:
    return n * n // 4 + (s + k - 1) ** 2


def fan_q(k: int) -> Graph:
    """The graph embedded by the F_k extremal construction.

    Odd k: two disjoint K_k.  Even k: a graph on 2k-1 vertices with
    k^2 - 3k/2 edges and maximum degree k-1, built as the circulant with
    offsets 1..(k-2)/2 plus the chords i ~ i+k-1 for i < k-1.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k % 2:
        return disjoint_copies(complete(k), 2)
    m = 2 * k - 1
    edges = set()
    for i in range(m):
        for d in range(1, (k - 2) // 2 + 1):
            edges.add(tuple(sorted((i, (i + d) % m))))
    for i in range(k - 1):
        edges.add((i, i + k - 1))
    return graph_from_edges(m, sorted(edges))


def fan_extremal(n: int, k: int) -> Graph:
    need = 4 * k - 1 if k % 2 else 4 * k - 3
    if n < need:
        raise ValueError(f"fan extremal graph for k={k} needs n >= {need}, got {n}")
    return embed_into_turan(EmbeddedTuranSpec(n, fan_q(k)))


def fan_extremal_edge_count(n: int, k: int) -> int:
    extra = k * k - k if k % 2 else k * k - 3 * k // 2
    return n * n // 4 + extra


def split_graph(n: int, k: int) -> Graph:
    """S_{n,k}: clique on vertices 0..k-1 joined to an independent set."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return graph_from_edges(n, [(u, v) for u in range(k) for v in range(u + 1, n)])
