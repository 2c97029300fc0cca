"""Flower containment and the structural statistics used around it.

The flower search pins an apex ``v`` and reformulates each petal of length
``t`` as a path on ``t - 1`` vertices of ``G - v`` whose ends both lie in
``N(v)``.  Triangles are placed first (as disjoint edges inside ``N(v)``),
then the long cycles, longest first.  Several sound prunes keep desk-scale
instances fast:

* odd-cycle transversal: petals are odd cycles through ``v`` that are
  disjoint away from ``v``, so a set of fewer than ``s + k`` vertices avoiding
  ``v`` whose removal leaves a bipartite graph rules ``v`` out;
* an independent set ``J`` bounds how many vertices a path can take from it;
* walk-parity layers: a path with ``r`` edges still to go must start at a
  vertex with a walk of length exactly ``r`` to ``N(v)`` inside the
  remaining vertices;
* failed ``(stage, remaining vertices, symmetry bound)`` states are
  memoised per apex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .constructions import FlowerSpec, flower
from .graph import Graph, GraphError, VertexSet, as_mask, iter_bits
from .matching import maximum_matching, matching_number


@dataclass(frozen=True)
class FlowerEmbedding:
    apex: int
    triangles: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]

    def vertices(self) -> list[int]:
        out = [self.apex]
        for a, b in self.triangles:
            out += [a, b]
        for c in self.cycles:
            out += list(c)
        return out

    def verify(self, g: Graph, spec: FlowerSpec) -> bool:
        """Re-check the embedding against ``g`` from scratch."""
        vs = self.vertices()
        if len(vs) != len(set(vs)) or any(not 0 <= x < g.n for x in vs):
            return False
        if len(self.triangles) != spec.s or len(self.cycles) != spec.k:
            return False
        if sorted((len(c) + 1 for c in self.cycles), reverse=True) != list(spec.lengths):
            return False
        v = self.apex
        for a, b in self.triangles:
            if not (g.has_edge(a, b) and g.has_edge(v, a) and g.has_edge(v, b)):
                return False
        for c in self.cycles:
            if not (g.has_edge(v, c[0]) and g.has_edge(v, c[-1])):
                return False
            if any(not g.has_edge(x, y) for x, y in zip(c, c[1:])):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "apex": self.apex,
            "triangles": [list(p) for p in self.triangles],
            "cycles": [list(c) for c in self.cycles],
        }


# --- odd-cycle transversal bound ---------------------------------------------------


def _local_two_coloring(g: Graph) -> int:
    """Mask of one colour class: BFS colouring improved by single-vertex moves."""
    color = 0
    seen = 0
    for root in range(g.n):
        if seen >> root & 1:
            continue
        seen |= 1 << root
        frontier, parity = 1 << root, 0
        while frontier:
            if parity:
                color |= frontier
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.rows[u]
            frontier = nxt & ~seen
            seen |= frontier
            parity ^= 1
    full = g.all_mask
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            own = color if color >> v & 1 else full & ~color
            same = (g.rows[v] & own).bit_count()
            if 2 * same > g.rows[v].bit_count():
                color ^= 1 << v
                improved = True
    return color


def _has_cover(defect: list[int], alive: int, budget: int) -> bool:
    """Vertex cover of the defect graph on ``alive`` with at most ``budget`` vertices?"""
    u = -1
    for x in iter_bits(alive):
        if defect[x] & alive:
            u = x
            break
    if u < 0:
        return True
    if budget <= 0:
        return False
    # greedy matching lower bound
    rest, size = alive, 0
    for x in iter_bits(alive):
        if rest >> x & 1:
            nb = defect[x] & rest & ~(1 << x)
            if nb:
                y = (nb & -nb).bit_length() - 1
                rest &= ~((1 << x) | (1 << y))
                size += 1
    if size > budget:
        return False
    w = (defect[u] & alive & -(defect[u] & alive)).bit_length() - 1
    return _has_cover(defect, alive & ~(1 << u), budget - 1) or _has_cover(defect, alive & ~(1 << w), budget - 1)


class _Context:
    """Per-graph data shared by all apex searches."""

    def __init__(self, g: Graph):
        self.g = g
        color = _local_two_coloring(g)
        full = g.all_mask
        self.defect = [g.rows[v] & (color if color >> v & 1 else full & ~color) for v in range(g.n)]
        self.has_defect = any(self.defect)
        order = sorted(range(g.n), key=lambda v: (g.rows[v].bit_count(), v))
        indep = 0
        blocked = 0
        for v in order:
            if not blocked >> v & 1:
                indep |= 1 << v
                blocked |= g.rows[v] | (1 << v)
        self.indep = indep

    def odd_cycles_through(self, v: int, avail: int, need: int) -> bool:
        """False if fewer than ``need`` disjoint odd cycles through v can exist in G[avail + v]."""
        if not self.has_defect:
            return need <= 0
        forced = self.defect[v] & avail
        budget = need - 1 - forced.bit_count()
        if budget < 0:
            return True
        return not _has_cover(self.defect, avail & ~forced, budget)


# --- flower search -------------------------------------------------------------------


class _ApexSearch:
    def __init__(self, ctx: _Context, spec: FlowerSpec, apex: int):
        g = ctx.g
        self.ctx = ctx
        self.rows = g.rows
        self.spec = spec
        self.apex = apex
        self.nbr = g.rows[apex]
        self.sizes = [t - 1 for t in spec.lengths]
        self.failed: set[tuple[int, int, int]] = set()
        self.triangles: list[tuple[int, int]] = []
        self.paths: list[tuple[int, ...]] = []

    # -- necessary conditions on a state

    def _feasible(self, stage: int, avail: int) -> bool:
        s = self.spec.s
        tri_left = max(0, s - stage)
        cyc = self.sizes[max(0, stage - s):]
        petals = tri_left + len(cyc)
        if petals == 0:
            return True
        if avail.bit_count() < 2 * tri_left + sum(cyc):
            return False
        if (avail & self.nbr).bit_count() < 2 * petals:
            return False
        outside = (avail & ~self.ctx.indep).bit_count()
        if outside < tri_left + sum(m // 2 for m in cyc):
            return False
        if not self.ctx.odd_cycles_through(self.apex, avail, petals):
            return False
        return True

    def run(self) -> bool:
        g = self.ctx.g
        avail = g.all_mask & ~(1 << self.apex)
        if self.nbr.bit_count() < 2 * self.spec.petals:
            return False
        if self.spec.s and matching_number(g, self.nbr) < self.spec.s:
            return False
        return self._stage(0, avail, 0)

    def _stage(self, stage: int, avail: int, lo: int) -> bool:
        s = self.spec.s
        if stage == s + len(self.sizes):
            return True
        key = (stage, avail, lo)
        if key in self.failed:
            return False
        if not self._feasible(stage, avail):
            self.failed.add(key)
            return False
        ok = self._place_triangle(stage, avail, lo) if stage < s else self._place_path(stage, avail, lo)
        if not ok:
            self.failed.add(key)
        return ok

    def _place_triangle(self, stage: int, avail: int, lo: int) -> bool:
        inner = self.nbr & avail
        for u in iter_bits(inner >> lo << lo):
            for w in iter_bits(self.rows[u] & inner & ~((2 << u) - 1)):
                self.triangles.append((u, w))
                nxt_lo = u + 1 if stage + 1 < self.spec.s else 0
                if self._stage(stage + 1, avail & ~(1 << u) & ~(1 << w), nxt_lo):
                    return True
                self.triangles.pop()
        return False

    def _layers(self, avail: int, depth: int) -> list[int]:
        """layers[r]: vertices of ``avail`` with a walk of exactly r edges to N(apex)."""
        rows = self.rows
        cur = self.nbr & avail
        out = [cur]
        for _ in range(depth):
            nxt = 0
            for u in iter_bits(cur):
                nxt |= rows[u]
            cur = nxt & avail
            out.append(cur)
        return out

    def _place_path(self, stage: int, avail: int, lo: int) -> bool:
        idx = stage - self.spec.s
        m = self.sizes[idx]
        same_next = idx + 1 < len(self.sizes) and self.sizes[idx + 1] == m
        layers = self._layers(avail, m - 1)
        rows, nbr = self.rows, self.nbr
        starts = nbr & layers[m - 1] & avail
        starts = starts >> lo << lo
        path: list[int] = []

        def extend(u: int, left: int, used: int) -> bool:
            # ``left`` edges still to add after u
            if left == 0:
                if u <= path[0] or not nbr >> u & 1:
                    return False
                self.paths.append(tuple(path))
                nxt_lo = path[0] + 1 if same_next else 0
                if self._stage(stage + 1, avail & ~used, nxt_lo):
                    return True
                self.paths.pop()
                return False
            cand = rows[u] & avail & ~used & layers[left - 1]
            if left == 1:
                cand &= nbr & ~((2 << path[0]) - 1)
            for w in iter_bits(cand):
                path.append(w)
                if extend(w, left - 1, used | (1 << w)):
                    return True
                path.pop()
            return False

        for a in iter_bits(starts):
            path.append(a)
            if extend(a, m - 1, 1 << a):
                return True
            path.pop()
        return False

    def embedding(self) -> FlowerEmbedding:
        return FlowerEmbedding(self.apex, tuple(self.triangles), tuple(self.paths))


def _search(g: Graph, spec: FlowerSpec, apexes, ctx: _Context | None = None) -> FlowerEmbedding | None:
    if g.n < spec.vertex_count or g.edge_count < spec.edge_count:
        return None
    ctx = ctx or _Context(g)
    for v in apexes:
        srch = _ApexSearch(ctx, spec, v)
        if srch.run():
            return srch.embedding()
    return None


def apex_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.rows[v].bit_count(), v))


def contains_flower(g: Graph, spec: FlowerSpec) -> FlowerEmbedding | None:
    """A witness embedding of the flower in ``g``, or None if ``g`` is flower-free."""
    return _search(g, spec, apex_order(g))


def contains_flower_at(g: Graph, v: int, spec: FlowerSpec) -> FlowerEmbedding | None:
    if not 0 <= v < g.n:
        raise GraphError(f"apex {v} out of range for n={g.n}")
    return _search(g, spec, [v])


def is_flower_free(g: Graph, spec: FlowerSpec) -> bool:
    return contains_flower(g, spec) is None


# --- counting and small structural statistics ------------------------------------


def triangle_count(g: Graph) -> int:
    rows = g.rows
    total = 0
    for u in range(g.n):
        ru = rows[u]
        for w in iter_bits(ru >> (u + 1)):
            w += u + 1
            total += ((ru & rows[w]) >> (w + 1)).bit_count()
    return total


def has_path_on(g: Graph, t: int) -> tuple[int, ...] | None:
    """A path on ``t`` vertices (as a vertex sequence) or None."""
    if t < 1:
        raise ValueError(f"path order must be positive, got {t}")
    if t > g.n:
        return None
    rows = g.rows
    path: list[int] = []

    def extend(u: int, used: int) -> bool:
        if len(path) == t:
            return True
        for w in iter_bits(rows[u] & ~used):
            path.append(w)
            if extend(w, used | (1 << w)):
                return True
            path.pop()
        return False

    for a in range(g.n):
        path.append(a)
        if extend(a, 1 << a):
            return tuple(path)
        path.pop()
    return None


@dataclass
class SideFreeness:
    j: int
    star_free: bool
    matching_free: bool
    max_degree: int
    matching_number: int
    star_center: int | None = None
    matching_witness: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "star_free": self.star_free,
            "matching_free": self.matching_free,
            "max_degree": self.max_degree,
            "matching_number": self.matching_number,
            "star_center": self.star_center,
            "matching_witness": [list(e) for e in self.matching_witness],
        }


def side_freeness_check(g: Graph, s: VertexSet | int | list[int], j: int) -> SideFreeness:
    """Is G[S] free of K_{1,j} and of M_j?  Witnesses are given when it is not."""
    mask = s if isinstance(s, int) else as_mask(s)
    mask &= g.all_mask
    best_v, best_d = None, 0
    for v in iter_bits(mask):
        d = (g.rows[v] & mask).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    mm = maximum_matching(g, mask)
    star_free = best_d <= j - 1
    matching_free = len(mm) <= j - 1
    return SideFreeness(
        j=j,
        star_free=star_free,
        matching_free=matching_free,
        max_degree=best_d,
        matching_number=len(mm),
        star_center=None if star_free else best_v,
        matching_witness=[] if matching_free else mm[:j],
    )


# --- independent oracle --------------------------------------------------------------

ORACLE_MAX_H = 10


def subgraph_iso_oracle(g: Graph, h: Graph) -> bool:
    """Does ``g`` contain a (not necessarily induced) copy of ``h``?

    Plain backtracking over injective vertex maps, used to validate the flower
    search.
    """
    if h.n > ORACLE_MAX_H:
        raise ValueError(f"oracle pattern limited to {ORACLE_MAX_H} vertices")
    if h.n > g.n or h.edge_count > g.edge_count:
        return False
    hdeg = h.degrees()
    gdeg = g.degrees()
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        # next: most constrained pattern vertex, preferring ones attached to the prefix
        x = max(remaining, key=lambda u: ((h.rows[u] & placed).bit_count(), hdeg[u], -u))
        order.append(x)
        placed |= 1 << x
        remaining.discard(x)
    image = [-1] * h.n

    def place(i: int, used: int) -> bool:
        if i == h.n:
            return True
        x = order[i]
        cand = g.all_mask & ~used
        for y in iter_bits(h.rows[x]):
            if image[y] >= 0:
                cand &= g.rows[image[y]]
        for z in iter_bits(cand):
            if gdeg[z] < hdeg[x]:
                continue
            image[x] = z
            if place(i + 1, used | (1 << z)):
                return True
            image[x] = -1
        return False

    return place(0, 0)


def contains_flower_oracle(g: Graph, spec: FlowerSpec) -> bool:
    return subgraph_iso_oracle(g, flower(spec))


__all__ = [
    "FlowerEmbedding",
    "contains_flower",
    "contains_flower_at",
    "is_flower_free",
    "triangle_count",
    "has_path_on",
    "matching_number",
    "side_freeness_check",
    "SideFreeness",
    "subgraph_iso_oracle",
    "contains_flower_oracle",
    "apex_order",
]
