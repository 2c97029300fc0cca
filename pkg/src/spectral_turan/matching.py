"""Maximum cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque

from .graph import Graph, iter_bits


def _augment_from(root: int, adj: list[list[int]], mate: list[int]) -> bool:
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    # flip the alternating path ending at ``to``
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to] = pv
                        mate[pv] = to
                        to = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def maximum_matching(g: Graph, within: int | None = None) -> list[tuple[int, int]]:
    """Edges of a maximum matching of ``g`` (restricted to the mask ``within``)."""
    mask = g.all_mask if within is None else within & g.all_mask
    verts = list(iter_bits(mask))
    pos = {v: i for i, v in enumerate(verts)}
    adj = [[pos[w] for w in iter_bits(g.rows[v] & mask)] for v in verts]
    mate = [-1] * len(verts)
    # greedy start keeps the number of augmentation phases small
    for i, nb in enumerate(adj):
        if mate[i] == -1:
            for j in nb:
                if mate[j] == -1:
                    mate[i], mate[j] = j, i
                    break
    for i in range(len(verts)):
        if mate[i] == -1 and adj[i]:
            _augment_from(i, adj, mate)
    return [(verts[i], verts[j]) for i, j in enumerate(mate) if j > i]


def matching_number(g: Graph, within: int | None = None) -> int:
    """beta(G), or beta(G[within]) when a vertex mask is given."""
    return len(maximum_matching(g, within))
