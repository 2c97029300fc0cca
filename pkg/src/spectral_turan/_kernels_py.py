"""Pure-Python kernels.  ``_kernels.pyx`` mirrors these functions one for one."""

from __future__ import annotations


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def refine(rows, cells):
    """Coarsest equitable refinement of an ordered partition (list of masks).

    Sub-cells are ordered by ascending neighbour count into the splitter, so the
    result commutes with relabelling.
    """
    cells = list(cells)
    i = 0
    while i < len(cells):
        w = cells[i]
        out = []
        split = False
        for c in cells:
            if c & (c - 1) == 0:
                out.append(c)
                continue
            buckets = {}
            for v in _bits(c):
                k = (rows[v] & w).bit_count()
                buckets[k] = buckets.get(k, 0) | (1 << v)
            if len(buckets) > 1:
                split = True
                out.extend(buckets[k] for k in sorted(buckets))
            else:
                out.append(c)
        if split:
            cells = out
            i = 0
        else:
            i += 1
    return cells


def _cert(rows, order, m):
    """graph6-ordered upper-triangle bits of the first ``m`` positions."""
    cert = 0
    for j in range(1, m):
        rj = rows[order[j]]
        for i in range(j):
            cert = (cert << 1) | (rj >> order[i] & 1)
    return cert


def canon(n, rows, cells=None):
    """Canonical labelling by refinement + individualisation.

    Returns ``(cert, order)``: ``order[i]`` is the original vertex placed at
    canonical position ``i`` and ``cert`` is the lexicographically maximal
    graph6 bit string (as an int) over all leaves of the search tree.
    """
    rows = list(rows)
    if n == 0:
        return 0, []
    if cells is None:
        cells = [(1 << n) - 1]
    twin = [0] * n
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            if ru & ~(1 << v) == rows[v] & ~(1 << u):
                twin[u] |= 1 << v
                twin[v] |= 1 << u
    total = n * (n - 1) // 2
    best = [-1, None]

    def visit(cells):
        cells = refine(rows, cells)
        m = 0
        while m < len(cells) and cells[m] & (cells[m] - 1) == 0:
            m += 1
        if best[0] >= 0 and m > 1:
            pref = [c.bit_length() - 1 for c in cells[:m]]
            used = m * (m - 1) // 2
            part = _cert(rows, pref, m)
            top = best[0] >> (total - used)
            if part < top:
                return
        if m == len(cells):
            order = [c.bit_length() - 1 for c in cells]
            cert = _cert(rows, order, n)
            if cert > best[0]:
                best[0] = cert
                best[1] = order
            return
        target = cells[m]
        done = 0
        for v in _bits(target):
            if twin[v] & done:
                continue
            done |= 1 << v
            visit(cells[:m] + [1 << v, target & ~(1 << v)] + cells[m + 1:])

    visit(cells)
    return best[0], best[1]


def equitable_cells(n, rows):
    """Refined partition of the uncoloured graph (list of masks)."""
    if n == 0:
        return []
    return refine(list(rows), [(1 << n) - 1])


def same_orbit(n, rows, x, w):
    """True iff some automorphism maps ``x`` to ``w``."""
    if x == w:
        return True
    cells = equitable_cells(n, rows)
    for c in cells:
        if c >> x & 1:
            if not c >> w & 1:
                return False
            break
    rest = (1 << n) - 1
    cx, _ = canon(n, rows, [1 << x, rest & ~(1 << x)])
    cw, _ = canon(n, rows, [1 << w, rest & ~(1 << w)])
    return cx == cw


def children(n, rows):
    """Canonical-augmentation children of a parent on ``n`` vertices.

    Every neighbourhood subset of the new vertex ``n`` is tried; a child is
    kept iff the new vertex lies in the orbit of the vertex that canonical
    labelling puts last.  Returns ``[(cert, canonical_rows), ...]`` in subset
    order, deduplicated within this parent.
    """
    rows = list(rows)
    deg = [r.bit_count() for r in rows]
    m = n + 1
    seen = set()
    out = []
    for sub in range(1 << n):
        k = sub.bit_count()
        # canonical last vertex always has maximum degree
        ok = True
        for u in range(n):
            if deg[u] + (sub >> u & 1) > k:
                ok = False
                break
        if not ok:
            continue
        child = [rows[u] | ((sub >> u & 1) << n) for u in range(n)]
        child.append(sub)
        cert, order = canon(m, child)
        if not same_orbit(m, child, n, order[-1]):
            continue
        if cert in seen:
            continue
        seen.add(cert)
        out.append((cert, relabel_rows(child, order)))
    return out


def relabel_rows(rows, order):
    inv = [0] * len(order)
    for i, v in enumerate(order):
        inv[v] = i
    out = []
    for v in order:
        r = 0
        for w in _bits(rows[v]):
            r |= 1 << inv[w]
        out.append(r)
    return tuple(out)
