# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour is identical to ``_kernels_py``."""

from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil

cdef enum:
    MAXN = 30

ctypedef unsigned int mask_t


cdef struct Search:
    int n
    mask_t rows[MAXN]
    mask_t twin[MAXN]
    mask_t best[MAXN]        # column j holds the j cert bits of position j
    int best_order[MAXN]
    int have_best


cdef inline int lowbit(mask_t m) nogil:
    return __builtin_ctz(m)


cdef int refine(mask_t* rows, mask_t* cells, int ncells, int n) nogil:
    cdef mask_t out[MAXN]
    cdef mask_t bucket[MAXN + 1]
    cdef int i = 0, j, k, nout, split, v
    cdef mask_t w, c, rest
    while i < ncells:
        w = cells[i]
        nout = 0
        split = 0
        for j in range(ncells):
            c = cells[j]
            if c & (c - 1) == 0:
                out[nout] = c
                nout += 1
                continue
            memset(bucket, 0, (n + 1) * sizeof(mask_t))
            rest = c
            while rest:
                v = lowbit(rest)
                rest &= rest - 1
                bucket[__builtin_popcount(rows[v] & w)] |= (<mask_t>1) << v
            k = 0
            for v in range(n + 1):
                if bucket[v]:
                    out[nout] = bucket[v]
                    nout += 1
                    k += 1
            if k > 1:
                split = 1
        if split:
            memcpy(cells, out, nout * sizeof(mask_t))
            ncells = nout
            i = 0
        else:
            i += 1
    return ncells


cdef inline mask_t column(mask_t* rows, int* order, int j) nogil:
    cdef mask_t col = 0
    cdef mask_t rj = rows[order[j]]
    cdef int i
    for i in range(j):
        col = (col << 1) | ((rj >> order[i]) & 1)
    return col


cdef void visit(Search* s, mask_t* cells_in, int ncells) nogil:
    cdef mask_t cells[MAXN]
    cdef mask_t child[MAXN]
    cdef int order[MAXN]
    cdef int m = 0, j, cmp, v
    cdef mask_t col, target, done, rest
    memcpy(cells, cells_in, ncells * sizeof(mask_t))
    ncells = refine(s.rows, cells, ncells, s.n)
    while m < ncells and cells[m] & (cells[m] - 1) == 0:
        order[m] = lowbit(cells[m])
        m += 1
    if s.have_best and m > 1:
        for j in range(1, m):
            col = column(s.rows, order, j)
            if col < s.best[j]:
                return
            if col > s.best[j]:
                break
    if m == ncells:
        cmp = 0
        if not s.have_best:
            cmp = 1
        else:
            for j in range(1, s.n):
                col = column(s.rows, order, j)
                if col != s.best[j]:
                    cmp = 1 if col > s.best[j] else -1
                    break
        if cmp > 0:
            for j in range(1, s.n):
                s.best[j] = column(s.rows, order, j)
            memcpy(s.best_order, order, s.n * sizeof(int))
            s.have_best = 1
        return
    target = cells[m]
    done = 0
    rest = target
    while rest:
        v = lowbit(rest)
        rest &= rest - 1
        if s.twin[v] & done:
            continue
        done |= (<mask_t>1) << v
        memcpy(child, cells, m * sizeof(mask_t))
        child[m] = (<mask_t>1) << v
        child[m + 1] = target & ~((<mask_t>1) << v)
        memcpy(child + m + 2, cells + m + 1, (ncells - m - 1) * sizeof(mask_t))
        visit(s, child, ncells + 1)


cdef void run_canon(Search* s, mask_t* cells, int ncells) nogil:
    cdef int u, v, n = s.n
    for u in range(n):
        s.twin[u] = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (s.rows[u] & ~((<mask_t>1) << v)) == (s.rows[v] & ~((<mask_t>1) << u)):
                s.twin[u] |= (<mask_t>1) << v
                s.twin[v] |= (<mask_t>1) << u
    s.have_best = 0
    visit(s, cells, ncells)


cdef object cert_int(Search* s):
    cert = 0
    cdef int j
    for j in range(1, s.n):
        cert = (cert << j) | s.best[j]
    return cert


cdef void load(Search* s, int n, rows):
    s.n = n
    cdef int u
    for u in range(n):
        s.rows[u] = <mask_t>rows[u]


def _check_n(int n):
    if n > MAXN:
        raise ValueError(f"compiled kernels support n <= {MAXN}")


def refine_cells(rows, cells):
    cdef mask_t r[MAXN]
    cdef mask_t c[MAXN]
    cdef int n = len(rows), k = len(cells), i
    _check_n(n)
    for i in range(n):
        r[i] = <mask_t>rows[i]
    for i in range(k):
        c[i] = <mask_t>cells[i]
    k = refine(r, c, k, n)
    return [c[i] for i in range(k)]


def canon(int n, rows, cells=None):
    cdef Search s
    cdef mask_t c[MAXN]
    cdef int k, i
    if n == 0:
        return 0, []
    _check_n(n)
    load(&s, n, rows)
    if cells is None:
        c[0] = <mask_t>((1 << n) - 1)
        k = 1
    else:
        k = len(cells)
        for i in range(k):
            c[i] = <mask_t>cells[i]
    run_canon(&s, c, k)
    return cert_int(&s), [s.best_order[i] for i in range(n)]


def equitable_cells(int n, rows):
    if n == 0:
        return []
    return refine_cells(rows, [(1 << n) - 1])


cdef int colored_equal(Search* s, int n, int x, int w):
    """Compare canonical certs with x (resp. w) individualised first."""
    cdef mask_t c[2]
    cdef mask_t keep[MAXN]
    cdef mask_t full = <mask_t>((1 << n) - 1)
    cdef int j
    c[0] = (<mask_t>1) << x
    c[1] = full & ~c[0]
    run_canon(s, c, 2)
    for j in range(1, n):
        keep[j] = s.best[j]
    c[0] = (<mask_t>1) << w
    c[1] = full & ~c[0]
    run_canon(s, c, 2)
    for j in range(1, n):
        if keep[j] != s.best[j]:
            return 0
    return 1


cdef int orbit_test(Search* s, int n, int x, int w):
    cdef mask_t cells[MAXN]
    cdef int k, i
    if x == w:
        return 1
    cells[0] = <mask_t>((1 << n) - 1)
    k = refine(s.rows, cells, 1, n)
    for i in range(k):
        if (cells[i] >> x) & 1:
            if not (cells[i] >> w) & 1:
                return 0
            break
    return colored_equal(s, n, x, w)


def same_orbit(int n, rows, int x, int w):
    cdef Search s
    _check_n(n)
    load(&s, n, rows)
    return bool(orbit_test(&s, n, x, w))


def children(int n, rows):
    cdef Search s
    cdef mask_t par[MAXN]
    cdef int deg[MAXN]
    cdef int order[MAXN]
    cdef int inv[MAXN]
    cdef mask_t cells[1]
    cdef int m = n + 1, u, k, ok, last
    cdef unsigned long sub, nsub
    cdef mask_t r, rr
    _check_n(m)
    for u in range(n):
        par[u] = <mask_t>rows[u]
        deg[u] = __builtin_popcount(par[u])
    seen = set()
    out = []
    nsub = (<unsigned long>1) << n
    sub = 0
    while sub < nsub:
        k = __builtin_popcount(<mask_t>sub)
        ok = 1
        for u in range(n):
            if deg[u] + <int>((sub >> u) & 1) > k:
                ok = 0
                break
        if not ok:
            sub += 1
            continue
        s.n = m
        for u in range(n):
            s.rows[u] = par[u] | (<mask_t>((sub >> u) & 1) << n)
        s.rows[n] = <mask_t>sub
        cells[0] = <mask_t>((1 << m) - 1)
        run_canon(&s, cells, 1)
        memcpy(order, s.best_order, m * sizeof(int))
        cert = cert_int(&s)
        last = order[m - 1]
        if not orbit_test(&s, m, n, last):
            sub += 1
            continue
        if cert in seen:
            sub += 1
            continue
        seen.add(cert)
        for u in range(m):
            inv[order[u]] = u
        canon_rows = []
        for u in range(m):
            r = s.rows[order[u]]
            rr = 0
            while r:
                rr |= (<mask_t>1) << inv[lowbit(r)]
                r &= r - 1
            canon_rows.append(rr)
        out.append((cert, tuple(canon_rows)))
        sub += 1
    return out
