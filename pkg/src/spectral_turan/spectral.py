"""Dominant eigenvalues of adjacency and signless Laplacian matrices by power iteration."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph, iter_bits

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10**6
DENSE_LIMIT = 2048


class ConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap; ``result`` holds the best estimate."""

    def __init__(self, result: "SpectralResult"):
        super().__init__(
            f"power iteration did not converge after {result.iterations} iterations "
            f"(lambda ~ {result.lam:.12g}, residual {result.residual:.3g})"
        )
        self.result = result


@dataclass
class SpectralResult:
    lam: float
    vector: np.ndarray
    residual: float
    iterations: int
    connected: bool = True
    converged: bool = True

    def to_json(self) -> dict:
        out = {
            "lambda": self.lam,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "connected": self.connected,
        }
        out["min_entry"] = perron_entry_min(self) if self.connected else None
        return out


def _operator(g: Graph, verts: list[int], diag: bool):
    """Matrix of A (or D + A) restricted to ``verts``, dense when small."""
    pos = {v: i for i, v in enumerate(verts)}
    rows, cols = [], []
    mask = 0
    for v in verts:
        mask |= 1 << v
    for v in verts:
        i = pos[v]
        for w in iter_bits(g.rows[v] & mask):
            rows.append(i)
            cols.append(pos[w])
    m = len(verts)
    data = np.ones(len(rows))
    if m <= DENSE_LIMIT:
        a = np.zeros((m, m))
        if rows:
            a[rows, cols] = 1.0
        if diag:
            a[np.arange(m), np.arange(m)] = a.sum(axis=1)
        return a
    a = sp.csr_matrix((data, (rows, cols)), shape=(m, m))
    if diag:
        a = (a + sp.diags(np.asarray(a.sum(axis=1)).ravel())).tocsr()
    return a


def _power(op, shift: float, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int, bool]:
    """Power iteration on ``op + shift*I`` from the all-ones vector.

    The vector is kept max-normalised; the eigenvalue is the Rayleigh quotient
    of ``op`` and convergence is judged by ``max|op x - lam x|`` against
    ``tol * max(1, lam)``; an absolute test would stall at the rounding floor
    of large dense graphs.
    """
    m = op.shape[0]
    x = np.ones(m)
    lam, res = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = op @ x
        lam = float(x @ y) / float(x @ x)
        res = float(np.max(np.abs(y - lam * x)))
        if res <= tol * max(1.0, abs(lam)):
            return lam, x, res, it, True
        z = y + shift * x
        top = float(np.max(np.abs(z)))
        if top == 0.0:
            return lam, x, res, it, False
        x = z / top
    return lam, x, res, max_iter, False


def _dominant(g: Graph, diag: bool, tol: float, max_iter: int) -> SpectralResult:
    if g.n < 1:
        raise ValueError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    comps = g.components()
    best = None
    total_it = 0
    for comp in comps:
        verts = list(iter_bits(comp))
        if len(verts) == 1:
            lam, x, res, it, ok = 0.0, np.ones(1), 0.0, 0, True
        else:
            op = _operator(g, verts, diag)
            # A + I separates lambda from -lambda on bipartite components;
            # D + A is positive semidefinite and needs no shift.
            lam, x, res, it, ok = _power(op, 0.0 if diag else 1.0, tol, max_iter)
        total_it += it
        if best is None or lam > best[0] + tol:
            best = (lam, verts, x, res, ok)
    lam, verts, x, res, ok = best
    vec = np.zeros(g.n)
    vec[verts] = x
    vec /= vec.max()
    result = SpectralResult(lam, vec, res, total_it, connected=len(comps) == 1, converged=ok)
    if not ok:
        raise ConvergenceError(result)
    return result


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue with a max-normalised Perron vector.

    Disconnected graphs are handled component by component and the largest
    value is kept; the returned vector is supported on that component.
    """
    return _dominant(g, False, tol, max_iter)


def signless_laplacian_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralResult:
    """Largest eigenvalue q(G) of D(G) + A(G)."""
    return _dominant(g, True, tol, max_iter)


def perron_entry_min(result: SpectralResult) -> float:
    if not result.connected:
        raise ValueError("Perron vector entries are only defined here for connected graphs")
    return float(result.vector.min())


def rayleigh_quotient(g: Graph, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"vector must have {g.n} entries")
    xx = float(x @ x)
    if xx == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    u, v = g.edge_arrays()
    return 2.0 * float(np.sum(x[u] * x[v])) / xx


@dataclass
class EdgeTriangleBound:
    edges: int
    triangles: int
    lam: float
    rhs: float
    holds: bool

    def to_json(self) -> dict:
        return {
            "lhs": self.edges,
            "rhs": None if math.isinf(self.rhs) else self.rhs,
            "holds": self.holds,
            "triangles": self.triangles,
            "lambda": self.lam,
        }


def check_edge_triangle_bound(g: Graph, tol: float = 1e-6) -> EdgeTriangleBound:
    """e(G) >= lambda^2 - 3t/lambda with t the number of triangles.

    Edgeless graphs have lambda = 0; the right side is taken as -inf and the
    bound holds trivially.
    """
    from .detection import triangle_count

    t = triangle_count(g)
    if g.edge_count == 0:
        return EdgeTriangleBound(0, t, 0.0, -math.inf, True)
    lam = spectral_radius(g).lam
    rhs = lam * lam - 3.0 * t / lam
    return EdgeTriangleBound(g.edge_count, t, lam, rhs, g.edge_count >= rhs - tol)


@dataclass
class DegreeBounds:
    avg_deg: float
    lam: float
    max_deg: int
    holds: bool

    def to_json(self) -> dict:
        return {"avg_deg": self.avg_deg, "lambda": self.lam, "max_deg": self.max_deg, "holds": self.holds}


def degree_bounds_check(g: Graph, tol: float = 1e-8) -> DegreeBounds:
    """Average degree <= lambda <= maximum degree."""
    avg = 2.0 * g.edge_count / g.n
    lam = spectral_radius(g).lam
    dmax = g.max_degree()
    return DegreeBounds(avg, lam, dmax, avg <= lam + tol and lam <= dmax + tol)
