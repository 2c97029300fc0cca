"""Stability diagnostics: a locally optimal max-cut and the quantities near-extremal graphs must satisfy.

Everything here measures a concrete graph.  The bounds are the ones a
stability proof for flower-free graphs establishes for large n; on small or
far-from-extremal inputs a bound may fail, and the report says so instead of
raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .constructions import FlowerSpec
from .detection import SideFreeness, contains_flower, side_freeness_check
from .graph import Graph, GraphError, VertexSet
from .spectral import DENSE_LIMIT, perron_entry_min, spectral_radius

DEFAULT_RESTARTS = 32
SLACK = 1e-6


def _mask(indices) -> int:
    m = 0
    for v in indices:
        m |= 1 << int(v)
    return m


@dataclass(frozen=True)
class Bipartition:
    side_S: VertexSet
    side_T: VertexSet
    cut: int
    within: int

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.side_S), len(self.side_T)

    def is_locally_optimal(self, g: Graph) -> bool:
        """No single vertex gains by switching sides."""
        for side, other in ((self.side_S, self.side_T), (self.side_T, self.side_S)):
            for v in side:
                if g.d_within(v, side) > g.d_within(v, other):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "S": self.side_S.sorted(),
            "T": self.side_T.sorted(),
            "cut": self.cut,
            "within": self.within,
        }


def _matrix(g: Graph):
    u, v = g.edge_arrays()
    if g.n <= DENSE_LIMIT:
        a = np.zeros((g.n, g.n))
        a[u, v] = 1.0
        a[v, u] = 1.0
        return a
    data = np.ones(2 * len(u))
    return sp.csr_matrix((data, (np.concatenate([u, v]), np.concatenate([v, u]))), shape=(g.n, g.n))


def _local_search(a, sigma: np.ndarray) -> np.ndarray:
    """Best-improvement single-vertex moves until no move raises the cut.

    With sides encoded as +-1, ``field = A sigma`` and the gain of moving v
    is ``sigma_v * field_v`` = d_same(v) - d_cross(v).
    """
    dense = isinstance(a, np.ndarray)
    field = a @ sigma
    while True:
        gain = sigma * field
        v = int(np.argmax(gain))
        if gain[v] <= 0:
            return sigma
        col = a[:, v] if dense else a.getcol(v).toarray().ravel()
        field -= 2.0 * sigma[v] * col
        sigma[v] = -sigma[v]


def max_cut_partition(g: Graph, seed: int = 0, restarts: int = DEFAULT_RESTARTS) -> Bipartition:
    """Best locally optimal cut over seeded random starts; the first best wins ties.

    S is the larger side (the side holding vertex 0 when sizes tie).
    """
    if g.n < 1:
        raise GraphError("max-cut needs at least one vertex")
    if restarts < 1:
        raise ValueError(f"need at least one restart, got {restarts}")
    a = _matrix(g)
    rng = np.random.default_rng(seed)
    best_cut, best = -1, None
    m = g.edge_count
    for _ in range(restarts):
        sigma = rng.choice(np.array([-1.0, 1.0]), size=g.n)
        sigma = _local_search(a, sigma)
        within = int(round(float(sigma @ (a @ sigma)) + 2 * m)) // 4
        cut = m - within
        if cut > best_cut:
            best_cut, best = cut, sigma.copy()
    side = best > 0
    s_idx, t_idx = np.flatnonzero(side), np.flatnonzero(~side)
    if len(s_idx) < len(t_idx) or (len(s_idx) == len(t_idx) and not side[0]):
        s_idx, t_idx = t_idx, s_idx
    return Bipartition(VertexSet(_mask(s_idx)), VertexSet(_mask(t_idx)), best_cut, m - best_cut)


def classify_W(g: Graph, partition: Bipartition, delta: float) -> VertexSet:
    """Vertices with at least delta*n neighbours on their own side."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    bound = delta * g.n
    out = 0
    for side in (partition.side_S, partition.side_T):
        for v in side:
            if g.d_within(v, side) >= bound:
                out |= 1 << v
    return VertexSet(out)


def low_degree_constant(spec: FlowerSpec) -> float:
    return 1.0 / (8 * spec.c * spec.petals)


def classify_L(g: Graph, spec: FlowerSpec) -> VertexSet:
    """Vertices of degree at most (1/2 - c0) n, c0 = 1/(8 c (s+k))."""
    bound = (0.5 - low_degree_constant(spec)) * g.n
    return VertexSet(_mask(v for v in range(g.n) if g.degree(v) <= bound))


def default_delta(spec: FlowerSpec) -> float:
    return 1.0 / (100 * spec.c**2 * spec.petals**2)


@dataclass
class Gap:
    lhs: float
    rhs: float | None
    holds: bool | None
    relation: str

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "relation": self.relation}


def _ge(lhs, rhs, slack=0.0) -> Gap:
    return Gap(lhs, rhs, bool(lhs >= rhs - slack), ">=")


def _le(lhs, rhs, slack=0.0) -> Gap:
    return Gap(lhs, rhs, bool(lhs <= rhs + slack), "<=")


@dataclass
class StabilityReport:
    n: int
    spec: FlowerSpec
    delta: float
    seed: int
    partition: Bipartition
    W: VertexSet
    L: VertexSet
    side_balance: int
    side_freeness: tuple[SideFreeness, SideFreeness]
    lam: float
    min_perron_entry: float
    e_G1: int
    e_G2: int
    contains_forbidden: bool
    lemma_gaps: dict[str, Gap]

    @property
    def all_gaps_hold(self) -> bool:
        return all(g.holds is not False for g in self.lemma_gaps.values())

    def to_json(self) -> dict:
        s_free, t_free = self.side_freeness
        return {
            "schema": "spectral-turan/stability-report/1",
            "n": self.n,
            "spec": self.spec.to_json(),
            "delta": self.delta,
            "c0": low_degree_constant(self.spec),
            "seed": self.seed,
            "partition": {"sizes": list(self.partition.sizes), "cut": self.partition.cut, "within": self.partition.within},
            "W": self.W.sorted(),
            "L": self.L.sorted(),
            "side_balance": self.side_balance,
            "side_freeness": {"S": s_free.to_json(), "T": t_free.to_json()},
            "lambda": self.lam,
            "min_perron_entry": self.min_perron_entry,
            "e_G1": self.e_G1,
            "e_G2": self.e_G2,
            "contains_forbidden": self.contains_forbidden,
            "lemma_gaps": {k: v.to_json() for k, v in self.lemma_gaps.items()},
        }


def stability_report(
    g: Graph,
    spec: FlowerSpec,
    delta: float | None = None,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> StabilityReport:
    if not g.is_connected():
        raise GraphError("stability analysis needs a connected graph (the Perron entry is undefined otherwise)")
    delta = default_delta(spec) if delta is None else delta
    n = g.n
    p = spec.petals
    part = max_cut_partition(g, seed=seed, restarts=restarts)
    S, T = part.side_S, part.side_T
    sa, sb = part.sizes
    e = g.edge_count
    e1 = g.edges_within(S) + g.edges_within(T)
    e2 = sa * sb - part.cut
    spec_res = spectral_radius(g)
    lam = spec_res.lam
    xmin = perron_entry_min(spec_res)
    quarter = n * n / 4

    gaps = {
        "edges_linear_loss": _ge(e, quarter - p * spec.c * n),
        "edges_quadratic_loss": _ge(e, quarter - 12 * p * p),
        "cut_lower": _ge(part.cut, quarter - 14 * p * p),
        "side_lower": _ge(min(sa, sb), n / 2 - 4 * p),
        "side_upper": _le(max(sa, sb), n / 2 + 4 * p),
        "min_degree_lower": _ge(g.min_degree(), n / 2 - 14 * p * p),
        "lambda_upper": _le(lam, n / 2 + 5 * p, SLACK),
        "max_degree_upper": _le(g.max_degree(), n / 2 + 5 * p),
        "perron_entry_lower": _ge(xmin, 1 - 120 * p * p / n, SLACK),
        "excess_edges": _le(e1 - e2, (p - 1) ** 2),
        "balance": _le(abs(sa - sb), 1),
    }
    lhs = 2 / n * (n * n // 4) - math.sqrt(sa * sb)
    denom = n * (n - 240 * p * p)
    if denom > 0:
        gaps["bipartite_radius_gap"] = _le(lhs, 7200 * p**4 / denom, SLACK)
    else:
        # the bound only makes sense once n exceeds 240 (s+k)^2
        gaps["bipartite_radius_gap"] = Gap(lhs, None, None, "<=")

    return StabilityReport(
        n=n,
        spec=spec,
        delta=delta,
        seed=seed,
        partition=part,
        W=classify_W(g, part, delta),
        L=classify_L(g, spec),
        side_balance=abs(sa - sb),
        side_freeness=(side_freeness_check(g, S, p), side_freeness_check(g, T, p)),
        lam=lam,
        min_perron_entry=xmin,
        e_G1=e1,
        e_G2=e2,
        contains_forbidden=contains_flower(g, spec) is not None,
        lemma_gaps=gaps,
    )
