"""Exhaustive enumeration, small-n certification and spectral local search."""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from ._backend import kernels
from .constructions import (
    FlowerSpec,
    extremal_family_member,
    family_edge_count,
    split_graph,
    bouquet_spec,
    turan,
)
from .detection import contains_flower, is_flower_free
from .graph import Graph, GraphError, to_graph6
from .matching import matching_number
from .spectral import signless_laplacian_radius, spectral_radius

ENUM_MAX_N = 9
LAMBDA_TOL = 1e-9

Prune = Callable[[Graph], bool]


# --- enumeration ----------------------------------------------------------------


def _check_order(n: int, allow_ten: bool) -> None:
    if n < 0:
        raise ValueError(f"negative order {n}")
    limit = 10 if allow_ten else ENUM_MAX_N
    if n > limit:
        hint = "" if allow_ten or n > 10 else " (pass allow_ten=True for n = 10)"
        raise ValueError(f"enumeration is limited to n <= {limit}{hint}")


def _descend(g: Graph, n: int, keep: Prune | None) -> Iterator[Graph]:
    if g.n == n:
        yield g
        return
    for _, rows in kernels.children(g.n, g.rows):
        child = Graph._trusted(g.n + 1, tuple(rows))
        if keep is None or keep(child):
            yield from _descend(child, n, keep)


def _roots(n: int, keep: Prune | None, depth: int) -> list[Graph]:
    """Canonical graphs on ``depth`` vertices; the subtrees below them are disjoint."""
    return list(_descend(Graph(1, (0,)), depth, keep)) if depth >= 1 else []


def enumerate_graphs(n: int, allow_ten: bool = False, keep: Prune | None = None) -> Iterator[Graph]:
    """Stream one canonical representative per isomorphism class on ``n`` vertices.

    ``keep`` prunes the augmentation tree.  It must be hereditary under vertex
    deletion (every induced subgraph of a kept graph is kept), since a class is
    reached only through its canonical parent; with such a predicate the
    stream is exactly the kept classes.
    """
    _check_order(n, allow_ten)
    if n == 0:
        g = Graph.empty(0)
        if keep is None or keep(g):
            yield g
        return
    root = Graph(1, (0,))
    if keep is not None and not keep(root):
        return
    yield from _descend(root, n, keep)


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("SPECTRAL_TURAN_THREADS", "")
        threads = int(env) if env.strip() else 1
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


# --- certification ----------------------------------------------------------------


@dataclass
class SearchReport:
    n: int
    spec: FlowerSpec
    max_edges: int
    max_lambda: float
    edge_witnesses: list[str]
    lambda_witnesses: list[str]
    graphs_enumerated: int
    elapsed: float
    formula_edges: int = 0
    agrees_with_formula: bool = False
    threads: int = 1

    def to_json(self) -> dict:
        return {
            "schema": "spectral-turan/search-report/1",
            "n": self.n,
            "spec": self.spec.to_json(),
            "max_edges": self.max_edges,
            "max_lambda": self.max_lambda,
            "edge_witnesses": self.edge_witnesses,
            "lambda_witnesses": self.lambda_witnesses,
            "graphs_enumerated": self.graphs_enumerated,
            "formula_edges": self.formula_edges,
            "agrees_with_formula": self.agrees_with_formula,
            "fundamental_inequality": check_fundamental_inequality(self),
        }


@dataclass
class _Partial:
    max_edges: int = -1
    max_lambda: float = -math.inf
    edge_w: list[str] = field(default_factory=list)
    lam_w: list[tuple[float, str]] = field(default_factory=list)
    count: int = 0

    def merge(self, other: "_Partial") -> None:
        self.count += other.count
        if other.max_edges > self.max_edges:
            self.max_edges, self.edge_w = other.max_edges, list(other.edge_w)
        elif other.max_edges == self.max_edges:
            self.edge_w += other.edge_w
        self.lam_w += other.lam_w
        self.max_lambda = max(self.max_lambda, other.max_lambda)


def _stanley_bound(e: int) -> float:
    return (-1.0 + math.sqrt(1.0 + 8.0 * e)) / 2.0


def _certify_subtree(args) -> _Partial:
    root_n, root_rows, n, s, lengths = args
    spec = FlowerSpec(s, lengths)
    keep = lambda g: is_flower_free(g, spec)  # noqa: E731
    out = _Partial()
    for g in _descend(Graph._trusted(root_n, tuple(root_rows)), n, keep):
        out.count += 1
        e = g.edge_count
        g6 = None
        if e > out.max_edges:
            g6 = to_graph6(g)
            out.max_edges, out.edge_w = e, [g6]
        elif e == out.max_edges:
            g6 = to_graph6(g)
            out.edge_w.append(g6)
        # lambda <= (sqrt(1+8e)-1)/2, so most graphs never need an eigensolve
        if e and _stanley_bound(e) < out.max_lambda - LAMBDA_TOL:
            continue
        lam = spectral_radius(g).lam if e else 0.0
        if lam >= out.max_lambda - LAMBDA_TOL:
            out.max_lambda = max(out.max_lambda, lam)
            out.lam_w = [w for w in out.lam_w if w[0] >= out.max_lambda - LAMBDA_TOL]
            out.lam_w.append((lam, g6 or to_graph6(g)))
    return out


def certify(n: int, spec: FlowerSpec, threads: int | None = None) -> SearchReport:
    """Exact ex(n, H) and ex_sp(n, H) by enumerating every H-free graph on n vertices.

    Containment is inherited by supergraphs, so the augmentation tree is cut
    at the first graph that contains the flower.  Witness lists are sorted,
    so the report does not depend on the worker count.
    """
    _check_order(n, False)
    threads = resolve_threads(threads)
    start = time.perf_counter()
    total = _Partial()
    if n == 0:
        total = _Partial(0, 0.0, [to_graph6(Graph.empty(0))], [(0.0, to_graph6(Graph.empty(0)))], 1)
    else:
        keep = lambda g: is_flower_free(g, spec)  # noqa: E731
        depth = min(n, 5)
        roots = _roots(n, keep, depth)
        jobs = [(r.n, r.rows, n, spec.s, spec.lengths) for r in roots]
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_certify_subtree, jobs))
        else:
            parts = [_certify_subtree(j) for j in jobs]
        for p in parts:
            total.merge(p)
    lam_w = sorted({g6 for lam, g6 in total.lam_w if lam >= total.max_lambda - LAMBDA_TOL})
    formula = family_edge_count(n, spec.s, spec.k)
    return SearchReport(
        n=n,
        spec=spec,
        max_edges=total.max_edges,
        max_lambda=total.max_lambda,
        edge_witnesses=sorted(set(total.edge_w)),
        lambda_witnesses=lam_w,
        graphs_enumerated=total.count,
        elapsed=time.perf_counter() - start,
        formula_edges=formula,
        agrees_with_formula=total.max_edges == formula,
        threads=threads,
    )


def check_fundamental_inequality(report: SearchReport, tol: float = 1e-6) -> bool:
    """e <= (n/2) lambda for the certified maxima (both maxima may come from different graphs)."""
    return report.max_edges <= report.n / 2 * report.max_lambda + tol


# --- Chvatal-Hanson ----------------------------------------------------------------

CH_MAX = 3


def ch_f(beta: int, delta: int) -> int:
    """Largest edge count with matching number <= beta and maximum degree <= delta."""
    if beta < 1 or delta < 1:
        raise ValueError(f"beta and delta must be positive, got ({beta}, {delta})")
    half_up = (delta + 1) // 2
    return delta * beta + (delta // 2) * (beta // half_up)


def _check_ch(beta: int, delta: int) -> None:
    if not (1 <= beta <= CH_MAX and 1 <= delta <= CH_MAX):
        raise ValueError(f"brute force covers 1 <= beta, delta <= {CH_MAX}, got ({beta}, {delta})")


def ch_order(beta: int, delta: int) -> int:
    """Vertex count that hosts every graph with matching number <= beta and degree <= delta.

    Take a maximum matching M.  Unmatched vertices are independent and only
    see M.  If both ends of an M-edge had distinct unmatched neighbours the
    matching would augment, so each M-edge contributes at most delta - 1
    unmatched neighbours.  Hence at most beta*(delta + 1) vertices are
    non-isolated, and smaller graphs appear padded with isolated vertices.
    """
    return beta * (delta + 1)


def _ch_witnesses(beta: int, delta: int) -> Iterator[Graph]:
    keep = lambda g: g.max_degree() <= delta and matching_number(g) <= beta  # noqa: E731
    # both constraints are hereditary, so the pruned tree stays small even
    # past the public enumeration limit
    yield from _descend(Graph(1, (0,)), ch_order(beta, delta), keep)


def ch_f_bruteforce(beta: int, delta: int) -> int:
    _check_ch(beta, delta)
    return max(g.edge_count for g in _ch_witnesses(beta, delta))


def ch_extremal_Q(beta: int, delta: int) -> Graph:
    """First extremal graph in enumeration order, with isolated vertices removed."""
    _check_ch(beta, delta)
    best = ch_f_bruteforce(beta, delta)
    for g in _ch_witnesses(beta, delta):
        if g.edge_count == best:
            return g.induced_subgraph([v for v in range(g.n) if g.rows[v]])
    raise AssertionError("unreachable: the maximum is attained")


# --- spectral local search ----------------------------------------------------------

HILL_MAX_N = 2000
OBJECTIVES = {"adjacency": spectral_radius, "signless": signless_laplacian_radius}


@dataclass
class ClimbResult:
    graph: Graph
    lam: float
    trace: list[float]
    accepted: int
    attempted: int

    def to_json(self) -> dict:
        return {
            "schema": "spectral-turan/climb/1",
            "graph6": to_graph6(self.graph),
            "n": self.graph.n,
            "edges": self.graph.edge_count,
            "lambda": self.lam,
            "trace": self.trace,
            "accepted": self.accepted,
            "attempted": self.attempted,
        }


def _start_graph(n: int, spec: FlowerSpec, start) -> Graph:
    if isinstance(start, Graph):
        if start.n != n:
            raise GraphError(f"start graph has {start.n} vertices, expected {n}")
        return start
    if start == "turan":
        return turan(n, 2)
    if start == "family":
        return extremal_family_member(n, spec.s, spec.k)
    raise ValueError(f"unknown start {start!r}; use 'family', 'turan' or a Graph")


def _random_move(g: Graph, rng: random.Random) -> tuple[str, list, list]:
    """One proposal from {add, delete, swap}; returns (kind, add, remove)."""
    n = g.n
    kind = rng.choice(("add", "delete", "swap"))
    add: list[tuple[int, int]] = []
    rem: list[tuple[int, int]] = []
    if kind in ("add", "swap"):
        for _ in range(64):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v and not g.has_edge(u, v):
                add = [(min(u, v), max(u, v))]
                break
    if kind in ("delete", "swap") and g.edge_count:
        u = rng.choice([w for w in range(n) if g.rows[w]])
        v = rng.choice(g.neighbors(u))
        rem = [(min(u, v), max(u, v))]
    return kind, add, rem


def hill_climb_spectral(
    n: int,
    spec: FlowerSpec,
    seed: int = 0,
    budget: int = 1000,
    start="family",
    objective: str = "adjacency",
    tol: float = LAMBDA_TOL,
) -> ClimbResult:
    """First-improvement local search for a large spectral radius among H-free graphs.

    Each of ``budget`` proposals is a random edge addition, deletion or swap;
    it is accepted when the result is still H-free and raises the objective by
    more than ``tol``.  The start graph must itself be H-free.
    """
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    if not 1 <= n <= HILL_MAX_N:
        raise ValueError(f"hill climbing supports 1 <= n <= {HILL_MAX_N}, got {n}")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; choose from {sorted(OBJECTIVES)}")
    radius = OBJECTIVES[objective]
    g = _start_graph(n, spec, start)
    if contains_flower(g, spec) is not None:
        raise GraphError("the start graph already contains the forbidden flower")
    rng = random.Random(seed)
    lam = radius(g).lam
    trace = [lam]
    accepted = 0
    for _ in range(budget):
        kind, add, rem = _random_move(g, rng)
        if not add and not rem:
            continue
        if kind == "delete":
            # removing an edge never raises either radius (monotone in edge set)
            continue
        cand = g.with_edges(add=add, remove=rem)
        new = radius(cand).lam
        if new <= lam + tol:
            continue
        if contains_flower(cand, spec) is not None:
            continue
        g, lam = cand, new
        trace.append(lam)
        accepted += 1
    return ClimbResult(g, lam, trace, accepted, budget)


def random_flower_free_walk(g: Graph, spec: FlowerSpec, rng: random.Random, steps: int) -> Graph:
    """Apply ``steps`` random add/delete/swap moves, each kept only if H-freeness survives."""
    for _ in range(steps):
        _, add, rem = _random_move(g, rng)
        if not add and not rem:
            continue
        cand = g.with_edges(add=add, remove=rem)
        if not add or contains_flower(cand, spec) is None:
            g = cand
    return g


@dataclass
class PerturbationStudy:
    n: int
    k: int
    t: int
    reference_q: float
    samples: int
    max_q: float
    ties: int
    counterexamples: list[str]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "q": 2 * self.t + 1,
            "reference_q": self.reference_q,
            "samples": self.samples,
            "max_sample_q": self.max_q,
            "ties": self.ties,
            "counterexamples": self.counterexamples,
        }


def split_graph_perturbations(
    n: int, k: int, t: int, samples: int = 1000, seed: int = 0, walk: int = 4, climb: int = 8
) -> PerturbationStudy:
    """Compare q(S_{n,kt}) with signless radii of random C_{k,2t+1}-free graphs.

    Sample i starts from S_{n,kt}, T_2(n) or the extremal family member (in
    rotation), takes a short random H-free walk, then a short climb on q.  Any
    sample whose q exceeds the split graph's by more than 1e-9 is re-checked
    for H-freeness and reported as a graph6 string.
    """
    spec = bouquet_spec(k, 2 * t + 1)
    ref_graph = split_graph(n, k * t)
    if contains_flower(ref_graph, spec) is not None:
        raise AssertionError("S_{n,kt} should not contain C_{k,2t+1}")
    ref = signless_laplacian_radius(ref_graph).lam
    starts = [ref_graph, turan(n, 2), extremal_family_member(n, spec.s, spec.k)]
    best = -math.inf
    bad: list[str] = []
    ties = 0
    for i in range(samples):
        rng = random.Random(seed * 1_000_003 + i)
        g = random_flower_free_walk(starts[i % len(starts)], spec, rng, walk)
        g = hill_climb_spectral(n, spec, seed=rng.randrange(2**31), budget=climb, start=g, objective="signless").graph
        q = signless_laplacian_radius(g).lam
        best = max(best, q)
        if q > ref + LAMBDA_TOL:
            if contains_flower(g, spec) is None:
                bad.append(to_graph6(g))
        elif q >= ref - LAMBDA_TOL:
            ties += 1
    return PerturbationStudy(n, k, t, ref, samples, best, ties, bad)
