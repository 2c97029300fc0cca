import functools
import itertools

import numpy as np
import pytest

from spectral_turan.graph import Graph
from spectral_turan.search import enumerate_graphs

# Filled by tests/test_acceptance.py, printed in the terminal summary.
ACCEPTANCE_LINES: dict[int | str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(str(k).rstrip("W")), str(k))):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@functools.lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_graphs(n))


def graphs_upto(n: int):
    for m in range(1, n + 1):
        yield from all_graphs(m)


def dense_radius(g: Graph, signless: bool = False) -> float:
    """Independent oracle: LAPACK symmetric eigensolver on the full matrix."""
    a = g.adjacency_matrix()
    if signless:
        a = a + np.diag(a.sum(axis=1))
    return float(np.linalg.eigvalsh(a)[-1])


def labeled_class_keys(n: int, masks: np.ndarray) -> np.ndarray:
    """Isomorphism invariant by brute force: the minimum edge mask over all n! relabellings.

    ``masks`` holds labelled graphs with edge (i, j) at bit index
    ``pairs.index((i, j))``.  Complete, so equal keys iff isomorphic.
    """
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: b for b, p in enumerate(pairs)}
    masks = masks.astype(np.int64)
    best = None
    for perm in itertools.permutations(range(n)):
        out = np.zeros_like(masks)
        for b, (i, j) in enumerate(pairs):
            a, c = perm[i], perm[j]
            nb = index[(min(a, c), max(a, c))]
            out |= ((masks >> b) & 1) << nb
        best = out if best is None else np.minimum(best, out)
    return best


def graph_to_labeled_mask(g: Graph) -> int:
    pairs = list(itertools.combinations(range(g.n), 2))
    return sum(1 << b for b, (i, j) in enumerate(pairs) if g.has_edge(i, j))


def labeled_graph(n: int, mask: int) -> Graph:
    from spectral_turan.graph import graph_from_edges

    pairs = list(itertools.combinations(range(n), 2))
    return graph_from_edges(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


@pytest.fixture(scope="session")
def graphs8():
    return all_graphs(8)
