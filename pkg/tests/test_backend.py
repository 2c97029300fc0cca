import random

import pytest

from spectral_turan import _backend, _kernels_py
from spectral_turan.graph import graph_from_edges


def _random_rows(rng, n, p):
    g = graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
    return g.rows


@pytest.mark.skipif(not _backend.COMPILED, reason="compiled extension not built")
def test_compiled_matches_pure_canon():
    from spectral_turan import _kernels

    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(1, 14)
        rows = _random_rows(rng, n, rng.uniform(0.1, 0.9))
        assert _kernels.canon(n, rows)[0] == _kernels_py.canon(n, rows)[0]
        assert list(_kernels.equitable_cells(n, rows)) == list(_kernels_py.equitable_cells(n, rows))


@pytest.mark.skipif(not _backend.COMPILED, reason="compiled extension not built")
def test_compiled_matches_pure_children():
    from spectral_turan import _kernels

    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(1, 7)
        rows = _random_rows(rng, n, 0.5)
        a = [(c, tuple(r)) for c, r in _kernels.children(n, rows)]
        b = [(c, tuple(r)) for c, r in _kernels_py.children(n, rows)]
        assert a == b


def test_pure_backend_enumerates(monkeypatch):
    monkeypatch.setattr(_backend, "kernels", _kernels_py)
    import spectral_turan.search as search

    monkeypatch.setattr(search, "kernels", _kernels_py)
    assert sum(1 for _ in search.enumerate_graphs(6)) == 156


def test_forced_pure_import(monkeypatch):
    import importlib
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from spectral_turan import _backend; print(_backend.COMPILED)"],
        env={**__import__("os").environ, "SPECTRAL_TURAN_PURE": "1"},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "False"
    importlib.invalidate_caches()
