"""Compare the compiled and pure-Python kernels.

Each backend runs in its own interpreter (the choice is fixed at import), so
this script re-invokes itself with ``SPECTRAL_TURAN_PURE`` set or unset.

    python benchmarks/bench_kernels.py            # both backends, summary table
    python benchmarks/bench_kernels.py --worker   # one backend, JSON on stdout
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def _workloads():
    from spectral_turan.graph import canonical_form, graph_from_edges
    from spectral_turan.search import ch_f_bruteforce, enumerate_graphs

    rng = random.Random(0)
    sample = []
    for _ in range(400):
        n = rng.randint(8, 14)
        sample.append(graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]))

    def canon():
        for g in sample:
            canonical_form(g)

    def enum7():
        assert sum(1 for _ in enumerate_graphs(7)) == 1044

    def ch22():
        assert ch_f_bruteforce(2, 2) == 6

    return {"canonical_form x400": canon, "enumerate n=7": enum7, "ch bruteforce (2,2)": ch22}


def worker(repeats: int) -> dict:
    from spectral_turan import COMPILED

    out = {"compiled": COMPILED}
    for name, fn in _workloads().items():
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out[name] = best
    return out


def run_backend(pure: bool, repeats: int) -> dict:
    env = dict(os.environ)
    env.pop("SPECTRAL_TURAN_PURE", None)
    if pure:
        env["SPECTRAL_TURAN_PURE"] = "1"
    proc = subprocess.run(
        [sys.executable, __file__, "--worker", "--repeats", str(repeats)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(worker(args.repeats)))
        return
    fast = run_backend(False, args.repeats)
    slow = run_backend(True, args.repeats)
    if not fast.pop("compiled"):
        print("note: compiled extension not importable; both columns are pure Python", file=sys.stderr)
    slow.pop("compiled")
    print(f"{'workload':<24}{'compiled s':>12}{'pure s':>12}{'speedup':>10}")
    for name in fast:
        print(f"{name:<24}{fast[name]:>12.4f}{slow[name]:>12.4f}{slow[name] / fast[name]:>9.1f}x")


if __name__ == "__main__":
    main()
