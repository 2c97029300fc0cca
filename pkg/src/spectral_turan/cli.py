"""Command-line entry point: ``spectral-turan <subcommand> ...``.

Data goes to stdout, diagnostics to stderr.  Exit status 2 means the input
or arguments were rejected; ``detect`` additionally returns 0 for
flower-free input and 1 when a flower was found.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

from . import constructions as C
from .constructions import FlowerSpec
from .detection import contains_flower, contains_flower_at
from .graph import Graph, GraphError, read_graphs, to_graph6
from .search import certify, ch_f, ch_f_bruteforce, hill_climb_spectral, resolve_threads
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, ConvergenceError, signless_laplacian_radius, spectral_radius
from .stability import DEFAULT_RESTARTS, stability_report

EXIT_FREE, EXIT_CONTAINS, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with its own status
        raise UsageError(message)


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise UsageError(f"empty range {text!r}")
            return list(range(a, b + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use an integer or a..b") from None


def parse_cycles(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad cycle list {text!r}; use comma-separated odd integers") from None


def _spec(args) -> FlowerSpec:
    return FlowerSpec(args.s, parse_cycles(args.cycles))


def _add_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s", type=int, default=0, help="number of triangles")
    p.add_argument("--cycles", default="", help="odd cycle lengths >= 5, comma separated")


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="inline graph6 string")
    p.add_argument("--input", "-i", help="file of graph6 lines or an edge list ('-' for stdin)")


def _graphs(args) -> list[Graph]:
    if (args.graph is None) == (args.input is None):
        raise UsageError("give exactly one input: an inline graph6 string or --input")
    if args.graph is not None:
        text = args.graph
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.input).read_text()
    graphs = read_graphs(text)
    if not graphs:
        raise UsageError("no graphs in input")
    return graphs


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


# --- subcommands ------------------------------------------------------------------


def _construct(args) -> int:
    kind = args.kind
    if kind == "turan":
        g = C.turan(args.n, args.r)
    elif kind == "flower":
        g = C.flower(_spec(args))
    elif kind == "bouquet":
        g = C.cycle_bouquet(args.k, args.q)
    elif kind == "family":
        g = C.extremal_family_member(args.n, args.s, args.k, args.variant)
    elif kind == "fan":
        g = C.fan_extremal(args.n, args.k)
    elif kind == "split":
        g = C.split_graph(args.n, args.k)
    elif kind == "complete":
        g = C.complete(args.n)
    elif kind == "complete-bipartite":
        g = C.complete_bipartite(args.a, args.b)
    elif kind in ("path", "cycle", "star", "matching"):
        g = getattr(C, kind)(args.t)
    elif kind == "petersen":
        g = C.petersen()
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construction {kind}")
    if args.format == "json":
        _emit_json({"schema": "spectral-turan/graph/1", "graph6": to_graph6(g), "n": g.n, "edges": g.edge_count})
    else:
        sys.stdout.write(to_graph6(g) + "\n")
    return 0


def _spectral(args) -> int:
    radius = signless_laplacian_radius if args.signless else spectral_radius
    for g in _graphs(args):
        try:
            res = radius(g, tol=args.tol, max_iter=args.max_iter)
        except ConvergenceError as exc:
            print(f"warning: {exc}", file=sys.stderr)
            res = exc.result
        out = {"schema": "spectral-turan/spectral/1", "n": g.n, "matrix": "signless" if args.signless else "adjacency"}
        out.update(res.to_json())
        _emit_json(out)
    return 0


def _detect(args) -> int:
    spec = _spec(args)
    found_any = False
    for g in _graphs(args):
        emb = contains_flower(g, spec) if args.apex is None else contains_flower_at(g, args.apex, spec)
        found_any |= emb is not None
        if args.witness:
            _emit_json(
                {
                    "schema": "spectral-turan/detect/1",
                    "spec": spec.to_json(),
                    "contains": emb is not None,
                    "witness": emb.to_json() if emb else None,
                }
            )
    return EXIT_CONTAINS if found_any else EXIT_FREE


def _certify(args) -> int:
    report = certify(args.n, _spec(args), threads=args.threads)
    print(f"certified n={args.n} in {report.elapsed:.2f}s", file=sys.stderr)
    _emit_json(report.to_json())
    return 0


def _climb(args) -> int:
    res = hill_climb_spectral(
        args.n, _spec(args), seed=args.seed, budget=args.budget, start=args.start, objective=args.objective
    )
    if args.format == "g6":
        sys.stdout.write(to_graph6(res.graph) + "\n")
    else:
        _emit_json(res.to_json())
    return 0


def _analyze(args) -> int:
    spec = _spec(args)
    for g in _graphs(args):
        rep = stability_report(g, spec, delta=args.delta, seed=args.seed, restarts=args.restarts)
        _emit_json(rep.to_json())
    return 0


def _table(args) -> int:
    if args.table == "ch":
        header = ["beta", "delta", "f"] + (["bruteforce"] if args.brute else [])
        rows = []
        for b in parse_range(args.beta):
            for d in parse_range(args.delta):
                row = [b, d, ch_f(b, d)]
                if args.brute:
                    row.append(ch_f_bruteforce(b, d))
                rows.append(row)
    else:
        header = ["n", "s", "k", "edges"]
        rows = []
        for n in parse_range(args.n):
            for s in parse_range(args.s):
                for k in parse_range(args.k):
                    if s + k >= 1:
                        rows.append([n, s, k, C.family_edge_count(n, s, k)])
    if args.format == "json":
        _emit_json({"schema": "spectral-turan/table/1", "columns": header, "rows": rows})
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="spectral-turan", description="Spectral Turan toolkit for flower graphs.")
    root.add_argument("--threads", type=int, default=None, help="worker processes (default: $SPECTRAL_TURAN_THREADS or 1)")
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="emit a named graph as graph6")
    p.add_argument(
        "kind",
        choices=[
            "turan", "flower", "bouquet", "family", "fan", "split", "complete",
            "complete-bipartite", "path", "cycle", "star", "matching", "petersen",
        ],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--variant", choices=C.FAMILY_VARIANTS, default="bipartite")
    p.add_argument("--format", choices=["g6", "json"], default="g6")
    _add_spec(p)
    p.set_defaults(func=_construct)

    p = sub.add_parser("spectral", help="dominant eigenvalue and Perron vector statistics")
    _add_input(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--signless", action="store_true", help="use D + A instead of A")
    p.set_defaults(func=_spectral)

    p = sub.add_parser("detect", help="flower containment (exit 0 free, 1 contains)")
    _add_input(p)
    _add_spec(p)
    p.add_argument("--apex", type=int, help="only try this apex")
    p.add_argument("--witness", action="store_true", help="print a JSON witness per graph")
    p.set_defaults(func=_detect)

    p = sub.add_parser("certify", help="exhaustive ex(n,H) and ex_sp(n,H) for n <= 9")
    p.add_argument("--n", type=int, required=True)
    _add_spec(p)
    p.set_defaults(func=_certify)

    p = sub.add_parser("climb", help="seeded local search for large spectral radius")
    p.add_argument("--n", type=int, required=True)
    _add_spec(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--start", choices=["family", "turan"], default="family")
    p.add_argument("--objective", choices=["adjacency", "signless"], default="adjacency")
    p.add_argument("--format", choices=["json", "g6"], default="json")
    p.set_defaults(func=_climb)

    p = sub.add_parser("analyze", help="stability report for a connected graph")
    _add_input(p)
    _add_spec(p)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.set_defaults(func=_analyze)

    p = sub.add_parser("table", help="Chvatal-Hanson or extremal edge-count tables")
    p.add_argument("table", choices=["ch", "family"])
    p.add_argument("--beta", default="1..3")
    p.add_argument("--delta", default="1..3")
    p.add_argument("--brute", action="store_true", help="add the exhaustive column (beta, delta <= 3)")
    p.add_argument("--n", default="10..20")
    p.add_argument("--s", default="1")
    p.add_argument("--k", default="1")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_table)

    for name, sp in sub.choices.items():
        # accept --threads after the subcommand as well as before it
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return root


_REQUIRED = {
    "turan": ("n",), "family": ("n", "k"), "fan": ("n", "k"), "split": ("n", "k"),
    "bouquet": ("k", "q"), "complete": ("n",), "complete-bipartite": ("a", "b"),
    "path": ("t",), "cycle": ("t",), "star": ("t",), "matching": ("t",),
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.threads = resolve_threads(args.threads)
        if args.command == "construct":
            missing = [f"--{a}" for a in _REQUIRED.get(args.kind, ()) if getattr(args, a) is None]
            if missing:
                raise UsageError(f"construct {args.kind} needs {' '.join(missing)}")
        return args.func(args)
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"spectral-turan: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
