"""Command line entry point.

Exit codes: 0 success (and "verdict true" for verify), 1 verdict false
(verify only), 2 usage error, 3 runtime error or timeout. Every subcommand
is deterministic given its flags and seed; --jobs is accepted for
compatibility with parallel drivers and never changes output.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .constructors import (
    InvariantViolation,
    good_set_audit,
    greedy_packing,
    packing_separation,
    tree_good_set,
)
from .families import (
    canonical_set_tk,
    gen_cycle,
    gen_path,
    gen_perfect_binary,
    gen_tdelta,
    gen_tk,
    gen_tprime,
    random_subcubic_graph,
    random_subcubic_tree,
    tprime_dense_set,
)
from .graphs import EdgeListError, Graph, endvertices, parse_edge_list, write_edge_list
from .solvers import InfeasibleError, alpha_e_exact, gamma_e_exact
from .weights import is_exponentially_dominating, is_exponentially_independent
from .experiments import (
    CorpusError,
    bound_table,
    conjecture_scan,
    forced_endvertex_study,
    random_ei_probability,
)


class UsageError(ValueError):
    pass


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _read_set(path: str) -> frozenset:
    out = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.add(int(line))
            except ValueError:
                raise UsageError(f"set file line {line_no}: expected a vertex id, got {line!r}") from None
    return frozenset(out)


def _set_text(S) -> str:
    return "".join(f"{v}\n" for v in sorted(S))


def _gen_graph(args) -> tuple[Graph, dict]:
    fam = args.family
    need = lambda name, val: val if val is not None else _usage(f"--{name} is required for family {fam}")
    if fam == "tk":
        lg = gen_tk(need("k", args.k))
        return lg.graph, lg.labels
    if fam == "tprime":
        lg = gen_tprime(need("k", args.k))
        return lg.graph, lg.labels
    if fam == "tdelta":
        lg = gen_tdelta(need("delta", args.delta), need("depth", args.depth))
        return lg.graph, lg.labels
    if fam == "pbt":
        lg = gen_perfect_binary(need("depth", args.depth))
        return lg.graph, lg.labels
    if fam == "path":
        return gen_path(need("n", args.n)), {}
    if fam == "cycle":
        return gen_cycle(need("n", args.n)), {}
    if fam == "random-tree":
        return random_subcubic_tree(need("n", args.n), args.seed), {}
    if fam == "random-graph":
        return (
            random_subcubic_graph(need("n", args.n), need("extra-edges", args.extra_edges), args.seed),
            {},
        )
    _usage(f"unknown family {fam!r}")


def _usage(msg: str):
    raise UsageError(msg)


def _cmd_gen(args) -> int:
    try:
        G, labels = _gen_graph(args)
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from exc
    _write(args.out, write_edge_list(G))
    if args.labels_out:
        lines = [f"# expindep {__version__}"]
        for name in sorted(labels):
            val = labels[name]
            ids = (val,) if isinstance(val, int) else val
            for v in ids:
                lines.append(f"{name} {v}")
        _write(args.labels_out, "\n".join(lines) + "\n")
    return 0


def _cmd_verify(args) -> int:
    G = _read_graph(args.graph)
    S = _read_set(args.set)
    bad = [v for v in S if not 0 <= v < G.n]
    if bad:
        raise UsageError(f"set contains ids outside the graph: {sorted(bad)}")
    if args.mode == "ei":
        report = is_exponentially_independent(G, S)
    else:
        report = is_exponentially_dominating(G, S)
    text = report.to_text()
    _write(args.report, text)
    if args.report not in (None, "-"):
        sys.stdout.write(f"verdict {'true' if report.ok else 'false'}\n")
    return 0 if report.ok else 1


def _cmd_solve(args) -> int:
    G = _read_graph(args.graph)
    if args.param == "alpha-e":
        required = set()
        if args.require_endvertices:
            required |= endvertices(G)
        if args.require_set:
            required |= _read_set(args.require_set)
        result = alpha_e_exact(G, required=required, time_budget=args.timeout)
    else:
        if args.require_endvertices or args.require_set:
            raise UsageError("--require-* flags apply to alpha-e only")
        result = gamma_e_exact(G, time_budget=args.timeout)
    sys.stdout.write(f"param {args.param}\n" + result.to_text())
    if args.witness_out:
        _write(args.witness_out, _set_text(result.witness))
    return 3 if result.status == "timeout" else 0


def _cmd_construct(args) -> int:
    if args.method == "packing":
        if not args.graph:
            raise UsageError("--graph is required for packing")
        G = _read_graph(args.graph)
        dstar = args.dstar if args.dstar is not None else packing_separation(G.n)
        S = greedy_packing(G, dstar)
        report = is_exponentially_independent(G, S)
        if not report.ok:
            raise RuntimeError("packing failed re-verification")
        sys.stdout.write(f"method packing\ndstar {dstar}\nsize {len(S)}\nset " + " ".join(map(str, sorted(S))) + "\n")
    elif args.method == "tree-good":
        if not args.graph:
            raise UsageError("--graph is required for tree-good")
        G = _read_graph(args.graph)
        S, trace = tree_good_set(G)
        ok, why = good_set_audit(G, S)
        if args.trace_out:
            _write(args.trace_out, trace.to_text())
        sys.stdout.write(f"method tree-good\nsize {len(S)}\naudit {why}\nset " + " ".join(map(str, sorted(S))) + "\n")
    else:  # family-canonical
        if args.family == "tk":
            if args.k is None:
                raise UsageError("--k is required")
            S = canonical_set_tk(args.k)
            G = gen_tk(args.k).graph
        elif args.family == "tprime":
            if args.k is None:
                raise UsageError("--k is required")
            S = tprime_dense_set(args.k, args.phase)
            G = gen_tprime(args.k).graph
        else:
            raise UsageError("family-canonical supports --family tk or tprime")
        report = is_exponentially_independent(G, S)
        if not report.ok:
            raise RuntimeError("canonical set failed re-verification")
        sys.stdout.write(f"method family-canonical\nsize {len(S)}\nset " + " ".join(map(str, sorted(S))) + "\n")
    if args.set_out:
        _write(args.set_out, _set_text(S))
    return 0


def _cmd_experiment(args) -> int:
    if args.name == "bound-table":
        if not args.corpus:
            raise UsageError("--corpus is required for bound-table")
        try:
            table = bound_table(args.corpus)
        except CorpusError as exc:
            raise UsageError(str(exc)) from exc
        _write(args.out, table.to_text())
    elif args.name == "random-ei":
        try:
            p = Fraction(args.p)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse probability {args.p!r}") from None
        table = random_ei_probability(
            range(args.kmin, args.kmax + 1), p, args.trials, args.seed
        )
        _write(args.out, table.to_text())
    elif args.name == "conjecture-scan":
        report = conjecture_scan(args.nmax)
        _write(args.out, report.to_text())
    else:  # forced-endvertices
        report = forced_endvertex_study(args.k, time_budget=args.timeout)
        _write(args.out, report.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expindep",
        description="exact tools for exponentially independent and dominating sets",
    )
    parser.add_argument("--version", action="version", version=f"expindep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a family graph as an edge list")
    g.add_argument("--family", required=True,
                   choices=["tk", "tprime", "tdelta", "pbt", "path", "cycle", "random-tree", "random-graph"])
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--depth", type=int)
    g.add_argument("--delta", type=int)
    g.add_argument("--extra-edges", type=int, dest="extra_edges")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.add_argument("--labels-out", dest="labels_out")
    g.set_defaults(func=_cmd_gen)

    v = sub.add_parser("verify", help="verify a vertex set against a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--set", required=True)
    v.add_argument("--mode", required=True, choices=["ei", "ed"])
    v.add_argument("--report")
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("solve", help="exact optimum of either parameter")
    s.add_argument("--param", required=True, choices=["alpha-e", "gamma-e"])
    s.add_argument("--graph", required=True)
    s.add_argument("--require-endvertices", action="store_true", dest="require_endvertices")
    s.add_argument("--require-set", dest="require_set")
    s.add_argument("--timeout", type=float)
    s.add_argument("--witness-out", dest="witness_out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_solve)

    c = sub.add_parser("construct", help="constructive selections")
    c.add_argument("--method", required=True, choices=["packing", "tree-good", "family-canonical"])
    c.add_argument("--graph")
    c.add_argument("--dstar", type=int)
    c.add_argument("--family", choices=["tk", "tprime"])
    c.add_argument("--k", type=int)
    c.add_argument("--phase", type=int, default=0)
    c.add_argument("--set-out", dest="set_out")
    c.add_argument("--trace-out", dest="trace_out")
    c.set_defaults(func=_cmd_construct)

    e = sub.add_parser("experiment", help="reproducible experiment harness")
    e.add_argument("--name", required=True,
                   choices=["bound-table", "random-ei", "conjecture-scan", "forced-endvertices"])
    e.add_argument("--corpus")
    e.add_argument("--kmin", type=int, default=3)
    e.add_argument("--kmax", type=int, default=9)
    e.add_argument("--p", default="1/2")
    e.add_argument("--trials", type=int, default=2000)
    e.add_argument("--nmax", type=int, default=7)
    e.add_argument("--k", type=int, default=3)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--timeout", type=float)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out")
    e.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (EdgeListError, InfeasibleError, InvariantViolation, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
