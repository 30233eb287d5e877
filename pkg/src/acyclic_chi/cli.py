"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 budget or cap exhausted,
3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as B
from .colouring import (
    Colouring,
    check_lll_conditions,
    chi_exact,
    choose_g,
    refute_colouring,
    theta_bound,
    verify_eta_c,
)
from .colouring.estimators import LLLPathColouring, PowerGraphColouring
from .cycles import cycle_census, enumerate_cycles, lemma1_bound
from .exceptions import CapExceeded, OddCUnsupported, ResampleBudgetExhausted, SolverTimeout
from .experiments import SweepConfig, build_forbidden, records_to_csv, records_to_json, run_sweep
from .graph import EdgeProbabilityModel, dumps_edge_list, graph_to_dict, load_graph, sample_graph

EXIT_OK, EXIT_VERIFY, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_graph(path):
    try:
        return load_graph(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read graph {path}: {exc}") from None


def _load_colouring(path):
    try:
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return Colouring.from_dict(json.loads(text))
        return Colouring.loads(text)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read colouring {path}: {exc}") from None


def _dump_colouring(col, fmt):
    return json.dumps(col.to_dict()) + "\n" if fmt == "json" else col.dumps()


def cmd_gen(args):
    if (args.p is None) == (args.beta is None):
        raise BadInput("give exactly one of --p or --beta")
    forbidden = build_forbidden(json.loads(args.forbidden), args.n) if args.forbidden else None
    model = EdgeProbabilityModel(args.n, p=args.p, beta=args.beta, forbidden=forbidden)
    g = sample_graph(model, args.seed)
    text = json.dumps(graph_to_dict(g)) + "\n" if args.format == "json" else dumps_edge_list(g)
    _emit(text, args.out)
    return EXIT_OK


def cmd_cycles(args):
    g = _load_graph(args.graph)
    if args.list:
        try:
            cyc = enumerate_cycles(g, args.min_len, args.max_len, cap=args.cap)
        except CapExceeded as exc:
            print(f"more than {args.cap} cycles ({exc.partial} seen)", file=sys.stderr)
            return EXIT_BUDGET
        _emit(json.dumps([list(c) for c in cyc]) + "\n", args.out)
        return EXIT_OK
    census = cycle_census(g, args.max_len, args.cap)
    if args.format == "json":
        text = json.dumps({"counts": census.counts, "truncated": census.truncated}) + "\n"
    else:
        text = census.to_csv()
    _emit(text, args.out)
    return EXIT_BUDGET if census.truncated else EXIT_OK


def cmd_color(args):
    g = _load_graph(args.graph)
    try:
        if args.algorithm == "power_graph":
            col = PowerGraphColouring(c=args.c).fit(g).colouring_
        elif args.algorithm == "lll":
            est = LLLPathColouring(c=args.c, g=args.g, theta=args.theta, beta=args.beta,
                                   max_resamples=args.max_resamples, random_state=args.seed)
            col = est.fit(g).colouring_
        else:
            col = chi_exact(g, args.eta, args.c, max_n=args.cap, time_limit=args.time_limit)[1]
    except ResampleBudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        _emit(_dump_colouring(exc.colouring, args.format), args.out)
        return EXIT_BUDGET
    except (CapExceeded, SolverTimeout) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    _emit(_dump_colouring(col, args.format), args.out)
    return EXIT_OK


def cmd_verify(args):
    g = _load_graph(args.graph)
    col = _load_colouring(args.colouring)
    if col.n != g.n:
        raise BadInput(f"colouring has {col.n} vertices, graph has {g.n}")
    report = verify_eta_c(g, col, args.eta, args.c, cap=args.cap)
    _emit(json.dumps(report.to_dict()) + "\n", args.out)
    if not report.exact_verdict:
        return EXIT_BUDGET
    return EXIT_OK if report.passes else EXIT_VERIFY


def cmd_refute(args):
    g = _load_graph(args.graph)
    col = _load_colouring(args.colouring)
    if col.n != g.n:
        raise BadInput(f"colouring has {col.n} vertices, graph has {g.n}")
    try:
        cyc = refute_colouring(g, col, args.c, allow_odd=args.allow_odd, budget=args.cap)
    except (OddCUnsupported, ValueError) as exc:
        raise BadInput(str(exc)) from None
    _emit(json.dumps({"witness": list(cyc) if cyc else None}) + "\n", args.out)
    return EXIT_VERIFY if cyc else EXIT_OK


def cmd_sweep(args):
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.trials is not None:
            raw["trials_per_cell"] = args.trials
        if args.timing:
            raw["record_runtime"] = True
        cfg = SweepConfig.from_dict(raw)
    except (OSError, ValueError, TypeError, json.JSONDecodeError) as exc:
        raise BadInput(f"bad sweep config: {exc}") from None
    records = run_sweep(cfg, n_jobs=args.n_jobs)
    _emit(records_to_json(records) if args.format == "json" else records_to_csv(records), args.out)
    if any(not r.verified and r.truncated_flags for r in records):
        return EXIT_BUDGET
    return EXIT_OK if all(r.verified for r in records) else EXIT_VERIFY


def _bounds_rows(args):
    table = args.table
    if table == "beta-crit":
        rows = []
        for c in args.c:
            for eta in args.eta:
                b = B.beta_crit_bounds(c, eta)
                rows.append({"c": c, "eta": str(b.eta), "lower": str(b.lower),
                             "upper": str(b.upper)})
        return rows
    if table == "chernoff":
        return B.chernoff_table(args.t, args.p, args.eps, args.trials, args.seed)
    if table == "cycles":
        rows = []
        for n in args.n:
            for p in args.p:
                for k in args.k:
                    lo, hi = B.expected_cycle_bracket(n, p, k)
                    rows.append({"n": n, "p": p, "k": k, "lower": lo, "upper": hi,
                                 "expected": B.expected_cycle_count(n, p, k)})
        return rows
    if table == "lemma1":
        rows = []
        for n in args.n:
            for p in args.p:
                for k in args.k:
                    v = lemma1_bound(n, k, p, args.C)
                    rows.append({"n": n, "p": p, "k": k, "C": args.C, "bound": v.value,
                                 "vacuous": v.vacuous})
        return rows
    if table == "theta":
        rows = []
        for n in args.n:
            for beta in args.beta:
                for c in args.c:
                    p = n ** -beta
                    g = choose_g(beta, c)
                    th = theta_bound(n, p, g, c, args.D)
                    rows.append({"n": n, "beta": beta, "c": c, "g": g, "theta": th,
                                 "conditions": check_lll_conditions(th, n, p, g, c, args.D)})
        return rows
    raise BadInput(f"unknown table {table}")


def cmd_bounds(args):
    rows = _bounds_rows(args)
    text = json.dumps(rows) + "\n" if args.format == "json" else B.rows_to_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="acyclic-chi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=("csv", "json"), default="csv"):
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--format", choices=fmt, default=default)

    p = sub.add_parser("gen", help="sample a random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--forbidden", help='JSON family description, e.g. {"family": "clique", "size": 5}')
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cycles", help="cycle census (CSV) or cycle list (--list, JSON)")
    p.add_argument("graph")
    p.add_argument("--min-len", type=int, default=3)
    p.add_argument("--max-len", type=int)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.add_argument("--list", action="store_true")
    common(p)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("color", help="colour a graph")
    p.add_argument("graph")
    p.add_argument("--algorithm", choices=("power_graph", "lll", "exact"), default="power_graph")
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--eta", type=Fraction, default=Fraction(0))
    p.add_argument("--g", type=int)
    p.add_argument("--theta", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-resamples", type=int, default=100_000)
    p.add_argument("--cap", type=int, default=10, help="vertex cap for the exact solver")
    p.add_argument("--time-limit", type=float)
    common(p, ("csv", "json"), "csv")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check the (eta, c) condition")
    p.add_argument("graph")
    p.add_argument("colouring")
    p.add_argument("--eta", type=Fraction, default=Fraction(0))
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--cap", type=int, default=1_000_000)
    common(p, ("json",), "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("refute", help="search a short-coloured cycle witness")
    p.add_argument("graph")
    p.add_argument("colouring")
    p.add_argument("--c", type=int, default=4)
    p.add_argument("--allow-odd", action="store_true")
    p.add_argument("--cap", type=int, default=100_000, help="meta-path search budget")
    common(p, ("json",), "json")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("sweep", help="Monte Carlo sweep from a JSON config")
    p.add_argument("config")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--n-jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill runtime_ms (breaks byte identity)")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="closed-form bound tables")
    p.add_argument("table", choices=("beta-crit", "chernoff", "cycles", "lemma1", "theta"))
    p.add_argument("--c", type=int, nargs="+", default=[3, 4])
    p.add_argument("--eta", type=Fraction, nargs="+", default=[Fraction(0)])
    p.add_argument("--n", type=int, nargs="+", default=[200])
    p.add_argument("--p", type=float, nargs="+", default=[0.05])
    p.add_argument("--k", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--t", type=int, nargs="+", default=[100, 1000])
    p.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.2, 0.4])
    p.add_argument("--beta", type=float, nargs="+", default=[0.5])
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--D", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
