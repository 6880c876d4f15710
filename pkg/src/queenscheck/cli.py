"""Command-line interface: solve boards, run ad-hoc queries, run checks.

Exit codes: 0 success/all checks pass, 1 check failure, 2 usage or parse
error, 3 a check was resource-capped (and none failed). Output is
deterministic byte-for-byte for a fixed command line.
"""

import argparse
import json
import sys

from .engine import Answer, SearchTruncated, SolveOptions, solve
from .parser import ParseError, parse_program, parse_query
from .queens import (
    initial_query,
    mutant_names,
    mutant_program,
    nqueens_program,
    render_board,
    solution_line,
    solve_queens,
)
from .specs import exactness_pool, sample_s_pq, spec_set
from .terms import (
    DEFAULT_SIGNATURE,
    Program,
    Signature,
    SignatureError,
    format_query,
    format_term,
)
from .verify import (
    check_completeness_condition,
    check_fixpoint_exactness,
    check_model,
    check_query_bound,
    check_recurrent,
    check_row_shift,
    report_record,
    report_text,
)

RULES = {"leftmost": "leftmost", "rightmost": "rightmost", "fair": "fair_round_robin"}

SUITES = ("model", "covered", "recurrent", "bound", "rowshift", "fixpoint", "all")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPPED = 3


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _load_signature(path) -> Signature:
    """Signature file: one `name arity` pair per line, # comments allowed."""
    symbols = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            name, arity = line.split()
            symbols.append((name, int(arity)))
    return Signature(frozenset(symbols))


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="queenscheck")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--rule", choices=sorted(RULES), default="leftmost")
        p.add_argument("--occur-check", choices=("on", "off"), default="on")
        p.add_argument("--depth", type=_positive, default=None,
                       help="depth limit (solve/query) or base depth (verify)")
        p.add_argument("--format", choices=("text", "records"), default="text")
        p.add_argument("--signature", default=None, help="signature file")

    p_solve = sub.add_parser("solve", help="solve the n-queens board")
    p_solve.add_argument("n", type=_positive)
    p_solve.add_argument("--boards", action="store_true")
    p_solve.add_argument("--mutate", choices=mutant_names(), default=None)
    common(p_solve)

    p_query = sub.add_parser("query", help="run a query against a program file")
    p_query.add_argument("program")
    p_query.add_argument("query")
    p_query.add_argument("--answer-limit", type=_positive, default=None)
    common(p_query)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--mutate", choices=mutant_names(), default=None)
    p_verify.add_argument("--max-instances", type=_positive, default=None)
    p_verify.add_argument("--n", type=_positive, default=4,
                          help="board size for the bound suite")
    p_verify.add_argument("--spec", default=None,
                          help="spec set name (default: s for model, s0 for covered)")
    common(p_verify)
    return top


def _solve_opts(args) -> SolveOptions:
    return SolveOptions(
        selection_rule=RULES[args.rule],
        depth_limit=args.depth,
        occur_check=args.occur_check == "on",
        answer_limit=getattr(args, "answer_limit", None),
    )


def cmd_solve(args) -> int:
    program = mutant_program(args.mutate) if args.mutate else nqueens_program()
    sols = sorted(solve_queens(args.n, program, _solve_opts(args)),
                  key=lambda s: s.columns_to_rows)
    for s in sols:
        if args.format == "records":
            print(json.dumps({"n": s.n, "rows": list(s.columns_to_rows)}))
        else:
            print(solution_line(s))
            if args.boards:
                print(render_board(s))
                print()
    if args.format == "text":
        print(f"{len(sols)} solutions")
    return EXIT_OK


def cmd_query(args) -> int:
    sig = _load_signature(args.signature) if args.signature else None
    with open(args.program) as fh:
        program = parse_program(fh.read(), sig)
    query = parse_query(args.query)
    count = 0
    for item in solve(program, query, _solve_opts(args)):
        if isinstance(item, SearchTruncated):
            if args.format == "records":
                print(json.dumps({"truncated_branches": item.branches_cut}))
            else:
                print(f"search truncated ({item.branches_cut} branches cut)")
            continue
        count += 1
        if args.format == "records":
            print(json.dumps({
                "bindings": {v.name: format_term(t) for v, t in item.substitution},
                "query": format_query(item.instantiated_query),
            }))
        else:
            print(format_query(item.instantiated_query))
    if args.format == "text":
        print(f"{count} answers")
    return EXIT_OK


def _emit(report, fmt: str):
    if fmt == "records":
        print(json.dumps(report_record(report)))
    else:
        print(report_text(report))


def cmd_verify(args) -> int:
    sig = _load_signature(args.signature) if args.signature else DEFAULT_SIGNATURE
    program = mutant_program(args.mutate) if args.mutate else nqueens_program()
    depth = args.depth if args.depth is not None else 3
    cap_kw = {}
    if args.max_instances is not None:
        cap_kw["max_instances"] = args.max_instances

    reports = []
    suites = SUITES[:-1] if args.suite == "all" else (args.suite,)
    for suite in suites:
        if suite == "model":
            spec = spec_set(args.spec or "s")
            reports.append(check_model(program, spec, sig, depth, **cap_kw))
        elif suite == "covered":
            spec = spec_set(args.spec or "s0")
            reports.append(check_completeness_condition(program, spec, sig, depth))
        elif suite == "recurrent":
            reports.append(check_recurrent(program, sig=sig, depth=depth, **cap_kw))
        elif suite == "bound":
            bound = check_query_bound(initial_query(args.n))
            if args.format == "records":
                print(json.dumps({"check": "check_query_bound", "n": args.n,
                                  "bound": bound}))
            else:
                print(f"check_query_bound: n={args.n} bound={bound}")
            if bound is None:
                return EXIT_FAIL
            continue
        elif suite == "rowshift":
            n_inst = args.max_instances if args.max_instances else 20_000
            reports.append(check_row_shift(sig, n_instances=n_inst))
        elif suite == "fixpoint":
            fragment = Program(program.clauses_for("pq"))
            pool = exactness_pool(sig)
            expected = sample_s_pq(sig, depth, pool=pool, max_spine=depth)
            reports.append(check_fixpoint_exactness(fragment, expected, sig,
                                                    depth, pool=pool))
    for r in reports:
        _emit(r, args.format)
    if any(r.verdict == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.verdict == "resource-capped" for r in reports):
        return EXIT_CAPPED
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "query":
            return cmd_query(args)
        return cmd_verify(args)
    except (ParseError, SignatureError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
