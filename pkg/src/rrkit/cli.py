"""Command-line interface.

Exit codes follow one convention across commands: 0 means true/nonempty,
1 means false/empty, 2 means any error (bad usage, unreadable file,
contract violation).  Words on the command line are space-separated
symbol tokens, e.g. --word "a1 a2 abar2 abar1".  JSON output is emitted
with sorted keys so golden files stay byte-stable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .automata import Nfa
from .engine import log2_check, nrr_decide, rational_index
from .errors import ContractError, InputError, UnsupportedFilterError
from .filters import FilterSpec, d1_counter, parse_filter_name
from .grammars import format_grammar, parse_grammar
from .reductions import bar_hillel, cs_transducer, height_bound, mark_automaton, reduce_d2_to_ssharpup


def _load_nfa(path: str) -> Nfa:
    try:
        with open(path, encoding="utf-8") as fh:
            return Nfa.from_json(fh.read())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_grammar(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_grammar(fh.read())
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _emit_stats(stats: dict) -> None:
    print(json.dumps(stats, sort_keys=True), file=sys.stderr)


def _cmd_member(args) -> int:
    f = parse_filter_name(args.filter)
    word = tuple(args.word.split())
    result = f.contains(word)
    print("true" if result else "false")
    return 0 if result else 1


def _decide_with_method(a: Nfa, f: FilterSpec, method: str):
    if method == "auto":
        return nrr_decide(a, f)
    if method == "bar-hillel":
        if f.kind == "counter":
            raise InputError("a counter-backed filter has no grammar route")
        return nrr_decide(a, f)
    if method == "counter":
        if f.kind == "counter":
            return nrr_decide(a, f)
        if f.kind == "dyck" and f.n == 1:
            return nrr_decide(a, FilterSpec.from_counter(d1_counter()))
        raise InputError(f"no counter realization is registered for filter kind {f.kind!r}")
    raise InputError(f"unknown method {method!r}")


def _cmd_decide(args) -> int:
    f = parse_filter_name(args.filter)
    a = _load_nfa(args.nfa)
    if args.method == "log2":
        for sym in a.alphabet:
            if sym not in f.alphabet:
                raise InputError(f"automaton symbol {sym!r} is not in the filter alphabet")
        grammar = f.filter_grammar().cnf()
        plain = Nfa(
            a.states, f.alphabet, a.initial, a.accepting, a.transitions
        ).without_epsilon_moves()
        stats = log2_check(grammar, plain)
        if args.json:
            _print_json({"method": "log2", "nonempty": stats.result, "stats": stats.to_dict()})
        else:
            print("nonempty" if stats.result else "empty")
        return 0 if stats.result else 1
    report = _decide_with_method(a, f, args.method)
    if args.json:
        _print_json(report.to_dict())
    else:
        print("nonempty" if report.nonempty else "empty")
    return 0 if report.nonempty else 1


def _cmd_witness(args) -> int:
    f = parse_filter_name(args.filter)
    a = _load_nfa(args.nfa)
    report = _decide_with_method(a, f, args.method)
    if args.json:
        _print_json(report.to_dict())
    elif report.witness is None:
        print("none")
    else:
        print(" ".join(report.witness))
    return 0 if report.nonempty else 1


def _cmd_reduce(args) -> int:
    if args.target == "bar-hillel":
        grammar = _load_grammar(args.grammar)
        a = _load_nfa(args.nfa)
        product = bar_hillel(grammar, a)
        sys.stdout.write(format_grammar(product))
        if args.emit_stats:
            _emit_stats(
                {"nonterminals": len(product.nonterminals), "rules": len(product.rules)}
            )
    elif args.target == "cs":
        grammar = _load_grammar(args.grammar)
        t = cs_transducer(grammar)
        sys.stdout.write(t.to_json())
        if args.emit_stats:
            _emit_stats({"states": len(t.states), "transitions": len(t.transitions)})
    elif args.target == "mark":
        a = _load_nfa(args.nfa)
        marked = mark_automaton(a)
        sys.stdout.write(marked.nfa.to_json())
        if args.emit_stats:
            _emit_stats(
                {"height_bound": height_bound(a), "states": len(marked.nfa.states)}
            )
    else:
        a = _load_nfa(args.nfa)
        reduced = reduce_d2_to_ssharpup(a)
        sys.stdout.write(reduced.to_json())
        if args.emit_stats:
            _emit_stats({"states": len(reduced.states)})
    return 0


def _cmd_index(args) -> int:
    f = parse_filter_name(args.filter)
    if args.sample is None:
        value = rational_index(f, args.states, mode="exhaustive")
        mode = "exhaustive"
    else:
        value = rational_index(
            f, args.states, mode="sample", sample_count=args.sample, seed=args.seed
        )
        mode = "sample"
    if args.json:
        _print_json({"index": value, "mode": mode, "states": args.states})
    else:
        print(value)
    return 0


def _cmd_check_log2(args) -> int:
    grammar = _load_grammar(args.grammar).cnf()
    a = _load_nfa(args.nfa)
    for t in grammar.terminals:
        if t not in a.alphabet:
            raise InputError(f"grammar terminal {t!r} is missing from the automaton alphabet")
    stats = log2_check(grammar, a.without_epsilon_moves())
    if args.stats:
        _print_json(stats.to_dict())
    else:
        print("nonempty" if stats.result else "empty")
    return 0 if stats.result else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rr",
        description="Decide regular realizability against fixed context-free filters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    filters_help = "filter name: dyck1, dyck2, dyckN:k, sym, symsharp, ssharpup"

    p = sub.add_parser("member", help="test one word against a filter")
    p.add_argument("--filter", required=True, help=filters_help)
    p.add_argument("--word", required=True, help="space-separated symbol tokens ('' is the empty word)")
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("decide", help="decide whether the automaton meets the filter")
    p.add_argument("--filter", required=True, help=filters_help)
    p.add_argument("--nfa", required=True, help="automaton JSON file")
    p.add_argument(
        "--method",
        choices=("auto", "bar-hillel", "counter", "log2"),
        default="auto",
        help="decision route; log2 runs the instrumented certificate search",
    )
    p.add_argument("--json", action="store_true", help="emit the decision report as JSON")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("witness", help="print a shortest witness word")
    p.add_argument("--filter", required=True, help=filters_help)
    p.add_argument("--nfa", required=True, help="automaton JSON file")
    p.add_argument(
        "--method", choices=("auto", "bar-hillel", "counter"), default="auto"
    )
    p.add_argument("--json", action="store_true", help="emit the decision report as JSON")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("reduce", help="emit one of the constructions")
    p.add_argument(
        "target",
        choices=("bar-hillel", "cs", "mark", "ssharpup"),
        help="bar-hillel: product grammar; cs: shape transducer; "
        "mark: height-marked automaton; ssharpup: one-filter embedding",
    )
    p.add_argument("--grammar", help="grammar text file (bar-hillel, cs)")
    p.add_argument("--nfa", help="automaton JSON file (bar-hillel, mark, ssharpup)")
    p.add_argument("--emit-stats", action="store_true", help="print a stats JSON line to stderr")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("index", help="measure the rational index at one state count")
    p.add_argument("--filter", required=True, help=filters_help)
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--sample", type=int, default=None, help="sample this many machines instead of enumerating")
    p.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("RR_SEED", "0")),
        help="sampling seed (default: RR_SEED env var, else 0)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("check-log2", help="run the instrumented certificate search")
    p.add_argument("--grammar", required=True, help="grammar text file (converted to CNF)")
    p.add_argument("--nfa", required=True, help="automaton JSON file (epsilon moves are eliminated)")
    p.add_argument("--stats", action="store_true", help="print the instrumentation JSON instead of the verdict")
    p.set_defaults(func=_cmd_check_log2)

    return parser


def _check_reduce_args(args) -> Optional[str]:
    needs = {
        "bar-hillel": ("grammar", "nfa"),
        "cs": ("grammar",),
        "mark": ("nfa",),
        "ssharpup": ("nfa",),
    }[args.target]
    for name in needs:
        if getattr(args, name) is None:
            return f"reduce {args.target} requires --{name}"
    return None


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reduce":
        problem = _check_reduce_args(args)
        if problem is not None:
            print(f"rr: error: {problem}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except (InputError, ContractError, UnsupportedFilterError, OSError) as exc:
        print(f"rr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
