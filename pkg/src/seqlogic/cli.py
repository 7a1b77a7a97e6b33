"""Command line front end: script runner, REPL, casebook suite, exporters.

Verdicts and other results go to stdout and are byte-stable across runs;
timings and progress go to stderr.  Exit codes: 0 success, 1 failed
verdict or case, 2 parse error, 3 unknown name, 4 state budget exceeded,
5 command timeout.
"""

from __future__ import annotations

import argparse
import os
import sys

from .automata import INFINITE, export_dot, max_nonzero_symbols, to_text
from .logic import (BudgetError, DeadlineError, LogicError, ParseError,
                    Session, UnknownNameError, split_commands)
from .words import words_dir

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_BUDGET = 4
EXIT_TIMEOUT = 5


def _word_dirs(args):
    dirs = [words_dir()]
    env = os.environ.get("SEQLOGIC_WORDS")
    if env:
        dirs.append(env)
    if args.words:
        dirs.append(args.words)
    return dirs


def _session(args):
    return Session(words_dirs=_word_dirs(args), max_states=args.max_states,
                   timeout=args.timeout)


def _print_result(r):
    if r.kind == "eval":
        print(f"{r.name}: {r.verdict_text}")
        if r.counterexample:
            vals = ", ".join(f"{k}={v}" for k, v in sorted(r.counterexample.items()))
            print(f"  counterexample: {vals}")
    elif r.kind in ("def", "reg"):
        print(f"{r.name}: {r.automaton.n} states")
    else:
        print(f"{r.name}: done")
    print(f"  {r.name}: {r.seconds:.2f}s", file=sys.stderr)


def cmd_run(args):
    with open(args.script) as fh:
        text = fh.read()
    session = _session(args)
    mismatches = 0
    for cmd in split_commands(text):
        r = session.run_command(*cmd)
        _print_result(r)
        if r.kind == "eval" and args.expect and r.verdict_text != args.expect:
            mismatches += 1
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_repl(args):
    session = _session(args)
    buf = ""
    while True:
        prompt = "... " if buf.strip() else "> "
        print(prompt, end="", file=sys.stderr, flush=True)
        line = sys.stdin.readline()
        if not line:
            return EXIT_OK
        if not buf and line.strip() in ("exit", "quit"):
            return EXIT_OK
        buf += line
        if not line.rstrip().endswith(":"):
            continue
        try:
            for cmd in split_commands(buf):
                _print_result(session.run_command(*cmd))
        except (LogicError, BudgetError, DeadlineError) as e:
            print(f"error: {e}", file=sys.stderr)
        buf = ""


def cmd_suite(args):
    from .casebook import run_suite
    results = run_suite(filter=args.filter, stretch=args.stretch,
                        max_states=args.max_states, timeout=args.timeout,
                        log=lambda line: print(line, file=sys.stderr))
    failed = 0
    for r in results:
        status = "skipped" if r.skipped else ("ok" if r.ok else "FAIL")
        print(f"{r.name}: {status}")
        for f in r.failures:
            print(f"  {f}")
        # stretch cases report failures but never fail the suite
        failed += 0 if r.ok or r.skipped or r.stretch else 1
    ran = sum(1 for r in results if not r.skipped)
    print(f"{ran - failed}/{ran} cases passed"
          + (f", {len(results) - ran} skipped" if ran < len(results) else ""))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_oracle(args):
    from . import oracles
    name, params, limit = args.name, args.params, args.limit
    if name == "fib":
        vals = oracles.fib_list(limit)
    elif name == "wythoff":
        vals = oracles.upper_wythoff_upto(limit)
    elif name == "unsums":
        vals = oracles.unsums_upto(limit)
    elif name == "gaps":
        vals = oracles.gaps(oracles.unsums_upto(limit))
    elif name == "antinacci":
        (k,) = params
        _, vals = oracles.anti_nacci(k, limit)
    elif name == "subsumfree":
        x, y, z = params
        vals = oracles.subsumfree(x, y, z, limit)
    elif name == "f3nonzero":
        vals = oracles.f3_all_nonzero_ns(limit)
    elif name == "period":
        x, y, z, modulus = params
        p = oracles.detect_periodicity(
            oracles.subsumfree(x, y, z, max(limit, 3000)), modulus)
        if p is None:
            print("no periodicity detected")
            return EXIT_FAIL
        print(f"modulus: {p.modulus}")
        print(f"preperiod: {p.preperiod}")
        print(f"period: {p.period}")
        print("residues: " + " ".join(str(r) for r in p.residues))
        return EXIT_OK
    else:
        raise UnknownNameError(f"unknown oracle {name}; pick from fib, wythoff, "
                               "unsums, gaps, antinacci, subsumfree, f3nonzero, period")
    for v in vals:
        print(v)
    return EXIT_OK


def cmd_gen_co(args):
    from .christol import build_co, co_tags
    dfao = build_co(args.q)
    out = args.out or f"co{args.q}.txt"
    text = to_text(dfao, co_tags(args.q))
    with open(out, "w") as fh:
        fh.write(text)
    print(f"co{args.q}: {dfao.n} states, "
          f"{dfao.n * dfao.alphabet.num_symbols} transitions -> {out}")
    return EXIT_OK


def _find_word(args, name):
    session = _session(args)
    if name not in session.words:
        raise UnknownNameError(f"unknown word {name}")
    return session.words[name]


def cmd_export(args):
    word = _find_word(args, args.name)
    if args.dot:
        payload, path = export_dot(word.dfao, args.name), args.dot
    else:
        payload, path = to_text(word.dfao, (word.system.tag,) * word.tracks), args.txt
    with open(path, "w") as fh:
        fh.write(payload)
    print(f"{args.name} -> {path}")
    return EXIT_OK


def cmd_inspect(args):
    from .automata import Dfa
    word = _find_word(args, args.name)
    a = word.dfao
    nz = max_nonzero_symbols(Dfa(a.alphabet, a.trans, [True] * a.n, a.initial))
    nz_text = "unbounded" if nz == INFINITE else str(nz)
    print(f"{args.name}: {a.n} states, {a.n * a.alphabet.num_symbols} transitions, "
          f"{word.tracks} tracks ({word.system.tag}), "
          f"max nonzero symbols {nz_text}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="seqlogic",
        description="decide first-order statements about automatic sequences")
    parser.add_argument("--max-states", type=int, default=10_000_000,
                        help="state budget per command (default 10^7)")
    parser.add_argument("--timeout", type=float, default=600.0,
                        help="seconds per command (default 600)")
    parser.add_argument("--words", help="extra word directory "
                        "(also: SEQLOGIC_WORDS environment variable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a script file")
    p.add_argument("script")
    p.add_argument("--expect", choices=("TRUE", "FALSE"),
                   help="require every eval verdict to match")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("repl", help="interactive session")
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("suite", help="run the regression casebook")
    p.add_argument("--filter", help="case name or tag")
    p.add_argument("--stretch", action="store_true",
                   help="include stretch cases")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("oracle", help="emit a brute-force sequence prefix")
    p.add_argument("name")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--limit", type=int, default=50,
                   help="term count or value bound, per oracle")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen-co", help="generate a coefficient automaton file")
    p.add_argument("q", type=int, choices=(2, 3, 4, 5))
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_co)

    p = sub.add_parser("export", help="write a word automaton to a file")
    p.add_argument("name")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--dot")
    g.add_argument("--txt")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("inspect", help="show state and transition counts")
    p.add_argument("name")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownNameError as e:
        print(f"unknown name: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    except LogicError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as e:
        print(f"state budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except DeadlineError as e:
        print(f"timeout: {e}", file=sys.stderr)
        return EXIT_TIMEOUT
    except FileNotFoundError as e:
        print(f"missing file: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
