"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 inconsistent knowledge base,
3 atom cap exceeded, 4 rule-mode interval fails to contain the exact one.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import engine, oracle
from .formula import ParseError, format_formula, parse_formula
from .interval import ProbInterval, contains, decimal_approx, format_rational
from .kb import DEFAULT_ATOM_CAP, KnowledgeBase, load_kb, validate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_CAP = 3
EXIT_UNSOUND = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plogic", description="Interval-probability entailment over propositional KBs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--kb", dest="kb_path", required=True, help="knowledge-base file")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--atom-cap", type=int, default=DEFAULT_ATOM_CAP)

    def modes(sp):
        sp.add_argument("--mode", choices=("rules", "exact", "both"), default="both")
        sp.add_argument("--max-rounds", type=int, default=100)

    common(sub.add_parser("parse", help="parse and validate a KB"))
    sp = sub.add_parser("entail", help="bound the probability of a target formula")
    common(sp)
    modes(sp)
    sp.add_argument("--target", required=True)
    sp.add_argument("--snapshot-every", type=int, default=None)
    sp.add_argument("--trace", action="store_true", help="include the target's derivation")
    sp = sub.add_parser("check", help="check KB consistency")
    common(sp)
    modes(sp)
    sp = sub.add_parser("worlds", help="dump the possible-worlds table as CSV")
    common(sp)
    sp.add_argument("--target", default=None)
    return p


def interval_json(i: ProbInterval) -> dict | None:
    if i.is_empty:
        return None
    return {
        "lo": format_rational(i.lo),
        "hi": format_rational(i.hi),
        "lo_dec": decimal_approx(i.lo),
        "hi_dec": decimal_approx(i.hi),
    }


def trace_json(steps: Sequence[engine.DerivationStep]) -> list[dict]:
    def sent(s):
        i = s.interval
        return {
            "formula": format_formula(s.formula),
            "lo": None if i.is_empty else format_rational(i.lo),
            "hi": None if i.is_empty else format_rational(i.hi),
        }

    return [
        {"round": s.round, "rule": s.rule.value,
         "premises": [sent(p) for p in s.premises], "conclusion": sent(s.conclusion)}
        for s in steps
    ]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _fmt(i: ProbInterval) -> str:
    if i.is_empty:
        return "EMPTY"
    return f"[{decimal_approx(i.lo):g}, {decimal_approx(i.hi):g}]  (exact {i})"


def _limits(args, snapshot_every=None) -> engine.EngineLimits:
    if args.max_rounds < 1:
        raise _UsageError("--max-rounds must be >= 1")
    if snapshot_every is not None and snapshot_every < 1:
        raise _UsageError("--snapshot-every must be >= 1")
    return engine.EngineLimits(max_rounds=args.max_rounds, snapshot_every=snapshot_every)


def _cmd_parse(args, kb: KnowledgeBase, out) -> int:
    diags = validate(kb, args.atom_cap)
    if args.json:
        out.write(_dump({
            "command": "parse",
            "atoms": sorted(kb.atom_set),
            "sentences": [
                {"formula": format_formula(s.formula), "line": s.origin,
                 "interval": interval_json(s.interval)}
                for s in kb.sentences
            ],
            "diagnostics": [str(d) for d in diags],
        }) + "\n")
    else:
        for s in kb.sentences:
            out.write(f"{s}\n")
        out.write(f"# {len(kb)} sentences over {len(kb.atom_set)} atoms\n")
        for d in diags:
            out.write(f"# {d}\n")
    return EXIT_OK


def _cmd_entail(args, kb: KnowledgeBase, out, err) -> int:
    try:
        target = parse_formula(args.target)
    except ParseError as exc:
        err.write(f"error: target: {exc}\n")
        return EXIT_USAGE
    limits = _limits(args, args.snapshot_every)
    code = EXIT_OK
    rules_res = exact = None

    def stream(r, i):
        if not args.json:
            out.write(_dump({"round": r, "lo": None if i.is_empty else format_rational(i.lo),
                             "hi": None if i.is_empty else format_rational(i.hi)}) + "\n")

    if args.mode in ("rules", "both"):
        rules_res = engine.run(kb, target, limits, on_snapshot=stream)
    if args.mode in ("exact", "both"):
        try:
            exact = oracle.entailed_interval(kb, target, cap=args.atom_cap)
        except oracle.AtomCapExceeded as exc:
            err.write(f"error: {exc}\n")
            code = EXIT_CAP

    if exact is not None:
        consistent = not exact.is_empty
    else:
        consistent = rules_res.consistent if rules_res is not None else True
    if code == EXIT_OK and not consistent:
        code = EXIT_INCONSISTENT
    if rules_res is not None and exact is not None and not contains(rules_res.interval, exact):
        err.write(f"error: rule interval {rules_res.interval} does not contain exact interval {exact}\n")
        code = EXIT_UNSOUND

    if args.json:
        doc = {
            "command": "entail",
            "target": format_formula(target),
            "mode": args.mode,
            "consistent": consistent,
            "rules": None,
            "exact": None if exact is None else {"interval": interval_json(exact)},
        }
        if rules_res is not None:
            doc["rules"] = {
                "interval": interval_json(rules_res.interval),
                "rounds": rules_res.rounds_used,
                "converged": rules_res.converged,
            }
            if args.trace:
                doc["rules"]["trace"] = trace_json(rules_res.trace)
            if limits.snapshot_every is not None:
                doc["snapshots"] = [
                    {"round": r, "lo": None if i.is_empty else format_rational(i.lo),
                     "hi": None if i.is_empty else format_rational(i.hi)}
                    for r, i in rules_res.snapshots
                ]
        out.write(_dump(doc) + "\n")
        return code

    out.write(f"target: {format_formula(target)}\n")
    if rules_res is not None:
        state = "converged" if rules_res.converged else "round cap reached"
        out.write(f"rules: {_fmt(rules_res.interval)}  rounds={rules_res.rounds_used} ({state})\n")
        if args.trace:
            for s in rules_res.trace:
                prem = "; ".join(str(p) for p in s.premises)
                out.write(f"  r{s.round} {s.rule.value}: {prem}  =>  {s.conclusion}\n")
    if exact is not None:
        out.write(f"exact: {_fmt(exact)}\n")
    if not consistent:
        out.write("knowledge base is inconsistent\n")
    return code


def _cmd_check(args, kb: KnowledgeBase, out, err) -> int:
    limits = _limits(args)
    rules_ok = exact_ok = None
    rounds = None
    code = EXIT_OK
    if args.mode in ("rules", "both"):
        state = engine.saturate(kb, limits)
        rules_ok, rounds = not state.inconsistent, state.round
    if args.mode in ("exact", "both"):
        try:
            exact_ok = oracle.is_consistent(kb, cap=args.atom_cap)
        except oracle.AtomCapExceeded as exc:
            err.write(f"error: {exc}\n")
            code = EXIT_CAP
    consistent = rules_ok is not False and exact_ok is not False
    if rules_ok is False and exact_ok is True:
        err.write("error: rules report inconsistency the exact check does not confirm\n")
        code = EXIT_UNSOUND
    elif code == EXIT_OK and not consistent:
        code = EXIT_INCONSISTENT
    if args.json:
        out.write(_dump({
            "command": "check",
            "mode": args.mode,
            "consistent": consistent,
            "rules": None if rules_ok is None else {"consistent": rules_ok, "rounds": rounds},
            "exact": None if exact_ok is None else {"consistent": exact_ok},
            "diagnostics": [str(d) for d in validate(kb, args.atom_cap)],
        }) + "\n")
    else:
        if rules_ok is not None:
            out.write(f"rules: {'consistent so far' if rules_ok else 'inconsistent'} after {rounds} rounds\n")
        if exact_ok is not None:
            out.write(f"exact: {'consistent' if exact_ok else 'inconsistent'}\n")
        out.write("consistent\n" if consistent else "inconsistent\n")
    return code


def _cmd_worlds(args, kb: KnowledgeBase, out, err) -> int:
    target = None
    if args.target is not None:
        try:
            target = parse_formula(args.target)
        except ParseError as exc:
            err.write(f"error: target: {exc}\n")
            return EXIT_USAGE
    try:
        out.write(oracle.worlds_csv(kb, target, cap=args.atom_cap))
    except oracle.AtomCapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        kb = load_kb(args.kb_path)
    except OSError as exc:
        err.write(f"error: cannot read {args.kb_path}: {exc.strerror}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"error: {args.kb_path}: {exc}\n")
        return EXIT_USAGE
    try:
        if args.command == "parse":
            return _cmd_parse(args, kb, out)
        if args.command == "entail":
            return _cmd_entail(args, kb, out, err)
        if args.command == "check":
            return _cmd_check(args, kb, out, err)
        return _cmd_worlds(args, kb, out, err)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
