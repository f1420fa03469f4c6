"""Command line interface.

Exit codes are uniform across subcommands: 0 for success or a passing
check, 1 for a definite failure or counterexample, 2 for inconclusive
outcomes (fuel exhaustion, stuck reversals, ambiguous preconditions,
oracle caps), 3 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog
from .completeness import certify, cube_condition
from .derivation import DerivationError, parse_script, verify_script
from .oracle import (
    OracleCapError,
    cancellation_scan,
    equivalence_class,
    monoid_equal,
)
from .presentation import (
    AmbiguousComplementError,
    Presentation,
    SchemaError,
    instantiate_window,
    load_presentation,
)
from .reversing import (
    DEFAULT_FUEL,
    Diverged,
    Empty,
    ReversalTrace,
    Stuck,
    Terminal,
    build_grid,
    grid_to_dot,
    left_reverse,
    reverse_quotient,
    right_reverse,
)
from .words import Word, WordSyntaxError

OK, FAIL, INCONCLUSIVE, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to status 2, we reserve that
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _load(source: str) -> Presentation:
    try:
        return catalog.load(source)
    except KeyError:
        if os.path.exists(source):
            with open(source, encoding="utf-8") as fh:
                return load_presentation(fh.read(), name=os.path.basename(source))
        raise KeyError(
            f"{source!r} is neither a catalog key nor a presentation file; "
            "see 'monorev list'"
        ) from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _outcome_json(outcome) -> dict:
    if isinstance(outcome, Empty):
        return {"kind": "empty"}
    if isinstance(outcome, Terminal):
        return {"kind": "terminal", "v_prime": str(outcome.v_prime),
                "u_prime": str(outcome.u_prime)}
    if isinstance(outcome, Stuck):
        return {"kind": "stuck", "position": outcome.position,
                "pair": [str(g) for g in outcome.pair]}
    return {"kind": "diverged", "fuel": outcome.fuel}


def _trace_json(trace: ReversalTrace) -> dict:
    intermediates = trace.words()
    next(intermediates)
    return {
        "side": trace.side,
        "start": str(trace.start),
        "steps": [
            {"position": s.position, "kind": s.kind,
             "rule": s.rule.label() if s.rule else None, "after": str(after)}
            for s, after in zip(trace.steps, intermediates)
        ],
        "outcome": _outcome_json(trace.outcome),
    }


def _print_trace(trace: ReversalTrace, limit: int) -> None:
    print(f"start: {trace.start}")
    intermediates = trace.words()
    next(intermediates)
    for i, (step, after) in enumerate(zip(trace.steps, intermediates), start=1):
        if i > limit:
            print(f"  ... {len(trace.steps) - limit} more steps")
            break
        what = "cancel" if step.kind == "cancel" else step.rule.label()
        print(f"  step {i}: {what} @{step.position} -> {after}")
    out = trace.outcome
    if isinstance(out, Empty):
        print("outcome: empty")
    elif isinstance(out, Terminal):
        print("outcome: terminal")
        print(f"v' = {out.v_prime}")
        print(f"u' = {out.u_prime}")
    elif isinstance(out, Stuck):
        print(f"outcome: stuck @{out.position} on ({out.pair[0]}, {out.pair[1]})")
    else:
        print(f"outcome: diverged (fuel {out.fuel})")


def _outcome_exit(trace: ReversalTrace) -> int:
    return OK if trace.reached_terminal else INCONCLUSIVE


def _cmd_list(args) -> int:
    for name in catalog.names():
        print(name)
    return OK


def _cmd_show(args) -> int:
    print(catalog.describe(_load(args.presentation)))
    return OK


def _cmd_reverse(args) -> int:
    p = _load(args.presentation)
    word = p.parse(args.word)
    trace = (left_reverse if args.left else right_reverse)(p, word, args.fuel)
    if args.format == "json":
        print(json.dumps(_trace_json(trace), indent=2))
    else:
        _print_trace(trace, args.limit)
    return _outcome_exit(trace)


def _cmd_quotient(args) -> int:
    p = _load(args.presentation)
    u, v = p.parse(args.u), p.parse(args.v)
    side = "left" if args.left else "right"
    trace = reverse_quotient(p, u, v, side=side, fuel=args.fuel)
    if args.format == "json":
        print(json.dumps(_trace_json(trace), indent=2))
        return _outcome_exit(trace)
    out = trace.outcome
    if isinstance(out, Empty):
        print(f"equal: {u} and {v} name the same element ({trace.step_count} steps)")
    elif isinstance(out, Terminal):
        print(f"v' = {out.v_prime}")
        print(f"u' = {out.u_prime}")
        if side == "right":
            print(f"common multiple: {u} {out.v_prime} = {v} {out.u_prime}")
        else:
            print(f"common multiple: {out.v_prime} {u} = {out.u_prime} {v}")
    elif isinstance(out, Stuck):
        print(f"stuck @{out.position} on ({out.pair[0]}, {out.pair[1]})")
    else:
        print(f"diverged (fuel {out.fuel})")
    return _outcome_exit(trace)


def _cmd_cube(args) -> int:
    p = _load(args.presentation)
    u, v, w = p.parse(args.u), p.parse(args.v), p.parse(args.w)
    side = "left" if args.left else "right"
    res = cube_condition(p, u, v, w, side=side, fuel=args.fuel)
    if args.format == "json":
        data = {
            "triple": [str(u), str(v), str(w)],
            "side": side,
            "status": res.status,
            "reason": res.reason,
            "first": _trace_json(res.first),
            "second": _trace_json(res.second) if res.second else None,
        }
        print(json.dumps(data, indent=2))
    else:
        note = "" if res.status == "pass" else f" ({res.reason})"
        print(f"cube ({u}; {v}; {w}) {side}: {res.status}{note}")
    return {"pass": OK, "fail": FAIL}.get(res.status, INCONCLUSIVE)


def _cmd_certify(args) -> int:
    p = _load(args.presentation)
    cert = certify(p, t_bound=args.t_bound, fuel=args.fuel,
                   word_len=args.word_len)
    _emit(cert.to_json(), args.output)
    if cert.established:
        return OK
    # refusals carry a definite disqualification, only fuel leaves doubt
    return INCONCLUSIVE if cert.claim == "undetermined" else FAIL


def _cmd_derive(args) -> int:
    with open(args.script, encoding="utf-8") as fh:
        text = fh.read()
    script = parse_script(text)
    p = catalog.load(script.presentation)
    result = verify_script(p, script)
    if args.format == "json":
        data = {
            "presentation": script.presentation,
            "ok": result.ok,
            "steps": len(script.steps),
            "intermediates": [str(w) for w in result.intermediates],
            "failed_at": result.failed_at,
            "error": result.error,
        }
        print(json.dumps(data, indent=2))
        return OK if result.ok else FAIL
    for i, w in enumerate(result.intermediates):
        print(f"  {i}: {w}")
    if result.ok:
        print(f"verified: {script.start} = {script.expect} "
              f"in {len(script.steps)} steps")
        return OK
    where = "final word" if result.failed_at is None else f"step {result.failed_at + 1}"
    print(f"failed at {where}: {result.error}")
    return FAIL


def _windowed(p: Presentation, window: int) -> Presentation:
    return instantiate_window(p, window) if p.alphabet.integer_families else p


def _cmd_oracle_class(args) -> int:
    p = _windowed(_load(args.presentation), args.window)
    word = p.parse(args.word)
    cls = equivalence_class(p, word, cap=args.cap)
    print(f"class size: {len(cls)}")
    for w in sorted(cls, key=lambda w: w.letters):
        print(str(w))
    return OK


def _cmd_oracle_equal(args) -> int:
    p = _windowed(_load(args.presentation), args.window)
    u, v = p.parse(args.u), p.parse(args.v)
    if monoid_equal(p, u, v, cap=args.cap):
        print("equal")
        return OK
    print("not equal")
    return FAIL


def _cmd_oracle_scan(args) -> int:
    p = _windowed(_load(args.presentation), args.window)
    report = cancellation_scan(p, max_len=args.max_len, cap=args.cap)
    _emit(report.to_json(), args.output)
    return OK if report.cancellative else FAIL


def _cmd_render(args) -> int:
    p = _load(args.presentation)
    word = p.parse(args.word)
    trace = (left_reverse if args.left else right_reverse)(p, word, args.fuel)
    if not trace.reached_terminal:
        kind = _outcome_json(trace.outcome)["kind"]
        print(f"monorev: no grid: reversal ended {kind}", file=sys.stderr)
        return _outcome_exit(trace)
    grid = build_grid(trace)
    if args.dot is not None:
        _emit(grid_to_dot(grid), None if args.dot == "-" else args.dot)
    else:
        lines = [
            f"grid for {word} ({trace.side} reversing)",
            f"nodes: {len(grid.nodes)}",
            f"path edges: {len(grid.path_edges)}",
            f"completion edges: {len(grid.completion_edges)}",
            f"epsilon arcs: {len(grid.epsilon_arcs)}",
            f"cells: {len(grid.cells)}",
            f"outcome: {_outcome_json(trace.outcome)['kind']}",
        ]
        _emit("\n".join(lines), args.output)
    return _outcome_exit(trace)


def _add_format(sub) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text",
                     help="output format (default text)")


def _add_fuel(sub) -> None:
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                     help=f"reversal step budget (default {DEFAULT_FUEL})")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monorev",
                     description="word reversing for positive monoid presentations")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("list", help="list catalog presentations")
    s.set_defaults(func=_cmd_list)

    s = sub.add_parser("show", help="print a presentation")
    s.add_argument("presentation")
    s.set_defaults(func=_cmd_show)

    s = sub.add_parser("reverse", help="reverse a signed word")
    s.add_argument("presentation")
    s.add_argument("word")
    s.add_argument("--left", action="store_true", help="left reversing")
    s.add_argument("--limit", type=int, default=1000,
                   help="print at most this many steps (default 1000)")
    _add_fuel(s)
    _add_format(s)
    s.set_defaults(func=_cmd_reverse)

    s = sub.add_parser("quotient", help="reverse u^-1 v for positive words")
    s.add_argument("presentation")
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("--left", action="store_true", help="reverse u v^-1 instead")
    _add_fuel(s)
    _add_format(s)
    s.set_defaults(func=_cmd_quotient)

    s = sub.add_parser("cube", help="cube condition on a triple of positive words")
    s.add_argument("presentation")
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("w")
    s.add_argument("--left", action="store_true", help="left cube condition")
    _add_fuel(s)
    _add_format(s)
    s.set_defaults(func=_cmd_cube)

    s = sub.add_parser("certify", help="bounded cancellativity certificate")
    s.add_argument("presentation")
    s.add_argument("--t-bound", type=int, default=3, dest="t_bound",
                   help="integer-family spread bound (default 3)")
    s.add_argument("--word-len", type=int, default=None, dest="word_len",
                   help="check word triples up to this length instead of "
                        "generator triples (required when not homogeneous)")
    s.add_argument("-o", "--output", default=None,
                   help="write to this file instead of stdout")
    _add_fuel(s)
    s.set_defaults(func=_cmd_certify)

    s = sub.add_parser("derive", help="verify a derivation script")
    s.add_argument("script", help="path to a script file")
    _add_format(s)
    s.set_defaults(func=_cmd_derive)

    s = sub.add_parser("oracle", help="brute-force checks on finite windows")
    osub = s.add_subparsers(dest="oracle_command", required=True)

    oc = osub.add_parser("class", help="equivalence class of a positive word")
    oc.add_argument("presentation")
    oc.add_argument("word")
    oc.add_argument("--window", type=int, default=2,
                    help="index window for integer families (default 2)")
    oc.add_argument("--cap", type=int, default=1_000_000)
    oc.set_defaults(func=_cmd_oracle_class)

    oc = osub.add_parser("equal", help="test equality of two positive words")
    oc.add_argument("presentation")
    oc.add_argument("u")
    oc.add_argument("v")
    oc.add_argument("--window", type=int, default=2)
    oc.add_argument("--cap", type=int, default=1_000_000)
    oc.set_defaults(func=_cmd_oracle_equal)

    oc = osub.add_parser("scan", help="search for cancellativity violations")
    oc.add_argument("presentation")
    oc.add_argument("--window", type=int, default=2)
    oc.add_argument("--max-len", type=int, default=3, dest="max_len",
                    help="remainder length bound (default 3)")
    oc.add_argument("--cap", type=int, default=500_000)
    oc.add_argument("-o", "--output", default=None)
    oc.set_defaults(func=_cmd_oracle_scan)

    s = sub.add_parser("render", help="reversing grid of a word")
    s.add_argument("presentation")
    s.add_argument("word")
    s.add_argument("--left", action="store_true")
    s.add_argument("--dot", metavar="PATH", default=None,
                   help="write the grid as DOT to PATH ('-' for stdout)")
    s.add_argument("-o", "--output", default=None,
                   help="write the text summary here instead of stdout")
    _add_fuel(s)
    s.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AmbiguousComplementError as exc:
        print(f"monorev: ambiguous complement: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except OracleCapError as exc:
        print(f"monorev: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except FileNotFoundError as exc:
        print(f"monorev: {exc}", file=sys.stderr)
        return USAGE
    except (WordSyntaxError, SchemaError, DerivationError, ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"monorev: {message}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
