"""Command-line front end: ``invsemi enumerate|verify|eval|converge``.

Exit codes: 0 success, 1 a check failed (or verdicts disagree), 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .convergence import (
    METRIC_FOR,
    converges,
    metric_verdict,
)
from .expr import ParseError, evaluate, show
from .metrics import MetricKind, NotCauchy, cauchy_limit
from .pbij import ENUMERATION_BOUND, Finite, NATURALS, empty_map, enumerate_all, parse_partial
from .sequences import InvalidSequence, LimitNotRepresentable, SequenceSpec
from .suites import SCHEMA, SUITES, recheck, run_suite
from .topology import TopologyKind

MAX_VERIFY_N = 4
MAX_Y_SIZE = 6
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write_json(path: str, doc: dict) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# -- enumerate ----------------------------------------------------------------


def cmd_enumerate(args) -> int:
    if not 0 <= args.n <= ENUMERATION_BOUND:
        raise UsageError(f"n must be between 0 and {ENUMERATION_BOUND}")
    els = enumerate_all(args.n)
    print(len(els))
    if args.list:
        for f in els:
            print(f)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    name = args.suite_opt or args.suite or "all"
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all")
    if args.n is not None and not 0 < args.n <= MAX_VERIFY_N:
        raise UsageError(f"--n must be between 1 and {MAX_VERIFY_N}")
    if args.y_size is not None and not 0 < args.y_size <= MAX_Y_SIZE:
        raise UsageError(f"--y-size must be between 1 and {MAX_Y_SIZE}")
    y = args.y_size or 5
    if args.x_size is not None and not 0 <= args.x_size <= y:
        raise UsageError("--x-size must be between 0 and --y-size")
    names = SUITES if name == "all" else (name,)
    results = [run_suite(s, args.n, args.y_size, args.x_size) for s in names]
    consistent = all(recheck(c) for r in results for c in r.counterexamples)
    ok = all(r.ok for r in results) and consistent
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        line = f"{r.suite}: {status} ({r.passed} passed, {r.failed} failed)"
        if args.timing:
            line += f" [{r.seconds:.2f}s]"
        print(line)
        print(f"  anchor: {r.anchor}")
        print("  instance: " + ", ".join(f"{k}={v}" for k, v in sorted(r.bounds.items())))
        for check, row in sorted(r.checks.items()):
            print(f"  {check}: {row['passed']} passed, {row['failed']} failed")
        if "slack" in r.extra:
            for size, table in sorted(r.extra["slack"].items()):
                cells = " ".join(f"{k}:{v}" for k, v in sorted(table.items(), key=lambda kv: int(kv[0])))
                print(f"  slack |X|={size}: {cells}")
        for key, val in sorted(r.extra.items()):
            if key == "slack":
                continue
            if isinstance(val, dict):
                val = ", ".join(f"{k}={v}" for k, v in sorted(val.items()))
            print(f"  {key}: {val}")
        for c in r.counterexamples:
            print(f"  counterexample {c.check}: " + "; ".join(c.to_json()["args"]))
    if not consistent:
        print("reporting inconsistency: a recorded counterexample passes when re-checked")
    print("all passed" if ok else "FAILURES FOUND")
    if args.json:
        doc = {"schema": SCHEMA, "suites": [r.to_json(args.timing) for r in results],
               "ok": ok, "consistent": consistent}
        _write_json(args.json, doc)
    return EXIT_OK if ok else EXIT_FAIL


# -- eval ---------------------------------------------------------------------


def cmd_eval(args) -> int:
    ground = NATURALS if args.n is None else Finite(args.n)
    try:
        value = evaluate(args.expression, ground)
    except ParseError as exc:
        print(f"error: {exc.message} at position {exc.position}", file=sys.stderr)
        print(f"  {args.expression}", file=sys.stderr)
        print("  " + " " * exc.position + "^", file=sys.stderr)
        return EXIT_USAGE
    print(show(value))
    return EXIT_OK


# -- converge -----------------------------------------------------------------

_PAIRS = [(TopologyKind.TAU1, MetricKind.RHO), (TopologyKind.TAU2, MetricKind.RHO_STAR),
          (TopologyKind.TAUPP, MetricKind.D)]


def _limit_note(seq, metric):
    """``(target, note)``: the limit to test against and a description when
    there is none."""
    if not seq.certified:
        return None, None
    try:
        out = cauchy_limit(seq, metric)
    except LimitNotRepresentable as exc:
        return None, f"no eventually trivial limit ({exc})"
    if isinstance(out, NotCauchy):
        return None, str(out)
    return out, None


def cmd_converge(args) -> int:
    path = args.spec_opt or args.specfile
    if path is None:
        raise UsageError("a sequence spec file is required")
    try:
        doc = json.loads(Path(path).read_text())
        seq = SequenceSpec.from_json(doc)
    except (OSError, json.JSONDecodeError, InvalidSequence, ValueError) as exc:
        print(f"error: malformed spec {path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    target = None
    if args.target is not None:
        try:
            target = parse_partial(args.target)
        except ValueError as exc:
            print(f"error: bad target: {exc}", file=sys.stderr)
            return EXIT_USAGE
    wanted_t = {TopologyKind(args.topology)} if args.topology else set()
    wanted_m = {MetricKind(args.metric)} if args.metric else set()
    if not wanted_t and not wanted_m:
        wanted_t = {t for t, _ in _PAIRS}
        wanted_m = {m for _, m in _PAIRS}
    print(f"spec: {seq.name or path} (prefix {len(seq.prefix)}, tail {type(seq.tail).__name__})")
    rows = []
    all_agree = True
    for top, met in _PAIRS:
        if top not in wanted_t and met not in wanted_m:
            continue
        t = target
        note = None
        if t is None:
            t, note = _limit_note(seq, met)
        probe = t if t is not None else empty_map()
        tv = converges(seq, probe, top)
        mv = metric_verdict(seq, probe, met)
        agree = tv.status == mv.status
        all_agree &= agree
        if top in wanted_t:
            print(_line(tv, note))
        if met in wanted_m:
            print(_line(mv, note))
        print(f"{top.value}/{met.value} agree: {'true' if agree else 'false'}")
        rows.append({"topology": tv.to_json(), "metric": mv.to_json(), "agree": agree,
                     "limit": None if t is None else str(t), "note": note})
    if args.json:
        _write_json(args.json, {"schema": SCHEMA, "spec": seq.name or path, "pairs": rows,
                                "agree": all_agree})
    return EXIT_OK if all_agree else EXIT_FAIL


def _line(v, note):
    if note is not None and v.status == "diverges":
        extra = f"at {v.point} ({v.reason})" if v.point is not None else f"({v.reason})"
        return f"{v.mode}: diverges {extra}; {note}"
    return str(v)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invsemi", description="Exact computations in symmetric inverse semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help=f"count (and list) I(Finite(n)), n <= {ENUMERATION_BOUND}")
    e.add_argument("n", type=int)
    e.add_argument("--list", action="store_true", help="print every element in canonical order")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run verification suites",
                       description="Run verification suites. Defaults: n=3 for triple-quantified checks, "
                                   f"n=4 for pair-quantified ones, |Y|=5 and |X|=2 for the quotient. "
                                   f"Caps: --n <= {MAX_VERIFY_N}, --y-size <= {MAX_Y_SIZE}.")
    v.add_argument("suite", nargs="?", help=f"one of {', '.join(SUITES)}, all (default)")
    v.add_argument("--suite", dest="suite_opt", help="same as the positional argument")
    v.add_argument("--n", type=int, help=f"size of the finite ground set (<= {MAX_VERIFY_N})")
    v.add_argument("--y-size", type=int, help=f"|Y| for the quotient suite (<= {MAX_Y_SIZE})")
    v.add_argument("--x-size", type=int, help="|X| for the quotient suite")
    v.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    v.add_argument("--timing", action="store_true", help="include wall times (reports stop being byte-identical)")
    v.set_defaults(func=cmd_verify)

    ev = sub.add_parser("eval", help="evaluate an expression, e.g. 'rho({}, {0->0})'")
    ev.add_argument("expression")
    ev.add_argument("--n", type=int, help="evaluate over Finite(n) instead of the naturals")
    ev.set_defaults(func=cmd_eval)

    c = sub.add_parser("converge", help="convergence verdicts for a sequence spec (JSON)")
    c.add_argument("specfile", nargs="?")
    c.add_argument("--spec", dest="spec_opt", metavar="FILE")
    c.add_argument("--target", help="pb literal to test convergence to (default: the computed limit)")
    c.add_argument("--topology", choices=[t.value for t in METRIC_FOR])
    c.add_argument("--metric", choices=[m.value for m in METRIC_FOR.values()])
    c.add_argument("--json", metavar="OUT")
    c.set_defaults(func=cmd_converge)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
