"""Command-line front end.

Exit codes: 0 success, 1 verification failure or bad input, 2 usage error,
3 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .automata import AutomatonError, ResourceLimitExceeded, canonical, minimize, word_str
from .constructions import build
from .formats import (FormatError, dumps_json, load_bundle, load_dfa, save_bundle, save_dfa,
                      write_atomic)
from .lab import (SEMI, bound, cross_validate, emit_report,
                  envelope_check, explore_14_simple_finite, parse_range, random_system,
                  run_family)
from .splicing import SplicingSystem, Variant, closure_bounded, parse_markers, validate
from .witnesses import FamilyId, witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _variant(text):
    try:
        return Variant.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _family(text):
    try:
        return FamilyId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range(text):
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semisplice",
                                description="Semi-simple splicing systems and their automata.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("construct", help="build the DFA of a splicing system")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--initial", help="initial DFA (text format, or .json)")
    src.add_argument("--system", help="system bundle (.json)")
    c.add_argument("--variant", type=_variant)
    c.add_argument("--markers", default=None, help='e.g. "a:b,c:c"')
    c.add_argument("--path", choices=("direct", "iterative"), default="direct")
    c.add_argument("--no-minimize", action="store_true")
    c.add_argument("--out")

    w = sub.add_parser("witness", help="generate a lower-bound witness bundle")
    w.add_argument("--family", type=_family, required=True,
                   help=", ".join(f.value for f in FamilyId))
    w.add_argument("-n", "--n", type=int, required=True)
    w.add_argument("--extra", type=_nonneg, default=0,
                   help="extra loop symbols (14-regular) or symbol pairs (14-semi-finite)")
    w.add_argument("--out")

    v = sub.add_parser("verify", help="sweep a witness family against the published size formulas")
    v.add_argument("--family", type=_family, required=True)
    v.add_argument("-n", "--n", type=_range, required=True, help="N or LO..HI")
    v.add_argument("--extra", type=_nonneg, default=0)
    v.add_argument("--report")
    v.add_argument("--format", choices=("csv", "json", "markdown"), default=None)

    m = sub.add_parser("compare", help="check a construction against the closure oracle")
    m.add_argument("--system", required=True)
    m.add_argument("--max-len", type=_nonneg, default=8)
    m.add_argument("--intermediate", type=_nonneg, default=None)

    b = sub.add_parser("bounds", help="evaluate an upper-bound formula")
    b.add_argument("--variant", type=_variant, required=True)
    b.add_argument("--class", dest="klass", required=True,
                   choices=("regular", "finite", "regular-semi", "finite-semi",
                            "regular-simple", "finite-simple"))
    b.add_argument("-n", "--n", type=int, required=True)
    b.add_argument("--m1", type=_nonneg, default=1)

    o = sub.add_parser("oracle", help="list closure words up to a length")
    o.add_argument("--system", required=True)
    o.add_argument("--max-len", type=_nonneg, default=6)
    o.add_argument("--intermediate", type=_nonneg, default=None)

    s = sub.add_parser("sample", help="bound and oracle checks on random systems")
    s.add_argument("--variant", type=_variant, required=True)
    s.add_argument("--count", type=_nonneg, default=100)
    s.add_argument("--max-n", type=int, default=5)
    s.add_argument("--max-k", type=int, default=3)
    s.add_argument("--max-len", type=_nonneg, default=8)
    s.add_argument("--intermediate", type=_nonneg, default=12)
    s.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("explore",
                       help="random search on (1,4)-simple systems with finite initial "
                            "language (open case; exploratory only)")
    e.add_argument("-n", "--n", type=int, required=True)
    e.add_argument("-k", type=int, default=3)
    e.add_argument("--samples", type=_nonneg, default=200)
    e.add_argument("--seed", type=int, default=0)
    return p


def _load_system(args) -> SplicingSystem:
    if getattr(args, "system", None):
        system, _, _ = load_bundle(args.system)
        if args.markers is not None or args.variant is not None:
            system = SplicingSystem(args.variant or system.variant, system.initial,
                                    parse_markers(args.markers) if args.markers is not None
                                    else system.markers)
        return system
    if args.variant is None:
        raise UsageError("--variant is required with --initial")
    dfa = load_dfa(args.initial)
    return SplicingSystem(args.variant, dfa, parse_markers(args.markers or ""))


def _report_diagnostics(system, out) -> bool:
    val = validate(system)
    for d in val.diagnostics:
        print(f"{d.level}: {d.message}", file=out)
    return val.ok


def cmd_construct(args) -> int:
    system = _load_system(args)
    if not _report_diagnostics(system, sys.stderr):
        return EXIT_FAIL
    raw = build(system, args.path)
    minimal = minimize(raw)
    if args.out:
        save_dfa(canonical(raw) if args.no_minimize else minimal, args.out)
    print(f"states={raw.n} minimal={minimal.n}")
    return EXIT_OK


def cmd_witness(args) -> int:
    try:
        system = witness(args.family, args.n, args.extra)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    meta = {"family": args.family.value, "n": args.n}
    if args.extra:
        meta["extra"] = args.extra
    if args.out:
        save_bundle(args.out, system, meta)
        print(f"wrote {args.out}: {len(system.alphabet)} symbols, "
              f"{system.initial.n} states, {len(system.markers)} markers")
    else:
        from .formats import bundle_to_json
        sys.stdout.write(dumps_json(bundle_to_json(system, meta)))
    return EXIT_OK


def cmd_verify(args) -> int:
    lo = args.n.start
    if lo < args.family.min_n:
        raise UsageError(f"{args.family.value} needs n >= {args.family.min_n}")
    rows = run_family(args.family, args.n, args.extra)
    fmt = args.format
    if fmt is None:
        fmt = "json" if (args.report or "").endswith(".json") else \
            "markdown" if (args.report or "").endswith(".md") else "csv"
    text = emit_report(rows, fmt)
    if args.report:
        write_atomic(args.report, text)
        for r in rows:
            print(f"{r.family} n={r.n} minimal={r.minimal} verdict={r.verdict}")
    else:
        sys.stdout.write(text)
    if any(r.verdict == "resource-abort" for r in rows) and \
            not any(r.hard_failure for r in rows):
        return EXIT_RESOURCE
    return EXIT_FAIL if any(r.hard_failure for r in rows) else EXIT_OK


def cmd_compare(args) -> int:
    system, _, construction = load_bundle(args.system)
    if construction is not None and construction.alphabet != system.alphabet:
        raise FormatError("embedded construction uses a different alphabet")
    cv = cross_validate(system, args.max_len, args.intermediate, dfa=construction)
    print(f"verdict={cv.verdict} construction_words={cv.construction_count} "
          f"oracle_words={cv.oracle_count}")
    for w in cv.oracle_only:
        print(f"  missing from construction: {word_str(w) or 'ε'}")
    for w in cv.construction_only:
        print(f"  missing from oracle: {word_str(w) or 'ε'}")
    if cv.note:
        print(f"  note: {cv.note}")
    if cv.verdict == "inconclusive":
        return EXIT_RESOURCE
    return EXIT_FAIL if cv.hard_failure else EXIT_OK


def cmd_bounds(args) -> int:
    lc, _, rc = args.klass.partition("-")
    rc = rc or SEMI
    try:
        value = bound(args.variant, lc, rc, args.n, args.m1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if isinstance(value, dict):
        print(" ".join(f"{k}={value[k]}" for k in sorted(value)))
    else:
        print(value)
    return EXIT_OK


def cmd_oracle(args) -> int:
    system, _, _ = load_bundle(args.system)
    ws = closure_bounded(system, args.max_len, args.intermediate)
    for w in ws.words():
        print(word_str(w) or "ε")
    return EXIT_OK


def cmd_sample(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    verdicts: dict[str, int] = {}
    for _ in range(args.count):
        system = random_system(rng, args.variant, args.max_n, args.max_k)
        n, size, bounds, ok = envelope_check(system)
        if not ok:
            failures += 1
            print(f"bound exceeded: n={n} size={size} bounds={bounds} "
                  f"markers={[str(m) for m in system.markers]}")
        cv = cross_validate(system, args.max_len, args.intermediate)
        verdicts[cv.verdict] = verdicts.get(cv.verdict, 0) + 1
        if cv.hard_failure:
            failures += 1
    print(" ".join(f"{k}={verdicts[k]}" for k in sorted(verdicts)) + f" failures={failures}")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_explore(args) -> int:
    if args.n < 2 or args.k < 1:
        raise UsageError("need n >= 2 and k >= 1")
    result = explore_14_simple_finite(random.Random(args.seed), args.n, args.k, args.samples)
    sys.stdout.write(json.dumps(result, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


_COMMANDS = {
    "construct": cmd_construct, "witness": cmd_witness, "verify": cmd_verify,
    "compare": cmd_compare, "bounds": cmd_bounds, "oracle": cmd_oracle,
    "sample": cmd_sample, "explore": cmd_explore,
}


def parse_args(argv=None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def run(args: argparse.Namespace) -> int:
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"semisplice {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (AutomatonError, FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
