"""Command-line front end.

Subcommands: check, classify, iso, enumerate, verify.

Exit codes:
    0  success (including "not isomorphic" verdicts)
    2  usage, parse or unsupported-field errors
    3  classification gate: not endo-commutative
    4  classification gate: not rank 1
    5  classification gate: not straight (curled)
    6  verification suite assertion failure
    7  enumeration cap exceeded
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .fields import (parse_field, FieldError, NotEnumerableError,
                     EnumerationCapError, MixedFieldError, MAX_ENUM_ORDER)
from .algebra import parse_table, SingularMatrixError
from .predicates import (is_ec_criterion, is_ec_bruteforce, is_straight,
                         straightness_witness, is_commutative,
                         is_anti_commutative, is_associative, find_unit)
from .classify import (classify_algebra, property_profile,
                       bruteforce_isomorphic, ClassificationError)
from .verify import (run_suite, SUITES, DEFAULT_SEED, DEFAULT_SAMPLE,
                     FULL_SCAN_MAX_ORDER, SUITE_MAX_ORDER, CapExceededError)
from . import lowlevel

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_EC = 3
EXIT_NOT_RANK1 = 4
EXIT_NOT_STRAIGHT = 5
EXIT_VERIFY_FAILED = 6
EXIT_CAP = 7

_GATE_EXITS = {
    "NotEndoCommutative": EXIT_NOT_EC,
    "NotRankOne": EXIT_NOT_RANK1,
    "NotStraight": EXIT_NOT_STRAIGHT,
}


def _fmt_pair(field, pair):
    return ",".join(field.format_element(v) for v in pair)


def _emit(payload, fmt):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, val in payload.items():
            if isinstance(val, dict):
                print(f"{key}:")
                for k2, v2 in val.items():
                    print(f"  {k2}: {_plain(v2)}")
            else:
                print(f"{key}: {_plain(val)}")


def _plain(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "-"
    return str(v)


def cmd_check(args):
    field = parse_field(args.field)
    A = parse_table(field, args.table[0])
    do_brute = args.bruteforce
    if do_brute is None:
        do_brute = field.is_finite and field.order <= MAX_ENUM_ORDER
    elif do_brute and not field.is_finite:
        print("error: --bruteforce needs a finite field", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "field": field.spec_text(),
        "table": A.to_text(),
        "ec_criterion": is_ec_criterion(A),
        "ec_bruteforce": is_ec_bruteforce(A) if do_brute else None,
        "rank": A.rank(),
        "straight": is_straight(A),
    }
    w = straightness_witness(A)
    payload["straight_witness"] = _fmt_pair(field, w) if w else None
    payload["commutative"] = is_commutative(A)
    payload["anti_commutative"] = is_anti_commutative(A)
    payload["associative"] = is_associative(A)
    unit = find_unit(A)
    payload["unit"] = _fmt_pair(field, unit) if unit else None
    try:
        form, _ = classify_algebra(A)
        payload["classification"] = str(form)
    except ClassificationError as err:
        payload["classification"] = err.gate
    _emit(payload, args.format)
    return EXIT_OK


def cmd_classify(args):
    field = parse_field(args.field)
    A = parse_table(field, args.table[0])
    try:
        form, X = classify_algebra(A)
    except ClassificationError as err:
        _emit({"field": field.spec_text(), "table": A.to_text(),
               "error": err.gate}, args.format)
        return _GATE_EXITS[err.gate]
    prof = property_profile(form, field)
    _emit({
        "field": field.spec_text(),
        "table": A.to_text(),
        "classification": str(form),
        "witness": X.to_text(),
        "profile": prof.to_json(),
    }, args.format)
    return EXIT_OK


def cmd_iso(args):
    field = parse_field(args.field)
    if not field.is_finite:
        print("error: iso needs a finite field", file=sys.stderr)
        return EXIT_USAGE
    A = parse_table(field, args.table[0])
    B = parse_table(field, args.table[1])
    X = bruteforce_isomorphic(A, B)
    payload = {
        "field": field.spec_text(),
        "table_a": A.to_text(),
        "table_b": B.to_text(),
        "isomorphic": X is not None,
        "witness": X.to_text() if X is not None else None,
    }
    _emit(payload, args.format)
    return EXIT_OK


def _parse_filters(text):
    filters = {}
    if not text:
        return filters
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "ec":
            filters["ec"] = True
        elif tok == "straight":
            filters["straight"] = True
        elif tok == "curled":
            filters["straight"] = False
        elif tok.startswith("rank="):
            try:
                filters["rank"] = int(tok[5:])
            except ValueError:
                raise ValueError(f"bad rank filter {tok!r}") from None
        else:
            raise ValueError(f"unknown filter {tok!r}")
    return filters


def cmd_enumerate(args):
    field = parse_field(args.field)
    if not field.is_finite:
        print("error: enumerate needs a finite field", file=sys.stderr)
        return EXIT_USAGE
    q = field.order
    cap = SUITE_MAX_ORDER if args.full else FULL_SCAN_MAX_ORDER
    if q > cap:
        print(f"error: |K| = {q} exceeds enumeration cap {cap}"
              + ("" if args.full else " (use --full up to order "
                 f"{SUITE_MAX_ORDER})"), file=sys.stderr)
        return EXIT_CAP
    filters = _parse_filters(args.filter)
    ctx = lowlevel.ctx_for(field)
    fmt_el = field.format_element
    elems = field.elements()
    if args.format == "csv":
        print("index,a1,b1,a2,b2,a3,b3,a4,b4,ec,rank,straight")
    count = 0
    for index, t in enumerate(itertools.product(range(q), repeat=8)):
        ec = lowlevel.ec_criterion_idx(ctx, t)
        if "ec" in filters and ec is not filters["ec"]:
            continue
        rank = lowlevel.rank_idx(ctx, t)
        if "rank" in filters and rank != filters["rank"]:
            continue
        straight = lowlevel.straight_witness_idx(ctx, t) >= 0
        if "straight" in filters and straight is not filters["straight"]:
            continue
        count += 1
        cells = [fmt_el(elems[i]) for i in t]
        if args.format == "csv":
            print(",".join([str(index)] + cells
                           + [_plain(ec), str(rank), _plain(straight)]))
        elif args.format == "json":
            print(json.dumps({"index": index, "table": ",".join(cells),
                              "ec": ec, "rank": rank, "straight": straight}))
        else:
            print(f"{index}\t{','.join(cells)}\tec={_plain(ec)}"
                  f"\trank={rank}\tstraight={_plain(straight)}")
    if args.format == "text":
        print(f"total: {count}")
    return EXIT_OK


def cmd_verify(args):
    field = parse_field(args.field)
    report = run_suite(field, args.suite, full=args.full, seed=args.seed,
                       sample_size=args.sample_size, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_report_text(report)
    return EXIT_OK if report["passed"] else EXIT_VERIFY_FAILED


def _print_report_text(report):
    if report["suite"] == "all":
        for part in report["reports"]:
            _print_report_text(part)
        print(f"all suites over {report['field']}: "
              f"{'PASS' if report['passed'] else 'FAIL'} "
              f"({report['duration_seconds']}s)")
        return
    head = (f"[{ 'PASS' if report['passed'] else 'FAIL' }] "
            f"{report['suite']} over {report['field']} "
            f"(mode={report['mode']}, scanned={report['scanned']}, "
            f"{report['duration_seconds']}s)")
    print(head)
    if report["suite"] == "theorem1":
        print(f"  gates: {report['gates']}")
        print(f"  classes ({report['class_count']}, "
              f"expected {report['expected_class_count']}):")
        for c in report["classes"]:
            print(f"    {c['form']:>6}  count={c['count']:<6} "
                  f"rep={c['representative']}")
        print(f"  oracle: {report['oracle']}")
        if report.get("sampled_crosscheck"):
            print(f"  sampled cross-check: {report['sampled_crosscheck']}")
    elif report["suite"] == "corollary2":
        for p in report["profiles"]:
            flags = [k for k, v in p["profile"].items() if v is True]
            print(f"    {p['form']:>6}  {', '.join(flags) if flags else '-'}")
    else:
        print(f"  ec_count: {report.get('ec_count')}")
    for note in report.get("notes", ()):
        print(f"  note: {note}")
    for fail in report["failures"]:
        print(f"  FAILURE: {fail}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ecalg",
        description="Exact classification toolkit for 2-dimensional "
                    "endo-commutative algebras over small fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, tables=0, formats=("text", "json")):
        p.add_argument("--field", required=True,
                       help="field spec: Q, F<p>, or F<p^k>:<modulus>")
        if tables:
            p.add_argument("--table", action="append", required=True,
                           help="8 comma-separated entries: a1,b1,a2,b2,a3,b3,a4,b4"
                                + (" (repeat for two tables)" if tables == 2 else ""))
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("check", help="evaluate all predicates on one table")
    add_common(p, tables=1)
    p.add_argument("--bruteforce", action="store_true", default=None,
                   help="force the definition scan (finite fields only)")
    p.add_argument("--no-bruteforce", dest="bruteforce", action="store_false",
                   help="skip the definition scan")
    p.set_defaults(func=cmd_check, tables=1)

    p = sub.add_parser("classify", help="canonical form of one table")
    add_common(p, tables=1)
    p.set_defaults(func=cmd_classify, tables=1)

    p = sub.add_parser("iso", help="brute-force isomorphism test for two tables")
    add_common(p, tables=2)
    p.set_defaults(func=cmd_iso, tables=2)

    p = sub.add_parser("enumerate", help="stream all tables with predicates")
    add_common(p, formats=("text", "json", "csv"))
    p.add_argument("--filter", default="",
                   help="comma list of: ec, rank=N, straight, curled")
    p.add_argument("--full", action="store_true",
                   help=f"allow orders above {FULL_SCAN_MAX_ORDER} "
                        f"(up to {SUITE_MAX_ORDER})")
    p.set_defaults(func=cmd_enumerate, tables=0)

    p = sub.add_parser("verify", help="run a verification suite")
    add_common(p)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--full", action="store_true",
                   help="force full q^8 scans on orders above "
                        f"{FULL_SCAN_MAX_ORDER}")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--sample-size", type=int, default=DEFAULT_SAMPLE)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for the scan suites")
    p.set_defaults(func=cmd_verify, tables=0)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tables", 0) and len(args.table) != args.tables:
        print(f"error: {args.command} needs exactly {args.tables} --table "
              f"argument(s), got {len(args.table)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CapExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    except EnumerationCapError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    except (FieldError, NotEnumerableError, MixedFieldError,
            SingularMatrixError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
