"""Batch front end: load JSON inputs, run suites or constructions, emit reports.

Exit codes: 0 all checks pass, 1 an identity fails, 2 a precondition fails,
3 parse or validation error.  Reports are JSON with a fixed field order;
identical inputs give byte-identical reports (timings opt in via --timings).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import identities
from .constructions import (
    MatchedPairKind,
    commutator_bracket,
    derived_algebra,
    double_suite_kind,
    matched_pair_double,
    novikov_from_derivation,
    quotient,
    tensor_product,
    yau_twist,
    semidirect_sum,
)
from .core import MissingRoleError
from .identities import StructureKind, check_gi_identities, run_suite
from .reports import FAIL, PASS, PRECONDITION_FAILED, PreconditionError, SuiteReport
from .representations import BimoduleKind, check_bimodule
from .scalars import ScalarError
from .serialize import (
    LoadError,
    dump_presentation_file,
    load_linear_map,
    load_matched_pair_file,
    load_presentation_file,
    substitute_presentation,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PRECONDITION = 2
EXIT_ERROR = 3

_STATUS_EXIT = {PASS: EXIT_PASS, FAIL: EXIT_FAIL, PRECONDITION_FAILED: EXIT_PRECONDITION}

STRUCTURE_KINDS = {kind.value: kind for kind in StructureKind}
BIMODULE_KINDS = {kind.value: kind for kind in BimoduleKind}
MATCHED_KINDS = {kind.value: kind for kind in MatchedPairKind}


def _parse_subst(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        if "=" not in item:
            raise LoadError(f"--subst expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        out[name.strip()] = value.strip()
    return out


def _report_doc(input_path: str, kind: str, suite: SuiteReport, include_timing: bool) -> dict:
    return {
        "format": 1,
        "input": str(input_path),
        "kind": kind,
        "status": suite.status,
        "passed": suite.passed,
        "report": suite.to_dict(include_timing),
    }


def _emit(suite: SuiteReport, args, kind: str) -> int:
    print(suite.describe())
    if getattr(args, "report", None):
        doc = _report_doc(args.input, kind, suite, args.timings)
        with open(args.report, "w") as handle:
            json.dump(doc, handle, indent=2)
            handle.write("\n")
    return _STATUS_EXIT[suite.status]


def cmd_check(args) -> int:
    presentation, bundle = load_presentation_file(args.input)
    if args.subst:
        presentation = substitute_presentation(presentation, _parse_subst(args.subst))
    kind = args.kind
    if kind in STRUCTURE_KINDS:
        suite = run_suite(
            presentation,
            STRUCTURE_KINDS[kind],
            workers=args.workers,
            arity4_dim_cap=args.arity4_cap,
        )
    elif kind == "gi":
        suite = check_gi_identities(
            presentation, workers=args.workers, arity4_dim_cap=args.arity4_cap
        )
    elif kind in BIMODULE_KINDS:
        if bundle is None:
            raise LoadError("input has no 'module' block, required for bimodule kinds")
        suite = check_bimodule(
            presentation, bundle, BIMODULE_KINDS[kind], workers=args.workers
        )
    else:
        raise LoadError(f"unknown kind {kind!r}")
    return _emit(suite, args, kind)


def cmd_construct(args) -> int:
    name = args.name
    if name == "matched-pair":
        pair = load_matched_pair_file(args.inputs[0])
        result = matched_pair_double(
            pair, MATCHED_KINDS[args.kind or "hnp"], force=args.force, workers=args.workers
        )
    else:
        presentation, bundle = load_presentation_file(args.inputs[0])
        if name == "commutator":
            result = commutator_bracket(
                presentation, args.from_role, args.to_role or "bracket"
            )
        elif name == "twist":
            if args.map:
                twist_map = load_linear_map(args.map, presentation)
            else:
                twist_map = presentation.alpha
            result = yau_twist(presentation, twist_map, force=args.force)
        elif name == "derived":
            result = derived_algebra(presentation, args.type, args.n, force=args.force)
        elif name == "semidirect":
            if bundle is None:
                raise LoadError("input has no 'module' block, required for semidirect")
            result = semidirect_sum(
                presentation,
                bundle,
                BIMODULE_KINDS[args.kind or "assoc_bimodule"],
                force=args.force,
                workers=args.workers,
            )
        elif name == "tensor":
            other, _ = load_presentation_file(args.inputs[1])
            result = tensor_product(presentation, other, force=args.force, workers=args.workers)
        elif name == "quotient":
            result = quotient(presentation, [n.strip() for n in args.ideal.split(",")])
        elif name == "derivation-product":
            if not args.map:
                raise LoadError("derivation-product needs --map FILE")
            result = novikov_from_derivation(
                presentation,
                load_linear_map(args.map, presentation),
                to_role=args.to_role or "diamond",
                force=args.force,
            )
        else:
            raise LoadError(f"unknown construction {name!r}")

    if args.out:
        dump_presentation_file(result, args.out)
        print(f"wrote {args.out}")
    if args.verify:
        verify = args.verify
        if verify == "auto" and name == "matched-pair":
            verify = double_suite_kind(MATCHED_KINDS[args.kind or "hnp"]).value
        suite = run_suite(
            result,
            STRUCTURE_KINDS[verify],
            workers=args.workers,
            arity4_dim_cap=args.arity4_cap,
        )
        print(suite.describe())
        return _STATUS_EXIT[suite.status]
    return EXIT_PASS


def cmd_report(args) -> int:
    expected = {}
    if args.manifest:
        with open(args.manifest) as handle:
            manifest = json.load(handle)
        for entry in manifest.get("fixtures", []):
            for check in entry.get("checks", []):
                expected[(entry["file"], check["kind"])] = check
    rows = []
    worst = EXIT_PASS
    for path in args.inputs:
        try:
            with open(path) as handle:
                doc = json.load(handle)
            fixture = doc["input"]
            kind = doc["kind"]
            status = doc["status"]
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise LoadError(f"malformed report file {path}: {exc}") from exc
        key = (fixture.rsplit("/", 1)[-1], kind)
        note = ""
        manifest_entry = expected.get(key)
        if manifest_entry is not None:
            if manifest_entry.get("expected") == "discrepancy":
                note = (
                    "expected discrepancy"
                    if status != PASS
                    else "MANIFEST MISMATCH: discrepancy expected"
                )
            elif manifest_entry.get("expected", "pass") != status:
                note = f"MANIFEST MISMATCH: expected {manifest_entry['expected']}"
        if not note.startswith("expected"):
            worst = max(worst, _STATUS_EXIT[status])
        rows.append((fixture, kind, status, note))
    if rows:
        width = max(len(r[0]) for r in rows)
        kwidth = max(len(r[1]) for r in rows)
        for fixture, kind, status, note in rows:
            line = f"{fixture:<{width}}  {kind:<{kwidth}}  {status.upper()}"
            if note:
                line += f"  [{note}]"
            print(line)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homcolor",
        description="Exact identity checking and constructions for graded Hom-algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run an identity or bimodule suite on an input file")
    check.add_argument("input")
    check.add_argument(
        "--kind",
        required=True,
        choices=sorted(STRUCTURE_KINDS) + sorted(BIMODULE_KINDS) + ["gi"],
    )
    check.add_argument("--report", help="write a JSON report to this path")
    check.add_argument("--subst", action="append", default=[], metavar="NAME=VALUE")
    check.add_argument("--workers", type=int, default=1)
    check.add_argument("--arity4-cap", type=int, default=None, dest="arity4_cap")
    check.add_argument("--timings", action="store_true", help="include timings in reports")
    check.set_defaults(func=cmd_check)

    construct = sub.add_parser("construct", help="run a construction and emit the result")
    construct.add_argument(
        "name",
        choices=[
            "commutator",
            "twist",
            "derived",
            "semidirect",
            "matched-pair",
            "tensor",
            "quotient",
            "derivation-product",
        ],
    )
    construct.add_argument("inputs", nargs="+")
    construct.add_argument("--out", help="write the constructed presentation here")
    construct.add_argument("--verify", help="run this structure suite on the output")
    construct.add_argument("--force", action="store_true", help="build even if preconditions fail")
    construct.add_argument("--from", "--from-role", dest="from_role", default="dot")
    construct.add_argument("--to", "--to-role", dest="to_role", default=None)
    construct.add_argument("--type", type=int, default=1, choices=(1, 2))
    construct.add_argument("--n", type=int, default=1)
    construct.add_argument("--kind", default=None, help="bimodule or matched-pair kind")
    construct.add_argument("--ideal", default="", help="comma-separated basis names")
    construct.add_argument("--map", default=None, help="JSON file with a 'map' matrix")
    construct.add_argument("--workers", type=int, default=1)
    construct.add_argument("--arity4-cap", type=int, default=None, dest="arity4_cap")
    construct.set_defaults(func=cmd_construct)

    report = sub.add_parser("report", help="aggregate JSON reports into a summary table")
    report.add_argument("inputs", nargs="*")
    report.add_argument("--manifest", default=None, help="fixture manifest with expected verdicts")
    report.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        for report in exc.reports:
            print(report.describe(), file=sys.stderr)
        return EXIT_PRECONDITION
    except (LoadError, MissingRoleError, ScalarError, identities.ArityCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
