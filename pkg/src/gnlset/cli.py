"""Command-line entry points.

Commands: construct, verify, classify, table1, verify-certificate.
Exit codes: 0 success, 1 verdict failure (nontrivial measurement,
unknown classification, invalid certificate, failed table cell),
2 precondition failure (inadmissible dims, non-orthogonal input),
3 parse or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .constructions import (
    ConstructionSpec,
    Family,
    InadmissibleDimensionsError,
    gen_named,
)
from .cyclotomic import to_literal
from .docio import (
    DocumentError,
    classification_to_json,
    dump_document,
    load_document,
    report_to_json,
    set_from_document,
    set_to_document,
    validate_classification_document,
)
from .oplm import assemble, float_solution_dim, solution_space
from .states import StateSet, check_mutual_orthogonality, party_name
from .verdicts import (
    Classification,
    GnlType,
    RuleCertificate,
    classify,
)

import json


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}")
    if not dims:
        raise argparse.ArgumentTypeError("empty dimension list")
    return dims


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_set(path: str) -> StateSet:
    with open(path, "r", encoding="utf-8") as fh:
        doc = load_document(fh.read())
    return set_from_document(doc, verify=False)


def cmd_construct(args) -> int:
    try:
        family = Family(args.family)
    except ValueError:
        sys.stderr.write(f"unknown family {args.family!r}\n")
        return 2
    try:
        s = gen_named(ConstructionSpec(family, args.dims))
    except InadmissibleDimensionsError as exc:
        sys.stderr.write(f"inadmissible dimensions: {exc}\n")
        return 2
    try:
        _write_output(dump_document(set_to_document(s)), args.out)
    except OSError as exc:
        sys.stderr.write(f"cannot write output: {exc}\n")
        return 3
    return 0


def _orthogonality_gate(s: StateSet) -> Optional[str]:
    report = check_mutual_orthogonality(s)
    if report.ok:
        return None
    lines = ["input set is not mutually orthogonal:"]
    for v in report.violations:
        lines.append(f"  <{v.label_a}|{v.label_b}> = {to_literal(v.value)}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    try:
        s = _load_set(args.set)
    except (OSError, DocumentError) as exc:
        sys.stderr.write(f"cannot load state set: {exc}\n")
        return 3
    gate = _orthogonality_gate(s)
    if gate is not None:
        sys.stderr.write(gate)
        return 2
    if args.group is not None:
        groups = [tuple(args.group)]
    elif args.party == "all":
        groups = [(p,) for p in range(s.n_parties)]
    else:
        try:
            groups = [(int(x),) for x in args.party.split(",")]
        except ValueError:
            sys.stderr.write(f"bad --party value {args.party!r}\n")
            return 3
    docs = []
    all_trivial = True
    for group in groups:
        try:
            cs = assemble(s, group)
        except ValueError as exc:
            sys.stderr.write(f"cannot assemble constraints: {exc}\n")
            return 3
        if args.backend == "float":
            dim = float_solution_dim(cs, args.tolerance)
            doc = {
                "party_group": list(group),
                "unknown_dim": cs.unknown_dim,
                "solution_dim": dim,
                "trivial": dim == 1,
                "backend": "float",
                "tolerance": args.tolerance,
            }
        else:
            report = solution_space(cs)
            doc = report_to_json(report, include_basis=not args.no_basis)
            doc["backend"] = "exact"
        docs.append(doc)
        if doc["solution_dim"] != 1:
            all_trivial = False
    if args.format == "json":
        _write_output(json.dumps({"reports": docs}, indent=2) + "\n", args.out)
    else:
        lines = []
        for doc in docs:
            names = "+".join(party_name(p, s.n_parties) for p in doc["party_group"])
            verdict = "trivial" if doc["trivial"] else "NONTRIVIAL"
            lines.append(
                f"party {names}: solution dimension {doc['solution_dim']} "
                f"({verdict}, backend {doc['backend']})"
            )
            if not doc["trivial"] and doc.get("witness"):
                lines.append("  witness:")
                for row in doc["witness"]["entries"]:
                    lines.append("    [" + ", ".join(row) + "]")
        _write_output("\n".join(lines) + "\n", args.out)
    return 0 if all_trivial else 1


def cmd_classify(args) -> int:
    try:
        s = _load_set(args.set)
    except (OSError, DocumentError) as exc:
        sys.stderr.write(f"cannot load state set: {exc}\n")
        return 3
    gate = _orthogonality_gate(s)
    if gate is not None:
        sys.stderr.write(gate)
        return 2
    cls = classify(s, budget_ms=args.budget)
    doc = classification_to_json(cls, s)
    if args.emit_certificates:
        try:
            _write_output(dump_document(doc), args.emit_certificates)
        except OSError as exc:
            sys.stderr.write(f"cannot write certificates: {exc}\n")
            return 3
    if args.format == "json":
        _write_output(dump_document(doc), args.out)
    else:
        _write_output(_render_classification(cls, s), args.out)
    return 0 if cls.gnl_type is not GnlType.UNKNOWN else 1


def _render_classification(cls: Classification, s: StateSet) -> str:
    n = s.n_parties
    lines = [
        f"set: dims {list(s.dims)}, {len(s.states)} states",
        f"genuine: {cls.genuine.value}",
        f"irreducible: {cls.irreducible.value}",
        f"type: {cls.gnl_type.value}",
    ]
    for p in sorted(cls.party_reports):
        rep = cls.party_reports[p]
        lines.append(
            f"  party {party_name(p, n)}: solution dimension {rep.solution_dim}"
        )
    for key, entry in cls.per_bipartition.items():
        if isinstance(entry, RuleCertificate):
            lines.append(
                f"  bipartition {key}: certified ({entry.rule.value}, "
                f"subset of {len(entry.subset)}, core {entry.core_pair})"
            )
        else:
            lines.append(f"  bipartition {key}: unknown ({entry.reason.value})")
    if cls.reduction is not None:
        w = cls.reduction
        lines.append(
            f"reduction: party {party_name(w.party, n)}, indices {list(w.index_subset)}, "
            f"split {len(w.inside)}/{len(w.outside)}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify_certificate(args) -> int:
    try:
        s = _load_set(args.set)
        with open(args.certificate, "r", encoding="utf-8") as fh:
            cert_doc = load_document(fh.read())
    except (OSError, DocumentError) as exc:
        sys.stderr.write(f"cannot load documents: {exc}\n")
        return 3
    gate = _orthogonality_gate(s)
    if gate is not None:
        sys.stderr.write(gate)
        return 2
    fails = validate_classification_document(s, cert_doc)
    if fails:
        for msg in fails:
            sys.stdout.write(f"FAIL: {msg}\n")
        return 1
    sys.stdout.write("certificate valid\n")
    return 0


# -- the cardinality/typology regression table --------------------------------

PRIOR_ROWS = [
    ("prior", "C4 x C4 x C4", "64", "type-I"),
    ("prior", "C3 x C3 x C3", "27", "type-II"),
    ("prior", "C4 x C4 x C4", "64", "type-II"),
    ("prior", "Cx x Cy x Cz (x,z>=3, y>=4)", "2x+4y+2z-8", "type-I"),
    ("prior", "C4 x C3 x C3", "14", "type-II"),
    ("prior", "C(m+2) x (C3)^m", "6m+2", "type-II"),
    ("prior", "C6 x C5 x C5", "42", "type-II"),
]


def _ascending(lo: int, hi: int, k: int):
    if k == 0:
        yield ()
        return
    for d in range(lo, hi + 1):
        for rest in _ascending(d, hi, k - 1):
            yield (d,) + rest


def table_rows(grid: str):
    maxd = 6 if grid == "small" else 7
    maxn = 4 if grid == "small" else 5
    t1 = [
        (d1, d2, d3)
        for d1 in range(4, maxd + 1)
        for d2 in range(d1 - 1, maxd + 1)
        for d3 in range(d2, maxd + 1)
    ]
    t2 = []
    for n in range(3, maxn + 1):
        for d1 in range(4, maxd + 1):
            for rest in _ascending(d1 - 1, maxd, n - 1):
                t2.append((d1,) + rest)
    t3 = [
        (d1, d2, d3)
        for d1 in range(3, maxd + 1)
        for d2 in range(d1, maxd + 1)
        for d3 in range(d2, maxd + 1)
    ]
    t4 = []
    for n in range(4, maxn + 1):
        for d1 in range(3, maxd + 1):
            for rest in _ascending(d1, maxd, n - 1):
                t4.append((d1,) + rest)
    return [
        (
            "row-1",
            Family.TYPE1_TRIPARTITE,
            "2(d2+d3)-2",
            lambda dims: 2 * (dims[1] + dims[2]) - 2,
            GnlType.TYPE_I,
            t1,
        ),
        (
            "row-2",
            Family.TYPE1_NPARTITE,
            "sum_{i>=2} (2 d_i - 1)",
            lambda dims: sum(2 * d - 1 for d in dims[1:]),
            GnlType.TYPE_I,
            t2,
        ),
        (
            "row-3",
            Family.TYPE2_TRIPARTITE,
            "2(d2+d3)-4",
            lambda dims: 2 * dims[1] + 2 * dims[2] - 4,
            GnlType.TYPE_II,
            t3,
        ),
        (
            "row-4",
            Family.TYPE2_NPARTITE,
            "sum_{i>=2} (2 d_i - 1)",
            lambda dims: sum(2 * d - 1 for d in dims[1:]),
            GnlType.TYPE_II,
            t4,
        ),
    ]


def run_table1(grid: str, budget_ms: Optional[int] = None, log=None):
    """Check every grid cell; returns (summary rows, failures)."""
    failures = []
    summary = []
    for name, family, formula, count_fn, want_type, cells in table_rows(grid):
        checked = 0
        for dims in cells:
            try:
                s = gen_named(ConstructionSpec(family, dims))
            except InadmissibleDimensionsError as exc:
                failures.append(f"{name} {dims}: inadmissible ({exc})")
                continue
            if len(s.states) != count_fn(dims):
                failures.append(
                    f"{name} {dims}: cardinality {len(s.states)} != {count_fn(dims)}"
                )
                continue
            cls = classify(s, budget_ms=budget_ms)
            if cls.gnl_type is not want_type:
                failures.append(
                    f"{name} {dims}: classified {cls.gnl_type.value}, expected {want_type.value}"
                )
                continue
            checked += 1
            if log is not None:
                log(f"{name} {dims}: {len(s.states)} states, {cls.gnl_type.value}")
        summary.append(
            (name, family.value, formula, want_type.value, checked, len(cells))
        )
    return summary, failures


def cmd_table1(args) -> int:
    log = (lambda msg: sys.stderr.write(msg + "\n")) if args.verbose else None
    summary, failures = run_table1(args.grid, budget_ms=args.budget, log=log)
    if args.format == "json":
        doc = {
            "grid": args.grid,
            "rows": [
                {
                    "row": name,
                    "family": family,
                    "cardinality": formula,
                    "typology": typ,
                    "cells_passed": ok,
                    "cells_total": total,
                }
                for name, family, formula, typ, ok, total in summary
            ],
            "prior_constructions": [
                {"system": sysname, "cardinality": card, "typology": typ}
                for _, sysname, card, typ in PRIOR_ROWS
            ],
            "failures": failures,
        }
        _write_output(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = ["source      system / family             cardinality        typology   cells"]
        for _, sysname, card, typ in PRIOR_ROWS:
            lines.append(f"prior       {sysname:<28}{card:<19}{typ:<11}-")
        for name, family, formula, typ, ok, total in summary:
            lines.append(
                f"{name:<12}{family:<28}{formula:<19}{typ:<11}{ok}/{total}"
            )
        for msg in failures:
            lines.append(f"FAIL {msg}")
        _write_output("\n".join(lines) + "\n", args.out)
    if failures:
        sys.stderr.write(f"{len(failures)} table cells failed\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnlset",
        description="Construct and verify genuinely nonlocal orthogonal product-state sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="generate a state-set document")
    p.add_argument("--family", required=True, help="construction family, e.g. bipartite")
    p.add_argument("--dims", required=True, type=_parse_dims, help="comma-separated dimensions")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="solve the measurement constraints for parties")
    p.add_argument("set", help="state-set JSON document")
    p.add_argument("--party", default="all", help="'all' or comma-separated party indices")
    p.add_argument("--group", default=None, type=lambda t: [int(x) for x in t.split(",")],
                   help="treat these parties as one joined party")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--tolerance", type=float, default=1e-9,
                   help="relative singular-value threshold for the float backend")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-basis", action="store_true", help="omit basis matrices from JSON")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="full nonlocality classification")
    p.add_argument("set", help="state-set JSON document")
    p.add_argument("--budget", type=int, default=None,
                   help="per-bipartition search budget in ms (or env GNL_BUDGET_MS)")
    p.add_argument("--emit-certificates", default=None, metavar="PATH",
                   help="write the classification document here")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table1", help="cardinality/typology regression grid")
    p.add_argument("--grid", choices=("small", "full"), default="small")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify-certificate", help="re-validate an emitted classification")
    p.add_argument("set", help="state-set JSON document")
    p.add_argument("certificate", help="classification JSON document")
    p.set_defaults(func=cmd_verify_certificate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
