"""JSON interchange for state sets, measurement reports, and certificates.

One schema, version "1".  Serialization is canonical (sorted term
indices, no floats anywhere), so identical inputs produce byte-identical
documents and round-trips are exact.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .cyclotomic import parse_literal, to_literal
from .oplm import HermitianOperator, OplmReport
from .states import (
    LocalFactor,
    ProductState,
    Provenance,
    StateSet,
    build_factor,
)
from .verdicts import (
    RULE_VERSION,
    Bipartition,
    Classification,
    Genuineness,
    GnlType,
    Irreducibility,
    ReductionWitness,
    RiderEvidence,
    Rule,
    RuleCertificate,
    Unknown,
    UnknownReason,
    check_irreducible,
    verify_classification,
)

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """Structurally invalid document."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


# -- state sets ---------------------------------------------------------------


def set_to_document(s: StateSet) -> dict:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "dims": list(s.dims),
        "ambient_order": s.ambient_order,
        "states": [
            {
                "label": st.label,
                "factors": [
                    {
                        "terms": [
                            [i, to_literal(a)]
                            for i, a in enumerate(f.amplitudes)
                            if not a.is_zero()
                        ]
                    }
                    for f in st.factors
                ],
            }
            for st in s.states
        ],
    }
    if s.provenance is not None:
        doc["provenance"] = {
            "family": s.provenance.family,
            "dims": list(s.provenance.dims),
        }
    return doc


def set_from_document(doc: dict, verify: bool = True) -> StateSet:
    _require(isinstance(doc, dict), "document must be a JSON object")
    _require(doc.get("schema_version") == SCHEMA_VERSION, "unsupported schema_version")
    dims = doc.get("dims")
    _require(
        isinstance(dims, list) and dims and all(isinstance(d, int) and d >= 1 for d in dims),
        "dims must be a list of positive integers",
    )
    order = doc.get("ambient_order")
    _require(isinstance(order, int) and order >= 1, "ambient_order must be a positive integer")
    raw_states = doc.get("states")
    _require(isinstance(raw_states, list) and raw_states, "states must be a nonempty list")
    states = []
    for raw in raw_states:
        _require(isinstance(raw, dict), "each state must be an object")
        label = raw.get("label")
        _require(isinstance(label, str) and label, "state label must be a nonempty string")
        raw_factors = raw.get("factors")
        _require(
            isinstance(raw_factors, list) and len(raw_factors) == len(dims),
            f"state {label} must have one factor per party",
        )
        factors = []
        for k, rf in enumerate(raw_factors):
            _require(isinstance(rf, dict) and isinstance(rf.get("terms"), list),
                     f"factor {k} of {label} must carry a terms list")
            terms = []
            for item in rf["terms"]:
                _require(
                    isinstance(item, list) and len(item) == 2
                    and isinstance(item[0], int) and isinstance(item[1], str),
                    f"bad term in factor {k} of {label}",
                )
                idx, lit = item
                try:
                    coeff = parse_literal(lit, order)
                except ValueError as exc:
                    raise DocumentError(f"bad literal in {label}: {exc}") from exc
                terms.append((idx, coeff))
            try:
                factors.append(build_factor(dims[k], terms))
            except ValueError as exc:
                raise DocumentError(f"bad factor in {label}: {exc}") from exc
        states.append(ProductState(label, tuple(factors)))
    provenance = None
    raw_prov = doc.get("provenance")
    if raw_prov is not None:
        _require(
            isinstance(raw_prov, dict)
            and isinstance(raw_prov.get("family"), str)
            and isinstance(raw_prov.get("dims"), list),
            "provenance must carry family and dims",
        )
        provenance = Provenance(raw_prov["family"], tuple(raw_prov["dims"]))
    try:
        return StateSet(dims, order, states, provenance, verify=verify)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "document must be a JSON object")
    return doc


# -- measurement reports -------------------------------------------------------


def _matrix_to_json(mat) -> list[list[str]]:
    return [[to_literal(x) for x in row] for row in mat]


def operator_to_json(op: HermitianOperator) -> dict:
    return {"dim": op.dim, "order": op.order, "entries": _matrix_to_json(op.entries)}


def report_to_json(report: OplmReport, include_basis: bool = True) -> dict:
    doc = {
        "party_group": list(report.party_group),
        "unknown_dim": report.unknown_dim,
        "order": report.order,
        "solution_dim": report.solution_dim,
        "trivial": report.trivial,
    }
    if include_basis:
        doc["basis"] = [_matrix_to_json(mat) for mat in report.basis]
    doc["witness"] = (
        operator_to_json(report.witness) if report.witness is not None else None
    )
    return doc


# -- certificates and classifications -----------------------------------------


def certificate_to_json(cert: RuleCertificate) -> dict:
    riders = []
    for ev in cert.riders:
        entry: dict[str, Any] = {"party": ev.party, "kind": ev.kind}
        if ev.kind == "proportional":
            entry["scalars"] = [[lab, to_literal(v)] for lab, v in ev.scalars]
        else:
            entry["overlaps"] = [
                [la, lb, to_literal(v)] for la, lb, v in ev.overlaps
            ]
        riders.append(entry)
    return {
        "bipartition": {
            "side_x": list(cert.bipartition.side_x),
            "side_y": list(cert.bipartition.side_y),
        },
        "rule": cert.rule.value,
        "rule_version": cert.rule_version,
        "subset": list(cert.subset),
        "core_pair": list(cert.core_pair),
        "core_supports": [list(cert.core_supports[0]), list(cert.core_supports[1])],
        "core_solution_dims": list(cert.core_solution_dims),
        "riders": riders,
        "grouped": cert.grouped,
    }


def certificate_from_json(doc: dict, order: int) -> RuleCertificate:
    _require(isinstance(doc, dict), "certificate must be an object")
    bp_doc = doc.get("bipartition")
    _require(
        isinstance(bp_doc, dict)
        and isinstance(bp_doc.get("side_x"), list)
        and isinstance(bp_doc.get("side_y"), list),
        "certificate needs bipartition sides",
    )
    try:
        bp = Bipartition(tuple(bp_doc["side_x"]), tuple(bp_doc["side_y"]))
    except ValueError as exc:
        raise DocumentError(f"bad bipartition: {exc}") from exc
    try:
        rule = Rule(doc.get("rule"))
    except ValueError as exc:
        raise DocumentError(f"unknown rule {doc.get('rule')!r}") from exc
    subset = doc.get("subset")
    _require(
        isinstance(subset, list) and all(isinstance(x, str) for x in subset),
        "subset must be a list of labels",
    )
    core_pair = doc.get("core_pair")
    _require(
        isinstance(core_pair, list) and len(core_pair) == 2
        and all(isinstance(x, int) for x in core_pair),
        "core_pair must be two party indices",
    )
    supports = doc.get("core_supports")
    _require(
        isinstance(supports, list) and len(supports) == 2
        and all(isinstance(sp, list) for sp in supports),
        "core_supports must be two index lists",
    )
    dims = doc.get("core_solution_dims")
    _require(
        isinstance(dims, list) and len(dims) == 2
        and all(isinstance(x, int) for x in dims),
        "core_solution_dims must be two integers",
    )
    riders = []
    for ev in doc.get("riders", []):
        _require(isinstance(ev, dict) and isinstance(ev.get("party"), int),
                 "rider entries must carry a party index")
        kind = ev.get("kind")
        _require(kind in ("proportional", "nonorthogonal"), f"unknown rider kind {kind!r}")
        if kind == "proportional":
            scalars = []
            for item in ev.get("scalars", []):
                _require(isinstance(item, list) and len(item) == 2, "bad scalar entry")
                scalars.append((item[0], parse_literal(item[1], order)))
            riders.append(RiderEvidence(ev["party"], kind, scalars=tuple(scalars)))
        else:
            overlaps = []
            for item in ev.get("overlaps", []):
                _require(isinstance(item, list) and len(item) == 3, "bad overlap entry")
                overlaps.append((item[0], item[1], parse_literal(item[2], order)))
            riders.append(RiderEvidence(ev["party"], kind, overlaps=tuple(overlaps)))
    return RuleCertificate(
        bipartition=bp,
        rule=rule,
        subset=tuple(subset),
        core_pair=(core_pair[0], core_pair[1]),
        core_supports=(tuple(supports[0]), tuple(supports[1])),
        core_solution_dims=(dims[0], dims[1]),
        riders=tuple(riders),
        rule_version=doc.get("rule_version", ""),
        grouped=bool(doc.get("grouped", False)),
    )


def classification_to_json(cls: Classification, s: StateSet) -> dict:
    per = {}
    for key, entry in cls.per_bipartition.items():
        if isinstance(entry, RuleCertificate):
            per[key] = {"certificate": certificate_to_json(entry)}
        else:
            per[key] = {"unknown": entry.reason.value}
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "classification",
        "dims": list(s.dims),
        "ambient_order": s.ambient_order,
        "genuine": cls.genuine.value,
        "irreducible": cls.irreducible.value,
        "gnl_type": cls.gnl_type.value,
        "rule_version": cls.rule_version,
        "per_bipartition": per,
        "reduction": (
            None
            if cls.reduction is None
            else {
                "party": cls.reduction.party,
                "index_subset": list(cls.reduction.index_subset),
                "inside": list(cls.reduction.inside),
                "outside": list(cls.reduction.outside),
            }
        ),
        "party_solution_dims": {
            str(p): rep.solution_dim for p, rep in sorted(cls.party_reports.items())
        },
    }


def classification_from_json(doc: dict) -> tuple[Classification, dict]:
    """Rebuild the verdict structure; party reports are not serialized."""
    _require(isinstance(doc, dict), "classification must be an object")
    _require(doc.get("schema_version") == SCHEMA_VERSION, "unsupported schema_version")
    _require(doc.get("kind") == "classification", "not a classification document")
    order = doc.get("ambient_order")
    _require(isinstance(order, int) and order >= 1, "bad ambient_order")
    per_raw = doc.get("per_bipartition")
    _require(isinstance(per_raw, dict), "per_bipartition must be an object")
    per: dict[str, RuleCertificate | Unknown] = {}
    for key, entry in per_raw.items():
        _require(isinstance(entry, dict), "per-bipartition entries must be objects")
        if "certificate" in entry:
            per[key] = certificate_from_json(entry["certificate"], order)
        elif "unknown" in entry:
            try:
                per[key] = Unknown(UnknownReason(entry["unknown"]))
            except ValueError as exc:
                raise DocumentError(f"unknown reason {entry['unknown']!r}") from exc
        else:
            raise DocumentError(f"bipartition {key} carries neither certificate nor unknown")
    reduction = None
    red_raw = doc.get("reduction")
    if red_raw is not None:
        _require(
            isinstance(red_raw, dict) and isinstance(red_raw.get("party"), int),
            "bad reduction witness",
        )
        reduction = ReductionWitness(
            party=red_raw["party"],
            index_subset=tuple(red_raw.get("index_subset", [])),
            inside=tuple(red_raw.get("inside", [])),
            outside=tuple(red_raw.get("outside", [])),
        )
    try:
        genuine = Genuineness(doc.get("genuine"))
        irreducible = Irreducibility(doc.get("irreducible"))
        gnl_type = GnlType(doc.get("gnl_type"))
    except ValueError as exc:
        raise DocumentError(f"bad verdict field: {exc}") from exc
    cls = Classification(
        genuine=genuine,
        per_bipartition=per,
        irreducible=irreducible,
        reduction=reduction,
        gnl_type=gnl_type,
        party_reports={},
        rule_version=doc.get("rule_version", ""),
    )
    extra = {"party_solution_dims": doc.get("party_solution_dims", {})}
    return cls, extra


def validate_classification_document(s: StateSet, doc: dict) -> list[str]:
    """Full third-party audit of a serialized classification.

    Every stored field is either re-derived from the state set or
    cross-checked against a re-derived value, so any single-field
    mutation of the document is detected.
    """
    try:
        cls, extra = classification_from_json(doc)
    except DocumentError as exc:
        return [f"document error: {exc}"]
    fails = []
    if tuple(doc.get("dims", ())) != s.dims:
        fails.append("document dims do not match the state set")
    if doc.get("ambient_order") != s.ambient_order:
        fails.append("document ambient_order does not match the state set")
    if cls.rule_version != RULE_VERSION:
        fails.append(f"unsupported rule version {cls.rule_version!r}")
    fails.extend(verify_classification(s, cls))
    _all_trivial, reports = check_irreducible(s)
    stored = extra.get("party_solution_dims", {})
    derived = {str(p): rep.solution_dim for p, rep in reports.items()}
    if stored != derived:
        fails.append(
            f"stored party solution dims {stored} do not re-derive ({derived})"
        )
    return fails
