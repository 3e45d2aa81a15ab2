"""Sound certificate-producing checks for nonlocality claims.

The engine proves local indistinguishability per bipartition by
exhibiting a subset whose restriction to a two-party core admits only
trivial orthogonality-preserving measurements while every remaining
party is a rider with no distinguishing power.  It never claims
distinguishability: failure to certify is reported as Unknown.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import networkx as nx

from .constructions import proof_blocks
from .cyclotomic import Cyclotomic
from .oplm import OplmReport, assemble, solution_space
from .states import (
    LocalFactor,
    ProductState,
    StateSet,
    check_mutual_orthogonality,
)

#: Rule semantics recorded in every certificate: a first-round
#: orthogonality-preserving measurement that must be trivial on both
#: core parties, with riders required to have pairwise nonzero overlaps
#: (the weakest reading of the imported two-party reduction lemma).
RULE_VERSION = "trivial-core+nonorthogonal-riders/v1"

DEFAULT_BUDGET_MS = 30000
GENERAL_SEARCH_MAX_STATES = 40


class Rule(str, Enum):
    STRIP_IDENTICAL = "strip-identical"
    TWO_PARTY_TRIVIAL_CORE = "two-party-trivial-core"
    NONORTHOGONAL_RIDER = "nonorthogonal-rider"


class Genuineness(str, Enum):
    PROVEN = "proven-genuine"
    UNKNOWN = "unknown"


class Irreducibility(str, Enum):
    PROVEN = "proven-irreducible"
    REDUCIBLE = "reducible-with-witness"
    UNKNOWN = "unknown"


class GnlType(str, Enum):
    TYPE_I = "type-I"
    TYPE_II = "type-II"
    UNKNOWN = "unknown"


class UnknownReason(str, Enum):
    SEARCH_EXHAUSTED = "search-exhausted"
    BUDGET_EXHAUSTED = "budget-exhausted"
    SET_TOO_LARGE = "set-too-large"


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint nonempty sides covering all parties; side_x holds party 0."""

    side_x: tuple[int, ...]
    side_y: tuple[int, ...]

    def __post_init__(self):
        sx, sy = set(self.side_x), set(self.side_y)
        if not sx or not sy or sx & sy:
            raise ValueError("bipartition sides must be disjoint and nonempty")
        if 0 not in sx:
            raise ValueError("canonical form keeps party 0 in side_x")
        if tuple(sorted(sx)) != self.side_x or tuple(sorted(sy)) != self.side_y:
            raise ValueError("bipartition sides must be sorted")

    @classmethod
    def of(cls, side_a: Sequence[int], side_b: Sequence[int]) -> "Bipartition":
        a, b = tuple(sorted(side_a)), tuple(sorted(side_b))
        return cls(a, b) if 0 in a else cls(b, a)

    def parties(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_x + self.side_y))

    def separates(self, p: int, q: int) -> bool:
        return (p in self.side_x) != (q in self.side_x)

    def key(self) -> str:
        return ",".join(map(str, self.side_x)) + "|" + ",".join(map(str, self.side_y))


def all_bipartitions(n_parties: int) -> list[Bipartition]:
    """All 2^(n-1) - 1 splits, in a fixed order."""
    if n_parties < 2:
        raise ValueError("need at least two parties")
    rest = list(range(1, n_parties))
    out = []
    for mask in range(2 ** len(rest) - 1, -1, -1):
        side_x = [0] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
        side_y = [p for p in rest if p not in side_x]
        if side_y:
            out.append(Bipartition.of(side_x, side_y))
    out.sort(key=lambda bp: (len(bp.side_x), bp.side_x, bp.side_y))
    return out


@dataclass(frozen=True)
class RiderEvidence:
    """Why one non-core party carries no distinguishing power on a subset."""

    party: int
    kind: str  # "proportional" or "nonorthogonal"
    scalars: tuple[tuple[str, Cyclotomic], ...] = ()
    overlaps: tuple[tuple[str, str, Cyclotomic], ...] = ()


@dataclass
class RuleCertificate:
    bipartition: Bipartition
    rule: Rule
    subset: tuple[str, ...]
    core_pair: tuple[int, int]
    core_supports: tuple[tuple[int, ...], tuple[int, ...]]
    core_solution_dims: tuple[int, int]
    riders: tuple[RiderEvidence, ...]
    rule_version: str = RULE_VERSION
    grouped: bool = False
    core_reports: Optional[tuple[OplmReport, OplmReport]] = None


@dataclass(frozen=True)
class Unknown:
    reason: UnknownReason


@dataclass
class ReductionWitness:
    """A basis-index split showing a projective measurement that divides the set."""

    party: int
    index_subset: tuple[int, ...]
    inside: tuple[str, ...]
    outside: tuple[str, ...]


@dataclass
class Classification:
    genuine: Genuineness
    per_bipartition: dict[str, RuleCertificate | Unknown]
    irreducible: Irreducibility
    reduction: Optional[ReductionWitness]
    gnl_type: GnlType
    party_reports: dict[int, OplmReport]
    rule_version: str = RULE_VERSION


# -- irreducibility and reduction -------------------------------------------


def check_irreducible(s: StateSet) -> tuple[bool, dict[int, OplmReport]]:
    """True iff every single party's measurement space is trivial."""
    reports = {p: solution_space(assemble(s, (p,))) for p in range(s.n_parties)}
    return all(r.trivial for r in reports.values()), reports


def find_reduction(s: StateSet) -> Optional[ReductionWitness]:
    """First basis-aligned split, scanning parties in index order.

    Indices that co-occur in some state's support must stay together,
    so the candidate classes are the connected components of the
    co-occurrence graph; the split keeps the component of the highest
    used index on one side.
    """
    for party in range(s.n_parties):
        dim = s.dims[party]
        parent = list(range(dim))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        supports = []
        for st in s.states:
            supp = st.factors[party].support()
            supports.append(supp)
            for other in supp[1:]:
                parent[find(other)] = find(supp[0])
        used_components = {find(supp[0]) for supp in supports}
        if len(used_components) < 2:
            continue
        highest = max(max(supp) for supp in supports)
        root = find(highest)
        t = tuple(sorted(i for i in range(dim) if find(i) == root))
        inside = tuple(
            st.label for st, supp in zip(s.states, supports) if find(supp[0]) == root
        )
        outside = tuple(
            st.label for st, supp in zip(s.states, supports) if find(supp[0]) != root
        )
        return ReductionWitness(party, t, inside, outside)
    return None


# -- per-bipartition certification -------------------------------------------


def _rider_evidence(states: Sequence[ProductState], party: int) -> Optional[RiderEvidence]:
    """Evidence that ``party`` cannot help distinguish ``states``; None if it can."""
    ref = states[0].factors[party]
    scalars: list[tuple[str, Cyclotomic]] = []
    proportional = True
    for st in states:
        lam = ref.proportional_to(st.factors[party])
        if lam is None:
            proportional = False
            break
        scalars.append((st.label, lam))
    if proportional:
        return RiderEvidence(party, "proportional", scalars=tuple(scalars))
    overlaps = []
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            val = states[i].factors[party].inner(states[j].factors[party])
            if val.is_zero():
                return None
            overlaps.append((states[i].label, states[j].label, val))
    return RiderEvidence(party, "nonorthogonal", overlaps=tuple(overlaps))


def _compress_factor(f: LocalFactor, support: Sequence[int]) -> LocalFactor:
    amps = tuple(f.amplitudes[i] for i in support)
    return LocalFactor(len(support), amps)


def _core_restriction(
    states: Sequence[ProductState], p: int, q: int, order: int
) -> tuple[Optional[StateSet], tuple[int, ...], tuple[int, ...]]:
    """Two-party restriction compressed to the coordinate supports."""
    supp_p = sorted(set().union(*[st.factors[p].support() for st in states]))
    supp_q = sorted(set().union(*[st.factors[q].support() for st in states]))
    restricted = [
        ProductState(
            st.label,
            (_compress_factor(st.factors[p], supp_p), _compress_factor(st.factors[q], supp_q)),
        )
        for st in states
    ]
    core = StateSet((len(supp_p), len(supp_q)), order, restricted, None, verify=False)
    if not check_mutual_orthogonality(core).ok:
        return None, tuple(supp_p), tuple(supp_q)
    return core, tuple(supp_p), tuple(supp_q)


def _try_candidate(
    s: StateSet,
    bp: Bipartition,
    labels: Sequence[str],
    p: int,
    q: int,
    cache: dict,
) -> Optional[RuleCertificate]:
    if len(labels) < 2:
        return None
    states = [s.state(l) for l in labels]
    riders = []
    for r in range(s.n_parties):
        if r in (p, q):
            continue
        ev = _rider_evidence(states, r)
        if ev is None:
            return None
        riders.append(ev)
    key = (tuple(labels), p, q)
    cached = cache.get(key)
    if cached is None:
        core, supp_p, supp_q = _core_restriction(states, p, q, s.ambient_order)
        if core is None:
            cache[key] = (None, supp_p, supp_q, None)
        else:
            rep_p = solution_space(assemble(core, (0,)))
            rep_q = solution_space(assemble(core, (1,)))
            cache[key] = ((rep_p, rep_q), supp_p, supp_q, core)
        cached = cache[key]
    reports, supp_p, supp_q, _core = cached
    if reports is None:
        return None
    rep_p, rep_q = reports
    if not (rep_p.trivial and rep_q.trivial):
        return None
    if not riders:
        rule = Rule.TWO_PARTY_TRIVIAL_CORE
    elif all(ev.kind == "proportional" for ev in riders):
        rule = Rule.STRIP_IDENTICAL
    else:
        rule = Rule.NONORTHOGONAL_RIDER
    return RuleCertificate(
        bipartition=bp,
        rule=rule,
        subset=tuple(labels),
        core_pair=(p, q),
        core_supports=(supp_p, supp_q),
        core_solution_dims=(rep_p.solution_dim, rep_q.solution_dim),
        riders=tuple(riders),
        core_reports=(rep_p, rep_q),
    )


def _budget_ms(budget_ms: Optional[int]) -> int:
    if budget_ms is not None:
        return budget_ms
    env = os.environ.get("GNL_BUDGET_MS")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET_MS


def certify_bipartition(
    s: StateSet,
    bp: Bipartition,
    budget_ms: Optional[int] = None,
    cache: Optional[dict] = None,
) -> RuleCertificate | Unknown:
    """Search for a subset proving local indistinguishability across ``bp``.

    Provenance-tagged proof subsets are tried first; the fallback is an
    exhaustive walk over maximal rider-compatible cliques for every core
    pair the bipartition separates.
    """
    if bp.parties() != tuple(range(s.n_parties)):
        raise ValueError("bipartition does not match the set's parties")
    cache = {} if cache is None else cache
    deadline = time.monotonic() + _budget_ms(budget_ms) / 1000.0
    if s.provenance is not None:
        try:
            blocks = proof_blocks(s.provenance)
        except ValueError:
            blocks = []
        for block in blocks:
            a, b = block.core
            if not bp.separates(a, b):
                continue
            p, q = (a, b) if a in bp.side_x else (b, a)
            if not all(l in set(s.labels()) for l in block.labels):
                continue
            cert = _try_candidate(s, bp, block.labels, p, q, cache)
            if cert is not None:
                return cert
    if len(s.states) > GENERAL_SEARCH_MAX_STATES:
        return Unknown(UnknownReason.SET_TOO_LARGE)
    tried: set = set()
    for p in bp.side_x:
        for q in bp.side_y:
            riders = [r for r in range(s.n_parties) if r not in (p, q)]
            graph = nx.Graph()
            graph.add_nodes_from(range(len(s.states)))
            for i in range(len(s.states)):
                for j in range(i + 1, len(s.states)):
                    ok = True
                    for r in riders:
                        if (
                            s.states[i]
                            .factors[r]
                            .inner(s.states[j].factors[r])
                            .is_zero()
                        ):
                            ok = False
                            break
                    if ok:
                        graph.add_edge(i, j)
            cliques = [tuple(sorted(c)) for c in nx.find_cliques(graph)]
            cliques.sort(key=lambda c: (-len(c), c))
            for clique in cliques:
                if len(clique) < 2:
                    continue
                if time.monotonic() > deadline:
                    return Unknown(UnknownReason.BUDGET_EXHAUSTED)
                labels = tuple(s.states[i].label for i in clique)
                if (labels, p, q) in tried:
                    continue
                tried.add((labels, p, q))
                cert = _try_candidate(s, bp, labels, p, q, cache)
                if cert is not None:
                    return cert
    return Unknown(UnknownReason.SEARCH_EXHAUSTED)


def classify(s: StateSet, budget_ms: Optional[int] = None) -> Classification:
    """Full verdict: genuineness per bipartition, irreducibility, and type."""
    if s.n_parties < 2:
        raise ValueError("classification needs at least two parties")
    all_trivial, reports = check_irreducible(s)
    reduction = find_reduction(s)
    cache: dict = {}
    per: dict[str, RuleCertificate | Unknown] = {}
    for bp in all_bipartitions(s.n_parties):
        per[bp.key()] = certify_bipartition(s, bp, budget_ms=budget_ms, cache=cache)
    genuine = (
        Genuineness.PROVEN
        if all(isinstance(v, RuleCertificate) for v in per.values())
        else Genuineness.UNKNOWN
    )
    if all_trivial:
        irreducible = Irreducibility.PROVEN
    elif reduction is not None:
        irreducible = Irreducibility.REDUCIBLE
    else:
        irreducible = Irreducibility.UNKNOWN
    if genuine is Genuineness.PROVEN and irreducible is Irreducibility.PROVEN:
        gnl_type = GnlType.TYPE_II
    elif genuine is Genuineness.PROVEN and irreducible is Irreducibility.REDUCIBLE:
        gnl_type = GnlType.TYPE_I
    else:
        gnl_type = GnlType.UNKNOWN
    return Classification(
        genuine=genuine,
        per_bipartition=per,
        irreducible=irreducible,
        reduction=reduction,
        gnl_type=gnl_type,
        party_reports=reports,
    )


# -- independent re-validation ------------------------------------------------


def verify_certificate(s: StateSet, cert: RuleCertificate) -> list[str]:
    """Re-derive every claim in a certificate; returns a list of failures."""
    fails: list[str] = []
    try:
        if cert.bipartition.parties() != tuple(range(s.n_parties)):
            return ["bipartition does not cover the set's parties"]
    except ValueError as exc:
        return [f"malformed bipartition: {exc}"]
    if cert.rule_version != RULE_VERSION:
        fails.append(f"unsupported rule version {cert.rule_version!r}")
    labels = set(s.labels())
    if len(set(cert.subset)) != len(cert.subset):
        fails.append("subset contains duplicate labels")
    missing = [l for l in cert.subset if l not in labels]
    if missing:
        return fails + [f"subset labels not in the set: {missing}"]
    if len(cert.subset) < 2:
        return fails + ["subset must contain at least two states"]
    p, q = cert.core_pair
    if cert.grouped:
        return _verify_grouped(s, cert, fails)
    if not (0 <= p < s.n_parties and 0 <= q < s.n_parties and p != q):
        return fails + [f"invalid core pair {cert.core_pair}"]
    if p not in cert.bipartition.side_x or q not in cert.bipartition.side_y:
        fails.append("core parties are not on opposite sides of the bipartition")
    states = [s.state(l) for l in cert.subset]
    riders = []
    expected_parties = sorted(r for r in range(s.n_parties) if r not in (p, q))
    if sorted(ev.party for ev in cert.riders) != expected_parties:
        fails.append("rider evidence does not cover exactly the non-core parties")
    for ev in sorted(cert.riders, key=lambda e: e.party):
        fresh = _rider_evidence(states, ev.party)
        if fresh is None:
            fails.append(f"party {ev.party} is not a valid rider (orthogonal pair found)")
            continue
        riders.append(fresh)
        if fresh.kind != ev.kind:
            fails.append(f"rider {ev.party} kind mismatch: {ev.kind} vs {fresh.kind}")
        elif fresh.kind == "proportional" and tuple(fresh.scalars) != tuple(ev.scalars):
            fails.append(f"rider {ev.party} proportionality scalars do not re-derive")
        elif fresh.kind == "nonorthogonal" and tuple(fresh.overlaps) != tuple(ev.overlaps):
            fails.append(f"rider {ev.party} overlap witnesses do not re-derive")
    if riders and len(riders) == len(cert.riders):
        if all(ev.kind == "proportional" for ev in riders):
            expected_rule = Rule.STRIP_IDENTICAL
        else:
            expected_rule = Rule.NONORTHOGONAL_RIDER
    elif not cert.riders and s.n_parties == 2:
        expected_rule = Rule.TWO_PARTY_TRIVIAL_CORE
    else:
        expected_rule = None
    if expected_rule is not None and cert.rule != expected_rule:
        fails.append(f"rule {cert.rule} should be {expected_rule}")
    core, supp_p, supp_q = _core_restriction(states, p, q, s.ambient_order)
    if (supp_p, supp_q) != cert.core_supports:
        fails.append("core supports do not re-derive")
    if core is None:
        fails.append("core restriction is not mutually orthogonal")
        return fails
    rep_p = solution_space(assemble(core, (0,)))
    rep_q = solution_space(assemble(core, (1,)))
    if (rep_p.solution_dim, rep_q.solution_dim) != cert.core_solution_dims:
        fails.append(
            "stored core solution dimensions "
            f"{cert.core_solution_dims} != recomputed "
            f"{(rep_p.solution_dim, rep_q.solution_dim)}"
        )
    if not rep_p.trivial:
        fails.append(f"core party {p} admits a nontrivial measurement")
    if not rep_q.trivial:
        fails.append(f"core party {q} admits a nontrivial measurement")
    return fails


def _verify_grouped(s: StateSet, cert: RuleCertificate, fails: list[str]) -> list[str]:
    from .states import group_parties

    grouped = group_parties(
        s.subset(cert.subset), [list(cert.bipartition.side_x), list(cert.bipartition.side_y)]
    )
    rep_x = solution_space(assemble(grouped, (0,)))
    rep_y = solution_space(assemble(grouped, (1,)))
    if (rep_x.solution_dim, rep_y.solution_dim) != cert.core_solution_dims:
        fails.append("stored grouped solution dimensions do not re-derive")
    if not (rep_x.trivial and rep_y.trivial):
        fails.append("a grouped side admits a nontrivial measurement")
    if cert.rule != Rule.TWO_PARTY_TRIVIAL_CORE:
        fails.append("grouped certificates must use the two-party rule")
    return fails


def certify_bipartition_grouped(
    s: StateSet, bp: Bipartition
) -> RuleCertificate | Unknown:
    """Experimental: certify by solving on each whole grouped side.

    Stronger than the per-party rule and not required for any of the
    constructions here; exposed for exploration only.
    """
    from .states import group_parties

    grouped = group_parties(s, [list(bp.side_x), list(bp.side_y)])
    rep_x = solution_space(assemble(grouped, (0,)))
    rep_y = solution_space(assemble(grouped, (1,)))
    if rep_x.trivial and rep_y.trivial:
        return RuleCertificate(
            bipartition=bp,
            rule=Rule.TWO_PARTY_TRIVIAL_CORE,
            subset=s.labels(),
            core_pair=(min(bp.side_x), min(bp.side_y)),
            core_supports=(tuple(range(grouped.dims[0])), tuple(range(grouped.dims[1]))),
            core_solution_dims=(rep_x.solution_dim, rep_y.solution_dim),
            riders=(),
            grouped=True,
            core_reports=(rep_x, rep_y),
        )
    return Unknown(UnknownReason.SEARCH_EXHAUSTED)


def verify_reduction(s: StateSet, witness: ReductionWitness) -> list[str]:
    fails = []
    if not 0 <= witness.party < s.n_parties:
        return [f"invalid party {witness.party}"]
    t = set(witness.index_subset)
    dim = s.dims[witness.party]
    if not t or not t.issubset(range(dim)) or len(t) == dim:
        fails.append("index subset must be a nonempty proper subset of the basis")
    inside, outside = [], []
    for st in s.states:
        supp = set(st.factors[witness.party].support())
        if supp <= t:
            inside.append(st.label)
        elif supp.isdisjoint(t):
            outside.append(st.label)
        else:
            fails.append(f"state {st.label} straddles the index split")
    if not inside or not outside:
        fails.append("both sides of the split must be nonempty")
    if tuple(inside) != witness.inside or tuple(outside) != witness.outside:
        fails.append("stored split does not match the recomputed split")
    return fails


def verify_classification(s: StateSet, cls: Classification) -> list[str]:
    """Re-validate an entire classification against a state set."""
    fails: list[str] = []
    expected = {bp.key(): bp for bp in all_bipartitions(s.n_parties)}
    if set(cls.per_bipartition) != set(expected):
        return ["bipartition keys do not match the set's parties"]
    for key, entry in cls.per_bipartition.items():
        if isinstance(entry, RuleCertificate):
            if entry.bipartition.key() != key:
                fails.append(f"certificate filed under wrong bipartition {key}")
            fails.extend(
                f"[{key}] {msg}" for msg in verify_certificate(s, entry)
            )
    certified_all = all(
        isinstance(v, RuleCertificate) for v in cls.per_bipartition.values()
    )
    if (cls.genuine is Genuineness.PROVEN) != certified_all:
        fails.append("genuineness flag inconsistent with certificates")
    if cls.reduction is not None:
        fails.extend(verify_reduction(s, cls.reduction))
    all_trivial, _reports = check_irreducible(s)
    if cls.irreducible is Irreducibility.PROVEN and not all_trivial:
        fails.append("claimed irreducible but a party admits a nontrivial measurement")
    if cls.irreducible is Irreducibility.REDUCIBLE and cls.reduction is None:
        fails.append("claimed reducible without a witness")
    want_type = GnlType.UNKNOWN
    if cls.genuine is Genuineness.PROVEN and cls.irreducible is Irreducibility.PROVEN:
        want_type = GnlType.TYPE_II
    elif cls.genuine is Genuineness.PROVEN and cls.irreducible is Irreducibility.REDUCIBLE:
        want_type = GnlType.TYPE_I
    if cls.gnl_type != want_type:
        fails.append(f"type {cls.gnl_type} inconsistent, expected {want_type}")
    return fails
