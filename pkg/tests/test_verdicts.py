import pytest

from conftest import product_basis
from gnlset.constructions import (
    gen_bipartite,
    gen_type1_npartite,
    gen_type1_tripartite,
    gen_type2_npartite,
    gen_type2_tripartite,
    proof_blocks,
)
from gnlset.states import ProductState, StateSet, basis_ket, ket_sum
from gnlset.verdicts import (
    Bipartition,
    Genuineness,
    GnlType,
    Irreducibility,
    Rule,
    RuleCertificate,
    Unknown,
    UnknownReason,
    all_bipartitions,
    certify_bipartition,
    certify_bipartition_grouped,
    check_irreducible,
    classify,
    find_reduction,
    verify_certificate,
    verify_classification,
    verify_reduction,
)


def test_all_bipartitions_counts():
    assert len(all_bipartitions(2)) == 1
    assert len(all_bipartitions(3)) == 3
    assert len(all_bipartitions(4)) == 7
    for bp in all_bipartitions(4):
        assert 0 in bp.side_x
        assert set(bp.side_x) | set(bp.side_y) == {0, 1, 2, 3}


def test_bipartition_validation():
    with pytest.raises(ValueError):
        Bipartition((1,), (2,))  # party 0 missing from side_x
    with pytest.raises(ValueError):
        Bipartition((0, 1), (1, 2))
    bp = Bipartition.of([2, 1], [0])
    assert bp.side_x == (0,) and bp.side_y == (1, 2)
    assert bp.separates(0, 1) and not bp.separates(1, 2)


def test_check_irreducible_on_anchor_sets():
    ok, reports = check_irreducible(gen_type2_tripartite(3, 4, 5))
    assert ok and all(r.trivial for r in reports.values())
    ok, reports = check_irreducible(gen_type1_tripartite(4, 4, 6))
    assert not ok
    assert not reports[0].trivial and reports[0].witness is not None
    assert reports[1].trivial and reports[2].trivial
    ok, _ = check_irreducible(gen_bipartite(3, 5))
    assert ok


def test_find_reduction_on_type1():
    s = gen_type1_tripartite(4, 4, 6)
    w = find_reduction(s)
    assert w is not None
    assert w.party == 0
    assert w.index_subset == (3,)
    assert len(w.inside) == 11 and len(w.outside) == 7
    assert verify_reduction(s, w) == []


def test_find_reduction_absent_for_type2():
    assert find_reduction(gen_type2_tripartite(3, 4, 5)) is None
    assert find_reduction(gen_type2_npartite((3, 3, 3, 3))) is None


def test_find_reduction_npartite_type1():
    s = gen_type1_npartite((4, 3, 3))
    w = find_reduction(s)
    assert w is not None and w.party == 0 and w.index_subset == (3,)
    s4 = gen_type1_npartite((4, 3, 3, 3))
    w4 = find_reduction(s4)
    assert w4 is not None and w4.party == 0 and w4.index_subset == (3,)
    blocks = proof_blocks(s4.provenance)
    assert set(w4.inside) == set(blocks[-1].labels)


def test_certify_eq3_bipartitions():
    s = gen_type1_tripartite(4, 4, 6)
    b_ac = Bipartition.of([0, 2], [1])
    cert = certify_bipartition(s, b_ac)
    assert isinstance(cert, RuleCertificate)
    assert cert.subset == tuple(f"phi_{i}" for i in range(1, 8))
    assert cert.rule is Rule.STRIP_IDENTICAL
    assert cert.core_pair == (0, 1)
    assert cert.riders[0].party == 2 and cert.riders[0].kind == "proportional"
    c_ab = Bipartition.of([0, 1], [2])
    cert2 = certify_bipartition(s, c_ab)
    assert isinstance(cert2, RuleCertificate)
    assert cert2.subset == tuple(f"phi_{i}" for i in range(8, 19))
    assert cert2.core_pair == (1, 2)
    assert verify_certificate(s, cert) == []
    assert verify_certificate(s, cert2) == []


def test_certify_eq7_rider_rule():
    s = gen_type2_tripartite(3, 4, 5)
    cert = certify_bipartition(s, Bipartition.of([0, 1], [2]))
    assert isinstance(cert, RuleCertificate)
    assert cert.rule is Rule.NONORTHOGONAL_RIDER
    assert cert.subset == ("phi_4",) + tuple(f"phi_{i}" for i in range(7, 15))
    assert cert.core_pair == (0, 2)
    rider = cert.riders[0]
    assert rider.party == 1 and rider.kind == "nonorthogonal"
    assert verify_certificate(s, cert) == []


def test_certify_two_party_and_unknown():
    s = gen_bipartite(3, 4)
    cert = certify_bipartition(s, Bipartition.of([0], [1]))
    assert isinstance(cert, RuleCertificate)
    assert cert.rule is Rule.TWO_PARTY_TRIVIAL_CORE
    assert not cert.riders
    pb = product_basis(2, 2)
    out = certify_bipartition(pb, Bipartition.of([0], [1]))
    assert isinstance(out, Unknown)
    assert out.reason is UnknownReason.SEARCH_EXHAUSTED


def test_certify_works_without_provenance():
    s = gen_bipartite(3, 4)
    bare = StateSet(s.dims, s.ambient_order, s.states, None)
    cert = certify_bipartition(bare, Bipartition.of([0], [1]))
    assert isinstance(cert, RuleCertificate)
    assert cert.rule is Rule.TWO_PARTY_TRIVIAL_CORE


def test_classify_anchor_sets():
    cls = classify(gen_type2_tripartite(3, 4, 5))
    assert cls.gnl_type is GnlType.TYPE_II
    assert cls.genuine is Genuineness.PROVEN
    assert cls.irreducible is Irreducibility.PROVEN
    assert cls.reduction is None

    cls = classify(gen_type1_tripartite(4, 4, 6))
    assert cls.gnl_type is GnlType.TYPE_I
    assert cls.irreducible is Irreducibility.REDUCIBLE
    assert cls.reduction is not None

    cls = classify(gen_type2_npartite((3, 3, 3, 3)))
    assert cls.gnl_type is GnlType.TYPE_II
    assert len(cls.per_bipartition) == 7
    assert all(isinstance(v, RuleCertificate) for v in cls.per_bipartition.values())


def test_classify_negative_controls():
    for d in (2, 3):
        cls = classify(product_basis(d, d))
        assert cls.gnl_type is GnlType.UNKNOWN
        assert cls.genuine is Genuineness.UNKNOWN
        assert all(isinstance(v, Unknown) for v in cls.per_bipartition.values())
        assert verify_classification(product_basis(d, d), cls) == []


def test_classification_validates_and_mutations_fail():
    s = gen_type1_tripartite(4, 4, 6)
    cls = classify(s)
    assert verify_classification(s, cls) == []
    cert = next(iter(v for v in cls.per_bipartition.values()))
    # subset label mutation
    import copy

    broken = copy.deepcopy(cert)
    broken.subset = broken.subset[:-1] + ("phi_99",)
    assert verify_certificate(s, broken)
    broken = copy.deepcopy(cert)
    broken.core_solution_dims = (1, 2)
    assert verify_certificate(s, broken)
    broken = copy.deepcopy(cert)
    broken.rule = (
        Rule.NONORTHOGONAL_RIDER
        if cert.rule is not Rule.NONORTHOGONAL_RIDER
        else Rule.STRIP_IDENTICAL
    )
    assert verify_certificate(s, broken)
    broken = copy.deepcopy(cert)
    broken.core_pair = (cert.core_pair[1], cert.core_pair[0])
    assert verify_certificate(s, broken)


def test_superset_monotonicity():
    s = gen_type2_tripartite(3, 4, 5)
    cert = certify_bipartition(s, Bipartition.of([0], [1, 2]))
    assert isinstance(cert, RuleCertificate)
    extra = ProductState(
        "extra",
        (
            ket_sum(3, [(0, 1), (1, -1)], 6),
            ket_sum(4, [(0, 1), (1, -1)], 6),
            basis_ket(5, 0, 6),
        ),
    )
    superset = StateSet(s.dims, s.ambient_order, s.states + (extra,))
    assert verify_certificate(superset, cert) == []


def test_type_exclusivity():
    for s in [
        gen_bipartite(3, 5),
        gen_type1_tripartite(4, 4, 6),
        gen_type2_tripartite(3, 4, 5),
        gen_type1_npartite((4, 3, 3, 3)),
        gen_type2_npartite((3, 3, 3, 3)),
    ]:
        all_trivial, _ = check_irreducible(s)
        witness = find_reduction(s)
        assert not (all_trivial and witness is not None)


def test_permutation_equivariance():
    s = gen_type2_tripartite(3, 4, 5)
    perm = [2, 0, 1]  # new position of each old party
    permuted_states = [
        ProductState(
            st.label,
            tuple(st.factors[perm.index(p)] for p in range(3)),
        )
        for st in s.states
    ]
    permuted = StateSet(
        tuple(s.dims[perm.index(p)] for p in range(3)),
        s.ambient_order,
        permuted_states,
    )
    cls_orig = classify(s)
    cls_perm = classify(permuted)
    assert cls_orig.gnl_type == cls_perm.gnl_type
    # a bipartition maps to its permuted image with the same verdict kind
    for bp in all_bipartitions(3):
        mapped = Bipartition.of(
            [perm[p] for p in bp.side_x], [perm[p] for p in bp.side_y]
        )
        a = cls_orig.per_bipartition[bp.key()]
        b = cls_perm.per_bipartition[mapped.key()]
        assert isinstance(a, RuleCertificate) == isinstance(b, RuleCertificate)


def test_grouped_rule_fails_on_type1_reducible_side():
    # the grouped-side check is strictly stronger; the reducible set
    # fails it on the side containing the marked party
    s = gen_type1_tripartite(4, 4, 4)
    out = certify_bipartition_grouped(s, Bipartition.of([0, 2], [1]))
    assert isinstance(out, Unknown)


def test_grouped_rule_validates_when_it_succeeds():
    s = gen_bipartite(3, 4)
    cert = certify_bipartition_grouped(s, Bipartition.of([0], [1]))
    assert isinstance(cert, RuleCertificate)
    assert cert.grouped
    assert verify_certificate(s, cert) == []


def test_classify_requires_two_parties():
    from gnlset.states import group_parties

    s = group_parties(gen_bipartite(3, 3), [[0, 1]])
    with pytest.raises(ValueError):
        classify(s)
