"""Parameterized generators for the orthogonal product-state families.

Each generator checks its dimension constraints, emits states in the
canonical subscript order (phi_1, phi_2, ...), tags the result with a
provenance record, and re-verifies mutual orthogonality on the way out.
The three fixed instances used as regression anchors are additionally
kept as hard-coded lists and compared state for state against the
parameterized output.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Optional, Sequence

from .cyclotomic import Cyclotomic, lcm, root_of_unity
from .states import (
    LocalFactor,
    ProductState,
    Provenance,
    StateSet,
    all_plus_ket,
    basis_ket,
    build_factor,
    ket_sum,
)


class Family(str, Enum):
    PROP1_3X5 = "prop1-3x5"
    BIPARTITE = "bipartite"
    PROP2_4X4X6 = "prop2-4x4x6"
    TYPE1_TRIPARTITE = "type1-tripartite"
    TYPE1_NPARTITE = "type1-npartite"
    PROP3_3X4X5 = "prop3-3x4x5"
    TYPE2_TRIPARTITE = "type2-tripartite"
    TYPE2_NPARTITE = "type2-npartite"


@dataclass(frozen=True)
class ConstructionSpec:
    family: Family
    dims: tuple[int, ...]


class InadmissibleDimensionsError(ValueError):
    """Dimensions outside the range a construction is proved for."""


class ConstructionDriftError(RuntimeError):
    """Parameterized generator disagrees with a hard-coded anchor list."""


@dataclass(frozen=True)
class ProofBlock:
    """A subset of state labels carrying a two-party indistinguishable core."""

    name: str
    labels: tuple[str, ...]
    core: tuple[int, int]


def _labels(start: int, count: int) -> list[str]:
    return [f"phi_{start + i}" for i in range(count)]


def _lcm_all(values: Sequence[int]) -> int:
    return reduce(lcm, [v for v in values if v > 0], 1)


def lemma1_pairs(
    d1: int, d2: int, order: int, a_dim: Optional[int] = None, b_dim: Optional[int] = None
) -> list[tuple[LocalFactor, LocalFactor]]:
    """Factor pairs of the 2*d2-1 state bipartite family on C^d1 x C^d2.

    ``a_dim``/``b_dim`` embed the two sides into larger spaces on the
    spans of the lowest basis indices.  Five arms, in order: the
    |i>|0-i> row, the wrap-around |0-i>|m> row (m = i+1, closing with
    i = d1-1, m = 1), the |0-1>|j> tail, the root-of-unity arm over
    omega of order d2-d1+1, and the all-plus stopper.
    """
    if not (3 <= d1 <= d2):
        raise InadmissibleDimensionsError(
            f"bipartite family requires 3 <= d1 <= d2, got ({d1}, {d2})"
        )
    da = d1 if a_dim is None else a_dim
    db = d2 if b_dim is None else b_dim
    if da < d1 or db < d2:
        raise InadmissibleDimensionsError("embedding dimensions too small")
    pairs: list[tuple[LocalFactor, LocalFactor]] = []
    for i in range(1, d1):
        pairs.append((basis_ket(da, i, order), ket_sum(db, [(0, 1), (i, -1)], order)))
    for i in range(1, d1 - 1):
        pairs.append((ket_sum(da, [(0, 1), (i, -1)], order), basis_ket(db, i + 1, order)))
    pairs.append(
        (ket_sum(da, [(0, 1), (d1 - 1, -1)], order), basis_ket(db, 1, order))
    )
    for j in range(d1, d2):
        pairs.append((ket_sum(da, [(0, 1), (1, -1)], order), basis_ket(db, j, order)))
    k = d2 - d1 + 1
    for s in range(1, d2 - d1 + 1):
        terms = [(2, Cyclotomic.one(order))]
        for t in range(1, d2 - d1 + 1):
            terms.append((t + d1 - 1, root_of_unity(k, s * t, order)))
        pairs.append((ket_sum(da, [(0, 1), (1, 1)], order), build_factor(db, terms)))
    pairs.append(
        (all_plus_ket(da, order, upto=d1), all_plus_ket(db, order, upto=d2))
    )
    assert len(pairs) == 2 * d2 - 1
    return pairs


def gen_bipartite(d1: int, d2: int) -> StateSet:
    """The 2*d2-1 state locally indistinguishable set on C^d1 x C^d2."""
    order = _lcm_all([2, d2 - d1 + 1])
    pairs = lemma1_pairs(d1, d2, order)
    states = [
        ProductState(lab, (a, b))
        for lab, (a, b) in zip(_labels(1, len(pairs)), pairs)
    ]
    return StateSet(
        (d1, d2), order, states, Provenance(Family.BIPARTITE.value, (d1, d2))
    )


def _check_type1_dims(dims: Sequence[int], n_min: int) -> None:
    n = len(dims)
    if n < n_min:
        raise InadmissibleDimensionsError(f"needs at least {n_min} parties, got {n}")
    d1 = dims[0]
    rest = list(dims[1:])
    if not (3 <= d1 - 1 <= rest[0]) or any(
        rest[i] > rest[i + 1] for i in range(len(rest) - 1)
    ):
        raise InadmissibleDimensionsError(
            f"type-I family requires 3 <= d1-1 <= d2 <= ... <= dn, got {tuple(dims)}"
        )


def gen_type1_tripartite(d1: int, d2: int, d3: int) -> StateSet:
    """The 2(d2+d3)-2 state genuinely nonlocal type-I set on C^d1 x C^d2 x C^d3.

    Subset A embeds the (d1-1, d2) bipartite family on parties (A, B),
    with the A side confined to span{|0>, ..., |d1-2>} and the C factor
    pinned to |0>.  Subset B pins the A factor to |d1-1> and carries the
    (d2, d3) bipartite family on (B, C).
    """
    _check_type1_dims((d1, d2, d3), 3)
    order = _lcm_all([2, d2 - d1 + 2, d3 - d2 + 1])
    states = []
    a_pairs = lemma1_pairs(d1 - 1, d2, order, a_dim=d1)
    for lab, (a, b) in zip(_labels(1, len(a_pairs)), a_pairs):
        assert max(a.support()) <= d1 - 2
        states.append(ProductState(lab, (a, b, basis_ket(d3, 0, order))))
    b_pairs = lemma1_pairs(d2, d3, order)
    for lab, (b, c) in zip(_labels(2 * d2, len(b_pairs)), b_pairs):
        states.append(ProductState(lab, (basis_ket(d1, d1 - 1, order), b, c)))
    assert len(states) == 2 * (d2 + d3) - 2
    return StateSet(
        (d1, d2, d3),
        order,
        states,
        Provenance(Family.TYPE1_TRIPARTITE.value, (d1, d2, d3)),
    )


def _rider_layout(n: int, block: int, order: int, dims: Sequence[int], a1_last: int):
    """Marker kets on the non-active parties of block G_k (1-based k >= 2).

    Block k is active on parties (A2, A_{k+1}); party A1 carries |1> for
    k = 2 and the block-(n-1) marker ``a1_last`` at the end; for k >= 3
    party A_k carries |1>.  All remaining parties sit on |0>.
    """
    riders: dict[int, LocalFactor] = {}
    for p in range(n):
        if p in (1, block):
            continue
        riders[p] = basis_ket(dims[p], 0, order)
    if block == n - 1:
        riders[0] = basis_ket(dims[0], a1_last, order)
        if n - 2 >= 2:
            riders[n - 2] = basis_ket(dims[n - 2], 1, order)
    elif block == 2:
        riders[0] = basis_ket(dims[0], 1, order)
    else:
        riders[block - 1] = basis_ket(dims[block - 1], 1, order)
    return riders


def _npartite_blocks(
    dims: Sequence[int], order: int, g1_pairs, a1_last: int, start: int = 1
) -> list[ProductState]:
    """Assemble blocks G_1 ... G_{n-1} given the G_1 factor pairs."""
    n = len(dims)
    states: list[ProductState] = []
    nxt = start
    for lab, (a, b) in zip(_labels(nxt, len(g1_pairs)), g1_pairs):
        factors = [a, b]
        for p in range(2, n):
            if p == n - 1:
                factors.append(basis_ket(dims[p], 1, order))
            else:
                factors.append(basis_ket(dims[p], 0, order))
        states.append(ProductState(lab, tuple(factors)))
    nxt += len(g1_pairs)
    for block in range(2, n):
        active = block  # 0-based index of party A_{block+1}
        pairs = lemma1_pairs(dims[1], dims[active], order)
        riders = _rider_layout(n, block, order, dims, a1_last)
        for lab, (x, z) in zip(_labels(nxt, len(pairs)), pairs):
            factors = []
            for p in range(n):
                if p == 1:
                    factors.append(x)
                elif p == active:
                    factors.append(z)
                else:
                    factors.append(riders[p])
            states.append(ProductState(lab, tuple(factors)))
        nxt += len(pairs)
    return states


def gen_type1_npartite(dims: Sequence[int]) -> StateSet:
    """Type-I genuinely nonlocal blocks G_1 ... G_{n-1} for n >= 3 parties.

    G_1 embeds the (d1-1, d2) bipartite family on (A1, A2) inside
    span{|0>, ..., |d1-2>} of A1; the last block marks A1 with |d1-1>,
    which is what the projective reduction splits on.
    """
    dims = tuple(int(d) for d in dims)
    _check_type1_dims(dims, 3)
    n = len(dims)
    order = _lcm_all(
        [2, dims[1] - dims[0] + 2] + [dims[k] - dims[1] + 1 for k in range(2, n)]
    )
    g1 = lemma1_pairs(dims[0] - 1, dims[1], order, a_dim=dims[0])
    states = _npartite_blocks(dims, order, g1, a1_last=dims[0] - 1)
    assert len(states) == sum(2 * d - 1 for d in dims[1:])
    return StateSet(
        dims, order, states, Provenance(Family.TYPE1_NPARTITE.value, dims)
    )


def gen_type2_tripartite(d1: int, d2: int, d3: int) -> StateSet:
    """The 2*d2+2*d3-4 state genuinely nonlocal type-II set (3 <= d1 <= d2 <= d3).

    The first block carries the (d1, d2) bipartite family on (A, B) with
    the C factor pinned to |1>, except the stopper, which is all-plus on
    every party.  The second block pins B to |0+1> and runs the C-side
    arms; its wrap-around row is supplied by the first block's state
    phi_{2*d1-2}, so it is omitted here.
    """
    if not (3 <= d1 <= d2 <= d3):
        raise InadmissibleDimensionsError(
            f"type-II tripartite family requires 3 <= d1 <= d2 <= d3, got ({d1}, {d2}, {d3})"
        )
    order = _lcm_all([2, d2 - d1 + 1, d3 - d1 + 1])
    one_c = basis_ket(d3, 1, order)
    states = []
    for i in range(1, d1):
        states.append(
            ProductState(
                f"phi_{i}",
                (basis_ket(d1, i, order), ket_sum(d2, [(0, 1), (i, -1)], order), one_c),
            )
        )
    for i in range(1, d1 - 1):
        states.append(
            ProductState(
                f"phi_{i + d1 - 1}",
                (
                    ket_sum(d1, [(0, 1), (i, -1)], order),
                    basis_ket(d2, i + 1, order),
                    one_c,
                ),
            )
        )
    states.append(
        ProductState(
            f"phi_{2 * d1 - 2}",
            (
                ket_sum(d1, [(0, 1), (d1 - 1, -1)], order),
                basis_ket(d2, 1, order),
                one_c,
            ),
        )
    )
    for m in range(d1, d2):
        states.append(
            ProductState(
                f"phi_{m + d1 - 1}",
                (ket_sum(d1, [(0, 1), (1, -1)], order), basis_ket(d2, m, order), one_c),
            )
        )
    k1 = d2 - d1 + 1
    for s1 in range(1, d2 - d1 + 1):
        terms = [(2, Cyclotomic.one(order))]
        for t1 in range(1, d2 - d1 + 1):
            terms.append((t1 + d1 - 1, root_of_unity(k1, s1 * t1, order)))
        states.append(
            ProductState(
                f"phi_{s1 + d1 + d2 - 2}",
                (ket_sum(d1, [(0, 1), (1, 1)], order), build_factor(d2, terms), one_c),
            )
        )
    states.append(
        ProductState(
            f"phi_{2 * d2 - 1}",
            (
                all_plus_ket(d1, order),
                all_plus_ket(d2, order),
                all_plus_ket(d3, order),
            ),
        )
    )
    plus_b = ket_sum(d2, [(0, 1), (1, 1)], order)
    for i in range(1, d1):
        states.append(
            ProductState(
                f"phi_{i + 2 * d2 - 1}",
                (basis_ket(d1, i, order), plus_b, ket_sum(d3, [(0, 1), (i, -1)], order)),
            )
        )
    for i in range(1, d1 - 1):
        states.append(
            ProductState(
                f"phi_{i + d1 + 2 * d2 - 2}",
                (
                    ket_sum(d1, [(0, 1), (i, -1)], order),
                    plus_b,
                    basis_ket(d3, i + 1, order),
                ),
            )
        )
    for nn in range(d1, d3):
        states.append(
            ProductState(
                f"phi_{nn + d1 + 2 * d2 - 3}",
                (ket_sum(d1, [(0, 1), (1, -1)], order), plus_b, basis_ket(d3, nn, order)),
            )
        )
    k2 = d3 - d1 + 1
    for s2 in range(1, d3 - d1 + 1):
        terms = [(2, Cyclotomic.one(order))]
        for t2 in range(1, d3 - d1 + 1):
            terms.append((t2 + d1 - 1, root_of_unity(k2, s2 * t2, order)))
        states.append(
            ProductState(
                f"phi_{s2 + d1 + 2 * d2 + d3 - 4}",
                (ket_sum(d1, [(0, 1), (1, 1)], order), plus_b, build_factor(d3, terms)),
            )
        )
    assert len(states) == 2 * d2 + 2 * d3 - 4
    assert [s.label for s in states] == _labels(1, len(states))
    return StateSet(
        (d1, d2, d3),
        order,
        states,
        Provenance(Family.TYPE2_TRIPARTITE.value, (d1, d2, d3)),
    )


def gen_type2_npartite(dims: Sequence[int]) -> StateSet:
    """Type-II genuinely nonlocal blocks G_1 ... G_{n-1} for n >= 4 parties.

    Unlike the type-I n-partite family, G_1 uses the full (d1, d2)
    bipartite family and the last block marks A1 with |0>, leaving no
    basis split on any party.
    """
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    if n < 4:
        raise InadmissibleDimensionsError(f"needs at least 4 parties, got {n}")
    if dims[0] < 3 or any(dims[i] > dims[i + 1] for i in range(n - 1)):
        raise InadmissibleDimensionsError(
            f"type-II n-partite family requires 3 <= d1 <= ... <= dn, got {dims}"
        )
    order = _lcm_all(
        [2, dims[1] - dims[0] + 1] + [dims[k] - dims[1] + 1 for k in range(2, n)]
    )
    g1 = lemma1_pairs(dims[0], dims[1], order)
    states = _npartite_blocks(dims, order, g1, a1_last=0)
    assert len(states) == sum(2 * d - 1 for d in dims[1:])
    return StateSet(
        dims, order, states, Provenance(Family.TYPE2_NPARTITE.value, dims)
    )


# -- fixed anchor instances --------------------------------------------------


def _anchor_prop1(order: int) -> list[tuple]:
    w = lambda e: root_of_unity(3, e, order)  # noqa: E731
    one = Cyclotomic.one(order)
    return [
        ([(1, 1)], [(0, 1), (1, -1)]),
        ([(2, 1)], [(0, 1), (2, -1)]),
        ([(0, 1), (1, -1)], [(2, 1)]),
        ([(0, 1), (2, -1)], [(1, 1)]),
        ([(0, 1), (1, -1)], [(3, 1)]),
        ([(0, 1), (1, -1)], [(4, 1)]),
        ([(0, 1), (1, 1)], [(2, one), (3, w(1)), (4, w(2))]),
        ([(0, 1), (1, 1)], [(2, one), (3, w(2)), (4, w(1))]),
        ([(0, 1), (1, 1), (2, 1)], [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]),
    ]


def _hardcoded_prop1() -> StateSet:
    order = 6
    states = []
    for lab, (ta, tb) in zip(_labels(1, 9), _anchor_prop1(order)):
        fa = _terms_factor(3, ta, order)
        fb = _terms_factor(5, tb, order)
        states.append(ProductState(lab, (fa, fb)))
    return StateSet((3, 5), order, states, Provenance(Family.PROP1_3X5.value, (3, 5)))


def _terms_factor(dim: int, terms, order: int) -> LocalFactor:
    conv = []
    for idx, coeff in terms:
        if isinstance(coeff, Cyclotomic):
            conv.append((idx, coeff))
        else:
            conv.append((idx, Cyclotomic.rational(coeff, order)))
    return build_factor(dim, conv)


def _hardcoded_prop2() -> StateSet:
    order = 6
    w = lambda e: root_of_unity(3, e, order)  # noqa: E731
    rows = [
        # (A terms, B terms, C terms)
        ([(1, 1)], [(0, 1), (1, -1)], [(0, 1)]),
        ([(2, 1)], [(0, 1), (2, -1)], [(0, 1)]),
        ([(0, 1), (1, -1)], [(2, 1)], [(0, 1)]),
        ([(0, 1), (2, -1)], [(1, 1)], [(0, 1)]),
        ([(0, 1), (1, -1)], [(3, 1)], [(0, 1)]),
        ([(0, 1), (1, 1)], [(2, 1), (3, -1)], [(0, 1)]),
        ([(0, 1), (1, 1), (2, 1)], [(0, 1), (1, 1), (2, 1), (3, 1)], [(0, 1)]),
        ([(3, 1)], [(1, 1)], [(0, 1), (1, -1)]),
        ([(3, 1)], [(2, 1)], [(0, 1), (2, -1)]),
        ([(3, 1)], [(3, 1)], [(0, 1), (3, -1)]),
        ([(3, 1)], [(0, 1), (1, -1)], [(2, 1)]),
        ([(3, 1)], [(0, 1), (2, -1)], [(3, 1)]),
        ([(3, 1)], [(0, 1), (3, -1)], [(1, 1)]),
        ([(3, 1)], [(0, 1), (1, -1)], [(4, 1)]),
        ([(3, 1)], [(0, 1), (1, -1)], [(5, 1)]),
        ([(3, 1)], [(0, 1), (1, 1)], [(2, 1), (4, w(1)), (5, w(2))]),
        ([(3, 1)], [(0, 1), (1, 1)], [(2, 1), (4, w(2)), (5, w(1))]),
        (
            [(3, 1)],
            [(0, 1), (1, 1), (2, 1), (3, 1)],
            [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)],
        ),
    ]
    states = []
    for lab, (ta, tb, tc) in zip(_labels(1, 18), rows):
        states.append(
            ProductState(
                lab,
                (
                    _terms_factor(4, ta, order),
                    _terms_factor(4, tb, order),
                    _terms_factor(6, tc, order),
                ),
            )
        )
    return StateSet(
        (4, 4, 6), order, states, Provenance(Family.PROP2_4X4X6.value, (4, 4, 6))
    )


def _hardcoded_prop3() -> StateSet:
    order = 6
    w = lambda e: root_of_unity(3, e, order)  # noqa: E731
    rows = [
        ([(1, 1)], [(0, 1), (1, -1)], [(1, 1)]),
        ([(2, 1)], [(0, 1), (2, -1)], [(1, 1)]),
        ([(0, 1), (1, -1)], [(2, 1)], [(1, 1)]),
        ([(0, 1), (2, -1)], [(1, 1)], [(1, 1)]),
        ([(0, 1), (1, -1)], [(3, 1)], [(1, 1)]),
        ([(0, 1), (1, 1)], [(2, 1), (3, -1)], [(1, 1)]),
        (
            [(0, 1), (1, 1), (2, 1)],
            [(0, 1), (1, 1), (2, 1), (3, 1)],
            [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)],
        ),
        ([(1, 1)], [(0, 1), (1, 1)], [(0, 1), (1, -1)]),
        ([(2, 1)], [(0, 1), (1, 1)], [(0, 1), (2, -1)]),
        ([(0, 1), (1, -1)], [(0, 1), (1, 1)], [(2, 1)]),
        ([(0, 1), (1, -1)], [(0, 1), (1, 1)], [(3, 1)]),
        ([(0, 1), (1, -1)], [(0, 1), (1, 1)], [(4, 1)]),
        ([(0, 1), (1, 1)], [(0, 1), (1, 1)], [(2, 1), (3, w(1)), (4, w(2))]),
        ([(0, 1), (1, 1)], [(0, 1), (1, 1)], [(2, 1), (3, w(2)), (4, w(1))]),
    ]
    states = []
    for lab, (ta, tb, tc) in zip(_labels(1, 14), rows):
        states.append(
            ProductState(
                lab,
                (
                    _terms_factor(3, ta, order),
                    _terms_factor(4, tb, order),
                    _terms_factor(5, tc, order),
                ),
            )
        )
    return StateSet(
        (3, 4, 5), order, states, Provenance(Family.PROP3_3X4X5.value, (3, 4, 5))
    )


_ANCHORS = {
    Family.PROP1_3X5: ((3, 5), _hardcoded_prop1, lambda: gen_bipartite(3, 5)),
    Family.PROP2_4X4X6: (
        (4, 4, 6),
        _hardcoded_prop2,
        lambda: gen_type1_tripartite(4, 4, 6),
    ),
    Family.PROP3_3X4X5: (
        (3, 4, 5),
        _hardcoded_prop3,
        lambda: gen_type2_tripartite(3, 4, 5),
    ),
}


def gen_named(spec: ConstructionSpec) -> StateSet:
    """Dispatch on the family; anchor families assert list equality."""
    family = Family(spec.family)
    dims = tuple(spec.dims)
    if family in _ANCHORS:
        want_dims, hard, param = _ANCHORS[family]
        if dims != want_dims:
            raise InadmissibleDimensionsError(
                f"{family.value} is fixed at dims {want_dims}, got {dims}"
            )
        fixed = hard()
        generated = param()
        for a, b in zip(fixed.states, generated.states):
            if a.label != b.label or a.factors != b.factors:
                raise ConstructionDriftError(
                    f"{family.value}: generated state {b.label} differs from the anchor list"
                )
        return StateSet(fixed.dims, fixed.ambient_order, fixed.states, Provenance(family.value, dims))
    if family is Family.BIPARTITE:
        _need_dims(dims, 2)
        return gen_bipartite(*dims)
    if family is Family.TYPE1_TRIPARTITE:
        _need_dims(dims, 3)
        return gen_type1_tripartite(*dims)
    if family is Family.TYPE1_NPARTITE:
        return gen_type1_npartite(dims)
    if family is Family.TYPE2_TRIPARTITE:
        _need_dims(dims, 3)
        return gen_type2_tripartite(*dims)
    if family is Family.TYPE2_NPARTITE:
        return gen_type2_npartite(dims)
    raise InadmissibleDimensionsError(f"unknown family {spec.family!r}")


def _need_dims(dims: Sequence[int], n: int) -> None:
    if len(dims) != n:
        raise InadmissibleDimensionsError(
            f"family expects {n} dimensions, got {len(dims)}"
        )


def proof_blocks(provenance: Provenance) -> list[ProofBlock]:
    """The proof subsets (with their two-party cores) for a generated set.

    These are the candidates the certificate search tries first; they
    are recomputed from the provenance tag alone so that a set loaded
    from disk gets the same candidates as a freshly generated one.
    """
    family = Family(provenance.family)
    dims = provenance.dims
    if family in (Family.PROP1_3X5, Family.BIPARTITE):
        d2 = dims[1]
        return [ProofBlock("S", tuple(_labels(1, 2 * d2 - 1)), (0, 1))]
    if family in (Family.PROP2_4X4X6, Family.TYPE1_TRIPARTITE):
        d2, d3 = dims[1], dims[2]
        return [
            ProofBlock("A", tuple(_labels(1, 2 * d2 - 1)), (0, 1)),
            ProofBlock("B", tuple(_labels(2 * d2, 2 * d3 - 1)), (1, 2)),
        ]
    if family in (Family.PROP3_3X4X5, Family.TYPE2_TRIPARTITE):
        d1, d2, d3 = dims
        first = _labels(1, 2 * d2 - 1)
        second = [f"phi_{2 * d1 - 2}"] + _labels(2 * d2 - 1, 2 * d3 - 2)
        return [
            ProofBlock("AB", tuple(first), (0, 1)),
            ProofBlock("AC", tuple(second), (0, 2)),
        ]
    if family in (Family.TYPE1_NPARTITE, Family.TYPE2_NPARTITE):
        blocks = []
        start = 1
        count = 2 * dims[1] - 1
        blocks.append(ProofBlock("G1", tuple(_labels(start, count)), (0, 1)))
        start += count
        for k in range(2, len(dims)):
            count = 2 * dims[k] - 1
            blocks.append(
                ProofBlock(f"G{k}", tuple(_labels(start, count)), (1, k))
            )
            start += count
        return blocks
    return []
