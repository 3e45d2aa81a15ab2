"""Orthogonality-preservation constraint systems and their exact solution.

For a party group P with joint dimension D, a measurement element E is
orthogonality preserving iff <psi_i| E (x) I |psi_j> = 0 for every ordered
pair of distinct states.  Each pair contributes one linear row over the
D^2 entries of E; the solution space is computed exactly over Q(zeta_N)
with fraction-free (Bareiss) elimination, so triviality of a measurement
is decided by an integer-only rank computation, with a floating SVD
backend available as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cyclotomic import (
    Cyclotomic,
    field_degree,
    lcm,
    root_of_unity,
    _red_inv,
    _red_mul,
    _red_to_complex,
)
from .states import StateSet, check_mutual_orthogonality


@dataclass(frozen=True)
class HermitianOperator:
    dim: int
    entries: tuple[tuple[Cyclotomic, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.dim or any(
            len(r) != self.dim for r in self.entries
        ):
            raise ValueError("entry matrix does not match dimension")
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.entries[i][j] != self.entries[j][i].conj():
                    raise ValueError("matrix is not Hermitian")

    @property
    def order(self) -> int:
        return self.entries[0][0].order


@dataclass
class ConstraintRow:
    pair: tuple[str, str]
    coeffs: dict[int, Cyclotomic]


@dataclass
class ConstraintSystem:
    party_group: tuple[int, ...]
    unknown_dim: int
    order: int
    rows: list[ConstraintRow]

    def row(self, label_i: str, label_j: str) -> ConstraintRow:
        for r in self.rows:
            if r.pair == (label_i, label_j):
                return r
        raise KeyError((label_i, label_j))

    def nonzero_rows(self) -> list[ConstraintRow]:
        return [r for r in self.rows if r.coeffs]


@dataclass
class OplmReport:
    party_group: tuple[int, ...]
    unknown_dim: int
    order: int
    solution_dim: int
    basis: tuple[tuple[tuple[Cyclotomic, ...], ...], ...]
    witness: Optional[HermitianOperator]
    trace: Optional[tuple[tuple[tuple[str, str], tuple[int, int]], ...]] = None

    @property
    def trivial(self) -> bool:
        return self.solution_dim == 1


def assemble(state_set: StateSet, party_group: Sequence[int]) -> ConstraintSystem:
    """Rows <psi_i| E (x) I |psi_j> = 0 for all ordered pairs i != j.

    The coefficient of unknown E[r][c] in row (i, j) is
    conj(x_i[r]) * x_j[c] * prod_{k not in group} <f_ik | f_jk>,
    where x is the grouped (Kronecker) factor on the party group.
    """
    group = tuple(party_group)
    if not group or len(set(group)) != len(group):
        raise ValueError("party group must be nonempty without repeats")
    if any(not 0 <= p < state_set.n_parties for p in group):
        raise ValueError(f"party index out of range in {group}")
    if not check_mutual_orthogonality(state_set).ok:
        raise ValueError("constraint assembly requires a mutually orthogonal set")
    order = state_set.ambient_order
    dim = 1
    for p in group:
        dim *= state_set.dims[p]
    others = [p for p in range(state_set.n_parties) if p not in group]
    grouped = []
    for st in state_set.states:
        f = st.factors[group[0]]
        for p in group[1:]:
            f = f.kron(st.factors[p])
        grouped.append(f)
    rows: list[ConstraintRow] = []
    m = len(state_set.states)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            scalar = Cyclotomic.one(order)
            for p in others:
                scalar = scalar * state_set.states[i].factors[p].inner(
                    state_set.states[j].factors[p]
                )
                if scalar.is_zero():
                    break
            pair = (state_set.states[i].label, state_set.states[j].label)
            coeffs: dict[int, Cyclotomic] = {}
            if not scalar.is_zero():
                xi, xj = grouped[i], grouped[j]
                for r in xi.support():
                    left = xi.amplitudes[r].conj() * scalar
                    for c in xj.support():
                        coeffs[r * dim + c] = left * xj.amplitudes[c]
            rows.append(ConstraintRow(pair, coeffs))
    return ConstraintSystem(group, dim, order, rows)


# -- exact elimination over the ring of cyclotomic integers -----------------


def _one_vec(deg: int):
    return (1,) + (0,) * (deg - 1)


def _clear_denominators(coeffs: dict[int, Cyclotomic], order: int) -> dict[int, tuple]:
    deg = field_degree(order)
    den = 1
    for v in coeffs.values():
        for f in v._red:
            den = lcm(den, f.denominator)
    out = {}
    for col, v in coeffs.items():
        vec = tuple(int(f * den) for f in v._red)
        if any(vec):
            out[col] = vec
    return out


def _inv_context(vec, order: int) -> tuple[tuple, int]:
    """(tilde, den) with vec^{-1} = tilde / den, tilde integral."""
    inv = _red_inv(tuple(Fraction(c) for c in vec), order)
    den = 1
    for f in inv:
        den = lcm(den, f.denominator)
    tilde = tuple(int(f * den) for f in inv)
    return tilde, den


def _bareiss(
    int_rows: list[tuple[int, dict[int, tuple]]], ncols: int, order: int
) -> tuple[list[tuple[int, int, dict[int, tuple]]], list[int]]:
    """Fraction-free row echelon; returns pivot rows and free columns.

    Pivots walk the columns in order; among candidate rows the one with
    the fewest nonzero coefficients wins (ties by input position).  Each
    update divides by the previous pivot, which is exact by Sylvester's
    identity, so entries stay cyclotomic integers throughout.
    """
    deg = field_degree(order)
    one = _one_vec(deg)
    active = [(idx, dict(r)) for idx, r in int_rows if r]
    pivots: list[tuple[int, int, dict[int, tuple]]] = []
    free_cols: list[int] = []
    prev_is_one = True
    prev_tilde: tuple = one
    prev_den = 1
    for col in range(ncols):
        best = None
        for t in active:
            if col in t[1]:
                key = (len(t[1]), t[0])
                if best is None or key < best[0]:
                    best = (key, t)
        if best is None:
            free_cols.append(col)
            continue
        piv_idx, piv_row = best[1]
        p = piv_row[col]
        new_active = []
        for idx, r in active:
            if r is piv_row:
                continue
            a = r.pop(col, None)
            new_r: dict[int, tuple] = {}
            if a is None:
                touched = r.keys()
            else:
                touched = set(r) | set(piv_row)
                touched.discard(col)
            for c in touched:
                x = r.get(c)
                b = piv_row.get(c) if a is not None else None
                if x is None:
                    val = tuple(-t for t in _red_mul(a, b, order))
                elif b is None:
                    val = _red_mul(p, x, order)
                else:
                    px = _red_mul(p, x, order)
                    ab = _red_mul(a, b, order)
                    val = tuple(s - t for s, t in zip(px, ab))
                if not prev_is_one:
                    num = _red_mul(val, prev_tilde, order)
                    q, bad = [], False
                    for t in num:
                        dd, rr = divmod(t, prev_den)
                        if rr:
                            bad = True
                            break
                        q.append(dd)
                    if bad:
                        raise ArithmeticError("inexact Bareiss division")
                    val = tuple(q)
                if any(val):
                    new_r[c] = val
            if new_r:
                new_active.append((idx, new_r))
        pivots.append((col, piv_idx, piv_row))
        active = new_active
        prev_is_one = p == one
        if not prev_is_one:
            prev_tilde, prev_den = _inv_context(p, order)
    return pivots, free_cols


def _nullspace_vectors(
    pivots: list[tuple[int, int, dict[int, tuple]]],
    free_cols: list[int],
    ncols: int,
    order: int,
) -> list[dict[int, tuple]]:
    """One basis vector per free column, by back-substitution over the field."""
    deg = field_degree(order)
    zero = (Fraction(0),) * deg
    one = (Fraction(1),) + (Fraction(0),) * (deg - 1)
    inverses = {}
    basis = []
    for f in free_cols:
        v: dict[int, tuple] = {f: one}
        for col, _idx, row in reversed(pivots):
            acc = zero
            for c, coeff in row.items():
                if c == col:
                    continue
                vc = v.get(c)
                if vc is None:
                    continue
                term = _red_mul(tuple(Fraction(t) for t in coeff), vc, order)
                acc = tuple(s + t for s, t in zip(acc, term))
            if any(acc):
                inv = inverses.get(col)
                if inv is None:
                    inv = _red_inv(tuple(Fraction(t) for t in row[col]), order)
                    inverses[col] = inv
                val = _red_mul(acc, inv, order)
                v[col] = tuple(-t for t in val)
        basis.append(v)
    return basis


def solution_space(cs: ConstraintSystem, with_trace: bool = False) -> OplmReport:
    """Exact nullspace of the constraint rows over Q(zeta_N)."""
    ncols = cs.unknown_dim ** 2
    indexed = []
    pair_of = {}
    for idx, row in enumerate(cs.rows):
        if row.coeffs:
            indexed.append((idx, _clear_denominators(row.coeffs, cs.order)))
            pair_of[idx] = row.pair
    pivots, free_cols = _bareiss(indexed, ncols, cs.order)
    vectors = _nullspace_vectors(pivots, free_cols, ncols, cs.order)
    d = cs.unknown_dim
    basis = []
    for v in vectors:
        mat = tuple(
            tuple(
                Cyclotomic._wrap(cs.order, v.get(r * d + c, None) or _frac_zero(cs.order))
                for c in range(d)
            )
            for r in range(d)
        )
        basis.append(mat)
    trace = None
    if with_trace:
        trace = tuple(
            (pair_of[idx], divmod(col, d)) for col, idx, _row in pivots
        )
    dim = len(free_cols)
    report = OplmReport(
        party_group=cs.party_group,
        unknown_dim=d,
        order=cs.order,
        solution_dim=dim,
        basis=tuple(basis),
        witness=None,
        trace=trace,
    )
    if dim > 1:
        report.witness = _build_witness(report)
    return report


def _frac_zero(order: int):
    return (Fraction(0),) * field_degree(order)


def identity_matrix(dim: int, order: int):
    one = Cyclotomic.one(order)
    zero = Cyclotomic.zero(order)
    return tuple(
        tuple(one if r == c else zero for c in range(dim)) for r in range(dim)
    )


def is_scalar_matrix(mat) -> bool:
    dim = len(mat)
    for r in range(dim):
        for c in range(dim):
            if r == c:
                if mat[r][c] != mat[0][0]:
                    return False
            elif not mat[r][c].is_zero():
                return False
    return True


def _adjoint(mat):
    dim = len(mat)
    return tuple(tuple(mat[c][r].conj() for c in range(dim)) for r in range(dim))


def _mat_lift(mat, order: int):
    return tuple(tuple(x.lift(order) for x in row) for row in mat)


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a, c: Cyclotomic):
    return tuple(tuple(x * c for x in row) for row in a)


def _build_witness(report: OplmReport) -> HermitianOperator:
    """A Hermitian, non-scalar element of the solution space.

    Tries B + B*; if that is scalar, takes the anti-Hermitian part times
    a purely imaginary unit.  Q(zeta_N) contains one for N >= 3; for
    rational fields the element is lifted to order lcm(4, N) first.
    """
    for mat in report.basis:
        if is_scalar_matrix(mat):
            continue
        sym = _mat_add(mat, _adjoint(mat))
        if not is_scalar_matrix(sym):
            return HermitianOperator(report.unknown_dim, sym)
        if report.order >= 3:
            unit = root_of_unity(report.order, 1, report.order) - root_of_unity(
                report.order, report.order - 1, report.order
            )
            skew = _mat_scale(_mat_sub(mat, _adjoint(mat)), unit)
        else:
            target = lcm(4, report.order)
            lifted = _mat_lift(mat, target)
            unit = root_of_unity(4, 1, target)
            skew = _mat_scale(_mat_sub(lifted, _adjoint(lifted)), unit)
        if not is_scalar_matrix(skew):
            return HermitianOperator(len(skew), skew)
    raise AssertionError(
        "solution space claims dim > 1 but no non-scalar Hermitian element found"
    )


def operator_satisfies(cs: ConstraintSystem, mat) -> bool:
    """Exact check that a matrix satisfies every constraint row."""
    d = cs.unknown_dim
    order = mat[0][0].order
    target = lcm(order, cs.order)
    for row in cs.rows:
        if not row.coeffs:
            continue
        acc = Cyclotomic.zero(target)
        for col, coeff in row.coeffs.items():
            r, c = divmod(col, d)
            entry = mat[r][c]
            if entry.is_zero():
                continue
            acc = acc + coeff.lift(target) * entry.lift(target)
        if not acc.is_zero():
            return False
    return True


def matrix_in_span(basis, mat) -> bool:
    """Membership of ``mat`` in the Q(zeta_N)-span of basis matrices."""
    if not basis:
        return False
    d = len(mat)
    order = basis[0][0][0].order
    target = lcm(order, mat[0][0].order)

    def as_row(m):
        coeffs = {}
        for r in range(d):
            for c in range(d):
                x = m[r][c].lift(target)
                if not x.is_zero():
                    coeffs[r * d + c] = x
        return _clear_denominators(coeffs, target)

    rows = [(i, as_row(_mat_lift(b, target))) for i, b in enumerate(basis)]
    base_rank = len(_bareiss(rows, d * d, target)[0])
    rows.append((len(rows), as_row(_mat_lift(mat, target))))
    full_rank = len(_bareiss(rows, d * d, target)[0])
    return full_rank == base_rank


def float_solution_dim(cs: ConstraintSystem, tol: float = 1e-9) -> int:
    """Numerical nullspace dimension by singular-value thresholding."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    ncols = cs.unknown_dim ** 2
    data = []
    for row in cs.rows:
        if not row.coeffs:
            continue
        vec = np.zeros(ncols, dtype=complex)
        for col, coeff in row.coeffs.items():
            vec[col] = coeff.to_complex()
        data.append(vec)
    if not data:
        return ncols
    sv = np.linalg.svd(np.array(data), compute_uv=False)
    top = sv[0]
    if top == 0.0:
        return ncols
    rank = int(np.sum(sv > tol * top))
    return ncols - rank


def _abs_upper_bound(x: Cyclotomic) -> Fraction:
    # outward-rounded rational bound on |x|
    b = abs(x.to_complex())
    scaled = math.ceil(b * (1 << 20)) + 1
    return Fraction(scaled, 1 << 20)


def povm_from_witness(
    witness: HermitianOperator, state_set: StateSet, party_group: Sequence[int]
) -> tuple[HermitianOperator, HermitianOperator]:
    """A complete two-outcome orthogonality-preserving POVM (I +- eps H)/2.

    eps = 1/(1 + rho) with rho a rational Gershgorin bound on the
    spectral radius of H, so both elements are positive semidefinite.
    Both satisfy every constraint row exactly because the identity and
    the witness do.
    """
    cs = assemble(state_set, party_group)
    order = lcm(witness.order, cs.order)
    h = _mat_lift(witness.entries, order)
    rho = Fraction(0)
    for row in h:
        total = sum((_abs_upper_bound(x) for x in row), Fraction(0))
        rho = max(rho, total)
    eps = Fraction(1, 1) / (1 + rho)
    half = Fraction(1, 2)
    ident = identity_matrix(witness.dim, order)
    plus = _mat_add(_mat_scale(ident, Cyclotomic.rational(half, order)),
                    _mat_scale(h, Cyclotomic.rational(half * eps, order)))
    minus = _mat_sub(_mat_scale(ident, Cyclotomic.rational(half, order)),
                     _mat_scale(h, Cyclotomic.rational(half * eps, order)))
    e_plus = HermitianOperator(witness.dim, plus)
    e_minus = HermitianOperator(witness.dim, minus)
    if not (operator_satisfies(cs, plus) and operator_satisfies(cs, minus)):
        raise AssertionError("POVM elements violate a constraint row")
    return e_plus, e_minus


def matrix_to_numpy(mat) -> np.ndarray:
    d = len(mat)
    out = np.zeros((d, d), dtype=complex)
    for r in range(d):
        for c in range(d):
            out[r, c] = mat[r][c].to_complex()
    return out
