"""Shared fixtures, independent oracles, and the acceptance summary hook."""

from __future__ import annotations

from fractions import Fraction

import pytest

from gnlset.states import ProductState, StateSet, basis_ket


def product_basis(d1: int, d2: int) -> StateSet:
    """The full computational product basis on C^d1 x C^d2."""
    states = [
        ProductState(f"e_{i}{j}", (basis_ket(d1, i, 2), basis_ket(d2, j, 2)))
        for i in range(d1)
        for j in range(d2)
    ]
    return StateSet((d1, d2), 2, states)


def fraction_rref_nullity(rows: list[list[Fraction]], ncols: int) -> int:
    """Independent nullity oracle: plain Gauss-Jordan over Fractions."""
    mat = [list(map(Fraction, r)) for r in rows if any(r)]
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return ncols - rank


def rational_rows(cs) -> list[list[Fraction]]:
    """Constraint rows as rational vectors (valid when the field is Q)."""
    from gnlset.cyclotomic import field_degree

    assert field_degree(cs.order) == 1
    ncols = cs.unknown_dim ** 2
    out = []
    for row in cs.rows:
        if not row.coeffs:
            continue
        vec = [Fraction(0)] * ncols
        for col, val in row.coeffs.items():
            vec[col] = val.coeffs[0]
        out.append(vec)
    return out


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record_acceptance(criterion: str, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((criterion, True, detail))


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"{status} {criterion}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
