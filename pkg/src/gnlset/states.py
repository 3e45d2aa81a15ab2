"""Unnormalized local factors, product states, and multiparty state sets.

States follow the usual shorthand in which |i + j| and |i - j| denote
coefficient patterns on basis kets without normalization; every predicate
downstream is scale invariant, so no normalization is ever applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cyclotomic import Cyclotomic, Rational, _red_inv


class StateError(ValueError):
    """Malformed factor, state, or state set."""


class NotStrippableError(ValueError):
    """A party cannot be stripped because two states differ there."""


def party_name(index: int, n_parties: int) -> str:
    if n_parties <= 3:
        return "ABC"[index]
    return f"A{index + 1}"


@dataclass(frozen=True)
class LocalFactor:
    """One party's (unnormalized) vector: ``amplitudes`` has length ``dim``."""

    dim: int
    amplitudes: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if self.dim < 1 or len(self.amplitudes) != self.dim:
            raise StateError("amplitude vector does not match dimension")
        orders = {a.order for a in self.amplitudes}
        if len(orders) != 1:
            raise StateError("mixed cyclotomic orders inside one factor")
        if all(a.is_zero() for a in self.amplitudes):
            raise StateError("local factor must not be the zero vector")

    @property
    def order(self) -> int:
        return self.amplitudes[0].order

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.amplitudes) if not a.is_zero())

    def inner(self, other: "LocalFactor") -> Cyclotomic:
        """Sum of conj(self_k) * other_k; conjugate linear in ``self``."""
        if self.dim != other.dim:
            raise StateError(f"dimension mismatch: {self.dim} vs {other.dim}")
        acc = Cyclotomic.zero(self.order)
        for a, b in zip(self.amplitudes, other.amplitudes):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a.conj() * b
        return acc

    def scaled(self, c: Cyclotomic) -> "LocalFactor":
        if c.is_zero():
            raise StateError("cannot scale a factor by zero")
        return LocalFactor(self.dim, tuple(a * c for a in self.amplitudes))

    def proportional_to(self, other: "LocalFactor") -> Optional[Cyclotomic]:
        """Scalar c with ``other == c * self``, or None if not proportional."""
        if self.dim != other.dim:
            return None
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.amplitudes[i] * other.amplitudes[j] != self.amplitudes[j] * other.amplitudes[i]:
                    return None
        k = self.support()[0]
        if other.amplitudes[k].is_zero():
            return None
        inv = Cyclotomic._wrap(self.order, _red_inv(self.amplitudes[k]._red, self.order))
        return other.amplitudes[k] * inv

    def kron(self, other: "LocalFactor") -> "LocalFactor":
        """Tensor product; ``self`` is the slower-varying index."""
        amps = []
        for a in self.amplitudes:
            for b in other.amplitudes:
                amps.append(a * b)
        return LocalFactor(self.dim * other.dim, tuple(amps))


def build_factor(dim: int, terms: Sequence[tuple[int, Cyclotomic]]) -> LocalFactor:
    """Factor with the given (index, coefficient) entries; duplicates are summed."""
    if not terms:
        raise StateError("a factor needs at least one term")
    order = terms[0][1].order
    amps = [Cyclotomic.zero(order) for _ in range(dim)]
    for idx, coeff in terms:
        if not 0 <= idx < dim:
            raise StateError(f"ket index {idx} out of range for dimension {dim}")
        amps[idx] = amps[idx] + coeff
    if all(a.is_zero() for a in amps):
        raise StateError("factor terms sum to the zero vector")
    return LocalFactor(dim, tuple(amps))


def basis_ket(dim: int, index: int, order: int) -> LocalFactor:
    return build_factor(dim, [(index, Cyclotomic.one(order))])


def ket_sum(dim: int, entries: Sequence[tuple[int, Rational]], order: int) -> LocalFactor:
    """Shorthand for signed superpositions, e.g. [(0, 1), (2, -1)] for |0-2>."""
    return build_factor(
        dim, [(i, Cyclotomic.rational(c, order)) for i, c in entries]
    )


def all_plus_ket(dim: int, order: int, upto: Optional[int] = None) -> LocalFactor:
    stop = dim if upto is None else upto
    return ket_sum(dim, [(i, 1) for i in range(stop)], order)


@dataclass(frozen=True)
class ProductState:
    label: str
    factors: tuple[LocalFactor, ...]

    def __post_init__(self):
        if not self.factors:
            raise StateError("a product state needs at least one factor")

    def inner(self, other: "ProductState") -> Cyclotomic:
        """Product over parties of the local inner products."""
        if len(self.factors) != len(other.factors):
            raise StateError("party structure mismatch")
        acc = Cyclotomic.one(self.factors[0].order)
        for u, v in zip(self.factors, other.factors):
            term = u.inner(v)
            if term.is_zero():
                return Cyclotomic.zero(term.order)
            acc = acc * term
        return acc


@dataclass(frozen=True)
class Provenance:
    family: str
    dims: tuple[int, ...]


@dataclass(frozen=True)
class OrthogonalityViolation:
    label_a: str
    label_b: str
    value: Cyclotomic


@dataclass(frozen=True)
class OrthogonalityReport:
    violations: tuple[OrthogonalityViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


class StateSet:
    """Parties with local dimensions plus a list of mutually orthogonal states.

    Mutual orthogonality is enforced at construction; pass
    ``verify=False`` only when orthogonality is guaranteed structurally
    (e.g. after a party grouping, which preserves inner products).
    """

    __slots__ = ("dims", "ambient_order", "states", "provenance")

    def __init__(
        self,
        dims: Sequence[int],
        ambient_order: int,
        states: Sequence[ProductState],
        provenance: Optional[Provenance] = None,
        verify: bool = True,
    ):
        dims = tuple(int(d) for d in dims)
        if len(dims) < 1 or any(d < 1 for d in dims):
            raise StateError("dimensions must be positive")
        if not states:
            raise StateError("a state set needs at least one state")
        labels = set()
        for st in states:
            if st.label in labels:
                raise StateError(f"duplicate state label {st.label!r}")
            labels.add(st.label)
            if len(st.factors) != len(dims):
                raise StateError(f"state {st.label} has wrong party count")
            for k, f in enumerate(st.factors):
                if f.dim != dims[k]:
                    raise StateError(
                        f"state {st.label} has dimension {f.dim} on party {k}, expected {dims[k]}"
                    )
                if f.order != ambient_order:
                    raise StateError(
                        f"state {st.label} uses order {f.order}, ambient is {ambient_order}"
                    )
        self.dims = dims
        self.ambient_order = int(ambient_order)
        self.states = tuple(states)
        self.provenance = provenance
        if verify:
            report = check_mutual_orthogonality(self)
            if not report.ok:
                v = report.violations[0]
                raise StateError(
                    f"states are not mutually orthogonal: <{v.label_a}|{v.label_b}> != 0"
                )

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.states)

    def state(self, label: str) -> ProductState:
        for s in self.states:
            if s.label == label:
                return s
        raise KeyError(label)

    def subset(self, labels: Sequence[str]) -> "StateSet":
        states = [self.state(l) for l in labels]
        return StateSet(self.dims, self.ambient_order, states, None, verify=False)

    def __len__(self) -> int:
        return len(self.states)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSet):
            return NotImplemented
        return (
            self.dims == other.dims
            and self.ambient_order == other.ambient_order
            and self.states == other.states
            and self.provenance == other.provenance
        )

    def __repr__(self) -> str:
        return f"StateSet(dims={self.dims}, states={len(self.states)})"


def check_mutual_orthogonality(s: StateSet) -> OrthogonalityReport:
    """All unordered pairs with nonzero global inner product."""
    bad = []
    for i in range(len(s.states)):
        for j in range(i + 1, len(s.states)):
            val = s.states[i].inner(s.states[j])
            if not val.is_zero():
                bad.append(
                    OrthogonalityViolation(s.states[i].label, s.states[j].label, val)
                )
    return OrthogonalityReport(tuple(bad))


def group_parties(s: StateSet, grouping: Sequence[Sequence[int]]) -> StateSet:
    """Merge parties into ordered blocks via Kronecker products.

    The leftmost party of each block is the slowest-varying index, so
    grouped constraint matrices are reproducible bit for bit.
    """
    seen: list[int] = []
    for block in grouping:
        if not block:
            raise StateError("grouping blocks must be nonempty")
        seen.extend(block)
    if sorted(seen) != list(range(s.n_parties)):
        raise StateError("grouping is not a partition of the parties")
    new_states = []
    for st in s.states:
        new_factors = []
        for block in grouping:
            f = st.factors[block[0]]
            for p in block[1:]:
                f = f.kron(st.factors[p])
            new_factors.append(f)
        new_states.append(ProductState(st.label, tuple(new_factors)))
    new_dims = []
    for block in grouping:
        d = 1
        for p in block:
            d *= s.dims[p]
        new_dims.append(d)
    return StateSet(new_dims, s.ambient_order, new_states, None, verify=False)


def strip_party(s: StateSet, party: int) -> StateSet:
    """Drop a party whose factors are pairwise proportional across the set."""
    if not 0 <= party < s.n_parties:
        raise StateError(f"no party {party} in a {s.n_parties}-party set")
    if s.n_parties < 2:
        raise StateError("cannot strip the only party")
    ref = s.states[0].factors[party]
    for st in s.states[1:]:
        if ref.proportional_to(st.factors[party]) is None:
            raise NotStrippableError(
                f"party {party} factors of {s.states[0].label!r} and {st.label!r} "
                "are not proportional"
            )
    new_states = [
        ProductState(st.label, st.factors[:party] + st.factors[party + 1 :])
        for st in s.states
    ]
    new_dims = s.dims[:party] + s.dims[party + 1 :]
    return StateSet(new_dims, s.ambient_order, new_states, None, verify=False)
