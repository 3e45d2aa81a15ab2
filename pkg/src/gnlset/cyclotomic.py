"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored as rational coefficient vectors over the powers
1, zeta, ..., zeta^(N-1) and kept reduced modulo the N-th cyclotomic
polynomial, so equality is plain coefficient comparison.  Only ring
operations are exposed; the linear solver performs its own exact
divisions through the private helpers at the bottom of this module.

All values are immutable, so they are safe to share across workers.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

TWO_PI = 2.0 * 3.141592653589793


class IncompatibleOrderError(ValueError):
    """Raised when two elements live in fields of incompatible order."""


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n // 2 + 1) if n % d == 0]
    return out


def _poly_div_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic; the division must leave remainder zero.
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[k + dd]
        quot[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first, monic."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n):
        if d < n:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _field_context(order: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Degree of Q(zeta_order) and canonical integer vectors for x^k.

    The power table covers k up to max(order, 2*deg - 1) so both root
    exponents and convolution overflow can be folded in one lookup.
    """
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    top = [-c for c in phi[:deg]]  # x^deg = top, since phi is monic
    powers: list[tuple[int, ...]] = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(max(order, 2 * deg - 1)):
        powers.append(tuple(cur))
        nxt = [0] + cur[: deg - 1]
        lead = cur[deg - 1]
        if lead:
            nxt = [a + lead * b for a, b in zip(nxt, top)]
        cur = nxt
    return deg, tuple(powers)


def _reduce_terms(order: int, terms: Iterable[tuple[int, Fraction]]) -> tuple[Fraction, ...]:
    """Canonical coefficient vector (length = field degree) from zeta-power terms."""
    deg, powers = _field_context(order)
    out = [Fraction(0)] * deg
    for k, c in terms:
        if not c:
            continue
        vec = powers[k % order]
        for i in range(deg):
            if vec[i]:
                out[i] += c * vec[i]
    return tuple(out)


class Cyclotomic:
    """An exact element of Q(zeta_N) with N = ``order``.

    ``coeffs`` has length N; entry k is the coefficient of zeta_N^k in
    the canonical reduced representation (entries at degree >= phi(N)
    are zero after reduction).
    """

    __slots__ = ("order", "coeffs", "_red")

    def __init__(self, order: int, coeffs: Sequence[Rational]):
        if order < 1:
            raise ValueError("order must be positive")
        if len(coeffs) > order:
            raise ValueError("coefficient vector longer than order")
        red = _reduce_terms(order, ((k, Fraction(c)) for k, c in enumerate(coeffs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_red", red)
        object.__setattr__(
            self, "coeffs", tuple(red) + (Fraction(0),) * (order - len(red))
        )

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Cyclotomic values are immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, ())

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls(order, (1,))

    @classmethod
    def rational(cls, value: Rational, order: int) -> "Cyclotomic":
        return cls(order, (Fraction(value),))

    @classmethod
    def from_terms(cls, order: int, terms: Iterable[tuple[int, Rational]]) -> "Cyclotomic":
        red = _reduce_terms(order, ((k, Fraction(c)) for k, c in terms))
        return cls._wrap(order, red)

    @classmethod
    def _wrap(cls, order: int, red: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "_red", red)
        object.__setattr__(
            obj, "coeffs", tuple(red) + (Fraction(0),) * (order - len(red))
        )
        return obj

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise IncompatibleOrderError(
                    f"orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic._wrap(
            self.order, tuple(a + b for a, b in zip(self._red, o._red))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic._wrap(
            self.order, tuple(a - b for a, b in zip(self._red, o._red))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Cyclotomic._wrap(self.order, tuple(-a for a in self._red))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic._wrap(
            self.order, _red_mul(self._red, o._red, self.order)
        )

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        """Complex conjugate: zeta^k maps to zeta^(N-k)."""
        n = self.order
        terms = [((n - k) % n, c) for k, c in enumerate(self._red) if c]
        return Cyclotomic._wrap(n, _reduce_terms(n, terms))

    # -- predicates and conversions ---------------------------------------

    def is_zero(self) -> bool:
        return not any(self._red)

    def is_rational(self) -> bool:
        return not any(self._red[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other, self.order)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.order != self.order:
            target = lcm(self.order, other.order)
            return self.lift(target)._red == other.lift(target)._red
        return self._red == other._red

    def __hash__(self) -> int:
        return hash((self.order, self._red))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {to_literal(self)!r})"

    def lift(self, order: int) -> "Cyclotomic":
        """Re-express the same field element with ambient order ``order``."""
        if order % self.order != 0:
            raise IncompatibleOrderError(
                f"cannot lift order {self.order} into {order}"
            )
        step = order // self.order
        terms = [(k * step, c) for k, c in enumerate(self._red) if c]
        return Cyclotomic._wrap(order, _reduce_terms(order, terms))

    def to_complex(self) -> complex:
        """Double-precision value sum_k coeffs[k] * exp(2*pi*i*k/N)."""
        n = self.order
        total = 0j
        for k, c in enumerate(self._red):
            if c:
                total += float(c) * cmath.exp(1j * TWO_PI * k / n)
        return total


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def root_of_unity(order: int, exponent: int, ambient: int) -> Cyclotomic:
    """zeta_order^exponent expressed in Q(zeta_ambient); order must divide ambient."""
    if order < 1 or ambient < 1:
        raise ValueError("orders must be positive")
    if ambient % order != 0:
        raise IncompatibleOrderError(
            f"root order {order} does not divide ambient order {ambient}"
        )
    k = (ambient // order) * (exponent % order) % ambient
    return Cyclotomic.from_terms(ambient, [(k, 1)])


def omega(order: int, ambient: int) -> Cyclotomic:
    """The primitive root exp(2*pi*i/order) inside Q(zeta_ambient)."""
    return root_of_unity(order, 1, ambient)


# -- text literals ---------------------------------------------------------
#
# Grammar: literal = "0" | term (" + " term)*, term = rational | rational "*w^" k.
# Exponents refer to powers of zeta_N for the ambient order N of the document.


def to_literal(x: Cyclotomic) -> str:
    parts = []
    for k, c in enumerate(x._red):
        if not c:
            continue
        parts.append(str(c) if k == 0 else f"{c}*w^{k}")
    return " + ".join(parts) if parts else "0"


def parse_literal(text: str, order: int) -> Cyclotomic:
    terms: list[tuple[int, Fraction]] = []
    body = text.strip()
    if not body:
        raise ValueError("empty cyclotomic literal")
    for raw in body.split("+"):
        tok = raw.strip()
        if not tok:
            raise ValueError(f"malformed cyclotomic literal: {text!r}")
        if "*" in tok:
            coeff_s, power_s = tok.split("*", 1)
        elif tok.startswith("w^"):
            coeff_s, power_s = "1", tok
        else:
            coeff_s, power_s = tok, ""
        try:
            coeff = Fraction(coeff_s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad coefficient in literal {text!r}") from exc
        if power_s:
            power_s = power_s.strip()
            if not power_s.startswith("w^"):
                raise ValueError(f"bad term in literal {text!r}")
            k = int(power_s[2:])
            if k < 0 or k >= order:
                raise ValueError(
                    f"exponent {k} out of range for order {order} in {text!r}"
                )
        else:
            k = 0
        terms.append((k, coeff))
    return Cyclotomic.from_terms(order, terms)


# -- reduced-vector helpers used by the exact linear algebra ----------------
#
# The solver works on bare coefficient tuples of length phi(N) (the field
# degree) so that its inner loop can stay on machine integers.  These
# helpers are shared with the Cyclotomic methods above.


def field_degree(order: int) -> int:
    return _field_context(order)[0]


def _red_mul(a: Sequence, b: Sequence, order: int):
    deg, powers = _field_context(order)
    if deg == 1:
        return (a[0] * b[0],)
    out = [a[0] * 0] * deg
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            k = i + j
            prod = ai * bj
            if k < deg:
                out[k] += prod
            else:
                vec = powers[k]
                for t in range(deg):
                    if vec[t]:
                        out[t] += prod * vec[t]
    return tuple(out)


def _red_inv(a: Sequence[Fraction], order: int) -> tuple[Fraction, ...]:
    """Inverse in Q(zeta_order) by the extended Euclidean algorithm."""
    if not any(a):
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    deg, _ = _field_context(order)
    if deg == 1:
        return (Fraction(1) / Fraction(a[0]),)
    phi = [Fraction(c) for c in cyclotomic_polynomial(order)]
    r0, r1 = phi, [Fraction(c) for c in a] + [Fraction(0)] * (len(phi) - len(a))
    s0, s1 = [Fraction(0)] * len(phi), [Fraction(0)] * len(phi)
    s1[0] = Fraction(1)

    def degree(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    while True:
        d1 = degree(r1)
        if d1 <= 0:
            break
        d0 = degree(r0)
        if d0 < d1:
            r0, r1, s0, s1 = r1, r0, s1, s0
            continue
        factor = r0[d0] / r1[d1]
        shift = d0 - d1
        for i in range(d1 + 1):
            r0[i + shift] -= factor * r1[i]
        for i in range(len(s1) - shift):
            s0[i + shift] -= factor * s1[i]
    if degree(r1) != 0:
        raise ZeroDivisionError("element is not invertible")
    unit = r1[0]
    inv = [c / unit for c in s1[:deg]]
    return tuple(inv)


def _red_conj(a: Sequence, order: int):
    terms = [((order - k) % order, Fraction(c)) for k, c in enumerate(a) if c]
    return _reduce_terms(order, terms)


def _red_to_complex(a: Sequence, order: int) -> complex:
    total = 0j
    for k, c in enumerate(a):
        if c:
            total += float(c) * cmath.exp(1j * TWO_PI * k / order)
    return total
