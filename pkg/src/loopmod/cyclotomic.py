"""Exact scalars q·ζ^e in a fixed cyclotomic field, and zero-testing of their sums.

A :class:`CycScalar` is a nonzero rational ``q`` times a power of
``ζ = exp(2πi/L)``; the order ``L`` is fixed once per problem instance.  The
canonical form keeps the exponent in ``[0, L)`` and, when ``L`` is even, folds
exponents ``e ≥ L/2`` into the sign of ``q`` via ``ζ^{L/2} = −1``.  After
folding, two scalars are equal as complex numbers exactly when their folded
``(q, e)`` pairs agree, so equality and hashing are structural.

Finite sums of such scalars live in :class:`CycVector`, a rational coefficient
vector over the basis ``1, ζ, …, ζ^{L−1}`` (arithmetic may use ``ζ^L = 1``
freely).  Zero-testing reduces the vector modulo the L-th cyclotomic
polynomial ``Φ_L``, computed by the recursive division
``Φ_L = (x^L − 1) / ∏ Φ_d`` over the proper divisors ``d`` of ``L``.

No floating point is used anywhere; ``complex(x)`` is provided only so tests
can cross-check against numeric evaluation.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import InputError, OrderMismatchError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # Exact division of integer polynomials; den is monic.  Coefficients are
    # stored low-to-high.
    num = list(num)
    deg_d = len(den) - 1
    out = [0] * (len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - deg_d] = c
        for j, dj in enumerate(den):
            num[i - deg_d + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Integer coefficients of Φ_order, low degree first."""
    if order < 1:
        raise InputError("cyclotomic order must be positive", order=order)
    if order == 1:
        return (-1, 1)
    poly = [-1] + [0] * (order - 1) + [1]  # x^order − 1
    for d in _divisors(order)[:-1]:
        poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_residues(order: int) -> tuple[tuple[int, ...], ...]:
    # Residues of x^j modulo Φ_order for j in [0, order); each residue is an
    # integer vector of length deg Φ_order.
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    residues: list[tuple[int, ...]] = []
    cur = [0] * deg
    cur[0] = 1
    residues.append(tuple(cur))
    for _ in range(1, order):
        nxt = [0] + cur[:-1] if deg > 1 else [0]
        lead = cur[-1] if deg > 0 else 0
        if deg == 0:
            residues.append(())
            continue
        if lead:
            for t in range(deg):
                nxt[t] -= lead * phi[t]
        cur = nxt
        residues.append(tuple(cur))
    return tuple(residues)


class CycScalar:
    """Nonzero ``q · ζ_order^e`` in canonical (sign-folded) form."""

    __slots__ = ("q", "e", "order")

    def __init__(self, q, e: int, order: int):
        q = Fraction(q)
        if q == 0:
            raise InputError("scalar part must be nonzero")
        if order < 1:
            raise InputError("cyclotomic order must be positive", order=order)
        e = e % order
        if order % 2 == 0 and e >= order // 2:
            q = -q
            e -= order // 2
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "order", order)

    def __setattr__(self, *_):
        raise AttributeError("CycScalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def one(cls, order: int) -> "CycScalar":
        return cls(1, 0, order)

    @classmethod
    def from_rational(cls, q, order: int) -> "CycScalar":
        return cls(q, 0, order)

    @classmethod
    def zeta(cls, order: int, e: int = 1) -> "CycScalar":
        return cls(1, e, order)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "CycScalar") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                "scalars have different cyclotomic orders",
                left=self.order,
                right=other.order,
            )

    def __mul__(self, other: "CycScalar") -> "CycScalar":
        if not isinstance(other, CycScalar):
            return NotImplemented
        self._check(other)
        return CycScalar(self.q * other.q, self.e + other.e, self.order)

    def __truediv__(self, other: "CycScalar") -> "CycScalar":
        if not isinstance(other, CycScalar):
            return NotImplemented
        self._check(other)
        return CycScalar(self.q / other.q, self.e - other.e, self.order)

    def __pow__(self, m: int) -> "CycScalar":
        return CycScalar(self.q ** m, self.e * m, self.order)

    def __neg__(self) -> "CycScalar":
        return CycScalar(-self.q, self.e, self.order)

    # -- structure -----------------------------------------------------

    def _key(self):
        # Order-independent invariant: (q, rotation e/order in [0,1)).
        return (self.q, Fraction(self.e, self.order))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def is_one(self) -> bool:
        return self.q == 1 and self.e == 0

    @property
    def is_rational(self) -> bool:
        return self.e == 0

    def with_order(self, order: int) -> "CycScalar":
        """Re-express in a field of larger compatible order."""
        if order % self.order:
            raise OrderMismatchError(
                "target order must be a multiple of the current order",
                current=self.order,
                target=order,
            )
        return CycScalar(self.q, self.e * (order // self.order), order)

    def multiplicative_order_divides(self, k: int) -> bool:
        return (self ** k).is_one

    def __complex__(self) -> complex:
        return float(self.q) * cmath.exp(2j * cmath.pi * self.e / self.order)

    def __repr__(self) -> str:
        if self.e == 0:
            return f"CycScalar({self.q})"
        return f"CycScalar({self.q}*z{self.order}^{self.e})"


def root_of_unity_order_divides(a: CycScalar, k: int) -> bool:
    """True iff ``a^k = 1``, i.e. ``a`` is a k-th root of unity."""
    if k < 1:
        raise InputError("k must be positive", k=k)
    return a.multiplicative_order_divides(k)


def multiplicative_order(a: CycScalar, bound: int) -> int | None:
    """Smallest ``t`` in [1, bound] with ``a^t = 1``, or None."""
    for t in range(1, bound + 1):
        if (a ** t).is_one:
            return t
    return None


class CycVector:
    """Rational coefficient vector over ``1, ζ, …, ζ^{L−1}``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Fraction] | None = None):
        object.__setattr__(self, "order", order)
        if coeffs is None:
            c = (_ZERO,) * order
        else:
            c = tuple(Fraction(x) for x in coeffs)
            if len(c) != order:
                raise InputError("coefficient vector has wrong length")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, *_):
        raise AttributeError("CycVector is immutable")

    @classmethod
    def zero(cls, order: int) -> "CycVector":
        return cls(order)

    @classmethod
    def from_scalar(cls, s: CycScalar, weight=1) -> "CycVector":
        c = [_ZERO] * s.order
        c[s.e] = s.q * Fraction(weight)
        return cls(s.order, c)

    @classmethod
    def from_rational(cls, q, order: int) -> "CycVector":
        c = [_ZERO] * order
        c[0] = Fraction(q)
        return cls(order, c)

    def _check(self, other: "CycVector") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                "vectors have different cyclotomic orders",
                left=self.order,
                right=other.order,
            )

    def __add__(self, other: "CycVector") -> "CycVector":
        self._check(other)
        return CycVector(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycVector") -> "CycVector":
        self._check(other)
        return CycVector(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycVector":
        return CycVector(self.order, [-a for a in self.coeffs])

    def scale(self, s: CycScalar, weight=1) -> "CycVector":
        """Multiply by ``weight · s`` (scalar q·ζ^e acts by a weighted shift)."""
        if s.order != self.order:
            raise OrderMismatchError(
                "scalar and vector orders differ", scalar=s.order, vector=self.order
            )
        w = s.q * Fraction(weight)
        L = self.order
        out = [_ZERO] * L
        for j, c in enumerate(self.coeffs):
            if c:
                out[(j + s.e) % L] += w * c
        return CycVector(L, out)

    def scale_rational(self, w) -> "CycVector":
        w = Fraction(w)
        return CycVector(self.order, [w * c for c in self.coeffs])

    def __mul__(self, other: "CycVector") -> "CycVector":
        self._check(other)
        L = self.order
        out = [_ZERO] * L
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % L] += a * b
        return CycVector(L, out)

    def residue(self) -> tuple[Fraction, ...]:
        """Coordinates modulo Φ_order, length deg Φ_order."""
        table = _power_residues(self.order)
        deg = len(cyclotomic_polynomial(self.order)) - 1
        acc = [_ZERO] * deg
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[j]
                for t in range(deg):
                    if row[t]:
                        acc[t] += c * row[t]
        return tuple(acc)

    def is_zero(self) -> bool:
        if not any(self.coeffs):
            return True
        return not any(self.residue())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycVector):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("CycVector is unhashable (equality is up to Φ_L)")

    def inverse(self) -> "CycVector":
        """Field inverse modulo Φ_order (extended Euclid over Q[x])."""
        if self.is_zero():
            raise ZeroDivisionError("zero element of the cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = list(self.residue())
        # Strip to an honest degree.
        while a and a[-1] == 0:
            a.pop()

        def polymod(p, q):
            p = p[:]
            while len(p) >= len(q) and any(p):
                if p[-1] == 0:
                    p.pop()
                    continue
                f = p[-1] / q[-1]
                off = len(p) - len(q)
                for i, qc in enumerate(q):
                    p[off + i] -= f * qc
                p.pop()
            while p and p[-1] == 0:
                p.pop()
            return p

        def polydivmod(p, q):
            p = p[:]
            quo = [Fraction(0)] * max(1, len(p) - len(q) + 1)
            while len(p) >= len(q) and any(p):
                if p[-1] == 0:
                    p.pop()
                    continue
                f = p[-1] / q[-1]
                off = len(p) - len(q)
                quo[off] += f
                for i, qc in enumerate(q):
                    p[off + i] -= f * qc
                p.pop()
            while p and p[-1] == 0:
                p.pop()
            return quo, p

        def polymulsub(r, q, s):
            # r − q·s
            out = list(r) + [Fraction(0)] * max(0, len(q) + len(s) - 1 - len(r))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s):
                        if sc:
                            out[i + j] -= qc * sc
            while out and out[-1] == 0:
                out.pop()
            return out

        # Extended Euclid: r0 = phi, r1 = a; keep s-coefficients for a.
        r0, r1 = phi, a
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = polydivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, polymulsub(t0, q, t1)
        if len(r0) != 1:
            raise ArithmeticError("element not invertible modulo Φ_L")
        lead = r0[0]
        inv = [c / lead for c in t0]
        inv = polymod(inv, phi)
        out = [_ZERO] * self.order
        for j, c in enumerate(inv):
            out[j] = c
        return CycVector(self.order, out)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z ** j for j, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        return "CycVector(" + (" + ".join(terms) if terms else "0") + f"; L={self.order})"


def sum_is_zero(terms: Iterable[tuple[CycScalar, object]]) -> bool:
    """Exact zero-test of ``Σ wᵢ·qᵢ·ζ^{eᵢ}`` for rational weights ``wᵢ``.

    An empty sum is zero.  All scalars must share the same order.
    """
    terms = list(terms)
    if not terms:
        return True
    order = terms[0][0].order
    acc = [_ZERO] * order
    for s, w in terms:
        if s.order != order:
            raise OrderMismatchError(
                "terms have different cyclotomic orders", left=order, right=s.order
            )
        acc[s.e] += s.q * Fraction(w)
    return CycVector(order, acc).is_zero()
