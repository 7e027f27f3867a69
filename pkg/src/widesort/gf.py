"""Finite-field arithmetic GF(p^m) with an index encoding.

Field elements are encoded as integers in ``[0, q)``: the base-``p`` digits
of the integer are the polynomial coefficients, digit ``i`` multiplying
``x^i``.  The index map ``phi`` (integer -> element) is therefore the
identity on encodings, and addition is digit-wise mod ``p``, so the additive
group under the encoding is Z_p^m by construction.

The modulus is the lexicographically smallest monic irreducible polynomial of
degree ``m`` (equivalently: smallest integer encoding), found by exhaustive
divisor search, which keeps every construction downstream reproducible
byte-for-byte.  Fields up to ``q = 2^16`` are supported; fields with
``q <= 256`` precompute full add/mul/inverse tables since design generation
is table-lookup-bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16
TABLE_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(x: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``x == p**m`` and ``p`` prime, else None."""
    if x < 2:
        return None
    for p in range(2, x + 1):
        if p * p > x:
            return (x, 1) if is_prime(x) else None
        if x % p:
            continue
        m, rest = 0, x
        while rest % p == 0:
            rest //= p
            m += 1
        return (p, m) if rest == 1 else None
    return None


def _digits(value: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(value % p)
        value //= p
    return tuple(out)


def _undigits(coeffs, p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + c
    return value


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _poly_trim(out)


def _poly_divmod(num, den, p):
    num = list(num)
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den) and _poly_trim(num):
        shift = len(num) - len(den)
        factor = (num[-1] * inv_lead) % p
        quot[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * d) % p
        num = _poly_trim(num)
    return _poly_trim(quot), num


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Exhaustive divisor search over all monic polynomials of degree
    ``1..deg/2``; covers the root search as the degree-1 case."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in range(p**d):
            divisor = list(_digits(tail, p, d)) + [1]
            _, rem = _poly_divmod(poly, divisor, p)
            if not rem:
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)  # the polynomial x
    for tail in range(p**m):
        poly = list(_digits(tail, p, m)) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over Z_{p}")


@dataclass(frozen=True)
class FieldElem:
    """An element of a specific field; ``rep`` is the integer encoding."""

    rep: int
    field: "FieldSpec"

    def __post_init__(self):
        if not 0 <= self.rep < self.field.q:
            raise ValueError(f"encoding {self.rep} outside [0, {self.field.q})")

    def __repr__(self) -> str:
        return f"FieldElem({self.rep}, GF({self.field.q}))"


class FieldSpec:
    """An instantiated field GF(p^m).  Immutable after construction; obtain
    instances through :func:`make_field`, which caches them so element
    tagging can rely on object identity."""

    __slots__ = ("p", "m", "q", "modulus", "add_table", "mul_table", "inv_table")

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be positive")
        q = p**m
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds the supported cap {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        self.modulus: tuple[int, ...] = _smallest_irreducible(p, m)
        self.add_table: np.ndarray | None = None
        self.mul_table: np.ndarray | None = None
        self.inv_table: np.ndarray | None = None
        if q <= TABLE_LIMIT:
            self._build_tables()

    # plain-integer arithmetic on encodings ------------------------------

    def add_rep(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        da, db = _digits(a, self.p, self.m), _digits(b, self.p, self.m)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def sub_rep(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        da, db = _digits(a, self.p, self.m), _digits(b, self.p, self.m)
        return _undigits([(x - y) % self.p for x, y in zip(da, db)], self.p)

    def mul_rep(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        if self.m == 1:
            return (a * b) % self.p
        prod = _poly_mul(list(_digits(a, self.p, self.m)), list(_digits(b, self.p, self.m)), self.p)
        _, rem = _poly_divmod(prod, list(self.modulus), self.p)
        return _undigits(rem + [0] * (self.m - len(rem)), self.p)

    def inv_rep(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.inv_table is not None:
            return int(self.inv_table[a])
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        # extended Euclid on polynomials, tracking r_i = s_i*a (mod modulus)
        r0, r1 = list(self.modulus), _poly_trim(list(_digits(a, self.p, self.m)))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, self.p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, self.p), self.p)
        # r0 is a nonzero constant (the modulus is irreducible, a != 0)
        scale = pow(r0[0], self.p - 2, self.p)
        inv = [(c * scale) % self.p for c in s0]
        _, inv = _poly_divmod(inv, list(self.modulus), self.p)
        return _undigits(inv + [0] * (self.m - len(inv)), self.p)

    def _build_tables(self) -> None:
        q = self.q
        if self.m == 1:
            idx = np.arange(q, dtype=np.int64)
            add = ((idx[:, None] + idx[None, :]) % self.p).astype(np.int32)
            mul = ((idx[:, None] * idx[None, :]) % self.p).astype(np.int32)
        else:
            add = np.zeros((q, q), dtype=np.int32)
            mul = np.zeros((q, q), dtype=np.int32)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self.add_rep(a, b)
                    mul[a, b] = self.mul_rep(a, b)
        self.add_table = add
        self.mul_table = mul
        # invert via the table: the unique b with a*b == 1
        inv = np.zeros(q, dtype=np.int32)
        ones = np.argwhere(mul[1:, :] == 1)
        inv[1 + ones[:, 0]] = ones[:, 1]
        self.inv_table = inv

    # tagged element API ---------------------------------------------------

    def _check(self, *elems: FieldElem) -> None:
        for e in elems:
            if e.field is not self:
                raise ValueError("operands belong to different field instances")

    def elem(self, rep: int) -> FieldElem:
        return FieldElem(int(rep), self)

    def zero(self) -> FieldElem:
        return self.elem(0)

    def one(self) -> FieldElem:
        return self.elem(1)

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a, b)
        return self.elem(self.add_rep(a.rep, b.rep))

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a, b)
        return self.elem(self.sub_rep(a.rep, b.rep))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a, b)
        return self.elem(self.mul_rep(a.rep, b.rep))

    def inv(self, a: FieldElem) -> FieldElem:
        self._check(a)
        return self.elem(self.inv_rep(a.rep))

    def phi(self, index: int) -> FieldElem:
        """Index map ``{0..q-1} -> GF(q)``: base-``p`` digits become
        polynomial coefficients."""
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} outside [0, {self.q})")
        return self.elem(index)

    def phi_inv(self, e: FieldElem) -> int:
        self._check(e)
        return e.rep

    def coefficients(self, e: FieldElem) -> tuple[int, ...]:
        """Coefficient vector (constant term first) of an element."""
        self._check(e)
        return _digits(e.rep, self.p, self.m)

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.m}), modulus={self.modulus})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Build (and cache) GF(p^m).  Same arguments return the same object."""
    return FieldSpec(p, m)


def field_of_order(q: int) -> FieldSpec:
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pm)
