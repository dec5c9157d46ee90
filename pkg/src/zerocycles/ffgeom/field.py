"""Arithmetic in F_{p^e} via precomputed tables.

An element is encoded as the integer ``a_0 + a_1 p + ... + a_{e-1} p^{e-1}``
where ``a_0 + a_1 x + ...`` is its residue modulo the defining polynomial.
The prime subfield is therefore ``{0, ..., p-1}`` with the obvious encoding.
Tables are numpy arrays so that whole batches of points can be processed
with fancy indexing.
"""

from __future__ import annotations

import functools
import itertools
from typing import Sequence

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def choose_nonsquare(p: int) -> int:
    """Smallest positive non-square residue modulo the odd prime ``p``."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    squares = {(x * x) % p for x in range(p)}
    return next(x for x in range(1, p) if x not in squares)


def _polymod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    """Reduce ``a`` (low to high) modulo the monic ``mod``."""
    a = [x % p for x in a]
    e = len(mod) - 1
    for k in range(len(a) - 1, e - 1, -1):
        c = a[k]
        if c:
            for i in range(e + 1):
                a[k - e + i] = (a[k - e + i] - c * mod[i]) % p
    return (a + [0] * e)[:e]


def _has_root_factor(mod: Sequence[int], p: int) -> bool:
    """True iff ``mod`` has a monic factor of degree in ``[1, deg/2]``."""
    e = len(mod) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if not any(_polymod(list(mod), div, p)):
                return True
    return False


def is_irreducible(mod: Sequence[int], p: int) -> bool:
    if len(mod) < 2 or mod[-1] % p != 1:
        raise ValueError("modulus must be monic of degree >= 1")
    return not _has_root_factor(mod, p)


class FieldSpec:
    """The finite field F_{p^e} = F_p[x] / (modulus)."""

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if p == 2 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1:
            raise ValueError(f"modulus must have degree {e}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.e, self.modulus = p, e, modulus
        self.q = p ** e
        self._build_tables()

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    @property
    def name(self) -> str:
        return f"F_{self.q}" if self.e == 1 else f"F_{self.p}^{self.e}"

    def describe(self) -> str:
        if self.e == 1:
            return f"F_{self.p}"
        terms = []
        for i in range(self.e, -1, -1):
            c = self.modulus[i]
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mono}" if (c != 1 or i == 0) else mono)
        return f"F_{self.q} = F_{self.p}[x]/({' + '.join(terms)})"

    # -- encoding ------------------------------------------------------

    def to_vector(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, r = divmod(int(a), self.p)
            out.append(r)
        return tuple(out)

    def from_vector(self, coeffs: Sequence[int]) -> int:
        coeffs = _polymod(list(coeffs), self.modulus, self.p) if len(coeffs) > self.e else [
            int(c) % self.p for c in coeffs]
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return int(n) % self.p

    @property
    def gen(self) -> int:
        """Class of ``x``; equals ``sqrt(d)`` when the modulus is ``x^2 - d``."""
        return self.p if self.e > 1 else (-self.modulus[0]) % self.p

    def elements(self) -> range:
        return range(self.q)

    # -- tables --------------------------------------------------------

    def _build_tables(self):
        q, p = self.q, self.p
        vecs = [self.to_vector(a) for a in range(q)]
        add = np.empty((q, q), dtype=np.int32)
        mul = np.empty((q, q), dtype=np.int32)
        for a in range(q):
            va = vecs[a]
            for b in range(a, q):
                vb = vecs[b]
                s = self.from_vector([(x + y) % p for x, y in zip(va, vb)])
                prod = [0] * (2 * self.e - 1)
                for i, x in enumerate(va):
                    if x:
                        for j, y in enumerate(vb):
                            prod[i + j] += x * y
                m = self.from_vector(_polymod(prod, self.modulus, p))
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        neg = np.array([self.from_vector([(-x) % p for x in v]) for v in vecs], dtype=np.int32)
        inv = np.zeros(q, dtype=np.int32)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.add_t, self.mul_t, self.neg_t, self.inv_t = add, mul, neg, inv
        self.sub_t = add[:, neg]
        self._pow = None

    def pow_table(self, maxdeg: int) -> np.ndarray:
        """``table[x, k] = x**k`` for ``k <= maxdeg``."""
        if self._pow is not None and self._pow.shape[1] > maxdeg:
            return self._pow
        t = np.empty((self.q, maxdeg + 1), dtype=np.int32)
        t[:, 0] = 1
        for k in range(1, maxdeg + 1):
            t[:, k] = self.mul_t[t[:, k - 1], np.arange(self.q)]
        self._pow = t
        return t

    # -- scalar helpers ------------------------------------------------

    def add(self, a, b):
        return self.add_t[a, b]

    def sub(self, a, b):
        return self.sub_t[a, b]

    def mul(self, a, b):
        return self.mul_t[a, b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self.inv_t[a]

    def power(self, a: int, k: int) -> int:
        out, base = 1, int(a)
        while k:
            if k & 1:
                out = int(self.mul_t[out, base])
            base = int(self.mul_t[base, base])
            k >>= 1
        return out

    def frobenius(self, a):
        """``a -> a^p``; vectorized over arrays."""
        return self.pow_table(self.p)[a, self.p]

    def is_square(self, a: int) -> bool:
        return a == 0 or self.power(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        sq = self.mul_t[np.arange(self.q), np.arange(self.q)]
        hits = np.nonzero(sq == a)[0]
        return int(hits[0]) if len(hits) else None

    def in_prime_field(self, a) -> np.ndarray:
        return np.asarray(a) < self.p


def default_modulus(p: int, e: int, d: int | None = None) -> tuple[int, ...]:
    """``x^2 - d`` for ``e = 2``; otherwise the first irreducible monic found."""
    if e == 1:
        return (0, 1)
    if e == 2:
        if d is None:
            d = choose_nonsquare(p)
        return ((-d) % p, 0, 1)
    for tail in itertools.product(range(p), repeat=e):
        mod = tuple(tail) + (1,)
        if mod[0] and is_irreducible(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")


@functools.lru_cache(maxsize=None)
def field_make(p: int, e: int = 1, d: int | None = None) -> FieldSpec:
    """Construct F_{p^e}; for ``e = 2`` the modulus is ``x^2 - d``.

    ``d`` defaults to the smallest non-square mod ``p`` and must be a
    non-square when given.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if d is not None and e == 2:
        d %= p
        if d == 0 or pow(d, (p - 1) // 2, p) != p - 1:
            raise ValueError(f"{d} is not a non-square unit mod {p}")
    return FieldSpec(p, e, default_modulus(p, e, d))
