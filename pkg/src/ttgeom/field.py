"""Finite fields F_p and F_{p^m}.

Elements are plain integers.  For the prime field an element is its residue
in ``range(p)``; for an extension it is the base-``p`` encoding
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` of the polynomial
``c_0 + c_1 t + ... + c_{m-1} t^{m-1}`` modulo the defining polynomial.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _polymod_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _polymod_rem(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility over F_p by trial division with all monic polys of degree <= m/2."""
    m = len(coeffs) - 1
    if m <= 0:
        return False
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = _polymod_rem(coeffs, divisor, p)
            if not any(rem):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The monic irreducible of degree m whose low coefficients (c_0, ..., c_{m-1})
    have the smallest base-p encoding."""
    if m == 1:
        return (0, 1)
    for code in range(p ** m):
        tail = [(code // p ** i) % p for i in range(m)]
        coeffs = tail + [1]
        if tail[0] != 0 and is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


class Field:
    """The finite field with ``p**ext_degree`` elements.

    Arithmetic is exact.  Extension fields use lookup tables, which keeps
    matrix code uniform: every operation is an integer table lookup.
    """

    def __init__(self, p: int, ext_degree: int = 1, min_poly=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if ext_degree < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.ext_degree = ext_degree
        if min_poly is None:
            min_poly = smallest_irreducible(p, ext_degree)
        min_poly = tuple(int(c) % p for c in min_poly)
        if len(min_poly) != ext_degree + 1 or min_poly[-1] != 1:
            raise ValueError("min_poly must be monic of the extension degree")
        if ext_degree > 1 and not is_irreducible(min_poly, p):
            raise ValueError(f"{min_poly} is reducible over F_{p}")
        self.min_poly = min_poly
        self.q = p ** ext_degree
        if ext_degree > 1:
            self._build_tables()

    @property
    def is_prime_field(self) -> bool:
        return self.ext_degree == 1

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.min_poly == other.min_poly)

    def __hash__(self):
        return hash((self.p, self.min_poly))

    def __repr__(self):
        if self.is_prime_field:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.ext_degree})"

    # encoding helpers
    def to_coeffs(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.ext_degree)]

    def format(self, a: int, var: str = "w") -> str:
        """``a`` as a polynomial in the generator ``var`` of the power basis."""
        terms = []
        for i, c in reversed(list(enumerate(self.to_coeffs(a)))):
            if not c:
                continue
            mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            terms.append(str(c) if not mon else mon if c == 1 else f"{c}{mon}")
        return "+".join(terms) or "0"

    def from_coeffs(self, cs) -> int:
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(cs))

    def _build_tables(self):
        q, p = self.q, self.p
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        coeffs = [self.to_coeffs(a) for a in range(q)]
        for a in range(q):
            for b in range(q):
                add[a, b] = self.from_coeffs([(x + y) % p for x, y in zip(coeffs[a], coeffs[b])])
                prod = _polymod_rem(_polymod_mul(coeffs[a], coeffs[b], p), self.min_poly, p)
                mul[a, b] = self.from_coeffs(prod)
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array([self.from_coeffs([(-x) % p for x in coeffs[a]])
                                   for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_table = inv

    # scalar arithmetic
    def add(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.p
        return int(self.add_table[a, b])

    def sub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.p
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a):
        if self.is_prime_field:
            return (-a) % self.p
        return int(self.neg_table[a])

    def mul(self, a, b):
        if self.is_prime_field:
            return (a * b) % self.p
        return int(self.mul_table[a, b])

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime_field:
            return pow(int(a), -1, self.p)
        return int(self.inv_table[a])

    def pow(self, a, n: int):
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def embed(self, a: int) -> int:
        """Image of a prime-field residue."""
        return int(a) % self.p

    def elements(self):
        return range(self.q)

    # array arithmetic
    def arr_add(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.p
        return self.add_table[a, b]

    def arr_sub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.p
        return self.add_table[a, self.neg_table[b]]

    def arr_scale(self, c, a):
        if self.is_prime_field:
            return (c * a) % self.p
        return self.mul_table[c, a]

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_prime_field:
            return _matmul_modp(a, b, self.p)
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(a.shape[1]):
            out = self.add_table[out, self.mul_table[a[:, k][:, None], b[k, :][None, :]]]
        return out

    def reduce(self, a):
        """Canonical representatives of integer (prime-field) data."""
        a = np.asarray(a, dtype=np.int64)
        if self.is_prime_field:
            return a % self.p
        if a.min(initial=0) < 0 or a.max(initial=0) >= self.q:
            raise ValueError("entries outside the field encoding")
        return a


def _matmul_modp(a, b, p):
    # float64 BLAS is exact while every partial sum stays below 2**53
    if a.shape[1] * (p - 1) ** 2 < 2 ** 52:
        return (np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)).astype(np.int64) % p
    return (a @ b) % p


@lru_cache(maxsize=None)
def GF(p: int, m: int = 1) -> Field:
    """Cached field constructor with the deterministic defining polynomial."""
    return Field(p, m)


def as_field(f) -> Field:
    if isinstance(f, Field):
        return f
    return GF(int(f))
