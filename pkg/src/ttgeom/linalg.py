"""Dense exact linear algebra over finite fields.

Matrices are 2-d ``int64`` numpy arrays holding canonical field elements.
Row reduction pivots on the first nonzero entry, so every echelon form
(and everything derived from it) is deterministic.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .field import Field, as_field


@njit(cache=True)
def _rref_prime(a, p, inv, reduced):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        s = inv[a[r, c]]
        if s != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * s) % p
        start = 0 if reduced else r + 1
        for i in range(start, rows):
            if i == r:
                continue
            f = a[i, c]
            if f != 0:
                g = p - f
                for j in range(c, cols):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] + g * a[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


def _rref_table(a, field: Field, reduced: bool):
    rows, cols = a.shape
    pivots = []
    r = 0
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = mul[field.inv(int(a[r, c])), a[r]]
        targets = range(rows) if reduced else range(r + 1, rows)
        for i in targets:
            if i != r and a[i, c] != 0:
                a[i] = add[a[i], mul[neg[a[i, c]], a[r]]]
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def _inv_array(p):
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


_INV_CACHE: dict[int, np.ndarray] = {}


def echelon(mat, field, reduced: bool = True):
    """Row echelon form.  Returns ``(E, pivots)``; the input is not modified."""
    field = as_field(field)
    a = np.array(mat, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.size == 0:
        return a, np.zeros(0, dtype=np.int64)
    if field.is_prime_field:
        a %= field.p
        inv = _INV_CACHE.get(field.p)
        if inv is None:
            inv = _INV_CACHE[field.p] = _inv_array(field.p)
        piv = _rref_prime(a, field.p, inv, reduced)
    else:
        piv = _rref_table(a, field, reduced)
    return a, piv


def rank(mat, field) -> int:
    """Row rank over ``field``."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    # eliminate along the shorter side
    if mat.shape[0] > mat.shape[1]:
        mat = mat.T
    return len(echelon(mat, field, reduced=False)[1])


def kernel_basis(mat, field) -> list[np.ndarray]:
    """Basis of the right null space, one vector per free column.

    Vector ``j`` has a 1 in its free column and zeros in the other free
    columns (reduced echelon normalisation).
    """
    field = as_field(field)
    mat = np.asarray(mat, dtype=np.int64)
    rows, cols = mat.shape
    if rows == 0:
        return [v for v in np.eye(cols, dtype=np.int64)]
    e, piv = echelon(mat, field)
    pivset = set(int(c) for c in piv)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for i, c in enumerate(piv):
            v[c] = field.neg(int(e[i, free]))
        basis.append(v)
    return basis


def kernel_matrix(mat, field) -> np.ndarray:
    """Kernel basis as the columns of a matrix (shape ``cols x nullity``)."""
    mat = np.asarray(mat)
    ker = kernel_basis(mat, field)
    if not ker:
        return np.zeros((mat.shape[1], 0), dtype=np.int64)
    return np.array(ker, dtype=np.int64).T


def solve_linear(mat, b, field):
    """One solution of ``mat @ x = b`` or ``None`` when inconsistent.

    The solution sets every free variable to zero.
    """
    field = as_field(field)
    mat = np.asarray(mat, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if mat.ndim != 2 or b.ndim != 1 or b.shape[0] != mat.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {mat.shape}, right-hand side {b.shape}")
    rows, cols = mat.shape
    aug = np.concatenate([mat, b[:, None]], axis=1)
    e, piv = echelon(aug, field)
    if len(piv) and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = e[i, cols]
    return x


def solve_many(mat, rhs, field):
    """Solve ``mat @ X = rhs`` column by column; ``None`` if any column fails."""
    field = as_field(field)
    mat = np.asarray(mat, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    rows, cols = mat.shape
    k = rhs.shape[1]
    aug = np.concatenate([mat, rhs], axis=1)
    e, piv = echelon(aug, field)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, k), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = e[i, cols:]
    return x


def row_space_basis(mat, field) -> np.ndarray:
    e, piv = echelon(mat, field)
    return e[:len(piv)]


def complement_in(sub, ambient, field):
    """Rows of ``ambient`` (in order) that extend a basis of span(sub) to span(sub + ambient).

    Returns the selected row indices of ``ambient``.
    """
    field = as_field(field)
    sub = np.asarray(sub, dtype=np.int64)
    ambient = np.asarray(ambient, dtype=np.int64)
    n = ambient.shape[1]
    base = row_space_basis(sub, field) if sub.size else np.zeros((0, n), dtype=np.int64)
    current = len(base)
    chosen = []
    stack = base
    for i, row in enumerate(ambient):
        trial = np.vstack([stack, row[None, :]])
        rk = rank(trial, field)
        if rk > current:
            chosen.append(i)
            stack = row_space_basis(trial, field)
            current = rk
    return chosen


def inverse(mat, field):
    field = as_field(field)
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    e, piv = echelon(np.concatenate([mat, np.eye(n, dtype=np.int64)], axis=1), field)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return e[:, n:]


def matpow(mat, n: int, field):
    field = as_field(field)
    mat = np.asarray(mat, dtype=np.int64)
    result = np.eye(mat.shape[0], dtype=np.int64)
    base = mat
    while n:
        if n & 1:
            result = field.matmul(result, base)
        base = field.matmul(base, base)
        n >>= 1
    return result


def is_zero(mat) -> bool:
    return not np.any(np.asarray(mat))
