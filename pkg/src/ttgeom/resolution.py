"""Free resolutions over ``kG`` and comparison-theorem lifts of cocycles.

A free module ``P = A^b`` has k-basis ``(j, a)`` (generator ``j``, monomial
``z^a``) at position ``j * |G| + a``.  An A-linear map ``A^{b_s} → A^{b_t}``
is stored as a coefficient array ``C`` of shape ``(b_s, b_t, |G|)``:
``d(e_j) = Σ_k C[j, k] e_k`` with ``C[j, k]`` an element of ``A``.
"""
from __future__ import annotations

import threading

import numpy as np

from . import linalg as la
from .modrep import GroupData, GroupModule, trivial_module


class LiftError(RuntimeError):
    """A comparison-theorem lift had no solution (indicates a broken resolution)."""


# A-linear maps between free modules

def a_product(x, y, group: GroupData):
    return np.einsum("a,b,abc->c", x, y, group.mult_tensor) % group.p


def compose_free(first, second, group: GroupData):
    """Coefficients of ``second ∘ first`` for ``first: P_a → P_b``, ``second: P_b → P_c``."""
    if first.shape[0] == 0 or second.shape[1] == 0 or first.shape[1] == 0:
        return np.zeros((first.shape[0], second.shape[1], group.order), dtype=np.int64)
    # contract through float64 BLAS; entries stay far below 2^53 so the result is exact
    j, l, n = first.shape
    k = second.shape[1]
    left = np.einsum("jla,abc->jlbc", first, group.mult_tensor).reshape(j, l * n, n)
    left = left.transpose(0, 2, 1).reshape(j * n, l * n).astype(np.float64)
    right = second.transpose(0, 2, 1).reshape(l * n, k).astype(np.float64)
    out = (left @ right).reshape(j, n, k).transpose(0, 2, 1)
    return np.rint(out).astype(np.int64) % group.p


def free_kmatrix(C, group: GroupData):
    """k-matrix (target dim × source dim) of the A-linear map with coefficients ``C``."""
    bs, bt, n = C.shape
    if bs == 0 or bt == 0:
        return np.zeros((bt * n, bs * n), dtype=np.int64)
    M = np.einsum("jkb,abc->kcja", C, group.mult_tensor, optimize=True)
    return (M.reshape(bt * n, bs * n) % group.p).astype(np.int64)


def _greedy_columns(sub, cand, field):
    """Indices of columns of ``cand`` that are independent modulo span(sub), chosen greedily."""
    s = sub.shape[1]
    if cand.shape[1] == 0:
        return []
    _, piv = la.echelon(np.hstack([sub, cand]), field, reduced=False)
    return [int(c) - s for c in piv if c >= s]


class Resolution:
    """Free resolution ``... → P_1 → P_0 → M`` with coefficient-array differentials."""

    def __init__(self, group: GroupData, ranks, diffs, aug, module=None, labels=None):
        self.group = group
        self.ranks = list(ranks)
        self.diffs = list(diffs)  # diffs[n]: P_n → P_{n-1}; diffs[0] is None
        self.aug = aug
        self.module = module
        self.labels = labels
        self._kmats = {}
        self._lock = threading.RLock()

    @property
    def depth(self):
        return len(self.ranks) - 1

    @property
    def betti(self):
        return list(self.ranks)

    def dim(self, n):
        return self.ranks[n] * self.group.order

    def kmatrix(self, n):
        if n not in self._kmats:
            with self._lock:
                if n not in self._kmats:
                    self._kmats[n] = free_kmatrix(self.diffs[n], self.group)
        return self._kmats[n]

    def is_minimal(self) -> bool:
        """Every differential has coefficients in the radical (no constant terms)."""
        return all(not np.any(C[:, :, 0] % self.group.p) for C in self.diffs[1:])

    def is_exact(self) -> bool:
        F = self.group.field
        rk = [la.rank(self.aug, F)] + [la.rank(self.kmatrix(n), F) for n in range(1, self.depth + 1)]
        if self.module is not None and rk[0] != self.module.dim:
            return False
        for n in range(self.depth):
            if rk[n] + rk[n + 1] != self.dim(n):
                return False
        for n in range(1, self.depth):
            if not la.is_zero(F.matmul(self.kmatrix(n), self.kmatrix(n + 1))):
                return False
        return True

    def as_complex(self):
        from .complexes import WindowedComplex
        from .modrep import free_module
        terms = {-n: free_module(self.group, self.ranks[n]) for n in range(self.depth + 1)}
        diffs = {-n: self.kmatrix(n) for n in range(1, self.depth + 1)}
        return WindowedComplex(self.group, terms, diffs, window=(-self.depth + 1, 0))


def minimal_resolution(M: GroupModule, n: int) -> Resolution:
    """Minimal free resolution of ``M`` through ``P_n``."""
    group = M.group
    F = group.field
    N = group.order
    p = group.p
    if M.dim == 0:
        return Resolution(group, [0] * (n + 1),
                          [None] + [np.zeros((0, 0, N), dtype=np.int64)] * n,
                          np.zeros((0, 0), dtype=np.int64), module=M)
    rad = np.hstack(M.z) if M.z else np.zeros((M.dim, 0), dtype=np.int64)
    gens = _greedy_columns(rad, np.eye(M.dim, dtype=np.int64), F)
    acts = M.monomial_actions
    aug = np.zeros((M.dim, len(gens) * N), dtype=np.int64)
    for j, c in enumerate(gens):
        aug[:, j * N:(j + 1) * N] = acts[:, :, c].T
    ranks = [len(gens)]
    diffs = [None]
    K = la.kernel_matrix(aug, F)
    for _ in range(n):
        b_prev = ranks[-1]
        if K.shape[1] == 0:
            ranks.append(0)
            diffs.append(np.zeros((0, b_prev, N), dtype=np.int64))
            K = np.zeros((0, 0), dtype=np.int64)
            continue
        eye_b = np.eye(b_prev, dtype=np.int64)
        rad = np.hstack([np.kron(eye_b, Z) @ K % p for Z in group.regular_z]) \
            if group.rank else np.zeros((K.shape[0], 0), dtype=np.int64)
        chosen = _greedy_columns(rad, K, F)
        W = K[:, chosen]
        C = W.T.reshape(len(chosen), b_prev, N).copy()
        ranks.append(len(chosen))
        diffs.append(C)
        K = la.kernel_matrix(free_kmatrix(C, group), F)
    return Resolution(group, ranks, diffs, aug, module=M)


def _compositions(n, r):
    """Exponent vectors of length r summing to n, descending lexicographic order."""
    if r == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, r - 1):
            out.append((first,) + rest)
    return out


class StandardResolution(Resolution):
    """Tensor product of the periodic resolutions of the cyclic factors, resolving ``k``.

    Generators of ``P_n`` are indexed by exponent vectors ``a`` with ``|a| = n``;
    ``d(e_a) = Σ_i (-1)^{a_1+...+a_{i-1}} w_i e_{a-ε_i}`` where ``w_i`` is
    ``z_i`` for odd ``a_i`` and ``z_i^{q_i - 1}`` for even ``a_i``.  The
    resolution is minimal and grows on demand.
    """

    def __init__(self, group: GroupData):
        N = group.order
        aug = np.zeros((1, N), dtype=np.int64)
        aug[0, 0] = 1
        super().__init__(group, [1], [None], aug, module=trivial_module(group))
        self.labels = [[(0,) * group.rank]]
        self._index = [{(0,) * group.rank: 0}]

    def ensure(self, n):
        with self._lock:
            while self.depth < n:
                self._extend()
        return self

    def _extend(self):
        group = self.group
        r = group.rank
        n = self.depth + 1
        labels = _compositions(n, r)
        prev = self._index[-1]
        C = np.zeros((len(labels), len(prev), group.order), dtype=np.int64)
        for j, a in enumerate(labels):
            sign = 1
            for i in range(r):
                if a[i] >= 1:
                    b = list(a)
                    b[i] -= 1
                    e = [0] * r
                    e[i] = 1 if a[i] % 2 else group.orders[i] - 1
                    k = prev[tuple(b)]
                    C[j, k, group.monomial_index[tuple(e)]] = (C[j, k, group.monomial_index[tuple(e)]]
                                                               + sign) % group.p
                if a[i] % 2:
                    sign = -sign
        self.labels.append(labels)
        self._index.append({a: j for j, a in enumerate(labels)})
        self.ranks.append(len(labels))
        self.diffs.append(C)

    def index(self, label):
        return self._index[sum(label)][tuple(label)]


def lift_cocycle(res: Resolution, alpha, d: int, depth: int):
    """Chain map ``f_n: P_{n+d} → P_n`` (n = 0..depth) over the cocycle ``alpha: P_d → k``.

    ``res`` resolves ``k`` with ``P_0 = A``.  Returns the list of coefficient
    arrays.  A degree-0 cocycle lifts to a scalar multiple of the identity.
    """
    group = res.group
    F = group.field
    N = group.order
    p = group.p
    alpha = np.asarray(alpha, dtype=np.int64) % p
    if isinstance(res, StandardResolution):
        res.ensure(depth + d)
    if res.depth < depth + d:
        raise LiftError(f"resolution too short: need depth {depth + d}, have {res.depth}")
    if len(alpha) != res.ranks[d]:
        raise ValueError("cocycle length does not match the resolution rank")
    maps = []
    if d == 0:
        for n in range(depth + 1):
            C = np.zeros((res.ranks[n], res.ranks[n], N), dtype=np.int64)
            for j in range(res.ranks[n]):
                C[j, j, 0] = alpha[0]
            maps.append(C)
        return maps
    F0 = np.zeros((res.ranks[d], 1, N), dtype=np.int64)
    F0[:, 0, 0] = alpha
    maps.append(F0)
    for n in range(1, depth + 1):
        rhs = compose_free(res.diffs[n + d], maps[-1], group)  # P_{n+d} → P_{n-1}
        b_src = res.ranks[n + d]
        if b_src == 0 or res.ranks[n] == 0:
            if np.any(rhs):
                raise LiftError(f"lift fails in degree {n}")
            maps.append(np.zeros((b_src, res.ranks[n], N), dtype=np.int64))
            continue
        B = rhs.reshape(b_src, -1).T
        X = la.solve_many(res.kmatrix(n), B, F)
        if X is None:
            raise LiftError(f"lift fails in degree {n}")
        maps.append(X.T.reshape(b_src, res.ranks[n], N).copy())
    return maps
