"""Graded-commutative dg algebras, the Koszul dg algebra of ``kE``, and BGG on truncations.

Degrees are cohomological and the differential has degree ``+1``.
Elements of a :class:`DgAlgebra` are dicts ``{exponent tuple: residue}``;
generators of odd degree anticommute and square to zero, and a generator
may carry a nilpotency order (``z^p = 0`` in the group algebra).

The BGG bimodule ``F = Hom_k(S, k) ⊗ Λ`` is stored with basis pairs
``(dual monomial of S, exterior monomial)``; the total degree of
``(x^a)^* ⊗ ξ^b`` is ``-|x^a| + |ξ^b|``.  Its differential is left
multiplication by ``Σ x_i ⊗ ξ_i``, ``S`` acts on the dual factor and ``Λ``
acts on the right.  Only dual monomials of polynomial degree ``≤ N`` are
kept; that truncation is a subcomplex and homology is certified on the
window where no truncated term is adjacent.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg as la
from .field import GF
from .resolution import _greedy_columns


class DgError(ValueError):
    pass


def _sign_exp(a, b, odd):
    """Parity of the sign from moving the odd letters of ``b`` past those of ``a``."""
    s = 0
    later = 0
    for i in range(len(a) - 1, -1, -1):
        if odd[i]:
            s += b[i] * later
            later += a[i]
    return s % 2


class DgAlgebra:
    """Free graded-commutative algebra on the generators modulo power relations, with a differential."""

    def __init__(self, p, generators, orders=None, differential=None, name=None):
        self.p = p
        self.field = GF(p)
        self.names = [g[0] for g in generators]
        self.degrees = [int(g[1]) for g in generators]
        self.odd = [bool(g[2] == "odd") if len(g) > 2 else bool(g[1] % 2) for g in generators]
        for nm, deg, od in zip(self.names, self.degrees, self.odd):
            if od != bool(deg % 2):
                raise DgError(f"generator {nm} has degree {deg} but parity {'odd' if od else 'even'}")
        orders = dict(orders or {})
        self.orders = [2 if od else orders.get(nm) for nm, od in zip(self.names, self.odd)]
        for nm, deg, o in zip(self.names, self.degrees, self.orders):
            if deg == 0 and o is None:
                raise DgError(f"degree-0 generator {nm} needs a nilpotency order")
        self.name = name
        self.d_gen = [dict() for _ in self.names]
        for nm, img in (differential or {}).items():
            i = self.names.index(nm)
            img = self._clean(img)
            for m in img:
                if self.degree(m) != self.degrees[i] + 1:
                    raise DgError(f"d({nm}) is not of degree {self.degrees[i] + 1}")
            self.d_gen[i] = img
        self._basis = {}

    def __repr__(self):
        return self.name or f"DgAlgebra({', '.join(self.names)})"

    @property
    def ngens(self):
        return len(self.names)

    # elements
    def _clean(self, x):
        out = {}
        for m, c in x.items():
            m = tuple(m)
            if self._killed(m):
                continue
            c = c % self.p
            if c:
                out[m] = (out.get(m, 0) + c) % self.p
        return {m: c for m, c in out.items() if c}

    def _killed(self, m):
        return any(o is not None and e >= o for e, o in zip(m, self.orders))

    def gen(self, name):
        i = self.names.index(name) if isinstance(name, str) else name
        return {tuple(int(j == i) for j in range(self.ngens)): 1}

    def one(self):
        return {(0,) * self.ngens: 1}

    def degree(self, m):
        return sum(e * d for e, d in zip(m, self.degrees))

    def mul(self, x, y):
        out = {}
        for a, c in x.items():
            for b, e in y.items():
                m = tuple(i + j for i, j in zip(a, b))
                if self._killed(m):
                    continue
                v = c * e * (-1 if _sign_exp(a, b, self.odd) else 1)
                out[m] = (out.get(m, 0) + v) % self.p
        return {m: c for m, c in out.items() if c}

    def add(self, x, y, scale=1):
        out = dict(x)
        for m, c in y.items():
            out[m] = (out.get(m, 0) + scale * c) % self.p
        return {m: c for m, c in out.items() if c}

    def monomial_d(self, m):
        """Leibniz rule: ``d(g·m') = d(g)·m' + (-1)^{|g|} g·d(m')`` with ``g`` the first letter."""
        if not any(m):
            return {}
        i = next(j for j, e in enumerate(m) if e)
        rest = list(m)
        rest[i] -= 1
        rest = tuple(rest)
        g = self.gen(i)
        first = self.mul(self.d_gen[i], {rest: 1})
        second = self.mul(g, self.monomial_d(rest))
        return self.add(first, second, -1 if self.degrees[i] % 2 else 1)

    def d(self, x):
        out = {}
        for m, c in x.items():
            out = self.add(out, self.monomial_d(m), c)
        return out

    # bases
    def basis(self, n):
        """Monomials of degree ``n`` (deterministic order)."""
        if n in self._basis:
            return self._basis[n]
        caps = []
        for deg, o in zip(self.degrees, self.orders):
            if o is not None:
                caps.append(o - 1)
            elif deg * n > 0:
                caps.append(abs(n) // abs(deg) + self._slack(deg))
            else:
                caps.append(self._slack(deg))
        out = []
        for m in itertools.product(*[range(c, -1, -1) for c in caps]):
            if self.degree(m) == n and not self._killed(m):
                out.append(tuple(m))
        self._basis[n] = out
        return out

    def _slack(self, deg):
        # an unbounded generator can be balanced by bounded ones of the opposite sign
        bounded = sum(abs(d) * (o - 1) for d, o in zip(self.degrees, self.orders)
                      if o is not None and d * deg < 0)
        return bounded // abs(deg)

    def dims(self, lo, hi):
        return {n: len(self.basis(n)) for n in range(lo, hi + 1)}

    def to_vector(self, x, n):
        B = self.basis(n)
        idx = {m: i for i, m in enumerate(B)}
        v = np.zeros(len(B), dtype=np.int64)
        for m, c in x.items():
            if self.degree(m) != n:
                raise DgError("element is not homogeneous of the requested degree")
            v[idx[m]] = c
        return v

    def d_matrix(self, n):
        """Matrix of ``d: A^n → A^{n+1}``."""
        src, tgt = self.basis(n), self.basis(n + 1)
        M = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for j, m in enumerate(src):
            if not len(tgt):
                break
            M[:, j] = self.to_vector(self.monomial_d(m), n + 1)
        return M

    def right_mult_matrix(self, x, n, deg_x):
        src, tgt = self.basis(n), self.basis(n + deg_x)
        M = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for j, m in enumerate(src):
            if len(tgt):
                M[:, j] = self.to_vector(self.mul({m: 1}, x), n + deg_x)
        return M

    def d_squared_zero(self):
        return all(not self.d(self.d_gen[i]) for i in range(self.ngens))

    def leibniz_spot_check(self, rng, trials=20, lo=-3, hi=3):
        """``d(xy) = d(x)y + (-1)^{|x|} x d(y)`` on random homogeneous pairs."""
        for _ in range(trials):
            n1, n2 = (int(v) for v in rng.integers(lo, hi + 1, size=2))
            B1, B2 = self.basis(n1), self.basis(n2)
            if not B1 or not B2:
                continue
            x = self._clean({m: int(c) for m, c in zip(B1, rng.integers(0, self.p, len(B1)))})
            y = self._clean({m: int(c) for m, c in zip(B2, rng.integers(0, self.p, len(B2)))})
            lhs = self.d(self.mul(x, y))
            rhs = self.add(self.mul(self.d(x), y), self.mul(x, self.d(y)), -1 if n1 % 2 else 1)
            if lhs != rhs:
                return False
        return True


def exterior_algebra(r: int, degrees=None, p: int = 2) -> DgAlgebra:
    degrees = degrees or [-1] * r
    if any(d % 2 == 0 for d in degrees):
        raise DgError("exterior generators must have odd degree")
    return DgAlgebra(p, [(f"xi{i + 1}", d, "odd") for i, d in enumerate(degrees)], name=f"Λ({r})")


def symmetric_algebra(r: int, degrees=None, p: int = 2) -> DgAlgebra:
    degrees = degrees or [2] * r
    if any(d % 2 or d <= 0 for d in degrees):
        raise DgError("symmetric generators must have even positive degree")
    return DgAlgebra(p, [(f"x{i + 1}", d, "even") for i, d in enumerate(degrees)], name=f"S({r})")


def koszul_dg(p: int, r: int) -> DgAlgebra:
    """``B = A ⊗ Λ(y_1..y_r)`` with ``A = k[z]/(z^p)``, ``|y_i| = -1`` and ``d(y_i) = z_i``."""
    gens = [(f"z{i + 1}", 0, "even") for i in range(r)] + [(f"y{i + 1}", -1, "odd") for i in range(r)]
    orders = {f"z{i + 1}": p for i in range(r)}
    B = DgAlgebra(p, gens, orders, name=f"B({p},{r})")
    for i in range(r):
        B.d_gen[r + i] = B.gen(i)
    return B


# dg modules

@dataclass
class DgModule:
    """Finite pieces ``M^n`` for ``n`` in ``window`` with differential and generator actions."""
    algebra: DgAlgebra
    window: tuple
    dims: dict
    diff: dict
    action: dict = field(default_factory=dict)
    certified: tuple | None = None
    name: str | None = None

    def dim(self, n):
        return self.dims.get(n, 0)

    def d(self, n):
        if n in self.diff:
            return self.diff[n]
        return np.zeros((self.dim(n + 1), self.dim(n)), dtype=np.int64)

    def d_squared_zero(self):
        F = self.algebra.field
        lo, hi = self.window
        return all(la.is_zero(F.matmul(self.d(n + 1), self.d(n))) for n in range(lo, hi))

    def act_monomial(self, m, n):
        """Right action of the monomial ``m`` on ``M^n`` (generators applied in order)."""
        A = self.algebra
        F = A.field
        mat = np.eye(self.dim(n), dtype=np.int64)
        deg = n
        for i, e in enumerate(m):
            for _ in range(e):
                blk = self.action[A.names[i]].get(deg)
                tgt = deg + A.degrees[i]
                if blk is None:
                    blk = np.zeros((self.dim(tgt), self.dim(deg)), dtype=np.int64)
                mat = F.matmul(blk, mat)
                deg = tgt
        return mat

    def act_element(self, x, n, deg_x):
        out = np.zeros((self.dim(n + deg_x), self.dim(n)), dtype=np.int64)
        for m, c in x.items():
            out = (out + c * self.act_monomial(m, n)) % self.algebra.p
        return out

    def leibniz_ok(self):
        """``d(m·g) = d(m)·g + (-1)^{|m|} m·d(g)`` for every generator ``g`` inside the window."""
        A = self.algebra
        F = A.field
        lo, hi = self.window
        for i, nm in enumerate(A.names):
            if nm not in self.action:
                continue
            e = A.degrees[i]
            for n in range(lo, hi + 1):
                if not (lo <= n + e + 1 <= hi) or not (lo <= n + 1 <= hi):
                    continue
                lhs = F.matmul(self.d(n + e), self.act_monomial(A.gen(i).popitem()[0], n))
                rhs = F.matmul(self.act_monomial(A.gen(i).popitem()[0], n + 1), self.d(n))
                extra = self.act_element(A.d_gen[i], n, e + 1) if A.d_gen[i] else 0
                sign = -1 if n % 2 else 1
                if not la.is_zero((lhs - rhs - sign * extra) % A.p):
                    return False
        return True


def algebra_module(A: DgAlgebra, window) -> DgModule:
    """``A`` as a right dg module over itself, restricted to ``window``."""
    lo, hi = window
    dims = {n: len(A.basis(n)) for n in range(lo, hi + 1)}
    diff = {n: A.d_matrix(n) for n in range(lo, hi)}
    action = {nm: {n: A.right_mult_matrix(A.gen(i), n, A.degrees[i])
                   for n in range(lo, hi + 1) if lo <= n + A.degrees[i] <= hi}
              for i, nm in enumerate(A.names)}
    return DgModule(A, (lo, hi), dims, diff, action, certified=(lo, hi), name=repr(A))


@dataclass
class Homology:
    dims: dict
    representatives: dict


def dg_homology(M: DgModule, window=None) -> Homology:
    """Homology dims with echelon-chosen representatives, for degrees inside ``window``."""
    lo, hi = window or (M.certified or M.window)
    wlo, whi = M.window
    if lo < wlo or hi > whi:
        raise DgError(f"window {(lo, hi)} is outside the module window {(wlo, whi)}")
    F = M.algebra.field
    dims, reps = {}, {}
    for n in range(lo, hi + 1):
        if M.dim(n) == 0:
            dims[n] = 0
            reps[n] = np.zeros((0, 0), dtype=np.int64)
            continue
        Z = la.kernel_matrix(M.d(n), F) if M.dim(n + 1) else np.eye(M.dim(n), dtype=np.int64)
        B = M.d(n - 1) if M.dim(n - 1) else np.zeros((M.dim(n), 0), dtype=np.int64)
        pick = _greedy_columns(B, Z, F)
        reps[n] = Z[:, pick]
        dims[n] = len(pick)
    return Homology(dims, reps)


# the quasi-isomorphism Λ → B

@dataclass
class QuasiIsoReport:
    p: int
    r: int
    algebra_map: bool
    commutes_with_d: bool
    bijective: dict
    lambda_dims: dict
    b_homology: dict

    @property
    def ok(self):
        return self.algebra_map and self.commutes_with_d and all(self.bijective.values())


def phi_quasi_iso_check(p: int, r: int, window=None) -> QuasiIsoReport:
    """``φ(ξ_i) = z_i^{p-1} y_i``: algebra map, chain map, and bijective on homology."""
    L = exterior_algebra(r, p=p)
    B = koszul_dg(p, r)
    lo, hi = window or (-r, 0)

    def phi_gen(i):
        m = [0] * (2 * r)
        m[i] = p - 1
        m[r + i] = 1
        return {tuple(m): 1}

    def phi(x):
        out = {}
        for m, c in x.items():
            img = B.one()
            for i, e in enumerate(m):
                for _ in range(e):
                    img = B.mul(img, phi_gen(i))
            out = B.add(out, img, c)
        return out

    alg = True
    for i in range(r):
        if B.mul(phi_gen(i), phi_gen(i)):
            alg = False
        for j in range(i + 1, r):
            if B.add(B.mul(phi_gen(i), phi_gen(j)), B.mul(phi_gen(j), phi_gen(i))):
                alg = False
    commutes = all(not B.d(phi_gen(i)) for i in range(r))
    F = B.field
    bij, ldims, hdims = {}, {}, {}
    for n in range(lo, hi + 1):
        Ln = L.basis(n)
        ldims[n] = len(Ln)
        Bn = len(B.basis(n))
        Z = la.kernel_matrix(B.d_matrix(n), F) if len(B.basis(n + 1)) else np.eye(Bn, dtype=np.int64)
        Bd = B.d_matrix(n - 1) if len(B.basis(n - 1)) else np.zeros((Bn, 0), dtype=np.int64)
        hdims[n] = Z.shape[1] - (la.rank(Bd, F) if Bd.size else 0)
        imgs = np.array([B.to_vector(phi({m: 1}), n) for m in Ln], dtype=np.int64).T \
            if Ln else np.zeros((Bn, 0), dtype=np.int64)
        base = la.rank(Bd, F) if Bd.size else 0
        gained = (la.rank(np.hstack([Bd, imgs]), F) if imgs.size else base) - base
        bij[n] = gained == len(Ln) == hdims[n]
    return QuasiIsoReport(p, r, alg, commutes, bij, ldims, hdims)


def koszul_homology_dims(p: int, r: int):
    """``dim H^{-n}(B)`` for ``n = 0..r``."""
    B = koszul_dg(p, r)
    H = dg_homology(algebra_module(B, (-r - 1, 1)), (-r, 0))
    return [H.dims[-n] for n in range(r + 1)]


# the BGG bimodule and functor

class BGGBimodule:
    """Truncated ``F = Hom_k(S, k) ⊗ Λ`` over ``S = k[x_1..x_r]`` (``|x|=2``) and ``Λ`` (``|ξ|=-1``)."""

    def __init__(self, r: int, N: int, p: int = 2):
        if N < 1:
            raise DgError("truncation must be at least 1")
        self.r, self.N, self.p = r, N, p
        self.S = symmetric_algebra(r, p=p)
        self.L = exterior_algebra(r, p=p)
        self.window = (-2 * N - r, 0)
        self.certified = (1 - 2 * N, 0)
        self.basis = {}
        for n in range(self.window[0], 1):
            out = []
            for j in range(r + 1):
                m2 = -n - j
                if m2 < 0 or m2 % 2 or m2 // 2 > N:
                    continue
                for a in self.S.basis(m2):
                    for b in self.L.basis(-j):
                        out.append((a, b))
            self.basis[n] = out
        self._index = {n: {e: i for i, e in enumerate(B)} for n, B in self.basis.items()}

    def degree(self, a, b):
        return -self.S.degree(a) + self.L.degree(b)

    def dim(self, n):
        return len(self.basis.get(n, ()))

    def _x_dual(self, i, a):
        """``x_i · (x^a)^* = (x^{a - e_i})^*`` or zero."""
        if a[i] == 0:
            return None
        b = list(a)
        b[i] -= 1
        return tuple(b)

    def s_action(self, i, n):
        """Left action of ``x_i`` from degree ``n`` to ``n + 2``."""
        M = np.zeros((self.dim(n + 2), self.dim(n)), dtype=np.int64)
        for col, (a, b) in enumerate(self.basis.get(n, ())):
            a2 = self._x_dual(i, a)
            if a2 is not None:
                M[self._index[n + 2][(a2, b)], col] = 1
        return M

    def lambda_action(self, i, n):
        """Right action of ``ξ_i`` from degree ``n`` to ``n - 1``."""
        M = np.zeros((self.dim(n - 1), self.dim(n)), dtype=np.int64)
        xi = self.L.gen(i)
        for col, (a, b) in enumerate(self.basis.get(n, ())):
            for b2, c in self.L.mul({b: 1}, xi).items():
                M[self._index[n - 1][(a, b2)], col] = (M[self._index[n - 1][(a, b2)], col] + c) % self.p
        return M

    def differential(self, n):
        """Left multiplication by ``Σ x_i ⊗ ξ_i`` from degree ``n`` to ``n + 1``."""
        M = np.zeros((self.dim(n + 1), self.dim(n)), dtype=np.int64)
        for col, (a, b) in enumerate(self.basis.get(n, ())):
            for i in range(self.r):
                a2 = self._x_dual(i, a)
                if a2 is None:
                    continue
                for b2, c in self.L.mul(self.L.gen(i), {b: 1}).items():
                    row = self._index[n + 1][(a2, b2)]
                    M[row, col] = (M[row, col] + c) % self.p
        return M

    def as_lambda_module(self) -> DgModule:
        lo, hi = self.window
        dims = {n: self.dim(n) for n in range(lo, hi + 1)}
        diff = {n: self.differential(n) for n in range(lo, hi)}
        action = {f"xi{i + 1}": {n: self.lambda_action(i, n) for n in range(lo + 1, hi + 1)}
                  for i in range(self.r)}
        return DgModule(self.L, self.window, dims, diff, action, certified=self.certified, name="F")

    def actions_commute(self):
        F = self.S.field
        lo, hi = self.window
        for n in range(lo + 1, hi - 1):
            for i in range(self.r):
                for j in range(self.r):
                    a = F.matmul(self.lambda_action(j, n + 2), self.s_action(i, n))
                    b = F.matmul(self.s_action(i, n - 1), self.lambda_action(j, n))
                    if not np.array_equal(a, b):
                        return False
        return True


def bgg_bimodule(r: int, N: int, p: int = 2) -> BGGBimodule:
    return BGGBimodule(r, N, p)


@dataclass
class SemifreeSModule:
    """``⊕ S·e_j`` with ``|e_j| = degrees[j]`` and ``d(e_j) = Σ_k diff[k][j] e_k`` (entries in ``S``)."""
    r: int
    degrees: list
    diff: list
    p: int = 2

    @classmethod
    def free(cls, r, degrees=(0,), p=2):
        n = len(degrees)
        return cls(r, list(degrees), [[{} for _ in range(n)] for _ in range(n)], p)


def bgg_apply(M: SemifreeSModule, N: int) -> DgModule:
    """``M ⊗_S F`` for a semifree ``M`` (the derived tensor), as a dg ``Λ``-module.

    Degree ``n`` is ``⊕_j F^{n - |e_j|}``; the differential is
    ``d(e_j ⊗ f) = Σ_k e_k ⊗ s_{kj}·f + (-1)^{|e_j|} e_j ⊗ d_F f``.
    """
    Fb = bgg_bimodule(M.r, N, M.p)
    S = Fb.S
    degs = M.degrees
    lo = Fb.window[0] + min(degs)
    hi = max(degs)
    cert_lo = max(Fb.certified[0] + d for d in degs)
    dims, offs = {}, {}
    for n in range(lo, hi + 1):
        pos = 0
        offs[n] = []
        for d in degs:
            offs[n].append(pos)
            pos += Fb.dim(n - d)
        dims[n] = pos

    def s_element(elem, n):
        """Action of an element of ``S`` on ``F^n``."""
        out = None
        for m, c in elem.items():
            mat = np.eye(Fb.dim(n), dtype=np.int64)
            deg = n
            for i, e in enumerate(m):
                for _ in range(e):
                    mat = Fb.s_action(i, deg).dot(mat) % M.p
                    deg += 2
            out = c * mat if out is None else out + c * mat
        return out % M.p if out is not None else None

    diff = {}
    for n in range(lo, hi):
        D = np.zeros((dims[n + 1], dims[n]), dtype=np.int64)
        for j, dj in enumerate(degs):
            src = slice(offs[n][j], offs[n][j] + Fb.dim(n - dj))
            if Fb.dim(n - dj) == 0:
                continue
            if Fb.dim(n + 1 - dj):
                blk = Fb.differential(n - dj)
                D[offs[n + 1][j]:offs[n + 1][j] + blk.shape[0], src] += blk if dj % 2 == 0 else -blk
            for k, dk in enumerate(degs):
                elem = M.diff[k][j]
                if not elem:
                    continue
                deg_s = S.degree(next(iter(elem)))
                if dj - dk + 1 != deg_s:
                    raise DgError("semifree differential has the wrong degree")
                blk = s_element(elem, n - dj)
                if blk is not None and blk.size:
                    D[offs[n + 1][k]:offs[n + 1][k] + blk.shape[0], src] += blk
        diff[n] = D % M.p
    action = {}
    for i in range(M.r):
        name = f"xi{i + 1}"
        action[name] = {}
        for n in range(lo + 1, hi + 1):
            A = np.zeros((dims[n - 1], dims[n]), dtype=np.int64)
            for j, dj in enumerate(degs):
                if Fb.dim(n - dj) and Fb.dim(n - 1 - dj):
                    blk = Fb.lambda_action(i, n - dj)
                    A[offs[n - 1][j]:offs[n - 1][j] + blk.shape[0],
                      offs[n][j]:offs[n][j] + blk.shape[1]] = blk
            action[name][n] = A
    return DgModule(Fb.L, (lo, hi), dims, diff, action, certified=(cert_lo, hi), name="M⊗F")


# Ext over the exterior algebra

def _free_degrees(L: DgAlgebra, gen_degrees):
    """Basis of ``⊕ L·e_j`` as (generator, monomial) with total degrees."""
    out = []
    lo = min(L.degrees) * L.ngens if L.ngens else 0
    for j, dg in enumerate(gen_degrees):
        for n in range(lo, 1):
            for m in L.basis(n):
                out.append((j, m, dg + n))
    return out


def ext_over_dg(L: DgAlgebra, top: int):
    """``dim Ext^n_Λ(k, k)`` for ``n ≤ top`` from a minimal semifree resolution of ``k``.

    ``Λ`` must have zero differential and generators of negative degree.
    The resolution is built one homological step at a time; a generator
    in step ``i`` with internal degree ``q`` contributes to ``Ext^{i - q}``.
    """
    if any(L.d_gen[i] for i in range(L.ngens)) or any(d >= 0 for d in L.degrees):
        raise DgError("expected a finite exterior algebra with zero differential")
    F = L.field
    p = L.p
    dims = {n: 0 for n in range(top + 1)}
    dims[0] = 1
    gen_deg = [0]
    # current map: kernel of the augmentation L → k
    basis = _free_degrees(L, gen_deg)
    kernel = [np.eye(len(basis), dtype=np.int64)[:, c] for c, (j, m, _) in enumerate(basis) if any(m)]
    step = 0
    while step < top:
        step += 1
        if not kernel:
            break
        K = np.array(kernel, dtype=np.int64).T
        # radical of the kernel: images under left multiplication by generators
        rad_cols = []
        for i in range(L.ngens):
            Mi = _left_mult(L, basis, i)
            rad_cols.append(Mi.dot(K) % p)
        R = np.hstack(rad_cols) if rad_cols else np.zeros((K.shape[0], 0), dtype=np.int64)
        pick = _greedy_columns(R, K, F)
        new = K[:, pick]
        new_deg = []
        for c in range(new.shape[1]):
            degs = {basis[row][2] for row in np.nonzero(new[:, c])[0]}
            if len(degs) != 1:
                raise DgError("kernel generator is not homogeneous")
            new_deg.append(degs.pop())
        for q in new_deg:
            n = step - q
            if 0 <= n <= top:
                dims[n] += 1
        # next map: free module on the new generators → current free module
        nbasis = _free_degrees(L, new_deg)
        D = np.zeros((len(basis), len(nbasis)), dtype=np.int64)
        for col, (j, m, _) in enumerate(nbasis):
            D[:, col] = _apply_left(L, basis, m, new[:, j])
        kernel_mat = la.kernel_matrix(D, F)
        kernel = _homogeneous_columns(kernel_mat, nbasis, F)
        basis = nbasis
    return [dims[n] for n in range(top + 1)]


def _left_mult(L, basis, i):
    """Left multiplication by generator ``i`` on a free module basis."""
    idx = {(j, m): k for k, (j, m, _) in enumerate(basis)}
    M = np.zeros((len(basis), len(basis)), dtype=np.int64)
    g = L.gen(i)
    for col, (j, m, _) in enumerate(basis):
        for m2, c in L.mul(g, {m: 1}).items():
            M[idx[(j, m2)], col] = c
    return M % L.p


def _apply_left(L, basis, m, vec):
    """``x^m · v`` for ``v`` in the free module with the given basis."""
    idx = {(j, mm): k for k, (j, mm, _) in enumerate(basis)}
    out = np.zeros(len(basis), dtype=np.int64)
    for row in np.nonzero(vec)[0]:
        j, mm, _ = basis[row]
        for m2, c in L.mul({m: 1}, {mm: 1}).items():
            out[idx[(j, m2)]] = (out[idx[(j, m2)]] + c * vec[row]) % L.p
    return out


def _homogeneous_columns(K, basis, F):
    """Split a kernel basis into homogeneous pieces (the map preserves degree)."""
    degs = sorted({b[2] for b in basis})
    out = []
    for d in degs:
        rows = [i for i, b in enumerate(basis) if b[2] == d]
        if not rows or K.shape[1] == 0:
            continue
        # kernel vectors supported in degree d: project and re-span
        P = K[rows, :]
        B = la.row_space_basis(P.T, F) if P.size else np.zeros((0, len(rows)), dtype=np.int64)
        for v in B:
            full = np.zeros(len(basis), dtype=np.int64)
            full[rows] = v
            out.append(full)
    return out


def symmetric_dims(r: int, top: int, degree: int = 2):
    return [comb(n // degree + r - 1, r - 1) if n % degree == 0 else 0 for n in range(top + 1)]


def binomial_dims(r: int):
    return [comb(r, n) for n in range(r + 1)]
