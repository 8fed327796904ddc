"""Bounded cochain complexes of ``kG``-modules.

Grading is cohomological: ``d^n: C^n → C^{n+1}``.  Conventions used by
every constructor here:

* suspension ``(ΣC)^n = C^{n+1}`` with differential ``-d``;
* cone of ``f: C → D`` is ``C^{n+1} ⊕ D^n`` with ``[[-d_C, 0], [f, d_D]]``;
* tensor products use ``d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db``.
"""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .modrep import GroupData, GroupModule, ModuleValidationError, dual, tensor_diag


class WindowError(ValueError):
    """A computation needs degrees outside the certified window of a complex."""


def _zero(group, rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


class WindowedComplex:
    """Complex of modules in degrees ``lo..hi`` with a certified window.

    ``model`` optionally holds a module with the same cohomological support
    (used for fast support computations of large Koszul objects).
    """

    def __init__(self, group: GroupData, terms, diffs=None, window=None, model=None, name=None):
        self.group = group
        terms = {int(k): v for k, v in terms.items() if v.dim > 0}
        if any(v.group != group for v in terms.values()):
            raise ModuleValidationError("complex terms over different groups")
        self.terms = terms
        self.lo = min(terms) if terms else 0
        self.hi = max(terms) if terms else -1
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if n in terms and n + 1 in terms:
                d = np.asarray(d, dtype=np.int64) % group.p
                if d.shape != (terms[n + 1].dim, terms[n].dim):
                    raise ModuleValidationError(f"differential d^{n} has shape {d.shape}")
                self.diffs[int(n)] = d
        self.window = tuple(window) if window is not None else (self.lo, self.hi)
        self.model = model
        self.name = name

    @classmethod
    def from_module(cls, M: GroupModule, degree: int = 0):
        return cls(M.group, {degree: M}, {}, model=M, name=M.name)

    def __repr__(self):
        body = ", ".join(f"{n}:{self.term(n).dim}" for n in self.degrees())
        return f"<WindowedComplex [{body}] window={self.window}>"

    def degrees(self):
        return list(range(self.lo, self.hi + 1))

    def term(self, n) -> GroupModule:
        t = self.terms.get(n)
        return t if t is not None else GroupModule.zero(self.group)

    def dim(self, n) -> int:
        t = self.terms.get(n)
        return t.dim if t is not None else 0

    def diff(self, n):
        d = self.diffs.get(n)
        return d if d is not None else _zero(self.group, self.dim(n + 1), self.dim(n))

    def total_dim(self):
        return sum(t.dim for t in self.terms.values())

    def is_module(self):
        return len(self.terms) <= 1 and self.lo == 0

    # checks
    def d_squared_zero(self) -> bool:
        F = self.group.field
        return all(la.is_zero(F.matmul(self.diff(n + 1), self.diff(n))) for n in self.degrees())

    def differentials_linear(self) -> bool:
        F = self.group.field
        for n in self.degrees():
            d = self.diff(n)
            src, tgt = self.term(n), self.term(n + 1)
            for gs, gt in zip(src.gens, tgt.gens):
                if not np.array_equal(F.matmul(d, gs), F.matmul(gt, d)):
                    return False
        return True

    def check(self):
        if not self.differentials_linear():
            raise ModuleValidationError("a differential is not kG-linear")
        if not self.d_squared_zero():
            raise ModuleValidationError("d∘d != 0")
        return self

    def require_window(self, lo, hi):
        if lo < self.window[0] or hi > self.window[1]:
            raise WindowError(f"degrees {lo}..{hi} requested; certified window is "
                              f"{self.window[0]}..{self.window[1]}")

    # cohomology of the complex itself
    def homology_dims(self):
        F = self.group.field
        out = {}
        for n in self.degrees():
            rk_out = la.rank(self.diff(n), F)
            rk_in = la.rank(self.diff(n - 1), F)
            out[n] = self.dim(n) - rk_out - rk_in
        return out

    def homology_module(self, n) -> GroupModule:
        """``H^n`` as a module: cycles modulo boundaries, in a complement basis."""
        from .modrep import quotient_module, submodule
        F = self.group.field
        Z = la.kernel_matrix(self.diff(n), F)
        if Z.shape[1] == 0:
            return GroupModule.zero(self.group)
        cyc = submodule(self.term(n), Z.T)
        B = self.diff(n - 1)
        if B.shape[1] == 0 or la.is_zero(B):
            return cyc
        basis = la.row_space_basis(Z.T, F)
        coords = la.solve_many(basis.T, B, F)
        return quotient_module(cyc, coords.T)

    # constructions
    def shift(self, k: int = 1) -> "WindowedComplex":
        """``Σ^k``: degree ``n`` of the result is degree ``n + k`` of ``self``."""
        sign = -1 if k % 2 else 1
        terms = {n - k: t for n, t in self.terms.items()}
        diffs = {n - k: (sign * d) for n, d in self.diffs.items()}
        model = self.model
        return WindowedComplex(self.group, terms, diffs,
                               window=(self.window[0] - k, self.window[1] - k), model=model)


def stable_model(M: GroupModule) -> GroupModule:
    """``M`` without free summands; a nonzero projective becomes one copy of ``kG``.

    Supports only see the stable class, except that a nonzero projective
    object still has the closed point as support.
    """
    from .modrep import core, free_module
    c = core(M)
    if c.dim == 0 and M.dim > 0:
        return free_module(M.group, 1)
    return c


def _block_diag(mats, rows=None):
    n = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = np.zeros((n, c), dtype=np.int64)
    r0 = c0 = 0
    for m in mats:
        out[r0:r0 + m.shape[0], c0:c0 + m.shape[1]] = m
        r0 += m.shape[0]
        c0 += m.shape[1]
    return out


def _module_sum(mods, group):
    from .modrep import direct_sum
    mods = [m for m in mods if m.dim > 0]
    if not mods:
        return GroupModule.zero(group)
    return mods[0] if len(mods) == 1 else direct_sum(*mods)


def complex_sum(C: WindowedComplex, D: WindowedComplex) -> WindowedComplex:
    if C.group != D.group:
        raise ModuleValidationError("complexes over different groups")
    lo, hi = min(C.lo, D.lo), max(C.hi, D.hi)
    terms = {n: _module_sum([C.term(n), D.term(n)], C.group) for n in range(lo, hi + 1)}
    diffs = {n: _block_diag([C.diff(n), D.diff(n)]) for n in range(lo, hi)}
    window = (max(C.window[0], D.window[0]), min(C.window[1], D.window[1]))
    model = None
    if C.model is not None and D.model is not None:
        model = _module_sum([C.model, D.model], C.group)
    return WindowedComplex(C.group, terms, diffs, window=window, model=model)


def complex_tensor(C: WindowedComplex, D: WindowedComplex) -> WindowedComplex:
    """Diagonal tensor product with the Koszul sign rule."""
    if C.group != D.group:
        raise ModuleValidationError("complexes over different groups")
    group = C.group
    p = group.p
    lo, hi = C.lo + D.lo, C.hi + D.hi
    # summands of degree n: pairs (a, n - a) in increasing a
    layout = {}
    terms = {}
    for n in range(lo, hi + 1):
        pairs = [(a, n - a) for a in range(C.lo, C.hi + 1) if C.dim(a) and D.dim(n - a)]
        offs, pos = {}, 0
        for a, b in pairs:
            offs[a] = pos
            pos += C.dim(a) * D.dim(b)
        layout[n] = (pairs, offs, pos)
        terms[n] = _module_sum([tensor_diag(C.term(a), D.term(b)) for a, b in pairs], group)
    diffs = {}
    for n in range(lo, hi):
        pairs, offs, size = layout[n]
        _, offs1, size1 = layout[n + 1]
        M = np.zeros((size1, size), dtype=np.int64)
        for a, b in pairs:
            ca, db = C.dim(a), D.dim(b)
            col = slice(offs[a], offs[a] + ca * db)
            if a + 1 in offs1 and C.dim(a + 1):
                r0 = offs1[a + 1]
                M[r0:r0 + C.dim(a + 1) * db, col] += np.kron(C.diff(a), np.eye(db, dtype=np.int64))
            if a in offs1 and D.dim(b + 1):
                r0 = offs1[a]
                sign = -1 if a % 2 else 1
                M[r0:r0 + ca * D.dim(b + 1), col] += sign * np.kron(np.eye(ca, dtype=np.int64), D.diff(b))
        diffs[n] = M % p
    window = (max(C.window[0] + D.lo, D.window[0] + C.lo), min(C.window[1] + D.hi, D.window[1] + C.hi))
    model = None
    if C.model is not None and D.model is not None:
        model = stable_model(tensor_diag(C.model, D.model))
    return WindowedComplex(group, terms, diffs, window=window, model=model)


def cone(f, C: WindowedComplex, D: WindowedComplex, model=None) -> WindowedComplex:
    """Mapping cone of the chain map ``f`` (dict degree → matrix ``C^n → D^n``)."""
    group = C.group
    p = group.p
    lo, hi = min(C.lo - 1, D.lo), max(C.hi - 1, D.hi)
    terms = {n: _module_sum([C.term(n + 1), D.term(n)], group) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        fn = f.get(n + 1)
        if fn is None:
            fn = np.zeros((D.dim(n + 1), C.dim(n + 1)), dtype=np.int64)
        top = [(-C.diff(n + 1)) % p, np.zeros((C.dim(n + 2), D.dim(n)), dtype=np.int64)]
        bot = [np.asarray(fn, dtype=np.int64), D.diff(n)]
        diffs[n] = np.block([top, bot]) % p
    return WindowedComplex(group, terms, diffs, model=model)


def is_chain_map(f, C: WindowedComplex, D: WindowedComplex) -> bool:
    F = C.group.field
    for n in range(min(C.lo, D.lo) - 1, max(C.hi, D.hi) + 1):
        fn = f.get(n, np.zeros((D.dim(n), C.dim(n)), dtype=np.int64))
        fn1 = f.get(n + 1, np.zeros((D.dim(n + 1), C.dim(n + 1)), dtype=np.int64))
        if not np.array_equal(F.matmul(D.diff(n), fn), F.matmul(fn1, C.diff(n))):
            return False
    return True


def hom_complex(C: WindowedComplex, D: WindowedComplex) -> tuple:
    """The complex ``Hom_k(C, D)`` with the conjugation action.

    Degree ``n`` is ``⊕_m Hom(C^m, D^{m+n})`` (a map ``T`` stored as the
    vector of ``D^{m+n} ⊗ (C^m)^*``); ``d(T) = d_D T - (-1)^n T d_C``.
    Returns ``(complex, identity_vector)`` where the identity vector lives in
    degree 0 (``None`` unless ``C is D``).
    """
    group = C.group
    p = group.p
    lo, hi = D.lo - C.hi, D.hi - C.lo
    layout, terms = {}, {}
    for n in range(lo, hi + 1):
        pieces = [m for m in range(C.lo, C.hi + 1) if C.dim(m) and D.dim(m + n)]
        offs, pos = {}, 0
        for m in pieces:
            offs[m] = pos
            pos += D.dim(m + n) * C.dim(m)
        layout[n] = (pieces, offs, pos)
        terms[n] = _module_sum([tensor_diag(D.term(m + n), dual(C.term(m))) for m in pieces], group)
    diffs = {}
    for n in range(lo, hi):
        pieces, offs, size = layout[n]
        _, offs1, size1 = layout[n + 1]
        M = np.zeros((size1, size), dtype=np.int64)
        for m in pieces:
            cm, dmn = C.dim(m), D.dim(m + n)
            col = slice(offs[m], offs[m] + dmn * cm)
            if m in offs1:
                r0 = offs1[m]
                M[r0:r0 + D.dim(m + n + 1) * cm, col] += np.kron(D.diff(m + n), np.eye(cm, dtype=np.int64))
            if m - 1 in offs1:
                r0 = offs1[m - 1]
                sign = 1 if n % 2 else -1
                M[r0:r0 + dmn * C.dim(m - 1), col] += sign * np.kron(np.eye(dmn, dtype=np.int64),
                                                                     C.diff(m - 1).T)
        diffs[n] = M % p
    H = WindowedComplex(group, terms, diffs)
    ident = None
    if C is D and 0 in layout:
        pieces, offs, size = layout[0]
        ident = np.zeros(size, dtype=np.int64)
        for m in pieces:
            c = C.dim(m)
            ident[offs[m]:offs[m] + c * c] = np.eye(c, dtype=np.int64).reshape(-1)
    return H, ident
