"""Ext groups with their cohomology-ring action, supports, and Koszul objects.

Everything is computed from the standard resolution ``P`` of ``k``.  For a
complex ``N`` the groups ``Ext*(k, N)`` are the cohomology of the total
complex of ``Hom_A(P_n, N^m)`` (total degree ``n + m``, differential
``δ + (-1)^n ∂``); a cocycle ``α`` of ``Ext*(k, k)`` acts by precomposition
with its lift ``f^α`` and the sign ``(-1)^{m|α|}``.

Supports are read off the commutative part of the cohomology ring: the
generators ``η_i`` for ``p = 2`` and ``θ_i`` for odd ``p``.  Odd-degree
classes are nilpotent, so this does not change any closed set.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import groebner as gb
from . import linalg as la
from .complexes import WindowedComplex, complex_tensor, cone, hom_complex, stable_model
from .modrep import GroupData, GroupModule, core, direct_sum, free_module, submodule, trivial_module
from .polyring import (GradedPolyRing, Generator, HomogeneousIdeal, Polynomial,
                       commutative_reduction)
from .resolution import (LiftError, StandardResolution, _greedy_columns, lift_cocycle,
                         minimal_resolution)
from .speclattice import SpecSet, v_of

DEFAULT_DEGREE_BOUND = 10
DEFAULT_STABILIZE = 3


def cohomology_presentation(group: GroupData) -> GradedPolyRing:
    """Presentation of ``H*(G, k)`` for an abelian p-group ``G = Π Z/q_i``.

    Each factor contributes ``η_i`` (degree 1) and, unless ``q_i = 2``,
    ``θ_i`` (degree 2) with ``η_i² = 0``.  For odd ``p`` the ``η_i`` are odd
    and square to zero by the sign rule.
    """
    p = group.p
    r = group.rank
    gens, rels = [], []
    etas = [f"eta{i + 1}" for i in range(r)]
    for i in range(r):
        gens.append(Generator(etas[i], 1, "odd" if p > 2 else "even"))
    for i, q in enumerate(group.orders):
        if q > 2 or p > 2:
            gens.append(Generator(f"theta{i + 1}", 2, "even"))
    if p == 2:
        rels = [f"{etas[i]}^2" for i, q in enumerate(group.orders) if q > 2]
    base = GradedPolyRing(p, gens, (), name=f"H*({group!r})")
    if rels:
        base = GradedPolyRing(p, gens, [base.parse(t) for t in rels], name=base.name)
    return base


def standard_monomials(ring: GradedPolyRing, d: int):
    """Monomials of degree ``d`` not divisible by a leading term of the relations."""
    mons = ring.monomials_of_degree(d)
    if not ring.relations or not ring.is_commutative():
        return mons
    lead = [gb.leading(g, gb.grevlex_key)[0] for g in ring.relation_basis()]
    return [m for m in mons if not any(all(a <= b for a, b in zip(l, m)) for l in lead)]


class ExtRing:
    """``Ext*(k, k)`` on the standard resolution with named generator cocycles.

    Monomials act through iterated lifts in the ring's generator order, so
    ``cocycle(m)`` for ``m = m' g`` (``g`` the last generator present) is
    ``cocycle(m') ∘ f^g``.
    """

    def __init__(self, group: GroupData):
        self.group = group
        self.resolution = StandardResolution(group)
        self.ring = cohomology_presentation(group)
        self.reduced, self.to_reduced = commutative_reduction(self.ring)
        self._lifts = {}
        self._cocycles = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"ExtRing({self.group!r})"

    @property
    def p(self):
        return self.group.p

    def generator_label(self, name):
        i = int(name.lstrip("etaheta")) - 1
        label = [0] * self.group.rank
        label[i] = 1 if name.startswith("eta") else 2
        return tuple(label)

    def generator_cocycle(self, name):
        label = self.generator_label(name)
        d = sum(label)
        self.resolution.ensure(d)
        v = np.zeros(self.resolution.ranks[d], dtype=np.int64)
        v[self.resolution.index(label)] = 1
        return v

    def dims(self, top):
        self.resolution.ensure(top)
        return self.resolution.ranks[:top + 1]

    def lift(self, name, n):
        """Lift ``f^g_n: P_{n+|g|} → P_n`` of a ring generator."""
        with self._lock:
            maps = self._lifts.get(name, [])
            if len(maps) <= n:
                d = self.ring.generators[self.ring.index(name)].degree
                maps = lift_cocycle(self.resolution, self.generator_cocycle(name), d, max(n, len(maps) + 2))
                self._lifts[name] = maps
            return maps[n]

    def monomial_cocycle(self, exp):
        exp = tuple(exp)
        with self._lock:
            if exp in self._cocycles:
                return self._cocycles[exp]
            if not any(exp):
                v = np.ones(1, dtype=np.int64)
            else:
                last = max(i for i, e in enumerate(exp) if e)
                prev = list(exp)
                prev[last] -= 1
                alpha = self.monomial_cocycle(prev)
                dprev = self.ring.exp_degree(prev)
                F = self.lift(self.ring.names[last], dprev)
                v = F[:, :, 0].dot(alpha) % self.p
            self._cocycles[exp] = v
            return v

    def cocycle(self, f: Polynomial, degree=None):
        """Cocycle on ``P_d`` representing a homogeneous element (zero needs ``degree``)."""
        f = self.ring._coerce(f)
        if not f:
            if degree is None:
                raise ValueError("the zero element needs an explicit degree")
            self.resolution.ensure(degree)
            return np.zeros(self.resolution.ranks[degree], dtype=np.int64), degree
        if not f.is_homogeneous():
            raise ValueError(f"{f} is not homogeneous")
        d = f.degree
        self.resolution.ensure(d)
        v = np.zeros(self.resolution.ranks[d], dtype=np.int64)
        for m, c in f.terms.items():
            v = (v + c * self.monomial_cocycle(m)) % self.p
        return v, d

    def product(self, a, da, b, db):
        """Yoneda product ``a ∘ f^b`` of cocycles of degrees ``da`` and ``db``."""
        maps = lift_cocycle(self.resolution, b, db, da)
        return maps[da][:, :, 0].dot(a) % self.p

    def verify_presentation(self, top):
        """Per-degree check that standard monomials map bijectively onto ``Ext^d``."""
        report = []
        F = self.group.field
        for d in range(top + 1):
            mons = standard_monomials(self.ring, d) if self.ring.is_commutative() else \
                self.ring.monomials_of_degree(d)
            dim = self.dims(d)[d]
            if mons:
                mat = np.array([self.monomial_cocycle(m) for m in mons], dtype=np.int64).T
                rk = la.rank(mat, F)
            else:
                rk = 0
            report.append((d, len(mons), dim, rk == len(mons) == dim))
        return report


_EXT_RINGS = {}
_EXT_LOCK = threading.Lock()


def ext_ring(group: GroupData) -> ExtRing:
    """Shared (cached) cohomology ring of ``group``."""
    key = (group.p, group.orders)
    with _EXT_LOCK:
        if key not in _EXT_RINGS:
            _EXT_RINGS[key] = ExtRing(group)
        return _EXT_RINGS[key]


# Ext(k, N) as a module over the cohomology ring

def _as_complex(X):
    if isinstance(X, WindowedComplex):
        return X
    return WindowedComplex.from_module(X)


@dataclass
class ExtTable:
    """Graded pieces of ``Ext*(k, N)`` up to ``degree_bound`` with the ring action.

    ``bases[t]`` holds representative cocycles (columns) in the total cochain
    space of degree ``t``; ``action[g][t]`` is the matrix of generator ``g``
    from ``Ext^t`` to ``Ext^{t+|g|}`` in those bases.
    """
    source: object
    target: object
    ring: ExtRing
    degree_bound: int
    lo: int
    dims: dict = field(default_factory=dict)
    bases: dict = field(default_factory=dict)
    action: dict = field(default_factory=dict)
    unit: np.ndarray | None = None

    def act(self, exp, t, vec):
        """Apply the monomial ``exp`` (in the reduced ring) to a coordinate vector in degree ``t``."""
        red = self.ring.reduced
        v = np.asarray(vec, dtype=np.int64)
        deg = t
        for i, e in enumerate(exp):
            g = red.names[i]
            for _ in range(e):
                v = self.action[g][deg].dot(v) % self.ring.p
                deg += red.generators[i].degree
        return v


class _TotalComplex:
    """Cochain complex ``Hom_A(P, N)`` for a bounded complex ``N``."""

    def __init__(self, ring: ExtRing, N: WindowedComplex):
        self.ring = ring
        self.N = N
        self.group = ring.group
        self.res = ring.resolution
        self._layout = {}

    def layout(self, t):
        if t not in self._layout:
            parts, offs, pos = [], {}, 0
            for m in range(self.N.lo, self.N.hi + 1):
                n = t - m
                if n < 0 or not self.N.dim(m):
                    continue
                self.res.ensure(n)
                size = self.res.ranks[n] * self.N.dim(m)
                if size == 0:
                    continue
                parts.append((n, m))
                offs[m] = pos
                pos += size
            self._layout[t] = (parts, offs, pos)
        return self._layout[t]

    def _coeff_block(self, C, module: GroupModule):
        """Matrix of ``φ ↦ (e_j ↦ Σ_k C[j,k] φ(e_k))`` on ``module^{b_src}`` → ``module^{b_tgt}``."""
        bt, bs, _ = C.shape  # C maps generators of the larger resolution term to the smaller
        acts = module.monomial_actions
        dm = module.dim
        if bt == 0 or bs == 0:
            return np.zeros((bt * dm, bs * dm), dtype=np.int64)
        B = np.einsum("jka,auv->jukv", C, acts, optimize=True)
        return B.reshape(bt * dm, bs * dm) % self.group.p

    def differential(self, t):
        parts, offs, size = self.layout(t)
        parts1, offs1, size1 = self.layout(t + 1)
        p = self.group.p
        M = np.zeros((size1, size), dtype=np.int64)
        for n, m in parts:
            Nm = self.N.term(m)
            b = self.res.ranks[n]
            col = slice(offs[m], offs[m] + b * Nm.dim)
            if m in offs1:  # δ: (n, m) → (n+1, m)
                self.res.ensure(n + 1)
                blk = self._coeff_block(self.res.diffs[n + 1], Nm)
                M[offs1[m]:offs1[m] + blk.shape[0], col] += blk
            if m + 1 in offs1 and self.N.dim(m + 1):  # (-1)^n ∂: (n, m) → (n, m+1)
                blk = np.kron(np.eye(b, dtype=np.int64), self.N.diff(m))
                if n % 2:
                    blk = -blk
                M[offs1[m + 1]:offs1[m + 1] + blk.shape[0], col] += blk
        return M % p

    def action(self, name, t):
        g = self.ring.ring.generators[self.ring.ring.index(name)]
        e = g.degree
        parts, offs, size = self.layout(t)
        parts1, offs1, size1 = self.layout(t + e)
        p = self.group.p
        M = np.zeros((size1, size), dtype=np.int64)
        for n, m in parts:
            if m not in offs1:
                continue
            Nm = self.N.term(m)
            blk = self._coeff_block(self.ring.lift(name, n), Nm)
            if (m * e) % 2:
                blk = -blk
            b = self.res.ranks[n]
            M[offs1[m]:offs1[m] + blk.shape[0], offs[m]:offs[m] + b * Nm.dim] += blk
        return M % p


def ext_table(ring: ExtRing, N, degree_bound: int, source=None, unit_cochain=None) -> ExtTable:
    """``Ext^t(k, N)`` for ``t ≤ degree_bound`` with the action of the reduced-ring generators.

    For a complex ``N`` the lowest relevant total degree is ``N.lo``.
    """
    N = _as_complex(N)
    F = ring.group.field
    T = _TotalComplex(ring, N)
    lo = N.lo
    D = degree_bound
    table = ExtTable(source=source if source is not None else ring.group, target=N, ring=ring,
                     degree_bound=D, lo=lo)
    diffs = {t: T.differential(t) for t in range(lo - 1, D + 1)}
    solvers = {}
    for t in range(lo, D + 1):
        Z = la.kernel_matrix(diffs[t], F)
        B = diffs[t - 1]
        pick = _greedy_columns(B, Z, F)
        H = Z[:, pick]
        table.dims[t] = H.shape[1]
        table.bases[t] = H
        solvers[t] = np.hstack([B, H])
    red = ring.reduced

    def coords(t, vecs):
        if t not in solvers or table.dims[t] == 0:
            return np.zeros((0, vecs.shape[1]), dtype=np.int64)
        X = la.solve_many(solvers[t], vecs, F)
        if X is None:
            raise LiftError(f"action image is not a cocycle in degree {t}")
        return X[-table.dims[t]:]

    for g in red.generators:
        if D - g.degree >= lo:
            ring.lift(g.name, D - g.degree - lo)  # one lift to full depth instead of repeated extensions
        table.action[g.name] = {}
        for t in range(lo, D - g.degree + 1):
            if table.dims[t] == 0:
                table.action[g.name][t] = np.zeros((table.dims[t + g.degree], 0), dtype=np.int64)
                continue
            img = T.action(g.name, t).dot(table.bases[t]) % ring.p
            table.action[g.name][t] = coords(t + g.degree, img)
    if unit_cochain is not None and 0 in table.dims:
        table.unit = coords(0, unit_cochain.reshape(-1, 1))[:, 0]
    return table


def r_action_table(X, degree_bound: int = DEFAULT_DEGREE_BOUND) -> ExtTable:
    """``Ext*(X, X)`` as ``Ext*(k, End_k X)`` with the ring action and the class of ``id_X``."""
    C = _as_complex(X)
    C.require_window(C.lo, C.hi)
    ring = ext_ring(C.group)
    E, ident = hom_complex(C, C)
    # the identity sits in degree 0 of End, paired with P_0 = A (one generator)
    unit = None
    if ident is not None:
        T = _TotalComplex(ring, E)
        _, offs, size = T.layout(0)
        unit = np.zeros(size, dtype=np.int64)
        if 0 in offs:
            unit[offs[0]:offs[0] + len(ident)] = ident
    return ext_table(ring, E, degree_bound, source=X, unit_cochain=unit)


# annihilators and supports

@dataclass
class AnnihilatorResult:
    ideal: HomogeneousIdeal
    degree_bound: int
    stabilized: bool
    window: tuple
    history: list
    generator_degrees: list
    method: str

    @property
    def ring(self):
        return self.ideal.ring


def _kernel_combinations(cols, field):
    """Kernel vectors of the matrix with the given columns."""
    if not cols:
        return []
    mat = np.array(cols, dtype=np.int64).T
    if mat.shape[0] == 0:
        return [v for v in np.eye(len(cols), dtype=np.int64)]
    return la.kernel_basis(mat, field)


def _poly_from(ring, mons, vec):
    return Polynomial(ring, {m: int(c) for m, c in zip(mons, vec) if c % ring.p})


def _module_generators(table: ExtTable, top):
    """Minimal generators (degree, coordinate vector) of ``Ext^{≤top}`` over the reduced ring."""
    F = table.ring.group.field
    red = table.ring.reduced
    gens = []
    for t in range(table.lo, top + 1):
        dim = table.dims.get(t, 0)
        if dim == 0:
            continue
        imgs = [table.action[g.name][t - g.degree] for g in red.generators
                if t - g.degree >= table.lo and table.dims.get(t - g.degree, 0)]
        sub = np.hstack(imgs) if imgs else np.zeros((dim, 0), dtype=np.int64)
        for c in _greedy_columns(sub, np.eye(dim, dtype=np.int64), F):
            v = np.zeros(dim, dtype=np.int64)
            v[c] = 1
            gens.append((t, v))
    return gens


def _ann_from_generators(table: ExtTable, top):
    """Annihilator of ``Ext^{≤top}`` computed generator by generator.

    Generators killed by every ring generator only contribute the closed
    point and do not constrain the degree range; for the others the
    annihilator is exact in degrees ``≤ top - (max generator degree)``.
    """
    ring = table.ring
    red = ring.reduced
    F = ring.group.field
    gens = _module_generators(table, top)
    if not gens:
        return HomogeneousIdeal(red, [red.one()]), []
    relevant = []
    for t, v in gens:
        killed = True
        for g in red.generators:
            if t + g.degree > top:
                killed = False
                break
            if np.any(table.act(tuple(int(i == red.index(g.name)) for i in range(red.ngens)), t, v)):
                killed = False
                break
        if not killed:
            relevant.append((t, v))
    if not relevant:
        return HomogeneousIdeal(red, red.gens()), [t for t, _ in gens]
    tmax = max(t for t, _ in relevant)
    ann = []
    for d in range(1, top - tmax + 1):
        mons = standard_monomials(red, d)
        if not mons:
            continue
        cols = []
        for m in mons:
            cols.append(np.concatenate([table.act(m, t, v) for t, v in relevant]))
        for k in _kernel_combinations(cols, F):
            f = _poly_from(red, mons, k)
            if f:
                ann.append(f)
    ideal = HomogeneousIdeal(red, ann)
    return HomogeneousIdeal(red, ideal.groebner()), [t for t, _ in relevant]


def _ann_from_unit(table: ExtTable, top):
    """Kernel of ``r ↦ r·id`` in degrees ``1..top`` (exact in that range)."""
    ring = table.ring
    red = ring.reduced
    F = ring.group.field
    if table.unit is None or not np.any(table.unit):
        return HomogeneousIdeal(red, [red.one()]), []
    ann = []
    for d in range(1, top + 1):
        mons = standard_monomials(red, d)
        cols = [table.act(m, 0, table.unit) for m in mons]
        for k in _kernel_combinations(cols, F):
            f = _poly_from(red, mons, k)
            if f:
                ann.append(f)
    ideal = HomogeneousIdeal(red, ann)
    return HomogeneousIdeal(red, ideal.groebner()), [0]


def _support_object(X):
    """The module or complex whose Ext groups are computed for supports."""
    if isinstance(X, WindowedComplex):
        if X.model is not None:
            return X.model
        return X
    return X


def annihilator_candidate(X, degree_bound: int = DEFAULT_DEGREE_BOUND,
                          stabilize: int = DEFAULT_STABILIZE, method: str = "module") -> AnnihilatorResult:
    """Homogeneous annihilator of the cohomology of ``X`` up to ``degree_bound``.

    ``method="module"`` uses ``Ext*(k, X)`` as a module over the cohomology
    ring (cheap; free summands are split off first).  ``method="endomorphism"``
    uses the kernel of ``r ↦ r·id_X`` in ``Ext*(X, X)``.  The ideal lives in
    the commutative reduction of the cohomology ring.  Stabilization means the
    closed set ``V(ann)`` did not change over the last ``stabilize`` degree
    bounds.
    """
    obj = _support_object(X)
    group = obj.group
    ring = ext_ring(group)
    red = ring.reduced
    if method == "module":
        if isinstance(obj, GroupModule):
            obj = core(obj) if obj.dim else obj
            if obj.dim == 0 and _support_object(X).dim > 0:
                ideal = HomogeneousIdeal(red, red.gens())
                return AnnihilatorResult(ideal, degree_bound, True, (0, degree_bound), [], [0], method)
        C = _as_complex(obj)
        if C.total_dim() == 0:
            ideal = HomogeneousIdeal(red, [red.one()])
            return AnnihilatorResult(ideal, degree_bound, True, (0, degree_bound), [], [], method)
        table = ext_table(ring, C, degree_bound)
        compute = _ann_from_generators
    elif method == "endomorphism":
        C = _as_complex(obj)
        if C.total_dim() == 0:
            ideal = HomogeneousIdeal(red, [red.one()])
            return AnnihilatorResult(ideal, degree_bound, True, (0, degree_bound), [], [], method)
        table = r_action_table(C, degree_bound)
        compute = _ann_from_unit
    else:
        raise ValueError(f"unknown method {method!r}")
    history = []
    lo_bound = max(table.lo, degree_bound - max(stabilize, 1) + 1)
    results = {}
    for top in range(lo_bound, degree_bound + 1):
        results[top] = compute(table, top)
        history.append((top, results[top][0]))
    ideal, gdeg = results[degree_bound]
    sets = [v_of(a) for _, a in history]
    stable = all(s == sets[-1] for s in sets) and len(sets) >= stabilize
    return AnnihilatorResult(ideal, degree_bound, stable, (lo_bound, degree_bound),
                             [(t, a.key()) for t, a in history], gdeg, method)


def supp(X, degree_bound: int = DEFAULT_DEGREE_BOUND, stabilize: int = DEFAULT_STABILIZE,
         method: str = "module") -> SpecSet:
    """Cohomological support ``V(ann)`` in the spectrum of the reduced cohomology ring."""
    return v_of(annihilator_candidate(X, degree_bound, stabilize, method).ideal)


# Koszul objects

def _omega_basis(ring: ExtRing, d):
    """``Ω^d k = d_d(P_d) ⊆ P_{d-1}`` as a submodule, with its basis rows."""
    res = ring.resolution.ensure(d)
    K = res.kmatrix(d)
    P = free_module(ring.group, res.ranks[d - 1])
    basis = la.row_space_basis(K.T, ring.group.field)
    return submodule(P, basis), basis, K


def _cocycle_functional(ring: ExtRing, alpha, d):
    """``P_d → k``: ``x ↦ Σ_j α_j ε(x_j)`` as a row vector."""
    N = ring.group.order
    row = np.zeros(len(alpha) * N, dtype=np.int64)
    row[::N] = alpha
    return row


def koszul_unit(ring: ExtRing, r, degree=None) -> WindowedComplex:
    """``kos(k, r)``: the cone of ``r: k → Σ^d k`` built on ``T = [Ω^d k → P_{d-1} → ... → P_0]``.

    The result carries a support model: the kernel of ``r̂: Ω^d k → k``
    (free summands removed), or ``k ⊕ Ω^d k`` when ``r = 0``.
    """
    group = ring.group
    F = group.field
    p = group.p
    alpha, d = ring.cocycle(r, degree)
    k = trivial_module(group)
    if d == 0:
        c = int(alpha[0]) % p
        model = GroupModule.zero(group) if c else direct_sum(k, k)
        C = WindowedComplex(group, {0: k})
        return cone({0: np.array([[c]], dtype=np.int64)}, C, WindowedComplex(group, {0: k}), model=model)
    res = ring.resolution.ensure(d)
    omega, obasis, K = _omega_basis(ring, d)
    terms = {-i: free_module(group, res.ranks[i]) for i in range(d)}
    terms[-d] = omega
    diffs = {-i: res.kmatrix(i) for i in range(1, d)}
    diffs[-d] = obasis.T.copy()  # inclusion Ω ⊆ P_{d-1}
    T = WindowedComplex(group, terms, diffs)
    Y = WindowedComplex(group, {-d: k})
    # r̂ on Ω: write each basis vector of Ω as K x, then apply the functional
    func = _cocycle_functional(ring, alpha, d)
    X = la.solve_many(K, obasis.T, F)
    rhat = (func.dot(X) % p).reshape(1, -1)
    if not np.any(alpha):
        model = stable_model(direct_sum(k, omega))
    else:
        ker = la.kernel_matrix(func.reshape(1, -1), F)
        L = submodule(free_module(group, res.ranks[d - 1]), (K.dot(ker) % p).T)
        model = stable_model(L) if L.dim else free_module(group, 1)
    out = cone({-d: rhat}, T, Y, model=model)
    out.name = f"kos(k,{r})"
    return out


def koszul_object(X, r, degree=None) -> WindowedComplex:
    """``kos(X, r) = kos(k, r) ⊗ X`` with its support model."""
    C = _as_complex(X)
    if isinstance(X, GroupModule) and C.model is None:
        C.model = X
    ring = ext_ring(C.group)
    K = koszul_unit(ring, r, degree)
    out = complex_tensor(K, C)
    return out


def koszul_ideal(X, gens, degrees=None) -> WindowedComplex:
    """Iterated Koszul object over the listed generators (in order)."""
    C = _as_complex(X)
    if isinstance(X, GroupModule):
        C.model = X
    for i, g in enumerate(gens):
        C = koszul_object(C, g, None if degrees is None else degrees[i])
    return C


def minimal_betti(M: GroupModule, n: int):
    return minimal_resolution(M, n).betti
