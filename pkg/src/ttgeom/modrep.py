"""Finite-dimensional modules over group algebras of finite abelian p-groups.

A module is stored through the matrices ``G_i`` by which the cyclic
generators act (on column vectors).  The nilpotent operators
``z_i = G_i - I`` generate the augmentation ideal; monomials
``z^a = z_1^{a_1} ... z_r^{a_r}`` with ``a_i < order_i`` form the basis of
``kG`` used throughout the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .field import Field, GF, as_field


class ModuleValidationError(ValueError):
    pass


class GroupData:
    """The abelian p-group ``Z/o_1 × ... × Z/o_r`` over a prime field."""

    def __init__(self, field, orders):
        self.field: Field = as_field(field)
        if not self.field.is_prime_field:
            raise ValueError("group algebras are taken over the prime field")
        self.orders = tuple(int(o) for o in orders)
        p = self.field.p
        for o in self.orders:
            q = o
            while q % p == 0 and q > 1:
                q //= p
            if q != 1 or o < 1:
                raise ValueError(f"order {o} is not a power of {p}")

    @property
    def p(self):
        return self.field.p

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return int(np.prod(self.orders)) if self.orders else 1

    @property
    def elementary(self):
        return all(o == self.p for o in self.orders)

    def __eq__(self, other):
        return isinstance(other, GroupData) and (self.p, self.orders) == (other.p, other.orders)

    def __hash__(self):
        return hash((self.p, self.orders))

    def __repr__(self):
        return "×".join(f"Z/{o}" for o in self.orders) + f" over GF({self.p})" if self.orders else "1"

    # monomial basis of kG
    @cached_property
    def monomials(self):
        """Exponent vectors of the basis ``z^a``, sorted by total degree then lexicographically."""
        mons = list(itertools.product(*[range(o) for o in self.orders]))
        mons.sort(key=lambda a: (sum(a), a))
        return mons

    @cached_property
    def monomial_index(self):
        return {a: i for i, a in enumerate(self.monomials)}

    @cached_property
    def mult_tensor(self):
        """``T[a, b, c] = 1`` when ``z^a z^b = z^c`` (products are monomials or zero)."""
        n = self.order
        T = np.zeros((n, n, n), dtype=np.int64)
        for ia, a in enumerate(self.monomials):
            for ib, b in enumerate(self.monomials):
                c = tuple(x + y for x, y in zip(a, b))
                if all(ci < o for ci, o in zip(c, self.orders)):
                    T[ia, ib, self.monomial_index[c]] = 1
        return T

    @cached_property
    def regular_z(self):
        """Matrices of left multiplication by ``z_i`` on ``kG`` in the monomial basis."""
        n = self.order
        mats = []
        for i in range(self.rank):
            Z = np.zeros((n, n), dtype=np.int64)
            for ia, a in enumerate(self.monomials):
                b = list(a)
                b[i] += 1
                if b[i] < self.orders[i]:
                    Z[self.monomial_index[tuple(b)], ia] = 1
            mats.append(Z)
        return mats

    def norm_exponent(self):
        return tuple(o - 1 for o in self.orders)

    def elements(self):
        """Group elements as exponent vectors, lexicographic."""
        return list(itertools.product(*[range(o) for o in self.orders]))

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def scale(self, a, k):
        return tuple((x * k) % o for x, o in zip(a, self.orders))

    def element_order(self, a):
        k, cur = 1, tuple(a)
        zero = (0,) * self.rank
        while cur != zero:
            cur = self.add(cur, a)
            k += 1
        return k


def elementary_abelian(p: int, r: int) -> GroupData:
    return GroupData(GF(p), [p] * r)


class GroupModule:
    """A ``kG``-module given by commuting generator matrices."""

    def __init__(self, group: GroupData, gens, check=True, name=None, dim=None):
        self.group = group
        F = group.field
        mats = [F.reduce(np.array(g, dtype=np.int64)) for g in gens]
        if len(mats) != group.rank:
            raise ModuleValidationError(f"expected {group.rank} generator matrices, got {len(mats)}")
        if dim is None:
            dim = mats[0].shape[0] if mats else 0
        for i, m in enumerate(mats):
            if m.shape != (dim, dim):
                raise ModuleValidationError(f"generator g{i + 1} is not a {dim}×{dim} matrix")
        self.dim = dim
        self.gens = tuple(mats)
        self.name = name
        for m in self.gens:
            m.setflags(write=False)
        if check:
            self.validate()

    @classmethod
    def zero(cls, group):
        return cls(group, [np.zeros((0, 0), dtype=np.int64)] * group.rank, check=False, dim=0)

    def validate(self):
        F = self.group.field
        I = np.eye(self.dim, dtype=np.int64)
        for i, j in itertools.combinations(range(self.group.rank), 2):
            if not np.array_equal(F.matmul(self.gens[i], self.gens[j]), F.matmul(self.gens[j], self.gens[i])):
                raise ModuleValidationError(f"g{i + 1}*g{j + 1} != g{j + 1}*g{i + 1}")
        for i, (g, o) in enumerate(zip(self.gens, self.group.orders)):
            if not np.array_equal(la.matpow(g, o, F), I):
                raise ModuleValidationError(f"g{i + 1}^{o} != identity")

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<GroupModule{label} dim={self.dim} over {self.group!r}>"

    @property
    def field(self):
        return self.group.field

    @cached_property
    def z(self):
        """Nilpotent operators ``G_i - I``."""
        F = self.field
        I = np.eye(self.dim, dtype=np.int64)
        return [F.arr_sub(g, I) for g in self.gens]

    @cached_property
    def monomial_actions(self):
        """Array of shape ``(|G|, dim, dim)``: the action of each basis monomial ``z^a``."""
        F = self.field
        out = np.zeros((self.group.order, self.dim, self.dim), dtype=np.int64)
        powers = []
        for zi, o in zip(self.z, self.group.orders):
            pw = [np.eye(self.dim, dtype=np.int64)]
            for _ in range(1, o):
                pw.append(F.matmul(pw[-1], zi))
            powers.append(pw)
        for idx, a in enumerate(self.group.monomials):
            m = np.eye(self.dim, dtype=np.int64)
            for i, e in enumerate(a):
                if e:
                    m = F.matmul(m, powers[i][e])
            out[idx] = m
        return out

    def act(self, element):
        """Matrix of an element of ``kG`` given as a coefficient vector over the monomials."""
        element = np.asarray(element, dtype=np.int64)
        return np.tensordot(element, self.monomial_actions, axes=1) % self.field.p

    def norm_matrix(self):
        return self.monomial_actions[self.group.monomial_index[self.group.norm_exponent()]]

    def free_rank(self) -> int:
        """Number of free summands (rank of the norm element)."""
        return la.rank(self.norm_matrix(), self.field)

    def is_free(self) -> bool:
        return self.free_rank() * self.group.order == self.dim

    def is_projective(self) -> bool:
        return self.is_free()

    def same_action(self, other) -> bool:
        return self.dim == other.dim and all(np.array_equal(a, b) for a, b in zip(self.gens, other.gens))


@dataclass(frozen=True)
class ModuleMap:
    source: GroupModule
    target: GroupModule
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64)
        if m.shape != (self.target.dim, self.source.dim):
            raise ModuleValidationError("map has the wrong shape")
        object.__setattr__(self, "matrix", m)

    def is_intertwiner(self) -> bool:
        F = self.source.field
        return all(np.array_equal(F.matmul(self.matrix, gs), F.matmul(gt, self.matrix))
                   for gs, gt in zip(self.source.gens, self.target.gens))

    def is_invertible(self) -> bool:
        return (self.source.dim == self.target.dim
                and la.rank(self.matrix, self.source.field) == self.source.dim)

    def verify(self) -> bool:
        return self.is_intertwiner() and self.is_invertible()


# constructors

def trivial_module(group: GroupData) -> GroupModule:
    return GroupModule(group, [np.eye(1, dtype=np.int64)] * group.rank, check=False, name="k", dim=1)


def free_module(group: GroupData, rank: int = 1) -> GroupModule:
    """``(kG)^rank`` in the monomial basis (regular representation)."""
    n = group.order
    gens = []
    for Z in group.regular_z:
        g = (np.eye(n, dtype=np.int64) + Z) % group.p
        gens.append(np.kron(np.eye(rank, dtype=np.int64), g))
    return GroupModule(group, gens, check=False, name=f"A^{rank}" if rank != 1 else "A", dim=n * rank)


def from_matrices(group: GroupData, mats, name=None) -> GroupModule:
    return GroupModule(group, mats, check=True, name=name)


def from_nilpotents(group: GroupData, zs, name=None) -> GroupModule:
    """Module from commuting nilpotent matrices ``z_i`` (so ``G_i = I + z_i``)."""
    zs = [np.asarray(z, dtype=np.int64) for z in zs]
    n = zs[0].shape[0]
    return GroupModule(group, [(np.eye(n, dtype=np.int64) + z) % group.p for z in zs], name=name)


def direct_sum(*mods) -> GroupModule:
    mods = [m for m in mods]
    group = mods[0].group
    if any(m.group != group for m in mods):
        raise ModuleValidationError("direct sum of modules over different groups")
    gens = []
    for i in range(group.rank):
        blocks = [m.gens[i] for m in mods]
        n = sum(b.shape[0] for b in blocks)
        g = np.zeros((n, n), dtype=np.int64)
        pos = 0
        for b in blocks:
            k = b.shape[0]
            g[pos:pos + k, pos:pos + k] = b
            pos += k
        gens.append(g)
    return GroupModule(group, gens, check=False, dim=sum(m.dim for m in mods))


def tensor_diag(M: GroupModule, N: GroupModule) -> GroupModule:
    """Tensor product over k with the diagonal action ``g ↦ g ⊗ g``."""
    if M.group != N.group:
        raise ModuleValidationError("tensor product of modules over different groups")
    p = M.group.p
    return GroupModule(M.group, [np.kron(a, b) % p for a, b in zip(M.gens, N.gens)], check=False,
                       dim=M.dim * N.dim)


def dual(M: GroupModule) -> GroupModule:
    F = M.field
    return GroupModule(M.group, [la.inverse(g, F).T.copy() for g in M.gens], check=False, dim=M.dim)


def swap_map(M: GroupModule, N: GroupModule) -> ModuleMap:
    """The isomorphism ``M ⊗ N → N ⊗ M``."""
    m, n = M.dim, N.dim
    P = np.zeros((m * n, m * n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            P[j * m + i, i * n + j] = 1
    return ModuleMap(tensor_diag(M, N), tensor_diag(N, M), P)


# subgroups

class Subgroup:
    """Subgroup generated by words (exponent vectors) in the ambient generators.

    The words must generate an internal direct product of the cyclic groups
    they span; ``group`` is that product as a :class:`GroupData`.
    """

    def __init__(self, ambient: GroupData, basis, name=None):
        self.ambient = ambient
        self.basis = tuple(tuple(int(x) % o for x, o in zip(w, ambient.orders)) for w in basis)
        self.name = name
        if any(len(w) != ambient.rank for w in self.basis):
            raise ModuleValidationError("subgroup word has the wrong length")
        orders = [ambient.element_order(w) for w in self.basis]
        self.group = GroupData(ambient.field, orders)
        elems = set(self.elements())
        if len(elems) != self.group.order:
            raise ModuleValidationError("subgroup words are not independent")

    def __repr__(self):
        return f"Subgroup({list(self.basis)})"

    def word_value(self, coeffs):
        g = (0,) * self.ambient.rank
        for c, w in zip(coeffs, self.basis):
            g = self.ambient.add(g, self.ambient.scale(w, c))
        return g

    def elements(self):
        return [self.word_value(c) for c in self.group.elements()]

    @cached_property
    def decomposition(self):
        """Map from ambient element to its exponent vector in the subgroup generators."""
        return {self.word_value(c): c for c in self.group.elements()}

    @property
    def index(self):
        return self.ambient.order // self.group.order

    def coset_representatives(self):
        """First element (lexicographic exponent order) of each coset."""
        seen = set()
        reps = []
        H = self.elements()
        for g in self.ambient.elements():
            if g in seen:
                continue
            reps.append(g)
            for h in H:
                seen.add(self.ambient.add(g, h))
        return reps

    def inclusion_matrix(self):
        """Columns are the generator words (used for cohomology restriction)."""
        return np.array(self.basis, dtype=np.int64).T

    def contains(self, other: "Subgroup") -> bool:
        mine = set(self.elements())
        return all(w in mine for w in other.basis)


def full_subgroup(group: GroupData) -> Subgroup:
    return Subgroup(group, [tuple(int(i == j) for j in range(group.rank)) for i in range(group.rank)])


def _element_action(M: GroupModule, g):
    F = M.field
    m = np.eye(M.dim, dtype=np.int64)
    for G, e in zip(M.gens, g):
        if e:
            m = F.matmul(m, la.matpow(G, e, F))
    return m


def restrict(M: GroupModule, H: Subgroup) -> GroupModule:
    if H.ambient != M.group:
        raise ModuleValidationError("subgroup of a different group")
    return GroupModule(H.group, [_element_action(M, w) for w in H.basis], check=False, dim=M.dim)


def induce(N: GroupModule, H: Subgroup) -> GroupModule:
    """``N ⊗_{kH} kG``: blocks indexed by lexicographic coset representatives."""
    if N.group != H.group:
        raise ModuleValidationError("module is not over the subgroup")
    G = H.ambient
    reps = H.coset_representatives()
    n = N.dim
    m = len(reps)
    coset_of = {}
    Hel = H.elements()
    for c, t in enumerate(reps):
        for h in Hel:
            coset_of[G.add(t, h)] = (c, h)
    gens = []
    for i in range(G.rank):
        e = tuple(int(j == i) for j in range(G.rank))
        g = np.zeros((m * n, m * n), dtype=np.int64)
        for c, t in enumerate(reps):
            c2, h = coset_of[G.add(e, t)]
            # g t = t_{c2} h, so block (c2, c) is the action of h on N
            g[c2 * n:(c2 + 1) * n, c * n:(c + 1) * n] = _element_action(N, H.decomposition[h])
        gens.append(g)
    return GroupModule(G, gens, check=False, dim=m * n)


def hom_space(M: GroupModule, N: GroupModule):
    """Basis of ``Hom_{kG}(M, N)`` as a list of ``N.dim × M.dim`` matrices."""
    F = M.field
    m, n = M.dim, N.dim
    blocks = []
    In, Im = np.eye(n, dtype=np.int64), np.eye(m, dtype=np.int64)
    for gm, gn in zip(M.gens, N.gens):
        # T gm - gn T = 0, row-major vec: (I ⊗ gm^T - gn ⊗ I) vec(T)
        blocks.append((np.kron(In, gm.T) - np.kron(gn, Im)) % F.p)
    if not blocks:
        return [v.reshape(n, m) for v in np.eye(n * m, dtype=np.int64)]
    system = np.vstack(blocks)
    return [v.reshape(n, m) for v in la.kernel_basis(system, F)]


def find_isomorphism(M: GroupModule, N: GroupModule, tries: int = 64, seed: int = 0):
    """An invertible intertwiner ``M → N`` from random combinations of a Hom basis, or None."""
    if M.dim != N.dim:
        return None
    F = M.field
    basis = hom_space(M, N)
    if not basis:
        return None if M.dim else ModuleMap(M, N, np.zeros((0, 0), dtype=np.int64))
    rng = np.random.default_rng(seed)
    stack = np.array(basis)
    for _ in range(tries):
        c = rng.integers(0, F.p, size=len(basis))
        T = np.tensordot(c, stack, axes=1) % F.p
        if la.rank(T, F) == M.dim:
            return ModuleMap(M, N, T)
    return None


class FrobeniusWitnessError(RuntimeError):
    pass


def frobenius_witness(X: GroupModule, Y: GroupModule, H: Subgroup) -> ModuleMap:
    """Explicit isomorphism ``(X↓_H ⊗ Y)↑^G → X ⊗ Y↑^G``."""
    lhs = induce(tensor_diag(restrict(X, H), Y), H)
    rhs = tensor_diag(X, induce(Y, H))
    iso = find_isomorphism(lhs, rhs)
    if iso is None or not iso.verify():
        raise FrobeniusWitnessError("no invertible intertwiner found between the two sides")
    return iso


# free summands

def split_free(M: GroupModule):
    """Decompose ``M ≅ core ⊕ free``.

    Returns ``(core, proj, free_rank)`` where ``proj`` is the matrix of the
    quotient map ``M → M / F`` onto the complement of the free part ``F``.
    """
    F = M.field
    group = M.group
    if M.dim == 0:
        return M, np.zeros((0, 0), dtype=np.int64), 0
    Nm = M.norm_matrix()
    # columns of the norm matrix that are independent: their standard vectors generate free summands
    _, colpiv = la.echelon(Nm, F, reduced=False)
    s = len(colpiv)
    if s == 0:
        return M, np.eye(M.dim, dtype=np.int64), 0
    acts = M.monomial_actions
    vecs = []
    for c in colpiv:
        for a in range(group.order):
            vecs.append(acts[a][:, c])
    Fspan = np.array(vecs, dtype=np.int64)
    E, P = la.echelon(Fspan, F)
    E = E[:len(P)]
    nonpiv = [j for j in range(M.dim) if j not in set(int(x) for x in P)]
    sel = np.zeros((len(P), M.dim), dtype=np.int64)
    for i, c in enumerate(P):
        sel[i, c] = 1
    proj_full = (np.eye(M.dim, dtype=np.int64) - E.T @ sel) % F.p
    proj = proj_full[nonpiv, :]
    lift = np.zeros((M.dim, len(nonpiv)), dtype=np.int64)
    for k, j in enumerate(nonpiv):
        lift[j, k] = 1
    core_gens = [F.matmul(F.matmul(proj, g), lift) for g in M.gens]
    core = GroupModule(group, core_gens, check=False, dim=len(nonpiv))
    return core, proj, s


def core(M: GroupModule) -> GroupModule:
    return split_free(M)[0]


def socle(M: GroupModule) -> np.ndarray:
    """Basis (rows) of the fixed points ``∩ ker z_i``."""
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    ker = la.kernel_matrix(np.vstack(M.z), M.field)
    return ker.T.copy()


def random_module(group: GroupData, dim: int, rng, generators=None) -> GroupModule:
    """Random quotient of a free module with the requested dimension.

    Starting from ``(kG)^t``, random socle vectors are factored out one at a
    time; each step lowers the dimension by one.  Deterministic given ``rng``.
    """
    F = group.field
    n = group.order
    t = generators or max(1, -(-dim // n))
    M = free_module(group, t)
    if dim > M.dim:
        raise ValueError(f"a {t}-generated module has dimension at most {M.dim}")
    while M.dim > dim:
        soc = socle(M)
        c = rng.integers(0, F.p, size=len(soc))
        if not c.any():
            c[rng.integers(len(soc))] = 1
        v = F.matmul(c[None, :], soc)
        M = quotient_module(M, v)
    return M


def quotient_module(M: GroupModule, sub_rows) -> GroupModule:
    """``M / S`` for a submodule ``S`` spanned by the given row vectors."""
    F = M.field
    sub_rows = np.asarray(sub_rows, dtype=np.int64).reshape(-1, M.dim)
    if len(sub_rows) == 0:
        return M
    E, P = la.echelon(sub_rows, F)
    E = E[:len(P)]
    pset = set(int(x) for x in P)
    nonpiv = [j for j in range(M.dim) if j not in pset]
    sel = np.zeros((len(P), M.dim), dtype=np.int64)
    for i, c in enumerate(P):
        sel[i, c] = 1
    proj = ((np.eye(M.dim, dtype=np.int64) - E.T @ sel) % F.p)[nonpiv, :]
    lift = np.zeros((M.dim, len(nonpiv)), dtype=np.int64)
    for k, j in enumerate(nonpiv):
        lift[j, k] = 1
    gens = [F.matmul(F.matmul(proj, g), lift) for g in M.gens]
    return GroupModule(M.group, gens, check=False, dim=len(nonpiv))


def submodule(M: GroupModule, rows) -> GroupModule:
    """The submodule spanned by ``rows`` (must be stable), in its echelon basis."""
    F = M.field
    B = la.row_space_basis(np.asarray(rows, dtype=np.int64).reshape(-1, M.dim), F)
    k = len(B)
    if k == 0:
        return GroupModule.zero(M.group)
    # coordinates: solve B^T c = g b for each basis vector b
    gens = []
    for g in M.gens:
        img = F.matmul(g, B.T)
        coords = la.solve_many(B.T, img, F)
        if coords is None:
            raise ModuleValidationError("span is not a submodule")
        gens.append(coords)
    return GroupModule(M.group, gens, check=False, dim=k)
