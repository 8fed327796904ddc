"""Specialization-closed subsets of Spec R as finite unions of closed sets.

A :class:`SpecSet` is ``V(a_1) ∪ ... ∪ V(a_n)`` over a commutative graded
ring.  Equality is semantic (``leq`` both ways); the canonical form only
removes components contained in another single component.
"""
from __future__ import annotations

from .polyring import (HomogeneousIdeal, RingHom, commutative_reduction, contract,
                       extend_ideal, radical_membership)


def _as_reduced_ideal(a: HomogeneousIdeal) -> HomogeneousIdeal:
    ring = a.ring
    if ring.is_commutative():
        return a
    red, phi = commutative_reduction(ring)
    return extend_ideal(phi, a)


class SpecSet:
    """Finite union of closed subsets ``V(a_i)`` of ``Spec ring``."""

    def __init__(self, ring, components=(), canonical=False):
        self.ring = ring
        comps = [_as_reduced_ideal(a) for a in components]
        if comps and comps[0].ring is not ring:
            self.ring = comps[0].ring
        self.components = tuple(comps)
        self.canonical = canonical

    # constructors
    @classmethod
    def empty(cls, ring):
        return cls(ring, (), canonical=True)

    @classmethod
    def whole(cls, ring):
        return v_of(HomogeneousIdeal(ring, ()))

    def __repr__(self):
        if not self.components:
            return "SpecSet(∅)"
        return "SpecSet(" + " ∪ ".join(f"V{a!r}" for a in self.components) + ")"

    def describe(self):
        """Stable human-readable form built from reduced Gröbner bases."""
        if not self.components:
            return "empty"
        parts = []
        for a in self.components:
            g = a.groebner()
            parts.append("V(" + ", ".join(map(str, g)) + ")" if g else "Spec R")
        return " ∪ ".join(parts)

    def is_empty(self):
        return all(a.is_unit() for a in self.components)

    def is_whole(self):
        return any(a.is_zero() for a in self.components)

    def __le__(self, other):
        return leq(self, other)

    def __eq__(self, other):
        if not isinstance(other, SpecSet):
            return NotImplemented
        return leq(self, other) and leq(other, self)

    __hash__ = None

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)


def _check_same(U, V):
    if U.ring != V.ring:
        raise ValueError("SpecSets over different rings")


def _closed_leq(a: HomogeneousIdeal, b: HomogeneousIdeal) -> bool:
    """V(a) ⊆ V(b)  ⇔  b ⊆ √a."""
    return all(radical_membership(g, a) for g in b.gens)


def canonicalize(U: SpecSet) -> SpecSet:
    comps = [a for a in U.components if not a.is_unit()]
    if any(a.is_zero() for a in comps):
        return SpecSet(U.ring, [HomogeneousIdeal(U.ring, ())], canonical=True)
    # deterministic order first, so ties between equal components resolve the same way
    comps.sort(key=lambda a: (len(a.groebner()), a.key()))
    kept = []
    for i, a in enumerate(comps):
        redundant = False
        for j, b in enumerate(comps):
            if i == j:
                continue
            if _closed_leq(a, b):
                # drop a when strictly smaller, or when equal and b comes first
                if not _closed_leq(b, a) or j < i:
                    redundant = True
                    break
        if not redundant:
            kept.append(HomogeneousIdeal(U.ring, a.groebner()))
    return SpecSet(U.ring, kept, canonical=True)


def v_of(a: HomogeneousIdeal) -> SpecSet:
    a = _as_reduced_ideal(a)
    return canonicalize(SpecSet(a.ring, [a]))


def meet(U: SpecSet, V: SpecSet) -> SpecSet:
    _check_same(U, V)
    comps = [a + b for a in U.components for b in V.components]
    return canonicalize(SpecSet(U.ring, comps))


def join(U: SpecSet, V: SpecSet) -> SpecSet:
    _check_same(U, V)
    return canonicalize(SpecSet(U.ring, U.components + V.components))


def leq(U: SpecSet, V: SpecSet) -> bool:
    """``U ⊆ V``: each V(a) ⊆ ∪ V(b_j) = V(Π b_j), i.e. Π b_j ⊆ √a."""
    _check_same(U, V)
    if not V.components:
        return all(a.is_unit() for a in U.components)
    prod = V.components[0]
    for b in V.components[1:]:
        prod = prod * b
    return all(_closed_leq(a, prod) for a in U.components)


def equal(U: SpecSet, V: SpecSet) -> bool:
    return leq(U, V) and leq(V, U)


def preimage(phi: RingHom, V: SpecSet) -> SpecSet:
    """``(Spec φ)⁻¹ V`` for ``φ: R → S``; componentwise ``V(φ(a)S)``."""
    psi = reduced_hom(phi)
    comps = [extend_ideal(psi, HomogeneousIdeal(psi.source, a.gens)) for a in V.components]
    return canonicalize(SpecSet(psi.target, comps))


def closed_image(phi: RingHom, W: SpecSet) -> SpecSet:
    """Componentwise ``V(φ⁻¹ b)``.

    Equals the image of ``W`` under ``Spec φ`` when the target is
    module-finite over the image of ``φ`` (the caller's obligation); in
    general it is the closure of that image.
    """
    psi = reduced_hom(phi)
    comps = [contract(psi, HomogeneousIdeal(psi.target, b.gens)) for b in W.components]
    return canonicalize(SpecSet(psi.source, comps))


def reduced_hom(phi: RingHom) -> RingHom:
    """The map induced between commutative reductions."""
    if phi.source.is_commutative() and phi.target.is_commutative():
        return phi
    red_s, _ = commutative_reduction(phi.source)
    red_t, to_red = commutative_reduction(phi.target)
    images = [to_red(phi.images[phi.source.index(n)]) for n in red_s.names]
    return RingHom(red_s, red_t, images, check=False)


def sublattice(sets, max_size: int = 64):
    """Close a list of SpecSets under binary meet and join (semantic dedup)."""
    if not sets:
        return []
    ring = sets[0].ring
    elems = [SpecSet.empty(ring)]
    for s in sets:
        if not any(equal(s, e) for e in elems):
            elems.append(canonicalize(s))
    changed = True
    while changed:
        changed = False
        n = len(elems)
        for i in range(n):
            for j in range(i + 1, n):
                for new in (meet(elems[i], elems[j]), join(elems[i], elems[j])):
                    if not any(equal(new, e) for e in elems):
                        elems.append(new)
                        changed = True
                        if len(elems) > max_size:
                            raise RuntimeError(f"sub-lattice exceeds {max_size} elements")
    return elems


def hasse_dot(elements, labels=None, name="lattice") -> str:
    """DOT text for the Hasse diagram of ``elements`` ordered by ``leq``."""
    n = len(elements)
    labels = labels or [e.describe() for e in elements]
    le = [[leq(elements[i], elements[j]) for j in range(n)] for i in range(n)]
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(n):
        lab = labels[i].replace('"', '\\"')
        lines.append(f'  n{i} [label="{lab}"];')
    for i in range(n):
        for j in range(n):
            if i == j or not le[i][j] or le[j][i]:
                continue
            covered = any(k not in (i, j) and le[i][k] and le[k][j] and not le[k][i] and not le[j][k]
                          for k in range(n))
            if not covered:
                lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
