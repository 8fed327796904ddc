"""Cohomology presentations, restriction maps and F-isomorphism checks.

Restriction between elementary abelian groups is linear on generators:
an inclusion ``E' → E`` with matrix ``ι`` (columns are the basis of ``E'``
in coordinates of ``E``) sends ``η_i ↦ Σ_j ι_ij η'_j`` and, for odd ``p``,
``θ_i ↦ Σ_j ι_ij θ'_j``.  :func:`restriction_by_comparison` recomputes the
same map from a chain map between resolutions and is used to test it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import groebner as gb
from . import linalg as la
from .homalg import (DEFAULT_DEGREE_BOUND, DEFAULT_STABILIZE, _cocycle_functional,
                     cohomology_presentation, ext_ring, standard_monomials, supp)
from .modrep import (GroupData, GroupModule, Subgroup, elementary_abelian, free_module, induce,
                     restrict, trivial_module)
from .polyring import (GradedPolyRing, HomogeneousIdeal, Polynomial, RingHom, _graph_basis,
                       contract, radical_membership)
from .rankvariety import RankPoint, point_in_supp, projective_points
from .resolution import minimal_resolution
from .speclattice import closed_image, equal, preimage, reduced_hom

DEFAULT_TMAX = 3


@dataclass
class CohomologyPresentation:
    ring: GradedPolyRing
    provenance: str
    group: GroupData | None = None
    certified_to: int | None = None


def builtin_cohomology(p: int, r: int) -> CohomologyPresentation:
    """``H*((Z/p)^r, F_p)``: ``k[η]`` for ``p = 2``, ``Λ(η) ⊗ k[θ]`` otherwise."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    group = elementary_abelian(p, r)
    return CohomologyPresentation(cohomology_presentation(group), f"builtin({p},{r})", group)


def presentation_dims(ring: GradedPolyRing, top: int):
    """Graded dimensions of a presented ring in degrees ``0..top``."""
    if ring.is_commutative():
        return ring.hilbert_dims(top)
    if ring.relations:
        raise ValueError("dimension count for graded-commutative rings with relations is not supported")
    return [len(ring.monomials_of_degree(d)) if d else 1 for d in range(top + 1)]


def certify_presentation(pres: CohomologyPresentation, group: GroupData, top: int = 8):
    """Compare the presentation's graded dimensions with ``dim Ext^n(k, k)`` from a minimal resolution.

    Returns ``(ok, presented, computed)``; on success ``pres.certified_to`` is set.
    """
    presented = presentation_dims(pres.ring, top)
    computed = minimal_resolution(trivial_module(group), top).betti
    ok = presented == computed
    if ok:
        pres.certified_to = top
        pres.group = group
    return ok, presented, computed


# restriction

@dataclass
class RestrictionDatum:
    source: CohomologyPresentation
    target: CohomologyPresentation
    hom: RingHom
    subgroup: Subgroup | None = None


def restriction_hom(iota, p: int | None = None) -> RestrictionDatum:
    """Restriction ``H*(E) → H*(E')`` for ``E' ≤ E`` given by ``ι`` (or a :class:`Subgroup`)."""
    sub = None
    if isinstance(iota, Subgroup):
        sub = iota
        p = iota.ambient.p
        iota = iota.inclusion_matrix()
    if p is None:
        raise ValueError("the prime is required with a bare inclusion matrix")
    iota = np.asarray(iota, dtype=np.int64) % p
    r, s = iota.shape
    if la.rank(iota, p) != s:
        raise ValueError("inclusion matrix has dependent columns")
    src = builtin_cohomology(p, r)
    tgt = builtin_cohomology(p, s)
    R, S = src.ring, tgt.ring
    images = []
    for name in R.names:
        kind = "theta" if name.startswith("theta") else "eta"
        i = int(name[len(kind):]) - 1
        img = S.zero()
        for j in range(s):
            if iota[i, j]:
                img = img + int(iota[i, j]) * S.gen(f"{kind}{j + 1}")
        images.append(img)
    return RestrictionDatum(src, tgt, RingHom(R, S, images), sub)


def restriction_by_comparison(H: Subgroup, f) -> tuple[np.ndarray, np.ndarray]:
    """Restrict the class ``f`` of ``H*(E)`` to ``H`` through a comparison chain map.

    Lifts ``id_k`` to ``P(H) → P(E)↓_H`` on generators, then composes with the
    cocycle of ``f``.  Returns ``(restricted cocycle, cocycle of res(f))``;
    both resolutions are minimal, so the two agree exactly when the linear
    rule is right.
    """
    G = H.ambient
    ringE, ringH = ext_ring(G), ext_ring(H.group)
    alpha, d = ringE.cocycle(ringE.ring._coerce(f))
    resE, resH = ringE.resolution.ensure(d), ringH.resolution.ensure(d)
    F = G.field
    p = G.p
    NH = H.group.order
    # c_n as a full k-matrix P(H)_n → P(E)_n
    gens = np.zeros((resE.dim(0), 1), dtype=np.int64)
    gens[0, 0] = 1
    full = None
    for n in range(d + 1):
        acts = restrict(free_module(G, resE.ranks[n]), H).monomial_actions
        if n > 0:
            dH = resH.kmatrix(n)
            rhs = full.dot(dH[:, ::NH]) % p if resH.ranks[n] else np.zeros((full.shape[0], 0), dtype=np.int64)
            gens = la.solve_many(resE.kmatrix(n), rhs, F)
            if gens is None:
                raise RuntimeError(f"comparison map does not lift in degree {n}")
        cols = []
        for j in range(gens.shape[1]):
            for a in range(NH):
                cols.append(acts[a].dot(gens[:, j]) % p)
        full = np.array(cols, dtype=np.int64).T.reshape(resE.dim(n), resH.dim(n))
    func = _cocycle_functional(ringE, alpha, d)
    restricted = func.dot(gens) % p
    datum = restriction_hom(H)
    expected, _ = ringH.cocycle(datum.hom(f), d) if datum.hom(f) else (np.zeros(resH.ranks[d], dtype=np.int64), d)
    return restricted, expected


# F-isomorphisms

@dataclass
class FIsoReport:
    verdict: str
    degree_bound: int
    t_max: int
    kernel: list = field(default_factory=list)
    powers: list = field(default_factory=list)

    @property
    def exponent(self):
        ts = [t for _, t in self.powers if t is not None]
        return max(ts, default=0)

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "degree_bound": self.degree_bound,
            "t_max": self.t_max,
            "kernel": [{"element": g, "nilpotent": nil, "t": t} for g, nil, t in self.kernel],
            "powers": [{"element": s, "t": t} for s, t in self.powers],
        }


def _is_zero_in(ring: GradedPolyRing, f: Polynomial) -> bool:
    return not ring.normal_form(f)


def _power(f: Polynomial, n: int, ring: GradedPolyRing) -> Polynomial:
    out = ring.one()
    for _ in range(n):
        out = ring.normal_form(out * f)
    return out


def f_isomorphism_check(phi: RingHom, degree_bound: int = DEFAULT_DEGREE_BOUND,
                        t_max: int = DEFAULT_TMAX) -> FIsoReport:
    """Decide whether ``φ`` is an F-isomorphism, certified up to ``degree_bound``.

    (F1) kernel generators are nilpotent: decided by radical membership,
    with the least ``t ≤ t_max`` such that ``g^{p^t} = 0`` recorded.
    (F2) every standard monomial ``s`` of the target in degrees
    ``1..degree_bound`` has ``s^{p^t}`` in the image for some ``t ≤ t_max``.
    Graded-commutative rings are handled through their commutative
    reductions (odd elements are nilpotent).  A failure of F2 within
    ``t_max`` gives ``inconclusive``; a non-nilpotent kernel element gives
    ``false``.
    """
    psi = reduced_hom(phi)
    src, tgt = psi.source, psi.target
    p = src.p
    report = FIsoReport("true", degree_bound, t_max)
    for g in contract(psi).gens:
        if _is_zero_in(src, g):
            continue
        nil = radical_membership(g, HomogeneousIdeal(src, ()))
        t = next((t for t in range(t_max + 1) if _is_zero_in(src, _power(g, p ** t, src))), None) \
            if nil else None
        report.kernel.append((str(g), nil, t))
        if not nil:
            report.verdict = "false"
    basis, key = _graph_basis(psi)
    nt = tgt.ngens

    def in_image(s):
        lifted = {m + (0,) * src.ngens: c for m, c in s.terms.items()}
        nf = gb.normal_form(lifted, basis, key, p)
        return all(not any(m[:nt]) for m in nf)

    for d in range(1, degree_bound + 1):
        for m in standard_monomials(tgt, d):
            s = tgt.monomial(m)
            t = next((t for t in range(t_max + 1) if in_image(_power(s, p ** t, tgt))), None)
            report.powers.append((str(s), t))
            if t is None and report.verdict == "true":
                report.verdict = "inconclusive"
    return report


# families over elementary abelian subgroups

@dataclass
class LimitFamilyReport:
    ok: bool
    failures: list


def limit_family_check(family: dict, maps) -> LimitFamilyReport:
    """Compatibility of ``{u_E}`` with the supplied maps.

    ``maps`` is a list of ``(source_name, target_name, RingHom)``; each
    must send ``u_source`` to ``u_target`` (compared after reduction by the
    target relations).
    """
    failures = []
    for src, tgt, hom in maps:
        if src not in family or tgt not in family:
            raise KeyError(f"missing family member for map {src} -> {tgt}")
        lhs = hom.target.normal_form(hom(family[src]))
        rhs = hom.target.normal_form(hom.target._coerce(family[tgt]))
        if lhs != rhs:
            failures.append({"map": f"{src} -> {tgt}", "image": str(lhs), "expected": str(rhs)})
    return LimitFamilyReport(not failures, failures)


def elementary_subgroups(group: GroupData, order: int | None = None):
    """All subgroups of an elementary abelian group (optionally of a given order), as :class:`Subgroup`."""
    p, r = group.p, group.rank
    out = []
    seen = set()
    for s in range(1, r + 1):
        if order is not None and p ** s != order:
            continue
        for basis in _rref_bases(p, r, s):
            key = tuple(basis)
            if key not in seen:
                seen.add(key)
                out.append(Subgroup(group, [tuple(int(x) for x in b) for b in basis]))
    return out


def _rref_bases(p, r, s):
    """Reduced row echelon ``s × r`` matrices of full rank over F_p (one per subspace)."""
    import itertools
    for pivots in itertools.combinations(range(r), s):
        free = [(i, j) for i in range(s) for j in range(r)
                if j > pivots[i] and j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            m = np.zeros((s, r), dtype=np.int64)
            for i, c in enumerate(pivots):
                m[i, c] = 1
            for (i, j), v in zip(free, vals):
                m[i, j] = v
            yield [tuple(row) for row in m]


# subgroup theorem and induction

@dataclass
class SupportComparison:
    lhs: object
    rhs: object
    equal: bool
    spot_checks: int = 0
    spot_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.equal and not self.spot_failures


def _push_point(H: Subgroup, beta: RankPoint) -> RankPoint:
    F = beta.field
    iota = H.inclusion_matrix()
    coords = []
    for i in range(iota.shape[0]):
        v = 0
        for j, b in enumerate(beta.coords):
            if iota[i, j] % F.p:
                v = F.add(v, F.mul(F.embed(iota[i, j]), b))
        coords.append(v)
    return RankPoint(coords, F)


def subgroup_theorem_check(X: GroupModule, H: Subgroup, degree_bound: int = DEFAULT_DEGREE_BOUND,
                           stabilize: int = DEFAULT_STABILIZE, ext_degree: int = 1) -> SupportComparison:
    """``supp(X↓_H)`` against ``res*⁻¹ supp(X)``, with rank-point spot checks over ``F_{p^m}``."""
    datum = restriction_hom(H)
    lhs = supp(restrict(X, H), degree_bound, stabilize)
    rhs = preimage(datum.hom, supp(X, degree_bound, stabilize))
    out = SupportComparison(lhs, rhs, equal(lhs, rhs))
    if ext_degree:
        Xh = restrict(X, H)
        for beta in projective_points(H.group.p, H.group.rank, ext_degree):
            out.spot_checks += 1
            a = point_in_supp(Xh, beta)
            b = point_in_supp(X, _push_point(H, beta))
            if a != b:
                out.spot_failures.append(beta.describe())
    return out


def induction_support_check(Y: GroupModule, H: Subgroup, degree_bound: int = DEFAULT_DEGREE_BOUND,
                            stabilize: int = DEFAULT_STABILIZE) -> SupportComparison:
    """``supp(Y↑^G)`` against the closed image of ``supp(Y)`` under restriction."""
    datum = restriction_hom(H)
    lhs = supp(induce(Y, H), degree_bound, stabilize)
    rhs = closed_image(datum.hom, supp(Y, degree_bound, stabilize))
    return SupportComparison(lhs, rhs, equal(lhs, rhs))
