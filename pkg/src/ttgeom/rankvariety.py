"""Rank varieties: pointwise support membership for elementary abelian groups.

For ``α`` in ``F_q^r`` the shifted element ``u_α = Σ α_i (g_i - 1)`` generates
a cyclic shifted subgroup; ``M`` is free over ``F_q[u_α]/(u_α^p)`` exactly when
its Jordan type is all blocks of size ``p``.  A point lies in the rank
variety when that fails.  This is an independent oracle for
:func:`ttgeom.homalg.supp`: the coordinate ``α_i`` is matched with the
``i``-th generator of the reduced cohomology ring (``η_i`` for ``p = 2``,
``θ_i`` otherwise).  Annihilator generators have prime-field coefficients,
so the Frobenius twist in that correspondence does not move zero sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .complexes import WindowedComplex
from .field import Field, GF, as_field
from .modrep import GroupModule
from .polyring import HomogeneousIdeal, radical_membership

DEFAULT_POINT_BUDGET = 20000


class RankPoint:
    """A projective point ``[α]`` over ``F_{p^m}``, scaled so its first nonzero coordinate is 1."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field):
        field = as_field(field)
        coords = [int(c) for c in coords]
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a point")
        inv = field.inv(lead)
        self.coords = tuple(field.mul(inv, c) for c in coords)
        self.field = field

    def __eq__(self, other):
        return isinstance(other, RankPoint) and (self.coords, self.field) == (other.coords, other.field)

    def __hash__(self):
        return hash((self.coords, self.field))

    def __repr__(self):
        return f"RankPoint({list(self.coords)} over {self.field!r})"

    def describe(self):
        return "(" + ",".join(self.field.format(c) for c in self.coords) + ")"


def projective_points(p: int, r: int, m: int = 1):
    """All points of ``P^{r-1}(F_{p^m})`` in a fixed order (first nonzero slot, then lexicographic)."""
    F = GF(p, m)
    for lead in range(r):
        for tail in itertools.product(range(F.q), repeat=r - lead - 1):
            yield RankPoint((0,) * lead + (1,) + tail, F)


def _model(M):
    if isinstance(M, WindowedComplex):
        if M.model is None:
            if M.is_module:
                return M.term(M.lo)
            raise ValueError("the rank oracle needs a module or a complex with a module model")
        return M.model
    return M


def _require_elementary(M: GroupModule):
    if not M.group.elementary:
        raise ValueError(f"rank varieties need an elementary abelian group, got {M.group!r}")


def shifted_matrix(M, alpha: RankPoint) -> np.ndarray:
    """``U = Σ α_i (G_i - I)`` on ``M ⊗ F_q`` (entries in the field encoding of ``alpha.field``)."""
    M = _model(M)
    _require_elementary(M)
    F = alpha.field
    if F.p != M.group.p or len(alpha.coords) != M.group.rank:
        raise ValueError("point does not match the group")
    U = np.zeros((M.dim, M.dim), dtype=np.int64)
    for a, z in zip(alpha.coords, M.z):
        if a:
            U = F.arr_add(U, F.arr_scale(a, z))
    return U


def is_free_at(M, alpha: RankPoint) -> bool:
    """``M`` is free over ``F_q[u_α]``: ``rank U^{p-1} = dim M / p``."""
    M = _model(M)
    p = M.group.p
    if M.dim == 0 or M.dim % p:
        return M.dim == 0
    U = shifted_matrix(M, alpha)
    return la.rank(la.matpow(U, p - 1, alpha.field), alpha.field) * p == M.dim


def point_in_supp(M, alpha: RankPoint) -> bool:
    M = _model(M)
    return M.dim > 0 and not is_free_at(M, alpha)


@dataclass
class PointClassification:
    field: Field
    points: list
    members: list
    partial: bool = False

    def support(self):
        return [pt for pt, inside in zip(self.points, self.members) if inside]


def supp_points(M, ext_degree: int = 1, budget: int = DEFAULT_POINT_BUDGET) -> PointClassification:
    """Classify every projective point over ``F_{p^m}``; stops (flagged partial) after ``budget`` points."""
    M = _model(M)
    _require_elementary(M)
    F = GF(M.group.p, ext_degree)
    pts, members = [], []
    partial = False
    for pt in projective_points(M.group.p, M.group.rank, ext_degree):
        if len(pts) >= budget:
            partial = True
            break
        pts.append(pt)
        members.append(point_in_supp(M, pt))
    return PointClassification(F, pts, members, partial)


def vanishes_at(ideal: HomogeneousIdeal, alpha: RankPoint):
    """First generator of ``ideal`` not vanishing at ``alpha``, or None."""
    for g in ideal.gens:
        if g.evaluate(alpha.coords, alpha.field):
            return g
    return None


@dataclass
class CrossCheckReport:
    degree_bound: int
    ext_degree: int
    ideal: HomogeneousIdeal
    stabilized: bool
    points_checked: int
    certified_in_supp: int
    hard_failures: list = field(default_factory=list)
    advisories: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    partial: bool = False

    @property
    def ok(self):
        return not self.hard_failures

    def as_dict(self):
        return {
            "degree_bound": self.degree_bound,
            "ext_degree": self.ext_degree,
            "annihilator": [str(g) for g in self.ideal.groebner()],
            "stabilized": self.stabilized,
            "points_checked": self.points_checked,
            "certified_in_supp": self.certified_in_supp,
            "hard_failures": list(self.hard_failures),
            "advisories": list(self.advisories),
            "notes": list(self.notes),
            "partial": self.partial,
        }


def cross_check(M, degree_bound: int = 10, ext_degree: int = 2, stabilize: int = 3,
                budget: int = DEFAULT_POINT_BUDGET, annihilator=None) -> CrossCheckReport:
    """Compare the rank variety of ``M`` over ``F_{p^m}`` with ``V(ann_D)``.

    A point where ``M`` is not free but some annihilator generator does not
    vanish is a hard failure (the degree bound was too small, or a defect).
    So is the converse: a free point inside ``V(ann_D)``.  Components of
    ``V(ann_D)`` without any ``F_{p^m}``-point are advisories.
    """
    from .homalg import annihilator_candidate

    obj = _model(M)
    _require_elementary(obj)
    res = annihilator or annihilator_candidate(M, degree_bound, stabilize)
    ideal = res.ideal
    classes = supp_points(obj, ext_degree, budget)
    report = CrossCheckReport(degree_bound, ext_degree, ideal, res.stabilized,
                              len(classes.points), sum(classes.members), partial=classes.partial)
    in_v = []
    for pt, inside in zip(classes.points, classes.members):
        g = vanishes_at(ideal, pt)
        in_v.append(g is None)
        if inside and g is not None:
            report.hard_failures.append({"point": pt.describe(), "kind": "outside V(ann)",
                                         "witness": str(g)})
        elif not inside and g is None:
            report.hard_failures.append({"point": pt.describe(), "kind": "free point inside V(ann)",
                                         "witness": "rank(U^(p-1)) = dim/p"})
    from .speclattice import v_of
    red = ideal.ring
    irrelevant = list(red.gens())
    for comp in v_of(ideal).components:
        if all(radical_membership(x, comp) for x in irrelevant):
            report.notes.append(f"V({', '.join(map(str, comp.gens))}) is the closed point only; "
                                "it has no rational witness (conical convention)")
            continue
        if not any(vanishes_at(comp, pt) is None for pt in classes.points):
            report.advisories.append(f"no F_{obj.group.p}^{ext_degree} point on V("
                                     + ", ".join(map(str, comp.gens)) + "); raise the extension degree")
    if classes.partial:
        report.notes.append("point budget exhausted; classification is partial")
    return report
