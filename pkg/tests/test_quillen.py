import numpy as np
import pytest

from ttgeom.corpus import line_module
from ttgeom.homalg import ext_ring, koszul_object
from ttgeom.modrep import Subgroup, elementary_abelian, free_module, full_subgroup, trivial_module
from ttgeom.polyring import GradedPolyRing, RingHom, identity_hom, polynomial_ring
from ttgeom.quillen import (CohomologyPresentation, builtin_cohomology, certify_presentation,
                            elementary_subgroups, f_isomorphism_check, induction_support_check,
                            limit_family_check, restriction_by_comparison, restriction_hom,
                            subgroup_theorem_check)
from ttgeom.modrep import GroupData
from ttgeom.field import GF

G22 = elementary_abelian(2, 2)


def z4_datum():
    src = polynomial_ring(2, "eta, theta", [1, 2], relations=["eta^2"], name="H*(Z/4)")
    tgt = polynomial_ring(2, "x", name="H*(Z/2)")
    return src, tgt, RingHom(src, tgt, ["0", "x^2"])


def test_builtin_presentations():
    assert builtin_cohomology(2, 1).ring.names == ["eta1"]
    R = builtin_cohomology(3, 2).ring
    assert R.names == ["eta1", "eta2", "theta1", "theta2"]
    assert not R.is_commutative()
    ok, presented, computed = certify_presentation(builtin_cohomology(3, 2), elementary_abelian(3, 2), 8)
    assert ok and presented == computed == list(range(1, 10))


def test_restriction_examples():
    same = restriction_hom(np.eye(2, dtype=int), p=2).hom
    assert [str(x) for x in same.images] == ["eta1", "eta2"]
    diag = restriction_hom(Subgroup(G22, [(1, 1)])).hom
    assert [str(x) for x in diag.images] == ["eta1", "eta1"]
    axis = restriction_hom(Subgroup(G22, [(1, 0)])).hom
    assert [str(x) for x in axis.images] == ["eta1", "0"]


@pytest.mark.parametrize("p,basis,cls", [(2, [(1, 1)], "eta1"), (2, [(0, 1)], "eta1*eta2 + eta2^2"),
                                         (3, [(1, 2)], "theta1"), (3, [(1, 1)], "eta1*eta2 + theta2")])
def test_restriction_matches_comparison_maps(p, basis, cls):
    G = elementary_abelian(p, 2)
    got, expected = restriction_by_comparison(Subgroup(G, basis), cls)
    assert np.array_equal(got, expected)


def test_fiso_examples():
    R = polynomial_ring(2, "x, y")
    rep = f_isomorphism_check(identity_hom(R))
    assert rep.verdict == "true" and rep.exponent == 0
    k = GradedPolyRing(2, [], ())
    rep = f_isomorphism_check(RingHom(polynomial_ring(2, "x"), k, [k.zero()]))
    assert rep.verdict == "false"
    assert rep.kernel[0][:2] == ("x", False)
    rep = f_isomorphism_check(z4_datum()[2])
    assert rep.verdict == "true" and rep.exponent == 1


def test_fiso_inconclusive_when_tmax_small():
    # k[y] -> k[x], y -> x^9: every power x^(9m) needs t = 2 at p = 3
    src, tgt = polynomial_ring(3, "y", [9]), polynomial_ring(3, "x")
    rep = f_isomorphism_check(RingHom(src, tgt, ["x^9"]), degree_bound=6, t_max=1)
    assert rep.verdict == "inconclusive"
    rep = f_isomorphism_check(RingHom(src, tgt, ["x^9"]), degree_bound=6, t_max=2)
    assert rep.verdict == "true" and rep.exponent == 2


def test_z4_presentation_certified():
    src, _, _ = z4_datum()
    ok, presented, computed = certify_presentation(CohomologyPresentation(src, "user"), GroupData(GF(2), [4]), 8)
    assert ok and computed == [1] * 9


def test_limit_family():
    subs = elementary_subgroups(G22)
    assert len(subs) == 4 and len(elementary_subgroups(G22, order=2)) == 3
    R = ext_ring(G22).ring
    u = R.parse("eta1^2 + eta1*eta2 + eta2^2")
    family = {"E": u}
    maps = []
    for i, H in enumerate(subs):
        hom = restriction_hom(H).hom
        family[f"H{i}"] = hom(u)
        maps.append(("E", f"H{i}", hom))
    assert limit_family_check({k: R.zero() if k == "E" else v.ring.zero() for k, v in family.items()}, maps).ok
    assert limit_family_check(family, maps).ok
    bad = dict(family)
    bad["H0"] = bad["H0"] + bad["H0"].ring.gens()[0] ** 2
    rep = limit_family_check(bad, maps)
    assert not rep.ok and rep.failures[0]["map"] == "E -> H0"


def test_subgroup_theorem_examples():
    H = Subgroup(G22, [(0, 1)])
    cmp_ = subgroup_theorem_check(trivial_module(G22), H)
    assert cmp_.ok and cmp_.lhs.is_whole()
    cmp_ = subgroup_theorem_check(free_module(G22), H)
    assert cmp_.ok and len(cmp_.lhs.components) == 1 and not cmp_.lhs.is_whole()
    K = koszul_object(trivial_module(G22), "eta1")
    assert subgroup_theorem_check(K.model, H).ok


def test_induction_support():
    G = elementary_abelian(3, 2)
    H = Subgroup(G, [(1, 1)])
    cmp_ = induction_support_check(trivial_module(H.group), H)
    assert cmp_.ok
    cmp_ = induction_support_check(line_module(G, (1, 2)), full_subgroup(G))
    assert cmp_.ok
