import numpy as np

from ttgeom.corpus import line_module
from ttgeom.field import GF
from ttgeom.homalg import koszul_object
from ttgeom.linalg import rank
from ttgeom.modrep import elementary_abelian, free_module, trivial_module
from ttgeom.rankvariety import (RankPoint, cross_check, is_free_at, point_in_supp, projective_points,
                                shifted_matrix, supp_points)

G22 = elementary_abelian(2, 2)
G32 = elementary_abelian(3, 2)


def test_shifted_matrix_examples():
    F = GF(2)
    U = shifted_matrix(trivial_module(G22), RankPoint((1, 1), F))
    assert not U.any()
    M = free_module(G22)
    U = shifted_matrix(M, RankPoint((1, 0), F))
    assert np.array_equal(U, M.z[0]) and rank(U, F) == 2
    assert RankPoint((0, 2), GF(3)).coords == (0, 1)


def test_projective_point_count():
    assert len(list(projective_points(2, 2, 2))) == 5
    assert len(list(projective_points(3, 3, 1))) == 13


def test_freeness_examples():
    F4 = GF(2, 2)
    pts = list(projective_points(2, 2, 2))
    assert all(is_free_at(free_module(G22), a) for a in pts)
    assert not any(is_free_at(trivial_module(G22), a) for a in pts)
    L = line_module(G22, (0, 1))  # free along z_1, not along z_2
    assert is_free_at(L, RankPoint((1, 0), F4))
    assert not is_free_at(L, RankPoint((0, 1), F4))


def test_supp_points_examples():
    assert all(supp_points(trivial_module(G22), 2).members)
    assert not any(supp_points(free_module(G22), 2).members)
    K = koszul_object(trivial_module(G22), "eta1")
    cls = supp_points(K, 2)
    # V(eta1) is the line alpha_1 = 0
    assert [pt.coords for pt in cls.support()] == [(0, 1)]


def test_cross_check_examples():
    rep = cross_check(trivial_module(G32))
    assert rep.ok and not rep.advisories
    rep = cross_check(free_module(G32))
    assert rep.ok and rep.certified_in_supp == 0
    assert any("conical" in n for n in rep.notes)


def test_line_modules_over_f9():
    F9 = GF(3, 2)
    for alpha in [(1, 0), (0, 1), (1, 1), (1, 2)]:
        L = line_module(G32, alpha)
        rep = cross_check(L)
        assert rep.ok
        assert point_in_supp(L, RankPoint(alpha, F9))
        others = [pt for pt in projective_points(3, 2, 2) if point_in_supp(L, pt)]
        assert len(others) == 1
