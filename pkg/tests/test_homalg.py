import numpy as np
import pytest

from ttgeom.complexes import WindowedComplex
from ttgeom.homalg import (annihilator_candidate, ext_ring, koszul_ideal, koszul_object, minimal_betti,
                           r_action_table, standard_monomials, supp)
from ttgeom.modrep import GroupModule, elementary_abelian, free_module, trivial_module
from ttgeom.polyring import HomogeneousIdeal
from ttgeom.resolution import lift_cocycle, minimal_resolution
from ttgeom.speclattice import equal, v_of

G21 = elementary_abelian(2, 1)
G22 = elementary_abelian(2, 2)
G31 = elementary_abelian(3, 1)


def V(group, *gens):
    return v_of(HomogeneousIdeal(ext_ring(group).ring, list(gens)))


def test_resolution_examples():
    res = minimal_resolution(free_module(G22), 4)
    assert res.betti == [1, 0, 0, 0, 0]
    res = minimal_resolution(trivial_module(G21), 6)
    assert res.betti == [1] * 7 and res.is_minimal() and res.is_exact()
    assert minimal_betti(trivial_module(G22), 6) == [1, 2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("p,r,expected", [(2, 1, [1] * 8), (2, 2, list(range(1, 9))), (3, 1, [1] * 8)])
def test_ext_ring_dims(p, r, expected):
    E = ext_ring(elementary_abelian(p, r))
    assert E.dims(7) == expected
    assert all(ok for *_, ok in E.verify_presentation(7))
    assert [len(standard_monomials(E.ring, d)) for d in range(8)] == expected


def test_lift_cocycle_examples():
    E = ext_ring(G21)
    res = E.resolution
    zero = lift_cocycle(res, np.zeros(1, dtype=np.int64), 1, 3)
    assert all(not m.any() for m in zero)
    ident = lift_cocycle(res, np.ones(1, dtype=np.int64), 0, 3)
    assert all(m[0, 0, 0] == 1 and not m[0, 0, 1:].any() for m in ident)
    eta = lift_cocycle(res, E.generator_cocycle("eta1"), 1, 3)
    # on k[Z/2] = k[z]/(z^2) the chain map P_{n+1} -> P_n is multiplication by 1 or z depending on parity
    assert all(m.shape == (1, 1, 2) for m in eta)


def test_action_table_examples():
    T = r_action_table(trivial_module(G21), 6)
    assert all(T.dims[t] == 1 for t in range(7))
    for t in range(6):
        assert np.linalg.matrix_rank(T.action["eta1"][t]) == 1
    T = r_action_table(free_module(G22), 4)
    assert T.dims[0] == 4 and all(T.dims[t] == 0 for t in range(1, 5))  # End_G(kG) = kG


def test_annihilator_examples():
    res = annihilator_candidate(trivial_module(G22))
    assert res.ideal.gens == () and res.stabilized
    res = annihilator_candidate(free_module(G22))
    assert equal(v_of(res.ideal), V(G22, "eta1", "eta2"))
    K = koszul_object(trivial_module(G22), "eta1")
    assert equal(v_of(annihilator_candidate(K).ideal), V(G22, "eta1"))


def test_supp_examples():
    assert supp(trivial_module(G22)).is_whole()
    assert equal(supp(free_module(G22)), V(G22, "eta1", "eta2"))
    assert supp(GroupModule.zero(G22)).is_empty()


def test_koszul_examples():
    k = trivial_module(G21)
    K = koszul_object(k, 0, degree=1)
    assert K.model.dim == 2  # k ⊕ Ωk stably
    K = koszul_object(k, "eta1")
    assert K.model.is_free() and K.model.dim == 2
    assert equal(supp(koszul_object(trivial_module(G22), "eta1")), V(G22, "eta1"))


def test_koszul_ideal_examples():
    k = trivial_module(G22)
    assert koszul_ideal(k, []).model is k
    a = supp(koszul_ideal(k, ["eta1", "eta2"]))
    b = supp(koszul_ideal(k, ["eta2", "eta1"]))
    assert equal(a, V(G22, "eta1", "eta2")) and equal(a, b)


def test_odd_prime_support():
    E = ext_ring(elementary_abelian(3, 2))
    K = koszul_ideal(trivial_module(E.group), ["theta1 + theta2"])
    assert equal(supp(K), V(E.group, "theta1 + theta2"))


def test_windowed_complex_shape():
    C = WindowedComplex.from_module(trivial_module(G31))
    assert (C.lo, C.hi) == (0, 0)
