import numpy as np
import pytest

from ttgeom.corpus import line_module, module_corpus
from ttgeom.modrep import (GroupData, GroupModule, ModuleValidationError, Subgroup, direct_sum, dual,
                           elementary_abelian, find_isomorphism, free_module, frobenius_witness,
                           from_matrices, full_subgroup, induce, restrict, split_free, tensor_diag,
                           trivial_module)
from ttgeom.field import GF


def iso(M, N):
    return M.dim == N.dim and find_isomorphism(M, N) is not None


def test_trivial_and_free(v22):
    k = trivial_module(v22)
    assert all(np.array_equal(g, [[1]]) for g in k.gens)
    F = free_module(v22)
    assert F.dim == 4 and F.is_free()
    # monomial basis z^a: g_i sends z^a to z^a + z^(a + e_i)
    z1, z2 = F.z
    e0 = np.array([1, 0, 0, 0])
    orbit = np.array([e0, z1 @ e0 % 2, z2 @ e0 % 2, z1 @ z2 @ e0 % 2])
    assert sorted(map(tuple, orbit)) == sorted(map(tuple, np.eye(4, dtype=int)))


def test_noncommuting_rejected(v22):
    a = [[1, 1], [0, 1]]
    b = [[1, 0], [1, 1]]
    with pytest.raises(ModuleValidationError, match="g1\\*g2"):
        from_matrices(v22, [a, b])


def test_order_checked():
    G = GroupData(GF(3), [3])
    with pytest.raises(ModuleValidationError):
        GroupModule(G, [[[1, 1], [0, 2]]])


def test_tensor_examples(v22, rng):
    M = module_corpus(v22, 1, rng)[0]
    k = trivial_module(v22)
    assert iso(tensor_diag(k, M), M)
    FM = tensor_diag(free_module(v22), M)
    assert FM.dim == 4 * M.dim and FM.is_free()
    N = line_module(v22, (1, 0))
    assert tensor_diag(M, N).dim == M.dim * N.dim


def test_dual_examples(v32, rng):
    k = trivial_module(v32)
    assert dual(k).same_action(k)
    M = module_corpus(v32, 1, rng)[0]
    assert iso(dual(dual(M)), M)
    assert dual(free_module(v32)).is_free()


def test_restrict_examples(v22, rng):
    M = module_corpus(v22, 1, rng)[0]
    assert restrict(M, full_subgroup(v22)).same_action(M)
    for basis in ([(1, 0)], [(0, 1)], [(1, 1)]):
        H = Subgroup(v22, basis)
        R = restrict(free_module(v22), H)
        assert R.is_free() and R.free_rank() == 2
        assert restrict(trivial_module(v22), H).same_action(trivial_module(H.group))


def test_induce_examples(v22):
    H = Subgroup(v22, [(1, 1)])
    Y = line_module(H.group, (1,))
    assert induce(Y, H).dim == 2 * Y.dim
    full = full_subgroup(v22)
    M = line_module(v22, (1, 1))
    assert iso(induce(M, full), M)
    trivial_sub = Subgroup(v22, [])
    assert iso(induce(trivial_module(trivial_sub.group), trivial_sub), free_module(v22))


def test_frobenius_examples(v32, rng):
    H = Subgroup(v32, [(1, 2)])
    X = module_corpus(v32, 1, rng, max_dim=5)[0]
    w = frobenius_witness(X, trivial_module(H.group), H)
    assert w.verify() and w.source.dim == 3 * X.dim
    full = full_subgroup(v32)
    assert frobenius_witness(X, X, full).verify()
    Y = line_module(H.group, (1,))
    assert frobenius_witness(trivial_module(v32), Y, H).verify()


def test_split_free(v22):
    L = line_module(v22, (1, 1))
    M = direct_sum(L, free_module(v22, 2))
    core, _, s = split_free(M)
    assert s == 2 and iso(core, L)


def test_subgroup_validation(v22):
    with pytest.raises(ModuleValidationError):
        Subgroup(v22, [(1, 0), (1, 0)])
    assert Subgroup(elementary_abelian(3, 2), [(2, 2)]).group.order == 3
