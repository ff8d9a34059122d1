import pytest
from hypothesis import given, settings, strategies as st

from helpers import base_corpus, line_module, nonzero_points
from modrep.homalg import omega_power
from modrep.kmodule import (
    ElemAbGroupAlg,
    KModule,
    ModuleError,
    direct_sum,
    dual,
    fixed_points,
    free_module,
    free_rank,
    from_group_matrices,
    generic_module,
    hom_dim,
    hom_module,
    hom_space,
    induce_subset,
    is_projective,
    quotient,
    regular,
    restrict_shifted,
    restrict_subset,
    shifted_free,
    split_free,
    strip_free,
    submodule,
    tensor_diag,
    trivial,
)
from modrep.linalg import Matrix, rank

K4 = ElemAbGroupAlg(2, 2)
E9 = ElemAbGroupAlg(3, 2)


def test_validation_errors_name_the_problem():
    with pytest.raises(ModuleError, match="order"):
        from_group_matrices(2, 1, [[[1, 1], [1, 0]]])
    with pytest.raises(ModuleError, match="commute"):
        from_group_matrices(2, 2, [[[1, 0, 0], [1, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 1, 1]]])
    with pytest.raises(ModuleError):
        from_group_matrices(2, 2, [[[1]]])


def test_regular_module_structure():
    reg = regular(E9)
    assert reg.dim == 9
    assert is_projective(reg) and free_rank(reg) == 1
    assert fixed_points(reg).ncols == 1


def test_dual_and_tensor_dims():
    m = omega_power(trivial(K4), 2)
    assert dual(dual(m)) == m
    assert tensor_diag(m, trivial(K4)) == m
    assert tensor_diag(m, regular(K4)).dim == 20
    assert is_projective(tensor_diag(m, regular(K4)))


@pytest.mark.parametrize("p", [2, 3])
def test_hom_space_matches_fixed_points_of_hom_module(p):
    corpus = base_corpus(p)[:5]
    for _, a in corpus:
        for _, b in corpus:
            assert hom_dim(a, b) == fixed_points(hom_module(a, b)).ncols


def test_hom_space_elements_are_module_maps():
    a = omega_power(trivial(K4), 1)
    b = omega_power(trivial(K4), -1)
    for x in hom_space(a, b):
        for za, zb in zip(a.actions, b.actions):
            assert x @ za == zb @ x


@pytest.mark.parametrize("subset", [[0], [1]])
def test_frobenius_reciprocity(subset):
    # Hom_E(Ind M, N) = Hom_S(M, Res N)
    small = ElemAbGroupAlg(2, 1)
    for m in [trivial(small), regular(small), from_group_matrices(2, 1, [[[1, 0, 0], [1, 1, 0], [0, 0, 1]]])]:
        ind = induce_subset(m, K4, subset)
        for _, n in base_corpus(2)[:6]:
            assert hom_dim(ind, n) == hom_dim(m, restrict_subset(n, subset))


def test_restriction_and_induction_of_trivial():
    ind = induce_subset(trivial(ElemAbGroupAlg(2, 1)), K4, [0])
    assert ind.dim == 2
    assert is_projective(restrict_subset(ind, [1]))
    with pytest.raises(ValueError):
        restrict_subset(ind, [2])


def test_shifted_subgroups():
    m = line_module(1)
    assert not shifted_free(m, (1, 1))
    assert shifted_free(m, (1, 0))
    with pytest.raises(ValueError):
        restrict_shifted(m, (0, 0))
    # p does not divide the dimension: never free
    assert not shifted_free(trivial(K4), (1, 0))


def test_generic_module_over_function_field():
    g = generic_module(2)
    assert not is_projective(g)
    assert all(shifted_free(g, a) for a in nonzero_points(2, 2))


@pytest.mark.parametrize("p", [2, 3])
def test_free_rank_and_strip(p):
    alg = ElemAbGroupAlg(p, 2)
    for _, m in base_corpus(p):
        big = direct_sum(m, free_module(alg, 2))
        assert free_rank(big) == free_rank(m) + 2
        stripped = strip_free(big)
        assert free_rank(stripped) == 0
        assert stripped.dim == m.dim - free_rank(m) * alg.order


def test_split_free_complement_is_submodule():
    m = direct_sum(omega_power(trivial(K4), 1), regular(K4))
    idx, comp = split_free(m)
    assert len(idx) == 1
    sub = submodule(m, comp)
    assert sub.dim == 3 and free_rank(sub) == 0


def test_submodule_and_quotient():
    reg = regular(K4)
    soc = fixed_points(reg)
    q, proj = quotient(reg, soc)
    assert q.dim == 3
    for z, zq in zip(reg.actions, q.actions):
        assert proj @ z == zq @ proj
    with pytest.raises(ModuleError):
        submodule(reg, Matrix(reg.field, [[1], [0], [0], [0]]))


vals = st.integers(0, 1)


@settings(max_examples=30, deadline=None)
@given(st.lists(vals, min_size=4, max_size=4), st.lists(vals, min_size=4, max_size=4))
def test_dade_agrees_with_rank_on_two_dim_modules(a, b):
    # 2-dim modules with z_i = [[0,0],[c_i,0]]: shifted free iff sum alpha_i c_i != 0
    c = (a[0], b[0])
    m = KModule(K4, [Matrix(K4.field, [[0, 0], [c[0], 0]]), Matrix(K4.field, [[0, 0], [c[1], 0]])])
    for alpha in nonzero_points(2, 2):
        expected = (alpha[0] * c[0] + alpha[1] * c[1]) % 2 == 1
        assert shifted_free(m, alpha) == expected
        assert rank(restrict_shifted(m, alpha)) == int(expected)
