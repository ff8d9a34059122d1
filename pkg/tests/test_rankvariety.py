import pytest

from helpers import line_module, jordan_line_module, quadric_module, nonzero_points
from modrep.homalg import carlson_L, omega_power
from modrep.ideals import Ideal
from modrep.kmodule import (
    ElemAbGroupAlg,
    direct_sum,
    generic_module,
    regular,
    tensor_diag,
    trivial,
)
from modrep.rankvariety import (
    RankVarietyIdeal,
    SizeLimitError,
    _pencil_generators,
    determinant,
    determinantal_divisor,
    is_origin_only,
    point_consistent,
    rank_variety_ideal,
    variety_contains_point,
    variety_equal,
    variety_intersect,
    variety_ring,
    variety_subset,
    variety_union,
)


def _line(p, r, text):
    ring = variety_ring(p, r)
    return RankVarietyIdeal(Ideal(ring, [ring.parse(text)]), None)


def test_two_dim_line_modules():
    assert rank_variety_ideal(line_module(0)).generator_strings() == ["a1"]
    assert rank_variety_ideal(line_module(1)).generator_strings() == ["a1 + a2"]


@pytest.mark.parametrize("lam", [0, 1, 2])
def test_three_dim_jordan_modules(lam):
    v = rank_variety_ideal(jordan_line_module(lam))
    assert v.required_rank == 2
    assert variety_equal(v, _line(3, 2, f"a1 + {lam}*a2"))


def test_rank_four_quadric():
    v = rank_variety_ideal(quadric_module())
    assert v.required_rank == 2
    assert v.generator_strings() == ["a1*a4 + a2*a3"]
    assert not is_origin_only(v)


def test_projective_iff_origin():
    alg = ElemAbGroupAlg(3, 2)
    assert is_origin_only(rank_variety_ideal(regular(alg)))
    assert not is_origin_only(rank_variety_ideal(trivial(alg)))
    assert rank_variety_ideal(trivial(alg)).never_free


def test_points_agree_with_shifted_freeness():
    for m in [line_module(1), jordan_line_module(2), omega_power(trivial(ElemAbGroupAlg(3, 2)), 1)]:
        v = rank_variety_ideal(m)
        for a in nonzero_points(m.p, m.r):
            assert point_consistent(m, v, a)


def test_set_operations():
    a1 = _line(2, 2, "a1")
    a2 = _line(2, 2, "a2")
    meet = variety_intersect(a1, a2)
    assert is_origin_only(meet)
    both = variety_union(a1, a2)
    assert variety_contains_point(both, (0, 1)) and variety_contains_point(both, (1, 0))
    assert not variety_contains_point(both, (1, 1))
    assert variety_subset(a1, both) and not variety_subset(both, a1)


def test_pencil_route_matches_minors():
    # modules small enough for minors, compared with the pencil route
    for m in [line_module(1), jordan_line_module(1), direct_sum(line_module(0), line_module(1)), carlson_L((1, 1), 2),
              tensor_diag(line_module(0), line_module(1))]:
        v = rank_variety_ideal(m)
        ring = v.ring
        n_req = (m.p - 1) * m.dim // m.p
        pencil = RankVarietyIdeal(Ideal(ring, _pencil_generators(m, n_req, ring)), n_req)
        assert variety_equal(v, pencil)


def test_determinantal_divisor_of_diagonal_pencil():
    from modrep.fields import PrimeField
    from modrep.linalg import Matrix

    f = PrimeField(3)
    z1 = Matrix(f, [[1, 0], [0, 1]])
    z2 = Matrix(f, [[1, 0], [0, 2]])
    # (1 + t)(1 + 2t) = 1 + 2t^2, made monic: 2 + t^2
    assert determinantal_divisor(z1, z2, 2, 3) == (2, 0, 1)
    assert determinantal_divisor(z1, Matrix.zeros(f, 2, 2), 2, 3) == (1,)


def test_bareiss_determinant():
    ring = variety_ring(2, 2)
    a1, a2 = ring.gens()
    assert determinant([[a1, a2], [a2, a1]], ring) == a1 * a1 + a2 * a2


def test_large_modules_use_pencil():
    alg = ElemAbGroupAlg(3, 2)
    big = tensor_diag(regular(alg), omega_power(trivial(alg), 2))
    assert is_origin_only(rank_variety_ideal(big))


def test_limits():
    with pytest.raises(ValueError):
        rank_variety_ideal(generic_module(2))
    big = direct_sum(*[regular(ElemAbGroupAlg(2, 3))] * 2)
    with pytest.raises(SizeLimitError):
        rank_variety_ideal(big)
