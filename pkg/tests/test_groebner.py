import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import TruncatedSpan
from modrep.ideals import (
    FreeSubmodule,
    Ideal,
    PresentedModule,
    annihilator,
    colon_generator,
    free_resolution,
    ideal_eq_radical,
    ideal_intersection,
    ideal_member,
    module_kernel,
    normal_form,
    poly_matmul,
    is_zero_matrix,
    radical_member,
)
from modrep.poly import LEX, PolyRing

R = PolyRing(2, ["y1", "y2"])


def P(s, ring=R):
    return ring.parse(s)


def test_reduced_basis():
    gb = Ideal(R, [P("y1^2"), P("y1*y2 + y2^2")]).groebner_basis()
    assert sorted(map(str, gb)) == ["y1*y2 + y2^2", "y1^2", "y2^3"]


def test_reduced_basis_is_order_dependent_but_same_ideal():
    ring = PolyRing(3, ["x", "y", "z"])
    i = Ideal(ring, [P("x^2 - y", ring), P("x*y - z", ring)])
    lex = i.groebner_basis(LEX)
    for g in lex:
        assert ideal_member(g, i)


def test_membership_and_normal_form():
    i = Ideal(R, [P("y1^2"), P("y1*y2 + y2^2")])
    assert ideal_member(P("y2^3"), i)
    assert not ideal_member(P("y2^2"), i)
    assert normal_form(P("y2^2 + y1^2"), i) == P("y2^2")


def test_radical_membership():
    i = Ideal(R, [P("y1^3"), P("y2^2")])
    assert radical_member(P("y1 + y2"), i)
    assert not radical_member(P("y1 + 1"), i)
    assert ideal_eq_radical(Ideal(R, [P("y1^2"), P("y1*y2")]), Ideal(R, [P("y1")]))


def test_unit_ideal():
    assert Ideal(R, [P("y1"), P("y1 + 1")]).is_unit()


def test_intersection():
    got = ideal_intersection(Ideal(R, [P("y1")]), Ideal(R, [P("y2")]))
    assert [str(g) for g in got.groebner_basis()] == ["y1*y2"]


def test_syzygies():
    ker = module_kernel([[P("y1"), P("y2")]], 2, 1, R)
    assert [tuple(map(str, g)) for g in ker.gens] == [("y2", "y1")]


def test_colon_and_annihilator():
    m = PresentedModule(R, 2, FreeSubmodule(R, 2, [(P("y1"), R.zero()), (R.zero(), P("y2"))]))
    assert ideal_eq_radical(colon_generator(m, 0), Ideal(R, [P("y1")]))
    ann = annihilator(m)
    assert [str(g) for g in ann.groebner_basis()] == ["y1*y2"]
    assert annihilator(PresentedModule(R, 0)).is_unit()


def test_free_resolution_is_a_complex():
    m = PresentedModule.cyclic(Ideal(R, [P("y1"), P("y2")]))
    mats = free_resolution(m)
    assert [len(mat[0]) for mat in mats] == [2, 1]
    assert is_zero_matrix(poly_matmul(mats[0], mats[1], R))


def test_ring_mismatch_rejected():
    other = PolyRing(3, ["y1", "y2"])
    with pytest.raises(ValueError):
        Ideal(R, [P("y1")]) + Ideal(other, [P("y1", other)])


terms = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(1, 2), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.lists(terms, min_size=1, max_size=3), terms)
def test_membership_matches_homogeneous_brute_force(gens, query):
    # homogenize everything so the degree-bounded span is an exact oracle
    ring = PolyRing(3, ["x", "y", "z"])

    def hom(d, deg):
        return sum((ring.monomial((a, b, deg - a - b), c) for (a, b), c in d.items() if a + b <= deg), ring.zero())

    gs = [g for g in (hom(d, 4) for d in gens) if not g.is_zero()]
    q = hom(query, 5)
    if not gs:
        return
    span = TruncatedSpan(ring, gs, 5)
    assert ideal_member(q, Ideal(ring, gs)) == span.contains(q)
    rng = random.Random(len(gs))
    member = sum((g * ring.monomial((1, 0, 0) if rng.random() < 0.5 else (0, 0, 1)) for g in gs), ring.zero())
    assert ideal_member(member, Ideal(ring, gs))
