import pytest
from hypothesis import given, settings, strategies as st

from modrep.ideals import FreeSubmodule, Ideal, PresentedModule, annihilator, ideal_eq_radical
from modrep.poly import PolyRing
from modrep.suppcomm import (
    ComplexError,
    FreeComplex,
    ResolutionCapError,
    SupportSet,
    closed_set,
    complex_cohomology,
    koszul_complex,
    koszul_on_module,
    resolution_complex,
    supp_complex,
    supp_contains_point,
    supp_module,
    supp_subset,
    tensor_complexes,
)

R = PolyRing.from_string("GF(2)[y1,y2]")
R3 = PolyRing.from_string("GF(3)[y1,y2]")


def P(s, ring=R):
    return ring.parse(s)


def test_koszul_shape():
    k = koszul_complex(R, [P("y1"), P("y2"), P("y1 + y2")])
    assert k.ranks == {-3: 1, -2: 3, -1: 3, 0: 1}
    assert (k.lo, k.hi) == (-3, 0)


def test_koszul_odd_characteristic_is_a_complex():
    k = koszul_complex(R3, [P("y1", R3), P("y2^2", R3), P("y1*y2 + 1", R3)])
    assert k.rank(-1) == 3


def test_bad_complex_rejected():
    with pytest.raises(ComplexError):
        FreeComplex(R, {-1: 1, 0: 1, 1: 1}, {-1: [[P("y1")]], 0: [[P("y1")]]})
    with pytest.raises(ComplexError):
        koszul_complex(R, [])
    with pytest.raises(ComplexError):
        tensor_complexes(koszul_complex(R, [P("y1")]), koszul_complex(R3, [P("y1", R3)]))


def test_regular_sequence_cohomology():
    coh = complex_cohomology(koszul_complex(R, [P("y1"), P("y2")]))
    assert annihilator(coh[-2]).is_unit() and annihilator(coh[-1]).is_unit()
    assert ideal_eq_radical(annihilator(coh[0]), Ideal(R, [P("y1"), P("y2")]))


def test_non_regular_sequence_has_higher_cohomology():
    coh = complex_cohomology(koszul_complex(R, [P("y1"), P("y1*y2")]))
    assert not annihilator(coh[-1]).is_unit()


@pytest.mark.parametrize("gens", [["y1"], ["y1", "y2"], ["y1^2", "y1*y2"], ["y1 + 1"]])
def test_support_of_koszul_is_its_zero_set(gens):
    elems = [P(g) for g in gens]
    supp = supp_complex(koszul_complex(R, elems))
    assert supp.set_equal(closed_set(Ideal(R, elems)))


def test_koszul_on_module_cuts_support():
    m = PresentedModule.cyclic(Ideal(R, [P("y1^2")]))
    a = Ideal(R, [P("y2 + 1")])
    supp = supp_complex(koszul_on_module(m, a.gens))
    assert supp.set_equal(supp_module(m).intersect_closed(a))


def test_resolution_cap():
    m = PresentedModule.cyclic(Ideal(R, [P("y1"), P("y2")]))
    assert resolution_complex(m).ranks == {0: 1, -1: 2, -2: 1}
    with pytest.raises(ResolutionCapError):
        resolution_complex(m, cap=1)


def test_support_set_operations():
    a = closed_set(Ideal(R, [P("y1")]))
    b = closed_set(Ideal(R, [P("y2")]))
    u = a.union(b)
    assert a.subset_of(u) and not u.subset_of(a)
    assert supp_subset(closed_set(Ideal(R, [P("y1"), P("y2")])), a)
    assert not supp_subset(a, b)
    with pytest.raises(ValueError):
        supp_subset(u, a)
    assert SupportSet(R, [Ideal(R, [R.one()])]).is_empty()


def test_point_membership_of_support():
    m = PresentedModule(R, 2, FreeSubmodule(R, 2, [(P("y1"), R.zero()), (P("y2"), P("y1 + 1"))]))
    ann = annihilator(m)
    for c in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        expected = all(g.evaluate(list(c)) % 2 == 0 for g in ann.gens)
        assert supp_contains_point(m, c) == expected


terms = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(1, 2), max_size=3)


def _rank_at(rows, c, p):
    from modrep.fields import PrimeField
    from modrep.linalg import Matrix, rank

    if not rows or not rows[0]:
        return 0
    vals = [[x.evaluate(list(c)) % p for x in row] for row in rows]
    return rank(Matrix(PrimeField(p), vals))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(terms, min_size=2, max_size=2), min_size=1, max_size=2),
       st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_support_point_matches_fibre_rank(rels, c):
    # M / m_c M != 0  iff  the relation matrix evaluated at c has rank < number of generators
    ring = R3
    gens = []
    for rel in rels:
        gens.append(tuple(sum((ring.monomial(e, k) for e, k in t.items()), ring.zero()) for t in rel))
    m = PresentedModule(ring, 2, FreeSubmodule(ring, 2, gens))
    rows = m.relation_matrix()
    assert supp_contains_point(m, c) == (_rank_at(rows, c, 3) < 2)
