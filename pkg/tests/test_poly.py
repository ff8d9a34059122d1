import pytest
from hypothesis import given, strategies as st

from modrep.poly import GREVLEX, LEX, PolyRing


@pytest.fixture
def ring():
    return PolyRing(3, ["x", "y", "z"])


def test_parse_and_print(ring):
    f = ring.parse("x^2*y - 2*z + 1")
    assert str(f) == "x^2*y + z + 1"
    assert f.degree() == 3
    assert ring.parse(str(f)) == f


def test_from_string():
    r = PolyRing.from_string("GF(2)[y1,y2]")
    assert r.p == 2 and r.names == ("y1", "y2")
    with pytest.raises(ValueError):
        PolyRing.from_string("Z[x]")


def test_bad_names():
    with pytest.raises(ValueError):
        PolyRing(2, ["x", "x"])


def test_leading_terms(ring):
    f = ring.parse("x + y^2")
    assert f.leading_exp(GREVLEX) == (0, 2, 0)
    assert f.leading_exp(LEX) == (1, 0, 0)


def test_exact_div(ring):
    a, b = ring.parse("x + y"), ring.parse("x*z - 1")
    assert (a * b).exact_div(b) == a
    with pytest.raises(ValueError):
        a.exact_div(b)


def test_evaluate_and_substitute(ring):
    f = ring.parse("x*y + z")
    assert f.evaluate([1, 2, 2]) % 3 == 1


coeffs = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, 4), max_size=4)


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    r = PolyRing(5, ["u", "v"])
    fa, fb, fc = (sum((r.monomial(e, k) for e, k in d.items()), r.zero()) for d in (a, b, c))
    assert fa * (fb + fc) == fa * fb + fa * fc
    assert (fa * fb) * fc == fa * (fb * fc)
    assert fa - fa == r.zero()
