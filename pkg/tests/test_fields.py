import pytest
from hypothesis import given, strategies as st

from modrep.fields import PrimeField, RationalFunctionField, is_prime, parse_field

PRIMES = [2, 3, 5, 7, 97]


@pytest.mark.parametrize("n,expected", [(2, True), (9, False), (97, True), (1, False), (0, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_prime_field_rejects_composites_and_large():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(101)


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    f = PrimeField(p)
    a, b, c = f(a), f(b), f(c)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    if not f.is_zero(a):
        assert f.mul(a, f.inv(a)) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inv(0)


small_poly = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(1, 2)), min_size=1, max_size=3)


def _element(field, spec):
    t1, t2 = field.gen(0), field.gen(1)
    out = field.zero
    for i, j, c in spec:
        out = out + field(c) * t1 ** i * t2 ** j
    return out


@given(small_poly, small_poly, small_poly)
def test_fraction_field_axioms(sa, sb, sc):
    f = RationalFunctionField(PrimeField(3), ["t1", "t2"])
    a, b, c = _element(f, sa), _element(f, sb), _element(f, sc)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    if not a.is_zero() and not b.is_zero():
        assert (a / b) * (b / a) == f.one


def test_fraction_parse_and_print_round_trip():
    f = parse_field("GF(2)(t1,t2)")
    x = f.parse("(t1 + 1)/(t2)")
    assert f.parse(str(x)) == x
    assert f.parse("t1*t2/t2") == f.gen(0)


def test_parse_field_errors():
    with pytest.raises(ValueError):
        parse_field("QQ")
    assert parse_field("GF(7)") == PrimeField(7)
