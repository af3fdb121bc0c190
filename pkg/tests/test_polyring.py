from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from projchar.bigmath import rat
from projchar.polyring import Poly, UniSeries, chern_ring, evaluate, exp_series, parse, reciprocal_series, substitute

RING = chern_ring(3, "z")

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=12)
exps = st.tuples(*[st.integers(0, 3)] * 4)
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: Poly(RING, {e: rat(c) for e, c in d.items()}))
points = st.fixed_dictionaries({v: st.integers(-5, 5) for v in RING.names})


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + RING.zero() == a and a * RING.one() == a
    assert not (a - a)


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x)
    assert evaluate(a + b, x) == evaluate(a, x) + evaluate(b, x)


@given(polys)
def test_render_parse_round_trip(a):
    assert parse(a.render(), RING) == a


@given(polys)
def test_json_round_trip(a):
    assert Poly.loads(a.dumps()) == a


@given(polys, polys, points)
def test_substitution_commutes_with_evaluation(a, b, x):
    composed = substitute(a, {"c1": b})
    inner = dict(x, c1=evaluate(b, x))
    assert evaluate(composed, x) == evaluate(a, inner)


@given(polys, polys)
def test_truncation_is_compatible_with_products(a, b):
    k = 4
    lhs = a.with_trunc(k) * b.with_trunc(k)
    assert lhs == (a * b).truncate(k).with_trunc(k)


def test_parse_accepts_spacing_and_fractions():
    p = parse("3 * c1*c2^2 -  1/2*c1 + 7", RING)
    assert p.monomial_coeff(c1=1, c2=2) == 3
    assert p.monomial_coeff(c1=1) == Fraction(-1, 2)
    assert p.constant_term() == 7


def test_parse_rejects_unknown_variable():
    with pytest.raises(KeyError):
        parse("c9 + 1", RING)


def test_weights_and_degree():
    p = parse("c1*c2 + c3 + c1^3*z^5", RING)
    assert p.homogeneous(3) == p
    assert p.degree_in("z") == 5
    assert p.coeff("z", 5) == parse("c1^3", RING)


def test_exp_series_matches_factorials():
    e = exp_series(RING.gen("c1", trunc=5), 5)
    for k in range(6):
        assert e.monomial_coeff(c1=k) * [1, 1, 2, 6, 24, 120][k] == 1


@given(st.lists(coeffs, min_size=2, max_size=8).filter(lambda c: c[0] != 0))
def test_reciprocal_series(cs):
    u = UniSeries(tuple(rat(c) for c in cs))
    prod = u * reciprocal_series(u)
    assert prod.coeffs[0] == 1 and all(c == 0 for c in prod.coeffs[1:])
