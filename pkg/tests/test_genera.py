from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from projchar.bigmath import rat
from projchar.genera import (
    alternating_binomial, binomial_decompose, binomial_poly, chi_line_bundle, chi_tangent_twist,
    genus_table, projective_chern, projective_specialize, t_low_order_check, t_low_order_closed_form,
)
from projchar.polyring import Poly, chern_ring


def _at(p, point, **extra):
    return p.evaluate({**{v: 0 for v in p.ring.names}, **point, **extra})


@pytest.mark.parametrize("n", range(1, 10))
def test_duality(n):
    t = genus_table(n)
    for p in range(n + 1):
        assert t.chi_p[p] == t.chi_p[n - p].scale((-1) ** n)


@pytest.mark.parametrize("n", range(1, 10))
def test_top_chern_class_at_y_minus_one(n):
    t = genus_table(n)
    assert _specialize_y(t.chi_y, -1) == chern_ring(n).gen(f"c{n}").to_ring(t.chi_y.ring)


def _specialize_y(p, y):
    return p.partial({"y": y})


@pytest.mark.parametrize("n", range(2, 10))
def test_low_order_closed_forms(n):
    assert t_low_order_check(n) == t_low_order_closed_form(n)


@pytest.mark.parametrize("n", range(1, 10))
def test_projective_specialization(n):
    assert projective_specialize(n) == alternating_binomial(n)
    assert not genus_table(n).check()


def test_hodge_numbers_of_known_manifolds():
    k3 = genus_table(2)
    assert [_at(p, {"c2": 24}) for p in k3.chi_p] == [2, -20, 2]
    quintic = genus_table(3)
    # h11 = 1, h21 = 101
    assert [_at(p, {"c2": 50, "c3": -200}) for p in quintic.chi_p] == [0, 100, -100, 0]


@pytest.mark.parametrize("n", range(1, 8))
def test_hrr_line_bundle_on_projective_space(n):
    poly = chi_line_bundle(n).poly
    for m in range(-n, n + 1):
        # binom(m+n, n) as a polynomial in m, so negative m is covered too
        want = 1
        for j in range(1, n + 1):
            want = want * rat(m + j) / j
        assert _at(poly, projective_chern(n), m=m) == want


@pytest.mark.parametrize("n", range(1, 8))
def test_hrr_tangent_on_projective_space(n):
    # Euler sequence: chi(T(m)) = (n+1) binom(m+1+n, n) - binom(m+n, n)
    poly = chi_tangent_twist(n).poly

    def b(k):
        out = rat(1)
        for j in range(1, n + 1):
            out = out * rat(k + j) / j
        return out

    for m in range(-n, n + 1):
        assert _at(poly, projective_chern(n), m=m) == (n + 1) * b(m + 1) - b(m)


@given(st.integers(1, 7), st.data())
def test_binomial_decomposition_reconstructs(n, data):
    ring = chern_ring(n, "m")
    cs = data.draw(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=n, max_size=n))
    P = ring.gen("m") ** n / factorial(n)
    for k, c in enumerate(cs):
        P = P + ring.gen("m") ** k * rat(c)
    d = binomial_decompose(P, n)
    assert d.reconstruct() == P
    assert all(c.is_constant() for c in d.coeffs)


def test_binomial_poly_values():
    ring = chern_ring(1, "m")
    for k in range(6):
        p = binomial_poly(ring, "m", k)
        assert [p.evaluate({"c1": 0, "m": m}) for m in range(5)] == [comb(m + k, k) for m in range(5)]


def test_chi_line_decomposition_integral_on_projective_space():
    for n in range(1, 8):
        d = binomial_decompose(chi_line_bundle(n).poly, n)
        vals = [c.partial(projective_chern(n)) for c in d.coeffs]
        assert vals[0] == Poly(vals[0].ring, {}) + 1 and all(not v for v in vals[1:])
