import itertools

import pytest
from hypothesis import given, strategies as st

from projchar.bigmath import rat
from projchar.dioph import (
    euler_constraints, integer_quadratic_roots, kobayashi_ochiai, lemma1_congruences, lemma1_polynomials,
    projective_lemma1_ok, residue_eliminate, residue_evaluator, yau_constraint, yau_value,
)
from projchar.genera import projective_chern
from projchar.polyring import chern_ring, parse


@pytest.mark.parametrize("n", range(2, 10))
def test_lemma1_closed_forms(n):
    ring = chern_ring(n)
    two_a1, twelve_a2 = lemma1_polynomials(n)
    assert two_a1.to_ring(ring) == parse(f"c1 - {n + 1}", ring)
    want = parse(f"c1^2 + c2 - {3 * n}*c1 + {(n + 1) * (3 * n - 2)}/2", ring)
    assert twelve_a2.to_ring(ring) == want


@pytest.mark.parametrize("n", range(2, 10))
def test_projective_space_passes_its_congruences(n):
    assert projective_lemma1_ok(n)
    pc = projective_chern(n)
    r = lemma1_congruences(n, pc["c1"], pc["c2"])
    assert (r.parity_residue, r.mod12_residue) == (0, 0)


def test_lemma1_catches_wrong_parity():
    assert lemma1_congruences(5, 5, 15).parity_residue == 1


@pytest.mark.parametrize("n", range(2, 10))
def test_euler_constraints_hold_on_projective_space(n):
    pc = projective_chern(n)
    for c in euler_constraints(n):
        assert c.kind == "equality"
        assert c.expr.evaluate({**{v: 0 for v in c.expr.ring.names}, **pc}) == 0


def test_kobayashi_ochiai():
    assert kobayashi_ochiai(6, 7) == "forces-projective-space"
    assert kobayashi_ochiai(6, 8) == "excluded"
    assert kobayashi_ochiai(6, 3) == "allowed"


def test_yau_exact_rationals():
    assert yau_value(6, -7, 21) == 0
    assert yau_value(3, -2, 12) == (rat("8/3") * 12 - 4) * 2
    assert yau_value(4, -5, 10) == 0
    assert yau_constraint(6, -7, 21) == "equality-ball-quotient"
    assert yau_constraint(6, -7, 22) == "strict"
    assert yau_constraint(6, -7, 20) == "violated"


@given(st.integers(-30, 30).filter(bool), st.integers(-300, 300), st.integers(-3000, 3000))
def test_quadratic_roots_brute_force(a, b, c):
    want = [x for x in range(-3400, 3401) if a * x * x + b * x + c == 0]
    assert integer_quadratic_roots(a, b, c) == want


def test_quadratic_roots_large():
    r, s = -259, 10**30 + 7
    assert integer_quadratic_roots(3, -3 * (r + s), 3 * r * s) == [r, s]


@given(st.integers(2, 40), st.lists(st.integers(-50, 50), min_size=4, max_size=4))
def test_residue_evaluator_matches_direct(mod, xs):
    ring = chern_ring(3, "d1")
    p = parse("1/3*c1^2*c2 - 5*c3*d1 + 7/2*c1 + 11", ring)
    f = residue_evaluator(p.scale(6), ["c1", "c2", "c3", "d1"], mod)
    point = dict(zip(["c1", "c2", "c3", "d1"], xs))
    assert f(*xs) == int(p.scale(6).evaluate(point)) % mod


def test_residue_eliminate_brute_force():
    ring = chern_ring(2)
    p = parse("c1^2 + 3*c2 - 2", ring)
    dom = {"c1": range(9), "c2": range(9)}
    got = residue_eliminate(p, 9, dom)
    want = [{"c1": a, "c2": b} for a, b in itertools.product(range(9), range(9)) if (a * a + 3 * b - 2) % 9 == 0]
    assert sorted(map(lambda d: tuple(sorted(d.items())), got)) == sorted(tuple(sorted(d.items())) for d in want)
