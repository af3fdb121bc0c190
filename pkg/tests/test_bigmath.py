import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from projchar.bigmath import Factorization, divisors, factorize, is_perfect_square, is_prime, mod_residue, rat


def test_rat_coercions_agree():
    assert rat(3) == rat("6/2") == rat(Fraction(3, 1))
    assert rat("-7/21") == rat(Fraction(-1, 3))
    with pytest.raises((TypeError, ValueError)):
        rat(0.5)


@given(st.integers(min_value=-10**40, max_value=10**40))
def test_perfect_square_matches_isqrt(n):
    r = is_perfect_square(n)
    if n >= 0 and math.isqrt(n) ** 2 == n:
        assert r == math.isqrt(n)
    else:
        assert r is None


@given(st.integers(min_value=0, max_value=10**30))
def test_squares_are_detected(k):
    assert is_perfect_square(k * k) == k


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=10**4))
def test_mod_residue_range(v, m):
    r = mod_residue(v, m)
    assert 0 <= r < m and (v - r) % m == 0


@given(st.integers(min_value=-(10**24), max_value=10**24))
def test_is_prime_against_sympy(n):
    assert is_prime(n) == (n > 1 and sympy.isprime(n))


def test_is_prime_known_values():
    assert is_prime(2) and is_prime(131849) and is_prime(1746929)
    assert not is_prime(1) and not is_prime(561) and not is_prime(3215031751)
    assert is_prime(2**127 - 1)
    # strong pseudoprime to several small bases
    assert not is_prime(3825123056546413051)


@given(st.integers(min_value=-(10**22), max_value=10**22).filter(lambda n: n != 0))
def test_factorize_product_and_primality(n):
    f = factorize(n)
    assert f.value() == n and f.verify()
    assert all(is_prime(p) for p, _ in f.factors)
    assert [p for p, _ in f.factors] == sorted(p for p, _ in f.factors)
    assert dict(f.factors) == sympy.factorint(abs(n))


def test_factorize_hard_semiprime():
    p, q = 1000000007, 998244353
    assert factorize(p * q * 7**3).factors == ((7, 3), (q, 1), (p, 1))


def test_factorize_zero_rejected():
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(min_value=1, max_value=10**9))
def test_divisors_against_sympy(n):
    assert divisors(n) == sympy.divisors(n)
    assert len(divisors(n)) == factorize(n).divisor_count()


def test_divisors_with_predicate():
    assert divisors(factorize(-36), lambda d: d % 2 == 1) == [1, 3, 9]


def test_factorization_json_round_trip():
    f = factorize(-224588048302477433)
    assert Factorization.from_json(f.to_json()) == f
    assert Factorization.from_pairs([(7, 6), (37, 1), (251, 1), (1559, 1), (131849, 1)]).value() == 224588048302477433
