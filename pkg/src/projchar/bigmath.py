"""Exact integer and rational arithmetic plus the number theory the casework needs.

Integers are native Python ints.  Rationals are ``gmpy2.mpq``: exact, always
reduced, with a positive denominator, and several times faster than
``fractions.Fraction`` in the polynomial inner loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt, prod
from typing import Callable, Iterable, Iterator

import gmpy2

__all__ = [
    "Q",
    "rat",
    "is_perfect_square",
    "mod_residue",
    "is_prime",
    "factorize",
    "Factorization",
    "divisors",
]

Q = gmpy2.mpq


def rat(value) -> gmpy2.mpq:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(value, str):
        return Q(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or string")
    return Q(value)


def is_perfect_square(n: int) -> int | None:
    """Return the nonnegative square root of ``n`` if it is a perfect square."""
    n = int(n)
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def mod_residue(value: int, modulus: int) -> int:
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    return int(value) % int(modulus)


# --- primality -------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the first 13 prime bases is exact below this bound
# (Sorenson & Webster 2015).
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_TRIAL_LIMIT = 10**6


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


_TRIAL_PRIMES: list[int] = []


def _trial_primes() -> list[int]:
    if not _TRIAL_PRIMES:
        _TRIAL_PRIMES.extend(_sieve(_TRIAL_LIMIT))
    return _TRIAL_PRIMES


def _miller_rabin(n: int, bases: Iterable[int]) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 3.3e24.

    Above that bound the Miller-Rabin answer is confirmed with a strong
    Baillie-PSW test, for which no counterexample is known.
    """
    n = int(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if not _miller_rabin(n, _SMALL_PRIMES):
        return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    return bool(gmpy2.is_strong_bpsw_prp(n))


# --- factorization ---------------------------------------------------------


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``.

    Seeds are fixed (c = 1, 2, ...) so factorizations are reproducible.
    """
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``sign * prod(p**e)`` with primes ascending."""

    input: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.value() != self.input:
            raise ValueError(f"factors do not multiply back to {self.input}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be distinct and ascending")

    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def divisor_count(self) -> int:
        return prod(e + 1 for _, e in self.factors)

    def verify(self) -> bool:
        """Recheck the product and the primality of every listed prime."""
        return self.value() == self.input and all(
            is_prime(p) and e > 0 for p, e in self.factors
        )

    def __str__(self) -> str:
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return f"-({body})" if self.sign < 0 else body

    def to_json(self) -> dict:
        return {
            "input": str(self.input),
            "sign": self.sign,
            "factors": [[str(p), e] for p, e in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Factorization":
        return cls(
            int(data["input"]),
            int(data["sign"]),
            tuple((int(p), int(e)) for p, e in data["factors"]),
        )

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], sign: int = 1) -> "Factorization":
        """Build from a (possibly unsorted, repeated) list of prime powers."""
        merged: dict[int, int] = {}
        for p, e in pairs:
            merged[p] = merged.get(p, 0) + e
        factors = tuple(sorted(merged.items()))
        return cls(sign * prod(p**e for p, e in factors), sign, factors)


def factorize(n: int) -> Factorization:
    n = int(n)
    if n == 0:
        raise ValueError("cannot factorize 0")
    sign = 1 if n > 0 else -1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_prime(k):
            found[k] = found.get(k, 0) + 1
            continue
        r = is_perfect_square(k)
        if r is not None:
            stack.extend((r, r))
            continue
        d = _brent_rho(k)
        stack.extend((d, k // d))
    return Factorization(n, sign, tuple(sorted(found.items())))


def _odometer(factors: tuple[tuple[int, int], ...]) -> Iterator[int]:
    exps = [0] * len(factors)
    while True:
        yield prod(p**e for (p, _), e in zip(factors, exps))
        i = 0
        while i < len(exps):
            if exps[i] < factors[i][1]:
                exps[i] += 1
                break
            exps[i] = 0
            i += 1
        else:
            return


def divisors(f: Factorization | int, predicate: Callable[[int], bool] | None = None) -> list[int]:
    """All positive divisors of ``|f.input|`` passing ``predicate``, ascending."""
    if not isinstance(f, Factorization):
        f = factorize(f)
    out = sorted(_odometer(f.factors))
    if predicate is not None:
        out = [d for d in out if predicate(d)]
    return out
