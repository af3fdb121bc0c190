"""Chern-root calculus: Todd class, Chern character, exterior-power characters.

Series live in the formal roots ``x1..xn`` (weight 1, truncated at degree n),
optionally with weight-0 parameters such as ``y`` or ``t``.  Symmetric series
are rewritten in the elementary symmetric functions ``c_i = e_i(x)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial

from .bigmath import Q
from .polyring import Poly, Ring, UniSeries, chern_ring, reciprocal_series

__all__ = [
    "RootSeries",
    "root_ring",
    "todd_factor",
    "todd_class",
    "chern_character",
    "exterior_power_character",
    "chi_y_class",
    "elementary",
    "power_sum",
    "check_symmetric",
    "reduce_to_chern_basis",
    "partitions",
]


def root_ring(n: int, *params: str) -> Ring:
    return Ring.of(*((f"x{i}", 1) for i in range(1, n + 1)), *params)


@dataclass(frozen=True)
class RootSeries:
    """A truncated series in ``n`` formal Chern roots (plus weight-0 parameters)."""

    n: int
    poly: Poly

    def __post_init__(self):
        ring = self.poly.ring
        expected = tuple(f"x{i}" for i in range(1, self.n + 1))
        if ring.names[: self.n] != expected or any(w != 1 for w in ring.weights[: self.n]):
            raise ValueError(f"first {self.n} variables must be the roots {expected}")
        if any(w != 0 for w in ring.weights[self.n:]):
            raise ValueError("parameters after the roots must have weight 0")
        if self.poly.trunc != self.n:
            object.__setattr__(self, "poly", self.poly.with_trunc(self.n))

    @property
    def params(self) -> tuple[str, ...]:
        return self.poly.ring.names[self.n:]

    def __add__(self, other: "RootSeries") -> "RootSeries":
        return RootSeries(self.n, self.poly + other.poly)

    def __sub__(self, other: "RootSeries") -> "RootSeries":
        return RootSeries(self.n, self.poly - other.poly)

    def __mul__(self, other) -> "RootSeries":
        if isinstance(other, RootSeries):
            return RootSeries(self.n, self.poly * other.poly)
        return RootSeries(self.n, self.poly.scale(other))

    __rmul__ = __mul__

    def degree(self, k: int) -> "RootSeries":
        return RootSeries(self.n, self.poly.homogeneous(k))

    def swap(self, i: int, j: int) -> "RootSeries":
        """Exchange roots ``x_i`` and ``x_j`` (1-based)."""
        a, b = i - 1, j - 1
        out = {}
        for e, c in self.poly.terms.items():
            e = list(e)
            e[a], e[b] = e[b], e[a]
            out[tuple(e)] = c
        return RootSeries(self.n, Poly(self.poly.ring, out, self.poly.trunc))


def _from_factors(n: int, factor, params: tuple[str, ...] = ()) -> RootSeries:
    """``prod_i factor(x_i)`` where ``factor(ring, name)`` builds one root's series."""
    ring = root_ring(n, *params)
    acc = ring.one(n)
    for i in range(1, n + 1):
        acc = acc * factor(ring, f"x{i}")
    return RootSeries(n, acc)


def todd_factor(order: int) -> UniSeries:
    """Coefficients of ``x / (1 - e^{-x})`` up to ``x^order``."""
    # (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
    u = UniSeries(tuple(Q((-1) ** k, factorial(k + 1)) for k in range(order + 1)))
    return reciprocal_series(u)


def todd_class(n: int) -> RootSeries:
    if n < 1:
        raise ValueError("need at least one root")
    f = todd_factor(n)
    return _from_factors(n, lambda ring, x: f.to_poly(ring, x, n))


def chern_character(n: int) -> RootSeries:
    """``sum_i e^{x_i}``, the Chern character of a rank-n bundle with roots x_i."""
    if n < 1:
        raise ValueError("need at least one root")
    ring = root_ring(n)
    ex = UniSeries.exp(n)
    total = ring.zero(n)
    for i in range(1, n + 1):
        total = total + ex.to_poly(ring, f"x{i}", n)
    return RootSeries(n, total)


def exterior_power_character(p: int, n: int) -> RootSeries:
    """Chern character of the p-th exterior power of the dual bundle.

    Dynamic programme over roots: ``prod_i (1 + t e^{-x_i})`` keeping only
    powers of ``t`` up to ``p``, then read off the ``t^p`` coefficient.
    """
    if not 0 <= p <= n:
        raise ValueError(f"exterior power {p} out of range 0..{n}")
    ring = root_ring(n, "t")
    emx = UniSeries.exp(n, -1)
    t = ring.gen("t")
    acc = ring.one(n)
    for i in range(1, n + 1):
        acc = acc * (ring.one(n) + t * emx.to_poly(ring, f"x{i}", n))
        acc = Poly(ring, {e: c for e, c in acc.terms.items() if e[-1] <= p}, n)
    picked = acc.coeff("t", p)
    return RootSeries(n, picked.to_ring(root_ring(n), n))


def chi_y_class(n: int) -> RootSeries:
    """``sum_p ch(Lambda^p Omega) y^p * Td`` as one multiplicative series.

    Each root contributes ``(1 + y e^{-x}) x / (1 - e^{-x})``; fusing the two
    products root by root avoids ever multiplying two full n-root series.
    """
    td = todd_factor(n)
    emx = UniSeries.exp(n, -1)
    td_emx = td * emx

    def factor(ring: Ring, x: str) -> Poly:
        y = ring.gen("y")
        return td.to_poly(ring, x, n) + y * td_emx.to_poly(ring, x, n)

    return _from_factors(n, factor, ("y",))


def elementary(k: int, n: int) -> RootSeries:
    ring = root_ring(n)
    terms = {}
    for S in combinations(range(n), k):
        e = [0] * n
        for i in S:
            e[i] = 1
        terms[tuple(e)] = 1
    return RootSeries(n, Poly(ring, terms, n))


def power_sum(k: int, n: int) -> RootSeries:
    ring = root_ring(n)
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = 1
    return RootSeries(n, Poly(ring, terms, n))


def check_symmetric(s: RootSeries) -> None:
    """Raise ``ValueError`` naming the first adjacent transposition that fails."""
    terms = s.poly.terms
    zero = Q(0)
    for i in range(s.n - 1):
        for e, c in terms.items():
            if e[i] == e[i + 1]:
                continue
            f = e[:i] + (e[i + 1], e[i]) + e[i + 2:]
            if terms.get(f, zero) != c:
                raise ValueError(f"series is not symmetric under (x{i + 1} x{i + 2})")


@lru_cache(maxsize=None)
def partitions(d: int, max_parts: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``d`` with at most ``max_parts`` parts, descending lex order."""
    if max_part is None:
        max_part = d
    if d == 0:
        return ((),)
    if max_parts == 0:
        return ()
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, max_parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _e_product_coeff(factors: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Coefficient of ``x^mu`` in ``e_{k1} e_{k2} ...`` (mu sorted descending)."""
    if not factors:
        return 0 if any(mu) else 1
    k, rest = factors[0], factors[1:]
    support = [i for i, m in enumerate(mu) if m]
    total = 0
    for S in combinations(support, k):
        new = list(mu)
        for i in S:
            new[i] -= 1
        total += _e_product_coeff(rest, tuple(sorted(new, reverse=True)))
    return total


def _c_exponent(lam: tuple[int, ...], n: int) -> tuple[int, ...]:
    padded = list(lam) + [0] * (n + 1 - len(lam))
    return tuple(padded[k] - padded[k + 1] for k in range(n))


def _e_factors(cexp: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(k + 1 for k, a in enumerate(cexp) for _ in range(a))


def reduce_to_chern_basis(s: RootSeries, check: bool = True) -> Poly:
    """The unique polynomial ``P`` in ``c1..cn`` with ``P(e_1..e_n) = s``.

    Gauss's leading-term algorithm, degree by degree.  A symmetric series is
    determined by its coefficients on partition-shaped monomials, so the
    remainder is tracked only there and each leading term ``a x^lambda`` is
    cancelled by ``a * prod e_k^(lambda_k - lambda_{k+1})``.
    """
    if check:
        check_symmetric(s)
    n = s.n
    params = s.params
    out_ring = chern_ring(n, *params)
    # coefficient table on partition-shaped monomials, keyed by the x-part
    table: dict[tuple[int, ...], dict[tuple[int, ...], Q]] = {}
    for e, c in s.poly.terms.items():
        x = e[:n]
        if all(x[i] >= x[i + 1] for i in range(n - 1)):
            table.setdefault(x, {})[e[n:]] = c
    out: dict[tuple[int, ...], Q] = {}
    for d in range(n + 1):
        lams = [lam + (0,) * (n - len(lam)) for lam in partitions(d, n)]
        rem = {lam: dict(table.get(lam, {})) for lam in lams}
        for idx, lam in enumerate(lams):
            lead = {p: c for p, c in rem[lam].items() if c}
            if not lead:
                continue
            cexp = _c_exponent(lam, n)
            factors = _e_factors(cexp)
            for p, c in lead.items():
                out[cexp + p] = c
            for mu in lams[idx + 1:]:
                m = _e_product_coeff(factors, mu)
                if m:
                    r = rem[mu]
                    for p, c in lead.items():
                        r[p] = r.get(p, Q(0)) - m * c
    return Poly(out_ring, out, n)
