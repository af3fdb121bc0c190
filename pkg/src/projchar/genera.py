"""Genus polynomials: T_n^p, chi_y, t_n, Todd polynomials, twisted Euler characteristics.

All polynomials are in ``c1..cn`` (``weight(ci) = i``) plus weight-0 variables
``y``, ``z`` or ``m``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from .bigmath import Q
from .chern import chern_character, chi_y_class, reduce_to_chern_basis, todd_class
from .polyring import Poly, Ring, chern_ring, exp_series, substitute

__all__ = [
    "MAX_N",
    "GenusTable",
    "TwistPolynomial",
    "IntegralityDecomposition",
    "genus_table",
    "todd_polynomials",
    "chern_character_polynomials",
    "t_low_order_check",
    "t_low_order_closed_form",
    "projective_chern",
    "projective_specialize",
    "alternating_binomial",
    "chi_line_bundle",
    "chi_tangent_twist",
    "binomial_poly",
    "binomial_decompose",
]

MAX_N = 9


@dataclass(frozen=True)
class GenusTable:
    n: int
    chi_p: tuple[Poly, ...]
    chi_y: Poly
    t_poly: Poly
    todd_top: Poly
    provenance: str = field(default="chi_y root product, Gauss reduction", compare=False)

    def check(self) -> list[str]:
        """Return the list of violated structural invariants (empty if none)."""
        bad = []
        n = self.n
        ring_y = self.chi_y.ring
        y = ring_y.gen("y")
        rebuilt = ring_y.zero()
        for p, tp in enumerate(self.chi_p):
            rebuilt = rebuilt + tp.to_ring(ring_y) * y**p
        if rebuilt != self.chi_y:
            bad.append("chi_y != sum T^p y^p")
        for p in range(n + 1):
            if self.chi_p[p] != self.chi_p[n - p].scale((-1) ** n):
                bad.append(f"duality T^{p} != (-1)^n T^{n - p}")
        cn = chern_ring(n).gen(f"c{n}")
        if self.t_poly.coeff("z", 0).to_ring(chern_ring(n)) != cn:
            bad.append("t_n(0) != c_n")
        if self.chi_y.partial({"y": -1}).to_ring(chern_ring(n)) != cn:
            bad.append("chi_{-1} != c_n")
        return bad


def _check_n(n: int, bound: int = MAX_N) -> None:
    if not 1 <= n <= bound:
        raise ValueError(f"dimension {n} outside 1..{bound}")


@lru_cache(maxsize=None)
def genus_table(n: int, bound: int = MAX_N) -> GenusTable:
    _check_n(n, bound)
    reduced = reduce_to_chern_basis(chi_y_class(n).degree(n)).with_trunc(None)
    ring_c = chern_ring(n)
    chi_p = tuple(reduced.coeff("y", p).to_ring(ring_c) for p in range(n + 1))
    ring_z = chern_ring(n, "z")
    t_poly = substitute(reduced, {"y": ring_z.gen("z") - 1}, ring_z)
    return GenusTable(n, chi_p, reduced, t_poly, chi_p[0])


@lru_cache(maxsize=None)
def todd_polynomials(n: int) -> tuple[Poly, ...]:
    """``(td_0, ..., td_n)`` as polynomials over ``chern_ring(n)``."""
    red = reduce_to_chern_basis(todd_class(n)).with_trunc(None)
    return tuple(red.homogeneous(k) for k in range(n + 1))


@lru_cache(maxsize=None)
def chern_character_polynomials(n: int) -> tuple[Poly, ...]:
    """``(ch_0, ..., ch_n)`` of a rank-n bundle with Chern classes c1..cn."""
    red = reduce_to_chern_basis(chern_character(n)).with_trunc(None)
    return tuple(red.homogeneous(k) for k in range(n + 1))


def t_low_order_check(n: int) -> tuple[Poly, Poly, Poly]:
    """Computed ``z^0, z^1, z^2`` coefficients of ``t_n`` (over ``chern_ring(n)``)."""
    if n < 2:
        raise ValueError("needs n >= 2")
    t = genus_table(n).t_poly
    ring = chern_ring(n)
    return tuple(t.coeff("z", k).to_ring(ring) for k in range(3))


def t_low_order_closed_form(n: int) -> tuple[Poly, Poly, Poly]:
    """``c_n``, ``-n c_n / 2`` and ``(n(3n-5)/2 c_n + c_1 c_{n-1}) / 12``."""
    ring = chern_ring(n)
    cn = ring.gen(f"c{n}")
    c1 = ring.gen("c1")
    cn1 = ring.gen(f"c{n - 1}")
    return (
        cn,
        cn.scale(Q(-n, 2)),
        (cn.scale(Q(n * (3 * n - 5), 2)) + c1 * cn1).scale(Q(1, 12)),
    )


def projective_chern(n: int) -> dict[str, int]:
    """Chern numbers of P^n: ``c_i = binom(n+1, i)``."""
    return {f"c{i}": comb(n + 1, i) for i in range(1, n + 1)}


def projective_specialize(n: int) -> Poly:
    """``t_n`` evaluated at the Chern classes of P^n, as a polynomial in z."""
    t = genus_table(n).t_poly
    ring = Ring.of("z")
    return t.partial(projective_chern(n)).to_ring(ring)


def alternating_binomial(n: int) -> Poly:
    """``sum_i binom(n+1, i+1) (-1)^i z^i``."""
    ring = Ring.of("z")
    return Poly(ring, {(i,): (-1) ** i * comb(n + 1, i + 1) for i in range(n + 1)})


@dataclass(frozen=True)
class TwistPolynomial:
    n: int
    kind: str  # "line-bundle" or "tangent-twist"
    poly: Poly  # over chern_ring(n, "m")

    def at(self, m) -> Poly:
        """Specialize ``m``; the result is over ``chern_ring(n)``."""
        return self.poly.partial({"m": m}).to_ring(chern_ring(self.n))

    def coefficient(self, k: int) -> Poly:
        return self.poly.coeff("m", k).to_ring(chern_ring(self.n))


def _graded_td(n: int) -> tuple[Ring, Poly]:
    """``Td(X) = sum_k td_k(c) l^k`` with integer c's (weight 0) and ``l`` graded."""
    ring = Ring.of(*(f"c{i}" for i in range(1, n + 1)), "m", ("l", 1))
    ell = ring.gen("l", n)
    td = ring.zero(n)
    for k, tdk in enumerate(todd_polynomials(n)):
        td = td + tdk.to_ring(ring, n) * ell**k
    return ring, td


def _slice_top(p: Poly, n: int) -> Poly:
    """Degree-n part in ``l`` with ``l^n`` replaced by 1, over ``chern_ring(n, "m")``."""
    top = p.coeff("l", n).with_trunc(None)
    return top.to_ring(chern_ring(n, "m"))


@lru_cache(maxsize=None)
def chi_line_bundle(n: int) -> TwistPolynomial:
    """``chi(X, L^m) = [e^{m l} Td(X)]_n`` with ``c_i(X) = c_i l^i`` and ``L^n = 1``."""
    _check_n(n)
    ring, td = _graded_td(n)
    em = exp_series(ring.gen("m", n) * ring.gen("l", n), n)
    return TwistPolynomial(n, "line-bundle", _slice_top(em * td, n))


@lru_cache(maxsize=None)
def chi_tangent_twist(n: int) -> TwistPolynomial:
    """``chi(X, T_X (x) L^m) = [ch(T_X) e^{m l} Td(X)]_n``."""
    _check_n(n)
    ring, td = _graded_td(n)
    ell = ring.gen("l", n)
    ch = ring.zero(n)
    for k, chk in enumerate(chern_character_polynomials(n)):
        ch = ch + chk.to_ring(ring, n) * ell**k
    em = exp_series(ring.gen("m", n) * ell, n)
    return TwistPolynomial(n, "tangent-twist", _slice_top(ch * em * td, n))


def binomial_poly(ring: Ring, var: str, k: int) -> Poly:
    """``binom(var + k, k)`` as a polynomial in ``var``."""
    m = ring.gen(var)
    out = ring.one()
    for i in range(1, k + 1):
        out = out * (m + i)
    return out.scale(Q(1, factorial(k)))


@dataclass(frozen=True)
class IntegralityDecomposition:
    """``P(m) = sum_k a_k binom(m + n - k, n - k)``."""

    n: int
    coeffs: tuple[Poly, ...]  # a_0 .. a_n, polynomials in the non-m variables
    var: str = "m"

    def reconstruct(self) -> Poly:
        ring = self.coeffs[0].ring
        out = ring.zero()
        for k, a in enumerate(self.coeffs):
            out = out + a * binomial_poly(ring, self.var, self.n - k)
        return out

    def is_integral(self) -> bool:
        """True iff every ``a_k`` is an integer constant (P integer-valued)."""
        return all(a.is_constant() and a.constant_term().denominator == 1 for a in self.coeffs)


def binomial_decompose(P: Poly, n: int, var: str = "m") -> IntegralityDecomposition:
    """Expand a degree-n polynomial in ``var`` in the basis ``binom(var+n-k, n-k)``.

    The leading coefficient must be ``1/n!`` (so ``a_0 = 1``); other
    coefficients may involve further variables, which are carried symbolically.
    """
    P = P.with_trunc(None)
    lead = P.coeff(var, n)
    if P.degree_in(var) != n or lead != Q(1, factorial(n)):
        raise ValueError(f"leading coefficient of {var}^{n} must be 1/{factorial(n)}")
    rem = P
    coeffs = []
    for k in range(n + 1):
        j = n - k
        a = rem.coeff(var, j).scale(factorial(j))
        coeffs.append(a)
        rem = rem - a * binomial_poly(P.ring, var, j)
    if rem:
        raise ArithmeticError("decomposition left a remainder")  # pragma: no cover
    return IntegralityDecomposition(n, tuple(coeffs), var)
