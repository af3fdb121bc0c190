"""Named integer quantities and equations the case analysis works with.

Every entry is recomputed from the genus machinery; nothing here is typed in
by hand.  Quantities come in two kinds:

* ``zero``: a polynomial that vanishes on any admissible set of Chern numbers
  (a coefficient of ``t_n`` compared with projective space, the Todd genus);
* ``integer``: a polynomial that takes an integer value (an Euler
  characteristic, a binomial-basis coefficient).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..bigmath import Q, rat
from ..dioph import lemma1_polynomials
from ..genera import (
    chi_line_bundle,
    chi_tangent_twist,
    genus_table,
    projective_specialize,
    todd_polynomials,
)
from ..polyring import Poly, Ring, chern_ring, parse, substitute

__all__ = [
    "Quantity",
    "work_ring",
    "apply_relation",
    "euler_relations",
    "quantities",
    "quantity",
    "genus_equation",
    "dim6_elimination_equations",
    "dim6_quadratic_setup",
    "dim7_equations",
    "Dim6Setup",
]

AUX_VARS = ("m", "t") + tuple(f"{p}{i}" for p in "def" for i in range(1, 8))


@lru_cache(maxsize=None)
def work_ring(n: int) -> Ring:
    """``c1..cn`` plus ``m``, a spare ``t`` and the substitution variables ``d1..f7``."""
    return chern_ring(n, *AUX_VARS)


@dataclass(frozen=True)
class Quantity:
    name: str
    poly: Poly  # over work_ring(n)
    kind: str  # "zero" or "integer"
    citation: str


def apply_relation(p: Poly, monomial: Poly, value) -> Poly:
    """Replace every occurrence of the monomial by ``value`` (repeatedly)."""
    if len(monomial) != 1:
        raise ValueError("relation must be a single monomial")
    (mexp, mc), = monomial.terms.items()
    if mc != 1:
        raise ValueError("relation monomial must be monic")
    value = rat(value)
    out: dict[tuple[int, ...], Q] = {}
    for e, c in p.terms.items():
        k = min((a // b for a, b in zip(e, mexp) if b), default=0)
        if k:
            e = tuple(a - k * b for a, b in zip(e, mexp))
            c = c * value**k
        out[e] = out.get(e, Q(0)) + c
    return Poly(p.ring, out, p.trunc)


def euler_relations(n: int, p: Poly) -> Poly:
    """Impose ``c_n = n + 1`` and ``c_1 c_{n-1} = n (n+1)^2 / 2``."""
    ring = p.ring
    p = p.partial({f"c{n}": n + 1})
    if n >= 3:
        mono = ring.gen("c1") * ring.gen(f"c{n - 1}")
        p = apply_relation(p, mono, n * (n + 1) ** 2 // 2)
    return p


def _lift(n: int, p: Poly) -> Poly:
    return p.with_trunc(None).to_ring(work_ring(n))


def genus_equation(n: int, k: int) -> Poly:
    """``[z^k] t_n(z; c) - [z^k] t_n(z; P^n)``, with the Euler relations imposed."""
    t = genus_table(n).t_poly
    target = projective_specialize(n).coeff("z", k).constant_term()
    return euler_relations(n, _lift(n, t.coeff("z", k)) - target)


def _chi_line(n: int) -> Poly:
    """chi(L^m) with the Todd genus set to its projective value 1."""
    p = chi_line_bundle(n).poly
    p = p - p.coeff("m", 0) + 1
    return euler_relations(n, _lift(n, p))


@lru_cache(maxsize=None)
def quantities(n: int) -> dict[str, Quantity]:
    if not 2 <= n <= 9:
        raise ValueError(f"dimension {n} outside 2..9")
    ring = work_ring(n)
    out: dict[str, Quantity] = {}

    def add(name, poly, kind, citation):
        out[name] = Quantity(name, poly, kind, citation)

    td = todd_polynomials(n)[n]
    add("todd_genus", euler_relations(n, _lift(n, td) - 1), "zero", "Todd genus equals 1")
    for k in range(2, n + 1):
        add(f"genus_z{k}", genus_equation(n, k), "zero",
            f"z^{k} coefficient of t_n equals that of projective space")
    two_a1, twelve_a2 = lemma1_polynomials(n)
    add("binomial_a1", _lift(n, two_a1).scale(Q(1, 2)), "integer", "integrality of chi(L^m)")
    add("binomial_a2", _lift(n, twelve_a2).scale(Q(1, 12)), "integer", "integrality of chi(L^m)")
    chi = _chi_line(n)
    add("chi_line", chi, "integer", "Riemann-Roch for L^m")
    # the same with chi(O) left as the Todd polynomial: equal in value, but its
    # denominators mix the two equations, which is sharper modulo small primes
    add("chi_line_hrr", euler_relations(n, _lift(n, chi_line_bundle(n).poly)), "integer",
        "Riemann-Roch for L^m")
    plus = chi.partial({"m": 1}) + chi.partial({"m": -1}) - 2
    add("chi_line_sym", plus, "integer", "Riemann-Roch for L and L^-1")
    tw = euler_relations(n, _lift(n, chi_tangent_twist(n).poly))
    add("chi_tangent", tw, "integer", "Riemann-Roch for the twisted tangent bundle")
    return out


def quantity(n: int, name: str) -> Quantity:
    table = quantities(n)
    if name not in table:
        raise KeyError(f"no quantity {name!r} in dimension {n}")
    return table[name]


# --- dimension-specific derivations ------------------------------------------------


@lru_cache(maxsize=None)
def dim6_elimination_equations() -> tuple[Poly, Poly, Poly]:
    """The z^4 and z^6 equations for sixfolds, and their resultant in ``c4``.

    Returns ``(eq_z4, eq_z6, quadratic)`` where ``quadratic`` is the
    ``c4``-free combination, a quadratic in ``c3``.
    """
    e4 = genus_equation(6, 4).scale(720)
    e6 = genus_equation(6, 6).scale(60480)
    A = e4.coeff("c4", 1)
    B = e6.coeff("c4", 1)
    quadratic = B * e4 - A * e6
    if quadratic.degree_in("c4") > 0:
        raise ArithmeticError("c4 was not eliminated")  # pragma: no cover
    # normalize so that the c3^2 coefficient has positive leading term
    a2 = quadratic.coeff("c3", 2)
    if a2.sorted_terms()[0][1] < 0:
        quadratic = -quadratic
    return e4, e6, quadratic


@dataclass(frozen=True)
class Dim6Setup:
    a2: Poly
    a1: Poly
    a0: Poly
    divisor: Poly  # 15 c2 + 8 c1^2
    R: Poly  # polynomial in c1
    quotient_integral: bool

    def at(self, c1: int, c2: int) -> tuple[int, int, int]:
        pt = {"c1": c1, "c2": c2}
        return tuple(int(p.evaluate(pt)) for p in (self.a2, self.a1, self.a0))

    def R_value(self, c1: int) -> int:
        return int(self.R.evaluate({"c1": c1}))


@lru_cache(maxsize=None)
def dim6_quadratic_setup() -> Dim6Setup:
    """``a2 c3^2 + a1 c3 + a0`` and ``R(c1)``, the remainder of ``1125 a0``
    on division by ``15 c2 + 8 c1^2``."""
    _, _, quad = dim6_elimination_equations()
    ring = quad.ring
    a2, a1, a0 = (quad.coeff("c3", k) for k in (2, 1, 0))
    c1, c2 = ring.gen("c1"), ring.gen("c2")
    d = c2.scale(15) + (c1**2).scale(8)
    R = substitute(a0.scale(1125), {"c2": (c1**2).scale(Q(-8, 15))}, ring)
    # 1125 a0 - R is a multiple of d; long division in c2 over Q[c1]
    rem = a0.scale(1125) - R
    quo = ring.zero()
    for k in range(rem.degree_in("c2"), 0, -1):
        term = rem.coeff("c2", k).scale(Q(1, 15)) * c2 ** (k - 1)
        quo = quo + term
        rem = rem - term * d
    if rem:
        raise ArithmeticError("division by 15 c2 + 8 c1^2 is not exact")  # pragma: no cover
    return Dim6Setup(a2, a1, a0, d, R, quo.is_integral())


@lru_cache(maxsize=None)
def dim7_equations() -> tuple[Poly, Poly, Poly]:
    """``(eq_z5, eq_z7, chi_line)`` for sevenfolds, in the printed scaling:
    ``480 ([z^5] - [z^5]_P)``, ``120960 ([z^7] - [z^7]_P)`` and ``60480 chi(L^m)``."""
    e5 = genus_equation(7, 5).scale(480)
    e7 = genus_equation(7, 7).scale(120960)
    chi = quantity(7, "chi_line").poly.scale(60480)
    return e5, e7, chi

