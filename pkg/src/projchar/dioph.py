"""Diophantine primitives: the standing congruences and inequalities on Chern
numbers, integral roots of quadratics, and exhaustive residue scans.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .bigmath import Q, is_perfect_square
from .genera import binomial_decompose, chi_line_bundle
from .polyring import Poly, chern_ring

__all__ = [
    "ChernCandidate",
    "Constraint",
    "Lemma1Result",
    "euler_constraints",
    "lemma1_polynomials",
    "lemma1_congruences",
    "kobayashi_ochiai",
    "yau_value",
    "yau_constraint",
    "integer_quadratic_roots",
    "residue_evaluator",
    "residue_eliminate",
    "projective_lemma1_ok",
]


@dataclass(frozen=True)
class ChernCandidate:
    """A partial assignment of the integers c_1..c_n."""

    n: int
    assigned: Mapping[int, int] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        bad = [i for i in self.assigned if not 1 <= i <= self.n]
        if bad:
            raise ValueError(f"Chern indices {bad} outside 1..{self.n}")
        object.__setattr__(self, "assigned", {int(i): int(v) for i, v in self.assigned.items()})

    def get(self, i: int) -> int | None:
        return self.assigned.get(i)

    def with_values(self, note: str | None = None, **values: int) -> "ChernCandidate":
        merged = dict(self.assigned)
        for name, v in values.items():
            merged[int(name.lstrip("c"))] = v
        notes = self.notes + ((note,) if note else ())
        return ChernCandidate(self.n, merged, notes)

    def as_assignment(self) -> dict[str, int]:
        return {f"c{i}": v for i, v in sorted(self.assigned.items())}


@dataclass(frozen=True)
class Constraint:
    """``expr == 0`` (equality), ``expr % modulus == 0`` (congruence) and so on."""

    kind: str  # equality | congruence | divisibility | inequality | square | external-axiom
    expr: Poly | None
    citation: str
    modulus: int | None = None
    text: str = ""

    def holds(self, candidate: ChernCandidate) -> bool | None:
        """True/False when every variable is assigned, otherwise None."""
        if self.expr is None:
            return None
        assignment = candidate.as_assignment()
        if any(v not in assignment for v in self.expr.variables()):
            return None
        value = self.expr.evaluate(assignment)
        if self.kind == "equality":
            return value == 0
        if self.kind == "congruence":
            return value.denominator == 1 and int(value) % self.modulus == 0
        if self.kind == "inequality":
            return value >= 0
        raise ValueError(f"cannot evaluate a {self.kind} constraint")


def euler_constraints(n: int) -> list[Constraint]:
    """``c_n = n + 1`` and ``c_1 c_{n-1} = n (n+1)^2 / 2``."""
    if n < 2:
        raise ValueError("needs n >= 2")
    ring = chern_ring(n)
    cn = ring.gen(f"c{n}")
    top = n * (n + 1) ** 2 // 2
    pair = ring.gen("c1") * ring.gen(f"c{n - 1}")
    return [
        Constraint("equality", cn - (n + 1), "Euler number of projective space",
                   text=f"c{n} = {n + 1}"),
        Constraint("equality", pair - top, "second Libgober-Wood coefficient",
                   text=f"c1*c{n - 1} = {top}"),
    ]


def lemma1_polynomials(n: int) -> tuple[Poly, Poly]:
    """``2 a_1`` and ``12 a_2`` from the binomial expansion of chi(L^m).

    Integrality of ``a_1, a_2`` gives the parity and mod-12 congruences.
    """
    dec = binomial_decompose(chi_line_bundle(n).poly, n)
    ring = chern_ring(n)
    return dec.coeffs[1].scale(2).to_ring(ring), dec.coeffs[2].scale(12).to_ring(ring)


@dataclass(frozen=True)
class Lemma1Result:
    parity_residue: int
    mod12_residue: int

    @property
    def parity_ok(self) -> bool:
        return self.parity_residue == 0

    @property
    def mod12_ok(self) -> bool:
        return self.mod12_residue == 0

    @property
    def passed(self) -> bool:
        return self.parity_ok and self.mod12_ok


def lemma1_congruences(n: int, c1: int, c2: int) -> Lemma1Result:
    """Evaluate ``c1 - (n+1) mod 2`` and ``c1^2 + c2 - 3n c1 + (n+1)(3n-2)/2 mod 12``."""
    two_a1, twelve_a2 = lemma1_polynomials(n)
    point = {"c1": c1, "c2": c2}
    return Lemma1Result(two_a1.eval_mod(point, 2), twelve_a2.eval_mod(point, 12))


def kobayashi_ochiai(n: int, c1: int) -> str:
    """Fano index bound: ``c1 <= n + 1`` with equality only for projective space."""
    if c1 <= 0:
        raise ValueError("the index bound applies to c1 > 0 only")
    if c1 > n + 1:
        return "excluded"
    if c1 == n + 1:
        return "forces-projective-space"
    return "allowed"


def yau_value(n: int, c1: int, c2) -> Q:
    """``(2(n+1)/n c2 - c1^2) (-c1)^(n-2)`` as an exact rational."""
    return (Q(2 * (n + 1), n) * Q(c2) - Q(c1) ** 2) * Q(-c1) ** (n - 2)


def yau_constraint(n: int, c1: int, c2) -> str:
    if c1 >= 0:
        raise ValueError("the Chern number inequality applies to c1 < 0 only")
    v = yau_value(n, c1, c2)
    if v < 0:
        return "violated"
    if v == 0:
        return "equality-ball-quotient"
    return "strict"


def integer_quadratic_roots(a: int, b: int, c: int) -> list[int]:
    """Integer solutions of ``a x^2 + b x + c = 0`` (``a != 0``), ascending."""
    a, b, c = int(a), int(b), int(c)
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    r = is_perfect_square(b * b - 4 * a * c)
    if r is None:
        return []
    roots = set()
    for s in (r, -r):
        num = -b + s
        if num % (2 * a) == 0:
            roots.add(num // (2 * a))
    return sorted(roots)


def residue_evaluator(expr: Poly, variables: Sequence[str], modulus: int) -> Callable[..., int]:
    """Compile ``expr`` to a function of ``variables`` returning its residue.

    Rational coefficients must have denominators prime to ``modulus``.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    pos = {name: i for i, name in enumerate(variables)}
    names = expr.ring.names
    terms = []
    for e, c in expr.terms.items():
        den = int(c.denominator)
        coef = int(c.numerator) * pow(den, -1, modulus) % modulus if modulus > 1 else 0
        if coef == 0:
            continue
        factors = [str(coef)]
        for name, k in zip(names, e):
            if not k:
                continue
            if name not in pos:
                raise ValueError(f"variable {name} missing from the scan")
            v = f"v{pos[name]}"
            factors.append(v if k == 1 else f"{v}**{k}")
        terms.append("*".join(factors))
    args = ", ".join(f"v{i}" for i in range(len(variables)))
    body = " + ".join(terms) or "0"
    return eval(f"lambda {args}: ({body}) % {modulus}")  # generated from trusted terms only


def residue_eliminate(expr: Poly, modulus: int,
                      domain: Mapping[str, Iterable[int]]) -> list[dict[str, int]]:
    """Every assignment from the finite ``domain`` with ``expr == 0 (mod modulus)``."""
    names = list(domain)
    missing = set(expr.variables()) - set(names)
    if missing:
        raise ValueError(f"no domain for {sorted(missing)}")
    f = residue_evaluator(expr, names, modulus)
    values = [list(domain[v]) for v in names]
    return [dict(zip(names, p)) for p in itertools.product(*values) if f(*p) == 0]


def projective_lemma1_ok(n: int) -> bool:
    """Projective space satisfies its own congruences."""
    return lemma1_congruences(n, n + 1, comb(n + 1, 2)).passed

