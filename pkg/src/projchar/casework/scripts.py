"""The per-dimension elimination scripts, n = 2..7.

Each script starts from every signed divisor allowed by the Euler relations
and records one step per argument; verdicts are derived from the steps by
:func:`compute_verdicts`, never asserted directly.
"""
from __future__ import annotations

from ..bigmath import divisors, factorize
from .equations import quantity
from .steps import (
    EliminationCertificate,
    EliminationStep,
    _bindings,
    build_expr,
    execute,
)

__all__ = [
    "Pipeline",
    "raw_c1_candidates",
    "run_dimension",
    "render_certificate",
    "SCRIPTS",
]


def raw_c1_candidates(n: int) -> tuple[int, ...]:
    """Signed c1 compatible with ``c1 c_{n-1} = n (n+1)^2 / 2`` (``c1^2 = 9`` for surfaces)."""
    if n == 2:
        return (-3, 3)
    if not 3 <= n <= 7:
        raise ValueError(f"no script for dimension {n}")
    top = n * (n + 1) ** 2 // 2
    ds = divisors(factorize(top))
    return tuple(sorted([-d for d in ds] + list(ds)))


class Pipeline:
    """Accumulates executed steps for one dimension."""

    def __init__(self, n: int, external_axioms: bool = True):
        self.n = n
        self.external_axioms = external_axioms
        self.candidates = raw_c1_candidates(n)
        self.steps: list[EliminationStep] = []

    def add(self, kind: str, op: str, candidates, description: str, citation: str,
            branch: str | None = None, **inputs) -> EliminationStep:
        cands = tuple(sorted(candidates))
        unknown = set(cands) - set(self.candidates)
        if unknown:
            raise ValueError(f"candidates {sorted(unknown)} not in the candidate set")
        evidence, conclusion = execute(op, inputs)
        step = EliminationStep(kind, op, cands, description, inputs, citation, evidence,
                               conclusion, branch)
        self.steps.append(step)
        return step

    # shorthands for the standing arguments

    def parity(self) -> None:
        """``c1 = n + 1 (mod 2)``: one step for the failing group, one for the rest."""
        odd_ok = (self.n + 1) % 2
        bad = [c for c in self.candidates if c % 2 != odd_ok]
        good = [c for c in self.candidates if c % 2 == odd_ok]
        for group in (bad, good):
            if group:
                self.add("integrality", "integrality", group,
                         "a1 = (c1 - (n+1))/2 must be an integer",
                         "integrality of chi(L^m)", n=self.n, c1_values=group)

    def index_bound(self, c1s) -> None:
        for c in c1s:
            self.add("inequality", "index_bound", [c], f"Fano index bound at c1 = {c}",
                     "Kobayashi-Ochiai", n=self.n, c1=c)

    def yau(self, c1: int, c2, branch: str | None = None) -> None:
        self.add("inequality", "chern_inequality", [c1],
                 f"Chern number inequality at c1 = {c1}, c2 = {c2}",
                 "Yau inequality for c1 < 0", branch=branch, n=self.n, c1=c1, c2=str(c2))

    def scan(self, candidates, description: str, citation: str, constraints, **kw) -> EliminationStep:
        return self.add("congruence", "congruence_scan", candidates, description, citation,
                        n=self.n, constraints=constraints, **kw)

    def residue(self, c1: int, value: str, modulus: int, allowed, description: str,
                citation: str) -> None:
        self.add("congruence", "residue_check", [c1], description, citation,
                 n=self.n, c1=c1, value=value, modulus=modulus, allowed=list(allowed))

    def certificate(self) -> EliminationCertificate:
        cert = EliminationCertificate(self.n, self.external_axioms, self.candidates, list(self.steps))
        return cert.finalize()


def _a2_scan(p: Pipeline, c1: int, modulus: int = 12) -> EliminationStep:
    return p.scan([c1], f"12 a2 modulo {modulus} at c1 = {c1}", "integrality of chi(L^m)",
                  [{"quantity": "binomial_a2", "scale": 12, "modulus": modulus}], fix={"c1": c1})


# --- dimension scripts ---------------------------------------------------------------


def _dim2(p: Pipeline) -> None:
    p.index_bound([3])
    p.yau(-3, 3)
    p.add("external-axiom", "external_axiom", [-3],
          "fake projective planes have nonzero torsion in H_1", "classification of fake projective planes",
          name="fake-projective-plane-torsion",
          statement="every compact ball quotient with the Betti numbers of P^2 has nonzero H_1",
          enabled=p.external_axioms, effect="note")


def _dim3(p: Pipeline) -> None:
    p.parity()
    even = [c for c in p.candidates if c % 2 == 0]
    for c in even:
        if c < 0:
            p.yau(c, f"{24 // c}")
    p.index_bound([c for c in even if c > 0])
    p.add("external-axiom", "external_axiom", [2],
          "c1 = 2: a del Pezzo threefold of degree 1, a sextic in P(3,2,1,1,1)",
          "classification of del Pezzo threefolds", name="del-pezzo-degree-1-h12",
          statement="the degree-1 del Pezzo threefold has h^{1,2} = 21, not 0",
          enabled=p.external_axioms, effect="eliminate")


def _dim4(p: Pipeline) -> None:
    p.parity()
    odd = [c for c in p.candidates if c % 2]
    p.index_bound([c for c in odd if c > 5])
    for c in odd:
        if c > 5:
            continue
        p.add("quadratic-roots", "quadratic_roots", [c],
              f"Todd genus 1 as a quadratic in c2 at c1 = {c}", "Todd genus equals 1",
              n=4, quantity_name="todd_genus", var="c2", fix={"c1": c, "c3": f"{50 // c}"})
    p.index_bound([5])
    p.yau(-5, 10)


def _dim5(p: Pipeline) -> None:
    p.parity()
    even = [c for c in p.candidates if c % 2 == 0]
    nine = [c for c in even if c % 9 == 0]
    p.scan(nine, "c1 = 9 d1: the Todd equation modulo 27", "Todd genus equals 1",
           [{"quantity": "todd_genus", "scale": 1440, "modulus": 27}], subs={"c1": "9*d1"})
    rest = [c for c in even if c % 9]
    p.index_bound([c for c in rest if c > 0])
    todd = {"quantity": "todd_genus", "scale": 1440, "modulus": 25}
    p.scan([-30], "c1 = -30: the Todd equation modulo 25", "Todd genus equals 1",
           [todd], fix={"c1": -30, "c4": -3})
    p.scan([-10], "c1 = -10: the Todd equation modulo 25 with 720 chi(L) modulo 5",
           "Todd genus equals 1; Riemann-Roch for L",
           [todd, {"quantity": "chi_line", "m": 1, "scale": 720, "modulus": 5}],
           fix={"c1": -10, "c4": -9})
    for c in (2, -2, -6):
        _a2_scan(p, c)
    tw = {"quantity": "chi_tangent", "scale": 24, "modulus": 24}
    p.scan([2], "c1 = 2: 24 chi(T (x) L^-1) with c2 = 12 d2 - 1 and c3 from the Todd equation",
           "Riemann-Roch for the twisted tangent bundle", [dict(tw, m=-1)],
           fix={"c1": 2, "c4": 45}, subs={"c2": "12*d2 - 1", "c3": "(1530 - 6*c2^2 + 8*c2)/4"})
    p.scan([-2], "c1 = -2: 24 chi(T (x) L) with c2 = 12 d2 - 1 and c3 from the Todd equation",
           "Riemann-Roch for the twisted tangent bundle", [dict(tw, m=1)],
           fix={"c1": -2, "c4": -45}, subs={"c2": "12*d2 - 1", "c3": "(1530 + 6*c2^2 - 8*c2)/4"})
    p.scan([-6], "c1 = -6: 24 chi(T (x) L) with c2 = 12 d2 + 3 and c3 from the Todd equation",
           "Riemann-Roch for the twisted tangent bundle", [dict(tw, m=1)],
           fix={"c1": -6, "c4": -15},
           subs={"c2": "12*d2 + 3", "c3": "(1530 + 18*c2^2 - 216*c2)/36"})


def _dim6(p: Pipeline) -> None:
    p.parity()
    odd = [c for c in p.candidates if c % 2]
    p.index_bound([c for c in odd if c > 7])
    three = [c for c in odd if c % 3 == 0 and c <= 7]
    a2 = {"quantity": "binomial_a2", "scale": 12, "modulus": 3}
    plus = {"quantity": "chi_line_sym", "scale": 720, "modulus": 3}
    z4 = {"quantity": "genus_z4", "scale": 720, "modulus": 9}
    p.scan(three, "c1 = 3 d1: residues of c2, c3, c4 modulo 3",
           "integrality of chi(L^m); Riemann-Roch for L and L^-1; z^4 coefficient of t_6",
           [a2, plus, z4], subs={"c1": "3*d1"}, report=3)
    p.scan(three, "c1 = 3 d1, c2 = 3 d2 + 1, c3 = 3 d3, c4 = 3 d4 + 1: the same equations"
           " one power of 3 deeper", "Riemann-Roch for L and L^-1; z^4 coefficient of t_6",
           [{"quantity": "chi_line_sym", "scale": 240, "modulus": 3},
            {"quantity": "genus_z4", "scale": 80, "modulus": 3}],
           subs={"c1": "3*d1", "c2": "3*d2 + 1", "c3": "3*d3", "c4": "3*d4 + 1"})
    for c in three:
        p.residue(c, "c1/3", 3, [0], f"d1 = c1/3 must vanish modulo 3 at c1 = {c}",
                  "previous scan")
    for c in (-49, -7, -1, 1):
        _a2_scan(p, c)
    for c, signs in ((-49, [1]), (-7, [1]), (-1, [1, -1]), (1, [1, -1])):
        why = " (d > 0 since c2 >= 3 c1^2 / 7 by the Chern number inequality)" if c < -1 else ""
        step = p.add("divisor-search", "divisor_search", [c],
                     f"divisors d = 15 c2 + 8 c1^2 of R(c1) with c2 = -3 (mod 12){why}",
                     "elimination of c4 between the z^4 and z^6 equations",
                     c1=c, signs=signs)
        for b in step.evidence["branches"]:
            d = b["d"]
            p.add("square-test", "square_test", [c],
                  f"discriminant of the quadratic in c3 at c1 = {c}, d = {d}",
                  "integral root of the quadratic in c3", branch=d, c1=c, d=d)
            if c == -7:
                p.yau(c, b["c2"], branch=d)
    p.index_bound([7])


def _denominator_scaled(fix: dict, spec: dict, cap: int) -> dict:
    """``spec`` scaled by its denominator ``d`` after ``fix``, modulo the 3-part of
    ``d`` capped at ``cap`` (for zero quantities the modulus is ``cap`` itself)."""
    p = build_expr(7, spec, _bindings(7, fix, {}))
    d = int(p.denominator_lcm())
    M = 1
    if quantity(7, spec["quantity"]).kind == "zero":
        M = cap
    else:
        while M < cap and d % (M * 3) == 0:
            M *= 3
    return dict(spec, scale=d, modulus=M)


def _dim7(p: Pipeline) -> None:
    p.parity()
    even = [c for c in p.candidates if c % 2 == 0]
    p.index_bound([c for c in even if c > 0 and c not in (2, 4)])
    seven = [c for c in even if c % 7 == 0 and c < 0]
    p.scan(seven, "c1 = 7 d1 with d1 | 32 (so d1 is prime to 7): the z^7 equation and"
           " 60480 chi(L) modulo 7, with d1 c6 = 32",
           "z^7 coefficient of t_7; Riemann-Roch for L",
           [{"quantity": "genus_z7", "scale": "120960/7", "modulus": 7},
            {"quantity": "chi_line", "m": 1, "scale": 60480, "multiplier": "d1", "modulus": 7}],
           subs={"c1": "7*d1"}, relations=[["d1*c6", 32]],
           domain={"d1": list(range(1, 7))})
    for c in seven:
        p.residue(c, "c1/7", 7, [2], f"d1 = c1/7 must be 2 modulo 7 at c1 = {c}", "previous scan")
    for c in (2, -2, 4, -4):
        _a2_scan(p, c)
    # c1 = -32
    fix = {"c1": -32, "c6": -7}
    _a2_scan(p, -32)
    p.scan([-32], "c1 = -32, c2 = 4 d2: 60480 chi(L) modulo 4", "Riemann-Roch for L",
           [{"quantity": "chi_line", "m": 1, "scale": 60480, "modulus": 4}],
           fix=fix, subs={"c2": "4*d2"}, report=2)
    p.scan([-32], "c1 = -32, c2 = 4 d2, c3 = 2 d3: the z^7 equation modulo 128",
           "z^7 coefficient of t_7", [{"quantity": "genus_z7", "scale": 120960, "modulus": 128}],
           fix=fix, subs={"c2": "4*d2", "c3": "2*d3"})
    # c1 = -16
    fix = {"c1": -16, "c6": -14}
    _a2_scan(p, -16)
    p.scan([-16], "c1 = -16, c2 = 4 d2: 60480 chi(L) modulo 4", "Riemann-Roch for L",
           [{"quantity": "chi_line", "m": 1, "scale": 60480, "modulus": 4}],
           fix=fix, subs={"c2": "4*d2"}, report=2)
    p.scan([-16], "c1 = -16, c2 = 4 d2, c3 = 2 d3, c4 = 2 d4: 60480 chi(L) modulo 8 with"
           " the z^7 equation over 64 and the z^5 equation over 4, modulo 2",
           "Riemann-Roch for L; z^7 and z^5 coefficients of t_7",
           [{"quantity": "chi_line", "m": 1, "scale": 60480, "modulus": 8},
            {"quantity": "genus_z7", "scale": "120960/64", "modulus": 2},
            {"quantity": "genus_z5", "scale": "480/4", "modulus": 2}],
           fix=fix, subs={"c2": "4*d2", "c3": "2*d3", "c4": "2*d4"}, report=2)
    p.scan([-16], "c1 = -16 with d2, d3, d4, c5 odd: 3780 chi(L^-2) modulo 2",
           "Riemann-Roch for L^-2",
           [{"quantity": "chi_line", "m": -2, "scale": 3780, "modulus": 2}],
           fix=fix, subs={"c2": "4*(2*e2 + 1)", "c3": "2*(2*e3 + 1)", "c4": "2*(2*e4 + 1)",
                          "c5": "2*d5 + 1"})
    # c1 = -8: a single scan modulo 9
    fix = {"c1": -8, "c6": -28}
    _a2_scan(p, -8)
    specs = [{"quantity": "genus_z5"}, {"quantity": "chi_line_hrr", "m": 1},
             {"quantity": "chi_tangent", "m": 0}, {"quantity": "chi_tangent", "m": 2}]
    p.scan([-8], "c1 = -8: the z^5 equation, chi(L), chi(T) and chi(T (x) L^2), each cleared"
           " of denominators, modulo 9",
           "z^5 coefficient of t_7; Riemann-Roch for L and for the twisted tangent bundle",
           [_denominator_scaled(fix, sp, 9) for sp in specs], fix=fix)
    p.index_bound([8])


SCRIPTS = {2: _dim2, 3: _dim3, 4: _dim4, 5: _dim5, 6: _dim6, 7: _dim7}


def run_dimension(n: int, external_axioms: bool = True) -> EliminationCertificate:
    if n not in SCRIPTS:
        raise ValueError(f"no script for dimension {n}; supported: 2..7")
    p = Pipeline(n, external_axioms)
    SCRIPTS[n](p)
    return p.certificate()


def render_certificate(cert: EliminationCertificate) -> str:
    lines = [f"dimension {cert.dimension}  candidates {list(cert.candidates)}"
             f"  external axioms {'on' if cert.external_axioms else 'off'}"]
    for i, s in enumerate(cert.steps):
        where = f" [branch d={s.branch}]" if s.branch else ""
        lines.append(f"{i:3d} {s.kind:15s} {list(s.candidates)}{where}: {s.description}"
                     f" -> {s.conclusion}")
    lines.append("verdicts:")
    for c, v in sorted(cert.verdicts.items()):
        lines.append(f"  c1 = {c:5d}: {v}")
    return "\n".join(lines)
