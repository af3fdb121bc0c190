"""Executable elimination steps and the certificates assembled from them.

A step is an operation name plus JSON-able inputs.  Running the operation
yields evidence and a conclusion; replaying a certificate runs every
operation again and compares the evidence verbatim.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd, lcm

from ..bigmath import Q, divisors, factorize, is_perfect_square, rat
from ..dioph import integer_quadratic_roots, kobayashi_ochiai, residue_evaluator, yau_constraint, yau_value
from ..polyring import Poly, parse, substitute
from .equations import apply_relation, dim6_quadratic_setup, quantity, work_ring

__all__ = [
    "KINDS",
    "VERDICTS",
    "OPS",
    "EliminationStep",
    "EliminationCertificate",
    "execute",
    "compute_verdicts",
    "reduce_mod",
    "build_expr",
]

KINDS = ("congruence", "divisor-search", "square-test", "quadratic-roots",
         "inequality", "integrality", "external-axiom")
VERDICTS = ("projective-space", "ball-quotient", "eliminated", "unresolved",
            "eliminated-by-external-axiom")
# conclusion -> verdict, for conclusions that settle a candidate
DECISIVE = {
    "contradiction": "eliminated",
    "projective-space": "projective-space",
    "ball-quotient": "ball-quotient",
    "eliminated-by-external-axiom": "eliminated-by-external-axiom",
}
MAX_SCAN_POINTS = 4_000_000


def reduce_mod(p: Poly, modulus: int) -> Poly:
    """Coefficients reduced to the symmetric range ``(-K/2, K/2]``; zero terms dropped."""
    out = {}
    for e, c in p.terms.items():
        den = int(c.denominator)
        if gcd(den, modulus) != 1:
            raise ValueError(f"denominator {den} is not invertible modulo {modulus}")
        r = int(c.numerator) * pow(den, -1, modulus) % modulus
        if r > modulus // 2:
            r -= modulus
        if r:
            out[e] = r
    return Poly(p.ring, out)


# --- operations ----------------------------------------------------------------------


def _bindings(n: int, fix: dict, subs: dict) -> dict[str, Poly]:
    ring = work_ring(n)
    out = {v: ring.const(rat(x)) for v, x in fix.items()}
    out.update({v: parse(t, ring) for v, t in subs.items()})
    # a binding may mention other bound variables (c3 in terms of c2); compose until stable
    for _ in range(len(out) + 1):
        if not any(set(p.variables()) & out.keys() for p in out.values()):
            return out
        out = {v: substitute(p, out, ring) for v, p in out.items()}
    raise ValueError("cyclic substitutions")


def build_expr(n: int, spec: dict, bindings: dict | None = None,
               relations: list | None = None) -> Poly:
    """``scale * multiplier * quantity`` after fixing ``m`` and substituting ``bindings``."""
    ring = work_ring(n)
    p = quantity(n, spec["quantity"]).poly
    if "m" in spec:
        p = p.partial({"m": spec["m"]})
    if bindings:
        p = substitute(p, bindings, ring)
    p = p * parse(spec.get("multiplier", "1"), ring)
    for mono, value in relations or []:
        p = apply_relation(p, parse(mono, ring), value)
    return p.scale(rat(spec.get("scale", 1)))


def _constraint_expr(n: int, spec: dict, bindings: dict, relations: list) -> tuple[Poly, int]:
    q = quantity(n, spec["quantity"])
    scale = rat(spec.get("scale", 1))
    modulus = int(spec["modulus"])
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if q.kind == "integer":
        # scale * (integer) is divisible by the modulus only if scale / modulus is integral
        mult = parse(spec.get("multiplier", "1"), work_ring(n))
        if (scale / modulus).denominator != 1 or not mult.is_integral():
            raise ValueError(
                f"{scale} * {q.name} is not a multiple of {modulus} for integer values"
            )
    return reduce_mod(build_expr(n, spec, bindings, relations), modulus), modulus


def congruence_scan(n: int, constraints: list, fix: dict | None = None, subs: dict | None = None,
                    relations: list | None = None, domain: dict | None = None,
                    report: int | None = None) -> tuple[dict, str]:
    """Exhaust all residues of the free variables against a set of congruences."""
    bindings = _bindings(n, fix or {}, subs or {})
    exprs = [_constraint_expr(n, c, bindings, relations or []) for c in constraints]
    modulus = lcm(*(k for _, k in exprs))
    names = sorted({v for p, _ in exprs for v in p.variables()}, key=work_ring(n).index)
    domain = domain or {}
    ranges = [sorted({int(x) % modulus for x in domain[v]}) if v in domain else list(range(modulus))
              for v in names]
    points = 1
    for r in ranges:
        points *= len(r)
    if points > MAX_SCAN_POINTS:
        raise ValueError(f"scan of {points} points is too large")
    checks = [residue_evaluator(p, names, k) for p, k in exprs]
    survivors = [pt for pt in itertools.product(*ranges) if all(f(*pt) == 0 for f in checks)]
    evidence = {
        "expressions": [
            {"quantity": c["quantity"], "modulus": k, "reduced": p.render()}
            for c, (p, k) in zip(constraints, exprs)
        ],
        "variables": names,
        "scan_modulus": modulus,
        "points": points,
        "survivors": len(survivors),
        "projections": {v: sorted({pt[i] for pt in survivors}) for i, v in enumerate(names)},
    }
    if len(exprs) == 1:
        f = residue_evaluator(exprs[0][0], names, exprs[0][1])
        evidence["attained"] = sorted({f(*pt) for pt in itertools.product(*ranges)})
    if report:
        evidence["classes"] = [list(t) for t in sorted({tuple(x % report for x in pt) for pt in survivors})]
    return evidence, ("contradiction" if not survivors else "restriction")


def residue_check(n: int, c1: int, value: str, modulus: int, allowed: list) -> tuple[dict, str]:
    """Reduce an expression in ``c1`` modulo ``modulus`` and test membership."""
    v = parse(value, work_ring(n)).evaluate({"c1": c1})
    if v.denominator != 1:
        raise ValueError(f"{value} is not an integer at c1 = {c1}")
    r = int(v) % modulus
    evidence = {"value": str(int(v)), "residue": r, "allowed": sorted(allowed)}
    return evidence, ("restriction" if r in allowed else "contradiction")


def integrality(n: int, c1_values: list) -> tuple[dict, str]:
    """``a_1 = (c1 - (n+1)) / 2`` must be an integer."""
    a1 = quantity(n, "binomial_a1").poly
    values = {str(c): str(a1.evaluate({"c1": c})) for c in c1_values}
    bad = [c for c in c1_values if a1.evaluate({"c1": c}).denominator != 1]
    if bad and len(bad) != len(c1_values):
        raise ValueError("mixed parity group; split the candidates")
    return {"a1": values}, ("contradiction" if bad else "restriction")


def index_bound(n: int, c1: int) -> tuple[dict, str]:
    verdict = kobayashi_ochiai(n, c1)
    conclusion = {"excluded": "contradiction", "forces-projective-space": "projective-space",
                  "allowed": "restriction"}[verdict]
    return {"bound": n + 1, "c1": c1, "verdict": verdict}, conclusion


def chern_inequality(n: int, c1: int, c2: str) -> tuple[dict, str]:
    c2v = rat(c2)
    verdict = yau_constraint(n, c1, c2v)
    conclusion = {"violated": "contradiction", "equality-ball-quotient": "ball-quotient",
                  "strict": "restriction"}[verdict]
    return {"c2": str(c2v), "value": str(yau_value(n, c1, c2v)), "verdict": verdict}, conclusion


def quadratic_roots(n: int, quantity_name: str, var: str, fix: dict) -> tuple[dict, str]:
    p = quantity(n, quantity_name).poly.partial({k: rat(v) for k, v in fix.items()})
    if p.variables() != [var] or p.degree_in(var) != 2:
        raise ValueError(f"{quantity_name} is not a quadratic in {var} after fixing {fix}")
    p = p.scale(p.denominator_lcm())
    g = 0
    for c in p.terms.values():
        g = gcd(g, int(c))
    p = p.scale(Q(1, g))
    a, b, c = (int(p.coeff(var, k).constant_term()) for k in (2, 1, 0))
    disc = b * b - 4 * a * c
    roots = integer_quadratic_roots(a, b, c)
    evidence = {"equation": p.render(), "a": a, "b": b, "c": c,
                "discriminant": str(disc), "is_square": is_perfect_square(disc) is not None,
                "roots": roots}
    return evidence, ("restriction" if roots else "contradiction")


def _fact(v: int) -> str:
    return "0" if v == 0 else str(factorize(v))


def divisor_search(c1: int, signs: list, modulus: int = 180) -> tuple[dict, str]:
    """Divisors ``d`` of ``R(c1)`` with ``c2 = (d - 8 c1^2) / 15 = -3 (mod 12)``."""
    setup = dim6_quadratic_setup()
    R = setup.R_value(c1)
    f = factorize(R)
    found = []
    for d in divisors(f):
        for s in signs:
            sd = s * d
            if (sd + 45 - 8 * c1 * c1) % modulus == 0:
                found.append(sd)
    found.sort()
    branches = []
    for d in found:
        c2 = (d - 8 * c1 * c1) // 15
        branches.append({"d": str(d), "d_factored": _fact(d), "c2": str(c2), "e2": str((c2 + 3) // 12)})
    evidence = {"R": str(R), "R_factored": str(f), "divisor_count": f.divisor_count(),
                "signs": signs, "branches": branches}
    return evidence, ("restriction" if found else "contradiction")


def square_test(c1: int, d: str) -> tuple[dict, str]:
    """Discriminant of the quadratic in ``c3`` at the ``c2`` fixed by the divisor ``d``.

    The evidence also carries the discriminant obtained from the printed form of
    ``a0`` (which has ``c2^2`` where ``c2^4`` belongs); it is recorded for
    comparison only and never decides anything.
    """
    from .printed import printed_a0_value

    d = int(d)
    num = d - 8 * c1 * c1
    if num % 15:
        raise ValueError("divisor does not give an integral c2")
    c2 = num // 15
    a2, a1, a0 = dim6_quadratic_setup().at(c1, c2)
    D = a1 * a1 - 4 * a2 * a0
    roots = integer_quadratic_roots(a2, a1, a0)
    Dp = a1 * a1 - 4 * a2 * printed_a0_value(c1, c2)
    evidence = {"c2": str(c2), "e2": str((c2 + 3) // 12), "a2": str(a2), "a1": str(a1), "a0": str(a0),
                "D": str(D), "D_factored": _fact(D), "is_square": is_perfect_square(D) is not None,
                "c3_roots": [str(r) for r in roots],
                "D_printed_a0": str(Dp), "D_printed_a0_factored": _fact(Dp),
                "D_printed_a0_is_square": is_perfect_square(Dp) is not None}
    return evidence, ("restriction" if roots else "contradiction")


def external_axiom(name: str, statement: str, enabled: bool, effect: str) -> tuple[dict, str]:
    """A geometric fact taken from the literature; never derived, never used as a premise."""
    evidence = {"axiom": name, "statement": statement, "enabled": bool(enabled)}
    if effect == "eliminate" and enabled:
        return evidence, "eliminated-by-external-axiom"
    return evidence, "note"


OPS = {
    "congruence_scan": congruence_scan,
    "residue_check": residue_check,
    "integrality": integrality,
    "index_bound": index_bound,
    "chern_inequality": chern_inequality,
    "quadratic_roots": quadratic_roots,
    "divisor_search": divisor_search,
    "square_test": square_test,
    "external_axiom": external_axiom,
}


def execute(op: str, inputs: dict) -> tuple[dict, str]:
    if op not in OPS:
        raise KeyError(f"unknown step operation {op!r}")
    evidence, conclusion = OPS[op](**inputs)
    # normalize through JSON so fresh and deserialized evidence compare equal
    return json.loads(json.dumps(evidence, sort_keys=True)), conclusion


# --- steps and certificates ----------------------------------------------------------


@dataclass(frozen=True)
class EliminationStep:
    kind: str
    op: str
    candidates: tuple[int, ...]
    description: str
    inputs: dict
    citation: str
    evidence: dict
    conclusion: str
    branch: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")

    def replay(self) -> bool:
        evidence, conclusion = execute(self.op, self.inputs)
        return evidence == self.evidence and conclusion == self.conclusion

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "op": self.op, "candidates": list(self.candidates),
            "branch": self.branch, "description": self.description, "inputs": self.inputs,
            "evidence": self.evidence, "citation": self.citation, "conclusion": self.conclusion,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EliminationStep":
        return cls(data["kind"], data["op"], tuple(data["candidates"]), data["description"],
                   data["inputs"], data["citation"], data["evidence"], data["conclusion"],
                   data.get("branch"))


def compute_verdicts(candidates, steps) -> dict[int, str]:
    """First settling conclusion per candidate; branching steps need every branch closed."""
    verdicts: dict[int, str] = {}
    for c in candidates:
        mine = [s for s in steps if c in s.candidates]
        verdict = None
        open_branches: dict[str, str | None] | None = None
        for s in mine:
            if s.branch is None:
                if s.op == "divisor_search" and s.conclusion == "restriction":
                    open_branches = {b["d"]: None for b in s.evidence["branches"]}
                    continue
                if s.conclusion in DECISIVE:
                    verdict = DECISIVE[s.conclusion]
                    break
            elif open_branches is not None and s.branch in open_branches:
                if open_branches[s.branch] is None and s.conclusion in DECISIVE:
                    open_branches[s.branch] = DECISIVE[s.conclusion]
        if verdict is None and open_branches:
            outcomes = set(open_branches.values())
            if None not in outcomes:
                rest = outcomes - {"eliminated"}
                if not rest:
                    verdict = "eliminated"
                elif len(rest) == 1:
                    verdict = rest.pop()
        verdicts[c] = verdict or "unresolved"
    return verdicts


@dataclass
class EliminationCertificate:
    dimension: int
    external_axioms: bool
    candidates: tuple[int, ...]
    steps: list[EliminationStep] = field(default_factory=list)
    verdicts: dict[int, str] = field(default_factory=dict)

    def finalize(self) -> "EliminationCertificate":
        self.verdicts = compute_verdicts(self.candidates, self.steps)
        return self

    def survivors(self) -> dict[int, str]:
        return {c: v for c, v in self.verdicts.items() if v != "eliminated"
                and v != "eliminated-by-external-axiom"}

    def replay(self) -> list[int]:
        """Indices of steps whose recomputed evidence differs (empty when sound)."""
        bad = [i for i, s in enumerate(self.steps) if not s.replay()]
        if compute_verdicts(self.candidates, self.steps) != self.verdicts:
            bad.append(-1)
        return bad

    def check_invariants(self) -> list[str]:
        problems = []
        if set(self.verdicts) != set(self.candidates):
            problems.append("verdicts do not cover the candidate set exactly")
        for c, v in self.verdicts.items():
            if v not in VERDICTS:
                problems.append(f"unknown verdict {v!r} for {c}")
        for i, s in enumerate(self.steps):
            if set(s.candidates) - set(self.candidates):
                problems.append(f"step {i} refers to unknown candidates")
        derived = compute_verdicts(self.candidates, self.steps)
        for c in sorted(set(derived) & set(self.verdicts)):
            if derived[c] != self.verdicts[c]:
                problems.append(f"verdict for {c} is {self.verdicts[c]!r} but the steps give {derived[c]!r}")
        return problems

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "external_axioms": self.external_axioms,
            "candidates": list(self.candidates),
            "steps": [s.to_json() for s in self.steps],
            "verdicts": {str(c): v for c, v in sorted(self.verdicts.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "EliminationCertificate":
        return cls(int(data["dimension"]), bool(data["external_axioms"]),
                   tuple(data["candidates"]), [EliminationStep.from_json(s) for s in data["steps"]],
                   {int(c): v for c, v in data["verdicts"].items()})

    @classmethod
    def loads(cls, text: str) -> "EliminationCertificate":
        return cls.from_json(json.loads(text))
