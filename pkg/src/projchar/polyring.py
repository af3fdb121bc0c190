"""Exact multivariate polynomials over Q with weighted grading and truncation.

A :class:`Ring` names the variables and their weights.  A :class:`Poly` is a
dense map from exponent tuples to rationals, optionally truncated at a weighted
degree; truncation is applied eagerly at every product.  Weight-0 variables
(``y``, ``z``, ``m``, ...) never count towards truncation.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from math import factorial, lcm
from operator import add
from typing import Iterable, Mapping

from .bigmath import Q, rat

__all__ = [
    "Ring",
    "Poly",
    "UniSeries",
    "chern_ring",
    "exp_series",
    "reciprocal_series",
    "substitute",
    "evaluate",
    "parse",
]


@dataclass(frozen=True)
class Ring:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    @classmethod
    def of(cls, *spec: str | tuple[str, int]) -> "Ring":
        """``Ring.of(("c1", 1), ("c2", 2), "z")``; bare names get weight 0."""
        names, weights = [], []
        for s in spec:
            if isinstance(s, str):
                names.append(s)
                weights.append(0)
            else:
                names.append(s[0])
                weights.append(int(s[1]))
        return cls(tuple(names), tuple(weights))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in ring {self.names}") from None

    def weight_of(self, exp: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(exp, self.weights) if e)

    def zero(self, trunc: int | None = None) -> "Poly":
        return Poly(self, {}, trunc)

    def const(self, c, trunc: int | None = None) -> "Poly":
        return Poly(self, {(0,) * len(self): rat(c)}, trunc)

    def one(self, trunc: int | None = None) -> "Poly":
        return self.const(1, trunc)

    def gen(self, name: str, trunc: int | None = None) -> "Poly":
        exp = [0] * len(self)
        exp[self.index(name)] = 1
        return Poly(self, {tuple(exp): Q(1)}, trunc)

    def gens(self, trunc: int | None = None) -> tuple["Poly", ...]:
        return tuple(self.gen(n, trunc) for n in self.names)

    def extend(self, *spec: str | tuple[str, int]) -> "Ring":
        extra = Ring.of(*spec)
        return Ring(self.names + extra.names, self.weights + extra.weights)

    def to_json(self) -> list[dict]:
        return [{"name": n, "weight": w} for n, w in zip(self.names, self.weights)]


def chern_ring(n: int, *extra: str | tuple[str, int]) -> Ring:
    """Variables ``c1..cn`` with ``weight(ci) = i``, then any extra variables."""
    return Ring.of(*((f"c{i}", i) for i in range(1, n + 1)), *extra)


def _merge_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Poly:
    __slots__ = ("ring", "terms", "trunc")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object] | None = None,
                 trunc: int | None = None, *, _trusted: bool = False):
        self.ring = ring
        self.trunc = trunc
        if _trusted:
            self.terms = terms
            return
        clean: dict[tuple[int, ...], Q] = {}
        n = len(ring)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for ring {ring.names}")
            c = rat(c)
            if not c:
                continue
            if trunc is not None and ring.weight_of(exp) > trunc:
                continue
            clean[exp] = clean.get(exp, Q(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # -- basic protocol -----------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            c = rat(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * len(self.ring): c} if c else {})

    __hash__ = None  # mutable-looking; compare by value only

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(
                    f"incompatible rings {self.ring.names}/{self.ring.weights} "
                    f"and {other.ring.names}/{other.ring.weights}"
                )
            return other
        return self.ring.const(other)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        trunc = _merge_trunc(self.trunc, other.trunc)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return Poly(self.ring, out, trunc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, self.trunc, _trusted=True)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = rat(c)
        if not c:
            return self.ring.zero(self.trunc)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()}, self.trunc, _trusted=True)

    def __truediv__(self, c) -> "Poly":
        c = rat(c)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        trunc = _merge_trunc(self.trunc, other.trunc)
        wt = self.ring.weight_of
        left = [(e, c, wt(e)) for e, c in self.terms.items()]
        right = sorted(((e, c, wt(e)) for e, c in other.terms.items()), key=lambda t: t[2])
        out: dict[tuple[int, ...], Q] = {}
        get = out.get
        for ea, ca, da in left:
            limit = None if trunc is None else trunc - da
            for eb, cb, db in right:
                if limit is not None and db > limit:
                    break
                e = tuple(map(add, ea, eb))
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return Poly(self.ring, {e: c for e, c in out.items() if c}, trunc, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one(self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ----------------------------------------------------------

    def truncate(self, degree: int) -> "Poly":
        return Poly(self.ring, self.terms, _merge_trunc(self.trunc, degree))

    def with_trunc(self, trunc: int | None) -> "Poly":
        """Same terms, with the truncation bound replaced (terms are re-filtered)."""
        return Poly(self.ring, self.terms, trunc)

    def homogeneous(self, degree: int) -> "Poly":
        """The weighted-degree ``degree`` slice."""
        wt = self.ring.weight_of
        return Poly(self.ring, {e: c for e, c in self.terms.items() if wt(e) == degree},
                    self.trunc, _trusted=True)

    def constant_term(self) -> Q:
        return self.terms.get((0,) * len(self.ring), Q(0))

    def is_constant(self) -> bool:
        zero = (0,) * len(self.ring)
        return all(e == zero for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.names[i] for i in sorted(used)]

    def coeff(self, name: str, k: int) -> "Poly":
        """Coefficient of ``name**k`` as a polynomial in the remaining variables."""
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Poly(self.ring, out, self.trunc, _trusted=True)

    def monomial_coeff(self, **powers: int) -> Q:
        exp = [0] * len(self.ring)
        for name, k in powers.items():
            exp[self.ring.index(name)] = k
        return self.terms.get(tuple(exp), Q(0))

    def to_ring(self, ring: Ring, trunc: int | None = None) -> "Poly":
        """Re-express in ``ring``; every used variable must exist there by name."""
        used = set(self.variables())
        idx = [ring.index(n) if n in used else -1 for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(ring)
            for i, k in enumerate(e):
                if k:
                    new[idx[i]] = k
            out[tuple(new)] = c
        return Poly(ring, out, trunc)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.ring, {e: fn(c) for e, c in self.terms.items()}, self.trunc)

    def denominator_lcm(self) -> int:
        return lcm(1, *(int(c.denominator) for c in self.terms.values()))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Q]]:
        """Terms in descending graded-lex order (weighted degree, then exponents)."""
        wt = self.ring.weight_of
        return sorted(self.terms.items(), key=lambda t: (wt(t[0]), t[0]), reverse=True)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]) -> Q:
        return evaluate(self, assignment)

    def partial(self, assignment: Mapping[str, object]) -> "Poly":
        """Bind some variables to numbers; the rest pass through unchanged."""
        idx = {self.ring.index(n): rat(v) for n, v in assignment.items()}
        out: dict[tuple[int, ...], Q] = {}
        for e, c in self.terms.items():
            v = c
            new = list(e)
            for i, val in idx.items():
                if e[i]:
                    v *= val ** e[i]
                    new[i] = 0
            key = tuple(new)
            out[key] = out.get(key, Q(0)) + v
        return Poly(self.ring, out, self.trunc)

    def eval_mod(self, assignment: Mapping[str, int], modulus: int) -> int:
        """Residue of the value at integer points; denominators must be units."""
        total = 0
        idx = [(self.ring.index(n), int(v)) for n, v in assignment.items()]
        bound = {i for i, _ in idx}
        for e, c in self.terms.items():
            if any(k and i not in bound for i, k in enumerate(e)):
                raise ValueError(f"unbound variable in {self.render()}")
            num = int(c.numerator)
            den = int(c.denominator)
            term = num * pow(den, -1, modulus) if den != 1 else num
            for i, v in idx:
                if e[i]:
                    term *= pow(v, e[i], modulus)
            total = (total + term) % modulus
        return total

    # -- text & JSON ---------------------------------------------------------

    def _mono_text(self, exp: tuple[int, ...]) -> str:
        parts = []
        for name, k in zip(self.ring.names, exp):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def render(self) -> str:
        """Canonical one-line text: descending graded-lex, rationals as p/q."""
        if not self.terms:
            return "0"
        return _join_terms((c, self._mono_text(e)) for e, c in self.sorted_terms())

    def render_grouped(self, name: str) -> str:
        """Group by powers of ``name`` (ascending), factoring out a common rational.

        ``c4 - 2*c4*z + 1/12*(c1*c3 + 14*c4)*z^2`` style.
        """
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for k in range(self.degree_in(name) + 1):
            block = self.coeff(name, k)
            if not block:
                continue
            zk = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            content = block.content()
            inner = block.scale(1 / content)
            if len(inner) == 1:
                (e, c), = inner.terms.items()
                mono = "*".join(p for p in (inner._mono_text(e), zk) if p)
                pieces.append(_term_text(c * content, mono))
                continue
            body = inner.render()
            mono = "*".join(p for p in (f"({body})", zk) if p)
            if content == 1:
                pieces.append(_term_text(Q(1), mono))
            else:
                pieces.append(_term_text(content, mono))
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else ("-" + text[2:] if text.startswith("- ") else text)

    def content(self) -> Q:
        """Positive rational ``g/D`` with ``self / content`` primitive and integral,
        signed so the leading coefficient of the quotient is positive."""
        from math import gcd

        if not self.terms:
            return Q(1)
        d = self.denominator_lcm()
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * d))
        lead = self.sorted_terms()[0][1]
        sign = 1 if lead > 0 else -1
        return Q(sign * g, d)

    def to_json(self) -> dict:
        return {
            "vars": self.ring.to_json(),
            "trunc": self.trunc,
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly":
        ring = Ring(tuple(v["name"] for v in data["vars"]), tuple(int(v["weight"]) for v in data["vars"]))
        terms = {}
        for t in data["terms"]:
            e = tuple(t["exp"])
            if e in terms:
                raise ValueError(f"duplicate monomial {e}")
            terms[e] = Q(int(t["num"]), int(t["den"]))
        return cls(ring, terms, data.get("trunc"))

    @classmethod
    def loads(cls, text: str) -> "Poly":
        return cls.from_json(json.loads(text))


def _term_text(c: Q, mono: str) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    return f"{sign} {body}"


def _join_terms(items: Iterable[tuple[Q, str]]) -> str:
    text = " ".join(_term_text(c, m) for c, m in items)
    if text.startswith("+ "):
        return text[2:]
    return "-" + text[2:]


# --- module-level operations --------------------------------------------------


def substitute(p: Poly, bindings: Mapping[str, Poly], ring: Ring | None = None) -> Poly:
    """Compose: replace each bound variable by a polynomial.

    All binding values must live in one target ring (``ring`` if given, else
    that of the first binding, else ``p.ring``); unbound variables of ``p`` pass
    through by name and must exist in the target ring.
    """
    if ring is None:
        ring = next(iter(bindings.values())).ring if bindings else p.ring
    for name in bindings:
        p.ring.index(name)
    trunc = p.trunc
    for v in bindings.values():
        if v.ring != ring:
            raise ValueError("all bindings must share the target ring")
        trunc = _merge_trunc(trunc, v.trunc)
    images = []
    for name in p.ring.names:
        if name in bindings:
            images.append(bindings[name].with_trunc(trunc))
        else:
            images.append(ring.gen(name, trunc))
    power_cache: dict[tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        key = (i, k)
        if key not in power_cache:
            power_cache[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
        return power_cache[key]

    out = ring.zero(trunc)
    for e, c in p.terms.items():
        term = ring.const(c, trunc)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def evaluate(p: Poly, assignment: Mapping[str, object]) -> Q:
    values = []
    for name in p.ring.names:
        values.append(rat(assignment[name]) if name in assignment else None)
    total = Q(0)
    for e, c in p.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                if values[i] is None:
                    raise KeyError(f"variable {p.ring.names[i]!r} is unbound")
                v *= values[i] ** k
        total += v
    return total


def exp_series(p: Poly, order: int) -> Poly:
    """``sum_{k<=order} p^k / k!`` truncated at weighted degree ``order``."""
    if p.constant_term():
        raise ValueError("exp_series needs a zero constant term")
    p = p.truncate(order)
    result = p.ring.one(p.trunc)
    power = p.ring.one(p.trunc)
    for k in range(1, order + 1):
        power = power * p
        if not power:
            break
        result = result + power.scale(Q(1, factorial(k)))
    return result


# --- univariate series ---------------------------------------------------------


@dataclass(frozen=True)
class UniSeries:
    """Truncated power series ``sum coeffs[k] x^k`` for ``k <= order``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Q:
        return self.coeffs[k]

    def __mul__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.order, other.order)
        return UniSeries(
            tuple(sum((self[j] * other[k - j] for j in range(k + 1)), Q(0)) for k in range(n + 1))
        )

    def to_poly(self, ring: Ring, name: str, trunc: int | None = None) -> Poly:
        i = ring.index(name)
        terms = {}
        for k, c in enumerate(self.coeffs):
            e = [0] * len(ring)
            e[i] = k
            terms[tuple(e)] = c
        return Poly(ring, terms, trunc)

    @classmethod
    def exp(cls, order: int, scale=1) -> "UniSeries":
        """Taylor coefficients of ``exp(scale * x)``."""
        s = rat(scale)
        return cls(tuple(s**k / factorial(k) for k in range(order + 1)))


def reciprocal_series(u: UniSeries) -> UniSeries:
    if not u[0]:
        raise ValueError("reciprocal needs a nonzero constant term")
    inv0 = 1 / u[0]
    r = [inv0]
    for k in range(1, u.order + 1):
        s = sum((u[j] * r[k - j] for j in range(1, k + 1)), Q(0))
        r.append(-s * inv0)
    return UniSeries(tuple(r))


# --- parsing -------------------------------------------------------------------


def parse(text: str, ring: Ring, trunc: int | None = None) -> Poly:
    """Parse ``"3*c1*c2^2 - 1/2*c1 + 7"`` into a polynomial over ``ring``.

    Accepts ``+ - * / ^ **``, parentheses, integers and ring variable names.
    Division is only allowed by constants.
    """
    tree = ast.parse(" ".join(text.split()).replace("^", "**"), mode="eval")

    def walk(node) -> Poly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring.const(node.value, trunc)
        if isinstance(node, ast.Name):
            return ring.gen(node.id, trunc)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return left ** node.right.value
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant():
                    raise ValueError("division by a non-constant")
                return left / right.constant_term()
        raise ValueError(f"unsupported syntax in {text!r}: {ast.dump(node)}")

    return walk(tree)
