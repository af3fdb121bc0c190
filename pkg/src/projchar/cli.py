"""Command-line front end: genus tables, dimension verdicts, certificates, self-checks.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 internal
inconsistency (a certificate that does not replay, a printed form that
neither matches nor carries a documented correction).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .casework import EliminationCertificate, compare_all, render_certificate, run_dimension
from .chern import elementary, power_sum, reduce_to_chern_basis
from .genera import MAX_N, genus_table
from .golden import GOLDEN_MAX_N, compare_table, load_errata, load_tables
from .polyring import chern_ring

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3
VERIFY_RANGE = (2, 7)

# verdicts other than plain elimination, per dimension, with and without external axioms
THEOREMS = {
    2: {3: "projective-space", -3: "ball-quotient"},
    3: {4: "projective-space", 2: "eliminated-by-external-axiom"},
    4: {5: "projective-space", -5: "ball-quotient"},
    5: {6: "projective-space"},
    6: {7: "projective-space", -7: "ball-quotient"},
    7: {8: "projective-space", 2: "unresolved", -2: "unresolved", 4: "unresolved",
        -4: "unresolved"},
}


def expected_verdicts(n: int, external_axioms: bool = True) -> dict[int, str]:
    out = dict(THEOREMS[n])
    if not external_axioms:
        out = {c: ("unresolved" if v == "eliminated-by-external-axiom" else v) for c, v in out.items()}
    return out


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"5"`` or ``"1..6"`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"--n expects an integer or a range a..b, got {text!r}") from None


@dataclass
class Output:
    lines: list[str] = field(default_factory=list)
    code: int = EXIT_OK

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def worst(self, code: int) -> None:
        self.code = max(self.code, code)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


# --- table -----------------------------------------------------------------------------


def _table_json(n: int) -> dict:
    t = genus_table(n).t_poly
    blocks = []
    for k in range(n + 1):
        block = t.coeff("z", k)
        if not block:
            continue
        den = block.denominator_lcm()
        blocks.append({"power": k, "denominator": den, "numerator": block.scale(den).render()})
    return {"n": n, "t": t.render_grouped("z"), "blocks": blocks}


def cmd_table(ns: list[int], fmt: str, golden: str | None, max_n: int) -> Output:
    out = Output()
    bad = [n for n in ns if not 1 <= n <= max_n]
    if bad:
        raise UsageError(f"table supports 1 <= n <= {max_n}; got {bad}")
    if golden is not None:
        tables = load_tables(None if golden == "" else golden)
        errata = load_errata()
        results = [compare_table(n, tables, errata) for n in ns]
        matched = sum(r.ok for r in results)
        if fmt == "json":
            out.add(_json({"results": [{"n": r.n, "status": r.status, "residual": r.residual,
                                        "errata": list(r.errata)} for r in results],
                           "matched": matched, "total": len(results)}))
        else:
            for r in results:
                line = f"t_{r.n}: {r.status}"
                if r.status == "erratum":
                    line += " (" + "; ".join(r.errata) + ")"
                elif r.status == "mismatch":
                    line += f" printed - computed = {r.residual}"
                out.add(line)
            out.add(f"{matched}/{len(results)} match")
        if matched != len(results):
            out.worst(EXIT_MISMATCH)
        return out
    if fmt == "json":
        out.add(_json({"tables": [_table_json(n) for n in ns]}))
    else:
        for n in ns:
            out.add(f"t_{n} = {genus_table(n).t_poly.render_grouped('z')}")
    return out


# --- verify / certify ------------------------------------------------------------------


def _check_verify_range(ns: list[int]) -> None:
    lo, hi = VERIFY_RANGE
    bad = [n for n in ns if not lo <= n <= hi]
    if bad:
        raise UsageError(f"dimension must lie in {lo}..{hi}; got {bad}")


def _consistency(cert: EliminationCertificate) -> list[str]:
    problems = list(cert.check_invariants())
    bad = EliminationCertificate.loads(cert.dumps()).replay()
    if bad:
        problems.append(f"steps {bad} do not replay")
    for c in compare_all(cert.dimension):
        if not c.ok:
            problems.append(f"printed form {c.key} diverges: {c.residual}")
    return problems


def cmd_verify(ns: list[int], fmt: str, external_axioms: bool) -> Output:
    _check_verify_range(ns)
    out = Output()
    reports = []
    for n in ns:
        cert = run_dimension(n, external_axioms)
        notable = {c: v for c, v in sorted(cert.verdicts.items()) if v != "eliminated"}
        expected = expected_verdicts(n, external_axioms)
        match = notable == expected
        problems = _consistency(cert)
        counts = {v: sum(1 for x in cert.verdicts.values() if x == v)
                  for v in sorted(set(cert.verdicts.values()))}
        reports.append({"dimension": n, "external_axioms": external_axioms,
                        "candidates": len(cert.candidates), "steps": len(cert.steps),
                        "counts": counts, "survivors": {str(c): v for c, v in notable.items()},
                        "expected": {str(c): v for c, v in sorted(expected.items())},
                        "match": match, "problems": problems})
        if problems:
            out.worst(EXIT_INCONSISTENT)
        elif not match:
            out.worst(EXIT_MISMATCH)
    if fmt == "json":
        out.add(_json({"reports": reports}))
        return out
    for r in reports:
        out.add(f"dimension {r['dimension']}: {r['candidates']} candidates, {r['steps']} steps,"
                f" external axioms {'on' if r['external_axioms'] else 'off'}")
        out.add("  counts: " + ", ".join(f"{v} {k}" for k, v in r["counts"].items()))
        out.add("  survivors: " + ", ".join(f"c1={c} -> {v}" for c, v in r["survivors"].items()))
        out.add(f"  theorem: {'match' if r['match'] else 'MISMATCH'}")
        for p in r["problems"]:
            out.add(f"  inconsistency: {p}")
    return out


def cmd_certify(ns: list[int], fmt: str, external_axioms: bool) -> Output:
    _check_verify_range(ns)
    out = Output()
    certs = [run_dimension(n, external_axioms) for n in ns]
    for cert in certs:
        if _consistency(cert):
            out.worst(EXIT_INCONSISTENT)
    if fmt == "json":
        data = [c.to_json() for c in certs]
        out.add(_json(data[0] if len(data) == 1 else {"certificates": data}))
    else:
        out.add("\n\n".join(render_certificate(c) for c in certs))
    return out


# --- selfcheck -------------------------------------------------------------------------


def _suite_duality(n: int) -> bool:
    return not any(p.startswith("duality") for p in genus_table(n).check())


def _suite_chi_top(n: int) -> bool:
    return not [p for p in genus_table(n).check() if not p.startswith("duality")]


def _suite_newton(n: int) -> bool:
    """Newton's identities ``p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k``."""
    ring = chern_ring(n)
    p = {k: reduce_to_chern_basis(power_sum(k, n)).to_ring(ring) for k in range(1, n + 1)}
    c = {k: ring.gen(f"c{k}") for k in range(1, n + 1)}
    for k in range(1, n + 1):
        rhs = c[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            rhs = rhs + (c[i] * p[k - i]).scale((-1) ** (i - 1))
        if p[k] != rhs:
            return False
    return True


def _suite_round_trip(n: int) -> bool:
    """Reducing ``e_i`` and ``e_i e_j`` (weight <= n) gives back ``c_i`` and ``c_i c_j``."""
    ring = chern_ring(n)
    for i in range(1, n + 1):
        if reduce_to_chern_basis(elementary(i, n)).to_ring(ring) != ring.gen(f"c{i}"):
            return False
        for j in range(i, n + 1 - i):
            got = reduce_to_chern_basis(elementary(i, n) * elementary(j, n)).to_ring(ring)
            if got != ring.gen(f"c{i}") * ring.gen(f"c{j}"):
                return False
    return True


SUITES = ("duality", "chi-top", "newton", "round-trip", "golden")


def cmd_selfcheck(max_n: int, golden: str | None, fmt: str) -> Output:
    if not 1 <= max_n <= MAX_N:
        raise UsageError(f"--max-n must lie in 1..{MAX_N}")
    out = Output()
    fixture = golden or "t_tables.json (packaged)"
    matrix: dict[str, dict[int, bool]] = {s: {} for s in SUITES}
    notes = []
    tables = None
    try:
        tables = load_tables(golden or None)
    except (OSError, ValueError, KeyError) as exc:
        notes.append(f"golden fixture {fixture} unreadable: {exc}")
    for n in range(1, max_n + 1):
        matrix["duality"][n] = _suite_duality(n)
        matrix["chi-top"][n] = _suite_chi_top(n)
        matrix["newton"][n] = _suite_newton(n)
        matrix["round-trip"][n] = _suite_round_trip(n)
        if n <= GOLDEN_MAX_N:
            ok = False
            if tables is not None:
                try:
                    ok = compare_table(n, tables).ok
                except Exception as exc:  # any parse failure means a corrupted fixture
                    notes.append(f"golden fixture {fixture}: t_{n} unusable: {exc}")
            matrix["golden"][n] = ok
            if not ok and tables is not None:
                notes.append(f"golden fixture {fixture}: t_{n} does not match")
    failed = any(not ok for row in matrix.values() for ok in row.values())
    if failed:
        out.worst(EXIT_MISMATCH)
    if fmt == "json":
        out.add(_json({"max_n": max_n, "fixture": fixture,
                       "suites": {s: {str(n): ok for n, ok in row.items()} for s, row in matrix.items()},
                       "notes": notes, "passed": not failed}))
        return out
    ns = range(1, max_n + 1)
    out.add(f"{'suite':12s}" + "".join(f"{n:>5d}" for n in ns))
    for s, row in matrix.items():
        out.add(f"{s:12s}" + "".join(f"{('ok' if row[n] else 'FAIL') if n in row else '-':>5s}" for n in ns))
    for note in notes:
        out.add(note)
    out.add("all suites pass" if not failed else "FAILED")
    return out


# --- entry point -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="projchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_default=None):
        p.add_argument("--n", default=n_default, required=n_default is None,
                       help="dimension or inclusive range a..b")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to this file instead of standard output")

    t = sub.add_parser("table", help="print the t_n polynomials")
    common(t, "1..9")
    t.add_argument("--golden", nargs="?", const="", default=None,
                   help="compare with the printed tables (optionally a fixture path)")
    t.add_argument("--max-n", type=int, default=MAX_N)
    for name, text in (("verify", "run a dimension script and check its verdicts"),
                       ("certify", "emit the elimination certificate")):
        v = sub.add_parser(name, help=text)
        common(v)
        v.add_argument("--no-external-axioms", action="store_true")
    s = sub.add_parser("selfcheck", help="run the property suites")
    s.add_argument("--max-n", type=int, default=MAX_N)
    s.add_argument("--golden", default=None, help="golden fixture path (default: packaged)")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "table":
            if args.max_n > MAX_N or args.max_n < 1:
                raise UsageError(f"--max-n must lie in 1..{MAX_N}")
            result = cmd_table(parse_range(args.n), args.format, args.golden, args.max_n)
        elif args.command == "verify":
            result = cmd_verify(parse_range(args.n), args.format, not args.no_external_axioms)
        elif args.command == "certify":
            result = cmd_certify(parse_range(args.n), args.format, not args.no_external_axioms)
        else:
            result = cmd_selfcheck(args.max_n, args.golden, args.format)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = result.text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
