"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict; the lines are printed at the end of the
pytest run (see conftest.py), and also when this file is run as a script.
"""
import json
import random
import subprocess
import sys
import time

import pytest

from projchar.bigmath import factorize, is_perfect_square, is_prime, rat
from projchar.casework import compare_all, dim6_quadratic_setup, run_dimension
from projchar.casework.steps import EliminationCertificate
from projchar.chern import elementary, power_sum, reduce_to_chern_basis
from projchar.cli import THEOREMS
from projchar.dioph import lemma1_polynomials
from projchar.genera import (
    alternating_binomial, binomial_decompose, chi_line_bundle, genus_table, projective_chern,
    projective_specialize, t_low_order_check, t_low_order_closed_form,
)
from projchar.polyring import Poly, chern_ring, parse

RESULTS: dict[int, str] = {}


def record(k: int, name: str, ok: bool, detail: str) -> None:
    RESULTS[k] = f"criterion {k} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    assert ok, RESULTS[k]


def _cold(code: str) -> float:
    """Wall time of ``code`` in a fresh interpreter, so no cache is warm."""
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def test_criterion_1_golden_tables():
    code = (
        "import time; t0 = time.perf_counter()\n"
        "from projchar.golden import compare_table\n"
        "rs = [compare_table(n) for n in range(1, 10)]\n"
        "assert all(r.ok for r in rs), [r for r in rs if not r.ok]\n"
        "print(time.perf_counter() - t0)"
    )
    elapsed = _cold(code)
    from projchar.golden import compare_table
    statuses = {n: compare_table(n).status for n in range(1, 10)}
    errata = sorted(n for n, s in statuses.items() if s == "erratum")
    ok = all(s in ("match", "erratum") for s in statuses.values()) and elapsed < 10
    record(1, "golden tables n=1..9", ok, f"{elapsed:.1f}s, documented errata at n={errata}")


def test_criterion_2_duality():
    checked = 0
    for n in range(1, 10):
        t = genus_table(n)
        for p in range(n + 1):
            assert t.chi_p[p] == t.chi_p[n - p].scale((-1) ** n)
            checked += 1
    record(2, "duality", True, f"{checked} (n, p) pairs, exact")


def test_criterion_3_specializations():
    for n in range(1, 10):
        t = genus_table(n)
        top = chern_ring(n).gen(f"c{n}").to_ring(t.chi_y.ring)
        assert t.chi_y.partial({"y": -1}) == top
        if n >= 2:
            assert t_low_order_check(n) == t_low_order_closed_form(n)
        assert projective_specialize(n) == alternating_binomial(n)
    record(3, "Euler-characteristic specializations", True, "n=1..9")


def test_criterion_4_hrr():
    for n in range(1, 8):
        poly = chi_line_bundle(n).poly
        point = {**{v: 0 for v in poly.ring.names}, **projective_chern(n)}
        for m in range(-n, n + 1):
            want = rat(1)
            for j in range(1, n + 1):
                want = want * rat(m + j) / j
            assert poly.evaluate({**point, "m": m}) == want
    chi = {r.key: r for r in compare_all(7)}["dim7.chi-line"]
    record(4, "HRR sanity", chi.status == "match", f"P^1..P^7, m in [-n, n]; 60480 chi(L^m) n=7 {chi.status}")


def test_criterion_5_binomial_integrality():
    for n in range(2, 10):
        d = binomial_decompose(chi_line_bundle(n).poly, n)
        ring = d.coeffs[1].ring
        assert d.coeffs[1] == parse(f"1/2*c1 - {n + 1}/2", ring)
        two_a1, twelve_a2 = lemma1_polynomials(n)
        assert twelve_a2.to_ring(ring) == d.coeffs[2].scale(12)
        assert twelve_a2.to_ring(ring) == parse(f"c1^2 + c2 - {3 * n}*c1 + {(n + 1) * (3 * n - 2)}/2", ring)
    forms = {r.key: r.status for r in compare_all()}
    wanted = {"dim5.a2-congruence": "match", "dim6.a2-congruence": "match", "dim7.a2-congruence": "match"}
    got = {k: forms[k] for k in wanted}
    record(5, "binomial integrality and congruences", got == wanted, f"a1, a2 for n=2..9; {got}")


@pytest.mark.parametrize("n", range(2, 8))
def test_criterion_6_verdicts(n):
    code = (
        "import time; t0 = time.perf_counter()\n"
        "from projchar.casework import run_dimension\n"
        f"c = run_dimension({n}); assert c.replay() == []\n"
        "print(time.perf_counter() - t0)"
    )
    elapsed = _cold(code)
    survivors = {c: v for c, v in run_dimension(n).verdicts.items() if v != "eliminated"}
    ok = survivors == THEOREMS[n] and elapsed < 60
    if n == 6:
        ball = [s for s in run_dimension(6).steps if s.op == "chern_inequality" and -7 in s.candidates]
        ok = ok and [int(s.inputs["c2"]) for s in ball] == [21]
    line = f"n={n} {dict(sorted(survivors.items()))} in {elapsed:.2f}s"
    prev = RESULTS.get(6, "").partition("(")[2].rstrip(")")
    RESULTS[6] = f"criterion 6 dimension verdicts: {'PASS' if ok and 'FAIL' not in RESULTS.get(6, '') else 'FAIL'} ({(prev + '; ') if prev else ''}{line})"
    assert ok, line


PRINTED_D = {
    214: "2^7 * 37 * 1559 * 7087681 * 21780337",
    5021: "2^8 * 7^3 * 13 * 193 * 131849 * 9694436995073",
    98314662210: "2^7 * 7^8 * 17 * 251 * 317 * 1559 * 131849 * 165057229 * 1203263426047496730660859",
}
PRINTED_R = {
    -49: "7^6 * 37 * 251 * 1559 * 131849",
    1: "-(23 * 1746929)",
    -1: "-(23 * 1746929)",
    -7: "7^4 * 101 * 152533",
}


def test_criterion_7_dimension6_evidence():
    cert = run_dimension(6)
    branches = {int(s.evidence["e2"]): s.evidence for s in cert.steps
                if s.op == "square_test" and s.inputs["c1"] == -49}
    assert set(branches) == set(PRINTED_D)
    for e2, ev in branches.items():
        assert ev["D_printed_a0_factored"] == PRINTED_D[e2]
        assert ev["D_printed_a0_is_square"] is False
        assert is_perfect_square(int(ev["D_printed_a0"])) is None
        # the discriminant recomputed from the engine's own a0 is no square either
        assert ev["is_square"] is False and is_perfect_square(int(ev["D"])) is None
    setup = dim6_quadratic_setup()
    for c1, text in PRINTED_R.items():
        f = factorize(setup.R_value(c1))
        assert f.verify() and str(f) == text, (c1, str(f))
    record(7, "dimension-6 evidence", True, f"e2 in {sorted(branches)}, D and R factorizations as printed")


def test_criterion_8_property_suites():
    rng = random.Random(20240607)
    ring = chern_ring(3, "z")

    def rand_poly():
        return Poly(ring, {tuple(rng.randrange(3) for _ in range(4)): rat(f"{rng.randint(-9, 9)}/{rng.randint(1, 6)}")
                           for _ in range(rng.randint(0, 5))})

    cases = 0
    for _ in range(120):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a and a * b == b * a
        assert (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
        assert parse(a.render(), ring) == a and Poly.loads(a.dumps()) == a
        cases += 1
    for n in range(1, 10):
        r = chern_ring(n)
        c = {k: r.gen(f"c{k}") for k in range(1, n + 1)}
        p = {k: reduce_to_chern_basis(power_sum(k, n)).to_ring(r) for k in range(1, n + 1)}
        for k in range(1, n + 1):
            rhs = c[k].scale((-1) ** (k - 1) * k)
            for i in range(1, k):
                rhs = rhs + (c[i] * p[k - i]).scale((-1) ** (i - 1))
            assert p[k] == rhs
    trips = 0
    for _ in range(100):
        n = rng.randint(2, 7)
        i = rng.randint(1, n)
        j = rng.randint(1, max(1, n - i)) if i < n else 0
        s = elementary(i, n) * (elementary(j, n) if j else 1)
        want = chern_ring(n).gen(f"c{i}") * (chern_ring(n).gen(f"c{j}") if j else 1)
        assert reduce_to_chern_basis(s).to_ring(chern_ring(n)) == want
        trips += 1
    for _ in range(100):
        v = rng.randint(2, 10**18) * rng.choice((1, -1))
        f = factorize(v)
        assert f.value() == v and all(is_prime(q) for q in f.primes())
    for n in range(2, 8):
        cert = run_dimension(n)
        again = EliminationCertificate.loads(cert.dumps())
        assert again.replay() == [] and again.dumps() == run_dimension(n).dumps()
    record(8, "property suites", True,
           f"{cases} ring cases, Newton k<=9, {trips} round trips, 100 factorizations, replay n=2..7")


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    sys.exit(code)
