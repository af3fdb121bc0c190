import json

import pytest

from projchar.casework import (
    PRINTED_FORMS, compare_all, compare_form, dim6_quadratic_setup, quantities, raw_c1_candidates, run_dimension,
)
from projchar.casework.steps import EliminationCertificate, build_expr, execute
from projchar.casework.scripts import render_certificate
from projchar.genera import projective_chern

ERRATA = {
    "dim6.a2", "dim6.a0", "dim6.P", "dim7.4|c1.chi-line", "dim7.4|c1.chi-line-halved", "dim7.c1=-16.chi-line-m2", "dim7.c1=-8.chi-line-m1",
}


def test_raw_candidates():
    assert raw_c1_candidates(2) == (-3, 3)
    assert len(raw_c1_candidates(3)) == 16
    assert raw_c1_candidates(6) == (-147, -49, -21, -7, -3, -1, 1, 3, 7, 21, 49, 147)


@pytest.mark.parametrize("n", range(2, 8))
def test_quantities_vanish_or_are_integral_on_projective_space(n):
    point = {k: v for k, v in projective_chern(n).items()}
    for q in quantities(n).values():
        for m in range(-n, n + 1):
            v = q.poly.evaluate({**{x: 0 for x in q.poly.ring.names}, **point, "m": m})
            if q.kind == "zero":
                assert v == 0, q.name
            else:
                assert v.denominator == 1, (q.name, m)


@pytest.mark.parametrize("n", range(2, 8))
def test_scans_do_not_exclude_projective_space(n):
    # every congruence used anywhere must admit the Chern numbers of P^n
    cert = run_dimension(n)
    point = projective_chern(n)
    scans = [s for s in cert.steps if s.op == "congruence_scan"]
    for s in scans:
        inputs = {"n": n, "constraints": s.inputs["constraints"], "fix": point}
        evidence, conclusion = execute("congruence_scan", inputs)
        assert conclusion == "restriction", s.description
        assert evidence["survivors"] >= 1


def test_printed_forms_match_or_are_documented():
    results = {r.key: r for r in compare_all()}
    assert set(results) == {f.key for f in PRINTED_FORMS}
    assert all(r.ok for r in results.values())
    assert {k for k, r in results.items() if r.status == "erratum"} == ERRATA


def test_corrupted_printed_form_is_a_mismatch():
    from dataclasses import replace
    form = next(f for f in PRINTED_FORMS if f.key == "dim5.a2-congruence")
    assert compare_form(form).status == "match"
    assert compare_form(replace(form, text=form.text + " + 1")).status == "mismatch"


def test_dim6_setup():
    s = dim6_quadratic_setup()
    assert s.quotient_integral
    assert s.R_value(-49) == 7**6 * 37 * 251 * 1559 * 131849
    assert s.R_value(1) == s.R_value(-1) == -23 * 1746929
    assert s.R_value(-7) == 7**4 * 101 * 152533


def test_build_expr_without_bindings():
    p = build_expr(5, {"quantity": "binomial_a1", "scale": 2})
    assert p.render() == "c1 - 6"


@pytest.mark.parametrize("n", range(2, 8))
def test_certificate_replay_and_json(n):
    cert = run_dimension(n)
    assert cert.replay() == [] and cert.check_invariants() == []
    again = EliminationCertificate.loads(cert.dumps())
    assert again.dumps() == cert.dumps()
    assert again.replay() == []
    assert run_dimension(n).dumps() == cert.dumps()


def test_tampered_certificate_fails_replay():
    cert = run_dimension(5)
    data = json.loads(cert.dumps())
    idx = next(i for i, s in enumerate(data["steps"]) if s["op"] == "congruence_scan")
    data["steps"][idx]["evidence"]["survivors"] = 12345
    assert EliminationCertificate.from_json(data).replay() == [idx]


def test_tampered_verdict_is_caught():
    cert = run_dimension(4)
    data = json.loads(cert.dumps())
    data["verdicts"]["-5"] = "eliminated"
    assert EliminationCertificate.from_json(data).check_invariants()


def test_external_axioms_toggle():
    assert run_dimension(3).verdicts[2] == "eliminated-by-external-axiom"
    assert run_dimension(3, external_axioms=False).verdicts[2] == "unresolved"


def test_render_mentions_every_candidate():
    text = render_certificate(run_dimension(2))
    assert "c1 =    -3: ball-quotient" in text or "-3" in text
    assert "projective-space" in text
