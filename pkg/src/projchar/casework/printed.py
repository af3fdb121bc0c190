"""Printed forms of the case-analysis formulas and their comparison with the engine.

Each entry pairs a formula as it appears in the printed derivation with the
recomputed quantity it should equal (exactly, or modulo ``modulus``).  Known
misprints carry a ``corrected`` form; the comparison then checks that the
correction agrees with the engine and that the printed text does not.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..bigmath import rat
from ..polyring import Poly, parse, substitute
from .equations import dim6_quadratic_setup, quantity, work_ring
from .steps import _bindings, build_expr, reduce_mod

__all__ = [
    "PRINTED_A0",
    "PrintedForm",
    "FormComparison",
    "PRINTED_FORMS",
    "printed_a0_value",
    "computed_form",
    "compare_form",
    "compare_all",
]

PRINTED_A0 = ("-30*c2^2 - 43*c1^2*c2^3 + 25*c1^4*c2^2 + 6*c1^6*c2 + 215355*c2"
              " - 2*c1^8 + 79135*c1^2")


def printed_a0_value(c1: int, c2: int) -> int:
    """The printed ``a0`` of the sixfold quadratic, evaluated as printed."""
    return (-30 * c2**2 - 43 * c1**2 * c2**3 + 25 * c1**4 * c2**2 + 6 * c1**6 * c2
            + 215355 * c2 - 2 * c1**8 + 79135 * c1**2)


@dataclass(frozen=True)
class PrintedForm:
    key: str
    n: int
    text: str
    spec: dict  # what the text should equal, as a build_expr spec
    fix: dict = field(default_factory=dict)
    subs: dict = field(default_factory=dict)
    relations: tuple = ()
    modulus: int | None = None
    corrected: str | None = None
    note: str = ""
    text_scale: int = 1  # the text times this equals the computed value


@dataclass(frozen=True)
class FormComparison:
    key: str
    status: str  # match | erratum | mismatch
    residual: str  # printed minus computed (reduced when modular)
    corrected_residual: str | None = None

    @property
    def ok(self) -> bool:
        return self.status in ("match", "erratum")


def _residual(form: PrintedForm, text: str, computed: Poly) -> Poly:
    ring = work_ring(form.n)
    diff = parse(text, ring).scale(form.text_scale) - computed
    return reduce_mod(diff, form.modulus) if form.modulus else diff


def _derived(name: str) -> Poly:
    setup = dim6_quadratic_setup()
    ring = work_ring(6)
    table = {
        "dim6_a2": setup.a2, "dim6_a1": setup.a1, "dim6_a0": setup.a0, "dim6_R": setup.R,
        "dim6_P": quantity(6, "chi_line").poly - 1,
    }
    return table[name].to_ring(ring)


def computed_form(form: PrintedForm) -> Poly:
    """The engine's value of what ``form.text`` is supposed to be."""
    bindings = _bindings(form.n, form.fix, form.subs)
    if "derived" in form.spec:
        p = _derived(form.spec["derived"])
        if bindings:
            p = substitute(p, bindings, work_ring(form.n))
        return p.scale(rat(form.spec.get("scale", 1)))
    return build_expr(form.n, form.spec, bindings, list(form.relations))


def compare_form(form: PrintedForm) -> FormComparison:
    computed = computed_form(form)
    res = _residual(form, form.text, computed)
    if form.corrected is None:
        return FormComparison(form.key, "mismatch" if res else "match", res.render())
    cres = _residual(form, form.corrected, computed)
    status = "erratum" if res and not cres else "mismatch"
    return FormComparison(form.key, status, res.render(), cres.render())


def compare_all(n: int | None = None) -> list[FormComparison]:
    return [compare_form(f) for f in PRINTED_FORMS if n is None or f.n == n]


_F = PrintedForm

PRINTED_FORMS: tuple[PrintedForm, ...] = (
    # fourfolds
    _F("dim4.todd-quadratic", 4, "3*c2^2 + 4*c1^2*c2 - c1^4 - 675",
       {"quantity": "todd_genus", "scale": 720}),
    # fivefolds
    _F("dim5.todd-cubic", 5, "3*c1*c2^2 - c1^3*c2 + c1^2*c3 - 1530",
       {"quantity": "todd_genus", "scale": 1440}),
    _F("dim5.a2-congruence", 5, "c1^2 - 3*c1 + c2 + 3", {"quantity": "binomial_a2", "scale": 12},
       modulus=12),
    _F("dim5.chi-L.c1=-10", 5,
       "720 + (-c1^4 + 4*c1^2*c2 + 3*c2^2 + c1*c3 - c4) + 15*c1*c2 + 10*(c1^2 + c2) + 15*c1 + 6",
       {"quantity": "chi_line", "m": 1, "scale": 720}),
    _F("dim5.chi-T.c1=2", 5, "-3*c2^2 + 2*c2 + 731",
       {"quantity": "chi_tangent", "m": -1, "scale": 24},
       fix={"c1": 2, "c4": 45}, subs={"c3": "(1530 - 6*c2^2 + 8*c2)/4"}),
    _F("dim5.chi-T.c1=-2", 5, "3*c2^2 - 2*c2 + 727",
       {"quantity": "chi_tangent", "m": 1, "scale": 24},
       fix={"c1": -2, "c4": -45}, subs={"c3": "(1530 + 6*c2^2 - 8*c2)/4"}),
    _F("dim5.chi-T.c1=-6", 5, "45*c2^2 - 520/3*c2 - 171",
       {"quantity": "chi_tangent", "m": 1, "scale": 24},
       fix={"c1": -6, "c4": -15}, subs={"c3": "(1530 + 18*c2^2 - 216*c2)/36"},
       note="the text says m = -1; the displayed form is the m = 1 value"),
    # sixfolds
    _F("dim6.eq-z4", 6, "-c1^3*c3 + 3*c1*c2*c3 + c1^2*c4 - 3*c3^2 + 3*c2*c4 - 3675",
       {"quantity": "genus_z4", "scale": 720}),
    _F("dim6.eq-z6", 6,
       "2*c1^6 - 12*c1^4*c2 + 11*c1^2*c2^2 + 5*c1^3*c3 + 10*c2^3 + 11*c1*c2*c3"
       " - 5*c1^2*c4 - c3^2 - 9*c2*c4 - 60760",
       {"quantity": "genus_z6", "scale": 60480}),
    _F("dim6.a2-congruence", 6, "c1^2 + c2 + 6*c1 - 4", {"quantity": "binomial_a2", "scale": 12},
       modulus=12),
    _F("dim6.chi-line-symmetric", 6, "-c4 + c1*c3 + 3*c2^2 + 4*c1^2*c2 - c1^4 + 5*(c1^2 + c2) + 2",
       {"quantity": "chi_line_sym", "scale": 720}),
    # sevenfolds
    _F("dim7.eq-z5", 7, "c1^3*c4 - 3*c1*c2*c4 - c1^2*c5 + 3*c3*c4 - 3*c2*c5 + 7728",
       {"quantity": "genus_z5", "scale": 480}),
    _F("dim7.eq-z7", 7,
       "-2*c1^5*c2 + 10*c1^3*c2^2 + 2*c1^4*c3 - 10*c1*c2^3 - 11*c1^2*c2*c3 - 2*c1^3*c4"
       " + c1*c3^2 + 9*c1*c2*c4 + 2*c1^2*c5 + 120512",
       {"quantity": "genus_z7", "scale": 120960}),
    _F("dim7.a2-congruence", 7, "c1^2 + c2 + 3*c1 - 8", {"quantity": "binomial_a2", "scale": 12},
       modulus=12),
    _F("dim6.a2", 6, "2*(15 + 8*c1^2)", {"derived": "dim6_a2"},
       corrected="2*(15*c2 + 8*c1^2)", note="c2 dropped from the first term"),
    _F("dim6.a1", 6, "-4*c1*c2*(15*c2 + 8*c1^2)", {"derived": "dim6_a1"}),
    _F("dim6.a0", 6, PRINTED_A0, {"derived": "dim6_a0"},
       corrected=PRINTED_A0.replace("-30*c2^2", "-30*c2^4"),
       note="c2^2 printed for c2^4; the printed discriminants were computed with the"
            " misprinted a0, while R(c1) uses the correct one"),
    _F("dim6.R", 6, "c1^2*(6758*c1^6 - 40186125)", {"derived": "dim6_R"}),
    _F("dim6.P", 6,
       "m/1440*(-c1*c4 + c1^2*c3 + 3*c1*c2^2 - c1^3*c2)"
       " + m^2/2/720*(-c4 + c1*c3 + 3*c2^2 + 4*c1^2*c2 - c1^4)"
       " + m^3/6/24*c1*c2 + t^4/24/12*(c1^2 + c2) + m^5/120/2*c1 + m^6/720",
       {"derived": "dim6_P"},
       corrected="m/1440*(-c1*c4 + c1^2*c3 + 3*c1*c2^2 - c1^3*c2)"
                 " + m^2/2/720*(-c4 + c1*c3 + 3*c2^2 + 4*c1^2*c2 - c1^4)"
                 " + m^3/6/24*c1*c2 + m^4/24/12*(c1^2 + c2) + m^5/120/2*c1 + m^6/720",
       note="t^4 printed for m^4"),
    _F("dim7.chi-line", 7,
       "12*m^7 + 42*m^6*c1 + 42*m^5*(c1^2 + c2) + 105*m^4*c1*c2"
       " + 2*m^3*(-7*c1^4 + 28*c1^2*c2 + 21*c2^2 + 7*c1*c3 - 7*c4)"
       " + m^2*(-21*c1^3*c2 + 63*c1*c2^2 + 21*c1^2*c3 - 21*c1*c4)"
       " + m*(2*c1^6 - 12*c1^4*c2 + 11*c1^2*c2^2 + 5*c1^3*c3 + 10*c2^3 + 11*c1*c2*c3"
       " - 5*c1^2*c4 - c3^2 - 9*c2*c4 - 2*c1*c5 + 2*c6) + 60480",
       {"quantity": "chi_line", "scale": 60480}),
    _F("dim7.7|c1.eq-z7", 7, "-10*d1*c2^3 + d1*c3^2 + 9*d1*c2*c4 + 2^6*269",
       {"quantity": "genus_z7", "scale": "120960/7"}, subs={"c1": "7*d1"}, modulus=7),
    _F("dim7.7|c1.eq-z7-reduced", 7, "d1*(3*c2^3 - c3^2 - 2*c2*c4) - 3",
       {"quantity": "genus_z7", "scale": "-120960/7"}, subs={"c1": "7*d1"}, modulus=7),
    _F("dim7.7|c1.chi-line-1", 7, "24 + 2*(10*c2^3 - c3^2 - 9*c2*c4 + 2*c6)",
       {"quantity": "chi_line", "m": 1, "scale": 120960}, subs={"c1": "7*d1"}, modulus=7,
       note="twice 60480 chi(L) modulo 7; a unit multiple of the same congruence"),
    _F("dim7.7|c1.chi-line-1-reduced", 7, "5 + 3*c2^3 - c3^2 - 2*c2*c4 + 2*c6",
       {"quantity": "chi_line", "m": 1, "scale": 60480}, subs={"c1": "7*d1"}, modulus=7),
    _F("dim7.4|c1.chi-line", 7,
       "-2*d1*c3^2 - 8*d1*d2*c4 + 8*d1*c3 - c3^2 - 20*d1*c4 - 4*d2*c4 - 8*d1*c5 + 8*d1"
       " + 8*d2 - 14*c4 + 2*c6 + 12",
       {"quantity": "chi_line", "m": 1, "scale": 60480}, subs={"c1": "4*d1", "c2": "4*d2"},
       modulus=16,
       corrected="8*d1*c3 - c3^2 - 20*d1*c4 - 4*d2*c4 - 8*d1*c5 + 8*d1 + 8*d2 - 14*c4 + 2*c6 + 12",
       note="the display is 60480 chi(L) itself modulo 16, not half of it; the terms"
            " -2 d1 c3^2 and -8 d1 d2 c4 do not belong; c3 even still follows"),
    _F("dim7.4|c1.chi-line-halved", 7,
       "-2*d1*d3^2 - d3^2 - 2*d1*d4 - 2*d2*d4 - 2*d1*c5 + 2*d1 + 2*d2 - 7*d4 + d6 + 3",
       {"quantity": "chi_line", "m": 1, "scale": 60480},
       subs={"c1": "4*d1", "c2": "4*d2", "c3": "2*d3", "c4": "2*d4", "c6": "2*d6"}, modulus=16,
       text_scale=4,
       corrected="-d3^2 - 2*d1*d4 - 2*d2*d4 - 2*d1*c5 + 2*d1 + 2*d2 - 7*d4 + d6 + 3",
       note="carries the stray -2 d1 d3^2 over from the previous display; modulo 2 the"
            " conclusion d3 = d4 + d6 + 1 is unaffected"),
    _F("dim7.c1=-16.eq-z7", 7,
       "160*d2^3 - 10240*d2^2 - 352*d2*d3 - d3^2 - 18*d2*d4 + 131072*d2 + 4096*d3 + 256*d4"
       " + 8*c5 + 1883",
       {"quantity": "genus_z7", "scale": "120960/64"}, fix={"c1": -16, "c6": -14},
       subs={"c2": "4*d2", "c3": "2*d3", "c4": "2*d4"}),
    _F("dim7.c1=-16.eq-z5", 7, "96*d2*d4 + 3*d3*d4 - 3*d2*c5 - 2048*d4 - 64*c5 + 1932",
       {"quantity": "genus_z5", "scale": "480/4"}, fix={"c1": -16, "c6": -14},
       subs={"c2": "4*d2", "c3": "2*d3", "c4": "2*d4"}),
    _F("dim7.c1=-16.chi-line-m2", 7,
       "-640*e2^3 + 7424*e2^2 + 704*e2*e3 + 2*e3^2 + 36*e2*e4 + 80818*e2 + 290*e3 + 14*e4"
       " - 8*d5 - 713529",
       {"quantity": "chi_line", "m": -2, "scale": 3780}, fix={"c1": -16, "c6": -14},
       subs={"c2": "4*(2*e2 + 1)", "c3": "2*(2*e3 + 1)", "c4": "2*(2*e4 + 1)", "c5": "2*d5 + 1"},
       corrected="-8*d5 - 640*e2^3 - 40960*e2^2 + 704*e2*e3 + 36*e2*e4 + 846898*e2 + 2*e3^2"
                 " + 16418*e3 + 1022*e4 - 3313917",
       note="the displayed right side is not a multiple of chi(L^-2); the recomputed"
            " 3780 chi(L^-2) is odd as well, so the parity contradiction stands"),
    _F("dim7.c1=-8.eq-z7", 7,
       "160*d2^3 - 2560*d2^2 - 176*d2*d3 - d3^2 - 18*d2*d4 + 8192*d2 + 512*d3 + 64*d4"
       " + 4*c5 + 3766",
       {"quantity": "genus_z7", "scale": "120960/32"}, fix={"c1": -8, "c6": -28},
       subs={"c2": "4*d2", "c3": "2*d3", "c4": "2*d4"}),
    _F("dim7.c1=-8.chi-line-m1", 7,
       "-50*d2^3 + 1310*d2^2 + 880*d2*e3 + 20*e3^2 + 90*d2*e4 + 45*d2 + 22670*d2 - 160*e3"
       " - 20*e4 - 80*c5 - 469710",
       {"quantity": "chi_line", "m": -1, "scale": 60480}, fix={"c1": -8, "c6": -28},
       subs={"c2": "4*d2", "c3": "4*e3", "c4": "2*(2*e4 + 1)"},
       corrected="-16*c5 - 640*d2^3 - 20000*d2^2 + 1408*d2*e3 + 144*d2*e4 + 221824*d2"
                 " + 16*e3^2 + 16064*e3 + 2008*e4 - 408440",
       note="every coefficient of the recomputed form except that of d2^3 is even, so it"
            " gives no parity condition on d2; the case is closed by a modulo-9 scan instead"),
    _F("dim7.c1=-8.eq-z7-e2", 7,
       "640*e2^3 - 5120*e2^2 - 352*e2*e3 - 2*e3^2 - 36*e2*e4 + 8174*e2 + 512*e3 + 64*e4"
       " + 2*c5 + 1915",
       {"quantity": "genus_z7", "scale": "120960/64"}, fix={"c1": -8, "c6": -28},
       subs={"c2": "8*e2", "c3": "4*e3", "c4": "2*(2*e4 + 1)"}),
)
