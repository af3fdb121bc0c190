"""Golden fixtures: the printed t_n tables and their documented misprints."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .genera import alternating_binomial, genus_table, projective_specialize
from .polyring import parse

__all__ = ["GoldenResult", "load_tables", "load_errata", "compare_table", "GOLDEN_MAX_N"]

GOLDEN_MAX_N = 9
_PKG = "projchar.data.golden"


def _read(name: str, path: str | None = None) -> dict:
    if path is not None:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files(_PKG).joinpath(name).read_text())


def load_tables(path: str | None = None) -> dict[int, str]:
    return {int(n): text for n, text in _read("t_tables.json", path)["t"].items()}


def load_errata(path: str | None = None) -> dict[int, list[dict]]:
    out: dict[int, list[dict]] = {}
    for e in _read("errata.json", path)["errata"]:
        out.setdefault(int(e["n"]), []).append(e)
    return out


@dataclass(frozen=True)
class GoldenResult:
    n: int
    status: str  # match | erratum | mismatch
    residual: str  # printed minus computed, before errata
    errata: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


def compare_table(n: int, tables: dict[int, str] | None = None,
                  errata: dict[int, list[dict]] | None = None) -> GoldenResult:
    """Compare the printed ``t_n`` with the engine, term for term.

    A difference counts as a documented erratum only if applying every listed
    correction leaves nothing, and the engine's table still passes the
    duality and projective-space checks.
    """
    tables = load_tables() if tables is None else tables
    errata = load_errata() if errata is None else errata
    if n not in tables:
        raise KeyError(f"no printed table for n = {n}")
    table = genus_table(n)
    t = table.t_poly
    printed = parse(tables[n], t.ring)
    diff = printed - t
    if not diff:
        return GoldenResult(n, "match", "0")
    fixed = printed
    notes = []
    for e in errata.get(n, []):
        fixed = fixed - parse(e["printed"], t.ring) + parse(e["corrected"], t.ring)
        notes.append(e["note"])
    engine_sound = not table.check() and projective_specialize(n) == alternating_binomial(n)
    status = "erratum" if notes and not (fixed - t) and engine_sound else "mismatch"
    return GoldenResult(n, status, diff.render(), tuple(notes))
