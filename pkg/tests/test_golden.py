import json

import pytest

from projchar.golden import GOLDEN_MAX_N, compare_table, load_errata, load_tables


@pytest.mark.parametrize("n", range(1, GOLDEN_MAX_N + 1))
def test_printed_tables(n):
    r = compare_table(n)
    assert r.ok
    assert r.status == ("erratum" if n in (4, 6) else "match")


def test_errata_are_needed():
    # without the documented corrections, t_4 and t_6 do not match
    for n in (4, 6):
        assert compare_table(n, errata={}).status == "mismatch"


def test_erratum_residuals():
    assert compare_table(4).residual == "1/6*c1*c3*z^3 + 1/3*c4*z^3"
    assert compare_table(6).residual == "-1/6720*c2^3*z^6"


def test_corrupted_fixture(tmp_path):
    tables = load_tables()
    tables[3] = tables[3].replace("c1*c2", "7*c1*c2", 1)
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"t": {str(k): v for k, v in tables.items()}}))
    assert compare_table(3, load_tables(str(path))).status == "mismatch"
    assert compare_table(2, load_tables(str(path))).status == "match"


def test_errata_fixture_shape():
    errata = load_errata()
    assert sorted(errata) == [4, 6]
    assert all({"printed", "corrected", "note"} <= set(e) for es in errata.values() for e in es)
