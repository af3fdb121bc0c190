import json

import pytest

from projchar.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("5") == [5]
    assert parse_range("1..4") == [1, 2, 3, 4]


@pytest.mark.parametrize("argv", [
    ["table", "--n", "0"],
    ["table", "--n", "10"],
    ["verify", "--n", "8"],
    ["verify"],
    ["nonsense"],
    ["table", "--n", "x..3"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_table_with_golden(capsys):
    code, out, _ = run(capsys, "table", "--n", "1..6", "--golden")
    assert code == EXIT_OK
    assert "6/6" in out


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert "c2" in json.dumps(data)


@pytest.mark.parametrize("n", range(2, 8))
def test_verify(capsys, n):
    code, out, _ = run(capsys, "verify", "--n", str(n))
    assert code == EXIT_OK
    assert "theorem: match" in out


def test_verify_without_external_axioms(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--no-external-axioms")
    assert code == EXIT_OK
    assert "c1=2 -> unresolved" in out


def test_certify_is_deterministic(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run(capsys, "certify", "--n", "6", "--format", "json", "--out", str(a))[0] == EXIT_OK
    assert run(capsys, "certify", "--n", "6", "--format", "json", "--out", str(b))[0] == EXIT_OK
    assert a.read_text() == b.read_text()
    assert json.loads(a.read_text())["verdicts"]["-7"] == "ball-quotient"


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck", "--max-n", "6")
    assert code == EXIT_OK
    assert "FAIL" not in out


def test_selfcheck_corrupted_fixture(capsys, tmp_path):
    from projchar.golden import load_tables
    tables = load_tables()
    tables[3] = tables[3].replace("c1*c2", "7*c1*c2", 1)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"t": {str(k): v for k, v in tables.items()}}))
    code, out, _ = run(capsys, "selfcheck", "--max-n", "4", "--golden", str(path))
    assert code == EXIT_MISMATCH
    assert str(path) in out
