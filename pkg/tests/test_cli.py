import json

import pytest

from picgen.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "e_f5")
    assert code == 0 and out.strip() == "valid, g=1, q=5"


def test_examples_path_falls_back_to_shipped_curve(capsys):
    code, out, _ = run(capsys, "validate", "examples/e_f5.json")
    assert code == 0


def test_invalid_curve_names_clause(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"field": {"p": 5, "n": 1}, "g": 1, "f": [0, 0, 0, 0, 1], "h": []}))
    code, _, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "ramified_at_infinity" in err or "f_separable" in err


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/curve_zz.json")
    assert code == 2 and "no curve file" in err


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_count_and_order(capsys):
    assert run(capsys, "count", "e_f5", "--ext", "2")[1].strip() == "32"
    assert run(capsys, "picard", "order", "e_f5")[1].strip() == "4"


def test_picard_add_identity(capsys):
    code, out, _ = run(capsys, "picard", "add", "e_f5", "--a", '{"u": [1], "v": []}', "--b", '{"u": [1], "v": []}')
    assert code == 0
    assert json.loads(out) == {"u": [1], "v": []}


def test_psi_needs_exceptional_curve(capsys):
    code, _, err = run(capsys, "picard", "psi", "e_f5")
    assert code == 1 and "exceptional_case" in err
    code, out, _ = run(capsys, "picard", "psi", "e_f2", "--json")
    assert code == 0
    values = [v["psi"] for v in json.loads(out)["values"]]
    assert sorted(values) == [0, 1]


def test_generate_json_is_byte_identical(capsys):
    first = run(capsys, "generate", "e_f2", "--json")
    second = run(capsys, "generate", "e_f2", "--json")
    assert first[0] == 0 and first[1] == second[1]
    data = json.loads(first[1])
    assert data["closure"]["full"] is True


def test_generate_plan_only(capsys):
    code, out, _ = run(capsys, "generate", "e_f5", "--plan-only", "--json")
    data = json.loads(out)
    assert code == 0 and data["params"]["i"] == 5 and data["generators"] == []


def test_check_and_shape(capsys):
    code, out, _ = run(capsys, "check", "e_f5", "--subset", "coset:1", "--json")
    assert code == 0 and json.loads(out)["conclusion_holds"] is True
    code, out, _ = run(capsys, "shape", "--field", "5", "1", "--subset", "coset:1", "--json")
    assert code == 0 and json.loads(out)["estimate"] == pytest.approx(1.0, abs=1e-3)
    assert run(capsys, "shape")[0] == 2


def test_charsum(capsys):
    code, out, _ = run(capsys, "charsum", "e_f5", "--json")
    data = json.loads(out)
    assert code == 0 and data["violations"] == 0 and data["rows"] == len(data["table"])


def test_suite_empty_directory(tmp_path, capsys):
    code, _, err = run(capsys, "suite", str(tmp_path))
    assert code == 2 and "empty" in err.lower()


def test_suite_names_invalid_file(tmp_path, capsys):
    (tmp_path / "broken.json").write_text(json.dumps({"field": {"p": 2, "n": 1}, "g": 1, "f": [1, 0, 0, 1], "h": []}))
    code, _, err = run(capsys, "suite", str(tmp_path))
    assert code == 1
    assert "broken.json" in err and "irreducible" in err
