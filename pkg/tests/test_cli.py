import io
import json

import liediff.derivations
from liediff.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_check_builtin_ok():
    assert run(["check", "builtin:sl2"]) == (0, "dim 3: ok\n")


def test_check_parse_error_cites_line(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("dim 2\n# comment\nc 1 2 x\n")
    code, _ = run(["check", str(p)])
    assert code == 1
    assert "line 3" in capsys.readouterr().err


def test_check_antisymmetry_violation(tmp_path):
    p = tmp_path / "anti.txt"
    p.write_text("dim 2\nc 1 2 2 1\nc 2 1 2 1\n")
    code, out = run(["check", str(p), "--json"])
    assert code == 2
    data = json.loads(out)
    assert not data["ok"]
    assert {"kind": "antisymmetry", "indices": [1, 2], "residual": ["0", "2"]} in data["violations"]


def test_invalid_table_rejected_by_other_commands(tmp_path):
    p = tmp_path / "anti.txt"
    p.write_text("dim 2\nc 1 2 2 1\nc 2 1 2 1\n")
    assert run(["derivations", str(p)])[0] == 2


def test_missing_file_and_unknown_builtin(capsys):
    assert run(["check", "/nonexistent/table.txt"])[0] == 1
    assert run(["check", "builtin:e8"])[0] == 1


def test_derivations_json():
    code, out = run(["derivations", "builtin:sl2", "--json"])
    data = json.loads(out)
    assert code == 0
    assert (data["dim_full"], data["dim_inner"], data["dim_outer"]) == (3, 3, 0)


def test_env_var_selects_json(monkeypatch):
    monkeypatch.setenv("LIEDIFF_FORMAT", "json")
    code, out = run(["center", "builtin:gl2"])
    assert json.loads(out) == {"basis": [["1", "0", "0", "1"]], "dim": 1}


def test_text_default(monkeypatch):
    monkeypatch.delenv("LIEDIFF_FORMAT", raising=False)
    code, out = run(["derivations", "builtin:gl2"])
    assert "dim_full: 4" in out and "dim_outer: 1" in out


def test_diff_json():
    code, out = run(["diff", "builtin:o3", "--order", "4", "--json"])
    orders = json.loads(out)["orders"]
    assert [o["dim"] for o in orders] == [1, 4, 9, 9, 9]
    assert [o["stabilized"] for o in orders] == [False, False, False, True, True]


def test_cohomology_json():
    code, out = run(["cohomology", "builtin:sl2", "--max-degree", "2", "--json"])
    data = json.loads(out)
    assert code == 0 and data["dd_zero_verified"]
    assert [h["dim"] for h in data["H"]] == [0, 0, 0]
    assert set(data["H"][0]) == {"k", "dim_ker", "dim_im_prev", "dim"}


def test_cohomology_graded_is_unsupported():
    assert run(["cohomology", "builtin:car:1"])[0] == 1


def test_realize_ccr():
    code, out = run(["realize", "ccr", "--params", "1,2,3,4,5,6", "--f", "1 + 2x + 3x^2", "--json"])
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert set(data["residuals"]) == {"e_pi", "e_phi", "1"}


def test_realize_ccr_bad_params():
    assert run(["realize", "ccr", "--params", "1,2"])[0] == 1


def test_realize_car():
    code, out = run(["realize", "car", "--params", "1,-1/2,3,0", "--h", "2,5", "--json"])
    assert code == 0 and json.loads(out)["ok"]


def test_emit_roundtrip(tmp_path):
    code, out = run(["emit", "builtin:car:2"])
    p = tmp_path / "car2.txt"
    p.write_text(out)
    assert run(["emit", str(p)]) == (0, out)


def test_module_command(tmp_path):
    p = tmp_path / "rep.txt"
    p.write_text("algebra builtin:gl2\nmodule_dim 2\nrho 1 1 1 1\nrho 2 1 2 1\nrho 3 2 1 1\nrho 4 2 2 1\n")
    code, out = run(["module", str(p), "--order", "2", "--json"])
    assert code == 0
    assert [o["dim"] for o in json.loads(out)["orders"]] == [1, 4, 4]


def test_module_command_rejects_non_representation(tmp_path):
    p = tmp_path / "rep.txt"
    p.write_text("algebra builtin:gl2\nmodule_dim 2\nrho 1 1 2 1\n")
    assert run(["module", str(p)])[0] == 2


def test_verify_paper_is_deterministic():
    a = run(["verify-paper", "--seed", "42"])
    b = run(["verify-paper", "--seed", "42"])
    assert a == b
    assert a[1].count("\n") >= 11


def test_broken_graded_sign_fails_verify_paper(monkeypatch):
    monkeypatch.setattr(liediff.derivations, "sign", lambda e: 1)
    code, out = run(["verify-paper"])
    assert code == 3
    assert "[FAIL]  3." in out
