import json

import pytest

from trimodel import cli
from trimodel.errors import ValidationError
from trimodel.report import EXIT_FAIL, EXIT_PASS, Report


def machine(capsys, argv):
    code = cli.main([*argv, "--format", "machine"])
    return code, json.loads(capsys.readouterr().out)


def test_ext_split_is_zero(capsys):
    code, out = machine(capsys, ["ext", "--fixture", "n3", "--from", "M1", "--to", "M1", "--xi", "split"])
    assert code == EXIT_PASS
    assert out["result"]["dim"] == 0
    assert out["params"]["bound"] == 2 and out["params"]["budget"] == 1 << 20


def test_model_verify_passes(capsys):
    code, out = machine(capsys, ["model-verify", "--fixture", "n3", "--pair", "zero,all", "--xi", "all"])
    assert code == EXIT_PASS
    assert out["result"]["axioms"]["passed"] is True
    assert out["result"]["object_classes"] == {"cofibrant": [], "fibrant": ["M1", "M2"], "trivial": ["M1", "M2"]}


def test_model_verify_reports_failure(capsys):
    code, out = machine(capsys, ["model-verify", "--fixture", "n3", "--pair", "all,all"])
    assert code == EXIT_FAIL
    assert out["status"] == "fail"


def test_br_roundtrip(capsys):
    code, out = machine(capsys, ["br-roundtrip", "--fixture", "n3"])
    assert code == EXIT_PASS
    assert len(out["result"]["pairs"]) == 2
    assert all(r["psi_phi_identity"] for r in out["result"]["pairs"])


def test_text_report_layout(capsys):
    code = cli.main(["ctp-check", "--fixture", "n3", "--pair", "zero,all"])
    text = capsys.readouterr().out
    assert code == EXIT_PASS
    assert text.startswith("trimodel report v1\ncommand: ctp-check\n")
    assert "--- machine ---" in text


def test_missing_fixture(capsys):
    assert cli.main(["ext", "--fixture", "/nonexistent/file.json"]) == EXIT_FAIL
    assert "fixture error" in capsys.readouterr().err


def test_unknown_command():
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["frobnicate"])
    args = cli.build_parser().parse_args(["ext"])
    with pytest.raises(ValidationError):
        cli.run("frobnicate", None, args)


def test_ext_needs_objects(capsys):
    code, out = machine(capsys, ["ext", "--fixture", "n3"])
    assert code == EXIT_FAIL
    assert "--from" in out["result"]["error"]


def test_parse_object(n3):
    cat = n3.backend.cat
    assert cli.parse_object(n3, "M1+M2") == cat.obj(1, 1)
    assert cli.parse_object(n3, "M2^2") == cat.obj(0, 2)
    assert cli.parse_object(n3, "0") == cat.zero_obj
    with pytest.raises(ValidationError):
        cli.parse_object(n3, "M7")


def test_report_render_is_stable():
    rep = Report("x", "f", {"b": 1, "a": None}, body={"z": {1, 2}, "a": (3,)})
    assert rep.render("machine") == rep.render("machine")
    assert json.loads(rep.render("machine"))["result"] == {"a": [3], "z": [1, 2]}
    assert "a=None" not in rep.render("text")
