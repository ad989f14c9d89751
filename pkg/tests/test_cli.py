import json

import pytest

from eicat.catalog import get_category
from eicat.cli import COMMANDS, EXIT_COMPUTATION, EXIT_OK, EXIT_VALIDATION, main, render, run


def _ok(argv):
    code, report, _ = run(argv)
    assert code == EXIT_OK, report
    assert report["format"] == 1 and report["command"] == argv[0]
    return report["result"]


def _fails(argv, code):
    got, report, _ = run(argv)
    assert got == code, report
    return report["error"]


def test_check_ufp():
    r = _ok(["check-ufp", "--category", "catalog:diamond"])
    assert r["ufp"] is False
    assert {tuple(r["witness"]["chain"]), tuple(r["witness"]["other_chain"])} == {("a->b", "b->d"), ("a->c", "c->d")}
    assert _ok(["check-ufp", "--category", "catalog:chain3"])["ufp"] is True


def test_orbit_cat_and_hereditary():
    r = _ok(["orbit-cat", "--group", "cyclic:2"])
    assert r["category_json"]["format"] == 1
    assert _ok(["hereditary", "--category", "orbit", "--group", "cyclic:6"])["hereditary"] is False
    assert _ok(["hereditary", "--category", "orbit", "--group", "cyclic:8"])["hereditary"] is True


def test_resolve_ext_tor():
    r = _ok(["resolve", "--category", "catalog:chain2", "--module", "simple:1"])
    assert r["length"] == 1 and r["terms"] == [[1, 1], [1, 0]] and r["exact"]
    r = _ok(["ext", "--category", "catalog:diamond", "--module", "simple:d", "--module", "simple:a"])
    assert r["ext"] == {"0": 0, "1": 0, "2": 1, "3": 0}
    r = _ok(["tor", "--category", "catalog:chain2", "--module", "simple:1", "--module", "simple-co:0"])
    assert r["tor"]["1"] == 1


def test_bredon_kunneth_chern():
    r = _ok(["bredon", "--category", "catalog:orbit-Z2", "--complex", "circle", "--coefficients", "constant"])
    assert r["homology"] == {"0": 1, "1": 1}
    r = _ok(["kunneth", "--category", "catalog:chain2", "--complex", "point:0",
             "--coefficients", "module:simple:1"])
    assert r["lhs_equals_rhs0_plus_rhs1"]
    r = _ok(["chern", "--category", "catalog:orbit-Z2", "--complex", "circle", "--coefficients", "module:rep:G/1"])
    assert r["verified"]


def test_split():
    r = _ok(["split", "--category", "catalog:diamond", "--complex", "nonsplit:d,a"])
    assert r["split"] is False and r["certified"] and r["certificate"]["mode"] == "two_stage"
    r = _ok(["split", "--category", "catalog:chain3", "--complex", "module:constant"])
    assert r["split"] is True


def test_mackey_commands():
    r = _ok(["mackey-dim", "--group", "cyclic:2"])
    assert r["dim"] == 6 and r["semisimple"] and r["associative"]
    assert r["block_dims"] == [["1", "1", 2], ["1", "G", 1], ["G", "1", 1], ["G", "G", 2]]
    r = _ok(["mackey-F", "--group", "sym:3"])
    assert r["bijective"] and r["domain_dim"] == r["codomain_dim"] == 87
    r = _ok(["mackey-extend", "--category", "catalog:orbit-Z2", "--module", "simple:G/1"])
    assert r["extends"] is False and r["certified"]
    r = _ok(["mackey-extend", "--category", "catalog:orbit-S3", "--module", "mackey-rep-co:G/1"])
    assert r["extends"] is True and r["projective"] is True
    r = _ok(["dinfty-witness"])
    assert r["axa_equals_a_solvable"] is False and r["identity_holds"]
    assert r["a_xk_a"]["0"] == {"0": 1, "1": 2, "2": 1}


def test_survey():
    r = _ok(["survey", "--max-order", "4"])
    assert r["all_agree"] and r["row_count"] == len(r["rows"])
    _fails(["survey", "--max-order", "13"], EXIT_COMPUTATION)


def test_file_inputs(tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps(get_category("diamond").to_json()))
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"format": 1, "variance": "contra", "dims": {"d": 1}}))
    r = _ok(["resolve", "--category", "file:%s" % cat, "--module", "file:%s" % mod])
    assert r["length"] == 2
    code, report, _ = run(["resolve", "--category", "file:%s" % cat, "--module", "file:%s" % mod])
    assert str(mod) in json.dumps(report["inputs"])
    assert len(report["inputs_digest"]) == 64


def test_schema_violation_reports_location(tmp_path):
    data = get_category("diamond").to_json()
    data["morphisms"][0] = {"src": "a", "dst": "a"}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    err = _fails(["check-ufp", "--category", "file:%s" % bad], EXIT_VALIDATION)
    assert err["type"] == "SchemaViolation" and err["location"] == "$.morphisms[0]"


@pytest.mark.parametrize("argv,kind", [
    (["nonsense"], "UnknownCommand"),
    (["check-ufp", "--category", "catalog:idempotent"], "NotEI"),
    (["check-ufp", "--category", "catalog:nowhere"], "UnknownEntry"),
    (["check-ufp", "--category", "file:/does/not/exist.json"], "FileNotFoundError"),
    (["check-ufp", "--bogus-flag"], "UsageError"),
    (["mackey-dim", "--group", "free:2"], "GroupError"),
    (["mackey-extend", "--category", "catalog:diamond", "--module", "constant"], "CategoryMismatch"),
])
def test_validation_errors(argv, kind):
    assert _fails(argv, EXIT_VALIDATION)["type"] == kind


def test_computation_errors():
    err = _fails(["resolve", "--category", "catalog:diamond", "--module", "simple:d", "--max-resolution", "1"],
                 EXIT_COMPUTATION)
    assert err["type"] == "ResolutionTooLong"
    err = _fails(["chern", "--category", "catalog:chain2", "--complex", "point:0",
                  "--coefficients", "module:simple:1"], EXIT_COMPUTATION)
    assert err["type"] == "CoefficientsNotFlat"


def test_out_flag_and_rendering(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["mackey-dim", "--group", "cyclic:3", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    text = out.read_text()
    assert json.loads(text)["result"]["dim"] == 7
    assert text == render(json.loads(text))


def test_timing_only_on_request():
    assert "seconds" not in run(["mackey-dim", "--group", "cyclic:2"])[1]
    assert "seconds" in run(["mackey-dim", "--group", "cyclic:2", "--timing"])[1]


def test_reports_repeat_exactly():
    argv = ["split", "--category", "catalog:chain3", "--complex", "module:constant", "--mode", "randomized",
            "--seed", "5"]
    assert render(run(argv)[1]) == render(run(argv)[1])


def test_command_list():
    assert len(COMMANDS) == 15
