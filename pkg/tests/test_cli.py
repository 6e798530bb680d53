"""The command line: reports, exit codes and determinism."""
import json
import pathlib

import pytest

from superfrob.cli import main

SAMPLES = pathlib.Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def s(name):
    return SAMPLES / name


def test_check_valid_document(capsys):
    code, rep, err = run(capsys, "check", s("d5.json"))
    assert code == 0 and rep["ok"] and rep["first_failure"] is None
    assert rep["algebra"] == {"name": "D^5", "sdim": "2|2", "field": "Q"}
    assert err == ""


@pytest.mark.parametrize("name,needle", [("bad_even_square.json", "anticommutativity violated at (e1, e1)"),
                                         ("bad_f3_cubic.json", "char3_cubic violated at (e, e, e)")])
def test_check_invalid_algebra(capsys, name, needle):
    code, rep, err = run(capsys, "check", s(name))
    assert code == 1 and not rep["ok"]
    assert needle in rep["first_failure"]
    assert needle in err


def test_unreadable_input(capsys, tmp_path):
    code, rep, _ = run(capsys, "check", tmp_path / "missing.json")
    assert code == 2 and "cannot read" in rep["first_failure"]
    bad = tmp_path / "bad.json"
    bad.write_text('{"name":')
    code, rep, _ = run(capsys, "check", bad)
    assert code == 2 and "invalid JSON" in rep["first_failure"]


def test_characteristic_two_rejected(capsys, tmp_path):
    p = tmp_path / "f2.json"
    p.write_text(json.dumps({"name": "h", "field": "Fp(2)", "even_basis": ["e1"], "odd_basis": ["X"],
                             "brackets": []}))
    code, rep, _ = run(capsys, "check", p)
    assert code == 2 and "characteristic 2" in rep["first_failure"]


def test_search_forms_certifies_none(capsys):
    code, rep, _ = run(capsys, "search-forms", s("d7_generic.json"))
    assert code == 0
    assert rep["forms"]["any"]["verdict"] == "certified none"
    assert rep["forms"]["any"]["method"] == "symbolic determinant"


def test_decompose_rejects_non_isotropic_point(capsys):
    code, rep, _ = run(capsys, "decompose", s("c1h_a.json"), "--x", "e4", "--variant", "odxosp")
    assert code == 1
    assert rep["first_failure"] == "decomposition exists: w(x, x) != 0"
    assert rep["parameters"]["variant"] == "od-osp"


def test_extend_double(capsys):
    code, rep, _ = run(capsys, "extend", "double", s("r11_od_pe.json"), "--variant", "odxpe")
    assert code == 0 and rep["ok"]
    assert all(c["status"] == "pass" for c in rep["claims"])


def test_cohomology_c11(capsys):
    code, rep, _ = run(capsys, "cohomology", s("h_c11.json"), "--connection", s("h_c11_connection.json"),
                       "--variant", "tstar")
    assert code == 0
    even = rep["cohomology"]["even"]
    assert (even["Z2_L"], even["B2_L"], even["H2_L"], even["kernel_to_ordinary"]) == (1, 0, 1, 1)


def test_extend_tstar(capsys):
    code, rep, _ = run(capsys, "extend", "tstar", s("h_c11.json"), "--connection", s("h_c11_connection.json"),
                       "--cocycle", s("h_c11_cocycle.json"))
    assert code == 0
    assert {c["claim"] for c in rep["claims"]} >= {"closed", "nondegenerate", "lie_superalgebra"}


def test_filiform(capsys):
    code, rep, _ = run(capsys, "filiform", 4, 4, "--form", "periplectic_nn")
    assert code == 0 and rep["ok"]
    code, rep, _ = run(capsys, "filiform", 3, 4, "--form", "periplectic_nn")
    assert code == 2 and "does not apply" in rep["first_failure"]


def test_verify_catalog_table(capsys):
    code, rep, _ = run(capsys, "verify-catalog", "--table", 3)
    assert code == 0 and rep["ok"]
    assert rep["summary"]["printed_rows"] == {"3": 4}


def test_output_is_deterministic(capsys):
    args = ("search-forms", s("d7_generic.json"))
    main([str(a) for a in args])
    first = capsys.readouterr().out
    main([str(a) for a in args])
    assert capsys.readouterr().out == first


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert "superfrob" in capsys.readouterr().out
