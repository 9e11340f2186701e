"""CLI surface: subcommands, JSON schemas, exit codes, determinism."""

import json

import pytest

from ordo.cli import main


@pytest.fixture()
def lex2(tmp_path):
    doc = {
        "group": {"kind": "free_abelian", "rank": 2},
        "ordering": {"type": "flag", "levels": [[{"1": "1"}, {}], [{}, {"1": "1"}]]},
    }
    path = tmp_path / "lex2.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture()
def sqrt2(tmp_path):
    doc = {
        "group": {"kind": "free_abelian", "rank": 2},
        "ordering": {"type": "flag", "levels": [[{"1": "1"}, {"2": "1"}]]},
    }
    path = tmp_path / "sqrt2.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture()
def sqrt3(tmp_path):
    doc = {
        "group": {"kind": "free_abelian", "rank": 2},
        "ordering": {"type": "flag", "levels": [[{"1": "1"}, {"3": "1"}]]},
    }
    path = tmp_path / "sqrt3.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture()
def dehornoy3(tmp_path):
    doc = {
        "group": {"kind": "braid", "strands": 3},
        "ordering": {"type": "dehornoy"},
    }
    path = tmp_path / "dehornoy3.json"
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_rho_lex_dominated(capsys, lex2):
    code, payload = run(capsys, "rho", "--ordering", lex2, "--x", "x1", "x2^5")
    assert code == 0
    assert payload == {"value": 0}


def test_rho_noncofinal_exit_3(capsys, lex2):
    code, payload = run(capsys, "rho", "--ordering", lex2, "--x", "x2", "--cap", "64", "x1")
    assert code == 3
    assert payload["error"] == "NotBracketedWithinCap"


def test_rho_bad_element_exit_2(capsys, lex2):
    code, payload = run(capsys, "rho", "--ordering", lex2, "--x", "x1", "x9")
    assert code == 2
    assert payload["error"] == "ParseError"


def test_unknown_flag_exit_2(capsys, lex2):
    assert main(["rho", "--ordering", lex2, "--nonsense"]) == 2


def test_stable_twisting_number(capsys, dehornoy3):
    code, payload = run(capsys, "stable", "--ordering", dehornoy3,
                        "--x", "s1 s2 s1 s1 s2 s1", "--n", "300", "s1 s2")
    assert code == 0
    assert payload["value"] == "1/3"
    assert payload["radius"] == "1/300"


def test_psi_flag(capsys, sqrt2):
    code, payload = run(capsys, "psi", "--ordering", sqrt2, "--x", "x1")
    assert code == 0
    assert payload["components"][0] == {"exact": {}}
    assert payload["components"][1] == {"exact": {"1": "-1", "2": "1"}}


def test_psitilde_infinity(capsys, lex2):
    code, payload = run(capsys, "psitilde", "--ordering", lex2, "--x", "x2")
    assert code == 0
    assert payload["infinity"] is True


def test_construct_round_trip(capsys, tmp_path):
    out_path = tmp_path / "built.json"
    code, payload = run(capsys, "construct", "--x", "x1",
                        "--tau", '[{"1": "1"}, {"2": "1"}]', "--out", str(out_path))
    assert code == 0
    assert payload["ordering"]["type"] == "flag"
    written = json.loads(out_path.read_text())
    assert written == payload
    code2, psi_payload = run(capsys, "psi", "--ordering", str(out_path), "--x", "x1")
    assert code2 == 0
    assert psi_payload["components"][1] == {"exact": {"1": "-1", "2": "1"}}


def test_construct_rejects_bad_tau(capsys):
    code, payload = run(capsys, "construct", "--x", "x1", "--tau", '[{"1": "1/2"}, {}]')
    assert code == 2
    assert payload["error"] == "NotRealizable"


def test_sikora(capsys, sqrt2, lex2):
    code, payload = run(capsys, "sikora", "--ordering", sqrt2)
    assert code == 0
    assert payload["kind"] == "irrational"
    assert payload["slope"] == {"2": "1"}
    code, payload = run(capsys, "sikora", "--ordering", lex2)
    assert payload["kind"] == "rational"
    assert payload["direction"] == [1, 0]
    assert payload["slope"] == {}


def test_convex_verdicts(capsys, lex2):
    code, payload = run(capsys, "convex", "--ordering", lex2, "--x", "x1",
                        "--subgroup", "0 1")
    assert code == 0
    assert payload["outcome"] == "Convex"
    code, payload = run(capsys, "convex", "--ordering", lex2, "--x", "x1",
                        "--subgroup", "1 0", "--brute-radius", "3")
    assert code == 0
    assert payload["outcome"] == "NotConvex"
    assert payload["failed_condition"] == 2
    assert payload["ball_oracle"]["outcome"] == "Violation"


def test_obstruct_infeasible_pair(capsys):
    code, payload = run(capsys, "obstruct", "--anchor", "x",
                        "--expr", "x^1 y^2", "--expr", "x^3 y^-1")
    assert code == 0
    assert payload["outcome"] == "Infeasible"
    intervals = sorted(entry["interval"] for entry in payload["conflict"])
    assert intervals == [["-3/2", "1/2"], ["1", "5"]]


def test_realize_with_action_check(capsys, lex2):
    code, payload = run(capsys, "realize", "--ordering", lex2, "--ball", "2",
                        "--act", "x2")
    assert code == 0
    assert payload["values"][0] == "0"
    assert payload["action_check"]["passed"] is True


def test_realize_custom_enumeration(capsys, lex2, tmp_path):
    enum_path = tmp_path / "enum.json"
    enum_path.write_text(json.dumps(["", "x1", "x1^-1", "x1^2"]))
    code, payload = run(capsys, "realize", "--ordering", lex2,
                        "--enumeration", str(enum_path))
    assert code == 0
    assert payload["values"] == ["0", "1", "-1", "2"]


def test_cocycle_survey(capsys, lex2):
    code, payload = run(capsys, "cocycle", "--ordering", lex2, "--x", "x1",
                        "--samples", "50", "--seed", "1")
    assert code == 0
    assert payload["total"] == 50
    assert payload["passed"] == 50


def test_equiv_modes(capsys, sqrt2, sqrt3, lex2):
    code, payload = run(capsys, "equiv", "--a", sqrt2, "--b", sqrt2, "--x", "x1",
                        "--mode", "dynamical")
    assert code == 0
    assert payload["outcome"] == "Equivalent"
    code, payload = run(capsys, "equiv", "--a", sqrt2, "--b", sqrt3, "--x", "x1",
                        "--mode", "dynamical")
    assert code == 0
    assert payload["outcome"] == "NotEquivalent"
    code, payload = run(capsys, "equiv", "--a", lex2, "--b", lex2, "--x", "x1",
                        "--mode", "dynamical")
    assert code == 3
    assert payload["outcome"] == "Unknown"
    code, payload = run(capsys, "equiv", "--a", lex2, "--b", lex2, "--x", "x1",
                        "--mode", "semi")
    assert code == 0
    assert payload["outcome"] == "Equivalent"


def test_axioms_report(capsys, dehornoy3):
    code, payload = run(capsys, "axioms", "--ordering", dehornoy3,
                        "--samples", "200", "--seed", "3", "--radius", "5")
    assert code == 0
    assert payload["passed"] is True


def test_byte_identical_output(capsys, dehornoy3):
    main(["cocycle", "--ordering", dehornoy3, "--x", "s1 s2 s1 s1 s2 s1",
          "--samples", "20", "--seed", "9"])
    first = capsys.readouterr().out
    main(["cocycle", "--ordering", dehornoy3, "--x", "s1 s2 s1 s1 s2 s1",
          "--samples", "20", "--seed", "9"])
    second = capsys.readouterr().out
    assert first == second


def test_missing_file_exit_2(capsys):
    code, payload = run(capsys, "rho", "--ordering", "/nonexistent.json",
                        "--x", "x1", "x1")
    assert code == 2
    assert payload["error"] == "ParseError"
