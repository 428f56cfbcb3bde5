"""Tests for the rotkit command line."""

import json

import pytest

from rotkit import EXIT_FAILURE, EXIT_PASS, EXIT_USAGE, main


def run_report(tmp_path, *argv: str) -> tuple[int, dict]:
    """Run rotkit with a report file and return the exit code and the parsed report."""
    out = tmp_path / "report.json"
    code = main([*argv, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_triple_fuchsian(tmp_path):
    """Test the rotation triple of the Fuchsian action."""
    code, report = run_report(tmp_path, "triple", "--fuchsian")
    assert code == EXIT_PASS
    assert report["schema"] == "rotkit/1"
    assert report["passed"]
    assert report["failure"] is None
    assert report["result"]["classification"] == "FuchsianO23"
    assert [entry["value"] for entry in report["result"]["triple"]] == ["1/2", "1/3", "0"]
    assert report["config"]["command"] == "triple"


@pytest.mark.parametrize(
    "lift, values, classification",
    [
        ("5", ["1/2", "2/3", "1/5"], "FiveFoldLift"),
        ("7", ["1/2", "1/3", "6/7"], "Unclassified"),
    ],
)
def test_triple_lift(tmp_path, lift: str, values: list, classification: str):
    """Test the rotation triples of k-fold lifts."""
    code, report = run_report(tmp_path, "triple", "--lift", lift)
    assert code == EXIT_PASS
    assert [entry["value"] for entry in report["result"]["triple"]] == values
    assert report["result"]["classification"] == classification


def test_triple_mobius(tmp_path):
    """Test the floating backend."""
    code, report = run_report(tmp_path, "triple", "--backend", "mobius")
    assert code == EXIT_PASS
    assert report["result"]["backend"] == "mobius"
    assert report["result"]["classification"] == "FuchsianO23"


def test_certify_case1(tmp_path):
    """Test the case-1 certificate of the Fuchsian action."""
    code, report = run_report(tmp_path, "certify", "--case", "1", "--max-syllables", "6")
    assert code == EXIT_PASS
    result = report["result"]
    assert result["x0"] == "1/2"
    assert result["chain"] == ["1/2", "1", "5/4", "3/2"]
    assert result["trapped"] > 0
    assert all(check["passed"] for check in result["checks"])


def test_certify_case2(tmp_path):
    """Test the case-2 certificate of the 5-fold lift."""
    code, report = run_report(
        tmp_path, "certify", "--case", "2", "--lift", "5", "--window", "6", "--max-syllables", "10"
    )
    assert code == EXIT_PASS
    result = report["result"]
    assert result["x0"] == "1/10"
    assert len(result["intervals"]) == 13
    assert result["theta"]["shift_range"] == ["1/5", "1/5"]
    assert result["theta"]["equivariance_residual"] == 0
    assert 0 < result["theta"]["period_coverage"] <= len(result["theta"]["points"])


def test_certify_wrong_case(tmp_path, capsys):
    """Test that the case-2 certificate fails on the Fuchsian action."""
    code, report = run_report(tmp_path, "certify", "--case", "2")
    assert code == EXIT_FAILURE
    assert not report["passed"]
    assert report["result"] is None
    assert report["failure"]["clause"] == "declared_rotation"
    assert "FAILED declared_rotation" in capsys.readouterr().out

    code, report = run_report(tmp_path, "certify", "--case", "1", "--lift", "5")
    assert code == EXIT_FAILURE
    assert report["failure"]["clause"] == "declared_rotation"


def test_counterexample(tmp_path):
    """Test that the triangle action and the 7-fold lift share the triple but are separated by (ab)^7."""
    code, report = run_report(tmp_path, "counterexample", "7")
    assert code == EXIT_PASS
    result = report["result"]
    assert result["equal_triples"]
    assert result["separated"]
    assert result["hat_distance"] <= 1e-9
    assert result["lift_distance"] >= 0.01


def test_counterexample_k11(tmp_path):
    """Test that the triples differ for k = 11."""
    code, report = run_report(tmp_path, "counterexample", "11")
    assert code == EXIT_FAILURE
    result = report["result"]
    assert not result["equal_triples"]
    assert result["separated"]
    assert [entry["value"] for entry in result["lift_triple"]] == ["1/2", "2/3", "2/11"]


def test_random_round_trip(tmp_path):
    """Test that a random action file can be certified."""
    action = tmp_path / "action.json"
    code, report = run_report(tmp_path, "random", "--seed", "3", "--out-action", str(action))
    assert code == EXIT_PASS
    assert report["result"]["seed"] == 3
    assert [entry["value"] for entry in report["result"]["triple"]] == ["1/2", "1/3", "0"]
    assert json.loads(action.read_text(encoding="utf-8"))["name"] == "random(3)"
    assert main(["certify", "--case", "1", "--action", str(action), "--max-syllables", "5"]) == EXIT_PASS
    assert main(["triple", "--action", str(action)]) == EXIT_PASS


def test_random_case2(tmp_path):
    """Test random actions with triple (1/2, 2/3, 1/5)."""
    code, report = run_report(tmp_path, "random", "--seed", "0", "--case", "2")
    assert code == EXIT_PASS
    assert [entry["value"] for entry in report["result"]["triple"]] == ["1/2", "2/3", "1/5"]


def test_path(tmp_path):
    """Test the path command."""
    code, report = run_report(tmp_path, "path", "--seed", "2", "--steps", "3")
    assert code == EXIT_PASS
    assert report["result"]["steps"] == 3
    for triple in report["result"]["triples"]:
        assert [entry["value"] for entry in triple] == ["1/2", "1/3", "0"]


@pytest.mark.parametrize(
    "word, value, conjugacy",
    [
        ("ab", "0", "hyperbolic(ab)"),
        ("b", "1/3", "power_of_beta(1)"),
        ("abba", "2/3", "power_of_beta(2)"),
    ],
)
def test_rot(tmp_path, word: str, value: str, conjugacy: str):
    """Test rotation numbers of single words."""
    code, report = run_report(tmp_path, "rot", word)
    assert code == EXIT_PASS
    assert report["result"]["rotation"]["value"] == value
    assert report["result"]["conjugacy"] == conjugacy


@pytest.mark.parametrize(
    "argv",
    [
        ["rot", "abc"],
        ["random", "--seed", "-1"],
        ["triple", "--lift", "0"],
        ["triple", "--lift", "2"],
        ["triple", "--triangle", "6"],
        ["certify", "--case", "1", "--action", "missing.json"],
        ["path", "--seed", "0", "--steps", "1"],
        ["counterexample", "4"],
    ],
)
def test_invalid_input(argv: list):
    """Test that invalid input exits with the usage code."""
    assert main(argv) == EXIT_USAGE


def test_invalid_action_file(tmp_path):
    """Test that malformed action files are rejected."""
    action = tmp_path / "action.json"
    action.write_text(json.dumps({"lift_a": {"type": "rot", "t": "1/2"}}), encoding="utf-8")
    assert main(["triple", "--action", str(action)]) == EXIT_USAGE


def test_missing_arguments():
    """Test that argument errors exit through argparse."""
    with pytest.raises(SystemExit) as error:
        main(["certify"])
    assert error.value.code == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["triple", "--fuchsian", "--triangle", "7"])


def test_action_file_violating_relations(tmp_path):
    """Test that an action file with inconsistent translation numbers exits with the usage code."""
    action = tmp_path / "action.json"
    data = {
        "lift_a": {"type": "rot", "t": "2/3"},
        "lift_b": {"type": "rot", "t": "1/3"},
        "rot_a": "1/2",
        "rot_b": "1/3",
        "backend": "pl",
    }
    action.write_text(json.dumps(data), encoding="utf-8")
    assert main(["triple", "--action", str(action)]) == EXIT_USAGE
    assert main(["certify", "--case", "1", "--action", str(action)]) == EXIT_USAGE
