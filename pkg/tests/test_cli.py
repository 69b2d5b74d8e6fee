"""CLI surface: subcommands, exit codes, artifact round-trips, determinism."""

import json

import pytest

from entroscope.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def q3_file(tmp_path, capsys):
    path = tmp_path / "q3.json"
    code, out, err = run(capsys, "example", "--q", "3", "--out", str(path))
    assert code == 0, err
    report = json.loads(out)
    assert report["all_pass"]
    return path


@pytest.fixture()
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    doc = {
        "variables": [{"name": "x", "alphabet": 2}, {"name": "y", "alphabet": 2}],
        "outcomes": [
            {"values": [0, 0], "p": "3/8"}, {"values": [0, 1], "p": "1/8"},
            {"values": [1, 0], "p": "1/8"}, {"values": [1, 1], "p": "3/8"},
        ],
    }
    path.write_text(json.dumps(doc))
    return path


# ---------------------------------------------------------------------------
# profile


def test_profile_of_distribution(capsys, q3_file):
    code, out, _ = run(capsys, "profile", str(q3_file))
    assert code == 0
    doc = json.loads(out)
    assert len(doc["profile"]["coords"]) == 15
    assert doc["polymatroid"]["ok"] and doc["polymatroid"]["checked"] == 28


def test_profile_artifact_round_trip_fixpoint(capsys, tmp_path, q3_file):
    code, out, _ = run(capsys, "profile", str(q3_file))
    prof_path = tmp_path / "prof.json"
    prof_path.write_text(json.dumps(json.loads(out)["profile"]))
    code2, out2, _ = run(capsys, "profile", str(prof_path))
    assert code2 == 0
    assert json.loads(out2)["profile"] == json.loads(out)["profile"]


def test_profile_rejects_float_probability(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "variables": [{"name": "x", "alphabet": 2}],
        "outcomes": [{"values": [0], "p": 0.5}, {"values": [1], "p": 0.5}],
    }))
    code, _, err = run(capsys, "profile", str(bad))
    assert code == 2
    assert "exact rational required" in err


def test_profile_invariant_violation_exit_3(capsys, tmp_path):
    bad = tmp_path / "short.json"
    bad.write_text(json.dumps({
        "variables": [{"name": "x", "alphabet": 2}],
        "outcomes": [{"values": [0], "p": "1/2"}, {"values": [1], "p": "1/4"}],
    }))
    code, _, err = run(capsys, "profile", str(bad))
    assert code == 3
    assert "defect" in err


# ---------------------------------------------------------------------------
# example


def test_example_not_prime_exit_4(capsys):
    code, _, err = run(capsys, "example", "--q", "4")
    assert code == 4 and "prime" in err


def test_example_budget_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("ENTROSCOPE_BUDGET", "100")
    code, _, err = run(capsys, "example", "--q", "3")
    assert code == 4 and "budget" in err.lower()


def test_example_combined_output(capsys):
    code, out, _ = run(capsys, "example", "--q", "2")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["distribution"]["outcomes"]) == 16
    assert doc["verification"]["all_pass"]


# ---------------------------------------------------------------------------
# check


def test_check_zy98_on_example(capsys, q3_file):
    code, out, _ = run(capsys, "check", "--ineq", "zy98", str(q3_file))
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] >= 0 and doc["nonnegative"]


def test_check_cond1_not_applicable(capsys, q3_file):
    import math

    code, out, _ = run(capsys, "check", "--ineq", "cond1", str(q3_file))
    assert code == 0
    doc = json.loads(out)
    assert doc["applicable"] is False
    failing = [c for c in doc["constraints"] if not c["satisfied"]]
    assert len(failing) == 1
    assert abs(failing[0]["value"] - math.log2(3) / 3) < 1e-9


def test_check_unknown_inequality_exit_5(capsys, q3_file):
    code, _, err = run(capsys, "check", "--ineq", "zy99", str(q3_file))
    assert code == 5 and "unknown inequality" in err


def test_check_expression_zero(capsys, q3_file):
    code, out, _ = run(capsys, "check", "--expr", "I(a;b) - I(a;b)", str(q3_file))
    assert code == 0
    assert json.loads(out)["value"] == 0.0


def test_check_expression_syntax_error_exit_2(capsys, q3_file):
    code, _, err = run(capsys, "check", "--expr", "I(a;b", str(q3_file))
    assert code == 2 and "position" in err


def test_check_matus_star_name(capsys, q3_file):
    code, out, _ = run(capsys, "check", "--ineq", "matus-star(2)", str(q3_file))
    assert code == 0 and json.loads(out)["nonnegative"]


def test_check_conditional_on_profile_numeric_only(capsys, tmp_path, q3_file):
    code, out, _ = run(capsys, "profile", str(q3_file))
    prof_path = tmp_path / "prof.json"
    prof_path.write_text(json.dumps(json.loads(out)["profile"]))
    code, out, _ = run(capsys, "check", "--ineq", "cond1", str(prof_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["applicable"] is False
    assert any("numeric" in w for w in doc["warnings"])


# ---------------------------------------------------------------------------
# shannon-type


def test_shannon_type_elemental(capsys):
    code, out, _ = run(capsys, "shannon-type", "--expr", "I(a;b|c)")
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"] == "shannon-type" and doc["verified"]
    assert doc["dual_weights"] == {"I(a;b|c)": "1/1"}


def test_shannon_type_zy98_witness(capsys):
    text = "2*I(c;d|a) + I(c;d|b) + I(a;b) + I(a;c|d) + I(a;d|c) - I(c;d)"
    code, out, _ = run(capsys, "shannon-type", "--expr", text)
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"] == "not-shannon-type"
    assert doc["verified"] and doc["objective_value"].startswith("-")


def test_shannon_type_ingleton_witness(capsys):
    text = "I(c;d|a) + I(c;d|b) + I(a;b) - I(c;d)"
    code, out, _ = run(capsys, "shannon-type", "--expr", text)
    assert code == 0
    assert json.loads(out)["decision"] == "not-shannon-type"


def test_shannon_type_arity_cap_exit_2(capsys):
    code, _, err = run(capsys, "shannon-type", "--expr",
                       "H(a,b,c,d,e,f,g)")
    assert code == 2


# ---------------------------------------------------------------------------
# ae-cert


def test_ae_cert_cond1_scan(capsys):
    code, out, _ = run(capsys, "ae-cert", "--target", "cond1")
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == 19 and doc["gap"] > 0


def test_ae_cert_cond1_q17_exit_6(capsys):
    code, _, err = run(capsys, "ae-cert", "--target", "cond1", "--q", "17")
    assert code == 6 and "deficit" in err


def test_ae_cert_both(capsys):
    code, out, _ = run(capsys, "ae-cert", "--target", "both")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["certificates"]) == {"cond1", "cond3"}
    assert set(doc["zero_set"]) == {"I(a;b|c)", "I(a;b)", "H(c|a,b)"}


# ---------------------------------------------------------------------------
# sw-sim


def test_sw_sim_csv_deterministic(capsys, pair_file):
    args = ("sw-sim", "--dist", str(pair_file), "--N", "2,4",
            "--delta", "0.1", "--seeds", "3")
    code, out, _ = run(capsys, *args)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("seed,N,m,")
    assert len(lines) == 1 + 3 * 2
    code2, out2, _ = run(capsys, *args)
    assert out2 == out


def test_sw_sim_needs_distribution(capsys, tmp_path, q3_file):
    code, out, _ = run(capsys, "profile", str(q3_file))
    prof_path = tmp_path / "prof.json"
    prof_path.write_text(json.dumps(json.loads(out)["profile"]))
    code, _, err = run(capsys, "sw-sim", "--dist", str(prof_path), "--N", "2")
    assert code == 2


def test_sw_sim_budget_exit_4(capsys, pair_file, monkeypatch):
    monkeypatch.setenv("ENTROSCOPE_BUDGET", "4")
    code, _, err = run(capsys, "sw-sim", "--dist", str(pair_file), "--N", "8")
    assert code == 4


def test_sw_sim_rejects_malformed_n_list(capsys, pair_file):
    code, _, err = run(capsys, "sw-sim", "--dist", str(pair_file), "--N", "2,x")
    assert code == 2 and "--N" in err


# ---------------------------------------------------------------------------
# text format and output determinism


def test_text_format_outputs(capsys, q3_file):
    code, out, _ = run(capsys, "profile", str(q3_file), "--format", "text")
    assert code == 0 and out.startswith("H(a) = ") and "polymatroid: ok" in out

    code, out, _ = run(capsys, "check", "--ineq", "cond1", str(q3_file),
                       "--format", "text")
    assert code == 0 and "applicable: False" in out and "FAILS" in out

    code, out, _ = run(capsys, "shannon-type", "--expr", "I(a;b)",
                       "--format", "text")
    assert code == 0 and "decision: shannon-type" in out

    code, out, _ = run(capsys, "ae-cert", "--target", "cond1", "--q", "19",
                       "--format", "text")
    assert code == 0 and "q = 19" in out and "zero-set:" in out

    code, out, _ = run(capsys, "example", "--q", "2", "--format", "text")
    assert code == 0 and "all checks pass: True" in out


def test_json_outputs_byte_identical(capsys, q3_file):
    for args in (("profile", str(q3_file)),
                 ("ae-cert", "--target", "cond1"),
                 ("check", "--ineq", "zy98", str(q3_file))):
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second
