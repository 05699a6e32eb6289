"""CLI surface: exit codes, JSON schema, conventions header, golden harness."""

import json

from ffmzv.cli import main
from ffmzv.carlitz import CarlitzContext
from ffmzv.laurent import to_text
from ffmzv.special import Index, mzv


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nonprime_p_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "mzv", "--p", "4", "--l", "1", "--index", "2")
    assert code == 2
    assert "p must be prime" in err


def test_bad_levels_are_usage_errors(capsys):
    code, _, err = run_cli(capsys, "mzv", "--p", "2", "--l", "1,1", "--index", "2")
    assert code == 2 and "distinct" in err
    code, _, err = run_cli(capsys, "mzv", "--p", "2", "--l", "0", "--index", "2")
    assert code == 2


def test_mzv_json_matches_library(capsys):
    code, out, _ = run_cli(
        capsys, "mzv", "--p", "3", "--l", "1", "--index", "2,1", "--prec", "40"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == "1"
    assert set(doc["conventions"]) == {"uniformizer", "at_slot", "twist_form"}
    ctx = CarlitzContext(3, 1, prec=40)
    assert doc["value"] == to_text(mzv(ctx, Index((2, 1)), 40))
    assert doc["terms_used"] >= 1
    assert doc["precision_achieved"] == 40


def test_verify_period_pass(capsys):
    code, out, _ = run_cli(
        capsys, "verify-period", "--p", "2", "--l", "1", "--index", "2", "--prec", "30"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"][0]["status"] == "pass"


def test_verify_rat_and_derived(capsys):
    code, out, _ = run_cli(
        capsys, "verify-rat", "--p", "2", "--l", "1", "--index", "1,2", "--prec", "44", "--tdeg", "8"
    )
    assert code == 0 and json.loads(out)["checks"][0]["status"] == "pass"
    code, out, _ = run_cli(
        capsys, "verify-derived", "--p", "3", "--l", "1", "--derive", "2", "--prec", "44", "--tdeg", "6"
    )
    assert code == 0 and json.loads(out)["checks"][0]["status"] == "pass"


def test_omega_pitilde_atpoly_cmpl(capsys):
    code, out, _ = run_cli(capsys, "omega", "--p", "2", "--l", "1", "--prec", "30", "--tdeg", "6")
    assert code == 0 and json.loads(out)["checks"][0]["status"] == "pass"
    code, out, _ = run_cli(capsys, "pitilde", "--p", "3", "--l", "1", "--prec", "24")
    assert code == 0 and json.loads(out)["value"].startswith("2*z^-3")
    code, out, _ = run_cli(capsys, "atpoly", "--p", "3", "--l", "1", "--smax", "4")
    doc = json.loads(out)
    assert code == 0 and doc["polynomials"][:3] == ["1", "1", "1"] and doc["bounds_ok"]
    code, out, _ = run_cli(
        capsys, "cmpl", "--p", "3", "--l", "1", "--index", "1", "--u", "1", "--prec", "24"
    )
    assert code == 0 and json.loads(out)["value"].startswith("1 +")


def test_cmpl_divergent_arguments_fail(capsys):
    code, _, err = run_cli(
        capsys, "cmpl", "--p", "2", "--l", "1", "--index", "1", "--u", "theta^2", "--prec", "20"
    )
    assert code == 1 and "convergence" in err


def test_group_commands(capsys):
    code, out, _ = run_cli(
        capsys, "group-closure", "--indices", "1,2", "--gf", "3,4", "--samples", "25", "--seed", "5"
    )
    doc = json.loads(out)
    assert code == 0 and doc["index_set"] == ["(1)", "(2)", "(1,2)"]
    code, out, _ = run_cli(
        capsys,
        "group-commutator", "--indices", "1,2", "--gf", "3,4", "--samples", "10", "--rational",
    )
    assert code == 0 and json.loads(out)["domain"] == "rational-function"


def test_budget_cap_reported(capsys):
    code, _, err = run_cli(
        capsys, "mzv", "--p", "3", "--l", "1", "--index", "1", "--enum-budget", "2"
    )
    assert code == 1 and "budget" in err.lower()


def test_worker_env_var(capsys, monkeypatch):
    monkeypatch.setenv("FFMZV_WORKERS", "3")
    code, out, _ = run_cli(capsys, "suite")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_period_low_precision_never_spurious(capsys):
    # a starved precision budget may verify fewer digits or report
    # "incomparable", but must never fabricate an inequality
    code, out, _ = run_cli(
        capsys, "verify-period", "--p", "3", "--l", "1", "--index", "1", "--prec", "1"
    )
    doc = json.loads(out)
    assert doc["checks"][0]["status"] in ("incomparable", "pass")


def test_text_format_has_convention_header(capsys):
    code, out, _ = run_cli(
        capsys, "pitilde", "--p", "2", "--l", "1", "--prec", "20", "--format", "text"
    )
    assert code == 0
    assert out.splitlines()[0].startswith("# uniformizer:")


def test_value_command_byte_identical(capsys):
    argv = ("mzv", "--p", "3", "--l", "1", "--index", "1,1", "--prec", "32")
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_suite_timings_flag_is_optin(capsys):
    code, out, _ = run_cli(capsys, "suite", "--timings")
    doc = json.loads(out)
    assert code == 0 and any(c["runtime_ms"] > 0 for c in doc["checks"])


def test_suite_golden_tamper_reports_first_difference(tmp_path, capsys):
    from importlib import resources

    doc = json.loads(resources.files("ffmzv").joinpath("golden/golden.json").read_text())
    doc["values"]["p2_l1"]["zeta_1"] = doc["values"]["p2_l1"]["zeta_1"].replace("z^2", "z^7", 1)
    (tmp_path / "golden.json").write_text(json.dumps(doc, indent=2, sort_keys=True))
    code, out, _ = run_cli(capsys, "suite", "--fixtures", str(tmp_path))
    assert code == 1
    report = json.loads(out)
    golden = [c for c in report["checks"] if c["name"] == "golden-regression"][0]
    assert golden["status"] == "fail"
    assert "first differing term" in golden["detail"] and "z^2" in golden["detail"]
