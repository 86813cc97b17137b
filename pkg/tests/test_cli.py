import json

import pytest

from g2forge.cli import Report, _close, main, parse_scenario, render_report


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_algebra_list(capsys):
    code, out = run_cli(capsys, "algebra", "list", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert "n28" in payload["results"]["algebras"]
    assert payload["results"]["algebras"]["n28"] == "(0,0,0,0,e13-e24,e14+e23)"


def test_algebra_show(capsys):
    code, out = run_cli(capsys, "algebra", "show", "n28", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["nilpotent"] is True
    assert payload["results"]["nilpotency_step"] == 2


def test_algebra_show_parses_raw_equations(capsys):
    code, out = run_cli(capsys, "algebra", "show", "(0,0,e12,e13,e23,e14)",
                        "--format", "json")
    assert code == 0
    assert json.loads(out)["results"]["nilpotent"] is True


def test_su3_check_json_roundtrip(capsys):
    code, out = run_cli(capsys, "su3", "check", "n28",
                        "--omega", "e12+e34-e56",
                        "--sigma", "e136-e145-e235-e246",
                        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["coupled_c"] == "-1"
    assert payload["results"]["lambda"] == "-4"
    assert payload["results"]["half_flat"] is True
    # round trip
    assert json.loads(json.dumps(payload)) == payload


def test_su3_check_float_ring(capsys):
    code, out = run_cli(capsys, "--ring", "float", "su3", "check", "n28",
                        "--omega", "e12+e34-e56",
                        "--sigma", "e136-e145-e235-e246",
                        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["results"]["coupled_c"] + 1.0) < 1e-10


def test_metric_analyze(capsys):
    code, out = run_cli(capsys, "metric", "analyze", "n28",
                        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["einstein"] is None
    assert payload["results"]["nilsoliton"]["c"] == "-3"
    assert payload["results"]["scal"] == "-2"


def test_g2_analyze(capsys):
    code, out = run_cli(capsys, "g2", "analyze", "n28_ext",
                        "--phi", "e127+e347-e567+e136-e145-e235-e246",
                        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["class"] == "locally_conformal_calibrated"
    assert payload["results"]["torsion"]["tau1"] == "-1/3*e7"
    assert payload["results"]["scal_torsion"] == "-21"
    assert payload["results"]["scal_ricci"] == "-21"
    assert payload["results"]["star_einstein"] is False


def test_table1_md(capsys):
    code, out = run_cli(capsys, "table1", "--format", "md")
    assert code == 0
    assert out.count("|") > 24
    assert "n28" in out


def test_obstruction_n4(capsys):
    code, out = run_cli(capsys, "obstruction", "n4", "--trials", "5",
                        "--seed", "7", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["confirmed"] == 5
    assert payload["passed"] is True


def test_parse_error_exit_code(capsys):
    code = main(["algebra", "show", "(0,0,e12,"])
    assert code == 2


def test_bad_scenario_reports_line():
    with pytest.raises(ValueError) as err:
        parse_scenario("[forms]\nomega e12\n")
    assert "line 2" in str(err.value)


SCENARIO = """
# coupled pair with curvature analyses
[algebra]
(0,0,0,0,e13-e24,e14+e23)

[metric]
identity

[forms]
omega = e12+e34-e56
sigma = e136-e145-e235-e246

[analyses]
su3
nilsoliton
einstein
"""


def test_scenario_run(tmp_path, capsys):
    path = tmp_path / "scenario.txt"
    path.write_text(SCENARIO)
    code, out = run_cli(capsys, "check", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["su3"]["coupled_c"] == "-1"
    assert payload["results"]["nilsoliton"]["c"] == "-3"
    assert payload["results"]["einstein"] is None


def test_scenario_g2(tmp_path, capsys):
    text = """
[algebra]
(a*e17,a*e27,a*e37,a*e47,a*e57,a*e67,0)

[forms]
phi = -e125-e136-e147+e237-e246+e345-e567

[analyses]
g2
"""
    path = tmp_path / "scenario_g2.txt"
    path.write_text(text)
    code, out = run_cli(capsys, "check", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["g2"]["class"] == "locally_conformal_parallel"
    assert payload["results"]["g2"]["tau1"] == "-a*e7"


def test_scenario_empty_analyses(tmp_path, capsys):
    text = "[algebra]\n(0,0,0,0,0,0)\n\n[analyses]\n"
    path = tmp_path / "empty.txt"
    path.write_text(text)
    code, out = run_cli(capsys, "check", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"] == {}
    assert payload["inputs"]["algebra"] == "(0,0,0,0,0,0)"


def test_close_numeric_coercion():
    assert _close("-1/3", -0.3333333333333333, 1e-10)
    assert _close({"e12": "-5/3"}, {"e12": -1.6666666666666665,
                                    "e15": 1e-17}, 1e-10)
    assert not _close("-1/3", "locally_conformal_calibrated", 1e-10)
    assert not _close({"e12": "-5/3"}, {"e12": "-5/3", "e15": 2.0}, 1e-10)


def test_reproduce_only_table1(capsys):
    code, out = run_cli(capsys, "reproduce-paper", "--only", "table1")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_render_report_text_and_md():
    from g2forge.cli import Check
    rep = Report(command="demo", results={"value": 3})
    rep.checks.append(Check(name="demo-check", passed=True))
    txt = render_report(rep, "text")
    assert "[PASS] demo-check" in txt
    md = render_report(rep, "md")
    assert md.startswith("## demo")


def test_reproduce_detects_drift(capsys, monkeypatch):
    import g2forge.cli as cli
    real = cli.load_golden

    def tampered(name):
        payload = real(name)
        if name == "coupled_n28.json":
            payload["lambda"] = "-5"
        return payload

    monkeypatch.setattr(cli, "load_golden", tampered)
    code, out = run_cli(capsys, "reproduce-paper", "--only", "coupled_n28")
    assert code == 1
    assert "FAIL" in out and "coupled_n28.lambda" in out


def test_color_env_override(monkeypatch):
    import sys
    from g2forge.cli import _use_color

    class Args:
        pass

    monkeypatch.setattr(sys.stdout, "isatty", lambda: True, raising=False)
    monkeypatch.delenv("G2FORGE_COLOR", raising=False)
    assert _use_color(Args()) is True
    monkeypatch.setenv("G2FORGE_COLOR", "0")
    assert _use_color(Args()) is False
    monkeypatch.setenv("G2FORGE_COLOR", "never")
    assert _use_color(Args()) is False


def test_scenario_ricci(tmp_path, capsys):
    text = """
[algebra]
(0,0,0,0,e13-e24,e14+e23)

[analyses]
ricci
"""
    path = tmp_path / "ricci.txt"
    path.write_text(text)
    code, out = run_cli(capsys, "check", str(path), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"]["ricci"]["scal"] == "-2"
