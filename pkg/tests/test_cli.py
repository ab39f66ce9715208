"""Command-line interface: subcommands, exit codes, determinism."""

import json
import subprocess
import sys

from kahlercone.cli import main


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "kahlercone.cli", *argv],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout


def run_inproc(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_exact_univariate(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1^3",
                           "--points", "1,2,1/3", "--mode", "exact")
    assert code == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == 1
    assert doc["overall"] == "PASS"
    assert [p["maxAbsResidual"] for p in doc["points"]] == ["0", "0", "0"]
    assert [p["y"] for p in doc["points"]] == [["1"], ["2"], ["1/3"]]


def test_cone_check_outside_still_exits_zero(capsys):
    code, out = run_inproc(capsys, "cone", "check", "--form", "y1^3+y2^3",
                           "--point", "1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["points"][0]["verdict"] == "Outside"
    assert doc["points"][0]["hessianInertia"] == [2, 0, 0]


def test_validate_rejects_inhomogeneous(capsys):
    code, out = run_inproc(capsys, "validate", "--form", "y1^2")
    assert code == 2
    doc = json.loads(out)
    assert doc["error"]["type"] == "NotHomogeneousCubic"


def test_validate_echoes_canonical_form(capsys):
    code, out = run_inproc(capsys, "validate", "--form", "y2^3 + y1*y2^2")
    assert code == 0
    doc = json.loads(out)
    assert doc["form"]["text"] == "y1*y2^2 + y2^3"
    assert doc["form"]["n"] == 2


def test_verify_negated_convention_fails(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1^3", "--points", "1",
                           "--convention", "negated")
    assert code == 1
    assert json.loads(out)["overall"] == "FAIL"


def test_sampling_exhausted_maps_to_exit_2(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1^3", "--n", "2",
                           "--samples", "3")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "SamplingExhausted"


def test_point_outside_cone_maps_to_exit_2(capsys):
    code, out = run_inproc(capsys, "metric", "--form", "y1^3",
                           "--points", "-1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "NotInCone"


def test_verify_with_sampled_points(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1*y2^2",
                           "--samples", "5", "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["overall"] == "PASS" and len(doc["points"]) == 5


def test_float_mode_emits_numbers(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1^3",
                           "--points", "1", "--mode", "float")
    assert code == 0
    doc = json.loads(out)
    point = doc["points"][0]
    assert isinstance(point["y"][0], float)
    assert isinstance(point["maxAbsResidual"], float)
    assert point["maxRelResidual"] < 1e-9


def test_exact_mode_emits_only_rational_strings(capsys):
    code, out = run_inproc(capsys, "metric", "--form", "y1*y2^2",
                           "--points", "1,2")
    assert code == 0
    doc = json.loads(out)
    g = doc["points"][0]["g"]
    assert all(isinstance(v, str) for row in g for v in row)


def test_curvature_report_payload(capsys):
    code, out = run_inproc(capsys, "curvature", "--form", "y1^3",
                           "--points", "1")
    assert code == 0
    doc = json.loads(out)
    entry = doc["points"][0]
    assert entry["normFunction"] == "8"
    assert entry["lhs"][0][0][0][0] == "3/8"
    assert entry["rhs"][0][0][0][0] == "3/8"
    assert entry["residual"][0][0][0][0] == "0"
    assert entry["yukawa"][0][0][0] == "3"
    assert entry["christoffel"][0][0][0] == "0+1i"


def test_cone_metric_checks(capsys):
    code, out = run_inproc(capsys, "cone-metric", "--form", "y1^3",
                           "--points", "1", "--lam", "1")
    assert code == 0
    doc = json.loads(out)
    entry = doc["points"][0]
    assert entry["gTilde"] == [["8+0i", "0-12i"], ["0+12i", "12+0i"]]
    assert entry["inverseCheck"] is True
    assert entry["inertia"] == [1, 1, 0]
    assert entry["christoffelCheck"]["passed"] is True


def test_affine_verify(capsys):
    code, out = run_inproc(capsys, "affine-verify", "--form", "y1*y2*y3",
                           "--points", "1,1,1;2,1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["overall"] == "PASS"
    assert all(p["kappa"] == "-4" for p in doc["points"])


def test_identity_n8f(capsys):
    code, out = run_inproc(capsys, "identity-n8f", "--form", "y1*y2^2")
    assert code == 0
    assert json.loads(out)["holds"] is True


def test_form_file_input(tmp_path, capsys):
    doc = {"n": 2, "monomials": [{"exp": [1, 2], "coeff": "1"},
                                 {"exp": [0, 3], "coeff": "2"}]}
    path = tmp_path / "form.json"
    path.write_text(json.dumps(doc))
    code, out = run_inproc(capsys, "validate", "--form-file", str(path))
    assert code == 0
    assert json.loads(out)["form"]["text"] == "y1*y2^2 + 2*y2^3"


def test_byte_identical_reports_across_runs():
    argv = ["verify", "--form", "y1*y2^2", "--samples", "4", "--seed", "12"]
    code1, out1 = run_cli(*argv)
    code2, out2 = run_cli(*argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_byte_identical_sampling():
    argv = ["cone", "sample", "--form", "y1*y2*y3", "--hint", "1,1,1",
            "--samples", "6", "--seed", "8"]
    _, out1 = run_cli(*argv)
    _, out2 = run_cli(*argv)
    assert out1 == out2


def test_bad_inputs_exit_2(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1^3",
                           "--points", "abc")
    assert code == 2 and "bad rational" in json.loads(out)["error"]["message"]
    code, out = run_inproc(capsys, "validate", "--form-file", "/nonexistent")
    assert code == 2
    code, out = run_inproc(capsys, "cone-metric", "--form", "y1^3",
                           "--points", "1", "--lam", "zz")
    assert code == 2


def test_text_mode_renders(capsys):
    code, out = run_inproc(capsys, "verify", "--form", "y1^3",
                           "--points", "1", "--text")
    assert code == 0
    assert "overall: PASS" in out
