import json
import math

import numpy as np
import pytest

from discrete_cs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    return lines[0].split(","), [l.split(",") for l in lines[1:]]


def test_table_hydrogen(capsys):
    code, out, _ = run(capsys, "table", "--spec", "hydrogen1d", "--n-max", "3")
    assert code == 0
    header, data = rows(out)
    assert header == ["n", "e_n", "rho_n", "log_rho_n"]
    assert len(data) == 4
    n, e, r, lr = data[-1]
    assert int(n) == 3
    np.testing.assert_allclose([float(e), float(r), float(lr)], [0.9375, 0.625, math.log(0.625)], rtol=1e-14)


def test_table_harmonic(capsys):
    code, out, _ = run(capsys, "table", "--spec", "harmonic", "--n-max", "4")
    assert code == 0
    _, data = rows(out)
    np.testing.assert_allclose([float(x) for x in data[-1]], [4, 4, 24, math.log(24)], rtol=1e-14)


@pytest.mark.parametrize("spec", ["harmonic", "hydrogen1d"])
def test_table_zero(capsys, spec):
    code, out, _ = run(capsys, "table", "--spec", spec, "--n-max", "0")
    assert code == 0
    _, data = rows(out)
    assert data == [["0", "0", "1", "0"]]


def test_state_vacuum(capsys):
    code, out, _ = run(capsys, "state", "--spec", "harmonic", "--J", "0", "--gamma", "0")
    assert code == 0
    header, data = rows(out)
    assert header == ["n", "re_c", "im_c", "abs_c_sq"]
    assert data == [["0", "1", "0", "1"]]


def test_state_normalized(capsys):
    code, out, _ = run(capsys, "state", "--spec", "hydrogen1d", "--J", "0.6", "--gamma", "1.3")
    assert code == 0
    _, data = rows(out)
    p = np.array([float(r[3]) for r in data])
    assert p.sum() == pytest.approx(1.0, abs=1e-11)


def test_scan_action_residual(capsys):
    code, out, _ = run(
        capsys, "scan", "--spec", "hydrogen1d", "--J-min", "0.1", "--J-max", "0.9", "--points", "9"
    )
    assert code == 0
    header, data = rows(out)
    col = header.index("action_residual")
    assert len(data) == 9
    assert max(float(r[col]) for r in data) <= 1e-9
    margin = [float(r[header.index("bound_margin")]) for r in data]
    assert min(margin) > 0


def test_autocorr_period(capsys):
    code, out, _ = run(capsys, "autocorr", "--spec", "harmonic", "--J", "1", "--t-max", "6.2832", "--steps", "100")
    assert code == 0
    header, data = rows(out)
    assert header == ["t", "P"]
    P = np.array([float(r[1]) for r in data])
    assert len(P) == 101
    assert P[0] == pytest.approx(1.0, abs=1e-12)
    assert abs(P[0] - P[-1]) <= 1e-6


def test_output_deterministic(capsys):
    argv = ("scan", "--spec", "harmonic", "--points", "5")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_out_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "--spec", "harmonic", "--n-max", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[-1].startswith("2,2,2,")


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"spectrum": {"kind": "harmonic", "omega": 2.0}, "n_max": 2}))
    code, out, _ = run(capsys, "table", "--config", str(cfg))
    assert code == 0
    assert '"omega": 2.0' in out
    _, data = rows(out)
    assert len(data) == 3
    # flags win over the file
    code, out, _ = run(capsys, "table", "--config", str(cfg), "--n-max", "5", "--omega", "3")
    _, data = rows(out)
    assert len(data) == 6 and '"omega": 3.0' in out


def test_custom_formula_params(capsys):
    code, out, _ = run(
        capsys, "table", "--spec", "custom_formula", "--family", "rational", "--param", "b=2", "--param", "cap=1",
        "--n-max", "2",
    )
    assert code == 0
    _, data = rows(out)
    assert float(data[2][1]) == pytest.approx(0.5)


@pytest.mark.parametrize(
    "argv",
    [
        ("table",),  # no spectrum
        ("table", "--spec", "nonsense"),
        ("table", "--spec", "custom_table", "--levels", "0,2,1"),
        ("table", "--spec", "custom_formula", "--family", "rational", "--param", "b"),
        ("table", "--spec", "harmonic", "--n-max", "-1"),
        ("state", "--spec", "harmonic", "--rel-tol", "-1"),
        ("table", "--config", "/nonexistent/cfg.json"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_domain_error_exit_1(capsys):
    code, out, err = run(capsys, "state", "--spec", "hydrogen1d", "--J", "1.5")
    assert code == 1
    assert out == ""
    assert "OutOfDomain" in err


def test_verify_custom_table_skips_unity(capsys):
    levels = ",".join(str(x) for x in np.arange(0, 400, dtype=float))
    code, out, _ = run(capsys, "verify", "--spec", "custom_table", "--levels", levels)
    assert "# SKIPPED resolution_of_unity" in out
    assert code == 0
    _, data = rows(out)
    status = {r[0]: r[2] for r in data}
    assert status["continuity_of_labeling"] == "PASS"
    assert status["temporal_stability"] == "PASS"
    assert status["action_identity"] == "PASS"


def test_verify_failure_exit_1(capsys):
    # an absurd truncation cap makes the series uncertifiable
    code, out, _ = run(capsys, "verify", "--spec", "harmonic", "--n-cap", "8", "--n-max", "5")
    assert code == 1
    assert "# overall: FAIL" in out
