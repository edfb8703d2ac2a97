import json
import math
import os

import numpy as np
import pytest

from catdecay.cli import main, parse_sweep
from catdecay.truncation import NMAX_ENV, TruncationWarning


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    lines = text.strip().splitlines()
    return lines[0].split(","), np.array([[float(v) for v in line.split(",")] for line in lines[1:]])


def test_squeeze_sweep(capsys):
    code, out, _ = run(capsys, "squeeze", "--state", "ecs", "--alpha", "1", "--tau", "0:3:301")
    assert code == 0
    cols, data = table(out)
    assert cols == ["tau", "s1", "s2"]
    assert data.shape == (301, 3)
    assert data[0, 0] == 0.0
    assert data[0, 2] == pytest.approx(-0.476811688088, abs=1e-12)


def test_squeeze_large_alpha_is_flat(capsys):
    _, out, _ = run(capsys, "squeeze", "--alpha", "2", "--tau", "0:3:301")
    assert np.all(np.abs(table(out)[1][:, 2]) < 0.006)


def test_squeeze_degenerate_sweep(capsys):
    code, out, _ = run(capsys, "squeeze", "--alpha", "0.5", "--tau", "0:0:1")
    assert code == 0
    assert table(out)[1].shape == (1, 3)


def test_squeeze_multiple_alphas(capsys, tmp_path):
    code, out, _ = run(capsys, "squeeze", "--alpha", "0.5", "--alpha", "1", "--tau", "0,1")
    assert code == 0
    assert out.splitlines()[0] == "tau,s1_alpha0.5,s2_alpha0.5,s1_alpha1,s2_alpha1"
    target = tmp_path / "sq.csv"
    assert main(["squeeze", "--alpha", "0.5", "--alpha", "1", "--tau", "0,1", "--out", str(target)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["sq_alpha0.5.csv", "sq_alpha1.csv"]


def test_pnd_examples(capsys):
    _, out, _ = run(capsys, "pnd", "--state", "ecs", "--alpha", "1", "--tau", "0")
    cols, data = table(out)
    assert cols == ["n", "p"]
    assert data[1, 1] == 0.0
    _, out, _ = run(capsys, "pnd", "--state", "ecs", "--alpha", "1", "--tau", "0.3")
    assert table(out)[1][1, 1] == pytest.approx(0.12582848360343513, rel=1e-15)


def test_pnd_yss_is_poisson(capsys):
    _, out, _ = run(capsys, "pnd", "--state", "yss", "--alpha", "2", "--tau", "0.1")
    data = table(out)[1]
    lam = 4 * math.exp(-0.1)
    poisson = [math.exp(n * math.log(lam) - lam - math.lgamma(n + 1)) for n in data[:, 0]]
    np.testing.assert_allclose(data[:, 1], poisson, atol=1e-12)


def test_pnd_json(capsys):
    _, out, _ = run(capsys, "pnd", "--alpha", "1", "--tau", "0,0.3", "--format", "json")
    obj = json.loads(out)
    assert obj["columns"] == ["n", "p_tau0", "p_tau0.3"]
    assert obj["data"][1][2] == pytest.approx(0.12582848360343513)


def test_wigner_summary_and_peaks(capsys, tmp_path):
    target = tmp_path / "w.csv"
    code, out, _ = run(capsys, "wigner", "--state", "ecs", "--alpha", "2", "--tau", "0.3", "--out", str(target))
    assert code == 0
    fields = dict(kv.split("=", 1) for kv in out.split())
    assert abs(float(fields["integral"]) - 1) < 5e-3
    left, right = fields["peaks"].strip("()").split(");(")
    target_x = 2 * math.sqrt(math.exp(-0.3))
    dx = 8 / 128
    assert abs(float(right.split(",")[0]) - target_x) <= dx
    assert abs(float(left.split(",")[0]) + target_x) <= dx
    assert target.read_text().splitlines()[0] == "x,y,w"
    assert len(target.read_text().splitlines()) == 1 + 129 * 129


def test_wigner_odd_cat_minimum(capsys):
    _, _, err = run(capsys, "wigner", "--state", "ocs", "--alpha", "1", "--tau", "0", "--grid", "-4:4:129")
    fields = dict(kv.split("=", 1) for kv in err.split())
    assert float(fields["min"]) == pytest.approx(-2 / math.pi, abs=1e-6)


def test_wigner_vacuum_json(capsys):
    _, out, _ = run(capsys, "wigner", "--alpha", "0", "--tau", "0", "--format", "json")
    from catdecay.wigner import WignerGrid, grid_integral

    assert abs(grid_integral(WignerGrid.from_json(out)) - 1) < 1e-4


def test_falpha(capsys):
    _, out, _ = run(capsys, "falpha", "--alpha", "0:2:3", "--tau", "0.3")
    cols, data = table(out)
    assert cols == ["alpha", "f"]
    assert data[1, 1] == pytest.approx(0.595494242465988, rel=1e-14)
    _, out, _ = run(capsys, "falpha", "--alpha", "0:2:3", "--tau", "0,0.8")
    data = table(out)[1]
    assert np.all(data[:, 1] == 1.0)
    assert data[2, 2] == pytest.approx(0.0122116, abs=1e-7)


@pytest.mark.parametrize("tau, expected", [("0.1", "5"), ("0.3", "3"), ("0.8", "2")])
def test_threshold(capsys, tau, expected):
    code, out, _ = run(capsys, "threshold", "--tau", tau, "--epsilon", "0.0125")
    assert code == 0
    assert out.strip() == expected


def test_threshold_not_found(capsys):
    code, out, err = run(capsys, "threshold", "--tau", "1e-6", "--epsilon", "0.0125", "--alpha-max", "10")
    assert code == 4
    assert out == ""
    assert "no alpha" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["squeeze", "--tau", "3:0:5"],
        ["squeeze", "--tau", "0:1:1"],
        ["squeeze", "--alpha", "x"],
        ["squeeze", "--state", "custom"],
        ["squeeze", "--phi", "1.0"],
        ["squeeze", "--state", "ocs", "--alpha", "0"],
        ["wigner", "--grid", "0:1"],
        ["wigner", "--tau", "0,1"],
        ["threshold", "--tau", "0"],
        ["threshold", "--epsilon", "2"],
        ["verify", "--only", "nope"],
        ["bogus"],
    ],
)
def test_config_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_io_error_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "falpha", "--out", str(tmp_path / "missing" / "f.csv"))
    assert code == 3
    assert "I/O error" in err


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["wigner", "--state", "yss", "--alpha", "1.5,0.5", "--tau", "0.2", "--grid", "-3:3:41", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".catdecay-")]


def test_verify_only_wigner(capsys):
    code, out, _ = run(capsys, "verify", "--only", "wigner")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert lines and all("wigner/" in l for l in lines)


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--only", "pnd,squeezing", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"]
    assert {c["group"] for c in obj["checks"]} == {"pnd", "squeezing"}


def test_verify_insufficient_truncation(capsys):
    code, out, _ = run(capsys, "verify", "--nmax", "4")
    assert code == 1
    assert "FAIL" in out
    assert "truncat" in out.lower()


def test_env_override_reaches_truncation(capsys, monkeypatch):
    monkeypatch.setenv(NMAX_ENV, "3")
    with pytest.warns(TruncationWarning):
        _, out, _ = run(capsys, "pnd", "--alpha", "0.1", "--tau", "0")
    assert len(table(out)[1]) == 4


def test_negative_values_need_no_equals(capsys):
    code, out, _ = run(capsys, "squeeze", "--state", "custom", "--phi", "-0.5", "--alpha", "-1,0.5", "--tau", "0")
    assert code == 0
    assert table(out)[1].shape == (1, 3)


def test_parse_sweep():
    np.testing.assert_array_equal(parse_sweep("0:1:3"), [0, 0.5, 1])
    np.testing.assert_array_equal(parse_sweep("0.5"), [0.5])
    np.testing.assert_array_equal(parse_sweep("1,2"), [1, 2])


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "catdecay", "threshold", "--tau", "0.3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "3"
