import json
import subprocess
import sys

import pytest

from tracezero.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("ct1,ct2,count", [("5", "5", 8), ("5", "3+2", 4), ("3+2", "3+2", 5)])
def test_enumerate_classes(capsys, ct1, ct2, count):
    code, out, _ = run(capsys, "enumerate-classes", ct1, ct2)
    data = json.loads(out)
    assert code == 0 and data["count"] == count and data["schema_version"] == 1
    assert len(data["representatives"]) == count
    assert sum(r["orbit_size"] for r in data["representatives"]) == (24 if ct2 == "5" else 20)


@pytest.mark.parametrize("bad", ["3+x", "", "0"])
def test_enumerate_classes_bad_type(capsys, bad):
    code, _, err = run(capsys, "enumerate-classes", bad, "5")
    assert code == 2 and "error" in err


def test_enumerate_classes_too_big(capsys):
    assert run(capsys, "enumerate-classes", "9", "9")[0] == 2
    assert run(capsys, "enumerate-classes", "4+3", "5", "--n", "5")[0] == 2


def test_trace_table(capsys):
    code, out, _ = run(capsys, "trace-table")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["traces"] for r in rows] == [[0, 1, 2, 5], [0, 1, 3], [0, 1, 2, 5]]
    code, out, _ = run(capsys, "trace-table", "--pretty")
    assert "[0, 1, 3]" in out


@pytest.mark.parametrize(
    "arg,code",
    [("-0.43,-0.436,-0.1585", 0), ("-0.74,-0.3,0.02", 0), ("-3,0,0", 1), ("0,0,0,-1", 0), ("1,2", 2), ("a,b,c", 2), ("nan,0,0", 2)],
)
def test_check_polynomial(capsys, arg, code):
    got, out, _ = run(capsys, "check-polynomial", arg)
    assert got == code
    if code != 2:
        assert json.loads(out)["verdict"] == ("not ruled out" if code == 0 else "ruled out")


def test_check_polynomial_flag_and_pretty(capsys):
    code, out, _ = run(capsys, "check-polynomial", "--coeffs", "-0.43,-0.436,-0.1585", "--pretty")
    assert code == 0 and "verdict: not ruled out" in out and "c* = 0.44797" in out
    assert run(capsys, "check-polynomial")[0] == 2


def test_powers(capsys):
    code, out, _ = run(capsys, "powers", "4")
    data = json.loads(out)
    assert code == 0 and data["size_histogram"] == {"1": 24}
    assert data["member_cycle_types"] == {"5": 24}
    assert run(capsys, "powers", "6")[0] == 2


def test_sample_region_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, out, _ = run(capsys, "sample-region", "--seed", "42", "--grid-step", "0.001", "--output", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("re,im,source,parameter\n")


def test_sample_region_outputs(capsys, tmp_path):
    out_csv = tmp_path / "sub" / "r.csv"
    code, out, _ = run(capsys, "sample-region", "--grid-step", "0.05", "--random-samples", "100",
                       "--output", str(out_csv), "--plot", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["files"]) == 3
    assert (tmp_path / "sub" / "r.svg").read_text().startswith("<svg")
    assert len(json.loads((tmp_path / "sub" / "r.json").read_text())) == data["points"]
    assert data["envelope"]["bins_compared"] > 0


def test_sample_region_config_overrides(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"grid_step = 0.1\nrandom_samples = 0\noutput_path = {tmp_path / 'o.csv'}\n")
    code, out, _ = run(capsys, "sample-region", "--grid-step", "0.001", "--config", str(cfg))
    data = json.loads(out)
    assert code == 0 and data["config"]["grid_step"] == 0.1
    assert data["points"] == 8 + 17 * 9 * 5


def test_sample_region_env_default(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TRACEZERO_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "sample-region", "--grid-step", "0.1")
    assert code == 0 and (tmp_path / "region.csv").exists()


def test_sample_region_bad_input(capsys, tmp_path):
    assert run(capsys, "sample-region", "--grid-step", "0.5")[0] == 2
    assert run(capsys, "sample-region", "--config", str(tmp_path / "missing.cfg"))[0] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("speed = 3\n")
    assert run(capsys, "sample-region", "--config", str(bad))[0] == 2


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,3,13")
    data = json.loads(out)
    assert code == 0 and data["all_passed"] and [r["number"] for r in data["results"]] == [1, 3, 13]
    assert run(capsys, "verify", "--only", "99")[0] == 2


@pytest.mark.parametrize("sub", ["enumerate-classes", "trace-table", "check-polynomial", "powers", "sample-region", "verify"])
def test_help_mentions_schema(capsys, sub):
    code, out, _ = run(capsys, sub, "--help")
    assert code == 0 and "schema_version" in out and "--pretty" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tracezero", "check-polynomial", "-3,0,0"], capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["passes"] is False
