import json
import math
from pathlib import Path

import jsonschema
import pytest

from platecasimir import cli
from platecasimir.checks import CheckResult
from platecasimir.cli import (
    COMPUTE_SCHEMA, ROOTS_HEADER, SCAN_HEADER, SCAN_SCHEMA, fmt, main, parse_range, read_config,
)
from platecasimir.energy import HBAR_C_J_M
from platecasimir.exceptions import ToleranceNotMet

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, golden", [
    (("compute", "--model", "mit", "--mu", "0", "--format", "csv"), "compute_mit_mu0.csv"),
    (("scan", "--model", "mit", "--mu-range", "0:20:1"), "scan_mit_0_20.csv"),
])
def test_goldens_byte_identical(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.encode() == (GOLDEN / golden).read_bytes()


def test_golden_values_are_physical():
    rows = (GOLDEN / "scan_mit_0_20.csv").read_text().splitlines()
    assert rows[0] == SCAN_HEADER
    assert len(rows) == 22
    assert float(rows[1].split(",")[1]) == pytest.approx(-7 * math.pi**2 / 2880, rel=1e-11)


@pytest.mark.parametrize("x, text", [
    (0.0, "0"), (-0.0239886218082033, "-0.0239886218082"), (1.5e-20, "1.5e-20"), (3.0, "3"), (None, ""),
])
def test_fmt(x, text):
    assert fmt(x) == text


def test_parse_range():
    assert parse_range("0:20:1") == [float(i) for i in range(21)]
    assert parse_range("0:1:0.1")[-1] == 1.0
    assert len(parse_range("0:1:0.1")) == 11


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--mu", "0")
    assert code == 0
    assert out.startswith("model=mit mu=0 e=-0.0239886218082")


def test_compute_json_schema(capsys):
    code, out, _ = run(capsys, "compute", "--model", "robin", "--beta1", "0.5", "--mu", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, COMPUTE_SCHEMA)
    assert doc["params"] == {"beta1": 0.5, "beta2": 0.0}


def test_compute_physical(capsys):
    code, out, _ = run(capsys, "compute", "--physical", "--length", "1e-6", "--area", "1e-4", "--mass", "0",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, COMPUTE_SCHEMA)
    expected = -7 * math.pi**2 / 2880 * HBAR_C_J_M * 1e-4 / 1e-18
    assert doc["physical"]["energy"] == pytest.approx(expected, rel=1e-10)
    assert doc["physical"]["unit"] == "J"
    code, out, _ = run(capsys, "compute", "--physical", "--length", "1e-6", "--area", "1e-4", "--mass", "0",
                       "--format", "csv", "--unit", "eV")
    head, vals = out.splitlines()
    assert head == "model,mu,e,err,energy_eV,length_m,area_m2,mass_eV"


def test_scan_json_schema_and_rows(capsys):
    code, out, _ = run(capsys, "scan", "--model", "dirichlet", "--mu-range", "0:2:0.5", "--oracle",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCAN_SCHEMA)
    assert len(doc["rows"]) == 5
    assert all(r["oracle_dev"] < 1e-8 for r in doc["rows"])
    assert doc["metadata"]["model"] == "dirichlet"


def test_scan_csv_row_count(capsys):
    code, out, _ = run(capsys, "scan", "--model", "periodic", "--mu-range", "0:3:0.25")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == SCAN_HEADER
    assert len(lines) == 14


def test_scan_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "scan", "--mu-range", "0:3:1")
    _, parallel, _ = run(capsys, "scan", "--mu-range", "0:3:1", "--jobs", "2")
    assert serial == parallel


@pytest.mark.parametrize("argv", [
    ("compute", "--mu", "-1"),
    ("compute",),
    ("compute", "--model", "quark", "--mu", "0"),
    ("compute", "--model", "robin", "--beta1", "-1", "--mu", "0"),
    ("compute", "--model", "mit", "--beta1", "1", "--mu", "0"),
    ("compute", "--mu", "0", "--tol", "0"),
    ("compute", "--physical", "--length", "1e-6"),
    ("scan", "--model", "mit", "--mu-range", "0:2:1", "--oracle"),
    ("scan", "--mu-range", "0:2"),
    ("scan", "--mu-range", "-1:2:1"),
    ("scan",),
    ("roots", "--cutoff", "-3"),
    ("check", "--suite", "nonsense"),
    ("frobnicate",),
    ("compute", "--mu", "zero"),
])
def test_usage_errors_exit_1(capsys, argv):
    code = None
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_negative_mu_message(capsys):
    code, _, err = run(capsys, "compute", "--mu", "-1")
    assert code == 1
    assert "mu must be ≥ 0" in err


def test_tolerance_failure_exits_2(capsys, monkeypatch):
    def fail(model, mu, spec=None):
        raise ToleranceNotMet(value=1.0, error=0.5, target=1e-10)

    monkeypatch.setattr(cli, "casimir_coefficient", fail)
    code, out, err = run(capsys, "compute", "--mu", "0")
    assert code == 2
    assert "warning" in err
    # best estimate still reported, scaled by the MIT prefactor -1/pi^2
    assert f"e={fmt(-1 / math.pi**2)}" in out
    code, out, _ = run(capsys, "scan", "--mu-range", "0:1:1")
    assert code == 2
    assert len(out.splitlines()) == 3


def test_failed_check_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name: [CheckResult("forced", False, "detail")])
    code, out, _ = run(capsys, "check")
    assert code == 2
    assert out.startswith("FAIL")


def test_roots_csv(capsys):
    code, out, _ = run(capsys, "roots", "--mu", "1", "--cutoff", str(100 * math.pi))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ROOTS_HEADER
    assert len(lines) == 101
    idx, lo, hi, root, res = lines[1].split(",")
    assert idx == "1"
    assert float(root) == pytest.approx(2.028757838, abs=1e-8)
    assert float(lo) <= float(root) <= float(hi)


@pytest.mark.parametrize("suite", ["closed-forms", "oracles"])
def test_check_suite(capsys, suite):
    code, out, _ = run(capsys, "check", "--suite", suite)
    assert code == 0
    assert out.strip()
    assert not any(line.startswith("FAIL") for line in out.splitlines())


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nmodel = dirichlet\nmu = 1\nformat = csv\n")
    assert read_config(str(cfg)) == {"model": "dirichlet", "mu": "1", "format": "csv"}
    code, out, _ = run(capsys, "compute", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[1].startswith("dirichlet,1,")
    code, out, _ = run(capsys, "compute", "--config", str(cfg), "--mu", "0", "--model", "mit")
    assert out.splitlines()[1].startswith("mit,0,-0.0239886218082")


@pytest.mark.parametrize("flag, columns", [("true", 5), ("false", 5), ("no", 5)])
def test_config_boolean_flags(tmp_path, capsys, flag, columns):
    cfg = tmp_path / "scan.cfg"
    cfg.write_text(f"model = dirichlet\nmu-range = 0:1:0.5\noracle = {flag}\n")
    code, out, _ = run(capsys, "scan", "--config", str(cfg))
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert len(row) == columns
    assert (row[3] != "") == (flag == "true")


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("cutoff = 3\n")
    assert run(capsys, "compute", "--config", str(bad), "--mu", "0")[0] == 1
    junk = tmp_path / "junk.cfg"
    junk.write_text("just words\n")
    assert run(capsys, "compute", "--config", str(junk), "--mu", "0")[0] == 1
    assert run(capsys, "compute", "--config", str(tmp_path / "missing.cfg"), "--mu", "0")[0] == 1


def test_deterministic_output(capsys):
    _, a, _ = run(capsys, "scan", "--model", "em", "--mu-range", "0:1:0.5")
    _, b, _ = run(capsys, "scan", "--model", "em", "--mu-range", "0:1:0.5")
    assert a == b
