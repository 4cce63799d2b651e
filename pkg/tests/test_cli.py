"""End-to-end tests of the command line interface via subprocess."""

import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

REFERENCE_G = {
    (1, 0): 0.2165063510,
    (2, 0): 0.1661640732,
    (2, 1): 0.4460403578,
    (3, 0): 0.1400889590,
    (3, 1): 0.3664714887,
    (3, 2): 0.6163829153,
    (4, 0): 0.1234229399,
    (4, 1): 0.3199075781,
    (4, 2): 0.5243395120,
    (4, 3): 0.7582492415,
}


def run_cli(*args, check=True):
    proc = subprocess.run(
        [sys.executable, "-m", "rabijudd", *args],
        capture_output=True, text=True,
    )
    if check and proc.returncode != 0:
        raise AssertionError(
            f"exit {proc.returncode}\nstdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


# ---------------------------------------------------------------------------
# juddian

def test_juddian_csv_output():
    out = run_cli("juddian", "--max-n", "4").stdout
    lines = out.strip().split("\n")
    assert lines[0] == "N,index,lambda,g,E,det_residual"
    assert len(lines) == 11
    for line in lines[1:]:
        fields = line.split(",")
        assert len(fields) == 6
        n, idx = int(fields[0]), int(fields[1])
        g = float(fields[3])
        assert abs(g - REFERENCE_G[(n, idx)]) <= 1e-9
        # 10 decimal places on the fixed-point columns
        for f in fields[2:5]:
            assert len(f.split(".")[1]) == 10
    keys = [(int(l.split(",")[0]), float(l.split(",")[3])) for l in lines[1:]]
    assert keys == sorted(keys)


def test_juddian_json_output():
    out = run_cli("juddian", "--max-n", "2", "--format", "json").stdout
    rows = json.loads(out)
    assert len(rows) == 3
    for row in rows:
        assert list(row.keys()) == ["N", "index", "lambda", "g", "E"]
    assert abs(rows[0]["g"] - 0.2165063510) <= 1e-9
    assert abs(rows[2]["lambda"] - 0.8920807156) <= 1e-9


def test_juddian_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run_cli("juddian", "--max-n", "3", "--out", str(a))
    run_cli("juddian", "--max-n", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_juddian_boundary_filtered_run():
    proc = run_cli("juddian", "--max-n", "1", "--omega0", "2", "--omega", "1",
                   check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "N,index,lambda,g,E,det_residual"


def test_juddian_rejects_bad_max_n():
    proc = run_cli("juddian", "--max-n", "0", check=False)
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# spectrum

def test_spectrum_csv_shape_and_order():
    out = run_cli("spectrum", "--g-min", "0.1", "--g-max", "0.3",
                  "--g-steps", "3", "--cutoff", "40", "--levels", "2").stdout
    lines = out.strip().split("\n")
    assert lines[0] == "g,parity,level,energy"
    assert len(lines) == 1 + 3 * 2 * 2
    parsed = [line.split(",") for line in lines[1:]]
    gs = [float(r[0]) for r in parsed]
    assert gs == sorted(gs)
    # within one g: all parity +1 rows first, then -1, level ascending
    first_point = parsed[:4]
    assert [r[1] for r in first_point] == ["1", "1", "-1", "-1"]
    assert [r[2] for r in first_point] == ["0", "1", "0", "1"]


def test_spectrum_single_point_special_case():
    out = run_cli("spectrum", "--g-min", "0", "--g-max", "0", "--g-steps", "1",
                  "--cutoff", "40", "--levels", "3").stdout
    lines = out.strip().split("\n")[1:]
    energies = [float(l.split(",")[3]) for l in lines]
    assert energies == pytest.approx([-0.5, 1.5, 1.5, 0.5, 0.5, 2.5], abs=1e-12)


def test_spectrum_rejects_degenerate_range():
    proc = run_cli("spectrum", "--g-min", "0.2", "--g-max", "0.2",
                   "--g-steps", "5", check=False)
    assert proc.returncode == 2
    proc = run_cli("spectrum", "--g-min", "0.3", "--g-max", "0.1",
                   "--g-steps", "5", check=False)
    assert proc.returncode == 2


def test_spectrum_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["spectrum", "--g-min", "0.05", "--g-max", "0.4", "--g-steps", "4",
            "--cutoff", "30", "--levels", "3"]
    run_cli(*args, "--out", str(a))
    run_cli(*args, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# verify

def test_verify_passes_at_default_cutoff():
    proc = run_cli("verify", "--n", "1")
    assert proc.returncode == 0
    lines = proc.stdout.strip().split("\n")
    assert len(lines) == 3  # header, one point, summary
    assert "ok" in lines[1]


def test_verify_four_rows():
    proc = run_cli("verify", "--n", "4", "--cutoff", "100")
    data_lines = [l for l in proc.stdout.strip().split("\n")[1:-1]]
    assert len(data_lines) == 4
    assert all("ok" in l for l in data_lines)


def test_verify_fails_with_cutoff_diagnostic():
    proc = run_cli("verify", "--n", "1", "--cutoff", "5", check=False)
    assert proc.returncode == 1
    assert "cutoff" in (proc.stdout + proc.stderr)


# ---------------------------------------------------------------------------
# oscillator

def test_oscillator_displaced_report():
    proc = run_cli("oscillator", "--type", "displaced", "--lambda", "1.0")
    lines = proc.stdout.strip().split("\n")
    assert lines[-1].startswith("max deviation = ")
    assert float(lines[-1].split("=")[1]) <= 1e-8
    assert len(lines) == 12  # header + 10 levels + footer


def test_oscillator_squeezed_report():
    proc = run_cli("oscillator", "--type", "squeezed", "--lambda", "0.3",
                   "--cutoff", "200")
    assert float(proc.stdout.strip().split("\n")[-1].split("=")[1]) <= 1e-6


def test_oscillator_squeezed_domain_error():
    proc = run_cli("oscillator", "--type", "squeezed", "--lambda", "0.5",
                   check=False)
    assert proc.returncode == 2
    assert proc.stderr.strip() != ""


# ---------------------------------------------------------------------------
# plot

@pytest.fixture()
def sweep_files(tmp_path):
    csv = tmp_path / "sweep.csv"
    pts = tmp_path / "points.json"
    run_cli("spectrum", "--g-min", "0.05", "--g-max", "0.8", "--g-steps", "16",
            "--cutoff", "60", "--levels", "4", "--out", str(csv))
    run_cli("juddian", "--max-n", "2", "--format", "json", "--out", str(pts))
    return csv, pts


def test_plot_full_figure(sweep_files, tmp_path):
    csv, pts = sweep_files
    svg_path = tmp_path / "fig.svg"
    run_cli("plot", "--spectrum", str(csv), "--points", str(pts),
            "--out", str(svg_path))
    text = svg_path.read_text()
    root = ET.fromstring(text)  # well-formed XML
    assert root.tag.endswith("svg")
    assert text.count('class="level-plus"') == 4
    assert text.count('class="level-minus"') == 4
    assert text.count('class="juddian-point"') == 3
    assert 'class="baseline"' in text


def test_plot_baselines_off(sweep_files, tmp_path):
    csv, pts = sweep_files
    svg_path = tmp_path / "fig.svg"
    run_cli("plot", "--spectrum", str(csv), "--points", str(pts),
            "--baselines", "off", "--out", str(svg_path))
    assert 'class="baseline"' not in svg_path.read_text()


def test_plot_without_points(sweep_files, tmp_path):
    csv, _ = sweep_files
    svg_path = tmp_path / "fig.svg"
    run_cli("plot", "--spectrum", str(csv), "--out", str(svg_path))
    text = svg_path.read_text()
    assert 'class="juddian-point"' not in text
    assert 'class="level-plus"' in text


def test_plot_deterministic(sweep_files, tmp_path):
    csv, pts = sweep_files
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run_cli("plot", "--spectrum", str(csv), "--points", str(pts), "--out", str(a))
    run_cli("plot", "--spectrum", str(csv), "--points", str(pts), "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_plot_reports_malformed_row_with_line_number(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("g,parity,level,energy\n0.1,1,0,1.25\n0.2,7,0,oops\n")
    proc = run_cli("plot", "--spectrum", str(bad),
                   "--out", str(tmp_path / "x.svg"), check=False)
    assert proc.returncode == 2
    assert "line 3" in proc.stderr


def test_plot_reports_bad_points_entry(tmp_path):
    csv = tmp_path / "s.csv"
    csv.write_text("g,parity,level,energy\n0.1,1,0,1.25\n0.2,1,0,1.3\n")
    pts = tmp_path / "p.json"
    pts.write_text('[{"N": 1, "lambda": 0.4, "g": 0.2}]')  # E missing
    proc = run_cli("plot", "--spectrum", str(csv), "--points", str(pts),
                   "--out", str(tmp_path / "x.svg"), check=False)
    assert proc.returncode == 2
    assert "entry 0" in proc.stderr and "'E'" in proc.stderr


def test_plot_missing_file(tmp_path):
    proc = run_cli("plot", "--spectrum", str(tmp_path / "nope.csv"),
                   "--out", str(tmp_path / "x.svg"), check=False)
    assert proc.returncode == 2
