import json
import subprocess
import sys

import numpy as np
import pytest

from polpair.cli import main


def run_cli(args):
    return main([str(a) for a in args])


def read_lines(path):
    return path.read_text().splitlines()


def csv_rows(path):
    rows = []
    header = None
    for line in read_lines(path):
        if line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(dict(zip(header, line.split(","))))
    return rows


def test_dispersion_spot_value_and_header(tmp_path):
    out = tmp_path / "disp.csv"
    code = run_cli(
        ["dispersion", "--pi-units", "--phi", 0.75, "--kx", 1, "--ky", 0, "--grid", 50,
         "--out", out]
    )
    assert code == 0
    lines = read_lines(out)
    assert lines[0].startswith("# polpair dispersion v")
    assert any(line.startswith("# phi=") for line in lines)
    rows = csv_rows(out)
    assert 0 < len(rows) <= 50 * 50
    origin = [
        r for r in rows if abs(float(r["qx"])) < 1e-9 and abs(float(r["qy"])) < 1e-9
    ]
    assert len(origin) == 1
    assert float(origin[0]["eps"]) == pytest.approx(1.4142136, abs=1e-6)


def test_dispersion_grid_too_small_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(["dispersion", "--phi", 2.3562, "--kx", 3.1416, "--ky", 0, "--grid", 1,
                 "--out", tmp_path / "x.csv"])
    assert exc.value.code == 2


def test_gap_map_single_point(tmp_path):
    out = tmp_path / "gap.csv"
    code = run_cli(
        ["gap-map", "--pi-units", "--phi-range", 0.75, 0.75, 1, "--kx", 1, "--ky", 0,
         "--grid", 257, "--out", out]
    )
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 1
    assert float(rows[0]["delta"]) == pytest.approx(np.sqrt(2), abs=2e-3)


def test_gap_map_phi_sweep_has_no_gap_below_half_pi(tmp_path):
    out = tmp_path / "gap.csv"
    code = run_cli(
        ["gap-map", "--pi-units", "--phi-range", 0.10, 0.45, 8, "--kx", 1, "--ky", 0,
         "--grid", 257, "--out", out]
    )
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 8
    assert all(float(r["delta"]) == 0.0 for r in rows)


def test_gap_map_ambiguous_axes_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(["gap-map", "--phi-range", 1, 2, 3, "--kx-range", 0, 1, 2, "--ky", 0,
                 "--out", tmp_path / "x.csv"])
    assert exc.value.code == 2


def test_bound_json_fields(tmp_path):
    out = tmp_path / "bound.json"
    code = run_cli(
        ["bound", "--pi-units", "--phi", 0.75, "--kx", 1, "--ky", 0, "--tol", 1e-4,
         "--out", out]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["eps_b_approx"] == pytest.approx(0.4406868, abs=1e-6)
    assert payload["gap"]["lo"] < payload["eps_b_numeric"] < payload["gap"]["hi"]
    assert payload["residual"] <= 1e-4
    assert payload["config"]["phi"] == pytest.approx(0.75 * np.pi)


def test_bound_no_gap_is_structured_error(tmp_path, capsys):
    out = tmp_path / "bound.json"
    code = run_cli(["bound", "--pi-units", "--phi", 0.4, "--kx", 1, "--ky", 0, "--out", out])
    assert code == 1
    err = json.loads(capsys.readouterr().out)
    assert err["error"] == "NoGap"
    assert not out.exists()


def test_bound_approx_only(tmp_path):
    out = tmp_path / "bound.json"
    code = run_cli(
        ["bound", "--pi-units", "--phi", 0.85, "--kx", 1, "--ky", 0, "--approx", "--out", out]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["eps_b_numeric"] is None
    assert payload["eps_b_approx"] == pytest.approx(-1.2082, abs=1e-3)


def test_bound_approx_outside_domain(tmp_path, capsys):
    code = run_cli(
        ["bound", "--pi-units", "--phi", 0.3, "--kx", 1, "--ky", 0, "--approx",
         "--out", tmp_path / "b.json"]
    )
    assert code == 1
    assert json.loads(capsys.readouterr().out)["error"] == "Domain"


def test_bound_wavefunction_companion(tmp_path):
    out = tmp_path / "bound.json"
    code = run_cli(
        ["bound", "--pi-units", "--phi", 0.75, "--kx", 1, "--ky", 0, "--tol", 1e-4,
         "--wavefunction", 2, "--wf-tol", 1e-4, "--out", out]
    )
    assert code == 0
    wf_path = tmp_path / "bound.wavefunction.csv"
    rows = csv_rows(wf_path)
    assert len(rows) == 25
    center = [r for r in rows if r["dx"] == "0" and r["dy"] == "0"]
    assert abs(float(center[0]["phi_amp"])) <= 1e-4


def test_finite_small_lattice(tmp_path):
    out = tmp_path / "finite.csv"
    code = run_cli(["finite", "--pi-units", "--phi", 0.75, "--n", 2, "--out", out])
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 6
    assert all(float(r["im_eps"]) <= 1e-9 for r in rows)
    assert all(r["label"] in {"superradiant", "subradiant", "bound-candidate", "bright"}
               for r in rows)


def test_finite_too_small_is_structured_error(tmp_path, capsys):
    code = run_cli(["finite", "--phi", 2.3562, "--n", 1, "--out", tmp_path / "x.csv"])
    assert code == 1
    assert json.loads(capsys.readouterr().out)["error"] == "Dimension"


def test_finite_guard_without_force(tmp_path, capsys):
    code = run_cli(["finite", "--phi", 2.3562, "--n", 13, "--out", tmp_path / "x.csv"])
    assert code == 1
    message = json.loads(capsys.readouterr().out)["message"]
    assert "--force" in message


def test_finite_state_dump(tmp_path):
    out = tmp_path / "finite.csv"
    code = run_cli(
        ["finite", "--pi-units", "--phi", 0.75, "--n", 3, "--state-dump", "max-s",
         "--fixed-site", 1, 1, "--out", out]
    )
    assert code == 0
    dumps = list(tmp_path.glob("finite.state*.csv"))
    assert len(dumps) == 1
    rows = csv_rows(dumps[0])
    assert len(rows) == 9
    pinned = [r for r in rows if r["x"] == "1" and r["y"] == "1"]
    assert float(pinned[0]["prob"]) == 0.0


def test_finite_state_dump_requires_fixed_site(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(["finite", "--phi", 2.3562, "--n", 3, "--state-dump", "max-s",
                 "--out", tmp_path / "x.csv"])
    assert exc.value.code == 2


def test_validate_single_check(tmp_path, capsys):
    code = run_cli(["validate", "--only", "quadrature"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["all_passed"] is True
    assert [c["name"] for c in report["checks"]] == ["quadrature"]


def test_validate_unknown_check(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(["validate", "--only", "nonsense"])
    assert exc.value.code == 2


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("pi_units=true\nphi=0.75\nkx=1\nky=0\ngrid=257\n")
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert run_cli(["gap-map", "--config", cfg, "--phi-range", 0.75, 0.75, 1,
                    "--out", out_a]) == 0
    # flag overrides the config grid
    assert run_cli(["gap-map", "--config", cfg, "--phi-range", 0.75, 0.75, 1,
                    "--grid", 129, "--out", out_b]) == 0
    assert "# grid=257" in read_lines(out_a)
    assert "# grid=129" in read_lines(out_b)


def test_rerun_is_byte_identical(tmp_path):
    args = ["gap-map", "--pi-units", "--phi-range", 0.6, 0.9, 3, "--kx", 1, "--ky", 0,
            "--grid", 129]
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(args + ["--threads", 1, "--out", out_a]) == 0
    assert run_cli(args + ["--threads", 2, "--out", out_b]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_module_entry_point_version():
    proc = subprocess.run(
        [sys.executable, "-m", "polpair", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "polpair" in proc.stdout
