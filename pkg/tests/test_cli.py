import json
import math
import subprocess
import sys

import numpy as np
import pytest

from nematic_profile import cli
from nematic_profile.closedform import energy_closed, solve_E
from nematic_profile.energy import ProfileGrid, energy_Fc
from nematic_profile.geometry import ProblemParams
from nematic_profile.mesh import read_obj_vertices


def run(tmp_path, *args):
    return cli.main([*args, "--output", str(tmp_path), "--jobs", "1"])


def summary(tmp_path, c):
    return json.loads((tmp_path / f"solve_c{c}.json").read_text())


def test_parse_c_grid():
    assert cli.parse_c_grid("0,1,2.5") == [0.0, 1.0, 2.5]
    assert cli.parse_c_grid("0:1:3") == [0.0, 0.5, 1.0]
    assert cli.parse_c_grid("1:100:3log") == pytest.approx([1.0, 10.0, 100.0])
    assert cli.parse_c_grid("0:1000:7log") == pytest.approx([0, 0.01, 0.1, 1, 10, 100, 1000])
    assert cli.parse_c_grid("1,inf")[-1] == math.inf
    assert cli.parse_c_grid([1, 2]) == [1.0, 2.0]
    for bad in ("1:2", "2:1:3", "0:1:1"):
        with pytest.raises(ValueError):
            cli.parse_c_grid(bad)


def test_fmt_round_trips():
    v = 0.1 + 0.2
    assert float(cli.fmt(v)) == v
    assert cli.fmt(None) == ""


@pytest.mark.parametrize("c,regime", [("0", "catenary"), ("1", "convex"), ("12.25", "flat"), ("30", "concave")])
def test_solve_regimes(tmp_path, c, regime, capsys):
    assert run(tmp_path, "solve", "--c", c, "--grid-n", "201") == 0
    s = summary(tmp_path, c)
    assert s["regime"] == regime
    assert s["sandwich_ok"]
    assert s["residuals"]["boundary"] < 1e-9
    en = s["energies"]
    assert en["shoot"] == pytest.approx(en["closed"], rel=1e-9)
    assert en["directmin"] == pytest.approx(en["closed"], rel=1e-6)
    assert json.loads(capsys.readouterr().out) == s


def test_solve_flat_is_exact(tmp_path):
    run(tmp_path, "solve", "--c", "12.25", "--format", "csv,json")
    s = summary(tmp_path, "12.25")
    assert s["E"] == 7.0
    assert s["energies"]["closed"] == pytest.approx(14.0, rel=1e-14)
    cols = cli.read_csv(tmp_path / "solve_c12.25.csv")
    assert np.all(cols["rho_closed"] == 3.5)


def test_csv_energy_round_trip(tmp_path):
    run(tmp_path, "solve", "--c", "2", "--format", "csv,json")
    cols = cli.read_csv(tmp_path / "solve_c2.csv")
    s = summary(tmp_path, "2")
    e = energy_Fc(ProfileGrid(1.0, cols["rho_closed"]), 2.0).total
    assert e == pytest.approx(s["energies"]["closed"], rel=1e-12)
    ref = energy_closed(solve_E(ProblemParams(1.0, 3.5, 2.0)))
    assert e == pytest.approx(ref, rel=1e-4)


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        run(d, "solve", "--c", "30", "--format", "csv,json,svg,obj", "--grid-n", "51")
    for name in ("solve_c30.csv", "solve_c30.json", "solve_c30.svg", "solve_c30.obj"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_inadmissible_exit_code(tmp_path, capsys):
    assert run(tmp_path, "solve", "--h", "1", "--r", "1") == cli.EXIT_INADMISSIBLE
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "inadmissible"


def test_solver_error_exit_codes(tmp_path, capsys):
    assert run(tmp_path, "solve", "--c", "inf") == cli.EXIT_SOLVER
    assert run(tmp_path, "solve", "--grid-n", "2") == cli.EXIT_SOLVER
    assert run(tmp_path, "solve", "--format", "png") == cli.EXIT_SOLVER
    assert run(tmp_path, "verify", "--only", "nope") == cli.EXIT_SOLVER


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('h = 0.5\nr = 2.0\nc = 3.0\ngrid-n = 21\n')
    args = cli.build_parser().parse_args(["solve", "--config", str(cfg), "--c", "5"])
    rc = cli.make_config(args)
    assert (rc.h, rc.r, rc.c, rc.grid_n) == (0.5, 2.0, 5.0, 21)
    args = cli.build_parser().parse_args(["solve"])
    rc = cli.make_config(args)
    assert (rc.h, rc.r, rc.c) == (1.0, 3.5, 1.0)


def test_sweep(tmp_path):
    assert run(tmp_path, "sweep", "--c-grid", "0,1,30,1000", "--grid-n", "41") == 0
    rows = (tmp_path / "sweep.csv").read_text().splitlines()
    assert len(rows) == 5
    prof = cli.read_csv(tmp_path / "sweep_profiles.csv")
    assert prof["x"].size == 41
    assert (tmp_path / "sweep.svg").exists()
    data = json.loads((tmp_path / "sweep.json").read_text())
    assert data["params"] == {"h": 1.0, "r": 3.5}


def test_regime_command(tmp_path):
    assert run(tmp_path, "regime", "--h", "0.4", "--r", "1", "--c-grid", "0,0.002,0.05") == 0
    data = json.loads((tmp_path / "regime.json").read_text())
    assert data["c_star"] == pytest.approx(0.025722443786280325, rel=1e-10)
    text = (tmp_path / "regime.csv").read_text()
    assert len(text.splitlines()) == 4


def test_mesh_command(tmp_path):
    assert run(tmp_path, "mesh", "--c-grid", "30,inf", "--grid-n", "21") == 0
    v = read_obj_vertices(tmp_path / "surface_cinf.obj")
    R2 = 1.0 + 3.5**2
    assert np.allclose(np.sum(v**2, axis=1), R2, rtol=1e-8)


def test_figures_numerica(tmp_path):
    assert run(tmp_path, "figures", "--preset", "numerica", "--grid-n", "41") == 0
    cols = cli.read_csv(tmp_path / "fig_numerica.csv")
    assert len(cols) == 9
    assert (tmp_path / "fig_numerica.svg").exists()


def test_figures_multiple(tmp_path):
    assert run(tmp_path, "figures", "--preset", "multiple", "--grid-n", "101") == 0
    assert (tmp_path / "fig_multiple.csv").exists()


def test_verify_subset(tmp_path, capsys):
    assert run(tmp_path, "verify", "--only", "constants,flat") == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("[PASS] constants")
    assert out[-1] == "2/2 checks passed"


def test_console_script_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "nematic_profile.cli", "solve", "--c", "1", "--grid-n", "21",
         "--format", "json", "--output", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["regime"] == "convex"
