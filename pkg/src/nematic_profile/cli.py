"""Command-line front end: ``nematic-profile <command> [flags]``.

Commands:
    solve    one instance; profile CSV from all three solvers plus a JSON summary
    sweep    solve a list of c values; summary CSV and a profile family
    regime   count the roots of the convex-branch equation over a c grid
    figures  reproduce the profile family, H(E) and surface figures
    verify   run the acceptance checks; exit 4 on any failure
    mesh     OBJ meshes of the revolution surfaces

Settings come from built-in presets, then ``--config FILE.toml``, then flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import checks, svg
from .bvp import shoot
from .closedform import (
    H_of_E,
    critical_c_star,
    euler_lagrange_residual,
    first_integral,
    solve_E,
)
from .directmin import MinimizeOptions, linear_initial, minimize
from .energy import ProfileGrid, energy_Fc, grid_nodes
from .errors import NematicError, NotAdmissible
from .geometry import ProblemParams, compute_beta_m, compute_xi_omega, drho_inf, rho0, rho_inf
from .mesh import N_PHI, revolution_mesh, write_obj
from .regime import count_roots, default_jobs, map_ordered, sweep_c

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_INADMISSIBLE, EXIT_SOLVER, EXIT_VERIFY = 0, 2, 3, 4

PRESETS = {
    "h": 1.0,
    "r": 3.5,
    "c": 1.0,
    "c_grid": "0,1,2,12.25,30,100,1000",
    "grid_n": 401,
    "output": "out",
    "format": "csv,json,svg",
    "jobs": None,
    "tol_x": 1e-14,
    "tol_f": 1e-13,
    "seed": 20240601,
    "n_steps": 2000,
}
NUMERICA_C = (0.0, 1.0, 2.0, 12.25, 30.0, 100.0, 1000.0)
MULTIPLE_C = (0.0, 0.0005, 0.002, 0.005, None, 0.05)  # None is c*
SURFACE_C = (0.0, 5.0, 12.25, 50.0, math.inf)
FORMATS = {"csv", "svg", "obj", "json"}


@dataclass
class RunConfig:
    command: str
    h: float
    r: float
    c: float
    c_grid: list[float]
    grid_n: int
    output: Path
    formats: set[str]
    jobs: int
    tol_x: float
    tol_f: float
    seed: int
    n_steps: int
    only: list[str] | None = None
    preset: str = "all"

    def __post_init__(self):
        if self.grid_n < 3:
            raise ValueError("--grid-n must be at least 3")
        bad = self.formats - FORMATS
        if bad:
            raise ValueError(f"unknown formats {sorted(bad)}")


def parse_c_grid(text) -> list[float]:
    """Expand a c-grid specification.

    ``"0,1,2.5"`` is an explicit list. ``"a:b:N"`` gives ``N`` equally spaced
    values. ``"a:b:Nlog"`` gives ``N`` geometrically spaced values; when
    ``a = 0`` the list is ``0`` followed by ``N - 1`` values a decade apart
    ending at ``b`` (so ``0:1000:7log`` is 0, 0.01, 0.1, 1, 10, 100, 1000).
    ``inf`` is accepted as a value.
    """
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    text = str(text).strip()
    if ":" not in text:
        return [float(v) for v in text.split(",") if v.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad c-grid {text!r}")
    a, b = float(parts[0]), float(parts[1])
    n_txt = parts[2].strip()
    log = n_txt.endswith("log")
    n = int(n_txt[:-3] if log else n_txt)
    if n < 2 or not b > a:
        raise ValueError(f"bad c-grid {text!r}")
    if not log:
        return [float(v) for v in np.linspace(a, b, n)]
    if a > 0:
        return [float(v) for v in np.geomspace(a, b, n)]
    return [0.0] + [float(v) for v in b * 10.0 ** np.arange(-(n - 2), 1)]


def fmt(v) -> str:
    """17 significant digits; round-trips every double."""
    if v is None:
        return ""
    return f"{float(v):.17g}"


def write_csv(path: Path, header: list[str], columns: list) -> None:
    cols = [np.asarray(c, dtype=float) for c in columns]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([fmt(v) for v in row])


def read_csv(path: Path) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {name: np.array([float(r[k]) for r in body]) for k, name in enumerate(header)}


def write_json(path: Path, data) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def _clean(v):
    """Plain floats for JSON; non-finite values become null."""
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


# ---------------------------------------------------------------------------
# solve


def _shoot_on_grid(params: ProblemParams, n: int, n_steps_min: int, tol_x: float, tol_f: float):
    """Shooting solution sampled at the ``n``-interval output grid (the RK4 grid refines it)."""
    k = max(1, math.ceil(n_steps_min / n))
    res = shoot(params, n_steps=n * k, tol_x=tol_x, tol_f=tol_f)
    stride = 2 * k
    return res, res.profile.values[::stride], res.drho[::stride]


def solve_instance(cfg: RunConfig, c: float) -> dict:
    """All three solutions of one instance on the output grid, plus diagnostics."""
    params = ProblemParams(cfg.h, cfg.r, c)
    n = cfg.grid_n - 1
    x = grid_nodes(cfg.h, n)
    cf = solve_E(params)
    cat = cf.catenary
    closed = np.asarray(cf(x), dtype=float)
    d1 = np.asarray(cf.derivative(x), dtype=float)
    d2 = np.asarray(cf.second_derivative(x), dtype=float)
    sh, sh_vals, _ = _shoot_on_grid(params, n, cfg.n_steps, cfg.tol_x, cfg.tol_f)
    dm = minimize(linear_initial(params, n), params, MinimizeOptions())

    fi = first_integral(closed, d1, c)
    el = euler_lagrange_residual(closed[1:-1], d1[1:-1], d2[1:-1], c)
    inner = slice(1, -1)
    if cf.regime.value in ("convex",):
        sandwich = bool(np.all(rho0(x[inner], cat) < closed[inner]) and np.all(closed[inner] < cfg.r))
    elif cf.regime.value == "concave":
        sandwich = bool(np.all(cfg.r < closed[inner]) and np.all(closed[inner] < rho_inf(x[inner], cfg.h, cfg.r)))
    else:
        sandwich = True
    energy = lambda v: energy_Fc(ProfileGrid(cfg.h, v), c).total
    summary = {
        "params": {"h": cfg.h, "r": cfg.r, "c": c},
        "regime": cf.regime.value,
        "E": _clean(cf.E),
        "pi0": cat.pi0,
        "pi1": cat.pi1,
        "omega": cat.omega,
        "energies": {"closed": energy(closed), "shoot": energy(sh_vals), "directmin": dm.energy},
        "residuals": {
            "boundary": float(max(abs(closed[0] - cfg.r), abs(closed[-1] - cfg.r))),
            "first_integral": float(np.ptp(fi) / np.mean(fi)),
            "euler_lagrange": float(np.max(np.abs(el))) if el.size else 0.0,
        },
        "sandwich_ok": sandwich,
    }
    columns = {
        "x": x,
        "rho_closed": closed,
        "rho_shoot": sh_vals,
        "rho_directmin": dm.profile.values,
        "rho0": rho0(x, cat),
        "rho_inf": rho_inf(x, cfg.h, cfg.r),
    }
    return {"summary": summary, "columns": columns, "drho": d1}


def _tag(c: float) -> str:
    return "inf" if math.isinf(c) else f"{c:g}"


def cmd_solve(cfg: RunConfig) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    out = solve_instance(cfg, cfg.c)
    stem = f"solve_c{_tag(cfg.c)}"
    cols = out["columns"]
    if "csv" in cfg.formats:
        write_csv(cfg.output / f"{stem}.csv", list(cols), list(cols.values()))
    if "json" in cfg.formats:
        write_json(cfg.output / f"{stem}.json", out["summary"])
    if "svg" in cfg.formats:
        plot = svg.Plot(f"Profile at h={cfg.h:g}, r={cfg.r:g}, c={cfg.c:g}", "x", "rho")
        plot.add(cols["x"], cols["rho_closed"], "closed form")
        plot.add(cols["x"], cols["rho_shoot"], "shooting", dashed=True)
        plot.add(cols["x"], cols["rho0"], "catenary", color="#999999")
        plot.add(cols["x"], cols["rho_inf"], "circular arc", color="#000000", dashed=True)
        svg.write(plot, cfg.output / f"{stem}.svg")
    if "obj" in cfg.formats:
        write_obj(revolution_mesh(cols["x"], cols["rho_closed"], out["drho"]), cfg.output / f"{stem}.obj", stem)
    print(json.dumps(out["summary"], sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def _profile_values(args):
    h, r, c, n = args
    x = grid_nodes(h, n)
    if math.isinf(c):
        return rho_inf(x, h, r)
    return np.asarray(solve_E(ProblemParams(h, r, c))(x), dtype=float)


def cmd_sweep(cfg: RunConfig) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    cs = sorted(cfg.c_grid)
    sw = sweep_c(cfg.h, cfg.r, [c for c in cs if math.isfinite(c)], jobs=cfg.jobs)
    if "csv" in cfg.formats:
        with open(cfg.output / "sweep.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["c", "regime", "E", "rho_center", "sup_dist_to_rho_inf"])
            for e in sw.entries:
                w.writerow([fmt(e.c), e.regime, fmt(e.E), fmt(e.rho_center), fmt(e.sup_dist_to_rho_inf)])
    n = cfg.grid_n - 1
    x = grid_nodes(cfg.h, n)
    finite = [e.c for e in sw.entries if e.error is None]
    profiles = map_ordered(_profile_values, [(cfg.h, cfg.r, c, n) for c in finite], cfg.jobs)
    if "csv" in cfg.formats:
        write_csv(cfg.output / "sweep_profiles.csv", ["x"] + [f"c={_tag(c)}" for c in finite], [x] + profiles)
    if "json" in cfg.formats:
        write_json(
            cfg.output / "sweep.json",
            {
                "params": {"h": cfg.h, "r": cfg.r},
                "entries": [
                    {
                        "c": e.c,
                        "regime": e.regime,
                        "E": _clean(e.E),
                        "rho_center": _clean(e.rho_center),
                        "sup_dist_to_rho_inf": _clean(e.sup_dist_to_rho_inf),
                        "error": e.error,
                    }
                    for e in sw.entries
                ],
                "rho_center_increasing": bool(np.all(np.diff(sw.rho_center) > 0)),
            },
        )
    if "svg" in cfg.formats:
        plot = svg.Plot(f"Profiles at h={cfg.h:g}, r={cfg.r:g}", "x", "rho")
        for c, v in zip(finite, profiles):
            plot.add(x, v, f"c = {_tag(c)}")
        plot.add(x, rho_inf(x, cfg.h, cfg.r), "circular arc", color="#000000", dashed=True)
        svg.write(plot, cfg.output / "sweep.svg")
    for e in sw.entries:
        status = e.error or "ok"
        print(f"c={fmt(e.c)} regime={e.regime} E={fmt(e.E)} rho(0)={fmt(e.rho_center)} {status}")
    return EXIT_OK if sw.ok else EXIT_SOLVER


# ---------------------------------------------------------------------------
# regime


def _count(args):
    h, r, c = args
    return count_roots(ProblemParams(h, r, c))


def cmd_regime(cfg: RunConfig) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    cs = [c for c in cfg.c_grid if c < cfg.r**2]
    reports = map_ordered(_count, [(cfg.h, cfg.r, c) for c in cs], cfg.jobs)
    width = max((rep.count for rep in reports), default=0)
    if "csv" in cfg.formats:
        with open(cfg.output / "regime.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["c", "count", "near_tangency", "above_pi0_index"] + [f"E{k + 1}" for k in range(width)])
            for rep in reports:
                idx = next((k for k, rt in enumerate(rep.roots) if rt.above_pi0), -1)
                Es = [fmt(rt.E) for rt in rep.roots] + [""] * (width - rep.count)
                w.writerow([fmt(rep.c), rep.count, int(rep.near_tangency), idx + 1] + Es)
    if "json" in cfg.formats:
        write_json(
            cfg.output / "regime.json",
            {
                "params": {"h": cfg.h, "r": cfg.r},
                "c_star": critical_c_star(cfg.r),
                "reports": [
                    {
                        "c": rep.c,
                        "count": rep.count,
                        "near_tangency": rep.near_tangency,
                        "roots": [{"E": rt.E, "above_pi0": rt.above_pi0} for rt in rep.roots],
                    }
                    for rep in reports
                ],
            },
        )
    for rep in reports:
        flag = " (near tangency)" if rep.near_tangency else ""
        print(f"c={fmt(rep.c)} roots={rep.count}{flag} " + " ".join(
            f"{rt.E:.12g}{'*' if rt.above_pi0 else ''}" for rt in rep.roots))
    return EXIT_OK


# ---------------------------------------------------------------------------
# figures and meshes


def figure_numerica(cfg: RunConfig) -> None:
    h, r = 1.0, 3.5
    n = cfg.grid_n - 1
    x = grid_nodes(h, n)
    profiles = map_ordered(_profile_values, [(h, r, c, n) for c in NUMERICA_C], cfg.jobs)
    arc = rho_inf(x, h, r)
    header = ["x"] + [f"c={_tag(c)}" for c in NUMERICA_C] + ["rho_inf"]
    write_csv(cfg.output / "fig_numerica.csv", header, [x] + profiles + [arc])
    if "svg" in cfg.formats:
        plot = svg.Plot(f"Minimizers for h={h:g}, r={r:g}", "x", "rho")
        for c, v in zip(NUMERICA_C, profiles):
            plot.add(x, v, f"c = {c:g}")
        plot.add(x, arc, "x^2 + y^2 = 13.25", color="#000000", dashed=True)
        svg.write(plot, cfg.output / "fig_numerica.svg")


def figure_multiple(cfg: RunConfig) -> None:
    r = 1.0
    cs = [critical_c_star(r) if c is None else c for c in MULTIPLE_C]
    _, omega = compute_xi_omega()
    _, m = compute_beta_m()
    levels = [(0.1, "h = 0.1"), (0.4, "h = 0.4"), (omega, "h = omega"), (1.0 / m, "h = 1/m")]
    n_pts = cfg.grid_n
    columns, header = [], []
    curves = []
    for c in cs:
        lo, hi = 2.0 * math.sqrt(c), r + c / r
        E = np.linspace(lo, hi, n_pts + 2)[1:-1]
        # h does not enter H(E); any admissible placeholder works.
        p = ProblemParams(0.1, r, c)
        Hv = np.array([H_of_E(e, p) for e in E])
        columns += [E, Hv]
        header += [f"E(c={c:.6g})", f"H(c={c:.6g})"]
        curves.append((c, E, Hv))
    write_csv(cfg.output / "fig_multiple.csv", header, columns)
    if "svg" in cfg.formats:
        plot = svg.Plot("h = H(E) at r = 1", "E", "H(E)", hlines=levels, ylim=(0.0, 0.8))
        for c, E, Hv in curves:
            plot.add(E, Hv, f"c = {c:.4g}")
        svg.write(plot, cfg.output / "fig_multiple.svg")


def surface_profile(h: float, r: float, c: float, n: int):
    x = grid_nodes(h, n)
    if math.isinf(c):
        return x, rho_inf(x, h, r), drho_inf(x, h, r)
    cf = solve_E(ProblemParams(h, r, c))
    return x, np.asarray(cf(x)), np.asarray(cf.derivative(x))


def write_meshes(cfg: RunConfig, c_values) -> list[Path]:
    paths = []
    for c in c_values:
        x, v, d = surface_profile(cfg.h, cfg.r, c, cfg.grid_n - 1)
        path = cfg.output / f"surface_c{_tag(c)}.obj"
        write_obj(revolution_mesh(x, v, d, N_PHI), path, f"c_{_tag(c)}")
        paths.append(path)
    return paths


def cmd_figures(cfg: RunConfig) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    which = {"all": ("numerica", "multiple", "3d")}.get(cfg.preset, (cfg.preset,))
    for name in which:
        if name == "numerica":
            figure_numerica(cfg)
        elif name == "multiple":
            figure_multiple(cfg)
        elif name == "3d":
            sub = RunConfig(**{**cfg.__dict__, "h": 1.0, "r": 3.5})
            write_meshes(sub, SURFACE_C)
        else:
            raise ValueError(f"unknown preset {name!r}")
        print(f"figure {name}: written to {cfg.output}")
    return EXIT_OK


def cmd_mesh(cfg: RunConfig) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    for path in write_meshes(cfg, cfg.c_grid):
        print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(cfg: RunConfig, c_grid_given: bool) -> int:
    only = cfg.only
    overrides = {}
    if c_grid_given:
        grid = sorted(c for c in cfg.c_grid if math.isfinite(c))
        overrides["monotone-c"] = lambda: checks.check_monotone_in_c(grid)
    overrides["lattice"] = lambda: checks.check_lattice(seed=cfg.seed)
    keys = only or list(checks.CHECKS)
    unknown = [k for k in keys if k not in checks.CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {list(checks.CHECKS)}")
    results = [checks.run_check(key, overrides.get(key)) for key in keys]
    for res in results:
        print(res.line())
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed")
    return EXIT_OK if n_pass == len(results) else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--h", type=float, help="half distance between the rings")
    common.add_argument("--r", type=float, help="ring radius")
    common.add_argument("--c", type=str, help="nematic-to-tension ratio; 'inf' for the limit profile")
    common.add_argument(
        "--c-grid",
        help="c values: 'a,b,c', 'a:b:N' (linear) or 'a:b:Nlog' (geometric; a=0 gives 0 then decades up to b)",
    )
    common.add_argument("--grid-n", type=int, help="number of grid nodes (default 401)")
    common.add_argument("--output", help="output directory (default ./out)")
    common.add_argument("--format", help="comma-separated subset of csv,svg,obj,json")
    common.add_argument("--jobs", type=int, help="worker processes for sweeps (default: logical cores)")
    common.add_argument("--config", help="TOML file with any of the flags above as keys")
    common.add_argument("--tol-x", type=float, help="relative root tolerance for shooting")
    common.add_argument("--tol-f", type=float, help="relative residual tolerance for shooting")
    common.add_argument("--seed", type=int, help="seed for the random-profile checks")

    parser = argparse.ArgumentParser(prog="nematic-profile", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="solve one instance")
    sub.add_parser("sweep", parents=[common], help="solve a list of c values")
    sub.add_parser("regime", parents=[common], help="root counts of the convex-branch equation")
    fig = sub.add_parser("figures", parents=[common], help="figure data and plots")
    fig.add_argument("--preset", choices=["all", "numerica", "multiple", "3d"], default="all")
    ver = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    ver.add_argument("--only", help=f"comma-separated subset of: {', '.join(checks.CHECKS)}")
    sub.add_parser("mesh", parents=[common], help="OBJ meshes for the c grid")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    return {k.replace("-", "_"): v for k, v in raw.items()}


def make_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(PRESETS)
    merged.update(_load_config(args.config))
    for key in PRESETS:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    fmts = merged["format"]
    fmts = set(fmts.split(",")) if isinstance(fmts, str) else set(fmts)
    c_grid_default = merged["c_grid"]
    if args.command == "mesh" and args.c_grid is None and "c_grid" not in _load_config(args.config):
        c_grid_default = list(SURFACE_C)
    return RunConfig(
        command=args.command,
        h=float(merged["h"]),
        r=float(merged["r"]),
        c=float(merged["c"]),
        c_grid=parse_c_grid(c_grid_default),
        grid_n=int(merged["grid_n"]),
        output=Path(merged["output"]),
        formats={f.strip() for f in fmts if f.strip()},
        jobs=int(merged["jobs"]) if merged["jobs"] else default_jobs(),
        tol_x=float(merged["tol_x"]),
        tol_f=float(merged["tol_f"]),
        seed=int(merged["seed"]),
        n_steps=int(merged["n_steps"]),
        only=[k.strip() for k in args.only.split(",")] if getattr(args, "only", None) else None,
        preset=getattr(args, "preset", "all"),
    )


def _error(kind: str, exc: Exception) -> None:
    print(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        if args.command == "solve" and math.isinf(cfg.c):
            raise ValueError("solve needs a finite c; use 'mesh' or 'figures' for the limit profile")
        if args.command == "verify":
            return cmd_verify(cfg, args.c_grid is not None)
        handler = {
            "solve": cmd_solve,
            "sweep": cmd_sweep,
            "regime": cmd_regime,
            "figures": cmd_figures,
            "mesh": cmd_mesh,
        }[args.command]
        return handler(cfg)
    except NotAdmissible as exc:
        _error("inadmissible", exc)
        return EXIT_INADMISSIBLE
    except (NematicError, ValueError, OSError) as exc:
        _error("solver", exc)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
