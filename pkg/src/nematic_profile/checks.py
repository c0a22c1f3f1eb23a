"""Acceptance checks shared by the test suite and ``nematic-profile verify``.

Each check returns a :class:`CheckResult`; none of them raises on a failed
comparison, so a report can always be printed in full.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bvp import shoot
from .closedform import (
    Branch,
    critical_c_star,
    dH_dE,
    dpsi_de,
    energy_closed,
    first_integral,
    psi,
    solve_E,
)
from .directmin import discrete_gradient, linear_initial, minimize
from .energy import ProfileGrid, energy_Fc, grid_nodes, lattice_max, lattice_min, surface_energy_full
from .geometry import ProblemParams, catenary_params, compute_beta_m, compute_xi_omega, rho0, rho_inf
from .numerics import Bracket, find_root
from .regime import count_roots, gamma_limit_check

H, R = 1.0, 3.5
REFERENCE_C = (0.0, 1.0, 2.0, 12.25, 30.0, 100.0, 1000.0)
CROSS_C = (0.0, 1.0, 2.0, 30.0, 100.0, 1000.0)
N_DIRECT = 400
N_SHOOT = 2000


@dataclass(frozen=True)
class CheckResult:
    key: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.key:<20s} {self.detail} ({self.seconds:.2f} s)"


def e_bar() -> float:
    """Critical point of ``H_0`` at ``r = 1``: the largest ``h`` reached by a catenary."""
    p = ProblemParams(1.0, 1.0, 0.0)
    f = lambda E: dH_dE(E, p)
    return find_root(f, Bracket.of(f, 0.1, 0.99), tol_x=1e-15, tol_f=1e-15).x


def check_constants() -> tuple[bool, str]:
    _, omega = compute_xi_omega()
    _, m = compute_beta_m()
    eb = e_bar()
    ok = 0.5275 <= omega <= 0.5285 and 0.6622 <= 1 / m <= 0.6632 and abs(eb - 0.552434) < 1e-4
    return ok, f"omega={omega:.10f} 1/m={1 / m:.10f} E_bar={eb:.10f}"


def check_c_star() -> tuple[bool, str]:
    cs = critical_c_star()
    return abs(cs - 0.0257224) <= 1e-4, f"c*={cs:.10f}"


def check_flat() -> tuple[bool, str]:
    p = ProblemParams(H, R, R * R)
    cf = solve_E(p)
    closed = cf.grid(N_DIRECT).values
    sh = shoot(p, n_steps=N_SHOOT).profile.values
    dm = minimize(linear_initial(p, N_DIRECT), p).profile.values
    dev = max(np.max(np.abs(v - R)) for v in (closed, sh, dm))
    energy = energy_Fc(ProfileGrid(H, closed), p.c).total
    target = 4.0 * H * math.sqrt(p.c)
    ok = dev < 1e-8 and abs(energy - target) <= 1e-12 * target
    return ok, f"sup|rho-r|={dev:.2e} F_c={energy!r} (4h sqrt c = {target!r})"


def check_cross_method(c_values=CROSS_C) -> tuple[bool, str]:
    worst_all = worst_cs = 0.0
    for c in c_values:
        p = ProblemParams(H, R, c)
        cf = solve_E(p)
        sh = shoot(p, n_steps=N_SHOOT).profile
        dm = minimize(linear_initial(p, N_DIRECT), p).profile
        cs = float(np.max(np.abs(sh.values - cf(sh.x))))
        # Shooting nodes include every direct-minimization node.
        stride = (sh.values.size - 1) // N_DIRECT
        sh_sub = sh.values[::stride]
        cd = float(np.max(np.abs(dm.values - cf(dm.x))))
        sd = float(np.max(np.abs(dm.values - sh_sub)))
        worst_cs = max(worst_cs, cs)
        worst_all = max(worst_all, cs, cd, sd)
    ok = worst_all <= 1e-3 and worst_cs <= 1e-5
    return ok, f"max pairwise sup={worst_all:.2e} closed-vs-shoot={worst_cs:.2e}"


def check_first_integral(c_values=REFERENCE_C) -> tuple[bool, str]:
    worst_cf = worst_sh = 0.0
    x = np.linspace(-H, H, 101)
    for c in c_values:
        p = ProblemParams(H, R, c)
        cf = solve_E(p)
        fi = first_integral(cf(x), cf.derivative(x), c)
        worst_cf = max(worst_cf, float(np.ptp(fi) / np.mean(fi)))
        sh = shoot(p, n_steps=N_SHOOT)
        fs = first_integral(sh.profile.values, sh.drho, c)
        worst_sh = max(worst_sh, float(np.ptp(fs) / np.mean(fs)))
    ok = worst_cf < 1e-6 and worst_sh < 1e-4
    return ok, f"rel. spread closed={worst_cf:.2e} shoot={worst_sh:.2e}"


def check_sandwich() -> tuple[bool, str]:
    cat = catenary_params(H, R)
    x = grid_nodes(H, N_DIRECT)
    inner = slice(1, -1)
    bad = []
    for c in (1.0, 2.0, 30.0, 100.0, 1000.0):
        v = solve_E(ProblemParams(H, R, c))(x)
        d2 = v[2:] - 2.0 * v[1:-1] + v[:-2]
        if c < R * R:
            ok = np.all(rho0(x[inner], cat) < v[inner]) and np.all(v[inner] < R) and np.all(d2 > 0)
        else:
            ok = np.all(R < v[inner]) and np.all(v[inner] < rho_inf(x[inner], H, R)) and np.all(d2 < 0)
        if not ok:
            bad.append(c)
    return not bad, "all sandwich and shape checks hold" if not bad else f"failed at c={bad}"


def check_monotone_in_c(c_values=REFERENCE_C) -> tuple[bool, str]:
    x = grid_nodes(H, N_DIRECT)[1:-1]
    profiles = [solve_E(ProblemParams(H, R, c))(x) for c in c_values]
    gaps = [float(np.min(b - a)) for a, b in zip(profiles, profiles[1:])]
    return min(gaps) > 0, f"{x.size} nodes, min adjacent gap={min(gaps):.3e}"


def check_root_multiplicity() -> tuple[bool, str]:
    counts, above = [], []
    for c in (0.0, 0.002, 0.05):
        rep = count_roots(ProblemParams(0.4, 1.0, c))
        counts.append(rep.count)
        above.append(rep.n_above_pi0)
    ok = counts == [2, 3, 1] and above == [1, 1, 1]
    return ok, f"counts={counts} above_pi0={above}"


def check_gamma_limit() -> tuple[bool, str]:
    rep = gamma_limit_check(H, R, [50.0, 500.0, 5000.0, 50000.0])
    d, g = rep.sup_dist, rep.energy_gap
    ok = (
        bool(np.all(np.diff(d) < 0))
        and d[-1] < d[0] / 10
        and bool(np.all(np.diff(g) < 0))
        and bool(np.all(g > 0))
        and all(rep.sandwich_ok)
    )
    sci = lambda a: "[" + " ".join(f"{v:.3e}" for v in a) + "]"
    return ok, f"sup dist={sci(d)} gap={sci(g)}"


def random_profile(rng: np.random.Generator, n: int, h: float = H, r: float = R) -> ProfileGrid:
    """Positive profile with traces ``r``: a few random sine modes on top of ``r``."""
    x = grid_nodes(h, n)
    k = int(rng.integers(1, 8))
    amp = rng.normal(0.0, 1.0, k) * rng.uniform(0.0, 0.45 * r) / np.arange(1, k + 1)
    modes = np.sin(np.outer(np.arange(1, k + 1), np.pi * (x + h) / (2.0 * h)))
    v = np.maximum(r + amp @ modes, 0.05 * r)
    v[0] = v[-1] = r
    return ProfileGrid(h, v)


def check_lattice(n_profiles: int = 1000, n: int = 200, seed: int = 20240601) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    cat = catenary_params(H, R)
    slack = 10.0 / n**2
    worst = -math.inf
    regimes = (1.0, R * R, 30.0)  # convex, flat, concave
    for c in regimes:
        for _ in range(n_profiles):
            prof = random_profile(rng, n)
            e = energy_Fc(prof, c).total
            up = energy_Fc(lattice_max(prof, lambda x: rho0(x, cat)), c).total
            down = energy_Fc(lattice_min(prof, lambda x: rho_inf(x, H, R)), c).total
            worst = max(worst, up - e, down - e)
    return worst <= slack, f"{len(regimes) * n_profiles} profiles, max energy increase={worst:.2e} (slack {slack:.1e})"


def check_surface_energy() -> tuple[bool, str]:
    p = ProblemParams(H, R, 30.0)
    cf = solve_E(p)
    target = 2.0 * math.pi * energy_closed(cf)
    grid = cf.grid(N_DIRECT)
    vals = [surface_energy_full(grid, p, 0.0, k) for k in (4, 8, 16, 32)]
    rel = abs(vals[-1] / target - 1.0)
    # At alpha = 0 the integrand does not depend on phi, so refinement in phi
    # must leave the value unchanged (error already below any power of 1/n_phi).
    spread = max(vals) - min(vals)
    ok = rel < 1e-4 and spread <= 1e-12 * target
    return ok, f"rel. error vs 2 pi F_c={rel:.2e}, spread over n_phi={spread:.1e}"


def check_derivatives(seed: int = 7) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    p = ProblemParams(H, R, 30.0)
    prof = random_profile(rng, 200)
    g = discrete_gradient(prof, p)
    energy = lambda v: energy_Fc(ProfileGrid(H, v), p.c).total
    worst = 0.0
    for i in rng.choice(np.arange(1, prof.n), size=50, replace=False):
        # Step well below dx: the energy varies on the scale of the grid spacing.
        fd = fd5(energy, prof.values, int(i), 1e-2 * prof.dx)
        worst = max(worst, abs(fd - g[i]) / max(abs(g[i]), 1e-8))
    slope = psi_fd_slope()
    ok = worst < 1e-6 and 1.8 <= slope <= 2.2
    return ok, f"gradient rel. err={worst:.2e}, Psi' FD error slope={slope:.2f}"


def fd5(fn, values: np.ndarray, i: int, step: float) -> float:
    """Five-point central difference of ``fn`` in coordinate ``i`` (error ``O(step^4)``)."""
    def at(k):
        v = values.copy()
        v[i] += k * step
        return fn(v)

    return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * step)


def psi_fd_slope(gamma: float = 0.3, e: float = 1.2) -> float:
    """Observed order of the central-difference error of ``Psi`` against the closed-form ``Psi'``."""
    exact = dpsi_de(gamma, e, Branch.CONVEX)
    steps = np.array([1e-2, 5e-3, 2.5e-3, 1.25e-3])
    errs = []
    for s in steps:
        fd = (psi(gamma, e + s) - psi(gamma, e - s)) / (2 * s)
        errs.append(abs(fd - exact))
    return float(np.polyfit(np.log(steps), np.log(errs), 1)[0])


CHECKS: dict[str, tuple[str, Callable[[], tuple[bool, str]]]] = {
    "constants": ("threshold constants omega, 1/m, E_bar", check_constants),
    "c-star": ("critical parameter c*", check_c_star),
    "flat": ("flat case c = r^2", check_flat),
    "cross-method": ("closed form, shooting, direct minimization agree", check_cross_method),
    "first-integral": ("first integral conserved", check_first_integral),
    "sandwich": ("sandwich bounds and convexity/concavity", check_sandwich),
    "monotone-c": ("profiles increase with c", check_monotone_in_c),
    "roots": ("root multiplicity at r=1, h=0.4", check_root_multiplicity),
    "gamma-limit": ("convergence to the circular arc", check_gamma_limit),
    "lattice": ("max with rho_0 and min with rho_inf lower the energy", check_lattice),
    "surface-energy": ("full surface energy equals 2 pi F_c", check_surface_energy),
    "derivatives": ("discrete gradient and Psi' against finite differences", check_derivatives),
}


def run_check(key: str, fn: Callable[[], tuple[bool, str]] | None = None) -> CheckResult:
    """Run one check; ``fn`` replaces the registered function (same key in the report)."""
    fn = fn or CHECKS[key][1]
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported like one
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(key, bool(passed), detail, time.perf_counter() - t0)


def run_all(only: list[str] | None = None) -> list[CheckResult]:
    keys = only or list(CHECKS)
    unknown = [k for k in keys if k not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    return [run_check(k) for k in keys]
