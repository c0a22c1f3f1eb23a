"""Root multiplicity of the convex-branch equation and sweeps in ``c``.

On the convex branch ``h = H(E)`` can have one, two or three solutions;
exactly one lies above ``pi0`` and only that one is a minimizer. This module
counts them, locates the ``c`` where the count drops from three to one, and
runs the ``c -> inf`` sweep towards the circular arc.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .closedform import EDGE, Branch, boundary_residual, energy_closed, solve_E
from .errors import NematicError
from .geometry import ProblemParams, catenary_params, check_admissible, rho_inf
from .numerics import N_SAMPLES, scan_roots

# Nodes of the fixed comparison grid against rho_inf.
SUP_GRID = 401
# A residual extremum closer to zero than this (relative to r^2) without a
# sign change is reported as a possible double root.
TANGENCY_TOL = 1e-9


@dataclass(frozen=True)
class Root:
    E: float
    above_pi0: bool


@dataclass(frozen=True)
class RootReport:
    c: float
    roots: tuple[Root, ...]
    near_tangency: bool = False

    @property
    def count(self) -> int:
        return len(self.roots)

    @property
    def n_above_pi0(self) -> int:
        return sum(rt.above_pi0 for rt in self.roots)


def _safe_residual(params: ProblemParams):
    def g(E):
        try:
            return boundary_residual(E, params, Branch.CONVEX)
        except (OverflowError, ValueError):
            return math.nan

    return g


def count_roots(params: ProblemParams, n_samples: int = N_SAMPLES, admissible_only: bool = True) -> RootReport:
    """All roots of ``h = H(E)`` on ``(2 sqrt c, r + c/r]``, each flagged against ``pi0``.

    Roots are sign changes of the residual ``rho_E(h)^2 - r^2`` on a uniform
    sample. A local extremum of the sampled residual that comes within
    ``TANGENCY_TOL r^2`` of zero without crossing sets ``near_tangency``:
    two roots may have merged or be about to appear.

    ``admissible_only=False`` skips the ``h/r <= omega`` check (the curve
    ``H`` itself is defined for any ``h``); ``pi0`` flags are then all false
    when no catenary exists.

    Raises:
        NotAdmissible: ``h/r > omega`` and ``admissible_only``.
        ValueError: ``c >= r^2`` (the concave branch always has one root).
    """
    if admissible_only:
        check_admissible(params.h, params.r)
    c, r = params.c, params.r
    if c >= r * r:
        raise ValueError("root counting applies to the convex branch c < r^2")
    try:
        pi0 = catenary_params(params.h, params.r).pi0
    except NematicError:
        pi0 = math.inf
    lo = 2.0 * math.sqrt(c) + EDGE * r
    hi = r + c / r
    g = _safe_residual(params)
    found = scan_roots(g, lo, hi, n_samples, tol_x=1e-15 * r, tol_f=1e-300)
    # The root closest to pi0 from above is pi0 itself when c = 0.
    roots = tuple(Root(float(rt.x), bool(rt.x > pi0 * (1.0 - 1e-12))) for rt in found)

    xs = np.linspace(lo, hi, n_samples)
    ys = np.array([g(x) for x in xs])
    near = False
    for i in range(1, n_samples - 1):
        y = ys[i - 1 : i + 2]
        if np.all(np.isfinite(y)) and np.sign(y[1] - y[0]) * np.sign(y[2] - y[1]) < 0:
            if np.sign(y[0]) == np.sign(y[2]) and abs(y[1]) < TANGENCY_TOL * r * r:
                near = True
    return RootReport(c, roots, near)


def transition_c(h: float, r: float = 1.0, c_lo: float = 1e-6, c_hi: float | None = None,
                 tol: float = 1e-10, n_samples: int = N_SAMPLES) -> float:
    """Bisect the ``c`` where ``count_roots`` drops from three roots to one.

    Requires three roots at ``c_lo`` and one at ``c_hi`` (default ``r^2/2``).
    Any ``h`` is accepted: the horizontal inflection that defines ``c*`` sits
    at ``h/r ~ 0.733``, beyond the admissible range.
    """
    c_hi = 0.5 * r * r if c_hi is None else c_hi
    count = lambda c: count_roots(ProblemParams(h, r, c), n_samples, admissible_only=False).count
    if count(c_lo) != 3 or count(c_hi) != 1:
        raise NematicError(f"no 3 -> 1 transition between c={c_lo} and c={c_hi} at h={h}")
    while c_hi - c_lo > tol * r * r:
        mid = 0.5 * (c_lo + c_hi)
        if count(mid) >= 3:
            c_lo = mid
        else:
            c_hi = mid
    return 0.5 * (c_lo + c_hi)


@dataclass(frozen=True)
class SweepEntry:
    c: float
    E: float
    rho_center: float
    sup_dist_to_rho_inf: float
    regime: str
    error: str | None = None


@dataclass(frozen=True)
class RegimeSweep:
    h: float
    r: float
    entries: tuple[SweepEntry, ...]

    @property
    def c_values(self) -> np.ndarray:
        return np.array([e.c for e in self.entries])

    @property
    def E_of_c(self) -> np.ndarray:
        return np.array([e.E for e in self.entries])

    @property
    def rho_center(self) -> np.ndarray:
        return np.array([e.rho_center for e in self.entries])

    @property
    def sup_dist_to_rho_inf(self) -> np.ndarray:
        return np.array([e.sup_dist_to_rho_inf for e in self.entries])

    @property
    def ok(self) -> bool:
        return all(e.error is None for e in self.entries)


def _sweep_one(args) -> SweepEntry:
    h, r, c = args
    try:
        cf = solve_E(ProblemParams(h, r, c))
        x = np.linspace(-h, h, SUP_GRID)
        dist = float(np.max(np.abs(cf(x) - rho_inf(x, h, r))))
        return SweepEntry(c, cf.E, cf.center, dist, cf.regime.value)
    except NematicError as exc:
        return SweepEntry(c, math.nan, math.nan, math.nan, "error", f"{type(exc).__name__}: {exc}")


def map_ordered(fn, items, jobs: int | None = None):
    """``[fn(x) for x in items]``, fanned out to ``jobs`` worker processes.

    ``jobs=None`` or ``1`` runs in-process; results keep input order.
    """
    items = list(items)
    if not jobs or jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def default_jobs() -> int:
    return os.cpu_count() or 1


def sweep_c(h: float, r: float, c_values, jobs: int | None = None) -> RegimeSweep:
    """Solve every ``c`` in ``c_values`` and record ``E``, ``rho_c(0)`` and ``sup |rho_c - rho_inf|``.

    A failing entry keeps NaNs and an error string instead of aborting the sweep.
    """
    check_admissible(h, r)
    cs = [float(c) for c in c_values]
    if any(b < a for a, b in zip(cs, cs[1:])):
        raise ValueError("c_values must be sorted ascending")
    entries = map_ordered(_sweep_one, [(h, r, c) for c in cs], jobs)
    return RegimeSweep(h, r, tuple(entries))


@dataclass(frozen=True)
class GammaLimitReport:
    c: np.ndarray
    sup_dist: np.ndarray
    energy_gap: np.ndarray
    F_inf: float
    sandwich_ok: list = field(default_factory=list)


def F_inf_exact(h: float, r: float) -> float:
    """``F_inf(rho_inf) = int R / (R^2 - x^2) dx = log((R + h)/(R - h))`` with ``R^2 = h^2 + r^2``."""
    R = math.hypot(h, r)
    return math.log((R + h) / (R - h))


def gamma_limit_check(h: float, r: float, c_geometric, n_panels: int = 2000) -> GammaLimitReport:
    """``sup |rho_c - rho_inf|`` and ``F_c(rho_c)/c - F_inf(rho_inf)`` along increasing ``c > r^2``.

    Energies are integrated from the closed form (Simpson, ``n_panels``
    panels) and ``F_inf(rho_inf)`` is exact, so the gap is free of
    discretization bias from a shared grid.
    """
    cs = np.asarray(c_geometric, dtype=float)
    if np.any(np.diff(cs) <= 0) or np.any(cs <= r * r):
        raise ValueError("c values must be increasing and above r^2")
    x = np.linspace(-h, h, SUP_GRID)
    ref = rho_inf(x, h, r)
    f_inf = F_inf_exact(h, r)
    dist, gap, sandwich = [], [], []
    for c in cs:
        cf = solve_E(ProblemParams(h, r, c))
        vals = cf(x)
        dist.append(float(np.max(np.abs(vals - ref))))
        gap.append(energy_closed(cf, n_panels) / c - f_inf)
        inner = slice(1, -1)
        sandwich.append(bool(np.all(vals[inner] > r) and np.all(vals[inner] < ref[inner])))
    return GammaLimitReport(cs, np.array(dist), np.array(gap), f_inf, sandwich)
