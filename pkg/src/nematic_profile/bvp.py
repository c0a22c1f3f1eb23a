"""Shooting solver for the Euler-Lagrange boundary value problem.

Independent of the closed form: it integrates

    rho'' = (rho^2 - c)(1 + rho'^2) / (rho (rho^2 + c))

from the symmetry axis with ``rho(0) = rho_center``, ``rho'(0) = 0`` and
adjusts ``rho_center`` until ``rho(h) = r``. The profile is even, so only
``[0, h]`` is integrated and the result is mirrored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .energy import ProfileGrid
from .errors import BlowUp, NonPositive
from .geometry import ProblemParams, catenary_params, check_admissible
from .numerics import Bracket, find_root

FLAT_TOL = 1e-12  # same flat window as the closed form

N_STEPS = 2000


@dataclass(frozen=True)
class ShootingResult:
    rho0_center: float
    profile: ProfileGrid
    drho: np.ndarray
    boundary_residual: float
    E_estimate: float
    iterations: int = 0


def el_rhs(rho: float, drho: float, c: float) -> float:
    """Right-hand side of the Euler-Lagrange equation, ``rho''`` as a function of ``(rho, rho')``."""
    if not rho > 0:
        raise NonPositive(f"rho must be positive, got {rho}")
    return (rho * rho - c) * (1.0 + drho * drho) / (rho * (rho * rho + c))


def _mirror(half: np.ndarray, odd: bool = False) -> np.ndarray:
    left = -half[:0:-1] if odd else half[:0:-1]
    return np.concatenate([left, half])


def integrate_symmetric(
    rho_center: float, params: ProblemParams, n_steps: int = N_STEPS
) -> tuple[ProfileGrid, np.ndarray]:
    """RK4 on ``[0, h]`` from ``(rho_center, 0)``, mirrored to ``[-h, h]``.

    Returns the profile on ``2 n_steps`` intervals and the nodal slopes.

    Raises:
        BlowUp: ``rho`` reached zero or became non-finite.
    """
    if not rho_center > 0:
        raise NonPositive("rho_center must be positive")
    ys, vs, ok = kernels.rk4_trajectory(rho_center, 0.0, params.c, params.h, n_steps)
    if not ok:
        raise BlowUp(f"trajectory from rho(0)={rho_center} left rho > 0")
    return ProfileGrid(params.h, _mirror(np.asarray(ys))), _mirror(np.asarray(vs), odd=True)


def endpoint(rho_center: float, params: ProblemParams, n_steps: int = N_STEPS) -> float:
    """``rho(h)`` for the trajectory starting at ``rho_center``; NaN when it blows up."""
    y, _, ok = kernels.rk4_endpoint(rho_center, 0.0, params.c, params.h, n_steps)
    return y if ok else math.nan


def default_bracket(params: ProblemParams, n_steps: int = N_STEPS) -> Bracket:
    """Bracket on ``rho(0)`` from the sandwich ``rho_0 < rho_c < r`` or ``r < rho_c < rho_inf``.

    Convex (``c < r^2``): ``rho(0)`` lies in ``(max(sqrt c, pi0), r)``; the
    lower end is pulled slightly below ``pi0`` so that ``c = 0`` (where the
    root is ``pi0`` itself) is strictly inside. Concave: ``rho(0)`` lies in
    ``(r, min(sqrt c, sqrt(h^2 + r^2)))``.
    """
    h, r, c = params.h, params.r, params.c
    g = lambda x: endpoint(x, params, n_steps) - r
    if c < r * r:
        cat = catenary_params(h, r)
        lo = max(math.sqrt(c) * (1.0 + 1e-9), cat.pi0 - 0.1 * (cat.pi0 - cat.pi1))
        lo = min(lo, 0.5 * (math.sqrt(c) + r))
        hi = r
    else:
        lo = r
        hi = min(math.sqrt(c), math.hypot(h, r))
    return Bracket.of(g, lo, hi)


def shoot(
    params: ProblemParams,
    bracket_center: Bracket | None = None,
    n_steps: int = N_STEPS,
    tol_x: float = 1e-14,
    tol_f: float = 1e-13,
) -> ShootingResult:
    """Find ``rho(0)`` such that the integrated profile satisfies ``rho(h) = r``.

    ``rho(h)`` is increasing in ``rho(0)`` on the default bracket, so Brent's
    method converges to the unique even critical point there.

    Raises:
        NotAdmissible: ``h/r > omega``.
        NoSignChange: the bracket does not enclose a solution.
        BlowUp: a trajectory reached ``rho <= 0``.
    """
    check_admissible(params.h, params.r)
    r, c = params.r, params.c
    if abs(c - r * r) <= FLAT_TOL * r * r:
        center, it = r, 0
    else:
        br = bracket_center if bracket_center is not None else default_bracket(params, n_steps)
        g = lambda x: endpoint(x, params, n_steps) - r
        res = find_root(g, br, tol_x=tol_x * r, tol_f=tol_f * r)
        center, it = res.x, res.iterations
    profile, drho = integrate_symmetric(center, params, n_steps)
    return ShootingResult(
        rho0_center=center,
        profile=profile,
        drho=drho,
        boundary_residual=abs(profile.values[-1] - r),
        E_estimate=center + c / center,
        iterations=it,
    )
