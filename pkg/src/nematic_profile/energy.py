"""Energy functionals evaluated on piecewise-linear profiles.

Each grid interval contributes ``f(m) * sqrt(1 + s**2) * dx`` where ``s`` is
the exact slope of the interval and ``m`` the midpoint value, so the
arc-length factor is exact per interval and the rule is second order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import NeedsSecondDerivative, NonPositive
from .geometry import ProblemParams
from .numerics import simpson_weights


@dataclass(frozen=True)
class ProfileGrid:
    """Nodal values of a profile on the uniform grid ``x_i = -h + 2 h i / n``."""

    h: float
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size < 3:
            raise ValueError("a profile needs at least 2 intervals")
        if not np.all(v > 0):
            raise NonPositive("profile values must be strictly positive")

    @property
    def n(self) -> int:
        return self.values.size - 1

    @property
    def dx(self) -> float:
        return 2.0 * self.h / self.n

    @property
    def x(self) -> np.ndarray:
        return grid_nodes(self.h, self.n)

    @classmethod
    def from_function(cls, fn: Callable, h: float, n: int) -> "ProfileGrid":
        return cls(h, np.asarray(fn(grid_nodes(h, n)), dtype=float))

    def reflected(self) -> "ProfileGrid":
        return ProfileGrid(self.h, self.values[::-1].copy())


def grid_nodes(h: float, n: int) -> np.ndarray:
    # Symmetric construction so that x_i = -x_{n-i} holds bit for bit.
    i = np.arange(n + 1)
    return (2.0 * i - n) / n * h


@dataclass(frozen=True)
class EnergyBreakdown:
    area_term: float
    nematic_term: float
    boundary_penalty: float = 0.0

    @property
    def total(self) -> float:
        return self.area_term + self.nematic_term

    @property
    def relaxed_total(self) -> float:
        return self.total + self.boundary_penalty


def f_density(s, c: float):
    """Radial density ``s + c/s`` of the reduced functional."""
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr <= 0):
        raise NonPositive(f"density needs s > 0, got {s}")
    out = s_arr + c / s_arr
    return float(out) if out.ndim == 0 else out


def primitive_F(s, c: float):
    """Primitive ``s**2/2 + c log s`` of the density, used by the trace penalty."""
    s = np.asarray(s, dtype=float)
    return 0.5 * s * s + c * np.log(s)


def _pair_sum(values: np.ndarray, dx: float, c: float) -> tuple[float, float]:
    # Summing the mirrored halves pairwise makes the result exactly invariant
    # under x -> -x (floating-point addition is commutative, not associative).
    fwd = kernels.energy_parts(values, dx, c)
    bwd = kernels.energy_parts(np.ascontiguousarray(values[::-1]), dx, c)
    return 0.5 * (fwd[0] + bwd[0]), 0.5 * (fwd[1] + bwd[1])


def energy_Fc(profile: ProfileGrid, c: float) -> EnergyBreakdown:
    """Discrete ``F_c``: area term plus ``c`` times the nematic term."""
    area, nem = _pair_sum(profile.values, profile.dx, c)
    return EnergyBreakdown(area, nem, 0.0)


def energy_Finf(profile: ProfileGrid) -> float:
    """Discrete ``F_inf = int sqrt(1 + rho'^2) / rho``; scale invariant."""
    _, nem = _pair_sum(profile.values, profile.dx, 1.0)
    return nem


def trace_penalty(trace: float, params: ProblemParams) -> float:
    return float(abs(primitive_F(trace, params.c) - primitive_F(params.r, params.c)))


def energy_relaxed(profile: ProfileGrid, params: ProblemParams) -> EnergyBreakdown:
    """``F_c`` plus the penalties ``|F(rho(+-h)) - F(r)|`` on mismatched traces."""
    base = energy_Fc(profile, params.c)
    v = profile.values
    pen = trace_penalty(v[0], params) + trace_penalty(v[-1], params)
    return EnergyBreakdown(base.area_term, base.nematic_term, pen)


def _reference_nodes(profile: ProfileGrid, reference) -> np.ndarray:
    ref = reference(profile.x) if callable(reference) else reference
    ref = np.broadcast_to(np.asarray(ref, dtype=float), profile.values.shape)
    if not np.all(ref > 0):
        raise NonPositive("reference must be positive on the grid")
    return ref


def lattice_max(profile: ProfileGrid, reference) -> ProfileGrid:
    """Nodewise ``max(rho, reference)``; ``reference`` is a callable or an array."""
    return ProfileGrid(profile.h, np.maximum(profile.values, _reference_nodes(profile, reference)))


def lattice_min(profile: ProfileGrid, reference) -> ProfileGrid:
    """Nodewise ``min(rho, reference)``."""
    return ProfileGrid(profile.h, np.minimum(profile.values, _reference_nodes(profile, reference)))


def nodal_derivatives(values: np.ndarray, dx: float) -> tuple[np.ndarray, np.ndarray]:
    """Second-order first and second differences, one-sided at the two ends."""
    v = np.asarray(values, dtype=float)
    if v.size < 5:
        raise NeedsSecondDerivative("need at least 4 intervals for second differences")
    d1 = np.gradient(v, dx, edge_order=2)
    d2 = np.empty_like(v)
    d2[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / dx**2
    d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / dx**2
    d2[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / dx**2
    return d1, d2


def surface_density(rho, drho, d2rho, phi, alpha: float, c: float):
    """Integrand of the full surface energy per unit ``dphi dx`` (tension = 1).

    Builds the revolution surface ``Z(phi, x) = (rho cos phi, rho sin phi, x)``
    explicitly: the area element is ``|Z_phi x Z_x|`` and the director is
    ``cos(alpha) e_phi + sin(alpha) e_x``. With constant ``alpha`` the
    covariant part reduces to ``rho'^2 / (rho^2 (1 + rho'^2))`` and the
    curvature part to ``c1^2 cos^2 alpha + c2^2 sin^2 alpha`` with the
    principal curvatures ``c1 = -1/(rho L)`` and ``c2 = rho''/L^3``.
    """
    rho, drho, d2rho, phi = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (rho, drho, d2rho, phi))
    )
    cos_p, sin_p = np.cos(phi), np.sin(phi)
    z_phi = np.stack([-rho * sin_p, rho * cos_p, np.zeros_like(rho)], axis=-1)
    z_x = np.stack([drho * cos_p, drho * sin_p, np.ones_like(rho)], axis=-1)
    normal = np.cross(z_phi, z_x)
    dA = np.linalg.norm(normal, axis=-1)
    L = np.linalg.norm(z_x, axis=-1)
    nu = normal / dA[..., None]
    # Meusnier: curvature 1/rho of the parallel times the cosine between the
    # surface normal and the parallel's principal normal (towards the axis).
    axis_normal = np.stack([-cos_p, -sin_p, np.zeros_like(rho)], axis=-1)
    c1 = np.einsum("...i,...i->...", nu, axis_normal) / rho
    c2 = d2rho / L**3
    ca, sa = math.cos(alpha), math.sin(alpha)
    Ln2 = (c1 * ca) ** 2 + (c2 * sa) ** 2
    Dn2 = drho**2 / (rho**2 * L**2)
    kappa = 2.0 * c
    return (1.0 + 0.5 * kappa * (Dn2 + Ln2)) * dA


def surface_energy_full(
    profile: ProfileGrid, params: ProblemParams, alpha: float = 0.0, n_phi: int = 16
) -> float:
    """Full surface energy of the revolution surface by 2D composite Simpson.

    Tension is normalized to 1 and the elastic constant to ``2c``, so at
    ``alpha = 0`` the result is ``2 pi F_c`` up to quadrature error.
    Derivatives of the profile come from :func:`nodal_derivatives`; ``n`` and
    ``n_phi`` must be even.
    """
    if n_phi < 4 or n_phi % 2:
        raise ValueError("n_phi must be an even integer >= 4")
    n = profile.n
    if n < 4:
        raise NeedsSecondDerivative("need at least 4 intervals for second differences")
    if n % 2:
        raise ValueError("Simpson in x needs an even number of intervals")
    v = profile.values
    d1, d2 = nodal_derivatives(v, profile.dx)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi + 1)
    dens = surface_density(v[None, :], d1[None, :], d2[None, :], phi[:, None], alpha, params.c)
    w_phi = simpson_weights(n_phi // 2) * (2.0 * np.pi / n_phi) / 3.0
    w_x = simpson_weights(n // 2) * profile.dx / 3.0
    return float(w_phi @ dens @ w_x)
