"""Minimal surfaces of revolution with a tangential nematic director.

The profile ``rho`` on ``[-h, h]`` with ``rho(+-h) = r`` minimizes
``F_c(rho) = int (rho + c/rho) sqrt(1 + rho'^2) dx``. Three independent
routes are provided: the closed form (:mod:`closedform`), shooting on the
Euler-Lagrange equation (:mod:`bvp`) and direct minimization of the
discretized energy (:mod:`directmin`).
"""

from .bvp import ShootingResult, shoot
from .closedform import ClosedFormProfile, Regime, critical_c_star, gamma_star, solve_E
from .directmin import MinimizeOptions, minimize
from .energy import ProfileGrid, energy_Fc
from .errors import NematicError
from .geometry import ProblemParams, catenary_params
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClosedFormProfile",
    "MinimizeOptions",
    "NematicError",
    "ProblemParams",
    "ProfileGrid",
    "Regime",
    "ShootingResult",
    "catenary_params",
    "critical_c_star",
    "energy_Fc",
    "gamma_star",
    "minimize",
    "shoot",
    "solve_E",
]
