"""Structural constants of the two-ring problem and its reference profiles.

The catenary equation ``r = P cosh(h/P)`` is solved in units of ``r``; all
returned quantities are in the caller's units.

Computed values (double precision): ``Xi = 1.5643765885604...``,
``omega = 0.5276973969625...``, ``beta = 1.1996786402578...``,
``1/m = 0.6627434193491...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotAdmissible
from .numerics import Bracket, find_root, scan_roots

# Relative slack on h/r <= omega so that h = omega*r itself is admissible.
_ADMISSIBLE_SLACK = 1e-12


@dataclass(frozen=True)
class ProblemParams:
    """One problem instance: half ring distance ``h``, ring radius ``r``, ratio ``c``.

    ``c`` is the nematic-to-tension ratio kappa/(2 gamma) and has units of
    length squared.
    """

    h: float
    r: float
    c: float = 0.0

    def __post_init__(self):
        if not (self.h > 0 and self.r > 0):
            raise ValueError(f"need h > 0 and r > 0, got h={self.h}, r={self.r}")
        if not self.c >= 0:
            raise ValueError(f"need c >= 0, got c={self.c}")

    @property
    def ratio(self) -> float:
        return self.h / self.r

    @property
    def gamma(self) -> float:
        """Dimensionless ``c / r**2``."""
        return self.c / self.r**2

    @property
    def admissible(self) -> bool:
        return is_admissible(self.h, self.r)

    def with_c(self, c: float) -> "ProblemParams":
        return ProblemParams(self.h, self.r, c)


@dataclass(frozen=True)
class CatenaryParams:
    pi0: float
    pi1: float
    xi: float
    omega: float
    beta: float
    m: float
    h: float
    r: float


@lru_cache(maxsize=None)
def compute_xi_omega() -> tuple[float, float]:
    """Solve ``Xi tanh(1/Xi) + sech(1/Xi)**2 = Xi`` and return ``(Xi, omega)``.

    ``omega = 1 / (Xi cosh(1/Xi))`` is the largest admissible ``h/r``.
    """
    g = lambda x: x * math.tanh(1.0 / x) + 1.0 / math.cosh(1.0 / x) ** 2 - x
    # g underflows to 0 for small x (tanh -> 1, sech -> 0), so stay away from 0.
    res = find_root(g, Bracket.of(g, 0.5, 10.0), tol_x=1e-15, tol_f=1e-16)
    xi = res.x
    return xi, 1.0 / (xi * math.cosh(1.0 / xi))


@lru_cache(maxsize=None)
def compute_beta_m() -> tuple[float, float]:
    """Minimizer ``beta`` of ``cosh(x)/x`` on x > 0 and the minimum ``m``.

    ``beta`` solves ``x sinh x = cosh x``; ``1/m`` is the largest ``h/r`` at
    which a catenary joins the rings at all.
    """
    g = lambda x: x * math.sinh(x) - math.cosh(x)
    beta = find_root(g, Bracket.of(g, 1.0, 1.5), tol_x=1e-15, tol_f=1e-16).x
    return beta, math.cosh(beta) / beta


def is_admissible(h: float, r: float) -> bool:
    _, omega = compute_xi_omega()
    return h / r <= omega * (1.0 + _ADMISSIBLE_SLACK)


def check_admissible(h: float, r: float) -> None:
    if not is_admissible(h, r):
        _, omega = compute_xi_omega()
        raise NotAdmissible(f"h/r = {h / r:.6g} exceeds omega = {omega:.6g}")


def catenary_params(h: float, r: float) -> CatenaryParams:
    """Both catenary parameters ``pi0 >= pi1`` with ``r = P cosh(h/P)``.

    Works on ``q = P/r`` with ``t = h/r``: ``q cosh(t/q) - 1`` diverges at
    both ends of ``(0, inf)`` and has a single minimum at ``q = t/beta``.
    The two roots are bracketed on either side of that minimum; at
    ``t = omega`` exactly they are distinct (omega < 1/m) so no tangency
    handling is needed for admissible input.

    Raises:
        NotAdmissible: ``h/r > omega``.
    """
    if not (h > 0 and r > 0):
        raise ValueError("need h > 0 and r > 0")
    check_admissible(h, r)
    xi, omega = compute_xi_omega()
    beta, m = compute_beta_m()
    t = h / r
    g = lambda q: q * math.cosh(t / q) - 1.0
    q_min = t / beta
    # g(q) >= q so g(1) >= 0; g grows like t/q * e^{t/q}/2 as q -> 0.
    q_lo = q_min
    while g(q_lo) <= 0.0:
        q_lo *= 0.5
    tol = dict(tol_x=1e-15, tol_f=1e-15)
    q1 = find_root(g, Bracket.of(g, q_lo, q_min), **tol).x
    q0 = find_root(g, Bracket.of(g, q_min, 1.0), **tol).x
    return CatenaryParams(pi0=q0 * r, pi1=q1 * r, xi=xi, omega=omega, beta=beta, m=m, h=h, r=r)


def catenary_roots_scan(h: float, r: float, n_samples: int = 4096) -> list[float]:
    """Independent route: scan ``P cosh(h/P) - r`` on a log grid over ``(1e-6 r, r]``."""

    def g(logp):
        p = math.exp(logp)
        return p * math.cosh(h / p) - r if h / p < 700.0 else math.inf

    roots = scan_roots(g, math.log(1e-6 * r), math.log(r), n_samples, tol_x=1e-15, tol_f=1e-13)
    return sorted(math.exp(rt.x) for rt in roots)


def rho0(x, params: CatenaryParams):
    """Stable catenary ``pi0 cosh(x / pi0)``."""
    return params.pi0 * np.cosh(np.asarray(x) / params.pi0)


def rho_inf(x, h: float, r: float):
    """Circular-arc limit profile ``sqrt(h^2 + r^2 - x^2)``."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(h * h + r * r - x * x)


def drho_inf(x, h: float, r: float):
    x = np.asarray(x, dtype=float)
    return -x / np.sqrt(h * h + r * r - x * x)


def E_inf(h: float, r: float) -> float:
    """First integral ``1 / (rho sqrt(1 + rho'^2))`` of the circular arc."""
    return 1.0 / math.hypot(h, r)
