"""Closed-form minimizers and the transcendental equations for their parameter E.

Every critical point of the reduced energy has the first integral
``(rho + c/rho) / sqrt(1 + rho'^2) = E`` and

    rho(x)^2 = (E^2 - 2c)/2 +- (E D / 2) cosh(2x/E),   D = sqrt(E^2 - 4c),

with ``+`` below the flat case (c < r^2, convex) and ``-`` above it
(c > r^2, concave). The boundary condition ``rho(h) = r`` fixes ``E``.

In the dimensionless variables ``e = E/r`` and ``gamma = c/r^2`` the
boundary condition reads ``h/r = Psi_gamma(e)`` with

    Psi_gamma(e) = (e/2) arccosh(s (2 gamma + 2 - e^2) / (e sqrt(e^2 - 4 gamma)))

(``s = +1`` convex, ``s = -1`` concave) on ``e in (2 sqrt(gamma), gamma + 1]``.
For the concave branch this is obtained by imposing ``rho(+-h) = r`` on the
concave profile; the variant with ``-4c`` in the numerator does not satisfy
the boundary condition and is not used.

Evaluating ``rho`` directly from the cosh form cancels catastrophically for
large ``c`` (``E ~ c/r``), so the profile and the root-finding residual use

    (E^2 - 2c)/2 - E D/2 = 2 c^2 / (E^2 - 2c + E D),
    cosh(2x/E) = 1 + 2 sinh(x/E)^2,

which keeps every term of order ``r^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .energy import ProfileGrid, grid_nodes
from .errors import DomainError, NegativeRadicand, RootNotBracketed
from .geometry import CatenaryParams, ProblemParams, catenary_params, check_admissible
from .numerics import Bracket, fd_derivative, find_root, integrate, scan_roots

# |c - r^2| below this (relative to r^2) is routed to the flat cylinder.
FLAT_TOL = 1e-12
# Left end of the E-domain is 2 sqrt(c) + EDGE * r.
EDGE = 1e-9


class Regime(str, enum.Enum):
    CATENARY = "catenary"
    CONVEX = "convex"
    FLAT = "flat"
    CONCAVE = "concave"


class Branch(str, enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"

    @property
    def sign(self) -> float:
        return 1.0 if self is Branch.CONVEX else -1.0


def _branch(branch) -> Branch:
    return Branch(branch)


# ---------------------------------------------------------------------------
# Psi_gamma and its derivatives


def psi_argument(gamma: float, e: float, branch=Branch.CONVEX) -> float:
    """Argument of the arccosh in ``Psi_gamma``; at least 1 on the admissible domain."""
    b = _branch(branch)
    disc = e * e - 4.0 * gamma
    if not (e > 0 and disc > 0):
        raise DomainError(f"need e > 2 sqrt(gamma): gamma={gamma}, e={e}")
    return b.sign * (2.0 * gamma + 2.0 - e * e) / (e * math.sqrt(disc))


def psi(gamma: float, e: float, branch=Branch.CONVEX) -> float:
    """``Psi_gamma(e)``: the ratio ``h/r`` reached by the profile with ``E = e r``.

    Raises:
        DomainError: ``e <= 2 sqrt(gamma)`` or the arccosh argument is below 1.
    """
    a = psi_argument(gamma, e, branch)
    if a < 1.0:
        # Round-off right at the end point e = gamma + 1.
        if a > 1.0 - 1e-14:
            return 0.0
        raise DomainError(f"arccosh argument {a} < 1 at gamma={gamma}, e={e}")
    return 0.5 * e * math.acosh(a)


def dpsi_de(gamma: float, e: float, branch=Branch.CONVEX) -> float:
    """Closed-form ``dPsi/de``: rational part plus half the arccosh."""
    b = _branch(branch)
    q = (gamma + 1.0) ** 2 - e * e
    if q <= 0:
        raise DomainError("derivative undefined at or beyond e = gamma + 1")
    rational = b.sign * (2.0 * gamma * (gamma + 1.0) - e * e) / ((e * e - 4.0 * gamma) * math.sqrt(q))
    return rational + 0.5 * math.acosh(max(psi_argument(gamma, e, b), 1.0))


def d2psi_de2(gamma: float, e: float, branch=Branch.CONVEX) -> float:
    """Closed-form ``d^2 Psi / de^2``; the concave branch is the negated convex expression."""
    b = _branch(branch)
    g = gamma
    q = (g + 1.0) ** 2 - e * e
    if q <= 0 or e * e <= 4.0 * g:
        raise DomainError("second derivative undefined here")
    num = 8.0 * g**2 * (g + 1.0) ** 3 + (1.0 - 3.0 * (g - 2.0) * g) * e**4 + 2.0 * (g - 5.0) * g * (g + 1.0) ** 2 * e**2
    return -b.sign * num / (e * (e * e - 4.0 * g) ** 2 * q**1.5)


def dpsi_dgamma(gamma: float, e: float, branch=Branch.CONVEX) -> float:
    """``dPsi/dgamma``; positive on both branches."""
    b = _branch(branch)
    q = (gamma + 1.0) ** 2 - e * e
    return b.sign * (1.0 - gamma) * e / ((e * e - 4.0 * gamma) * math.sqrt(q))


def psi_domain(gamma: float) -> tuple[float, float]:
    """Open-closed interval ``(2 sqrt(gamma), gamma + 1]`` shared by both branches."""
    return 2.0 * math.sqrt(gamma), gamma + 1.0


def inflection_e(gamma: float, branch=Branch.CONVEX) -> float:
    """Unique zero of ``Psi_gamma''`` in the domain, from the closed radical.

    The convex branch (0 < gamma < 1) takes the minus root, the concave
    branch (gamma > 1) the plus root.
    """
    b = _branch(branch)
    if b is Branch.CONVEX and not 0 < gamma < 1:
        raise DomainError("convex inflection needs 0 < gamma < 1")
    if b is Branch.CONCAVE and not gamma > 1:
        raise DomainError("concave inflection needs gamma > 1")
    g = gamma
    rad = math.sqrt(g**8 + 18 * g**7 + 15 * g**6 - 36 * g**5 - 33 * g**4 + 18 * g**3 + 17 * g**2)
    pm = -1.0 if b is Branch.CONVEX else 1.0
    val = (g**4 - 3 * g**3 - 9 * g**2 + pm * rad - 5 * g) / (3 * g**2 - 6 * g - 1)
    if val <= 0:
        raise DomainError(f"no real inflection point for gamma={gamma}")
    return math.sqrt(val)


def _slope_at_inflection(gamma: float) -> float:
    try:
        return dpsi_de(gamma, inflection_e(gamma, Branch.CONVEX), Branch.CONVEX)
    except DomainError:
        # e_F meets the end point gamma + 1 in round-off as gamma -> 1.
        return math.nan


@lru_cache(maxsize=None)
def gamma_star(n_samples: int = 4096) -> float:
    """The gamma in (0, 1) where the convex ``Psi_gamma`` has a horizontal inflection.

    Found by scanning ``gamma -> Psi'_gamma(e_gamma^F)`` over (0, 1); below
    this value ``Psi_gamma`` is not monotone and ``h/r = Psi_gamma(e)`` can
    have three solutions.
    """
    roots = scan_roots(_slope_at_inflection, 1e-6, 1.0 - 1e-6, n_samples, tol_x=1e-15, tol_f=1e-14)
    if len(roots) != 1:
        raise RootNotBracketed(f"expected one gamma*, found {len(roots)}")
    return roots[0].x


# ---------------------------------------------------------------------------
# H(E) at fixed (h, r, c)


def H_of_E(E: float, params: ProblemParams) -> float:
    """``H(E) = (E/2) arccosh((2r^2 - E^2 + 2c) / (E sqrt(E^2 - 4c)))`` on the convex branch."""
    r = params.r
    return r * psi(params.c / r**2, E / r, Branch.CONVEX)


def dH_dE(E: float, params: ProblemParams) -> float:
    r = params.r
    return dpsi_de(params.c / r**2, E / r, Branch.CONVEX)


def E_star(c: float, r: float = 1.0) -> float:
    """Inflection abscissa ``E*(c)`` of ``H`` (zero of ``H''``)."""
    return r * inflection_e(c / r**2, Branch.CONVEX)


@dataclass(frozen=True)
class CriticalPoint:
    c_star: float
    E_star: float
    H_star: float
    residual: float
    third_derivative: float


def critical_point(r_unit: float = 1.0) -> CriticalPoint:
    """Locate ``c*`` by solving ``H'(E*(c)) = 0`` and report ``H'''`` there.

    Works in ``r = 1`` and rescales ``c`` by ``r_unit**2``.
    """
    p = lambda c: ProblemParams(1.0, 1.0, c)
    slope = lambda c: dH_dE(E_star(c), p(c))
    res = find_root(slope, Bracket.of(slope, 0.005, 0.1), tol_x=1e-15, tol_f=1e-15)
    c = res.x
    e = E_star(c)
    # Third derivative by central differences of the closed-form H''.
    d2 = lambda E: d2psi_de2(c, E, Branch.CONVEX)
    h3 = fd_derivative(d2, e, 1e-5)
    return CriticalPoint(
        c_star=c * r_unit**2,
        E_star=e * r_unit,
        H_star=H_of_E(e, p(c)) * r_unit,
        residual=slope(c),
        third_derivative=h3,
    )


def critical_c_star(r_unit: float = 1.0) -> float:
    """Threshold ``c*`` (times ``r_unit**2``) below which ``h = H(E)`` can have three roots."""
    cp = critical_point(r_unit)
    if cp.third_derivative == 0.0:
        raise RootNotBracketed("H''' vanishes at E*(c*): not a simple inflection")
    return cp.c_star


# ---------------------------------------------------------------------------
# Closed-form profile


def _discriminant_root(E: float, c: float) -> float:
    """``sqrt(E^2 - 4c)`` as a product of factors; clamped at 0 for ``E`` rounded onto ``2 sqrt c``."""
    s = 2.0 * math.sqrt(c)
    return math.sqrt(max((E - s) * (E + s), 0.0))


def boundary_residual(E: float, params: ProblemParams, branch=Branch.CONVEX) -> float:
    """``rho_E(h)^2 - r^2`` in the cancellation-free form; zero iff ``E`` solves the boundary equation."""
    c, h, r = params.c, params.h, params.r
    D = _discriminant_root(E, c)
    ED = E * D
    sh2 = math.sinh(h / E) ** 2
    if _branch(branch) is Branch.CONVEX:
        return 0.5 * (E * E - 2.0 * c + ED) + ED * sh2 - r * r
    return 2.0 * c * c / (E * E - 2.0 * c + ED) - ED * sh2 - r * r


@dataclass(frozen=True)
class ClosedFormProfile:
    """A solved instance: regime, first-integral constant ``E`` and parameters.

    For the catenary ``E`` equals ``pi0``; for the flat case it is ``2r``.
    """

    regime: Regime
    E: float
    params: ProblemParams
    catenary: CatenaryParams

    def __call__(self, x):
        return eval_profile(self, x)

    @property
    def center(self) -> float:
        return float(eval_profile(self, 0.0))

    def derivative(self, x):
        return eval_derivative(self, x)

    def second_derivative(self, x):
        return eval_second_derivative(self, x)

    def grid(self, n: int) -> ProfileGrid:
        h = self.params.h
        return ProfileGrid(h, eval_profile(self, grid_nodes(h, n)))


def _window(c: float, r: float) -> tuple[float, float] | None:
    """Open-closed ``E`` interval ``(2 sqrt c, r + c/r]`` pulled in from its left edge.

    Its width ``(r - sqrt c)^2 / r`` vanishes quadratically as ``c -> r^2``;
    ``None`` means no double lies strictly inside, so ``E = r + c/r`` to round-off.
    """
    s = math.sqrt(c)
    gap = (r - s) ** 2 / r
    lo = 2.0 * s + min(EDGE * r, 0.5 * gap)
    hi = r + c / r
    return (lo, hi) if lo < hi else None


def _convex_root(params: ProblemParams, cat: CatenaryParams, n_samples: int) -> float:
    c, r = params.c, params.r
    win = _window(c, r)
    if win is None:
        return r + c / r
    g = lambda E: boundary_residual(E, params, Branch.CONVEX)
    roots = scan_roots(g, *win, n_samples, tol_x=1e-15 * r, tol_f=1e-300)
    above = [rt.x for rt in roots if rt.x > cat.pi0]
    if len(above) != 1:
        raise RootNotBracketed(
            f"expected one convex root above pi0={cat.pi0}, found {[rt.x for rt in roots]}"
        )
    return above[0]


def _concave_root(params: ProblemParams) -> float:
    c, r = params.c, params.r
    win = _window(c, r)
    if win is None:
        return r + c / r
    g = lambda E: boundary_residual(E, params, Branch.CONCAVE)
    return find_root(g, Bracket.of(g, *win), tol_x=1e-15 * r, tol_f=1e-300).x


def solve_E(params: ProblemParams, n_samples: int = 4096) -> ClosedFormProfile:
    """Pick the regime from the sign of ``c - r^2`` and solve for ``E``.

    Convex: the unique root above ``pi0`` among up to three. Concave: the
    unique root on ``(2 sqrt(c), r + c/r]``, where the residual changes sign
    once. Flat: ``E = 2r``. ``c = 0``: ``E = pi0``.

    Raises:
        NotAdmissible: ``h/r > omega``.
        RootNotBracketed: no admissible root (parameters outside the theory).
    """
    check_admissible(params.h, params.r)
    cat = catenary_params(params.h, params.r)
    c, r = params.c, params.r
    if c == 0.0:
        return ClosedFormProfile(Regime.CATENARY, cat.pi0, params, cat)
    if abs(c - r * r) <= FLAT_TOL * r * r:
        return ClosedFormProfile(Regime.FLAT, 2.0 * r, params, cat)
    if c < r * r:
        return ClosedFormProfile(Regime.CONVEX, _convex_root(params, cat, n_samples), params, cat)
    return ClosedFormProfile(Regime.CONCAVE, _concave_root(params), params, cat)


def _parts(cf: ClosedFormProfile):
    E, c = cf.E, cf.params.c
    return E, c, _discriminant_root(E, c)


def eval_profile(cf: ClosedFormProfile, x):
    """``rho_c(x)`` for scalar or array ``x``.

    Raises:
        NegativeRadicand: ``rho^2 <= 0`` somewhere (inconsistent ``E`` and ``c``).
    """
    xa = np.asarray(x, dtype=float)
    if cf.regime is Regime.FLAT:
        out = np.full(xa.shape, cf.params.r)
    elif cf.regime is Regime.CATENARY:
        out = cf.E * np.cosh(xa / cf.E)
    else:
        E, c, D = _parts(cf)
        sh2 = np.sinh(xa / E) ** 2
        if cf.regime is Regime.CONVEX:
            sq = 0.5 * (E * E - 2.0 * c + E * D) + E * D * sh2
        else:
            sq = 2.0 * c * c / (E * E - 2.0 * c + E * D) - E * D * sh2
        if np.any(sq <= 0):
            raise NegativeRadicand(f"rho^2 <= 0 for E={E}, c={c}")
        out = np.sqrt(sq)
    return float(out) if out.ndim == 0 else out


def eval_derivative(cf: ClosedFormProfile, x):
    xa = np.asarray(x, dtype=float)
    if cf.regime is Regime.FLAT:
        out = np.zeros(xa.shape)
    elif cf.regime is Regime.CATENARY:
        out = np.sinh(xa / cf.E)
    else:
        E, c, D = _parts(cf)
        s = 1.0 if cf.regime is Regime.CONVEX else -1.0
        out = s * D * np.sinh(2.0 * xa / E) / (2.0 * np.asarray(eval_profile(cf, xa)))
    return float(out) if out.ndim == 0 else out


def eval_second_derivative(cf: ClosedFormProfile, x):
    xa = np.asarray(x, dtype=float)
    if cf.regime is Regime.FLAT:
        out = np.zeros(xa.shape)
    elif cf.regime is Regime.CATENARY:
        out = np.cosh(xa / cf.E) / cf.E
    else:
        E, c, D = _parts(cf)
        s = 1.0 if cf.regime is Regime.CONVEX else -1.0
        rho = np.asarray(eval_profile(cf, xa))
        d1 = np.asarray(eval_derivative(cf, xa))
        out = (s * (D / E) * np.cosh(2.0 * xa / E) - d1 * d1) / rho
    return float(out) if out.ndim == 0 else out


def first_integral(rho, drho, c: float):
    """``(rho + c/rho) / sqrt(1 + rho'^2)``; constant along every critical point."""
    rho = np.asarray(rho, dtype=float)
    drho = np.asarray(drho, dtype=float)
    return (rho + c / rho) / np.sqrt(1.0 + drho * drho)


def euler_lagrange_residual(rho, drho, d2rho, c: float):
    """``rho'' - (rho^2 - c)(1 + rho'^2) / (rho (rho^2 + c))``."""
    rho = np.asarray(rho, dtype=float)
    drho = np.asarray(drho, dtype=float)
    return np.asarray(d2rho) - (rho * rho - c) * (1.0 + drho * drho) / (rho * (rho * rho + c))


def energy_closed(cf: ClosedFormProfile, n_panels: int = 2000) -> float:
    """``F_c(rho_c)`` by composite Simpson on the closed-form profile and its derivative."""
    c, h = cf.params.c, cf.params.h

    def integrand(x):
        rho = eval_profile(cf, x)
        d1 = eval_derivative(cf, x)
        return (rho + c / rho) * math.sqrt(1.0 + d1 * d1)

    return integrate(integrand, -h, h, n_panels)
