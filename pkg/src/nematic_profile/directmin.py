"""Direct minimization of the discretized energy over nodal values.

A proof-independent check that the closed form is the minimizer: starting
from an arbitrary positive profile, descend the discrete energy of
:mod:`nematic_profile.energy` until the gradient vanishes.

The iteration is a projected gradient method with Armijo backtracking. Plain
gradient steps stall on fine grids (the energy Hessian behaves like a
discrete Laplacian with condition number ``O(n^2)``), so the gradient is
preconditioned by the exact tridiagonal Hessian of the discrete energy
(each interval couples only its two end nodes). Where that matrix is not
positive definite the convex part of each interval's contribution
``f(m) sqrt(1 + s^2) dx`` is used instead:

    f(m) / (L^3 dx)     on the slope s  (stiffness),
    f''(m) L dx / 4     on the midpoint m  (mass).

Nodes are projected onto ``[lower_barrier, inf)`` after every step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solveh_banded

from . import kernels
from .energy import ProfileGrid, energy_Fc, energy_relaxed
from .errors import Stalled
from .geometry import ProblemParams, catenary_params


class Mode(str, enum.Enum):
    FIXED = "fixed"
    RELAXED = "relaxed"


@dataclass(frozen=True)
class MinimizeOptions:
    """Stopping rule and constraint settings.

    Attributes:
        max_iters: iteration cap.
        grad_tol: stop when ``max |g_i| / dx`` (the discrete first variation)
            falls below ``grad_tol * (r + c/r)``.
        lower_barrier: positivity floor for nodal values; ``None`` picks
            ``1e-6 * min(sqrt c, pi0)``.
        mode: ``FIXED`` keeps the end nodes at ``r``; ``RELAXED`` frees them and
            adds the trace penalties.
    """

    max_iters: int = 2000
    grad_tol: float = 1e-8
    lower_barrier: float | None = None
    mode: Mode = Mode.FIXED

    def __post_init__(self):
        if self.lower_barrier is not None and not self.lower_barrier > 0:
            raise ValueError("lower_barrier must be positive")
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        object.__setattr__(self, "mode", Mode(self.mode))


@dataclass(frozen=True)
class MinimizeResult:
    profile: ProfileGrid
    energy: float
    initial_energy: float
    iterations: int
    converged: bool
    grad_norm: float
    status: str
    barrier_active: bool
    history: list = field(default_factory=list, repr=False)


def _objective(values: np.ndarray, h: float, params: ProblemParams, mode: Mode) -> float:
    prof = ProfileGrid(h, values)
    if mode is Mode.FIXED:
        return energy_Fc(prof, params.c).total
    return energy_relaxed(prof, params).relaxed_total


def _penalty_slope(t: float, params: ProblemParams) -> tuple[float, float]:
    """Sign of ``F(t) - F(r)`` and ``F'(t) = t + c/t``."""
    F = lambda s: 0.5 * s * s + params.c * math.log(s)
    return float(np.sign(F(t) - F(params.r))), t + params.c / t


def discrete_gradient(profile: ProfileGrid, params: ProblemParams, mode=Mode.FIXED) -> np.ndarray:
    """Exact gradient of the discrete energy with respect to every nodal value.

    In ``FIXED`` mode the two end entries are zero (the traces are not
    variables). In ``RELAXED`` mode the end entries include the derivative of
    ``|F(t) - F(r)|``; at ``t = r`` that term is not differentiable and the
    entry is the element of minimal norm in the subdifferential.

    Raises:
        NonPositive: a nodal value is not positive (raised by ``ProfileGrid``).
    """
    mode = Mode(mode)
    v = profile.values
    g = np.asarray(kernels.energy_gradient(v, profile.dx, params.c), dtype=float)
    if mode is Mode.FIXED:
        g[0] = g[-1] = 0.0
        return g
    for i in (0, -1):
        sgn, slope = _penalty_slope(v[i], params)
        if sgn != 0.0:
            g[i] += sgn * slope
        else:
            g[i] = math.copysign(max(abs(g[i]) - slope, 0.0), g[i])
    return g


def _banded(values: np.ndarray, dx: float, c: float, exact: bool) -> np.ndarray:
    """Upper banded form of the tridiagonal Hessian (``exact``) or the convex metric."""
    s = np.diff(values) / dx
    m = 0.5 * (values[1:] + values[:-1])
    L = np.sqrt(1.0 + s * s)
    k = (m + c / m) / (L**3 * dx)
    q = 0.5 * c / m**3 * L * dx
    cross = (1.0 - c / m**2) * s / L if exact else np.zeros_like(s)
    diag = np.zeros(values.size)
    diag[:-1] += k + q - cross
    diag[1:] += k + q + cross
    off = -k + q
    # A small floor keeps the metric definite when c = 0 and slopes are large.
    diag += 1e-12 * np.max(np.abs(diag))
    ab = np.zeros((2, values.size))
    ab[0, 1:] = off
    ab[1] = diag
    return ab


def _directions(values: np.ndarray, grad: np.ndarray, dx: float, c: float, free: np.ndarray):
    """Candidate descent directions: Newton, convex metric, steepest descent.

    Newton is skipped when the tridiagonal Hessian is not definite.
    """
    idx = np.flatnonzero(free)
    # Free nodes form one contiguous block (interior or all nodes).
    lo, hi = idx[0], idx[-1] + 1
    for exact in (True, False):
        sub = _banded(values, dx, c, exact)[:, lo:hi].copy()
        sub[0, 0] = 0.0
        try:
            step = solveh_banded(sub, grad[lo:hi])
        except np.linalg.LinAlgError:
            continue
        d = np.zeros_like(values)
        d[lo:hi] = -step
        if grad @ d < 0:
            yield d
    d = np.zeros_like(values)
    d[lo:hi] = -grad[lo:hi] / dx
    yield d


def _snap_traces(old: np.ndarray, new: np.ndarray, r: float) -> None:
    # A trace that steps across r lands on the kink instead.
    for i in (0, -1):
        if (old[i] - r) * (new[i] - r) < 0:
            new[i] = r


def default_barrier(params: ProblemParams) -> float:
    cat = catenary_params(params.h, params.r)
    scale = min(math.sqrt(params.c), cat.pi0) if params.c > 0 else cat.pi0
    return 1e-6 * scale


def linear_initial(params: ProblemParams, n: int) -> ProfileGrid:
    """Linear interpolation of the boundary data, i.e. the constant ``r``."""
    return ProfileGrid(params.h, np.full(n + 1, params.r))


def minimize(
    initial: ProfileGrid, params: ProblemParams, opts: MinimizeOptions | None = None
) -> MinimizeResult:
    """Preconditioned projected gradient descent with Armijo backtracking.

    The energy never increases between iterates. Stops when the scaled
    gradient sup-norm is below ``opts.grad_tol`` or after ``opts.max_iters``
    iterations; ``status`` is ``"converged"``, ``"roundoff"`` (the energy stopped
    changing in floating point before the gradient test passed) or
    ``"max_iters"``.

    Raises:
        ValueError: fixed-trace mode with initial traces different from ``r``.
        Stalled: no candidate direction decreases the energy while the
            gradient is still far (1000 times) above the tolerance.
    """
    opts = opts or MinimizeOptions()
    mode = opts.mode
    h, dx, c = initial.h, initial.dx, params.c
    v = initial.values.copy()
    if mode is Mode.FIXED:
        if max(abs(v[0] - params.r), abs(v[-1] - params.r)) > 1e-12 * params.r:
            raise ValueError("fixed-trace mode needs initial traces equal to r")
        v[0] = v[-1] = params.r
    if abs(h - params.h) > 1e-15 * params.h:
        raise ValueError("profile and parameters disagree on h")
    barrier = opts.lower_barrier if opts.lower_barrier is not None else default_barrier(params)
    free = np.ones(v.size, dtype=bool)
    if mode is Mode.FIXED:
        free[0] = free[-1] = False

    # The gradient is compared against the size of the density r + c/r so
    # that the tolerance means the same thing for c = 0 and for c = 1e5.
    tol = opts.grad_tol * (params.r + c / params.r)
    energy = _objective(v, h, params, mode)
    e0 = energy
    history = [energy]
    grad = discrete_gradient(ProfileGrid(h, v), params, mode)
    gnorm = float(np.max(np.abs(grad))) / dx
    it = 0
    flat_steps = 0
    status = "max_iters"
    while gnorm > tol and it < opts.max_iters:
        it += 1
        accepted = False
        active = free.copy()
        if mode is Mode.RELAXED:
            # A trace sitting on the kink of |F(t) - F(r)| with zero minimal-norm
            # subgradient stays there for this step.
            for i in (0, -1):
                if v[i] == params.r and grad[i] == 0.0:
                    active[i] = False
        for d in _directions(v, grad, dx, c, active):
            slope = float(grad @ d)
            t = 1.0
            while t > 1e-12:
                trial = np.maximum(v + t * d, barrier)
                if mode is Mode.RELAXED:
                    _snap_traces(v, trial, params.r)
                trial_e = _objective(trial, h, params, mode)
                if trial_e <= energy + 1e-4 * t * slope:
                    accepted = True
                    break
                t *= 0.5
            if accepted:
                break
        if not accepted:
            if gnorm > 1e3 * tol:
                raise Stalled(f"line search failed at iteration {it}, gradient {gnorm:.3g}")
            status = "roundoff"
            break
        # Steps that no longer change the energy mean round-off has been reached.
        flat_steps = flat_steps + 1 if trial_e == energy else 0
        v, energy = trial, trial_e
        history.append(energy)
        grad = discrete_gradient(ProfileGrid(h, v), params, mode)
        gnorm = float(np.max(np.abs(grad))) / dx
        if flat_steps >= 3:
            status = "roundoff"
            break
    if gnorm <= tol:
        status = "converged"

    return MinimizeResult(
        profile=ProfileGrid(h, v),
        energy=energy,
        initial_energy=e0,
        iterations=it,
        converged=gnorm <= tol,
        grad_norm=gnorm,
        status=status,
        barrier_active=bool(np.any(v <= barrier)),
        history=history,
    )


__all__ = [
    "Mode",
    "MinimizeOptions",
    "MinimizeResult",
    "discrete_gradient",
    "minimize",
    "linear_initial",
    "default_barrier",
]
