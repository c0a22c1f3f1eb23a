"""Shared scalar kernels: bracketed root finding, Simpson quadrature, central differences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import MaxIterations, NoSignChange, NonFiniteSample

TOL_X = 1e-12
TOL_F = 1e-10
MAX_ITER = 200
N_SAMPLES = 4096

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Bracket:
    """An interval ``[lo, hi]`` with the function values at its ends."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise NoSignChange(f"empty bracket [{self.lo}, {self.hi}]")
        if math.copysign(1.0, self.f_lo) * math.copysign(1.0, self.f_hi) > 0 and self.f_lo != 0 and self.f_hi != 0 or math.isnan(self.f_lo) or math.isnan(self.f_hi):
            raise NoSignChange(
                f"no sign change on [{self.lo}, {self.hi}]: f={self.f_lo}, {self.f_hi}"
            )

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        """Evaluate ``f`` at both ends and build the bracket (raises if invalid)."""
        return cls(lo, hi, float(f(lo)), float(f(hi)))


@dataclass(frozen=True)
class RootResult:
    x: float
    residual: float
    iterations: int
    converged: bool


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol_x: float = TOL_X,
    tol_f: float = TOL_F,
    max_iter: int = MAX_ITER,
) -> RootResult:
    """Brent's method: inverse quadratic / secant steps guarded by bisection.

    The iterate never leaves the current sign-change interval, so the result
    always lies inside ``bracket``. Stops when ``|f(x)| <= tol_f`` or the
    bracket is narrower than ``tol_x`` (plus a few ulps of ``|x|``).

    Raises:
        MaxIterations: no convergence within ``max_iter`` steps.
    """
    if tol_x <= 0 or tol_f <= 0:
        raise ValueError("tolerances must be positive")
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    if fa == 0.0:
        return RootResult(a, 0.0, 0, True)
    if fb == 0.0:
        return RootResult(b, 0.0, 0, True)

    c, fc = a, fa
    d = e = b - a
    for it in range(1, max_iter + 1):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * _EPS * abs(b) + 0.5 * tol_x
        m = 0.5 * (c - b)
        if abs(fb) <= tol_f or abs(m) <= tol or fb == 0.0:
            return RootResult(b, fb, it, True)
        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = float(f(b))
        if math.isnan(fb):
            raise NonFiniteSample(f"f({b}) is NaN inside the bracket")
    raise MaxIterations(f"root not converged after {max_iter} iterations (x={b}, f={fb})")


def scan_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    n_samples: int = N_SAMPLES,
    tol_x: float = TOL_X,
    tol_f: float = TOL_F,
) -> list[RootResult]:
    """Every sign change of ``f`` on a uniform sample of ``[lo, hi]``, refined.

    Samples where ``f`` is not finite are skipped, so ``f`` may return NaN
    outside its natural domain. Roots that do not produce a sign change at
    the sampling resolution (tangencies) are not found here; see
    :func:`scan_tangencies`.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if n_samples < 2:
        raise ValueError("need n_samples >= 2")
    xs = np.linspace(lo, hi, n_samples)
    ys = np.array([f(x) for x in xs], dtype=float)
    roots: list[RootResult] = []
    for i in range(n_samples):
        if ys[i] == 0.0:
            roots.append(RootResult(float(xs[i]), 0.0, 0, True))
    for i in range(n_samples - 1):
        y0, y1 = ys[i], ys[i + 1]
        if not (np.isfinite(y0) and np.isfinite(y1)):
            continue
        if np.sign(y0) * np.sign(y1) < 0:
            roots.append(find_root(f, Bracket(xs[i], xs[i + 1], y0, y1), tol_x, tol_f))
    roots.sort(key=lambda r: r.x)
    return roots


def scan_tangencies(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    n_samples: int = N_SAMPLES,
    tol_f: float = 1e-9,
    step: float | None = None,
) -> list[RootResult]:
    """Double roots: local extrema of ``f`` that touch zero without a sign change.

    A candidate is a sample where the forward differences change sign; the
    extremum is refined by root-finding the central-difference slope and kept
    if ``|f|`` there is below ``tol_f``.
    """
    xs = np.linspace(lo, hi, n_samples)
    ys = np.array([f(x) for x in xs], dtype=float)
    dxs = xs[1] - xs[0]
    step = step if step is not None else 1e-6 * dxs
    out: list[RootResult] = []
    for i in range(1, n_samples - 1):
        y = ys[i - 1 : i + 2]
        if not np.all(np.isfinite(y)):
            continue
        left, right = y[1] - y[0], y[2] - y[1]
        if left * right >= 0:
            continue
        if np.sign(y[0]) * np.sign(y[2]) < 0:
            continue
        slope = lambda x: fd_derivative(f, x, step)
        try:
            res = find_root(slope, Bracket.of(slope, xs[i - 1], xs[i + 1]), tol_x=1e-14)
        except NoSignChange:
            continue
        val = float(f(res.x))
        if abs(val) <= tol_f:
            out.append(RootResult(res.x, val, res.iterations, True))
    return out


def simpson_weights(n_panels: int) -> np.ndarray:
    """Composite Simpson weights (without the ``h/3`` factor) on ``2*n_panels+1`` nodes."""
    w = np.ones(2 * n_panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w


def integrate(f: Callable[[float], float], a: float, b: float, n_panels: int = 64) -> float:
    """Composite Simpson rule with ``n_panels`` parabolic panels on ``[a, b]``.

    Exact for cubics; error ``O(n_panels**-4)`` for smooth integrands.

    Raises:
        NonFiniteSample: ``f`` returned NaN or inf at a node.
    """
    if not a < b:
        raise ValueError("need a < b")
    if n_panels < 1:
        raise ValueError("need n_panels >= 1")
    xs = np.linspace(a, b, 2 * n_panels + 1)
    ys = np.fromiter((f(x) for x in xs), dtype=float, count=xs.size)
    if not np.all(np.isfinite(ys)):
        bad = xs[~np.isfinite(ys)][0]
        raise NonFiniteSample(f"integrand not finite at x={bad}")
    dx = (b - a) / (2 * n_panels)
    return float(dx / 3.0 * np.dot(simpson_weights(n_panels), ys))


def fd_derivative(f: Callable[[float], float], x: float, h_step: float = 1e-6) -> float:
    """Central difference ``(f(x+h) - f(x-h)) / 2h``."""
    if h_step <= 0:
        raise ValueError("h_step must be positive")
    return (f(x + h_step) - f(x - h_step)) / (2.0 * h_step)
