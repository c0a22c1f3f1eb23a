"""Pure-Python/numpy reference kernels.

Same signatures as the compiled ``_ckernels`` module. The RK4 loops are plain
Python floats; the energy kernels are vectorized with numpy.
"""

import math

import numpy as np


def _accel(rho, drho, c):
    r2 = rho * rho
    return (r2 - c) * (1.0 + drho * drho) / (rho * (r2 + c))


def _step(y, v, c, dt):
    k1y = v
    k1v = _accel(y, v, c)
    t = y + 0.5 * dt * k1y
    if t <= 0.0:
        return y, v, False
    k2y = v + 0.5 * dt * k1v
    k2v = _accel(t, k2y, c)
    t = y + 0.5 * dt * k2y
    if t <= 0.0:
        return y, v, False
    k3y = v + 0.5 * dt * k2v
    k3v = _accel(t, k3y, c)
    t = y + dt * k3y
    if t <= 0.0:
        return y, v, False
    k4y = v + dt * k3v
    k4v = _accel(t, k4y, c)
    y = y + dt * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
    v = v + dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
    ok = y > 0.0 and math.isfinite(y) and math.isfinite(v)
    return y, v, ok


def rk4_endpoint(rho0, drho0, c, length, n_steps):
    y, v = float(rho0), float(drho0)
    dt = length / n_steps
    for _ in range(n_steps):
        y, v, ok = _step(y, v, c, dt)
        if not ok:
            return y, v, False
    return y, v, True


def rk4_trajectory(rho0, drho0, c, length, n_steps):
    ys = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    y, v = float(rho0), float(drho0)
    ys[0], vs[0] = y, v
    dt = length / n_steps
    for i in range(n_steps):
        y, v, ok = _step(y, v, c, dt)
        if not ok:
            return ys, vs, False
        ys[i + 1], vs[i + 1] = y, v
    return ys, vs, True


def energy_parts(values, dx, c):
    values = np.asarray(values, dtype=float)
    s = np.diff(values) / dx
    m = 0.5 * (values[1:] + values[:-1])
    arc = np.sqrt(1.0 + s * s) * dx
    return float(np.sum(m * arc)), float(c * np.sum(arc / m))


def energy_gradient(values, dx, c):
    values = np.asarray(values, dtype=float)
    s = np.diff(values) / dx
    m = 0.5 * (values[1:] + values[:-1])
    L = np.sqrt(1.0 + s * s)
    a = 0.5 * (1.0 - c / (m * m)) * L * dx
    b = (m + c / m) * s / L
    g = np.zeros_like(values)
    g[:-1] += a - b
    g[1:] += a + b
    return g
