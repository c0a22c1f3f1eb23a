# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in :mod:`nematic_profile._pykernels`.

Both modules expose the same four functions with the same signatures; the
selection happens in :mod:`nematic_profile.kernels`.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, isfinite

cnp.import_array()


cdef inline double _accel(double rho, double drho, double c) nogil:
    cdef double r2 = rho * rho
    return (r2 - c) * (1.0 + drho * drho) / (rho * (r2 + c))


cdef inline bint _step(double* rho, double* drho, double c, double dt) nogil:
    cdef double y = rho[0]
    cdef double v = drho[0]
    cdef double k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v, t
    k1y = v
    k1v = _accel(y, v, c)
    t = y + 0.5 * dt * k1y
    if t <= 0.0:
        return False
    k2y = v + 0.5 * dt * k1v
    k2v = _accel(t, k2y, c)
    t = y + 0.5 * dt * k2y
    if t <= 0.0:
        return False
    k3y = v + 0.5 * dt * k2v
    k3v = _accel(t, k3y, c)
    t = y + dt * k3y
    if t <= 0.0:
        return False
    k4y = v + dt * k3v
    k4v = _accel(t, k4y, c)
    rho[0] = y + dt * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
    drho[0] = v + dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
    return rho[0] > 0.0 and isfinite(rho[0]) and isfinite(drho[0])


def rk4_endpoint(double rho0, double drho0, double c, double length, Py_ssize_t n_steps):
    cdef double rho = rho0
    cdef double drho = drho0
    cdef double dt = length / n_steps
    cdef Py_ssize_t i
    cdef bint ok = True
    with nogil:
        for i in range(n_steps):
            if not _step(&rho, &drho, c, dt):
                ok = False
                break
    return rho, drho, ok


def rk4_trajectory(double rho0, double drho0, double c, double length, Py_ssize_t n_steps):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.empty(n_steps + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vs = np.empty(n_steps + 1)
    cdef double[::1] yv = ys
    cdef double[::1] vv = vs
    cdef double rho = rho0
    cdef double drho = drho0
    cdef double dt = length / n_steps
    cdef Py_ssize_t i
    cdef bint ok = True
    yv[0] = rho
    vv[0] = drho
    with nogil:
        for i in range(n_steps):
            if not _step(&rho, &drho, c, dt):
                ok = False
                break
            yv[i + 1] = rho
            vv[i + 1] = drho
    return ys, vs, ok


def energy_parts(const double[::1] values, double dx, double c):
    cdef Py_ssize_t n = values.shape[0] - 1
    cdef Py_ssize_t i
    cdef double s, m, arc
    cdef double area = 0.0
    cdef double nem = 0.0
    for i in range(n):
        s = (values[i + 1] - values[i]) / dx
        m = 0.5 * (values[i] + values[i + 1])
        arc = sqrt(1.0 + s * s) * dx
        area += m * arc
        nem += arc / m
    return area, c * nem


def energy_gradient(const double[::1] values, double dx, double c):
    cdef Py_ssize_t n = values.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n + 1)
    cdef double[::1] g = out
    cdef Py_ssize_t i
    cdef double s, m, L, dens, ddens, a, b
    for i in range(n):
        s = (values[i + 1] - values[i]) / dx
        m = 0.5 * (values[i] + values[i + 1])
        L = sqrt(1.0 + s * s)
        dens = m + c / m
        ddens = 1.0 - c / (m * m)
        a = 0.5 * ddens * L * dx
        b = dens * s / L
        g[i] += a - b
        g[i + 1] += a + b
    return out
