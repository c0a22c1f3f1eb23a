import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nematic_profile.closedform import energy_closed, solve_E
from nematic_profile.energy import (
    ProfileGrid,
    energy_Fc,
    energy_Finf,
    energy_relaxed,
    f_density,
    grid_nodes,
    lattice_max,
    lattice_min,
    nodal_derivatives,
    primitive_F,
    surface_density,
    surface_energy_full,
    trace_penalty,
)
from nematic_profile.errors import NeedsSecondDerivative, NonPositive
from nematic_profile.geometry import ProblemParams, catenary_params, rho0, rho_inf

P = ProblemParams(1.0, 3.5, 1.0)


def test_grid_nodes_symmetric():
    x = grid_nodes(1.3, 401)
    assert np.array_equal(x, -x[::-1])
    assert x[0] == -1.3 and x[-1] == 1.3


def test_profile_grid_rejects_nonpositive():
    with pytest.raises(NonPositive):
        ProfileGrid(1.0, np.array([1.0, 0.0, 1.0]))


def test_density_and_primitive():
    assert f_density(2.0, 4.0) == 4.0
    with pytest.raises(NonPositive):
        f_density(0.0, 1.0)
    # F' = f
    s = 1.7
    d = (primitive_F(s + 1e-6, 3.0) - primitive_F(s - 1e-6, 3.0)) / 2e-6
    assert d == pytest.approx(f_density(s, 3.0), rel=1e-9)


def test_constant_profile_energy_exact():
    prof = ProfileGrid(1.0, np.full(101, 3.5))
    e = energy_Fc(prof, 12.25)
    assert e.total == pytest.approx(14.0, rel=1e-14)
    assert e.area_term == pytest.approx(7.0, rel=1e-14)


def test_discrete_energy_second_order():
    cf = solve_E(P)
    exact = energy_closed(cf, 4000)
    errs = [abs(energy_Fc(cf.grid(n), P.c).total - exact) for n in (50, 100, 200)]
    rates = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert all(1.9 < r < 2.1 for r in rates)


def test_finf_scale_invariant_and_exact_for_arc():
    prof = ProfileGrid.from_function(lambda x: rho_inf(x, 1.0, 3.5), 1.0, 2000)
    R = math.hypot(1.0, 3.5)
    exact = math.log((R + 1.0) / (R - 1.0))
    assert energy_Finf(prof) == pytest.approx(exact, rel=1e-6)
    scaled = ProfileGrid(2.0, 2.0 * prof.values)
    assert energy_Finf(scaled) == pytest.approx(energy_Finf(prof), rel=1e-13)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.integers(3, 60), elements=st.floats(0.1, 10.0)), st.floats(0.0, 100.0))
def test_energy_reflection_invariant(values, c):
    prof = ProfileGrid(0.8, values)
    assert energy_Fc(prof, c).total == energy_Fc(prof.reflected(), c).total


def test_relaxed_energy_penalty():
    v = np.full(41, 3.5)
    v[0] = 3.0
    prof = ProfileGrid(1.0, v)
    rel = energy_relaxed(prof, P)
    assert rel.boundary_penalty == pytest.approx(trace_penalty(3.0, P))
    assert rel.boundary_penalty == pytest.approx(abs(primitive_F(3.0, 1.0) - primitive_F(3.5, 1.0)))
    assert rel.relaxed_total == rel.total + rel.boundary_penalty


def test_relaxed_equals_fc_when_traces_match():
    cf = solve_E(P)
    g = cf.grid(100)
    assert energy_relaxed(g, P).boundary_penalty == pytest.approx(0.0, abs=1e-12)


def test_lattice_ops():
    cat = catenary_params(1.0, 3.5)
    prof = ProfileGrid(1.0, np.full(21, 3.0))
    up = lattice_max(prof, lambda x: rho0(x, cat))
    assert np.all(up.values >= prof.values)
    assert np.all(up.values >= rho0(prof.x, cat))
    down = lattice_min(ProfileGrid(1.0, np.full(21, 4.0)), rho_inf(prof.x, 1.0, 3.5))
    assert np.allclose(down.values, rho_inf(prof.x, 1.0, 3.5))


@pytest.mark.parametrize("c", [0.0, 1.0, 30.0])
def test_lattice_lemmas_single_profile(c):
    # A profile crossing both references: max with rho0 and min with rho_inf lower F_c.
    x = grid_nodes(1.0, 200)
    v = 3.5 + 0.4 * np.sin(3 * np.pi * (x + 1) / 2)
    prof = ProfileGrid(1.0, v)
    cat = catenary_params(1.0, 3.5)
    e = energy_Fc(prof, c).total
    assert energy_Fc(lattice_max(prof, lambda s: rho0(s, cat)), c).total <= e
    assert energy_Fc(lattice_min(prof, lambda s: rho_inf(s, 1.0, 3.5)), c).total <= e


def test_nodal_derivatives_exact_for_cubic():
    x = grid_nodes(1.0, 20)
    v = 2.0 + x**3
    d1, d2 = nodal_derivatives(v, x[1] - x[0])
    assert np.allclose(d2, 6 * x, atol=1e-10)
    assert np.allclose(d1[1:-1], 3 * x[1:-1] ** 2, atol=0.02)
    with pytest.raises(NeedsSecondDerivative):
        nodal_derivatives(np.ones(4), 0.1)


def test_surface_density_cylinder():
    # Cylinder of radius R, alpha = 0: dA = R, |Dn|^2 = 0, c1 = -1/R.
    R, c = 2.0, 0.3
    val = surface_density(R, 0.0, 0.0, 0.7, 0.0, c)
    assert val == pytest.approx((1 + c / R**2) * R)


def test_surface_density_reduces_to_reduced_density():
    # At alpha = 0 the integrand is (rho + c/rho) sqrt(1 + rho'^2) for any profile.
    rho, d1, d2 = 3.2, 0.4, 0.9
    val = surface_density(rho, d1, d2, 1.1, 0.0, 2.0)
    assert val == pytest.approx((rho + 2.0 / rho) * math.sqrt(1 + d1**2), rel=1e-13)


def test_surface_energy_full_matches_2pi_fc():
    p = ProblemParams(1.0, 3.5, 30.0)
    cf = solve_E(p)
    full = surface_energy_full(cf.grid(400), p, 0.0, 16)
    assert full == pytest.approx(2 * math.pi * energy_closed(cf), rel=1e-6)


def test_surface_energy_requires_even_panels():
    prof = ProfileGrid(1.0, np.full(12, 1.0))
    with pytest.raises(ValueError):
        surface_energy_full(prof, P, 0.0, 16)
    prof = ProfileGrid(1.0, np.full(13, 1.0))
    with pytest.raises(ValueError):
        surface_energy_full(prof, P, 0.0, 5)


def test_surface_energy_alpha_changes_value():
    p = ProblemParams(1.0, 3.5, 30.0)
    g = solve_E(p).grid(200)
    assert surface_energy_full(g, p, math.pi / 2) != pytest.approx(surface_energy_full(g, p, 0.0))
