import numpy as np
import pytest

from checks_helpers import perturbed
from nematic_profile.closedform import solve_E
from nematic_profile.directmin import (
    MinimizeOptions,
    Mode,
    discrete_gradient,
    linear_initial,
    minimize,
)
from nematic_profile.energy import ProfileGrid, energy_Fc, energy_relaxed
from nematic_profile.geometry import ProblemParams

REFERENCE_C = [0.0, 1.0, 2.0, 12.25, 30.0, 100.0, 1000.0]


@pytest.mark.parametrize("c", REFERENCE_C)
def test_converges_to_closed_form(c):
    p = ProblemParams(1.0, 3.5, c)
    res = minimize(linear_initial(p, 400), p)
    assert res.status in ("converged", "roundoff")
    cf = solve_E(p)
    assert np.max(np.abs(res.profile.values - cf(res.profile.x))) < 1e-4 * 3.5


def test_energy_non_increasing():
    p = ProblemParams(1.0, 3.5, 1.0)
    res = minimize(perturbed(p, 200, seed=3), p)
    assert np.all(np.diff(res.history) <= 0)
    assert res.energy <= res.initial_energy


def test_gradient_matches_finite_differences():
    p = ProblemParams(1.0, 3.5, 2.0)
    prof = perturbed(p, 40, seed=1)
    g = discrete_gradient(prof, p)
    e = lambda v: energy_Fc(ProfileGrid(1.0, v), p.c).total
    for i in (1, 7, 20, 39):
        v1, v2 = prof.values.copy(), prof.values.copy()
        v1[i] += 1e-6
        v2[i] -= 1e-6
        assert g[i] == pytest.approx((e(v1) - e(v2)) / 2e-6, rel=1e-5, abs=1e-9)
    assert g[0] == 0.0 and g[-1] == 0.0


def test_stationary_start_returns_immediately():
    p = ProblemParams(1.0, 3.5, 12.25)
    res = minimize(linear_initial(p, 100), p)
    assert res.iterations == 0 and res.converged
    assert res.energy == res.initial_energy


def test_fixed_mode_rejects_wrong_traces():
    p = ProblemParams(1.0, 3.5, 1.0)
    with pytest.raises(ValueError):
        minimize(ProfileGrid(1.0, np.full(11, 3.0)), p)


def test_fixed_mode_keeps_traces():
    p = ProblemParams(1.0, 3.5, 30.0)
    res = minimize(perturbed(p, 100, seed=5), p)
    assert res.profile.values[0] == 3.5 and res.profile.values[-1] == 3.5


@pytest.mark.parametrize("c", [0.0, 1.0, 30.0])
def test_relaxed_mode_traces_near_r(c):
    p = ProblemParams(1.0, 3.5, c)
    start = ProfileGrid(1.0, np.full(201, 3.0))
    res = minimize(start, p, MinimizeOptions(mode=Mode.RELAXED))
    v = res.profile.values
    assert abs(v[0] - 3.5) < 1e-3 * 3.5 and abs(v[-1] - 3.5) < 1e-3 * 3.5
    assert np.all(np.diff(res.history) <= 0)
    rel = energy_relaxed(res.profile, p)
    assert rel.relaxed_total == pytest.approx(res.energy, rel=1e-12)


def test_options_validation():
    with pytest.raises(ValueError):
        MinimizeOptions(grad_tol=0.0)
    with pytest.raises(ValueError):
        MinimizeOptions(lower_barrier=-1.0)
    assert MinimizeOptions(mode="relaxed").mode is Mode.RELAXED


def test_barrier_keeps_values_positive():
    p = ProblemParams(1.0, 3.5, 1.0)
    v = np.full(51, 3.5)
    v[1:-1] = 1e-3
    res = minimize(ProfileGrid(1.0, v), p, MinimizeOptions(max_iters=50))
    assert np.all(res.profile.values > 0)


def test_closed_form_start_is_stationary():
    p = ProblemParams(1.0, 3.5, 30.0)
    start = solve_E(p).grid(400)
    res = minimize(start, p)
    assert abs(res.energy - res.initial_energy) < 1e-10


def test_gradient_at_interpolated_minimizer_is_second_order():
    p = ProblemParams(1.0, 3.5, 2.0)
    norms = []
    for n in (100, 200):
        g = solve_E(p).grid(n)
        norms.append(np.max(np.abs(discrete_gradient(g, p))) / g.dx)
    assert norms[0] / norms[1] == pytest.approx(4.0, rel=0.1)


def test_catenary_start_reaches_concave_profile():
    from nematic_profile.geometry import catenary_params, rho0

    p = ProblemParams(1.0, 3.5, 1000.0)
    x = np.linspace(-1, 1, 201)
    start = ProfileGrid(1.0, rho0(x, catenary_params(1.0, 3.5)))
    start.values[[0, -1]] = 3.5
    res = minimize(start, p)
    assert np.max(np.abs(res.profile.values - solve_E(p)(x))) < 1e-3


@pytest.mark.parametrize("c", REFERENCE_C)
def test_energy_close_to_closed_form(c):
    from nematic_profile.closedform import energy_closed

    n = 200
    p = ProblemParams(1.0, 3.5, c)
    res = minimize(linear_initial(p, n), p)
    assert abs(res.energy - energy_closed(solve_E(p))) < 10.0 / n**2


def test_lattice_witness():
    from nematic_profile.energy import lattice_max, lattice_min
    from nematic_profile.geometry import catenary_params, rho0, rho_inf

    p = ProblemParams(1.0, 3.5, 2.0)
    cat = catenary_params(1.0, 3.5)
    prof = perturbed(p, 200, seed=11, amplitude=0.6)
    squeezed = lattice_min(lattice_max(prof, lambda s: rho0(s, cat)), rho_inf(prof.x, 1.0, 3.5))
    res = minimize(prof, p)
    assert res.energy <= energy_Fc(squeezed, p.c).total
