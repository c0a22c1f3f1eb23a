import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nematic_profile.bvp import default_bracket, el_rhs, endpoint, integrate_symmetric, shoot
from nematic_profile.closedform import first_integral, solve_E
from nematic_profile.errors import NonPositive, NotAdmissible, NoSignChange
from nematic_profile.geometry import ProblemParams
from nematic_profile.numerics import Bracket

REFERENCE_C = [0.0, 1.0, 2.0, 12.25, 30.0, 100.0, 1000.0]


def test_el_rhs_signs():
    assert el_rhs(1.0, 0.0, 4.0) < 0
    assert el_rhs(3.0, 0.0, 4.0) > 0
    assert el_rhs(2.0, 0.5, 4.0) == 0.0
    with pytest.raises(NonPositive):
        el_rhs(0.0, 0.0, 1.0)


@pytest.mark.parametrize("c", REFERENCE_C)
def test_shoot_matches_closed_form(c):
    p = ProblemParams(1.0, 3.5, c)
    res = shoot(p)
    cf = solve_E(p)
    assert res.boundary_residual < 1e-12
    assert np.max(np.abs(res.profile.values - cf(res.profile.x))) < 1e-10
    assert res.E_estimate == pytest.approx(cf.E, rel=1e-10)


@pytest.mark.parametrize("c", [0.5, 30.0])
def test_trajectory_conserves_first_integral(c):
    p = ProblemParams(1.0, 3.5, c)
    res = shoot(p)
    fi = first_integral(res.profile.values, res.drho, c)
    assert np.ptp(fi) < 1e-11 * fi.mean()


def test_profile_is_even_and_slope_odd():
    res = shoot(ProblemParams(1.0, 3.5, 2.0))
    assert np.array_equal(res.profile.values, res.profile.values[::-1])
    assert np.array_equal(res.drho, -res.drho[::-1])


def test_rk4_fourth_order():
    p = ProblemParams(1.0, 3.5, 30.0)
    cf = solve_E(p)
    errs = [abs(endpoint(cf.center, p, n) - 3.5) for n in (10, 20, 40)]
    rates = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert all(3.7 < r < 4.3 for r in rates)


@settings(max_examples=15, deadline=None)
@given(t=st.floats(0.05, 0.5), logc=st.floats(-3, 3))
def test_shoot_random_admissible(t, logc):
    p = ProblemParams(t, 1.0, 10.0**logc)
    res = shoot(p, n_steps=400)
    assert res.boundary_residual < 1e-11
    assert np.max(np.abs(res.profile.values - solve_E(p)(res.profile.x))) < 1e-6


def test_default_bracket_contains_center():
    for c in (0.0, 2.0, 30.0):
        p = ProblemParams(1.0, 3.5, c)
        br = default_bracket(p)
        assert br.lo <= solve_E(p).center <= br.hi


def test_flat_needs_no_iterations():
    res = shoot(ProblemParams(1.0, 3.5, 12.25))
    assert res.iterations == 0
    assert np.all(res.profile.values == 3.5)


def test_bad_bracket_and_inadmissible():
    p = ProblemParams(1.0, 3.5, 1.0)
    g = lambda x: endpoint(x, p) - 3.5
    with pytest.raises(NoSignChange):
        shoot(p, Bracket.of(g, 3.45, 3.49))
    with pytest.raises(NotAdmissible):
        shoot(ProblemParams(1.0, 1.0, 1.0))


def test_integrate_symmetric_rejects_nonpositive():
    with pytest.raises(NonPositive):
        integrate_symmetric(0.0, ProblemParams(1.0, 3.5, 1.0))


@pytest.mark.parametrize("eps", [1e-13, 1e-11, 1e-9, 1e-7, 1e-5])
@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_near_flat_both_methods(eps, sign):
    # The E window shrinks like (c - r^2)^2 here; both solvers must still agree.
    p = ProblemParams(0.5, 1.0, 1.0 + sign * eps)
    res = shoot(p, n_steps=400)
    cf = solve_E(p)
    assert res.boundary_residual < 1e-12
    assert np.max(np.abs(res.profile.values - cf(res.profile.x))) < 2e-8


def test_el_rhs_equilibrium_and_catenary_limit():
    assert el_rhs(2.0, 0.0, 4.0) == 0.0
    assert el_rhs(2.0, 0.7, 0.0) == pytest.approx((1 + 0.49) / 2.0, rel=1e-15)


def test_integrate_symmetric_examples():
    from nematic_profile.geometry import catenary_params, rho0

    flat, _ = integrate_symmetric(3.5, ProblemParams(1.0, 3.5, 12.25), 100)
    assert np.all(flat.values == 3.5)
    cat = catenary_params(1.0, 3.5)
    errs = []
    for n in (50, 100):
        prof, _ = integrate_symmetric(cat.pi0, ProblemParams(1.0, 3.5, 0.0), n)
        errs.append(np.max(np.abs(prof.values - rho0(prof.x, cat))))
    assert errs[1] < errs[0] / 12
    p = ProblemParams(1.0, 3.5, 30.0)
    prof, _ = integrate_symmetric(solve_E(p).center, p, 1000)
    assert abs(prof.values[-1] - 3.5) < 1e-6
