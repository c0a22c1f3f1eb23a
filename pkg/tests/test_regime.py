import math

import numpy as np
import pytest

import oracles
from nematic_profile.closedform import critical_c_star, solve_E
from nematic_profile.errors import NematicError, NotAdmissible
from nematic_profile.geometry import ProblemParams
from nematic_profile.regime import (
    F_inf_exact,
    count_roots,
    gamma_limit_check,
    map_ordered,
    sweep_c,
    transition_c,
)


@pytest.mark.parametrize("c,expected", [(0.0, 2), (0.002, 3), (0.05, 1)])
def test_counts_at_h04(c, expected):
    rep = count_roots(ProblemParams(0.4, 1.0, c))
    assert rep.count == expected
    assert count_roots(ProblemParams(0.4, 1.0, c), n_samples=8192).count == expected


def test_c_zero_roots_are_catenary_parameters():
    rep = count_roots(ProblemParams(0.4, 1.0, 0.0))
    from nematic_profile.geometry import catenary_params

    cat = catenary_params(0.4, 1.0)
    assert [rt.E for rt in rep.roots] == pytest.approx([cat.pi1, cat.pi0], rel=1e-10)
    assert rep.n_above_pi0 == 1


@pytest.mark.parametrize("c", [1e-4, 0.002, 0.01, 0.1, 0.5, 0.9])
def test_exactly_one_root_above_pi0(c):
    rep = count_roots(ProblemParams(0.4, 1.0, c))
    assert rep.n_above_pi0 == 1
    assert solve_E(ProblemParams(0.4, 1.0, c)).E == pytest.approx(
        next(rt.E for rt in rep.roots if rt.above_pi0), rel=1e-12
    )


def test_count_roots_errors():
    with pytest.raises(ValueError):
        count_roots(ProblemParams(0.4, 1.0, 1.0))
    with pytest.raises(NotAdmissible):
        count_roots(ProblemParams(0.7, 1.0, 0.01))
    # Outside the admissible range the curve is still defined.
    assert count_roots(ProblemParams(0.7, 1.0, 0.01), admissible_only=False).count >= 1


def test_E_of_c_increasing():
    cs = np.concatenate([[0.0], np.geomspace(1e-4, 0.99, 30), np.geomspace(1.01, 1e4, 30)])
    Es = [solve_E(ProblemParams(0.4, 1.0, c)).E for c in cs]
    assert np.all(np.diff(Es) > 0)


def test_transition_near_c_star():
    # c* is a horizontal inflection of H at H* ~ 0.733; just below H* the
    # three-root window closes within a hair of c*.
    c_star = critical_c_star()
    cs = np.linspace(0.024, c_star, 60)
    c_lo = next(c for c in cs if count_roots(ProblemParams(0.732, 1.0, c), admissible_only=False).count == 3)
    tc = transition_c(0.732, 1.0, c_lo=c_lo, c_hi=0.05, tol=1e-9)
    assert abs(tc - c_star) < 5e-4
    assert tc < c_star


def test_transition_admissible_h_below_c_star():
    tc = transition_c(0.4, 1.0, c_lo=0.002, c_hi=0.05, tol=1e-9)
    assert 0.002 < tc < oracles.C_STAR
    assert count_roots(ProblemParams(0.4, 1.0, tc * 0.999)).count == 3
    assert count_roots(ProblemParams(0.4, 1.0, tc * 1.001)).count == 1


def test_transition_rejects_bad_bracket():
    with pytest.raises(NematicError):
        transition_c(0.4, 1.0, c_lo=0.05, c_hi=0.1)


def test_sweep_serial_equals_parallel():
    cs = [0.0, 0.5, 1.0, 12.25, 30.0, 1000.0]
    a = sweep_c(1.0, 3.5, cs, jobs=1)
    b = sweep_c(1.0, 3.5, cs, jobs=2)
    assert a == b
    assert a.ok
    assert np.all(np.diff(a.E_of_c) > 0)
    assert np.all(np.diff(a.sup_dist_to_rho_inf[3:]) < 0)


def test_sweep_requires_sorted():
    with pytest.raises(ValueError):
        sweep_c(1.0, 3.5, [2.0, 1.0])


def test_map_ordered_keeps_order():
    assert map_ordered(math.sqrt, [9.0, 4.0, 1.0], jobs=2) == [3.0, 2.0, 1.0]


def test_gamma_limit():
    rep = gamma_limit_check(1.0, 3.5, 12.25 * np.geomspace(2, 1e5, 8))
    assert rep.F_inf == pytest.approx(oracles.F_INF, rel=1e-14)
    assert np.all(np.diff(rep.sup_dist) < 0)
    assert np.all(np.diff(rep.energy_gap) < 0)
    assert rep.sup_dist[-1] < 1e-3
    assert all(rep.sandwich_ok)
    with pytest.raises(ValueError):
        gamma_limit_check(1.0, 3.5, [1.0, 20.0])


def test_F_inf_exact():
    R = math.hypot(1.0, 3.5)
    assert F_inf_exact(1.0, 3.5) == pytest.approx(math.log((R + 1) / (R - 1)), rel=1e-15)
