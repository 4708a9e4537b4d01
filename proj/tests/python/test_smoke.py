import math

import numpy as np
import pytest

import nicholson as nh


@pytest.fixture(scope="module")
def example():
    return nh.ModelParams(delta=1.0, harvest=2.0, rho=6.0, sigma=0.15, r=1.8)


@pytest.fixture(scope="module")
def consts(example):
    return nh.derive_constants(example, beta=6.7093, epsilon=0.33, alpha=0.5)


def test_scalars(example):
    lam = nh.find_lambda(example)
    assert abs(lam.root - 0.3420) <= 5e-4
    assert abs(nh.chi0(lam.root, example)) <= 1e-10
    assert nh.positive_equilibrium(example) == pytest.approx(math.log(2.0), rel=1e-15)
    assert nh.solve_sigma0(1.0, 2.0) == pytest.approx(0.157184951483814, rel=1e-9)
    lo, hi = nh.feasible_beta_interval(example)
    assert lo < 6.7093 < hi
    e_lo, e_hi = nh.epsilon_window(example, lam.root)
    assert e_lo < 0.33 < e_hi
    b = nh.alpha_bound(example, lam.root, 0.33, math.log(2.0), 6.7093)
    assert b["bound"] == pytest.approx(0.227, abs=0.005)


def test_errors(example):
    with pytest.raises(ValueError):
        nh.ModelParams(delta=-1.0, harvest=2.0, rho=6.0, sigma=0.15, r=1.8)
    with pytest.raises(nh.InfeasibleError, match="cond-2"):
        nh.feasible_beta_interval(nh.ModelParams(1.0, 2.0, 6.0, 0.2, 1.8))
    with pytest.raises(ValueError):
        nh.derive_constants(example, epsilon=0.9)


def test_hypotheses(example, consts):
    rep = nh.check_hypotheses(example, consts)
    assert rep.all_pass()
    assert "cond-2" in rep
    assert rep["H2"].margin == pytest.approx(0.238, abs=0.01)
    assert rep["alpha-bound"].advisory


def test_bounds(example, consts):
    up = nh.UpperSolution(consts)
    lo = nh.LowerSolution(consts)
    t = np.linspace(-10.0, 5.0, 7)
    v = up.value(t)
    assert v.shape == t.shape
    assert np.all(np.diff(v) > 0)
    assert np.all(lo.value(t) <= v)
    grid = nh.GridSpec(-30.0, 20.0, 0.01)
    assert nh.verify_upper(up, example, grid).passed
    assert nh.check_gamma_membership(up, consts.beta, [0.1, 1.0, 5.0], grid).all_pass()
    assert nh.check_compatibility(up, lo, consts.beta, grid).all_pass()


def test_iterate_and_verify(example, consts):
    grid = nh.GridSpec(-30.0, 20.0, 0.01)
    res = nh.iterate(example, consts, grid)
    assert res.converged
    assert len(res.saved) == 4
    gaps = np.asarray(res.gaps)
    assert np.all(np.diff(gaps) < 0)
    x = res.final.values
    assert x.shape == (len(grid),)
    assert np.all(np.diff(x) >= -1e-10)
    assert res.final.times[0] == -30.0
    rep = nh.dde_residual(res.final, example)
    assert rep["sup_residual"] <= 5e-3
    cc = nh.cross_check(res.final, example, 0.0, 10.0, 0.005)
    assert cc["max_deviation"] <= 5e-3
