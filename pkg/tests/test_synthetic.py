import math

import mpmath
import numpy as np
import pytest
from scipy.special import erfc
from scipy.stats import kstest

from spectrakit import (MixtureSpec, MlParams, empirical_survival,
                        gen_mittag_leffler, gen_mixture, ks_statistic,
                        ml_survival)
from spectrakit.synthetic import _ml_asymptotic, _ml_series


def test_mixture_spec_validation():
    with pytest.raises(ValueError):
        MixtureSpec(weights=[0.5, 0.4], rates=[1.0, 2.0])
    with pytest.raises(ValueError):
        MixtureSpec(weights=[1.0], rates=[-1.0])
    with pytest.raises(ValueError):
        MixtureSpec(weights=[0.5, 0.5], rates=[1.0])


def test_ml_params_validation():
    with pytest.raises(ValueError):
        MlParams(beta=0.0, gamma=1.0)
    with pytest.raises(ValueError):
        MlParams(beta=1.2, gamma=1.0)
    with pytest.raises(ValueError):
        MlParams(beta=0.5, gamma=0.0)


def test_mixture_single_rate_mean():
    spec = MixtureSpec(weights=[1.0], rates=[2.0])
    series = gen_mixture(spec, 10**5, seed=31)
    se = 0.5 / math.sqrt(10**5)
    assert abs(series.mean - 0.5) <= 3 * se


def test_mixture_two_rate_mean():
    spec = MixtureSpec(weights=[0.5, 0.5], rates=[1.0, 3.0])
    series = gen_mixture(spec, 10**5, seed=32)
    true_mean = 0.5 * 1.0 + 0.5 / 3.0
    true_var = 0.5 * 2.0 + 0.5 * (2 / 9) - true_mean**2
    se = math.sqrt(true_var / 10**5)
    assert abs(series.mean - true_mean) <= 3 * se


def test_mixture_determinism():
    spec = MixtureSpec(weights=[0.3, 0.7], rates=[1.0, 5.0])
    a = gen_mixture(spec, 1000, seed=33)
    b = gen_mixture(spec, 1000, seed=33)
    assert np.array_equal(a.values, b.values)
    c = gen_mixture(spec, 1000, seed=34)
    assert not np.array_equal(a.values, c.values)


def test_mixture_survival_matches_analytic():
    spec = MixtureSpec(weights=[0.5, 0.5], rates=[0.5, 2.0])
    series = gen_mixture(spec, 10**5, seed=35)
    stat, p = kstest(series.values,
                     lambda x: 1 - 0.5 * np.exp(-0.5 * x) - 0.5 * np.exp(-2 * x))
    assert p >= 0.01


def test_mixture_all_positive():
    spec = MixtureSpec(weights=[1.0], rates=[10.0])
    series = gen_mixture(spec, 5000, seed=36)
    assert np.all(series.values > 0)


def test_ml_beta_one_reduces_to_exponential():
    params = MlParams(beta=1.0, gamma=9.0)
    series = gen_mittag_leffler(params, 10**4, seed=41)
    stat, p = kstest(series.values, "expon", args=(0, 9.0))
    assert p >= 0.01


def test_ml_determinism():
    params = MlParams(beta=0.9, gamma=2.0)
    a = gen_mittag_leffler(params, 500, seed=42)
    b = gen_mittag_leffler(params, 500, seed=42)
    assert np.array_equal(a.values, b.values)


def test_ml_sample_matches_series_oracle():
    params = MlParams(beta=0.95, gamma=1.0)
    series = gen_mittag_leffler(params, 10**4, seed=43)
    taus = np.geomspace(0.01, 50.0, 120)
    empirical = empirical_survival(series, taus)
    oracle = ml_survival(params, taus)
    assert ks_statistic(empirical, oracle) < 0.02


def test_ml_survival_at_zero_is_one():
    for beta in (0.5, 0.8, 1.0):
        curve = ml_survival(MlParams(beta=beta, gamma=3.0), [0.0])
        assert curve.psi[0] == 1.0


def test_ml_survival_exponential_case():
    curve = ml_survival(MlParams(beta=1.0, gamma=1.0), [1.0])
    assert curve.psi[0] == pytest.approx(math.exp(-1), rel=1e-12)


def test_ml_survival_half_closed_form():
    # E_{1/2}(-x) = e^{x^2} erfc(x); oracle via scipy erfc
    params = MlParams(beta=0.5, gamma=1.0)
    taus = np.array([0.25, 1.0, 2.25, 4.0, 9.0])
    curve = ml_survival(params, taus)
    x = np.sqrt(taus)
    closed = np.exp(x**2) * erfc(x)
    assert np.all(np.abs(curve.psi - closed) < 1e-6)
    assert curve.psi[1] == pytest.approx(0.4275835762, abs=1e-8)


def test_ml_survival_monotone_unit_range():
    curve = ml_survival(MlParams(beta=0.8, gamma=2.0),
                        np.geomspace(0.01, 1000.0, 100))
    assert np.all(np.diff(curve.psi) < 0)
    assert np.all((curve.psi > 0) & (curve.psi <= 1))


def test_ml_survival_power_law_tail():
    beta, gamma = 0.9, 1.0
    tau = 1000.0
    curve = ml_survival(MlParams(beta=beta, gamma=gamma), [tau])
    scaled = curve.psi[0] * (tau / gamma) ** beta
    limit = float(1 / mpmath.gamma(1 - beta))
    assert abs(scaled - limit) / limit < 0.05


def test_ml_branch_agreement_around_switch():
    for beta in (0.6, 0.9, 0.95):
        for z in (28.0, 30.0, 32.0):
            assert abs(_ml_series(z, beta) - _ml_asymptotic(z, beta)) < 1e-6


def test_generators_reject_bad_n():
    with pytest.raises(ValueError):
        gen_mixture(MixtureSpec(weights=[1.0], rates=[1.0]), 0, seed=1)
    with pytest.raises(ValueError):
        gen_mittag_leffler(MlParams(beta=0.9, gamma=1.0), 0, seed=1)
