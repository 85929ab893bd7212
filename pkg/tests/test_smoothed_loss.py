"""Smoothed composite quantile loss tests"""
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import quad
from scipy.stats import norm

from core import ContractError, Dataset, DomainError, KernelFamily, KernelSpec, check_loss, kernel_pdf, quantile_grid
from smoothing import (
    ParamVector,
    SmoothedLossSpec,
    composite_check_loss,
    default_bandwidth,
    hessian_quadratic_form,
    loss_gradient,
    loss_value,
    smoothed_check,
)
from solvers import CompositeQuantileEstimator, LammConfig

GAUSSIAN = KernelSpec(family="gaussian")
ALL_KERNELS = [KernelSpec(family=f) for f in KernelFamily]


def spec_for(h=1.0, kernel=GAUSSIAN):
    """Single median level"""
    return SmoothedLossSpec(grid=quantile_grid(1), kernel=kernel, h=h)


def random_instance(rng, kernel=GAUSSIAN, q=None, h=None):
    n = int(rng.integers(5, 51))
    p = int(rng.integers(1, 21))
    q = q or int(rng.choice([1, 3, 19]))
    h = h or float(rng.uniform(0.05, 1.0))
    X = rng.standard_normal((n, p))
    y = X @ rng.normal(0, 1, p) + rng.standard_normal(n)
    spec = SmoothedLossSpec(grid=quantile_grid(q), kernel=kernel, h=h)
    params = ParamVector(rng.normal(0, 0.5, q), rng.normal(0, 0.5, p))
    return spec, Dataset(y=y, X=X), params


def test_smoothed_check_at_origin():
    assert smoothed_check(spec_for(), 0, 0.0) == pytest.approx(1 / np.sqrt(2 * np.pi), abs=1e-6)


def test_smoothed_check_symmetric_at_median():
    spec = spec_for(h=0.37)
    u = np.linspace(-3, 3, 41)
    assert_allclose(smoothed_check(spec, 0, u), smoothed_check(spec, 0, -u), rtol=1e-14)


def test_smoothed_check_small_bandwidth_limit():
    assert smoothed_check(spec_for(h=0.01), 0, 5.0) == pytest.approx(2.5, abs=1e-4)


def test_smoothed_check_gaussian_closed_form():
    spec = SmoothedLossSpec(grid=quantile_grid(3), kernel=GAUSSIAN, h=0.4)
    u = np.linspace(-2, 2, 25)
    for k, tau in enumerate(spec.grid.levels):
        expected = 0.4 * norm.pdf(u / 0.4) + u * (tau - norm.cdf(-u / 0.4))
        assert_allclose(smoothed_check(spec, k, u), expected, atol=1e-14)


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.family.value)
def test_smoothed_check_matches_convolution_quadrature(kernel):
    h, tau = 0.3, 0.25
    spec = SmoothedLossSpec(grid=quantile_grid(3), kernel=kernel, h=h)
    for u in (-1.2, -0.1, 0.0, 0.2, 0.9):
        kinks = sorted({u / h, -1.0, 1.0})
        integral, _ = quad(lambda v: float(check_loss(tau, u - h * v) * kernel_pdf(kernel, v)), -40, 40, points=kinks, limit=400)
        assert smoothed_check(spec, 0, u) == pytest.approx(integral, abs=1e-8)


def test_smoothed_check_level_index_bounds():
    with pytest.raises(ContractError):
        smoothed_check(spec_for(), 1, 0.0)


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.family.value)
def test_smoothing_bias_is_linear_in_bandwidth(kernel):
    u = np.linspace(-3, 3, 601)
    gaps = []
    for h in (0.5, 0.25, 0.125):
        spec = SmoothedLossSpec(grid=quantile_grid(3), kernel=kernel, h=h)
        gap = smoothed_check(spec, 0, u) - check_loss(0.25, u)
        assert np.all(gap >= -1e-14)
        gaps.append(gap.max())
    assert 1.5 <= gaps[0] / gaps[1] <= 2.5
    assert 1.5 <= gaps[1] / gaps[2] <= 2.5


def test_bandwidth_must_be_positive():
    with pytest.raises(DomainError):
        SmoothedLossSpec(grid=quantile_grid(1), kernel=GAUSSIAN, h=0.0)


def test_loss_value_single_term():
    # two identical rows average to the single-row value
    data = Dataset(y=[0.0, 0.0], X=[[0.0], [0.0]])
    assert loss_value(spec_for(), data, ParamVector.zeros(1, 1)) == pytest.approx(0.398942, abs=1e-6)


def test_loss_value_dominates_check_loss_and_ignores_duplication():
    rng = np.random.default_rng(11)
    for _ in range(20):
        spec, data, params = random_instance(rng)
        value = loss_value(spec, data, params)
        assert value >= composite_check_loss(spec.grid, data, params)
        doubled = Dataset(y=np.tile(data.y, 2), X=np.vstack([data.X, data.X]))
        assert loss_value(spec, doubled, params) == pytest.approx(value, rel=1e-13)


def test_dimension_mismatch_is_a_contract_error(small_spec, small_data):
    with pytest.raises(ContractError):
        loss_value(small_spec, small_data, ParamVector.zeros(2, small_data.p))
    with pytest.raises(ContractError):
        loss_gradient(small_spec, small_data, ParamVector.zeros(3, small_data.p + 1))
    with pytest.raises(ContractError):
        hessian_quadratic_form(small_spec, small_data, ParamVector.zeros(3, small_data.p), np.zeros(2))


def test_gradient_at_symmetric_point():
    data = Dataset(y=[0.0, 0.0], X=[[0.0], [0.0]])
    grad_alpha, grad_beta = loss_gradient(spec_for(), data, ParamVector.zeros(1, 1))
    assert_allclose(grad_alpha, [0.0])
    assert_allclose(grad_beta, [0.0])


def test_gradient_far_below_the_data(small_data):
    spec = SmoothedLossSpec(grid=quantile_grid(3), kernel=GAUSSIAN, h=0.5)
    params = ParamVector(np.full(3, -1e3), np.zeros(small_data.p))
    grad_alpha, _ = loss_gradient(spec, small_data, params)
    assert_allclose(grad_alpha, -spec.grid.taus / spec.q)


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.family.value)
def test_gradient_matches_finite_differences(kernel):
    rng = np.random.default_rng(2024)
    for _ in range(25):
        spec, data, params = random_instance(rng, kernel=kernel)
        grad = np.concatenate(loss_gradient(spec, data, params))
        theta = params.flat()
        fd = np.empty_like(theta)
        for j in range(theta.size):
            step = 1e-6 * max(1.0, abs(theta[j]))
            up, down = theta.copy(), theta.copy()
            up[j] += step
            down[j] -= step
            fd[j] = (
                loss_value(spec, data, ParamVector.from_flat(up, spec.q))
                - loss_value(spec, data, ParamVector.from_flat(down, spec.q))
            ) / (2 * step)
        assert np.max(np.abs(fd - grad)) <= 1e-6 * max(1.0, np.max(np.abs(grad)))


@pytest.mark.parametrize("kernel", [GAUSSIAN, KernelSpec(family="logistic")], ids=["gaussian", "logistic"])
def test_hessian_form_matches_gradient_differences(kernel):
    rng = np.random.default_rng(5)
    for _ in range(20):
        spec, data, params = random_instance(rng, kernel=kernel, h=float(rng.uniform(0.2, 1.0)))
        d = rng.standard_normal(spec.q + data.p)
        eps = 1e-5
        theta = params.flat()
        g_up = np.concatenate(loss_gradient(spec, data, ParamVector.from_flat(theta + eps * d, spec.q)))
        g_down = np.concatenate(loss_gradient(spec, data, ParamVector.from_flat(theta - eps * d, spec.q)))
        fd = (g_up - g_down) @ d / (2 * eps)
        assert hessian_quadratic_form(spec, data, params, d) == pytest.approx(fd, rel=1e-4)


def test_hessian_form_is_nonnegative():
    rng = np.random.default_rng(8)
    for _ in range(1000):
        kernel = ALL_KERNELS[int(rng.integers(len(ALL_KERNELS)))]
        spec, data, params = random_instance(rng, kernel=kernel, q=3)
        d = rng.standard_normal(spec.q + data.p)
        assert hessian_quadratic_form(spec, data, params, d) >= -1e-12
    assert hessian_quadratic_form(spec, data, params, np.zeros(spec.q + data.p)) == 0.0


def test_default_bandwidth():
    assert default_bandwidth(100, 600, quantile_grid(19)) == pytest.approx(0.5 * (np.log(600) / 100) ** 0.25)
    assert default_bandwidth(100, 600, quantile_grid(19)) == pytest.approx(0.25146, abs=1e-5)
    assert default_bandwidth(10 ** 8, 2, quantile_grid(19)) == 0.01
    assert default_bandwidth(100, 1, quantile_grid(19)) == 0.01
    assert quantile_grid(7).mean_level == pytest.approx(0.5, abs=1e-15)


@pytest.mark.slow
def test_unpenalized_slopes_unbiased_and_intercept_bias_quadratic():
    rng = np.random.default_rng(31)
    n = 100_000
    beta_star = np.array([1.0, -0.5, 2.0])
    X = rng.standard_normal((n, 3))
    data = Dataset(y=X @ beta_star + rng.standard_normal(n), X=X)
    grid = quantile_grid(3)
    truth = norm.ppf(grid.taus)

    biases = []
    for h in (1.0, 0.5):
        estimator = CompositeQuantileEstimator(
            q=grid, bandwidth=h, standardize=False, lamm=LammConfig(tol=1e-7, max_iter=20000),
        )
        fit = estimator.fit_unpenalized(data)
        assert np.max(np.abs(fit.beta - beta_star)) <= 0.02
        # N(0, 1) errors with a Gaussian kernel: the smoothed intercepts target √(1 + h²)·Φ⁻¹(τ)
        biases.append(np.mean(np.abs(fit.alpha - truth)[[0, 2]]))
    assert 2.5 <= biases[0] / biases[1] <= 6.0
