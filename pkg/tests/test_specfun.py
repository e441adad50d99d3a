"""Test specfun module"""

import logging

import numpy as np
import pytest
from scipy import special

from hypercauchy.exceptions import ConvergenceError, DomainError
from hypercauchy.specfun import SeriesCfg, hankel0, hankel1, hankel2


def _sample_arguments():
    radii = np.linspace(0.2, 5.0, 7)
    angles = np.linspace(-0.9 * np.pi, 0.9 * np.pi, 9)
    return (radii[:, None] * np.exp(1j * angles[None, :])).ravel()


def _oracle(order, p, t):
    return special.hankel1(order, t) if p == 1 else special.hankel2(order, t)


@pytest.mark.parametrize("p", [1, 2])
def test_series_against_scipy(p):
    """Test H_0, H_1 and H_2 against scipy on |t| <= 5"""
    t = _sample_arguments()
    for order, func in ((0, hankel0), (1, hankel1), (2, hankel2)):
        np.testing.assert_allclose(func(p, t), _oracle(order, p, t), rtol=1e-9, atol=1e-12)


def test_reference_value():
    """Test H_0^(1)(1) = J_0(1) + i Y_0(1)"""
    assert abs(hankel0(1, 1.0) - (0.7651976865579666 + 0.08825696421567697j)) < 1e-13


def test_scalar_in_scalar_out():
    """Test that scalar arguments give scalar results"""
    assert np.ndim(hankel0(1, 0.5)) == 0
    assert np.ndim(hankel2(2, 0.5 + 0.5j)) == 0
    assert hankel1(1, np.array([0.5, 1.0])).shape == (2,)


def test_recurrence():
    """Test t H_2 = 2 H_1 - t H_0"""
    t = _sample_arguments()
    for p in (1, 2):
        residual = t * hankel2(p, t) - 2 * hankel1(p, t) + t * hankel0(p, t)
        assert np.max(np.abs(residual)) < 1e-12 * np.max(np.abs(hankel1(p, t)))


def test_derivative_identities():
    """Test H_0' = -H_1 and H_1' = H_0 - H_1/t by central differences"""
    t = 0.3 + 4.0 * np.linspace(0, 1, 20) + 0.25j
    h = 1e-5
    for p in (1, 2):
        d0 = (hankel0(p, t + h) - hankel0(p, t - h)) / (2 * h)
        d1 = (hankel1(p, t + h) - hankel1(p, t - h)) / (2 * h)
        np.testing.assert_allclose(d0, -hankel1(p, t), rtol=1e-6, atol=1e-8)
        np.testing.assert_allclose(d1, hankel0(p, t) - hankel1(p, t) / t, rtol=1e-6, atol=1e-8)


def test_branches_are_conjugate():
    """Test conj(H^(1)(t)) = H^(2)(conj(t)) off the branch cut"""
    t = np.array([1 + 0.5j, 2.5 - 1j, 0.3 + 0.1j])
    for func in (hankel0, hankel1, hankel2):
        np.testing.assert_allclose(np.conj(func(1, t)), func(2, np.conj(t)), rtol=1e-12)


def test_origin_is_rejected():
    """Test DomainError at t = 0"""
    with pytest.raises(DomainError):
        hankel0(1, 0.0)
    with pytest.raises(DomainError):
        hankel1(2, np.array([1.0, 0.0]))


def test_branch_index_is_checked():
    """Test DomainError for a branch other than 1 or 2"""
    with pytest.raises(DomainError):
        hankel0(3, 1.0)


def test_term_limit_raises():
    """Test ConvergenceError when the series needs more terms"""
    with pytest.raises(ConvergenceError):
        hankel0(1, 5.0, SeriesCfg(max_terms=2))


def test_series_config_is_validated():
    """Test invalid truncation policies"""
    with pytest.raises(ValueError):
        SeriesCfg(tol=0)
    with pytest.raises(ValueError):
        SeriesCfg(max_terms=0)


def test_warning_beyond_radius(caplog):
    """Test the warning for arguments past the reliable radius"""
    with caplog.at_level(logging.WARNING, logger="hypercauchy.specfun"):
        hankel0(1, 9.0)
    assert "beyond the reliable radius" in caplog.text


def test_derivative_identities_converge_at_second_order():
    """Test that central-difference residuals of both identities fall as h^2"""
    t = 0.5 + 4.0 * np.linspace(0, 1, 20) + 0.25j
    for p in (1, 2):
        errors0, errors1 = [], []
        for h in (1e-2, 5e-3):
            d0 = (hankel0(p, t + h) - hankel0(p, t - h)) / (2 * h)
            d1 = (hankel1(p, t + h) - hankel1(p, t - h)) / (2 * h)
            errors0.append(np.max(np.abs(d0 + hankel1(p, t))))
            errors1.append(np.max(np.abs(d1 - hankel0(p, t) + hankel1(p, t) / t)))
        for errors in (errors0, errors1):
            order = np.log2(errors[0] / errors[1])
            assert 1.6 <= order <= 2.4


def test_more_terms_change_nothing():
    """Test that doubling the term limit leaves converged values untouched"""
    t = np.concatenate([_sample_arguments(), [8.0, 7.5 + 2.0j, -6.0 + 0.1j]])
    generous = SeriesCfg(max_terms=400)
    for func in (hankel0, hankel1, hankel2):
        for p in (1, 2):
            np.testing.assert_array_equal(func(p, t), func(p, t, generous))


def test_small_argument():
    """Test H_1^(1)(1e-3) near the -2i / (pi t) pole"""
    value = hankel1(1, 1e-3)
    assert abs(value - special.hankel1(1, 1e-3)) < 1e-10 * abs(value)
    assert value.real == pytest.approx(5e-4, rel=1e-6)
    assert value.imag == pytest.approx(-2 / (np.pi * 1e-3), rel=1e-5)
