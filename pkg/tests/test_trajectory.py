"""Deterministic motion: headings, damped double-angle factors, poses."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brownian_unicycle import (NoiseParams, ProfileDomainError,
                               SpeedRatioProfile, damped_cos2, damped_sin2,
                               deterministic_pose, mean_heading, ratio)


def test_heading_constant():
    prof = SpeedRatioProfile.constant(5.0, theta0=0.0, s_max=2.0)
    assert mean_heading(prof, 1.0) == pytest.approx(5.0, abs=1e-15)


def test_heading_linear_ramp():
    prof = SpeedRatioProfile.polynomial((0.0, 10.0), theta0=0.0, s_max=2.0)
    assert mean_heading(prof, 1.0) == pytest.approx(5.0, abs=1e-14)


def test_heading_at_origin_is_theta0():
    prof = SpeedRatioProfile.constant(5.0, theta0=0.3, s_max=1.0)
    assert mean_heading(prof, 0.0) == 0.3


def test_ratio_evaluation():
    poly = SpeedRatioProfile.polynomial((1.0, 2.0, 3.0), s_max=1.0)
    assert ratio(poly, 0.5) == pytest.approx(1.0 + 1.0 + 0.75, abs=1e-14)
    const = SpeedRatioProfile.constant(4.0, s_max=1.0)
    np.testing.assert_allclose(ratio(const, np.array([0.0, 1.0])), 4.0)
    tab = SpeedRatioProfile.table([(0.0, 1.0), (1.0, 3.0)], s_max=1.0)
    assert ratio(tab, 0.25) == pytest.approx(1.5, abs=1e-14)


def test_damped_factors_zero_heading():
    prof = SpeedRatioProfile.constant(0.0, theta0=0.0, s_max=3.0)
    params = NoiseParams(0.0, 0.0)
    for s in (0.0, 0.7, 3.0):
        assert damped_cos2(prof, params, s) == pytest.approx(1.0, abs=1e-15)
        assert damped_sin2(prof, params, s) == pytest.approx(0.0, abs=1e-15)


def test_damped_factors_quarter_turn_start():
    prof = SpeedRatioProfile.constant(0.0, theta0=math.pi / 4, s_max=1.0)
    params = NoiseParams(0.0, 0.0)
    assert damped_cos2(prof, params, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert damped_sin2(prof, params, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_damped_factors_generic_point():
    # Direct evaluation of the defining expression.
    prof = SpeedRatioProfile.constant(5.0, theta0=0.0, s_max=1.0)
    params = NoiseParams(0.0, 1.0)
    assert damped_cos2(prof, params, 1.0) == pytest.approx(
        math.cos(10.0) * math.exp(-2.0), rel=1e-14)
    assert damped_sin2(prof, params, 1.0) == pytest.approx(
        math.sin(10.0) * math.exp(-2.0), rel=1e-14)


def test_pose_straight_line():
    prof = SpeedRatioProfile.constant(0.0, theta0=0.0, s_max=2.0)
    assert deterministic_pose(prof, 2.0) == pytest.approx((2.0, 0.0, 0.0))


def test_pose_circle_squared_distance():
    prof = SpeedRatioProfile.constant(5.0, theta0=0.0, s_max=1.0)
    x, y, _ = deterministic_pose(prof, 1.0)
    assert x * x + y * y == pytest.approx(0.0573, abs=5e-5)


def test_pose_ramp_squared_distance():
    prof = SpeedRatioProfile.polynomial((0.0, 10.0), theta0=0.0, s_max=1.0)
    x, y, _ = deterministic_pose(prof, 1.0)
    assert x * x + y * y == pytest.approx(0.1021, abs=5e-5)


@given(mu0=st.floats(0.05, 8.0), sign=st.sampled_from([-1.0, 1.0]),
       theta0=st.floats(-3, 3), s=st.floats(0.01, 2))
@settings(max_examples=40, deadline=None)
def test_circle_identity(mu0, sign, theta0, s):
    mu0 = sign * mu0
    prof = SpeedRatioProfile.constant(mu0, theta0=theta0, s_max=2.0)
    x, y, _ = deterministic_pose(prof, s)
    # 1 - cos written in its cancellation-free half-angle form.
    expected = 2.0 / mu0 ** 2 * (2.0 * math.sin(0.5 * mu0 * s) ** 2)
    assert x * x + y * y == pytest.approx(expected, abs=1e-12, rel=1e-12)


@given(theta0=st.floats(-3, 3), phi=st.floats(-3, 3),
       s1=st.floats(0, 2), s2=st.floats(0, 2))
@settings(max_examples=40, deadline=None)
def test_heading_additivity(theta0, phi, s1, s2):
    base = SpeedRatioProfile.polynomial((1.0, -2.0, 0.5), theta0=theta0, s_max=2.0)
    moved = SpeedRatioProfile.polynomial((1.0, -2.0, 0.5), theta0=theta0 + phi,
                                         s_max=2.0)
    d_base = mean_heading(base, s2) - mean_heading(base, s1)
    d_moved = mean_heading(moved, s2) - mean_heading(moved, s1)
    assert d_base == pytest.approx(d_moved, abs=1e-12)


@given(theta0=st.floats(-2, 2), phi=st.floats(-2, 2), s=st.floats(0.1, 1.5))
@settings(max_examples=30, deadline=None)
def test_pose_rotation_equivariance(theta0, phi, s):
    prof = SpeedRatioProfile.constant(3.0, theta0=theta0, s_max=2.0)
    rotated = SpeedRatioProfile.constant(3.0, theta0=theta0 + phi, s_max=2.0)
    x, y, th = deterministic_pose(prof, s)
    xr, yr, thr = deterministic_pose(rotated, s)
    c, d = math.cos(phi), math.sin(phi)
    assert xr == pytest.approx(c * x - d * y, abs=1e-12)
    assert yr == pytest.approx(d * x + c * y, abs=1e-12)
    assert thr == pytest.approx(th + phi, abs=1e-12)


def test_pose_rotation_equivariance_polynomial():
    phi = 1.1
    prof = SpeedRatioProfile.polynomial((0.0, 10.0), theta0=0.3, s_max=1.0)
    rotated = SpeedRatioProfile.polynomial((0.0, 10.0), theta0=0.3 + phi,
                                           s_max=1.0)
    x, y, th = deterministic_pose(prof, 1.0)
    xr, yr, thr = deterministic_pose(rotated, 1.0)
    c, d = math.cos(phi), math.sin(phi)
    assert xr == pytest.approx(c * x - d * y, abs=1e-12)
    assert yr == pytest.approx(d * x + c * y, abs=1e-12)
    assert thr == pytest.approx(th + phi, abs=1e-12)


def test_domain_violations_raise():
    prof = SpeedRatioProfile.constant(1.0, s_max=1.0)
    with pytest.raises(ProfileDomainError):
        mean_heading(prof, -0.1)
    with pytest.raises(ProfileDomainError):
        mean_heading(prof, 1.0 + 1e-9)
    with pytest.raises(ProfileDomainError):
        mean_heading(prof, np.array([0.5, 2.0]))
    with pytest.raises(ProfileDomainError):
        damped_cos2(prof, NoiseParams(0.0, 0.0), 1.5)


def test_table_matches_polynomial_for_linear_ratio():
    # Piecewise-linear interpolation is exact for a linear ratio, so the
    # piecewise-quadratic cumulative integral must match the closed form.
    poly = SpeedRatioProfile.polynomial((0.0, 10.0), theta0=0.2, s_max=1.0)
    tab = SpeedRatioProfile.table(
        [(0.0, 0.0), (0.25, 2.5), (0.6, 6.0), (1.0, 10.0)], theta0=0.2)
    grid = np.linspace(0.0, 1.0, 57)
    np.testing.assert_allclose(mean_heading(tab, grid), mean_heading(poly, grid),
                               rtol=0, atol=1e-14)


def test_table_validation():
    with pytest.raises(ValueError):
        SpeedRatioProfile.table([(0.0, 1.0)])
    with pytest.raises(ValueError):
        SpeedRatioProfile.table([(0.1, 1.0), (1.0, 2.0)])
    with pytest.raises(ValueError):
        SpeedRatioProfile.table([(0.0, 1.0), (0.5, 2.0)], s_max=1.0)
    with pytest.raises(ValueError):
        SpeedRatioProfile.table([(0.0, 1.0), (0.0, 2.0)])


def test_noise_params_validation():
    with pytest.raises(ValueError):
        NoiseParams(-0.1, 0.0)
    with pytest.raises(ValueError):
        NoiseParams(0.0, -0.1)


def test_profiles_are_immutable():
    prof = SpeedRatioProfile.constant(1.0, s_max=1.0)
    with pytest.raises(AttributeError):
        prof.mu0 = 2.0
