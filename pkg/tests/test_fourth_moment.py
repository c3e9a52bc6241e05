"""Literal six-term fourth-moment path against its independent twins."""

import pytest

from brownian_unicycle import (NoiseParams, NumericalConsistencyError,
                               SpeedRatioProfile, d4_moment,
                               deterministic_pose, displacement_moment,
                               mean_squared_distance, variance_d2)
from brownian_unicycle import fourth_moment

CONST = SpeedRatioProfile.constant(5.0, theta0=0.0, s_max=1.0)
RAMP = SpeedRatioProfile.polynomial((0.0, 10.0), theta0=0.0, s_max=1.0)


def test_noise_free_limit_is_squared_distance():
    params = NoiseParams(0.0, 0.0)
    x, y, _ = deterministic_pose(CONST, 1.0)
    det_sq = (x * x + y * y) ** 2
    value = d4_moment(CONST, params, 1.0)
    assert value == pytest.approx(det_sq, rel=1e-10)
    assert value == pytest.approx(0.0573 ** 2, abs=2e-5)


def test_variance_reference_constant_small_noise():
    # Published variance of D(1)^2 at the small-noise constant-ratio setup.
    assert variance_d2(CONST, NoiseParams(0.01, 0.01), 1.0) == \
        pytest.approx(0.0012, abs=1e-4)


def test_variance_reference_ramp_small_noise():
    assert variance_d2(RAMP, NoiseParams(0.01, 0.01), 1.0) == \
        pytest.approx(0.0026, abs=2e-4)


@pytest.mark.parametrize("profile,level", [
    (CONST, 0.01), (CONST, 1.0), (RAMP, 0.01), (RAMP, 1.0),
])
def test_path_independence_against_enumeration(profile, level):
    params = NoiseParams(level, level)
    literal = d4_moment(profile, params, 1.0)
    enumerated = displacement_moment(2, 2, profile, params, 1.0).value.real
    assert literal == pytest.approx(enumerated, rel=1e-6)


def test_ramp_variance_consistent_across_paths():
    # Converged value of the varying-ratio variance at unit noise; both the
    # literal kernel path and the enumeration agree on it to 13 digits.
    params = NoiseParams(1.0, 1.0)
    var = variance_d2(RAMP, params, 1.0)
    d2 = mean_squared_distance(RAMP, params, 1.0)
    enumerated = displacement_moment(2, 2, RAMP, params, 1.0).value.real
    assert var == pytest.approx(enumerated - d2 * d2, rel=1e-10)
    assert var == pytest.approx(1.4653368, abs=1e-6)


def test_variance_positivity():
    for profile in (CONST, RAMP):
        for level in (0.0, 0.01, 1.0):
            assert variance_d2(profile, NoiseParams(level, level), 1.0) >= \
                -fourth_moment.VARIANCE_SLACK


def test_variance_zero_without_noise():
    assert variance_d2(CONST, NoiseParams(0.0, 0.0), 1.0) == \
        pytest.approx(0.0, abs=1e-10)


def test_variance_grows_with_shift_noise():
    values = [variance_d2(CONST, NoiseParams(kr, 0.01), 1.0)
              for kr in (0.01, 0.1, 1.0)]
    assert values[0] < values[1] < values[2]


def test_catastrophic_cancellation_raises(monkeypatch):
    monkeypatch.setattr(fourth_moment, "d4_moment",
                        lambda *a, **k: mean_squared_distance(CONST, NoiseParams(0.01, 0.01), 1.0) ** 2 - 1e-3)
    with pytest.raises(NumericalConsistencyError):
        fourth_moment.variance_d2(CONST, NoiseParams(0.01, 0.01), 1.0)
