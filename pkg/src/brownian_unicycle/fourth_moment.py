"""Fourth moment of the distance via its explicit six-term decomposition.

``<D^4>`` (the squared distance squared) splits into six pairing classes.
The kernels below are coded literally from the printed expressions of
that decomposition rather than re-derived from the general enumeration
machinery; the whole point of this module is to be an independent
implementation path against :func:`displacement_moment` at orders (2, 2).

Each table entry is ``(kr_power, s_power, prefactor, kernels)`` where a
kernel ``(decay, phase)`` contributes

    exp(-k_theta/2 * sum_j decay[j] * t_j) * cos(sum_j phase[j] * heading(t_j))

inside one nested ordered integral of dimension ``len(decay)``. The two
conjugate three-dimensional classes are already combined into their real
cosine form, and the dimension-0 class is the pure ``2 k_r^2 s^2`` term.
"""

from __future__ import annotations

import numpy as np

from .exceptions import NumericalConsistencyError
from .low_moments import mean_squared_distance
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate_ordered
from .trajectory import NoiseParams, SpeedRatioProfile, mean_heading

DISTANCE4_KERNELS = (
    # n=0 class: four surviving sample points, six phase patterns paired
    # into three cosines.
    (0, 0, 8.0, (
        ((-1, -3, 3, 1), (-1, -1, 1, 1)),
        ((-1, 1, -1, 1), (-1, 1, -1, 1)),
        ((-1, 1, -1, 1), (-1, 1, 1, -1)),
    )),
    # n=1, unmixed pair: conjugate classes combined into real cosines.
    (1, 0, 4.0, (
        ((-4, 3, 1), (2, -1, -1)),
        ((-1, 0, 1), (-1, 2, -1)),
        ((-1, -3, 4), (-1, -1, 2)),
    )),
    # n=1, mixed pair: one traveled-distance factor pulled out as s.
    (1, 1, 8.0, (
        ((-1, 1), (-1, 1)),
    )),
    # n=2, two unmixed pairs.
    (2, 0, 2.0, (
        ((-4, 4), (-2, 2)),
    )),
    # n=2, two mixed pairs: fully integrated, 2 k_r^2 s^2.
    (2, 2, 2.0, ()),
)

#: Absolute slack allowed below zero before variance cancellation is fatal.
VARIANCE_SLACK = 1e-10


def d4_moment(profile: SpeedRatioProfile, params: NoiseParams, s: float,
              settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Mean fourth power of the distance from the start point."""
    kt = params.k_theta
    total = 0.0
    for kr_power, s_power, prefactor, kernels in DISTANCE4_KERNELS:
        weight = prefactor * params.k_r ** kr_power * s ** s_power
        if not kernels:
            total += weight
            continue
        beta = len(kernels[0][0])

        def f(ts, kernels=kernels):
            # Headings evaluated once per node layer and shared by all
            # kernels of this dimension.
            th = [mean_heading(profile, t) for t in ts]
            acc = 0.0
            for decay, phase in kernels:
                expo = 0.0
                angle = 0.0
                for d, g, t, h in zip(decay, phase, ts, th):
                    expo = expo + (-0.5 * kt * d) * t
                    angle = angle + g * h
                acc = acc + np.exp(expo) * np.cos(angle)
            return acc

        value, _ = integrate_ordered(f, beta, s, settings)
        total += weight * value.real
    return total


def variance_d2(profile: SpeedRatioProfile, params: NoiseParams, s: float,
                settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Variance of the squared distance, ``<D^4> - <D^2>^2``.

    Raises :class:`NumericalConsistencyError` if cancellation drives the
    result below ``-VARIANCE_SLACK`` instead of clamping silently.
    """
    d4 = d4_moment(profile, params, s, settings)
    d2 = mean_squared_distance(profile, params, s, settings)
    out = d4 - d2 * d2
    if out < -VARIANCE_SLACK:
        raise NumericalConsistencyError(
            f"variance of D^2 came out {out:.3e} < -{VARIANCE_SLACK:.0e}; "
            "quadrature cancellation is out of control")
    return out
