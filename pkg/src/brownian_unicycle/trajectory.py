"""Deterministic motion descriptions for the planar unicycle.

The commanded motion enters every formula through the speed ratio
``mu(s)`` (angular over linear speed) expressed in the curve-length
parameter ``s``, and through the noise-free heading it induces,

    mean_heading(s) = theta0 + integral_0^s mu(s') ds'.

Profiles are immutable after construction and precompute whatever makes
the heading evaluation exact: constant and polynomial ratios integrate in
closed form, tabulated ratios use linear interpolation of ``mu`` whose
cumulative integral is piecewise quadratic and therefore also exact.

Queries outside ``[0, s_max]`` raise :class:`ProfileDomainError` rather
than extrapolating; silently extrapolated ratios would corrupt the
high-order moment integrals downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ProfileDomainError


@dataclass(frozen=True)
class NoiseParams:
    """Diffusion constants of the two noise channels.

    ``k_r`` scales the variance of the longitudinal shift per unit of
    traveled distance, ``k_theta`` the variance of the heading per unit of
    traveled distance. Both must be non-negative.
    """

    k_r: float
    k_theta: float

    def __post_init__(self) -> None:
        if self.k_r < 0.0:
            raise ValueError(f"k_r must be >= 0, got {self.k_r}")
        if self.k_theta < 0.0:
            raise ValueError(f"k_theta must be >= 0, got {self.k_theta}")


@dataclass(frozen=True)
class SpeedRatioProfile:
    """Deterministic speed-ratio command ``mu(s)`` plus the start heading.

    Use the :meth:`constant`, :meth:`polynomial` or :meth:`table`
    constructors instead of calling ``__init__`` directly. ``coeffs`` are
    monomial coefficients, ``mu(s) = sum(coeffs[k] * s**k)``. Table
    profiles carry strictly increasing sample abscissae starting at 0 and
    covering ``[0, s_max]``; ``knot_heading`` caches the exact cumulative
    integral of the interpolated ratio at each knot.
    """

    kind: str
    theta0: float
    s_max: float
    mu0: float = 0.0
    coeffs: tuple[float, ...] = ()
    knots_s: tuple[float, ...] = ()
    knots_mu: tuple[float, ...] = ()
    knot_heading: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "polynomial", "table"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if not (self.s_max > 0.0):
            raise ValueError(f"s_max must be positive, got {self.s_max}")
        if self.kind == "table":
            ks = np.asarray(self.knots_s)
            if ks.size < 2:
                raise ValueError("table profile needs at least two samples")
            if ks[0] != 0.0:
                raise ValueError("table samples must start at s = 0")
            if not np.all(np.diff(ks) > 0.0):
                raise ValueError("table samples must be strictly increasing in s")
            if ks[-1] < self.s_max:
                raise ValueError("table samples must cover [0, s_max]")
            if len(self.knots_mu) != ks.size:
                raise ValueError("knots_s and knots_mu must have equal length")

    @classmethod
    def constant(cls, mu0: float, theta0: float = 0.0, s_max: float = 1.0) -> "SpeedRatioProfile":
        return cls(kind="constant", theta0=theta0, s_max=s_max, mu0=float(mu0))

    @classmethod
    def polynomial(cls, coeffs, theta0: float = 0.0, s_max: float = 1.0) -> "SpeedRatioProfile":
        return cls(kind="polynomial", theta0=theta0, s_max=s_max,
                   coeffs=tuple(float(c) for c in coeffs))

    @classmethod
    def table(cls, samples, theta0: float = 0.0, s_max: float | None = None) -> "SpeedRatioProfile":
        """Build from ``[(s, mu), ...]`` pairs, linearly interpolated."""
        pts = sorted((float(s), float(mu)) for s, mu in samples)
        ks = tuple(s for s, _ in pts)
        kmu = tuple(mu for _, mu in pts)
        if s_max is None:
            s_max = ks[-1]
        # Exact cumulative integral of the piecewise-linear ratio: each
        # panel contributes its trapezoid area.
        heading = [theta0]
        for i in range(1, len(ks)):
            heading.append(heading[-1] + 0.5 * (kmu[i - 1] + kmu[i]) * (ks[i] - ks[i - 1]))
        return cls(kind="table", theta0=theta0, s_max=float(s_max),
                   knots_s=ks, knots_mu=kmu, knot_heading=tuple(heading))


def _check_domain(profile: SpeedRatioProfile, s) -> np.ndarray:
    arr = np.asarray(s, dtype=float)
    if arr.size and (arr.min() < 0.0 or arr.max() > profile.s_max):
        raise ProfileDomainError(
            f"curve length outside [0, {profile.s_max}]: "
            f"range [{arr.min()}, {arr.max()}]")
    return arr


def ratio(profile: SpeedRatioProfile, s):
    """Evaluate the speed ratio ``mu(s)``. Accepts scalars or arrays."""
    arr = _check_domain(profile, s)
    if profile.kind == "constant":
        out = np.full_like(arr, profile.mu0)
    elif profile.kind == "polynomial":
        out = np.zeros_like(arr)
        for c in reversed(profile.coeffs):
            out = out * arr + c
    else:
        out = np.interp(arr, profile.knots_s, profile.knots_mu)
    return out if np.ndim(s) else float(out)


def mean_heading(profile: SpeedRatioProfile, s):
    """Noise-free heading ``theta0 + integral_0^s mu``, unwrapped.

    Closed form for constant and polynomial profiles; exact piecewise
    quadratic for table profiles. The result is never reduced mod 2*pi so
    finite differences of headings stay smooth.
    """
    arr = _check_domain(profile, s)
    if profile.kind == "constant":
        out = profile.theta0 + profile.mu0 * arr
    elif profile.kind == "polynomial":
        out = np.zeros_like(arr)
        for k in range(len(profile.coeffs) - 1, -1, -1):
            out = out * arr + profile.coeffs[k] / (k + 1)
        out = profile.theta0 + out * arr
    else:
        ks = np.asarray(profile.knots_s)
        kmu = np.asarray(profile.knots_mu)
        kh = np.asarray(profile.knot_heading)
        idx = np.clip(np.searchsorted(ks, arr, side="right") - 1, 0, ks.size - 2)
        ds = arr - ks[idx]
        slope = (kmu[idx + 1] - kmu[idx]) / (ks[idx + 1] - ks[idx])
        out = kh[idx] + kmu[idx] * ds + 0.5 * slope * ds * ds
    return out if np.ndim(s) else float(out)


def damped_cos2(profile: SpeedRatioProfile, params: NoiseParams, s):
    """cos(2 * mean_heading(s)) * exp(-2 * k_theta * s)."""
    arr = _check_domain(profile, s)
    out = np.cos(2.0 * mean_heading(profile, arr)) * np.exp(-2.0 * params.k_theta * arr)
    return out if np.ndim(s) else float(out)


def damped_sin2(profile: SpeedRatioProfile, params: NoiseParams, s):
    """sin(2 * mean_heading(s)) * exp(-2 * k_theta * s)."""
    arr = _check_domain(profile, s)
    out = np.sin(2.0 * mean_heading(profile, arr)) * np.exp(-2.0 * params.k_theta * arr)
    return out if np.ndim(s) else float(out)


def deterministic_pose(profile: SpeedRatioProfile, s: float, settings=None):
    """Noise-free pose ``(x, y, theta)`` after curve length ``s``.

    Constant profiles integrate in closed form (arc of a circle of radius
    ``1/mu0``, straight line when ``mu0 == 0``); other kinds fall back to
    high-order Gauss-Legendre quadrature of ``exp(i * mean_heading)``.
    """
    _check_domain(profile, s)
    th = mean_heading(profile, s)
    if profile.kind == "constant":
        mu0 = profile.mu0
        th0 = profile.theta0
        if mu0 == 0.0:
            x = s * math.cos(th0)
            y = s * math.sin(th0)
        else:
            x = (math.sin(th0 + mu0 * s) - math.sin(th0)) / mu0
            y = -(math.cos(th0 + mu0 * s) - math.cos(th0)) / mu0
        return (x, y, th)

    from .quadrature import QuadratureSettings, integrate_ordered

    if settings is None:
        settings = QuadratureSettings(nodes_per_level=64)
    z, _ = integrate_ordered(
        lambda ts: np.exp(1j * mean_heading(profile, ts[0])), 1, s, settings)
    return (z.real, z.imag, th)
