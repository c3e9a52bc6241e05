"""Nested quadrature over the ordered region 0 <= s1 <= ... <= s_beta <= s.

The deterministic path maps level ``b`` onto Gauss-Legendre nodes of the
unit interval spanning ``[s_{b-1}, s]``,

    t_b = t_{b-1} + (s - t_{b-1}) * x_b,      jacobian prod_b (s - t_{b-1}),

which turns the ordered region into a tensor-product rule on the unit
cube. Cost is ``nodes_per_level ** beta``; the kernels integrated in this
package are smooth products of exponentials and trigonometric functions
of the deterministic heading, so convergence is spectral. The returned
error estimate is the difference between the rules with ``G`` and
``G + 2`` nodes per level.

Above ``max_dim_deterministic`` dimensions a scrambled Sobol rule on the
cube is used instead: coordinates of each point are sorted to land on the
ordered region (volume ``s**beta / beta!``), and the error estimate is
the standard error over independent scramble replicates. Scramble seeds
are fixed, so results are deterministic for a given settings object.

All reductions use numpy's pairwise summation in a fixed order; results
are bit-stable for a given settings object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import qmc

from .exceptions import IntegrandEvaluationError

_QMC_REPLICATES = 8
_QMC_SEED_BASE = 20260808


@dataclass(frozen=True)
class QuadratureSettings:
    """Knobs for the nested quadrature engine.

    Parameters
    ----------
    nodes_per_level : int
        Gauss-Legendre nodes per nesting level (>= 2).
    max_dim_deterministic : int
        Largest dimension evaluated with the tensor rule; higher
        dimensions fall back to quasi-Monte Carlo.
    qmc_samples : int
        Target sample count per QMC replicate (rounded up to a power of
        two to preserve the Sobol balance properties).
    rel_tol : float
        Advisory relative accuracy target used by callers to flag
        integrals whose error estimate looks too large.
    """

    nodes_per_level: int = 24
    max_dim_deterministic: int = 5
    qmc_samples: int = 8192
    rel_tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.nodes_per_level < 2:
            raise ValueError("nodes_per_level must be >= 2")
        if self.max_dim_deterministic < 1:
            raise ValueError("max_dim_deterministic must be >= 1")
        if self.qmc_samples < 2:
            raise ValueError("qmc_samples must be >= 2")
        if not (self.rel_tol > 0.0):
            raise ValueError("rel_tol must be positive")


DEFAULT_SETTINGS = QuadratureSettings()


@lru_cache(maxsize=64)
def _gauss_unit(n: int):
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=256)
def _simplex_grid(beta: int, s: float, n_nodes: int):
    """Broadcastable node arrays and combined weight*jacobian tensor."""
    x, w = _gauss_unit(n_nodes)
    ts = []
    t_prev = np.zeros(())
    jw = np.ones(())
    for b in range(beta):
        shape = (1,) * b + (n_nodes,) + (1,) * (beta - 1 - b)
        xb = x.reshape(shape)
        wb = w.reshape(shape)
        gap = s - t_prev
        t = t_prev + gap * xb
        jw = jw * gap * wb
        ts.append(t)
        t_prev = t
    for t in ts:
        t.setflags(write=False)
    jw = np.broadcast_to(jw, (n_nodes,) * beta)
    return tuple(ts), jw


def _first_bad_point(ts, bad_mask):
    idx = np.argwhere(bad_mask)[0]
    return tuple(float(np.broadcast_to(t, bad_mask.shape)[tuple(idx)]) for t in ts)


def _apply_rule(f, ts, jw) -> complex:
    vals = np.asarray(f(ts))
    prod = vals * jw
    bad = ~np.isfinite(prod)
    if bad.any():
        point = _first_bad_point(ts, bad)
        raise IntegrandEvaluationError(
            f"integrand returned a non-finite value at {point}", point=point)
    return complex(prod.sum())


def integrate_ordered(f, beta: int, s: float,
                      settings: QuadratureSettings = DEFAULT_SETTINGS):
    """Integrate ``f`` over the ordered region of dimension ``beta``.

    Parameters
    ----------
    f : callable
        Receives a tuple of ``beta`` broadcast-compatible coordinate
        arrays ``(t1, ..., t_beta)`` with ``t1 <= ... <= t_beta`` and must
        return the (possibly complex) integrand values elementwise.
    beta : int
        Dimension of the nested integral; ``beta == 0`` returns ``(1, 0)``
        by the empty-integral convention.
    s : float
        Upper endpoint of the ordered region.

    Returns
    -------
    (value, err_estimate) : tuple[complex, float]
    """
    if beta < 0:
        raise ValueError("beta must be non-negative")
    if beta == 0:
        return 1.0 + 0.0j, 0.0
    if s < 0.0:
        raise ValueError("s must be non-negative")
    if s == 0.0:
        return 0.0 + 0.0j, 0.0
    if beta <= settings.max_dim_deterministic:
        g = settings.nodes_per_level
        coarse = _apply_rule(f, *_simplex_grid(beta, s, g))
        fine = _apply_rule(f, *_simplex_grid(beta, s, g + 2))
        return fine, abs(fine - coarse)
    return _integrate_qmc(f, beta, s, settings)


def _integrate_qmc(f, beta: int, s: float, settings: QuadratureSettings):
    m = max(1, math.ceil(math.log2(settings.qmc_samples)))
    volume = s ** beta / math.factorial(beta)
    estimates = np.empty(_QMC_REPLICATES, dtype=complex)
    for rep in range(_QMC_REPLICATES):
        sampler = qmc.Sobol(d=beta, scramble=True, seed=_QMC_SEED_BASE + rep)
        pts = np.sort(sampler.random_base2(m), axis=1) * s
        ts = tuple(np.ascontiguousarray(pts[:, b]) for b in range(beta))
        vals = np.broadcast_to(np.asarray(f(ts)), (pts.shape[0],))
        bad = ~np.isfinite(vals)
        if bad.any():
            point = _first_bad_point(ts, bad)
            raise IntegrandEvaluationError(
                f"integrand returned a non-finite value at {point}", point=point)
        estimates[rep] = vals.mean() * volume
    value = complex(estimates.mean())
    spread = math.sqrt(float((np.abs(estimates - value) ** 2).sum()) / (_QMC_REPLICATES - 1))
    return value, spread / math.sqrt(_QMC_REPLICATES)
