"""Arbitrary-order moments of the noisy unicycle displacement.

Write ``u`` for the complex displacement ``x + i y`` accumulated by the
noisy motion and ``w`` for its conjugate partner, and ``theta_tilde`` for
the zero-mean heading fluctuation. Every planar statistic is a polynomial
combination of the moments ``<u^p w^q theta_tilde^r>``, and each such
moment is an exact finite sum

    sum over keys (n, l, m)
        k_r^n * coefficient * s^m * e^{i (p-q) theta0}
        * sum over phase-step vectors c
            * sum over power compositions gamma
                * (gamma factor) * nested ordered integral of dimension beta

where the keys classify how the shift-noise factors pair up (``n`` pairs
in total, ``l`` of them on the conjugate side, ``m`` mixed), ``beta =
p + q - n - m`` is the dimension of the remaining integral, and the
phase-step vector ``c`` (entries in {-2, -1, 1, 2}) records how the
running phase weight changes across the ordered sample points. The
``gamma`` compositions distribute the ``theta_tilde`` power across the
``beta + 1`` inter-sample gaps; the last part must be even because an odd
residual Gaussian power averages to zero.

Coefficients are evaluated in exact integer arithmetic and converted to
float once per term; term results accumulate in a fixed lexicographic
order over (n, l, m, c, gamma) so runs are bit-reproducible.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator

import numpy as np

from .exceptions import (EnvelopeWarning, NumericalConsistencyError,
                         TermKeyError)
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate_ordered
from .trajectory import NoiseParams, SpeedRatioProfile, mean_heading

#: Guaranteed cost envelope; larger requests work but warn.
MAX_TOTAL_POWER = 8
MAX_HEADING_POWER = 4


@dataclass(frozen=True)
class MomentSpec:
    """Requested moment orders: displacement powers p, q and heading power r."""

    p: int
    q: int
    r: int = 0

    def __post_init__(self) -> None:
        if min(self.p, self.q, self.r) < 0:
            raise ValueError("moment orders must be non-negative")

    @property
    def within_envelope(self) -> bool:
        return self.p + self.q <= MAX_TOTAL_POWER and self.r <= MAX_HEADING_POWER


@dataclass(frozen=True)
class TermKey:
    """One (n, l, m) pairing class of the moment expansion for given (p, q).

    ``n`` counts the paired shift-noise factors, ``l`` how many of the
    paired factors sit on the conjugate side, ``m`` how many pairs mix the
    two sides. The derived counts give the multiset content of the
    phase-step vectors and the dimension of the remaining integral.
    """

    p: int
    q: int
    n: int
    l: int
    m: int

    def __post_init__(self) -> None:
        p, q, n, l, m = self.p, self.q, self.n, self.l, self.m
        if min(p, q, n, l, m) < 0:
            raise TermKeyError("indices must be non-negative")
        if n > (p + q) // 2:
            raise TermKeyError(f"n={n} exceeds floor((p+q)/2)")
        if l > 2 * n or 2 * n - l > p or l > q:
            raise TermKeyError(f"l={l} out of range for n={n}, p={p}, q={q}")
        if m > min(l, 2 * n - l) or (l - m) % 2:
            raise TermKeyError(f"m={m} invalid for l={l}, n={n}")
        # Conservation of the phase weight across the whole vector.
        alpha = (2 * self.count_minus2 + self.count_minus1
                 - self.count_plus1 - 2 * self.count_plus2)
        if alpha != p - q:
            raise TermKeyError("phase-weight bookkeeping broken")

    @property
    def count_minus2(self) -> int:
        return (2 * self.n - self.l - self.m) // 2

    @property
    def count_minus1(self) -> int:
        return self.p - 2 * self.n + self.l

    @property
    def count_plus2(self) -> int:
        return (self.l - self.m) // 2

    @property
    def count_plus1(self) -> int:
        return self.q - self.l

    @property
    def dimension(self) -> int:
        """Dimension beta of the remaining ordered integral."""
        return self.p + self.q - self.n - self.m


@dataclass(frozen=True)
class MomentResult:
    """Moment value with an accumulated error estimate and term count."""

    value: complex
    err_estimate: float
    terms_evaluated: int


def term_keys(p: int, q: int) -> list[TermKey]:
    """All valid (n, l, m) keys for ``<u^p w^q ...>``, lexicographic."""
    keys = []
    for n in range((p + q) // 2 + 1):
        for l in range(max(0, 2 * n - p), min(2 * n, q) + 1):
            for m in range(l % 2, min(l, 2 * n - l) + 1, 2):
                keys.append(TermKey(p, q, n, l, m))
    return keys


def double_factorial(k: int) -> int:
    """k!! with the conventions (-1)!! = 0!! = 1."""
    if k < -1:
        raise ValueError("double factorial undefined below -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def coefficient(key: TermKey) -> int:
    """Exact integer prefactor of one (n, l, m) term.

    Binomials choose which displacement factors join pairs, the factorial
    and double factorials count the distinct pairings (``m`` mixed pairs,
    the rest matched within each side), and the four trailing factorials
    count the orderings collapsed when the surviving sample indices are
    sorted.
    """
    p, q, n, l, m = key.p, key.q, key.n, key.l, key.m
    return (comb(p, 2 * n - l) * comb(q, l) * comb(2 * n - l, m) * comb(l, m)
            * factorial(m)
            * double_factorial(2 * n - l - m - 1)
            * double_factorial(l - m - 1)
            * factorial(key.count_minus2) * factorial(key.count_plus2)
            * factorial(key.count_minus1) * factorial(key.count_plus1))


def _multiset_permutations(counts: dict[int, int], length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for v in sorted(counts):
        if counts[v]:
            counts[v] -= 1
            for rest in _multiset_permutations(counts, length - 1):
                yield (v,) + rest
            counts[v] += 1


def phase_step_vectors(key: TermKey) -> list[tuple[int, ...]]:
    """All distinct phase-step vectors of a key, lexicographic order.

    Each vector has ``count_plus2`` entries equal to 2, ``count_plus1``
    equal to 1, ``count_minus1`` equal to -1 and ``count_minus2`` equal
    to -2; its prefix sums shift the running phase weight, ending at
    ``q - p``.
    """
    counts = {-2: key.count_minus2, -1: key.count_minus1,
              1: key.count_plus1, 2: key.count_plus2}
    counts = {v: c for v, c in counts.items() if c}
    return list(_multiset_permutations(counts, key.dimension))


def count_phase_step_vectors(key: TermKey) -> int:
    """Closed-form count of the phase-step vectors of a key."""
    beta = key.dimension
    return (comb(beta, key.count_plus1)
            * comb(beta - key.count_plus1, key.count_minus1)
            * comb(key.count_minus2 + key.count_plus2, key.count_plus2))


def theta_power_compositions(r: int, beta: int) -> list[tuple[int, ...]]:
    """Compositions of r into ``beta + 1`` non-negative parts, last even.

    Lexicographic order. Empty when no composition exists (odd ``r`` with
    ``beta == 0``). The parts are allowed to be zero: the multinomial
    expansion of the fluctuation power produces zero exponents, and a
    positive-parts reading would wrongly annihilate the odd mixed moments.
    """
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, parts_left: int) -> None:
        if parts_left == 1:
            if remaining % 2 == 0:
                out.append(prefix + (remaining,))
            return
        for v in range(remaining + 1):
            rec(prefix + (v,), remaining - v, parts_left - 1)

    rec((), r, beta + 1)
    return out


def _phase_weights(p: int, q: int, c: tuple[int, ...]) -> tuple[int, ...]:
    """Running phase weights w_b = p - q + (partial sum of c), b < beta."""
    if not c:
        return ()
    w = p - q
    out = [w]
    for step in c[:-1]:
        w += step
        out.append(w)
    return tuple(out)


class _HeadingMemo:
    """Caches deterministic headings per quadrature grid within one call.

    Grids are identified by the identity of the coordinate tuple; keeping
    a reference to the tuple pins its id for the lifetime of the memo.
    """

    def __init__(self, profile: SpeedRatioProfile) -> None:
        self._profile = profile
        self._store: dict[int, tuple] = {}

    def headings(self, ts):
        key = id(ts)
        hit = self._store.get(key)
        if hit is not None:
            return hit[1]
        if len(self._store) > 64:
            self._store.clear()
        th = tuple(mean_heading(self._profile, t) for t in ts)
        self._store[key] = (ts, th)
        return th


def _hermite_like_sum(g: int, w: int, kt: float, dt):
    """Inner Gaussian-moment sum for one gap carrying fluctuation power g.

    ``sum_a g! (i w sqrt(kt dt))^(g-2a) / (a! (g-2a)! 2^a)``; the integer
    prefactors count the ways to pair off 2a of the g fluctuation factors.
    """
    base = 1j * w * np.sqrt(kt * dt)
    acc = 0.0
    for a in range(g // 2 + 1):
        coef = factorial(g) // (factorial(a) * factorial(g - 2 * a) * 2 ** a)
        acc = acc + coef * base ** (g - 2 * a)
    return acc


def _term_integrand(profile, params, s, weights, gamma, memo):
    kt = params.k_theta
    beta = len(weights)
    tail = gamma[beta]
    theta0 = profile.theta0

    def f(ts):
        th = memo.headings(ts)
        t_prev = 0.0
        th_prev = theta0
        expo = 0.0
        herm = None
        for b in range(beta):
            dt = ts[b] - t_prev
            wb = weights[b]
            expo = expo + 1j * (wb * (th[b] - th_prev)) - (0.5 * wb * wb * kt) * dt
            g = gamma[b]
            if g:
                dt_pos = np.maximum(dt, 0.0)
                factor = dt_pos ** (0.5 * g) * _hermite_like_sum(g, wb, kt, dt_pos)
                herm = factor if herm is None else herm * factor
            t_prev = ts[b]
            th_prev = th[b]
        out = np.exp(expo)
        if herm is not None:
            out = out * herm
        if tail:
            out = out * np.maximum(s - ts[-1], 0.0) ** (tail // 2)
        return out

    return f


def _check_envelope(p: int, q: int, r: int) -> None:
    if p + q > MAX_TOTAL_POWER or r > MAX_HEADING_POWER:
        warnings.warn(
            f"moment ({p}, {q}, {r}) is outside the guaranteed envelope "
            f"(p+q <= {MAX_TOTAL_POWER}, r <= {MAX_HEADING_POWER}); "
            "enumeration cost grows combinatorially",
            EnvelopeWarning, stacklevel=3)


def displacement_heading_moment(p: int, q: int, r: int,
                                profile: SpeedRatioProfile,
                                params: NoiseParams, s: float,
                                settings: QuadratureSettings = DEFAULT_SETTINGS
                                ) -> MomentResult:
    """Compute ``<u^p w^q theta_tilde^r>`` by exact term enumeration.

    Every term is one nested ordered integral (dimension ``beta``) scaled
    by an exact integer coefficient; dimension-0 terms use the
    empty-integral-equals-1 convention with the trailing gap factor
    ``s**(gamma_last/2)`` applied analytically.
    """
    spec = MomentSpec(p, q, r)
    _check_envelope(p, q, r)
    kr, kt = params.k_r, params.k_theta
    phase0 = cmath.exp(1j * (p - q) * profile.theta0)
    memo = _HeadingMemo(profile)
    r_fact = factorial(r)

    total = 0.0 + 0.0j
    err_total = 0.0
    n_terms = 0
    for key in term_keys(p, q):
        beta = key.dimension
        gammas = theta_power_compositions(r, beta)
        if not gammas:
            continue
        base = (kr ** key.n) * coefficient(key) * (s ** key.m) * phase0
        for c in phase_step_vectors(key):
            weights = _phase_weights(p, q, c)
            for gamma in gammas:
                gamma_prod = 1
                for g in gamma:
                    gamma_prod *= factorial(g)
                gfac = (r_fact * double_factorial(gamma[-1] - 1)
                        * kt ** (0.5 * r) / gamma_prod)
                scale = base * gfac
                n_terms += 1
                if scale == 0:
                    continue
                if beta == 0:
                    val, ierr = complex(s ** (gamma[-1] // 2)), 0.0
                else:
                    f = _term_integrand(profile, params, s, weights, gamma, memo)
                    val, ierr = integrate_ordered(f, beta, s, settings)
                total += scale * val
                err_total += abs(scale) * ierr
    return MomentResult(total, err_total, n_terms)


def displacement_moment(p: int, q: int, profile: SpeedRatioProfile,
                        params: NoiseParams, s: float,
                        settings: QuadratureSettings = DEFAULT_SETTINGS
                        ) -> MomentResult:
    """Compute ``<u^p w^q>`` (heading power zero)."""
    return displacement_heading_moment(p, q, 0, profile, params, s, settings)


def cartesian_moment(i: int, j: int, k: int, profile: SpeedRatioProfile,
                     params: NoiseParams, s: float,
                     settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Compute ``<x^i y^j theta_tilde^k>`` by binomial expansion.

    ``x = (u + w)/2`` and ``y = (u - w)/(2i)`` turn the request into a
    linear combination of displacement-heading moments. The assembled
    result must be real; its imaginary residue is checked against
    ``1e-8 * |value|`` (plus a roundoff floor tied to the term magnitudes
    and the quadrature error estimate) and then discarded.
    """
    if min(i, j, k) < 0:
        raise ValueError("moment orders must be non-negative")
    _check_envelope(i, j, k)
    pref = 0.5 ** (i + j) * (-1j) ** j
    total = 0.0 + 0.0j
    err = 0.0
    magnitude = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EnvelopeWarning)
        for a in range(i + 1):
            for b in range(j + 1):
                coef = pref * comb(i, a) * comb(j, b) * (-1) ** (j - b)
                res = displacement_heading_moment(
                    a + b, i + j - a - b, k, profile, params, s, settings)
                total += coef * res.value
                err += abs(coef) * res.err_estimate
                magnitude += abs(coef) * abs(res.value)
    tol = 1e-8 * abs(total) + 1e-13 * magnitude + err
    if abs(total.imag) > tol:
        raise NumericalConsistencyError(
            f"imaginary residue {total.imag:.3e} exceeds tolerance {tol:.3e} "
            f"for <x^{i} y^{j} theta~^{k}>")
    return total.real
