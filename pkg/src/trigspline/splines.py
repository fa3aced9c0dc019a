"""Interpolation multipliers, alias-class series, splines, B-splines and kernels.

All constructions are sums over alias classes. For harmonic ``k`` the class
is ``{k} U {mP - k, mP + k : m = 1..m_max}`` with ``P = N`` (single) or
``P = 2N`` (double). Every frequency in a class collapses onto ``k`` at the
grid nodes, which is what makes the normalised series interpolate.
"""

from __future__ import annotations

import enum
import math
import warnings

import numpy as np

from .series import (
    FourierSeries,
    GridSpec,
    HarmonicCoeffs,
    TruncationPolicy,
    sigma,
    tail_bound,
)


class AliasFamily(enum.Enum):
    PLAIN_SINGLE = "plain_single"  # mN +- k
    ALT_DOUBLE = "alt_double"  # 2mN +- k with (-1)^m
    PLAIN_DOUBLE = "plain_double"  # 2mN +- k

    @property
    def period_factor(self) -> int:
        return 1 if self is AliasFamily.PLAIN_SINGLE else 2

    @property
    def alternating(self) -> bool:
        return self is AliasFamily.ALT_DOUBLE


class BSplineVariant(enum.Enum):
    BR = "br"
    BR_STAR = "br_star"


class KernelVariant(enum.Enum):
    KR0 = "kr0"
    KR1 = "kr1"
    KR0_STAR = "kr0_star"
    KR1_STAR = "kr1_star"

    @property
    def starred(self) -> bool:
        return self in (KernelVariant.KR0_STAR, KernelVariant.KR1_STAR)

    @property
    def family(self) -> AliasFamily:
        if self in (KernelVariant.KR0, KernelVariant.KR0_STAR):
            return AliasFamily.ALT_DOUBLE
        return AliasFamily.PLAIN_DOUBLE


_PARTS = ("cos", "sin")


def _check_k(grid: GridSpec, k: int):
    if not 1 <= k <= grid.n:
        raise ValueError(f"harmonic index k must lie in 1..{grid.n}, got {k}")


def _check_part(part: str):
    if part not in _PARTS:
        raise ValueError(f"part must be 'cos' or 'sin', got {part!r}")


def _alias_terms(family: AliasFamily, part: str, r: int, grid: GridSpec, k: int, m_max: int):
    """Frequencies, coefficients and node signs of one truncated alias series.

    The node sign is ``cos(J t_i) / cos(k t_i)`` (or the sine ratio) at every
    node, i.e. +1 everywhere except for sines at ``mP - k``.
    """
    _check_k(grid, k)
    _check_part(part)
    P = family.period_factor * grid.N
    m = np.arange(1, m_max + 1, dtype=np.int64)
    alt = (-1.0) ** m if family.alternating else np.ones(m_max)
    lo, hi = m * P - k, m * P + k
    freqs = np.concatenate([[k], lo, hi])
    sig = sigma(r, grid, freqs)
    weight = np.concatenate([[1.0], alt, alt])
    if part == "cos":
        coef = weight * sig
        node_sign = np.ones(len(freqs))
    else:
        sgn_lo = -np.ones(m_max)
        coef = weight * sig * np.concatenate([[1.0], sgn_lo, np.ones(m_max)])
        node_sign = np.concatenate([[1.0], sgn_lo, np.ones(m_max)])
    return freqs, coef, node_sign


def _series_tail(r: int, grid: GridSpec, family: AliasFamily, m_max: int) -> float:
    return tail_bound(r, family.period_factor * grid.N, m_max, grid.n)


def node_collapse_multiplier(family: AliasFamily, r: int, grid: GridSpec, k: int,
                             part: str = "cos", trunc: TruncationPolicy = TruncationPolicy()) -> float:
    """Scalar by which the alias series of ``family`` reduces to ``cos(k t)`` (or ``sin``) at the nodes.

    For ``PLAIN_SINGLE`` this is the interpolation multiplier ``H_k``; for the
    double families it normalises the kernels. Cosine and sine parts agree.
    """
    _, coef, node_sign = _alias_terms(family, part, r, grid, k, trunc.m_max)
    # smallest terms first
    return float(np.sum((coef * node_sign)[::-1]))


def interp_multiplier(r: int, grid: GridSpec, k: int, trunc: TruncationPolicy = TruncationPolicy()) -> float:
    """``H_k = sigma(r, k) + sum_m [sigma(r, mN - k) + sigma(r, mN + k)]``, truncated at ``trunc.m_max``.

    The discarded part is bounded by :func:`interp_multiplier_tail`.
    """
    return node_collapse_multiplier(AliasFamily.PLAIN_SINGLE, r, grid, k, "cos", trunc)


def interp_multiplier_tail(r: int, grid: GridSpec, trunc: TruncationPolicy = TruncationPolicy()) -> float:
    return _series_tail(r, grid, AliasFamily.PLAIN_SINGLE, trunc.m_max)


def alias_series(family: AliasFamily, part: str, r: int, grid: GridSpec, k: int,
                 trunc: TruncationPolicy = TruncationPolicy()) -> FourierSeries:
    """Truncated alias-class series of harmonic ``k``.

    ``PLAIN_SINGLE`` gives the spline functions ``C_k``/``S_k``; ``ALT_DOUBLE``
    and ``PLAIN_DOUBLE`` give ``C0``/``S0`` and ``C1``/``S1``.
    """
    freqs, coef, _ = _alias_terms(family, part, r, grid, k, trunc.m_max)
    zeros = np.zeros(len(freqs))
    c, s = (coef, zeros) if part == "cos" else (zeros, coef)
    return FourierSeries.from_terms(0.0, freqs, c, s, trunc.m_max, _series_tail(r, grid, family, trunc.m_max))


def _combine(constant: float, pieces, m_max: int, tail: float) -> FourierSeries:
    """Merge ``(scale, freqs, coef, part)`` pieces into one series."""
    freqs, cos, sin = [], [], []
    for scale, f, coef, part in pieces:
        freqs.append(f)
        if part == "cos":
            cos.append(scale * coef)
            sin.append(np.zeros(len(f)))
        else:
            cos.append(np.zeros(len(f)))
            sin.append(scale * coef)
    if not freqs:
        return FourierSeries(constant, [], [], [], m_max, 0.0)
    return FourierSeries.from_terms(constant, np.concatenate(freqs), np.concatenate(cos),
                                    np.concatenate(sin), m_max, tail)


def _check_coeffs(coeffs: HarmonicCoeffs, grid: GridSpec):
    if coeffs.n != grid.n:
        raise ValueError(f"coefficients have n={coeffs.n}, grid has n={grid.n}")


def _data_series(coeffs: HarmonicCoeffs, grid: GridSpec, family: AliasFamily, r: int,
                 m_max: int, divisors, tail_per_harmonic: float) -> FourierSeries:
    pieces = []
    tail = 0.0
    for k in range(1, grid.n + 1):
        d = divisors[k - 1]
        ak, bk = coeffs.a[k - 1], coeffs.b[k - 1]
        for part, amp in (("cos", ak), ("sin", bk)):
            if amp == 0.0:
                continue
            f, coef, _ = _alias_terms(family, part, r, grid, k, m_max)
            pieces.append((amp / d, f, coef, part))
            tail += abs(amp / d) * tail_per_harmonic
    return _combine(0.5 * coeffs.a0, pieces, m_max, tail)


def build_spline(coeffs: HarmonicCoeffs, r: int, grid: GridSpec,
                 trunc: TruncationPolicy = TruncationPolicy(), *,
                 allow_conditional: bool = False, h_scale: float = 1.0) -> FourierSeries:
    """Interpolating trigonometric spline of order ``r`` as one sparse series.

    Harmonic ``k`` contributes ``(a_k C_k + b_k S_k) / H_k``. Order 0 converges
    only conditionally and needs ``allow_conditional=True``; order 1 is
    accepted with a warning. ``h_scale`` multiplies every ``H_k`` and exists
    only to probe the verification checks.
    """
    _check_coeffs(coeffs, grid)
    if r < 0:
        raise ValueError(f"order r must be >= 0, got {r}")
    if r == 0 and not allow_conditional:
        raise ValueError("order 0 spline series converge only conditionally; pass allow_conditional=True")
    if r == 1:
        warnings.warn("order-1 spline series converge, but not uniformly fast; expect slow tails",
                      RuntimeWarning, stacklevel=2)
    H = [h_scale * interp_multiplier(r, grid, k, trunc) for k in range(1, grid.n + 1)]
    return _data_series(coeffs, grid, AliasFamily.PLAIN_SINGLE, r, trunc.m_max, H,
                        _series_tail(r, grid, AliasFamily.PLAIN_SINGLE, trunc.m_max))


def bspline_star_normalizer(r: int, grid: GridSpec, k: int, trunc: TruncationPolicy = TruncationPolicy()) -> float:
    """Divisor of harmonic ``k`` in ``BR*(r)``.

    It is the collapse multiplier of the alias class that the convolution
    with the matching starred kernel lands in. For odd ``r`` the partner is
    ``KR0*``: the two alternations cancel and the product has order ``r + 1``
    in the plain double family. For even ``r`` the partner is ``KR1*`` and
    the product keeps the alternation.
    """
    family = AliasFamily.PLAIN_DOUBLE if r % 2 else AliasFamily.ALT_DOUBLE
    return node_collapse_multiplier(family, r + 1, grid, k, "cos", trunc)


def build_bspline(variant: BSplineVariant, r: int, grid: GridSpec,
                  trunc: TruncationPolicy = TruncationPolicy()) -> FourierSeries:
    """Trigonometric B-spline ``BR(r, t)`` or ``BR*(r, t)`` (cosine terms only)."""
    variant = BSplineVariant(variant)
    if r < 0:
        raise ValueError(f"order r must be >= 0, got {r}")
    pieces = []
    if variant is BSplineVariant.BR:
        family = AliasFamily.PLAIN_SINGLE
        divisors = [1.0] * grid.n
    else:
        family = AliasFamily.ALT_DOUBLE
        divisors = [bspline_star_normalizer(r, grid, k, trunc) for k in range(1, grid.n + 1)]
    for k in range(1, grid.n + 1):
        f, coef, _ = _alias_terms(family, "cos", r, grid, k, trunc.m_max)
        pieces.append((1.0 / (np.pi * divisors[k - 1]), f, coef, "cos"))
    tail = sum(abs(1.0 / (np.pi * d)) for d in divisors) * _series_tail(r, grid, family, trunc.m_max)
    return _combine(0.5 / np.pi, pieces, trunc.m_max, tail)


def kernel_normalizer(variant: KernelVariant, j: int, grid: GridSpec, k: int,
                      trunc: TruncationPolicy = TruncationPolicy()) -> float:
    """Divisor of harmonic ``k`` in a kernel: collapse multiplier at the spline order, 1 if starred."""
    variant = KernelVariant(variant)
    if variant.starred:
        return 1.0
    order = 2 * j if variant is KernelVariant.KR0 else 2 * j - 1
    return node_collapse_multiplier(variant.family, order, grid, k, "cos", trunc)


def build_kernel(variant: KernelVariant, j: int, coeffs: HarmonicCoeffs, grid: GridSpec,
                 trunc: TruncationPolicy = TruncationPolicy()) -> FourierSeries:
    """Riemann kernel carrying the sample data.

    ``KR0`` (spline order ``2j``) and ``KR1`` (order ``2j - 1``) divide each
    harmonic by its collapse multiplier; ``KR0*`` and ``KR1*`` do not and
    ignore ``j``. The alias series inside all kernels have order 0, so the
    tail estimate is infinite.
    """
    variant = KernelVariant(variant)
    _check_coeffs(coeffs, grid)
    if variant.starred:
        j = 1
    elif isinstance(j, bool) or int(j) != j or j < 1:
        raise ValueError(f"kernel index j must be an integer >= 1, got {j!r}")
    divisors = [kernel_normalizer(variant, j, grid, k, trunc) for k in range(1, grid.n + 1)]
    series = _data_series(coeffs, grid, variant.family, 0, trunc.m_max, divisors, math.inf)
    if len(series) == 0:
        return FourierSeries(series.constant, [], [], [], trunc.m_max, 0.0)
    return series
