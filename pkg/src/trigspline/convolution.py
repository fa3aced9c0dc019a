"""Periodic convolution of truncated series and the kernel-times-B-spline splines."""

from __future__ import annotations

import math

import numpy as np

from .series import (
    TWO_PI,
    FourierSeries,
    GridSpec,
    HarmonicCoeffs,
    TruncationPolicy,
    eval_series_uniform,
    tail_bound,
)
from .splines import (
    BSplineVariant,
    KernelVariant,
    build_bspline,
    build_kernel,
    bspline_star_normalizer,
    kernel_normalizer,
)


def _sup_coef(s: FourierSeries) -> float:
    if len(s) == 0:
        return abs(s.constant)
    return max(abs(s.constant), float(np.max(np.abs(s.cos) + np.abs(s.sin))))


def convolve_coeffwise(A: FourierSeries, B: FourierSeries) -> FourierSeries:
    """``(A * B)(t) = int_0^{2 pi} A(v) B(t - v) dv`` computed on the coefficients.

    The constant becomes ``2 pi a b``; at a frequency present in both operands
    the cosine is ``pi (cA cB - sA sB)`` and the sine ``pi (cA sB + sA cB)``.
    Frequencies carried by only one operand vanish.
    """
    common, ia, ib = np.intersect1d(A.freqs, B.freqs, assume_unique=True, return_indices=True)
    cA, sA = A.cos[ia], A.sin[ia]
    cB, sB = B.cos[ib], B.sin[ib]
    cos = np.pi * (cA * cB - sA * sB)
    sin = np.pi * (cA * sB + sA * cB)
    tA, tB = A.tail_estimate, B.tail_estimate
    if math.isfinite(tA) and math.isfinite(tB):
        tail = np.pi * (tA * _sup_coef(B) + tB * _sup_coef(A) + tA * tB)
    else:
        tail = math.inf
    return FourierSeries(TWO_PI * (A.constant * B.constant), common, cos, sin,
                         max(A.m_max, B.m_max), tail)


def default_quadrature_size(A: FourierSeries, B: FourierSeries) -> int:
    """Eight panels per unit of the highest frequency, rounded up to a power of two."""
    top = max(A.max_frequency, B.max_frequency, 1)
    return 1 << math.ceil(math.log2(8 * top))


def convolve_quadrature(A: FourierSeries, B: FourierSeries, Q: int, ts) -> np.ndarray:
    """Convolution by the composite trapezoid rule on ``Q`` uniform periodic panels.

    Exact up to rounding when ``Q`` exceeds the sum of the operands' top
    frequencies.
    """
    if Q is None:
        Q = default_quadrature_size(A, B)
    if Q < 4:
        raise ValueError(f"quadrature needs at least 4 panels, got Q={Q}")
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    a_vals = eval_series_uniform(A, Q)
    back = (-np.arange(Q)) % Q
    phase_J = B.freqs.astype(float)
    out = np.empty(len(ts))
    for i, t in enumerate(ts):
        # B(t + u) as a series in u, sampled at u = -v_q
        ph = np.mod(t, TWO_PI) * phase_J
        cs, sn = np.cos(ph), np.sin(ph)
        shifted = FourierSeries(B.constant, B.freqs, B.cos * cs + B.sin * sn, B.sin * cs - B.cos * sn)
        b_vals = eval_series_uniform(shifted, Q)[back]
        out[i] = (TWO_PI / Q) * np.dot(a_vals, b_vals)
    return out


def _check_parity(parity: str):
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def conv_spline_order(parity: str, j: int) -> int:
    """Order of the spline produced by :func:`build_conv_spline`."""
    _check_parity(parity)
    return 2 * j if parity == "even" else 2 * j - 1


def conv_factors(parity: str, j: int, starred: bool, coeffs: HarmonicCoeffs, grid: GridSpec,
                 trunc: TruncationPolicy = TruncationPolicy()):
    """Kernel and B-spline whose convolution gives the even/odd spline of index ``j``.

    Unstarred B-splines live on the single alias family, so they are built at
    twice the depth to cover every frequency the kernel carries.
    """
    _check_parity(parity)
    if isinstance(j, bool) or int(j) != j or j < 1:
        raise ValueError(f"index j must be an integer >= 1, got {j!r}")
    b_order = 2 * j - 1 if parity == "even" else 2 * (j - 1)
    if starred:
        kv = KernelVariant.KR0_STAR if parity == "even" else KernelVariant.KR1_STAR
        bspline = build_bspline(BSplineVariant.BR_STAR, b_order, grid, trunc)
    else:
        kv = KernelVariant.KR0 if parity == "even" else KernelVariant.KR1
        bspline = build_bspline(BSplineVariant.BR, b_order, grid, TruncationPolicy(2 * trunc.m_max, trunc.tail_tol))
    return build_kernel(kv, j, coeffs, grid, trunc), bspline


def build_conv_spline(parity: str, j: int, starred: bool, coeffs: HarmonicCoeffs, grid: GridSpec,
                      trunc: TruncationPolicy = TruncationPolicy()) -> FourierSeries:
    """Interpolating spline of order ``2j`` (even) or ``2j - 1`` (odd) as kernel convolved with B-spline.

    even: ``KR0(2j) * BR(2j - 1)`` or ``KR0* * BR*(2j - 1)``;
    odd: ``KR1(2j - 1) * BR(2j - 2)`` or ``KR1* * BR*(2j - 2)``.
    """
    kernel, bspline = conv_factors(parity, j, starred, coeffs, grid, trunc)
    out = convolve_coeffwise(kernel, bspline)
    # the order-0 kernel makes the generic bound infinite; the product itself
    # has order >= 1 on the double alias family
    order = conv_spline_order(parity, j)
    per_harmonic = tail_bound(order, 2 * grid.N, trunc.m_max, grid.n)
    if starred:
        div = [bspline_star_normalizer(order - 1, grid, k, trunc) for k in range(1, grid.n + 1)]
    else:
        div = [kernel_normalizer(KernelVariant.KR0 if parity == "even" else KernelVariant.KR1, j, grid, k, trunc)
               for k in range(1, grid.n + 1)]
    amp = np.abs(coeffs.a) + np.abs(coeffs.b)
    tail = float(np.sum(amp / np.abs(div))) * per_harmonic
    return FourierSeries(out.constant, out.freqs, out.cos, out.sin, trunc.m_max, tail)
