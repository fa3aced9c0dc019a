"""Non-Fourier reference constructions: cardinal B-splines, periodic cubic
interpolation and affine calibration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TWO_PI, GridSpec, _sample_values

MAX_DEGREE = 12


def cardinal_bspline(degree: int, x):
    """Centered cardinal B-spline with unit knot spacing and unit integral.

    Support is ``[-(degree + 1)/2, (degree + 1)/2]``. Built bottom-up from the
    box with the recurrence

        M_q(x) = ((x + (q+1)/2) M_{q-1}(x + 1/2) + ((q+1)/2 - x) M_{q-1}(x - 1/2)) / q

    The box takes the value 1/2 at its end points so every degree is exactly even.
    """
    if isinstance(degree, bool) or int(degree) != degree or not 0 <= degree <= MAX_DEGREE:
        raise ValueError(f"degree must be an integer in 0..{MAX_DEGREE}, got {degree!r}")
    p = int(degree)
    x_arr = np.asarray(x, dtype=float)
    # level q is needed at offsets -(p-q)/2, ..., (p-q)/2
    shifts = -0.5 * p + np.arange(p + 1)
    y = np.add.outer(shifts, x_arr)
    vals = np.where(np.abs(y) < 0.5, 1.0, np.where(np.abs(y) == 0.5, 0.5, 0.0))
    for q in range(1, p + 1):
        y = y[:-1] + 0.5
        half = 0.5 * (q + 1)
        vals = ((y + half) * vals[1:] + (half - y) * vals[:-1]) / q
    out = vals[0]
    return float(out) if out.ndim == 0 else out


def periodized_bspline(degree: int, grid: GridSpec, t):
    """Degree-``degree`` B-spline on knot spacing ``h = 2 pi / N``, centered at 0, wrapped onto the circle.

    Unit integral over one period.
    """
    t_arr = np.mod(np.asarray(t, dtype=float) + np.pi, TWO_PI) - np.pi
    scale = grid.N / TWO_PI
    reach = int(np.ceil((degree + 1) / (2 * grid.N))) + 1
    total = np.zeros_like(t_arr)
    for p in range(-reach, reach + 1):
        total = total + cardinal_bspline(degree, (t_arr - TWO_PI * p) * scale)
    total = total * scale
    return float(total) if np.ndim(total) == 0 else total


def _thomas(lower, diag, upper, rhs):
    n = len(diag)
    c = np.empty(n)
    d = np.empty(n)
    c[0] = upper[0] / diag[0]
    d[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - lower[i] * c[i - 1]
        if m == 0.0:
            raise np.linalg.LinAlgError("zero pivot in tridiagonal elimination")
        c[i] = upper[i] / m if i < n - 1 else 0.0
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m
    x = np.empty(n)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def solve_cyclic_tridiagonal(lower, diag, upper, rhs):
    """Solve a cyclic tridiagonal system with a Sherman-Morrison rank-one correction.

    ``lower[0]`` couples row 0 to the last unknown, ``upper[-1]`` couples the
    last row to unknown 0.
    """
    lower = np.asarray(lower, dtype=float)
    diag = np.asarray(diag, dtype=float)
    upper = np.asarray(upper, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    n = len(diag)
    if n < 3:
        raise ValueError("cyclic system needs at least 3 unknowns")
    alpha, beta = upper[-1], lower[0]
    gamma = -diag[0]
    b = diag.copy()
    b[0] -= gamma
    b[-1] -= alpha * beta / gamma
    x = _thomas(lower, b, upper, rhs)
    u = np.zeros(n)
    u[0], u[-1] = gamma, alpha
    z = _thomas(lower, b, upper, u)
    denom = 1.0 + z[0] + beta * z[-1] / gamma
    if denom == 0.0:
        raise np.linalg.LinAlgError("singular cyclic tridiagonal system")
    fact = (x[0] + beta * x[-1] / gamma) / denom
    return x - fact * z


def periodic_cubic_moments(grid: GridSpec, samples) -> np.ndarray:
    """Second derivatives at the nodes of the C2 periodic cubic interpolant."""
    f = _sample_values(grid, samples)
    h = grid.h
    rhs = 6.0 * (np.roll(f, -1) - 2.0 * f + np.roll(f, 1)) / h**2
    N = grid.N
    return solve_cyclic_tridiagonal(np.ones(N), 4.0 * np.ones(N), np.ones(N), rhs)


def periodic_cubic_interp(grid: GridSpec, samples, t):
    """C2 periodic cubic spline through ``(t_i, f_i)``, evaluated at ``t``."""
    f = _sample_values(grid, samples)
    M = periodic_cubic_moments(grid, f)
    h = grid.h
    t_arr = np.mod(np.asarray(t, dtype=float), TWO_PI)
    i = np.minimum(np.floor(t_arr / h).astype(int), grid.N - 1)
    j = (i + 1) % grid.N
    left = t_arr - i * h
    right = h - left
    out = (M[i] * right**3 + M[j] * left**3) / (6.0 * h) \
        + (f[i] - M[i] * h**2 / 6.0) * right / h \
        + (f[j] - M[j] * h**2 / 6.0) * left / h
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class AffineFit:
    scale: float
    offset: float
    residual: float


def affine_fit(reference, candidate) -> AffineFit:
    """Least-squares ``candidate ~ scale * reference + offset``; residual is the max abs misfit."""
    ref = np.asarray(reference, dtype=float).ravel()
    cand = np.asarray(candidate, dtype=float).ravel()
    if ref.shape != cand.shape:
        raise ValueError(f"length mismatch: {len(ref)} reference vs {len(cand)} candidate values")
    if len(ref) < 2:
        raise ValueError("need at least two points to fit scale and offset")
    if np.ptp(ref) == 0.0:
        raise ValueError("reference is constant; scale is not identifiable")
    design = np.column_stack([ref, np.ones_like(ref)])
    (scale, offset), *_ = np.linalg.lstsq(design, cand, rcond=None)
    residual = float(np.max(np.abs(cand - (scale * ref + offset))))
    return AffineFit(float(scale), float(offset), residual)
