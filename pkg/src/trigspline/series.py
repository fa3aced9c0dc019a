"""Uniform periodic grids, discrete harmonic analysis and truncated Fourier series.

Everything here is immutable: arrays held by the dataclasses are flagged
read-only on construction, so values can be shared freely between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

TWO_PI = 2.0 * np.pi


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``N = 2n + 1`` nodes ``t_i = 2 pi (i - 1) / N`` on [0, 2 pi)."""

    N: int
    n: int = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False)
    h: float = field(init=False)
    # half-spacing pi/N; kept for completeness, no formula here consumes it
    lam: float = field(init=False)

    def __post_init__(self):
        N = self.N
        if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
            raise TypeError(f"grid size must be an integer, got {N!r}")
        if N < 3 or N % 2 == 0:
            raise ValueError(f"grid size must be an odd integer >= 3, got N={N}")
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "n", (int(N) - 1) // 2)
        object.__setattr__(self, "nodes", _frozen(TWO_PI * np.arange(N) / N))
        object.__setattr__(self, "h", TWO_PI / N)
        object.__setattr__(self, "lam", np.pi / N)


def make_grid(N: int) -> GridSpec:
    """Return the uniform periodic grid with ``N`` nodes (``N`` odd, ``N >= 3``)."""
    return GridSpec(N)


@dataclass(frozen=True)
class SampleSet:
    """Function values ``f_i = f(t_i)`` at the nodes of a grid."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.ravel(self.values)))

    def __len__(self):
        return len(self.values)


def _sample_values(grid: GridSpec, samples) -> np.ndarray:
    values = samples.values if isinstance(samples, SampleSet) else np.asarray(samples, dtype=float)
    values = np.ravel(values)
    if len(values) != grid.N:
        raise ValueError(f"expected {grid.N} samples for N={grid.N}, got {len(values)}")
    return values


@dataclass(frozen=True)
class HarmonicCoeffs:
    """Coefficients ``a0``, ``a_k``, ``b_k`` (k = 1..n) of the interpolating trigonometric polynomial."""

    a0: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", _frozen(self.a))
        object.__setattr__(self, "b", _frozen(self.b))
        if self.a.shape != self.b.shape or self.a.ndim != 1:
            raise ValueError("cosine and sine coefficient arrays must be 1-d of equal length")

    @property
    def n(self) -> int:
        return len(self.a)

    def replace(self, a0=None, a=None, b=None) -> "HarmonicCoeffs":
        return HarmonicCoeffs(
            self.a0 if a0 is None else a0,
            self.a if a is None else a,
            self.b if b is None else b,
        )


def dft_coeffs(grid: GridSpec, samples) -> HarmonicCoeffs:
    """Discrete Fourier coefficients of the samples on ``grid``.

    ``a_k = (2/N) sum_j f_j cos(k t_j)`` for k = 0..n and
    ``b_k = (2/N) sum_j f_j sin(k t_j)`` for k = 1..n, by direct O(N^2) summation.
    """
    f = _sample_values(grid, samples)
    N = grid.N
    k = np.arange(grid.n + 1)
    # integer phase index keeps cos/sin arguments inside [0, 2 pi)
    idx = np.outer(k, np.arange(N)) % N
    ang = TWO_PI * idx / N
    a = (2.0 / N) * (np.cos(ang) @ f)
    b = (2.0 / N) * (np.sin(ang) @ f)
    return HarmonicCoeffs(a[0], a[1:], b[1:])


def eval_trig_poly(coeffs: HarmonicCoeffs, t):
    """Evaluate ``a0/2 + sum_k (a_k cos kt + b_k sin kt)`` at scalar or array ``t``."""
    t_arr = np.mod(np.asarray(t, dtype=float), TWO_PI)
    k = np.arange(1, coeffs.n + 1)
    ph = np.multiply.outer(t_arr, k)
    out = 0.5 * coeffs.a0 + np.cos(ph) @ coeffs.a + np.sin(ph) @ coeffs.b
    return float(out) if np.ndim(out) == 0 else out


def sigma(r: int, grid: GridSpec, J):
    """Riemann convergence factor ``(sin(J pi / N) / J) ** (1 + r)``.

    The sine keeps its sign, and ``r`` must be a non-negative integer so the
    power of a negative base is well defined. Frequencies that are multiples
    of ``N`` give an exact zero. ``J`` may be an integer or an integer array.
    """
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 0:
        raise ValueError(f"order r must be a non-negative integer, got {r!r}")
    J_arr = np.asarray(J)
    if not np.issubdtype(J_arr.dtype, np.integer):
        raise TypeError("frequencies must be integers")
    if np.any(J_arr <= 0):
        raise ValueError("sigma is defined for positive frequencies only (J >= 1)")
    N = grid.N
    rem = J_arr % (2 * N)
    s = np.sin(np.pi * rem / N)
    s = np.where(rem % N == 0, 0.0, s)
    out = (s / J_arr) ** (1 + int(r))
    return float(out) if out.ndim == 0 else out


def tail_bound(r: int, period: int, m_max: int, n: int) -> float:
    """Bound on ``sum_{m > m_max} |sigma(r, m P - k)| + |sigma(r, m P + k)|`` for ``k <= n``.

    Uses ``m P - n >= P (m - 1/2)`` and an integral comparison; infinite for
    ``r = 0`` where the alias sums converge only conditionally.
    """
    if r <= 0:
        return math.inf
    if 2 * n >= period:
        raise ValueError("harmonic index range must satisfy 2n < alias period")
    return (2.0 / r) * (period * (m_max - 0.5)) ** (-r) / period


@dataclass(frozen=True)
class TruncationPolicy:
    """Cutoff for every alias sum: ``m`` runs over ``1..m_max``."""

    m_max: int = 2048
    tail_tol: float = 0.0

    def __post_init__(self):
        if isinstance(self.m_max, bool) or int(self.m_max) != self.m_max or self.m_max < 1:
            raise ValueError(f"m_max must be a positive integer, got {self.m_max!r}")
        if not self.tail_tol >= 0:
            raise ValueError(f"tail_tol must be >= 0, got {self.tail_tol!r}")
        object.__setattr__(self, "m_max", int(self.m_max))

    @classmethod
    def for_tolerance(cls, r: int, grid: GridSpec, tol: float, period_factor: int = 1) -> "TruncationPolicy":
        """Smallest ``m_max`` whose alias tail bound for order ``r`` is at most ``tol``."""
        if r < 1:
            raise ValueError("no absolute tail bound exists for order 0")
        P = period_factor * grid.N
        # invert (2/r) (P (m - 1/2))^-r / P <= tol
        m = 0.5 + ((2.0 / (r * P * tol)) ** (1.0 / r)) / P
        return cls(max(1, math.ceil(m)), tol)


@dataclass(frozen=True)
class FourierSeries:
    """Truncated real Fourier series ``constant + sum_J (c_J cos Jt + s_J sin Jt)``.

    ``freqs`` are strictly increasing positive integers. ``tail_estimate``
    bounds the summed magnitude of discarded coefficients; ``inf`` marks a
    series whose tail has no absolute bound (order-0 factors).
    """

    constant: float
    freqs: np.ndarray
    cos: np.ndarray
    sin: np.ndarray
    m_max: int = 0
    tail_estimate: float = 0.0

    def __post_init__(self):
        freqs = np.array(self.freqs, dtype=np.int64)
        if freqs.ndim != 1:
            raise ValueError("frequency array must be 1-d")
        if len(freqs) and (freqs[0] < 1 or np.any(np.diff(freqs) <= 0)):
            raise ValueError("frequencies must be positive and strictly increasing")
        c = np.array(self.cos, dtype=float)
        s = np.array(self.sin, dtype=float)
        if c.shape != freqs.shape or s.shape != freqs.shape:
            raise ValueError("coefficient arrays must match the frequency array")
        object.__setattr__(self, "constant", float(self.constant))
        object.__setattr__(self, "freqs", _frozen(freqs, np.int64))
        object.__setattr__(self, "cos", _frozen(c))
        object.__setattr__(self, "sin", _frozen(s))
        object.__setattr__(self, "tail_estimate", float(self.tail_estimate))

    @classmethod
    def from_terms(cls, constant, freqs, cos, sin, m_max=0, tail_estimate=0.0) -> "FourierSeries":
        """Build a series from unsorted, possibly repeated frequencies; repeats are summed."""
        freqs = np.asarray(freqs, dtype=np.int64)
        uniq, inv = np.unique(freqs, return_inverse=True)
        c = np.zeros(len(uniq))
        s = np.zeros(len(uniq))
        np.add.at(c, inv, np.asarray(cos, dtype=float))
        np.add.at(s, inv, np.asarray(sin, dtype=float))
        return cls(constant, uniq, c, s, m_max, tail_estimate)

    @classmethod
    def constant_series(cls, value: float) -> "FourierSeries":
        return cls(value, np.zeros(0, dtype=np.int64), np.zeros(0), np.zeros(0))

    def __len__(self):
        return len(self.freqs)

    def terms(self) -> Iterator[tuple]:
        """Iterate over ``(J, c_J, s_J)``."""
        for J, c, s in zip(self.freqs.tolist(), self.cos.tolist(), self.sin.tolist()):
            yield J, c, s

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.tail_estimate)

    @property
    def max_frequency(self) -> int:
        return int(self.freqs[-1]) if len(self.freqs) else 0

    def coefficient_at(self, J: int) -> tuple:
        i = np.searchsorted(self.freqs, J)
        if i < len(self.freqs) and self.freqs[i] == J:
            return float(self.cos[i]), float(self.sin[i])
        return 0.0, 0.0

    def scaled(self, factor: float) -> "FourierSeries":
        return FourierSeries(
            factor * self.constant, self.freqs, factor * self.cos, factor * self.sin,
            self.m_max, abs(factor) * self.tail_estimate,
        )

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return FourierSeries.from_terms(
            self.constant + other.constant,
            np.concatenate([self.freqs, other.freqs]),
            np.concatenate([self.cos, other.cos]),
            np.concatenate([self.sin, other.sin]),
            max(self.m_max, other.m_max),
            self.tail_estimate + other.tail_estimate,
        )

    def __call__(self, t):
        return eval_series(self, t)


# cos/sin table entries per evaluation block
_BLOCK = 1 << 21


def eval_series_many(series: FourierSeries, ts) -> np.ndarray:
    """Evaluate ``series`` at every angle in ``ts`` (radians)."""
    ts = np.mod(np.asarray(ts, dtype=float).ravel(), TWO_PI)
    out = np.full(ts.shape, series.constant)
    if len(series.freqs) == 0 or len(ts) == 0:
        return out
    J = series.freqs.astype(float)
    has_cos, has_sin = bool(np.any(series.cos)), bool(np.any(series.sin))
    step = max(1, _BLOCK // len(ts))
    for lo in range(0, len(J), step):
        ph = np.multiply.outer(ts, J[lo:lo + step])
        if has_cos:
            out += np.cos(ph) @ series.cos[lo:lo + step]
        if has_sin:
            out += np.sin(ph) @ series.sin[lo:lo + step]
    return out


def uniform_points(count: int) -> np.ndarray:
    """``count`` equally spaced angles ``2 pi p / count`` on [0, 2 pi)."""
    if count < 1:
        raise ValueError(f"need at least one point, got {count}")
    return TWO_PI * np.arange(count) / count


def eval_series_uniform(series: FourierSeries, count: int) -> np.ndarray:
    """Evaluate ``series`` at :func:`uniform_points` ``(count)``.

    ``cos(J t_p)`` and ``sin(J t_p)`` depend only on ``J mod count``, so the
    coefficients are folded into ``count`` bins and summed with one inverse FFT.
    """
    if count < 1:
        raise ValueError(f"need at least one point, got {count}")
    z = np.zeros(count, dtype=complex)
    np.add.at(z, series.freqs % count, series.cos - 1j * series.sin)
    return series.constant + count * np.fft.ifft(z).real


def eval_series(series: FourierSeries, t):
    """Evaluate ``series`` at a scalar angle (float result) or an array of angles."""
    if np.ndim(t) == 0:
        return float(eval_series_many(series, [t])[0])
    t = np.asarray(t, dtype=float)
    return eval_series_many(series, t).reshape(t.shape)
