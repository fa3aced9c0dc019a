"""Trigonometric interpolation splines, Riemann B-splines and kernels as truncated Fourier series."""

from .convolution import build_conv_spline, conv_factors, convolve_coeffwise, convolve_quadrature
from .oracles import AffineFit, affine_fit, cardinal_bspline, periodic_cubic_interp, periodized_bspline
from .series import (
    FourierSeries,
    GridSpec,
    HarmonicCoeffs,
    SampleSet,
    TruncationPolicy,
    dft_coeffs,
    eval_series,
    eval_series_many,
    eval_series_uniform,
    eval_trig_poly,
    make_grid,
    sigma,
    uniform_points,
)
from .splines import (
    AliasFamily,
    BSplineVariant,
    KernelVariant,
    alias_series,
    build_bspline,
    build_kernel,
    build_spline,
    interp_multiplier,
    node_collapse_multiplier,
)
from .verify import VerificationReport, verify_identities

__version__ = "0.1.0"
