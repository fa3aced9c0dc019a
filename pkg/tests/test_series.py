import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigspline import (
    FourierSeries,
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
from trigspline.series import tail_bound


def test_grid_n3():
    g = make_grid(3)
    assert g.n == 1
    np.testing.assert_allclose(g.nodes, [0.0, 2 * np.pi / 3, 4 * np.pi / 3], rtol=0, atol=1e-15)


def test_grid_n9():
    g = make_grid(9)
    assert g.n == 4
    assert g.h == pytest.approx(2 * np.pi / 9, abs=1e-15)
    assert g.lam == pytest.approx(np.pi / 9, abs=1e-15)
    assert g.nodes[0] == 0.0 and g.nodes[-1] < 2 * np.pi
    assert np.all(np.diff(g.nodes) > 0)


@pytest.mark.parametrize("N", [4, 1, 2, 0, -3])
def test_grid_rejects_bad_sizes(N):
    with pytest.raises(ValueError, match="odd"):
        make_grid(N)


def test_grid_is_immutable():
    g = make_grid(5)
    with pytest.raises(ValueError):
        g.nodes[0] = 1.0


def test_dft_constant():
    g = make_grid(7)
    c = dft_coeffs(g, np.full(7, 2.5))
    assert c.a0 == pytest.approx(5.0, abs=1e-14)
    np.testing.assert_allclose(c.a, 0, atol=1e-14)
    np.testing.assert_allclose(c.b, 0, atol=1e-14)


def test_dft_n3_unit_impulse():
    # direct summation: a_k = (2/3) * 1 * cos(0) for every k, b_1 = 0
    c = dft_coeffs(make_grid(3), [1.0, 0.0, 0.0])
    assert c.a0 == pytest.approx(2 / 3, abs=1e-15)
    assert c.a[0] == pytest.approx(2 / 3, abs=1e-15)
    assert c.b[0] == pytest.approx(0.0, abs=1e-15)


def test_dft_single_harmonic():
    g = make_grid(9)
    c = dft_coeffs(g, np.cos(g.nodes))
    expected_a = np.array([1.0, 0, 0, 0])
    assert c.a0 == pytest.approx(0, abs=1e-14)
    np.testing.assert_allclose(c.a, expected_a, atol=1e-14)
    np.testing.assert_allclose(c.b, 0, atol=1e-14)


def test_dft_accepts_sample_set():
    g = make_grid(5)
    vals = [1.0, -2.0, 0.5, 3.0, 0.0]
    a = dft_coeffs(g, SampleSet(vals))
    b = dft_coeffs(g, vals)
    assert a.a0 == b.a0
    np.testing.assert_array_equal(a.a, b.a)


def test_dft_length_mismatch():
    with pytest.raises(ValueError, match="expected 9"):
        dft_coeffs(make_grid(9), [1.0, 2.0])


def test_eval_trig_poly_examples(grid9, example_values, example_coeffs):
    const = HarmonicCoeffs(4.0, np.zeros(4), np.zeros(4))
    assert eval_trig_poly(const, 1.234) == pytest.approx(2.0)
    np.testing.assert_allclose(eval_trig_poly(example_coeffs, grid9.nodes), example_values, rtol=0, atol=1e-12)
    one = HarmonicCoeffs(0.0, [1.0, 0, 0, 0], np.zeros(4))
    assert eval_trig_poly(one, np.pi) == pytest.approx(-1.0, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(N=st.sampled_from([3, 5, 9, 17, 33]), data=st.data())
def test_dft_inversion(N, data):
    g = make_grid(N)
    vals = np.array(data.draw(st.lists(st.floats(-1e3, 1e3), min_size=N, max_size=N)))
    c = dft_coeffs(g, vals)
    scale = max(1.0, np.max(np.abs(vals)))
    np.testing.assert_allclose(eval_trig_poly(c, g.nodes), vals, rtol=0, atol=1e-12 * scale)


def test_sigma_examples():
    g3 = make_grid(3)
    assert sigma(0, g3, 1) == pytest.approx(math.sin(math.pi / 3), abs=1e-15)
    assert sigma(0, g3, 4) == pytest.approx(-0.21650635094610965, abs=1e-15)
    assert sigma(1, g3, 1) == pytest.approx(0.75, abs=1e-15)
    for r in range(4):
        assert sigma(r, g3, 3) == 0.0
        assert sigma(r, make_grid(9), 27) == 0.0


def test_sigma_rejects_zero_frequency():
    with pytest.raises(ValueError):
        sigma(0, make_grid(3), 0)
    with pytest.raises(ValueError):
        sigma(-1, make_grid(3), 1)


def test_sigma_vectorised_matches_scalar():
    g = make_grid(9)
    J = np.arange(1, 60)
    vec = sigma(2, g, J)
    np.testing.assert_allclose(vec, [sigma(2, g, int(j)) for j in J], rtol=1e-15, atol=0)


@settings(max_examples=200, deadline=None)
@given(m=st.integers(0, 8), nn=st.integers(1, 8), N=st.sampled_from([3, 5, 9, 17, 33]), k=st.integers(1, 200))
def test_sigma_product_identity(m, nn, N, k):
    g = make_grid(N)
    lhs = sigma(m + nn, g, k)
    rhs = sigma(m, g, k) * sigma(nn - 1, g, k)
    if lhs == 0.0:
        assert rhs == 0.0
    else:
        assert abs(lhs - rhs) <= 1e-14 * abs(lhs)


def test_sigma_unshifted_product_rule_is_wrong():
    g = make_grid(9)
    lhs = sigma(3, g, 1)
    assert abs(lhs - sigma(1, g, 1) * sigma(2, g, 1)) > 1e-3 * abs(lhs)


@settings(max_examples=100, deadline=None)
@given(r=st.integers(0, 6), N=st.sampled_from([3, 7, 9]), J=st.integers(1, 500))
def test_sigma_magnitude(r, N, J):
    g = make_grid(N)
    expected = 0.0 if J % N == 0 else (abs(math.sin(J * math.pi / N)) / J) ** (1 + r)
    assert abs(sigma(r, g, J)) == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_eval_series_basics():
    assert eval_series(FourierSeries.constant_series(3.5), 0.7) == 3.5
    s = FourierSeries(0.25, [1], [1.0], [0.0])
    assert eval_series(s, 0.0) == pytest.approx(1.25)


series_strategy = st.lists(
    st.tuples(st.integers(1, 400), st.floats(-10, 10), st.floats(-10, 10)), min_size=0, max_size=25
).map(lambda ts: FourierSeries.from_terms(1.0, [t[0] for t in ts], [t[1] for t in ts], [t[2] for t in ts]))


@settings(max_examples=60, deadline=None)
@given(s=series_strategy, t=st.floats(-20, 20))
def test_eval_series_periodic(s, t):
    assert eval_series(s, t) == pytest.approx(eval_series(s, t + 2 * np.pi), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(s=series_strategy, count=st.integers(1, 64))
def test_uniform_evaluation_matches_pointwise(s, count):
    scale = 1 + np.sum(np.abs(s.cos) + np.abs(s.sin))
    np.testing.assert_allclose(eval_series_uniform(s, count), eval_series_many(s, uniform_points(count)),
                               rtol=0, atol=1e-11 * scale)


def test_from_terms_merges_repeats():
    s = FourierSeries.from_terms(0.0, [3, 1, 3], [1.0, 2.0, 0.5], [0.0, 0.0, 1.0])
    assert s.freqs.tolist() == [1, 3]
    assert s.coefficient_at(3) == (1.5, 1.0)
    assert s.coefficient_at(2) == (0.0, 0.0)


def test_series_rejects_unsorted():
    with pytest.raises(ValueError):
        FourierSeries(0.0, [2, 1], [1.0, 1.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        FourierSeries(0.0, [0], [1.0], [0.0])


def test_truncation_policy():
    with pytest.raises(ValueError):
        TruncationPolicy(0)
    with pytest.raises(ValueError):
        TruncationPolicy(10, -1.0)
    g = make_grid(9)
    pol = TruncationPolicy.for_tolerance(2, g, 1e-8)
    assert tail_bound(2, 9, pol.m_max, 4) <= 1e-8
    assert tail_bound(2, 9, pol.m_max - 1, 4) > 1e-8


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("N", [3, 9, 17])
def test_tail_bound_dominates_discarded_sum(r, N):
    g = make_grid(N)
    M = 20
    m = np.arange(M + 1, 200_000)
    for k in range(1, g.n + 1):
        discarded = np.sum(np.abs(sigma(r, g, m * N - k)) + np.abs(sigma(r, g, m * N + k)))
        assert discarded <= tail_bound(r, N, M, g.n)
    assert math.isinf(tail_bound(0, N, M, g.n))
