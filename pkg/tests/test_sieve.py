from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersieve.sieve import (
    SPACING_C_RIGOROUS,
    CoefficientVector,
    SamplePoints,
    SyntheticSpectrum,
    dual_reduction_bound,
    m1_weight,
    period_recursion_factor,
    s_matrix,
    sieve_experiment,
    spacing_constant,
    spacing_sum,
    spectral_weights,
    weyl_synthetic,
)


# --- domain types -----------------------------------------------------------


def test_sample_points_validation():
    with pytest.raises(ValueError):
        SamplePoints([1.5, 1.6], 1.0, 0.1)
    with pytest.raises(ValueError):
        SamplePoints([10.0, 10.05], 10.0, 0.1)
    with pytest.raises(ValueError):
        SamplePoints([9.0], 10.0, 0.1)
    with pytest.raises(ValueError):
        SamplePoints([10.0], 10.0, 0.0)


@pytest.mark.parametrize("X,delta", [(10, 0.01), (10, 1.0), (100, 0.1), (100, 7.0)])
def test_layouts_respect_spacing(X, delta):
    eq = SamplePoints.equally_spaced(X, delta)
    assert len(eq) == math.floor(X / delta + 1e-9) + 1
    cl = SamplePoints.clustered(X, delta)
    assert cl.xs.max() == pytest.approx(2 * X)
    for pts in (eq, cl):
        assert np.all(np.diff(pts.xs) >= delta * (1 - 1e-9))


def test_r_matrix_symmetric_zero_diagonal():
    r = SamplePoints.equally_spaced(10, 1.0).r_matrix()
    assert np.allclose(r, r.T) and np.all(np.diag(r) == 0)


def test_spectrum_csv_round_trip():
    spectrum = weyl_synthetic(20, seed=3)
    back = SyntheticSpectrum.from_csv(spectrum.to_csv())
    assert np.allclose(back.eigen_ts, spectrum.eigen_ts, rtol=1e-11)
    assert np.allclose(back.periods, spectrum.periods, rtol=1e-11)
    assert len(SyntheticSpectrum.from_csv("t,period\n")) == 0


def test_spectrum_validation():
    with pytest.raises(ValueError):
        SyntheticSpectrum([2.0, 1.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        SyntheticSpectrum([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        SyntheticSpectrum.from_csv("a,b\n1,2\n")


def test_coefficient_norm():
    assert CoefficientVector([3, 4j]).norm_star == pytest.approx(5.0)


# --- weights and the S-matrix -----------------------------------------------


def test_m1_weight_limit_and_continuity():
    assert float(m1_weight(0.0, 1.0)) == pytest.approx(1 / 16, rel=1e-15)
    assert float(m1_weight(1e-6, 1.0)) == pytest.approx(1 / 16, rel=1e-9)
    t = 2.0
    ref = (t * t + 0.25) / (t * t) * math.exp(-t * t / 4) * (1 - math.exp(-t * t / 4))
    assert float(m1_weight(t, 1.0)) == pytest.approx(ref, rel=1e-14)


def test_spectral_weights_modes():
    ts = np.array([0.0, 1.0, 5.0])
    s0 = SyntheticSpectrum(ts, np.ones(3), "m0")
    assert np.allclose(spectral_weights(s0, 2.0), np.exp(-ts ** 2 / 16))
    s1 = SyntheticSpectrum(ts, np.ones(3), "m1")
    assert np.all(spectral_weights(s1, 2.0) > 0)


def test_s_matrix_symmetric_with_weighted_diagonal():
    pts = SamplePoints.equally_spaced(10, 0.5)
    spectrum = weyl_synthetic(30, seed=1)
    S = s_matrix(pts, 5.0, spectrum)
    assert np.allclose(S, S.T)
    diag = np.sum(spectral_weights(spectrum, 5.0) * spectrum.periods ** 2)
    assert np.allclose(np.diag(S), diag)


def test_s_matrix_continuous_term():
    pts = SamplePoints.equally_spaced(10, 5.0)
    empty = SyntheticSpectrum(np.empty(0), np.empty(0))
    ts = np.linspace(0, 60, 6001)
    S = s_matrix(pts, 2.0, empty, continuous=(ts, np.ones_like(ts)))
    # (1/4pi) int_0^inf exp(-t^2/4T^2) cos(rt) dt = (T / (4 sqrt(pi))) exp(-T^2 r^2)
    r = pts.r_matrix()
    assert np.allclose(S, 2.0 / (4 * math.sqrt(math.pi)) * np.exp(-4.0 * r * r), atol=1e-10)


def test_s_matrix_rejects_bad_T():
    with pytest.raises(ValueError):
        s_matrix(SamplePoints.equally_spaced(10, 1.0), 0.0, weyl_synthetic(5))


# --- reduction and spacing --------------------------------------------------


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2 ** 32 - 1))
def test_dual_reduction_holds(R, J, seed):
    rng = np.random.default_rng(seed)
    V = rng.standard_normal((R, J)) + 1j * rng.standard_normal((R, J))
    a = CoefficientVector(rng.standard_normal(J) + 1j * rng.standard_normal(J))
    lhs, rhs = dual_reduction_bound(V, a)
    assert lhs <= rhs * (1 + 1e-12)


def test_dual_reduction_tight_for_orthogonal_rows():
    lhs, rhs = dual_reduction_bound(np.eye(3), CoefficientVector([1, 0, 0]))
    assert lhs == pytest.approx(rhs)


def test_dual_reduction_shape_check():
    with pytest.raises(ValueError):
        dual_reduction_bound(np.ones((2, 3)), CoefficientVector([1, 2]))


def test_spacing_sum_single_point():
    s, bound = spacing_sum(SamplePoints([10.0], 10.0, 1.0), 3.0)
    assert s == 1.0
    assert bound == pytest.approx(SPACING_C_RIGOROUS * (1 + 10 / 3))


@given(st.sampled_from([1.0, 10.0, 100.0]), st.sampled_from([10.0, 100.0]),
       st.sampled_from([0.01, 0.1, 1.0]), st.booleans())
def test_spacing_sum_below_rigorous_bound(T, X, delta, clustered):
    pts = SamplePoints.clustered(X, delta) if clustered else SamplePoints.equally_spaced(X, delta)
    s, bound = spacing_sum(pts, T)
    assert s <= bound


def test_spacing_constant_below_rigorous():
    C, rows = spacing_constant((1, 10), (10,), (0.1, 1))
    assert len(rows) == 8
    assert 0 < C <= SPACING_C_RIGOROUS
    assert C == max(r["ratio"] for r in rows)


# --- periods and experiments ------------------------------------------------


def test_period_recursion_factor():
    assert period_recursion_factor(1, 0.25) == pytest.approx(-math.sqrt(2.25 / 6.25))
    assert period_recursion_factor(0, 0.0) == 0.0
    assert period_recursion_factor(3, math.inf) == -1.0
    with pytest.raises(ValueError):
        period_recursion_factor(-1, 1.0)
    with pytest.raises(ValueError):
        period_recursion_factor(1, -1.0)


@given(st.integers(0, 50), st.floats(0.0, 1e6))
def test_period_recursion_factor_in_unit_interval(m, lam):
    q = period_recursion_factor(m, lam)
    assert -1.0 <= q <= 0.0


def test_weyl_synthetic_counting():
    spectrum = weyl_synthetic(60, seed=0)
    assert len(spectrum) == round(60 * 60 / 12)
    for t in (15.0, 30.0, 45.0):
        assert abs(np.sum(spectrum.eigen_ts <= t) - t * t / 12) <= 1
    assert len(weyl_synthetic(0)) == 0


def test_sieve_experiment_deterministic_and_bounded():
    pts = SamplePoints.equally_spaced(20, 0.5)
    spectrum = weyl_synthetic(40, seed=2)
    a = sieve_experiment(pts, 20.0, spectrum, trials=20, seed=7)
    b = sieve_experiment(pts, 20.0, spectrum, trials=20, seed=7)
    assert a == b
    assert a["params"]["partitioned"] is False
    assert a["params"]["max_r"] == pytest.approx(math.log(2))
    assert 0 < a["ratio_mean"] <= a["ratio_max"]
    assert a["ratio_max"] < 10
