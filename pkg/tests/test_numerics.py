from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from hypersieve.numerics import (
    ChebyshevInterpolant,
    QuadratureConfig,
    QuadratureError,
    RealInterval,
    decay_extent,
    erfc,
    fourier_integral,
    gauss_legendre,
    hyp2f1,
    quad,
    quad_sqrt_singular,
)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=-1)
    cfg = QuadratureConfig().replace(abs_tol=1e-6)
    assert cfg.abs_tol == 1e-6
    assert cfg.target(1e3) == 1e-6
    assert cfg.target(1e5) == pytest.approx(1e-5)


def test_interval_rejects_reversed_and_nan():
    with pytest.raises(ValueError):
        RealInterval(2.0, 1.0)
    with pytest.raises(ValueError):
        RealInterval(float("nan"))
    assert not RealInterval(0.0).bounded


@pytest.mark.parametrize("x", [0.0, 1e-8, 0.3, 1.0, 2.5, 2.999, 3.0, 3.001, 5.0, 10.0, 26.0])
def test_erfc_against_mpmath(x):
    ref = float(mp.erfc(x))
    assert erfc(x) == pytest.approx(ref, rel=1e-13, abs=1e-300)


def test_erfc_negative_and_vector():
    xs = np.linspace(-4, 4, 33)
    assert np.allclose(erfc(xs), special.erfc(xs), rtol=1e-13, atol=0)
    assert erfc(0.0) == 1.0


@given(st.floats(min_value=0.0, max_value=20.0))
def test_erfc_below_gaussian(x):
    assert erfc(x) <= math.exp(-x * x) * (1 + 1e-14)


@pytest.mark.parametrize("a,b,c,z", [
    (0.5, 0.5, 1.0, 0.3),
    (0.5, 0.5, 1.0, -0.9),
    (0.25 + 2j, 0.25 - 2j, 0.5, -3.0),
    (0.75 + 2j, 0.75 - 2j, 1.5, -40.0),
    (0.25 + 10j, 0.25 - 10j, 0.5, -1e4),
    (1.0, 2.0, 3.5, 0.97),
])
def test_hyp2f1_against_mpmath(a, b, c, z):
    ref = complex(mp.hyp2f1(a, b, c, z))
    got = complex(hyp2f1(a, b, c, z))
    assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref))


def test_hyp2f1_real_parameters_give_real():
    v = hyp2f1(0.5, 0.5, 1.0, 0.5)
    assert isinstance(v, float)
    assert v == pytest.approx(2 / math.pi * special.ellipk(0.5), rel=1e-13)


def test_quad_error_contract():
    assert quad(math.exp, RealInterval(0, 1)) == pytest.approx(math.e - 1, rel=1e-12)
    cfg = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=2)
    with pytest.raises(QuadratureError) as exc:
        quad(lambda x: math.sin(1 / x) if x else 0.0, RealInterval(0, 1), cfg)
    assert math.isfinite(exc.value.estimate)


def test_quad_sqrt_singular_beta_integral():
    # int_0^1 x^{-1/2} (1-x) dx = 2 - 2/3
    assert quad_sqrt_singular(lambda x: 1 - x, 0.0, 1.0) == pytest.approx(4 / 3, rel=1e-12)


def test_gauss_legendre_and_failure():
    assert gauss_legendre(np.cos, 0, math.pi / 2) == pytest.approx(1.0, rel=1e-13)
    with pytest.raises(QuadratureError):
        gauss_legendre(lambda x: np.sign(x - 0.3), 0, 1, QuadratureConfig(1e-15, 1e-15),
                       max_panels=64)


def test_decay_extent_and_fourier():
    g = lambda t: math.exp(-t * t)
    ext = decay_extent(g, 0.0)
    assert 5.0 < ext < 10.0
    # int e^{-t^2} cos(rho t) dt = sqrt(pi) e^{-rho^2/4}
    val = fourier_integral(g, 1.3, parity="even")
    assert val == pytest.approx(math.sqrt(math.pi) * math.exp(-1.3 ** 2 / 4), rel=1e-10)


def test_chebyshev_interpolant_calculus():
    ch = ChebyshevInterpolant.fit(np.exp, 0.0, 2.0, tol=1e-14)
    xs = np.linspace(0, 2, 17)
    assert np.max(np.abs(ch(xs) - np.exp(xs))) < 1e-13
    assert np.max(np.abs(ch.derivative()(xs) - np.exp(xs))) < 1e-11
    assert ch.integral() == pytest.approx(math.exp(2) - 1, rel=1e-13)
    assert ch.tail_integral()(0.5) == pytest.approx(math.exp(2) - math.exp(0.5), rel=1e-12)
    assert ch(3.0) == 0.0
