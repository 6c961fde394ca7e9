from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersieve.numerics import QuadratureConfig
from hypersieve.transforms import d0_direct, d1_direct, omega_from_d0, tau_from_d1
from hypersieve.window import (
    CLAUSES,
    TAU_PREFACTOR,
    TAU_PRINTED_PREFACTOR,
    BoundReport,
    WindowParams,
    baseline_key,
    d0_window,
    d0_window_spectral,
    d1_window,
    d1_window_spectral,
    f0_radial,
    f0_window,
    f1_radial,
    fd_derivative,
    format_constant,
    omega_window,
    read_baseline,
    run_clause,
    tail_integral_g0,
    tau_prime_window,
    tau_second_window,
    tau_window,
    write_baseline,
)

P = WindowParams(4.0, 0.1)
TIGHT = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-11)


@pytest.fixture(scope="module")
def radial():
    return f0_radial(P), f1_radial(P)


# --- parameters and closed forms --------------------------------------------


@pytest.mark.parametrize("T,r", [(0.5, 0.1), (4, 0.0), (4, 0.8), (float("nan"), 0.1)])
def test_params_validation(T, r):
    with pytest.raises(ValueError):
        WindowParams(T, r)


def test_params_B():
    assert WindowParams(1.0, 0.1).B == pytest.approx(1 / math.sqrt(2))
    assert WindowParams(2.0, math.log(2)).r == math.log(2)


def test_d_windows_at_zero_and_continuity():
    assert d0_window(0.0, P) == 1.0
    assert d1_window(0.0, P) == 0.125
    lo, hi = d1_window(0.999e-3, P), d1_window(1.001e-3, P)
    assert lo == pytest.approx(hi, rel=1e-8)


@given(st.floats(-30, 30))
def test_d_windows_even(t):
    assert d0_window(-t, P) == d0_window(t, P)
    assert d1_window(-t, P) == d1_window(t, P)


def test_tau_vanishes_at_origin_and_infinity():
    assert abs(tau_window(0.0, P)) < 1e-16
    assert abs(tau_window(60.0, P)) < 1e-20


def test_printed_prefactor_relation():
    assert TAU_PREFACTOR == pytest.approx(-TAU_PRINTED_PREFACTOR / (2 * math.sqrt(math.pi)))


@pytest.mark.parametrize("rho", [0.05, 0.1, 0.4, 1.3, 3.0])
def test_tau_derivatives_by_differences(rho):
    h = 1e-5
    fd1 = (tau_window(rho + h, P) - tau_window(rho - h, P)) / (2 * h)
    fd2 = (tau_prime_window(rho + h, P) - tau_prime_window(rho - h, P)) / (2 * h)
    assert tau_prime_window(rho, P) == pytest.approx(fd1, rel=1e-7, abs=1e-11)
    assert tau_second_window(rho, P) == pytest.approx(fd2, rel=1e-7, abs=1e-9)


@pytest.mark.parametrize("rho", [0.0, 0.1, 0.3, 1.0])
def test_profiles_from_spectral_side(rho):
    assert omega_from_d0(d0_window_spectral(P), rho) == pytest.approx(omega_window(rho, P), abs=1e-10)
    assert tau_from_d1(d1_window_spectral(P), rho) == pytest.approx(tau_window(rho, P), abs=1e-10)


# --- f0 and f1 ----------------------------------------------------------------


@pytest.mark.parametrize("t", [0.0, 0.5, 2.0, 5.0])
def test_window_functions_reproduce_their_transforms(radial, t):
    f0, f1 = radial
    assert d0_direct(f0, t, TIGHT) == pytest.approx(d0_window(t, P), abs=1e-10)
    assert d1_direct(f1, t, TIGHT) == pytest.approx(d1_window(t, P), abs=1e-10)


def test_cached_matches_direct(radial):
    f0, _ = radial
    for pv in (1.0, 1.01, 1.05, 1.3):
        assert float(f0(np.array([pv]))[0]) == pytest.approx(f0_window(pv, P), abs=1e-11)
    with pytest.raises(ValueError):
        f0_window(0.5, P)


@pytest.mark.parametrize("u", [0.25, 0.7, 2.0])
def test_tail_routes_agree(radial, u):
    for f in radial:
        a = tail_integral_g0(u, f, method="cosh")
        b = tail_integral_g0(u, f, method="sqrt")
        assert a == pytest.approx(b, rel=1e-9, abs=1e-14)
    with pytest.raises(ValueError):
        tail_integral_g0(u, radial[0], method="nope")


# --- bound suite --------------------------------------------------------------


def test_fd_derivative_one_sided_and_central():
    assert fd_derivative(math.sin, 0.0, 1e-4) == pytest.approx(1.0, rel=1e-7)
    assert fd_derivative(math.exp, 1.0, 1e-4) == pytest.approx(math.e, rel=1e-7)


def test_report_rejects_nonpositive_majorant():
    with pytest.raises(ValueError):
        BoundReport("a-i", P, [0.0], [1.0], [0.0], ["w<=2r"], 1.0)


@pytest.mark.parametrize("clause", CLAUSES)
def test_clause_ratio_within_twice_baseline(clause):
    rep = run_clause(clause, P)
    assert math.isfinite(rep.ratio_sup) and rep.ratio_sup > 0
    assert all(m > 0 for m in rep.majorant)
    assert rep.ratio_sup == pytest.approx(max(l / m for l, m in zip(rep.lhs, rep.majorant)))
    base = read_baseline()[baseline_key(clause, 4, 0.1)]
    assert base / 2 <= rep.ratio_sup <= 2 * base


def test_clause_a_richardson_check():
    rep = run_clause("a-ii", P)
    assert rep.notes["richardson_rel"] < 1e-3


def test_unknown_clause():
    with pytest.raises(ValueError):
        run_clause("d-i", P)


def test_baseline_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("HYPERSIEVE_BASELINE_DIR", str(tmp_path))
    vals = {"a-i/4/0.1": 0.123456789012, "spacing/C": 4.5}
    path = write_baseline(vals, header="test")
    assert path.parent == tmp_path
    text = path.read_text()
    assert text.startswith("# test") and "a-i/4/0.1=1.23456789e-01" in text
    assert read_baseline() == {"a-i/4/0.1": 1.23456789e-01, "spacing/C": 4.5}
    assert format_constant(1.0) == "1.00000000e+00"
