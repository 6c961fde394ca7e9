from __future__ import annotations

import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersieve import _kernels_py
from hypersieve.lattice import (
    CensusIncompleteWarning,
    DivergenceError,
    GeodesicFrame,
    GroupElement,
    HuberPoint,
    axis_reversal_flag,
    b_invariant,
    build_frame,
    census_csv,
    count_B,
    enumerate_cosets,
    enumerate_double_cosets,
    epsilon_flag,
    g0_geom,
    g1_geom,
    geometric_side,
    huber_coords,
    huber_series_A0,
    huber_series_A1,
    kernel_sum_F,
)
from hypersieve.transforms import KernelFunction, RadialTestFunction, k0_from_f

S = GroupElement(0, -1, 1, 0)
E_T = RadialTestFunction(lambda p: np.exp(-np.asarray(p)), lambda p: -np.exp(-np.asarray(p)),
                         (1.0, 1.0), "exp(-t)")


def _mul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _norm(g):
    return g if next(v for v in g if v) > 0 else tuple(-v for v in g)


def _brute_double_cosets(frame, X, H, H_big=100):
    """Union-find over generator moves inside a large box."""
    rows = [tuple(map(int, r)) for r in _kernels_py.enumerate_sl2(H_big)]
    idx = {_norm(r): i for i, r in enumerate(rows)}
    parent = list(range(len(rows)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    g0 = frame.generator.entries
    for i, r in enumerate(rows):
        for nb in (_mul(g0, r), _mul(r, g0)):
            j = idx.get(_norm(nb))
            if j is not None:
                parent[find(i)] = find(j)
    comps = set()
    for i, r in enumerate(rows):
        if max(map(abs, r)) > H or _mul(r, g0) == _mul(g0, r):
            continue
        if abs(b_invariant(GroupElement(*r), frame)) <= X + 1e-9:
            comps.add(find(i))
    return len(comps)


# --- coordinates and frames -------------------------------------------------


@pytest.mark.parametrize("z,u,v", [(1j, 0.0, 0.0), (2j, math.log(2), 0.0),
                                   (1 + 1j, math.log(math.sqrt(2)), -math.pi / 4)])
def test_huber_coords(z, u, v):
    h = huber_coords(z)
    assert h.u == pytest.approx(u, abs=1e-15) and h.v == pytest.approx(v, abs=1e-15)


def test_huber_coords_domain():
    with pytest.raises(ValueError):
        huber_coords(1.0 + 0j)


@given(st.floats(-5, 5), st.floats(-1.5, 1.5))
def test_huber_point_round_trip(u, v):
    h = HuberPoint(u, v)
    assert h.z.imag > 0
    back = huber_coords(h.z)
    assert back.u == pytest.approx(u, abs=1e-12) and back.v == pytest.approx(v, abs=1e-12)


def test_group_element_determinant():
    with pytest.raises(ValueError):
        GroupElement(1, 1, 1, 1)


def test_b_invariant_trivial_frame():
    triv = GeodesicFrame.trivial()
    assert b_invariant(GroupElement(1, 0, 0, 1), triv) == 1.0
    assert b_invariant(S, triv) == -1.0
    assert b_invariant(GroupElement(2, 1, 1, 1), triv) == 3.0


def test_default_frame(frame):
    assert frame.length == pytest.approx(2 * math.acosh(1.5), rel=1e-14)
    assert frame.length == pytest.approx(math.log(frame.norm_lambda), rel=1e-14)
    assert frame.residual() < 1e-12
    assert b_invariant(frame.generator, frame) == pytest.approx(1.0, abs=1e-10)
    assert np.linalg.det(frame.conjugator) == pytest.approx(1.0, abs=1e-12)


def test_real_generator_frame():
    fr = build_frame(np.diag([2.0, 0.5]))
    assert fr.length == pytest.approx(2 * math.log(2), rel=1e-14)


def test_non_hyperbolic_generator_rejected():
    with pytest.raises(ValueError):
        build_frame(GroupElement(1, 1, 0, 1))


@given(st.sampled_from([GroupElement(2, 1, 1, 1), GroupElement(3, 2, 1, 1),
                        GroupElement(5, 2, 2, 1)]),
       st.integers(-2, 2), st.integers(-2, 2))
def test_b_invariant_is_double_coset_invariant(g0, j, k):
    # entries grow like lambda^(|j|+|k|), so float B loses digits accordingly
    fr = build_frame(g0)
    g = GroupElement(4, 3, 5, 4)
    moved = g0.power(j) @ g @ g0.power(k)
    assert b_invariant(moved, fr) == pytest.approx(b_invariant(g, fr), rel=1e-7)


# --- cosets -----------------------------------------------------------------


def test_cosets_contain_identity_and_are_orbit_free(frame):
    cos = enumerate_cosets(frame, 3)
    assert GroupElement(1, 0, 0, 1) in cos
    g0 = frame.generator
    # no two representatives differ by a power of the generator on the left
    for i, a in enumerate(cos):
        for b in cos[i + 1:]:
            q = b @ a.inverse()
            assert not (q @ g0 == g0 @ q), (a, b)


def test_coset_count_against_brute_force(frame):
    # brute force: cosets are classes of gamma under gamma -> g0 gamma
    rows = [tuple(map(int, r)) for r in _kernels_py.enumerate_sl2(5)]
    g0 = frame.generator
    classes = []
    for r in rows:
        g = GroupElement(*r)
        if not any((g @ c.inverse()) @ g0 == g0 @ (g @ c.inverse()) for c in classes):
            classes.append(g)
    assert len(enumerate_cosets(frame, 5)) == len(classes)


def test_cosets_grow_with_H(frame):
    assert len(enumerate_cosets(frame, 6)) > len(enumerate_cosets(frame, 3))


# --- double cosets ----------------------------------------------------------


@pytest.mark.parametrize("X,H", [(10, 8), (30, 12)])
def test_double_coset_count_against_union_find(frame, X, H):
    assert count_B(frame, X, H) == _brute_double_cosets(frame, X, H)


def test_census_saturation_and_pairing(frame):
    c = enumerate_double_cosets(frame, 10, 50)
    assert c.saturated
    assert all(abs(r.B) <= 10 for r in c)
    regular = sorted(round(r.B, 9) for r in c.regular)
    assert regular == sorted(-b for b in regular)
    # the zero-diagonal class pairs with the excluded identity class
    assert [r.B for r in c.unit_classes] == [pytest.approx(-1.0)]
    # gamma -> S gamma maps each class to a class with the opposite B
    Bs = {round(r.B, 9) for r in c}
    for r in c.regular:
        assert round(b_invariant(S @ r.element, frame), 9) in Bs
        assert b_invariant(S @ r.element, frame) == pytest.approx(-r.B, abs=1e-9)


def test_census_warns_when_unsaturated(frame):
    with pytest.warns(CensusIncompleteWarning):
        c = enumerate_double_cosets(frame, 200, 4)
    assert c.saturated is False


def test_count_B_small_and_monotone(frame):
    assert count_B(frame, 0.5, 32) == 0
    counts = [count_B(frame, X, 32) for X in (1, 5, 10, 20, 40)]
    assert counts == sorted(counts)


def test_exact_B_matches_float(frame):
    for r in enumerate_double_cosets(frame, 20, 16, check=False):
        assert b_invariant(r.element, frame) == pytest.approx(r.B, abs=1e-9)
        assert r.height >= 1


def test_census_csv(frame):
    c = enumerate_double_cosets(frame, 5, 8, check=False)
    lines = census_csv(c).splitlines()
    assert lines[0] == "a,b,c,d,B,height"
    assert len(lines) == len(c) + 1
    Bs = [abs(float(ln.split(",")[4])) for ln in lines[1:]]
    assert Bs == sorted(Bs)


# --- g0 / g1 ----------------------------------------------------------------


def _g0_oracle(B):
    mp.mp.dps = 25
    lo = max(B * B, 1)
    return float(mp.quad(lambda t: mp.exp(-t) / mp.sqrt((t - B * B) * (t - 1)), [lo, lo + 1, mp.inf]))


@pytest.mark.parametrize("B", [0.0, 0.5, 2.0, 3.0])
def test_g0_against_mpmath(B):
    assert g0_geom(B, E_T) == pytest.approx(_g0_oracle(B), rel=1e-8)


@given(st.floats(0.0, 4.0).filter(lambda b: abs(b - 1) > 1e-3))
def test_g0_even_g1_odd(B):
    assert g0_geom(-B, E_T) == pytest.approx(g0_geom(B, E_T), rel=1e-10, abs=1e-14)
    assert g1_geom(-B, E_T) == pytest.approx(-g1_geom(B, E_T), rel=1e-10, abs=1e-14)


def test_g1_zero_and_divergence():
    assert g1_geom(0.0, E_T) == 0.0
    with pytest.raises(DivergenceError):
        g0_geom(1.0, E_T)
    # f(1) = 0 removes the singularity
    f = RadialTestFunction(lambda p: (np.asarray(p) - 1) * np.exp(-np.asarray(p)),
                           lambda p: (2 - np.asarray(p)) * np.exp(-np.asarray(p)), (1.0, 0.5))
    assert math.isfinite(g0_geom(1.0, f))


def test_g1_derivative_form_is_an_x_derivative():
    # g1(B)/B = 2 int (x f(x^2+1))' / sqrt(x^2+1-B^2) dx; check at B = 0 by parts
    mp.mp.dps = 25
    ref = float(mp.quad(lambda x: 2 * mp.diff(lambda y: y * mp.exp(-(y * y + 1)), x)
                        / mp.sqrt(x * x + 1 - mp.mpf("0.25")), [0, 1, mp.inf]))
    assert g1_geom(0.5, E_T) / 0.5 == pytest.approx(ref, rel=1e-8)


# --- series -----------------------------------------------------------------


def test_series_of_zero_function(frame):
    z = RadialTestFunction.zero()
    assert huber_series_A0(z, 1j, frame, 10) == 0.0
    assert huber_series_A1(z, 1j, frame, 10) == 0.0
    assert kernel_sum_F(KernelFunction.zero(), 0.3 + 1j, 0.0, frame, 10) == 0.0


def test_huber_series_saturates(frame, exp_f):
    a = huber_series_A0(exp_f, 1 / 3 + 1j, frame, 50)
    b = huber_series_A0(exp_f, 1 / 3 + 1j, frame, 100)
    assert abs(a - b) < 1e-12


def test_A1_vanishes_for_reversible_axis(frame, exp_f):
    # the zero-diagonal element reverses the axis and flips the sign of tan v
    assert abs(huber_series_A1(exp_f, 0.3 + 1.2j, frame, 40)) < 1e-12


def test_kernel_sum_matches_series(frame, exp_f):
    k0 = k0_from_f(exp_f).tabulated()
    a = huber_series_A0(exp_f, 0.7 + 2j, frame, 50)
    assert kernel_sum_F(k0, 0.7 + 2j, 0.0, frame, 50) == pytest.approx(a, rel=1e-9)


def test_kernel_sum_domain(frame):
    with pytest.raises(ValueError):
        kernel_sum_F(KernelFunction.exponential(), -1j, 0.0, frame, 5)


# --- epsilon and geometric side ---------------------------------------------


def test_epsilon_flag():
    assert epsilon_flag(1) == 1
    assert epsilon_flag(10) == 1
    gamma2 = lambda g: g.a % 2 == 1 and g.d % 2 == 1 and g.b % 2 == 0 and g.c % 2 == 0
    assert epsilon_flag(10, member=gamma2) == 0


def test_axis_reversal_flag(frame):
    assert axis_reversal_flag(frame) == 1
    assert axis_reversal_flag(build_frame(GroupElement(3, 2, 1, 1)), 20) == 0


def test_geometric_side_zero_function(frame):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert geometric_side("a", RadialTestFunction.zero(), frame, 5, 8) == 0.0


def test_geometric_side_variant_b_cancels(frame):
    val = geometric_side("b", E_T, frame, 30, 16)
    assert abs(val) < 1e-12
