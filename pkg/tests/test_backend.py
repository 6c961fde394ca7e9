from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersieve import _backend, _kernels_py
from hypersieve.lattice import default_frame

compiled = pytest.importorskip("hypersieve._kernels", reason="compiled extension not built")


def test_backend_selected():
    assert _backend.BACKEND in ("cython", "python")
    if os.environ.get("HYPERSIEVE_PURE_PYTHON") is None:
        assert _backend.BACKEND == "cython"


def test_pure_python_switch():
    code = "from hypersieve import _backend; print(_backend.BACKEND)"
    env = dict(os.environ, HYPERSIEVE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("H", [1, 2, 5, 17])
def test_enumerate_sl2_agrees(H):
    a = compiled.enumerate_sl2(H)
    b = _kernels_py.enumerate_sl2(H)
    assert np.array_equal(np.asarray(a), b)
    assert np.all(b[:, 0] * b[:, 3] - b[:, 1] * b[:, 2] == 1)
    assert np.abs(b).max() <= H


def test_enumerate_sl2_is_complete_up_to_sign():
    # brute force over the box: every det-1 matrix appears as exactly one of +-g
    H = 4
    rng = range(-H, H + 1)
    brute = {(a, b, c, d) for a in rng for b in rng for c in rng for d in rng if a * d - b * c == 1}
    rows = {tuple(r) for r in _kernels_py.enumerate_sl2(H).tolist()}
    assert len(rows) * 2 == len(brute)
    assert all(r in brute and tuple(-x for x in r) in brute for r in rows)


@settings(max_examples=25)
@given(st.integers(0, 2 ** 32 - 1))
def test_canonical_double_agrees(seed):
    fr = default_frame()
    rows = _kernels_py.enumerate_sl2(12)
    idx = np.random.default_rng(seed).choice(len(rows), size=40, replace=False)
    C = fr.conjugate(rows[idx])
    cols = [np.ascontiguousarray(C[:, k]) for k in range(4)]
    a = compiled.canonical_double(*cols, fr.mu)
    b = _kernels_py.canonical_double(*cols, fr.mu)
    for x, y in zip(a, b):
        assert np.allclose(np.asarray(x), np.asarray(y), rtol=1e-12, atol=1e-12)
