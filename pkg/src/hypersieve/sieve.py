"""Large sieve skeleton on synthetic spectra.

The spectral data here are synthetic: a list of spectral parameters ``t_j``
with periods ``u_j``.  The functions exercise the steps of the sieve argument
(the S-matrix, the duality reduction, the Gaussian spacing sum) and measure the
implied constants rather than prove anything.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "SyntheticSpectrum", "SamplePoints", "CoefficientVector", "SPACING_C_RIGOROUS",
    "m1_weight", "spectral_weights", "s_matrix", "dual_reduction_bound", "spacing_sum",
    "spacing_constant", "period_recursion_factor", "sieve_experiment", "weyl_synthetic",
]

# sum_nu exp(-T^2 r^2 / 2) <= 1 + 2 sqrt(2 pi) X / (delta T) <= C (1 + X / (delta T))
SPACING_C_RIGOROUS = 2.0 * math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass
class SyntheticSpectrum:
    """Sorted spectral parameters with one real period each."""

    eigen_ts: np.ndarray
    periods: np.ndarray
    weight_mode: str = "m0"

    def __post_init__(self):
        self.eigen_ts = np.asarray(self.eigen_ts, dtype=float).reshape(-1)
        self.periods = np.asarray(self.periods, dtype=float).reshape(-1)
        if self.eigen_ts.shape != self.periods.shape:
            raise ValueError("eigen_ts and periods differ in length")
        if np.any(np.diff(self.eigen_ts) < 0):
            raise ValueError("eigen_ts must be sorted ascending")
        if self.weight_mode not in ("m0", "m1"):
            raise ValueError("weight_mode must be 'm0' or 'm1'")

    def __len__(self) -> int:
        return len(self.eigen_ts)

    def to_csv(self) -> str:
        lines = ["t,period"]
        lines += [f"{t:.12g},{u:.12g}" for t, u in zip(self.eigen_ts, self.periods)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, weight_mode: str = "m0") -> "SyntheticSpectrum":
        rows = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or rows[0].replace(" ", "") != "t,period":
            raise ValueError("expected a 't,period' header")
        if len(rows) == 1:
            return cls(np.empty(0), np.empty(0), weight_mode)
        data = np.loadtxt(io.StringIO("\n".join(rows[1:])), delimiter=",", ndmin=2)
        order = np.argsort(data[:, 0], kind="stable")
        return cls(data[order, 0], data[order, 1], weight_mode)


@dataclass
class SamplePoints:
    """Points in ``[X, 2X]`` with pairwise gaps of at least ``delta``."""

    xs: np.ndarray
    X: float
    delta: float

    def __post_init__(self):
        self.xs = np.sort(np.asarray(self.xs, dtype=float).reshape(-1))
        if not self.X > 1:
            raise ValueError("X must exceed 1")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        tol = 1e-12 * self.X
        if np.any(self.xs < self.X - tol) or np.any(self.xs > 2 * self.X + tol):
            raise ValueError("sample points must lie in [X, 2X]")
        if len(self.xs) > 1 and np.min(np.diff(self.xs)) < self.delta * (1 - 1e-9):
            raise ValueError("sample points closer than delta")

    def __len__(self) -> int:
        return len(self.xs)

    @classmethod
    def equally_spaced(cls, X: float, delta: float, count: Optional[int] = None) -> "SamplePoints":
        """``count`` points at gap ``delta`` starting at ``X`` (as many as fit by default)."""
        fit = int(math.floor(X / delta * (1 + 1e-12))) + 1
        n = fit if count is None else min(count, fit)
        return cls(X + delta * np.arange(n), X, delta)

    @classmethod
    def clustered(cls, X: float, delta: float, cluster: int = 64, sparse: int = 8) -> "SamplePoints":
        """A run of ``cluster`` points at gap exactly ``delta`` ending at ``2X``, plus a sparse sprinkle."""
        fit = int(math.floor(X / delta * (1 + 1e-12))) + 1
        k = min(cluster, fit)
        tight = 2 * X - delta * np.arange(k)
        lo = tight[-1] - delta
        rest = np.linspace(X, lo, sparse) if lo > X else np.empty(0)
        pts = np.concatenate([tight, rest])
        keep = [pts[0]]
        for x in sorted(pts[1:], reverse=True):
            if keep[-1] - x >= delta * (1 - 1e-12):
                keep.append(x)
        return cls(np.array(keep), X, delta)

    def r_matrix(self) -> np.ndarray:
        lx = np.log(self.xs)
        return np.abs(lx[:, None] - lx[None, :])


@dataclass
class CoefficientVector:
    a: np.ndarray
    norm_star: float = field(init=False)

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=complex).reshape(-1)
        self.norm_star = float(np.linalg.norm(self.a))


# ---------------------------------------------------------------------------
# S-matrix
# ---------------------------------------------------------------------------


def m1_weight(t, T: float) -> np.ndarray:
    """``(lambda / t^2) exp(-t^2 / 4T^2) (1 - exp(-t^2 / 4))`` with ``lambda = t^2 + 1/4``.

    At ``t = 0`` the value is the limit ``lambda / 4 = 1/16``.
    """
    t = np.asarray(t, dtype=float)
    lam = t * t + 0.25
    t2 = np.where(t == 0, 1.0, t * t)
    ratio = np.where(t == 0, 0.25, -np.expm1(-t2 / 4.0) / t2)
    return lam * ratio * np.exp(-t * t / (4.0 * T * T))


def spectral_weights(spectrum: SyntheticSpectrum, T: float) -> np.ndarray:
    t = spectrum.eigen_ts
    if spectrum.weight_mode == "m0":
        return np.exp(-t * t / (4.0 * T * T))
    return m1_weight(t, T)


def s_matrix(pts: SamplePoints, T: float, spectrum: SyntheticSpectrum,
             continuous: Optional[tuple[np.ndarray, np.ndarray]] = None) -> np.ndarray:
    """``S[nu, mu] = sum_j w_j(T) cos(r_{nu mu} t_j) u_j^2``.

    ``continuous = (ts, density)`` adds ``(1/4 pi) int exp(-t^2/4T^2) cos(r t) density(t) dt``
    by the trapezoid rule on the given grid.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    r = pts.r_matrix()
    w = spectral_weights(spectrum, T) * spectrum.periods ** 2
    S = np.cos(r[..., None] * spectrum.eigen_ts) @ w if len(spectrum) else np.zeros_like(r)
    if continuous is not None:
        ts, dens = (np.asarray(x, dtype=float) for x in continuous)
        g = np.exp(-ts * ts / (4.0 * T * T)) * dens
        S = S + np.trapezoid(np.cos(r[..., None] * ts) * g, ts, axis=-1) / (4 * math.pi)
    return S


# ---------------------------------------------------------------------------
# reduction and spacing
# ---------------------------------------------------------------------------


def dual_reduction_bound(V: np.ndarray, a: CoefficientVector) -> tuple[float, float]:
    """``lhs = sum_nu |(V a)_nu|^2`` and ``rhs = ||a||^2 max_mu sum_nu |(V V*)_{mu nu}|``.

    ``lhs <= rhs`` because the largest eigenvalue of ``V V*`` is at most its
    largest absolute row sum.
    """
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2 or V.shape[1] != len(a.a):
        raise ValueError("V must be R x J with J = len(a)")
    lhs = float(np.sum(np.abs(V @ a.a) ** 2))
    G = V @ V.conj().T
    rhs = a.norm_star ** 2 * float(np.max(np.sum(np.abs(G), axis=1))) if G.size else 0.0
    return lhs, rhs


def _gauss_row_sums(xs: np.ndarray, T: float, chunk: int = 2048) -> np.ndarray:
    lx = np.log(xs)
    out = np.empty(len(xs))
    for s in range(0, len(xs), chunk):
        d = lx[s:s + chunk, None] - lx[None, :]
        out[s:s + chunk] = np.exp(-0.5 * T * T * d * d).sum(axis=1)
    return out


def spacing_sum(pts: SamplePoints, T: float, C: float = SPACING_C_RIGOROUS) -> tuple[float, float]:
    """``max_mu sum_nu exp(-T^2 r_{mu nu}^2 / 2)`` and the bound ``C (1 + X / (delta T))``."""
    total = float(np.max(_gauss_row_sums(pts.xs, T))) if len(pts) else 0.0
    return total, C * (1.0 + pts.X / (pts.delta * T))


def spacing_constant(grid_T: Sequence[float] = (1, 10, 100), grid_X: Sequence[float] = (10, 100),
                     grid_delta: Sequence[float] = (0.01, 0.1, 1)) -> tuple[float, list[dict]]:
    """Smallest ``C`` with ``spacing_sum <= C (1 + X / (delta T))`` over the grid.

    Both the equally spaced and the clustered layouts are included.
    """
    rows = []
    for T in grid_T:
        for X in grid_X:
            for d in grid_delta:
                for layout in ("equal", "clustered"):
                    pts = (SamplePoints.equally_spaced(X, d) if layout == "equal"
                           else SamplePoints.clustered(X, d))
                    s, _ = spacing_sum(pts, T, 1.0)
                    rows.append(dict(T=T, X=X, delta=d, layout=layout, R=len(pts), sum=s,
                                     ratio=s / (1.0 + X / (d * T))))
    return max(r["ratio"] for r in rows), rows


# ---------------------------------------------------------------------------
# periods and experiments
# ---------------------------------------------------------------------------


def period_recursion_factor(m: int, lam: float) -> float:
    """``-sqrt((m^2 + m + lam) / (m^2 + 3m + 2 + lam))``, the ratio of periods of weight ``m+2`` and ``m``."""
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if math.isinf(lam):
        return -1.0
    num = m * m + m + lam
    return -math.sqrt(num / (m * m + 3 * m + 2 + lam)) if num > 0 else 0.0


def sieve_experiment(pts: SamplePoints, T: float, spectrum: SyntheticSpectrum, trials: int = 50,
                     seed: int = 0) -> dict:
    """Distribution of ``sum_nu |sum_{|t_j| <= T} a_j x_nu^{i t_j} u_j|^2 / ((T + X/delta) ||a||^2)``.

    Coefficients are complex Gaussian vectors drawn from a seeded generator.
    """
    rng = np.random.default_rng(seed)
    sel = np.abs(spectrum.eigen_ts) <= T
    ts, us = spectrum.eigen_ts[sel], spectrum.periods[sel]
    V = np.exp(1j * np.outer(np.log(pts.xs), ts)) * us
    scale = T + pts.X / pts.delta
    ratios = []
    for _ in range(trials):
        a = rng.standard_normal(len(ts)) + 1j * rng.standard_normal(len(ts))
        n2 = float(np.sum(np.abs(a) ** 2))
        lhs = float(np.sum(np.abs(V @ a) ** 2))
        ratios.append(lhs / (scale * n2) if n2 > 0 else 0.0)
    ratios = np.array(ratios) if ratios else np.zeros(1)
    return {
        "seed": int(seed),
        "params": {"T": float(T), "X": float(pts.X), "delta": float(pts.delta), "R": len(pts),
                   "J": int(sel.sum()), "trials": int(trials), "weight_mode": spectrum.weight_mode,
                   "max_r": float(np.max(pts.r_matrix())) if len(pts) else 0.0,
                   "partitioned": False},
        "ratio_max": float(np.max(ratios)),
        "ratio_mean": float(np.mean(ratios)),
    }


def weyl_synthetic(T_max: float, density_const: float = 1.0 / 12.0, seed: int = 0,
                   decay: float = 0.5, weight_mode: str = "m0") -> SyntheticSpectrum:
    """Stratified spectrum with ``#{t_j <= t} ~ density_const t^2`` on ``[0, T_max]``.

    ``t_j = T_max sqrt((j + U_j) / n)`` with uniform jitter ``U_j``; periods are
    Gaussian and damped by ``(1 + t_j)^(-decay)``.
    """
    n = int(round(density_const * T_max * T_max)) if T_max > 0 else 0
    rng = np.random.default_rng(seed)
    if n == 0:
        return SyntheticSpectrum(np.empty(0), np.empty(0), weight_mode)
    ts = T_max * np.sqrt((np.arange(n) + rng.uniform(size=n)) / n)
    periods = rng.standard_normal(n) * (1.0 + ts) ** (-decay)
    return SyntheticSpectrum(ts, periods, weight_mode)
