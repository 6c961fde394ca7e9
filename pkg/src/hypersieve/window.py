"""
The Gaussian window pair ``(f0, f1)`` and its bound suite.

``f0`` and ``f1`` are defined implicitly by their Huber transforms

    d0_t(f0) = exp(-t^2/4T^2) cos(r t)
    d1_t(f1) = exp(-t^2/4T^2) (1 - exp(-t^2/4)) cos(r t) / (2 t^2)

whose profiles ``omega`` and ``tau`` have closed forms in Gaussians and
``erfc``.  Values of ``f0`` and ``f1`` come from the inversion integral and
are cached per window as Chebyshev interpolants in the distance variable
``w`` (``p = cosh^2 w``).

The bound suite measures ``ratio_sup = max lhs / majorant`` for each clause on
fixed grids, turning the implied constants of the estimates into numbers that
can be stored in a baseline file and regression-tested.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .numerics import (
    DEFAULT_CONFIG,
    SQRT_PI,
    ChebyshevInterpolant,
    QuadratureConfig,
    RealInterval,
    erfc,
    quad,
)
from .transforms import (
    RadialTestFunction,
    ReconstructionProfile,
    SpectralFunction,
    _inversion_integral,
)

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class WindowParams:
    T: float
    r: float

    def __post_init__(self):
        if not self.T >= 1:
            raise ValueError(f"T must be >= 1, got {self.T}")
        if not 0 < self.r <= LOG2 + 1e-15:
            raise ValueError(f"r must lie in (0, log 2], got {self.r}")

    @property
    def B(self) -> float:
        return self.T / math.sqrt(self.T * self.T + 1.0)


@dataclass
class BoundReport:
    clause: str
    params: WindowParams
    grid: list
    lhs: list
    majorant: list
    regime: list
    ratio_sup: float
    excluded: int = 0
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(not m > 0 for m in self.majorant):
            raise ValueError("majorant entries must be positive")


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def d0_window(t, p: WindowParams):
    t = np.asarray(t, dtype=float)
    out = np.exp(-t * t / (4 * p.T * p.T)) * np.cos(p.r * t)
    return float(out) if out.ndim == 0 else out


def d1_window(t, p: WindowParams):
    """``exp(-t^2/4T^2) (1 - exp(-t^2/4)) cos(rt) / (2t^2)``, equal to 1/8 at ``t = 0``."""
    t = np.asarray(t, dtype=float)
    t2 = t * t
    small = np.abs(t) < 1e-3
    safe = np.where(small, 1.0, t2)
    core = np.where(small, 0.125 - t2 / 64.0, -np.expm1(-safe / 4.0) / (2.0 * safe))
    out = np.exp(-t2 / (4 * p.T * p.T)) * core * np.cos(p.r * t)
    return float(out) if out.ndim == 0 else out


def d0_window_spectral(p: WindowParams) -> SpectralFunction:
    return SpectralFunction(lambda t: d0_window(t, p), "even", (1.0, 1.0 / (4 * p.T * p.T)), "d0_window")


def d1_window_spectral(p: WindowParams) -> SpectralFunction:
    return SpectralFunction(lambda t: d1_window(t, p), "even", (0.125, 1.0 / (4 * p.T * p.T)), "d1_window")


def omega_window(x, p: WindowParams):
    """``(T / 2 sqrt pi) (exp(-T^2 (x-r)^2) + exp(-T^2 (x+r)^2))``."""
    x = np.asarray(x, dtype=float)
    T, r = p.T, p.r
    out = T / (2 * SQRT_PI) * (np.exp(-(T * (x - r)) ** 2) + np.exp(-(T * (x + r)) ** 2))
    return float(out) if out.ndim == 0 else out


def omega_prime_window(x, p: WindowParams):
    x = np.asarray(x, dtype=float)
    T, r = p.T, p.r
    out = -(T ** 3) / SQRT_PI * ((x - r) * np.exp(-(T * (x - r)) ** 2) + (x + r) * np.exp(-(T * (x + r)) ** 2))
    return float(out) if out.ndim == 0 else out


# The printed closed form carries sqrt(pi)/4; the normalisation that makes the
# f1 inversion exact multiplies it by -1/(2 sqrt pi), giving -1/8.
TAU_PRINTED_PREFACTOR = SQRT_PI / 4.0
TAU_PREFACTOR = -0.125


def tau_window(rho, p: WindowParams, prefactor: float = TAU_PREFACTOR):
    """``c [erfc(T(rho-r)) - erfc(B(rho-r)) + erfc(T(rho+r)) - erfc(B(rho+r))]``."""
    rho = np.asarray(rho, dtype=float)
    T, B, r = p.T, p.B, p.r
    out = prefactor * (erfc(T * (rho - r)) - erfc(B * (rho - r)) + erfc(T * (rho + r)) - erfc(B * (rho + r)))
    return float(out) if np.ndim(out) == 0 else out


def tau_prime_window(rho, p: WindowParams, prefactor: float = TAU_PREFACTOR):
    rho = np.asarray(rho, dtype=float)
    T, B, r = p.T, p.B, p.r
    g = lambda a, x: a * np.exp(-(a * x) ** 2)
    out = -2.0 / SQRT_PI * prefactor * (g(T, rho - r) - g(B, rho - r) + g(T, rho + r) - g(B, rho + r))
    return float(out) if out.ndim == 0 else out


def tau_second_window(rho, p: WindowParams, prefactor: float = TAU_PREFACTOR):
    rho = np.asarray(rho, dtype=float)
    T, B, r = p.T, p.B, p.r
    g = lambda a, x: -2.0 * a ** 3 * x * np.exp(-(a * x) ** 2)
    out = -2.0 / SQRT_PI * prefactor * (g(T, rho - r) - g(B, rho - r) + g(T, rho + r) - g(B, rho + r))
    return float(out) if out.ndim == 0 else out


def _extent(p: WindowParams) -> float:
    # both Gaussians below ~1e-19 of their peak
    return p.r + 6.6 / p.B


def window_profile0(p: WindowParams) -> ReconstructionProfile:
    return ReconstructionProfile(
        omega=lambda x: omega_window(x, p),
        omega_deriv=lambda x: omega_prime_window(x, p),
        extent=p.r + 6.6 / p.T,
    )


def window_profile1(p: WindowParams) -> ReconstructionProfile:
    return ReconstructionProfile(
        tau=lambda x: tau_window(x, p),
        tau_deriv=lambda x: tau_prime_window(x, p),
        tau_deriv2=lambda x: tau_second_window(x, p),
        extent=_extent(p),
    )


# ---------------------------------------------------------------------------
# f0 and f1
# ---------------------------------------------------------------------------

_INV_CFG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12)


def _fine_zone(p: WindowParams) -> tuple[float, float]:
    # the Gaussians around +-r need 1/T resolution; the rest varies on unit scale
    return (max(p.r - 9.0 / p.T, 0.0), p.r + 9.0 / p.T)


def F0(w: float, p: WindowParams, cfg: QuadratureConfig = _INV_CFG) -> float:
    """``f0(cosh^2 w)`` by the inversion integral."""
    prof = window_profile0(p)
    return _inversion_integral(prof.omega_deriv, abs(float(w)), prof.extent, cfg,
                               scale=min(1.0, 1.0 / p.T), focus=(p.r,), zone=_fine_zone(p))


def F1(w: float, p: WindowParams, cfg: QuadratureConfig = _INV_CFG) -> float:
    """``f1(cosh^2 w)``; ``kappa'`` is taken from the closed-form ``tau`` and ``tau'``."""
    prof = window_profile1(p)
    return _inversion_integral(prof.kappa_deriv, abs(float(w)), prof.extent, cfg,
                               scale=min(1.0, 1.0 / p.T), focus=(p.r,), zone=_fine_zone(p))


class WindowCache:
    """Chebyshev caches of ``F0(w)`` and ``G(w) = sinh(w) F1(w)`` on ``[0, extent]``."""

    _store: dict = {}

    def __init__(self, p: WindowParams, tol: float = 1e-13):
        self.p = p
        vec = lambda fn: (lambda ws: np.array([fn(float(w), p) for w in np.atleast_1d(ws)]))
        n0 = 8
        self.F0 = ChebyshevInterpolant.fit(vec(F0), 0.0, p.r + 6.6 / p.T, tol=tol, rel_tol=1e-13,
                                           initial_panels=n0)
        g = lambda w, q: math.sinh(w) * F1(w, q)
        self.G = ChebyshevInterpolant.fit(vec(g), 0.0, _extent(p), tol=tol, rel_tol=1e-13,
                                          initial_panels=n0 + 8)
        self.dG = self.G.derivative()

    @classmethod
    def get(cls, p: WindowParams) -> "WindowCache":
        if p not in cls._store:
            cls._store[p] = cls(p)
        return cls._store[p]

    def dxG(self, x):
        """``(x f1(x^2+1))'`` as a function of ``x``."""
        w = np.arcsinh(np.asarray(x, dtype=float))
        return self.dG(w) / np.cosh(w)


def _radial_from_w(Fw: ChebyshevInterpolant, name: str) -> RadialTestFunction:
    dF = Fw.derivative()
    d2F0 = float(dF.derivative()(0.0))

    def f(pv):
        pv = np.asarray(pv, dtype=float)
        return Fw(np.arccosh(np.sqrt(np.maximum(pv, 1.0))))

    def fp(pv):
        pv = np.asarray(pv, dtype=float)
        w = np.arccosh(np.sqrt(np.maximum(pv, 1.0)))
        small = w < 1e-5
        ws = np.where(small, 1.0, w)
        # dp/dw = sinh(2w); at w -> 0, F'(w)/sinh(2w) -> F''(0)/2
        return np.where(small, 0.5 * d2F0, dF(ws) / np.sinh(2 * ws))

    return RadialTestFunction(f, fp, (1.0, 0.0), name)


def f0_radial(p: WindowParams) -> RadialTestFunction:
    """``f0`` as a cached :class:`RadialTestFunction`."""
    return _radial_from_w(WindowCache.get(p).F0, f"f0[T={p.T},r={p.r}]")


def f1_radial(p: WindowParams) -> RadialTestFunction:
    cache = WindowCache.get(p)
    G = cache.G

    def F(w):
        w = np.asarray(w, dtype=float)
        small = w < 1e-6
        ws = np.where(small, 1.0, w)
        return np.where(small, float(cache.dG(0.0)), G(ws) / np.sinh(ws))

    # wrap the quotient in its own interpolant so derivatives stay exact
    Fw = ChebyshevInterpolant.fit(F, 0.0, G.b, tol=1e-13, initial_panels=len(G.coeffs))
    return _radial_from_w(Fw, f"f1[T={p.T},r={p.r}]")


def f0_window(p_val: float, p: WindowParams, cfg: QuadratureConfig = _INV_CFG) -> float:
    if p_val < 1:
        raise ValueError("p_val must be >= 1")
    return F0(math.acosh(math.sqrt(p_val)), p, cfg)


def f1_window(p_val: float, p: WindowParams, cfg: QuadratureConfig = _INV_CFG) -> float:
    if p_val < 1:
        raise ValueError("p_val must be >= 1")
    return F1(math.acosh(math.sqrt(p_val)), p, cfg)


# ---------------------------------------------------------------------------
# integrals against the window
# ---------------------------------------------------------------------------


def _theta_extent(u: float, x_max: float) -> float:
    return math.acosh(max(x_max / u, 1.0))


def tail_form(u: float, h: Callable, x_max: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_u^inf h(x) / sqrt(x^2 - u^2) dx`` for ``u > 0`` via ``x = u cosh(theta)``."""
    if u <= 0:
        raise ValueError("tail_form needs u > 0")
    if u >= x_max:
        return 0.0
    th = _theta_extent(u, x_max)
    return quad(lambda q: float(h(u * math.cosh(q))), RealInterval(0.0, th), cfg)


def intersect_form(u: float, h: Callable, x_max: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_0^inf h(x) / sqrt(x^2 + u^2) dx`` for ``u > 0`` via ``x = u sinh(theta)``."""
    if u <= 0:
        raise ValueError("intersect_form needs u > 0")
    th = math.asinh(x_max / u)
    return quad(lambda q: float(h(u * math.sinh(q))), RealInterval(0.0, th), cfg)


def _x_extent(f: RadialTestFunction, cfg: QuadratureConfig) -> float:
    from .transforms import _sharp_p_extent

    return math.sqrt(max(_sharp_p_extent(f, cfg) - 1.0, 0.0))


def tail_integral_g0(u: float, f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
                     method: str = "cosh") -> float:
    """``int_u^inf f(x^2+1) / sqrt(x^2 - u^2) dx``.

    ``method='cosh'`` substitutes ``x = u cosh(theta)``; ``'sqrt'`` substitutes
    ``x = u + s^2``.  At ``u = 0`` the integral diverges unless ``f(1) = 0``.
    """
    x_max = _x_extent(f, cfg)
    h = lambda x: float(f(np.array([x * x + 1.0]))[0])
    if u == 0:
        if abs(h(0.0)) > 0:
            raise ArithmeticError("integral diverges logarithmically at u = 0 when f(1) != 0")
        return quad(lambda x: h(x) / x if x > 0 else 0.0, RealInterval(0.0, x_max), cfg)
    if method == "cosh":
        return tail_form(u, h, x_max, cfg)
    if method == "sqrt":
        if u >= x_max:
            return 0.0
        s_max = math.sqrt(x_max - u)
        g = lambda s: 2.0 * h(u + s * s) / math.sqrt(2 * u + s * s)
        return quad(g, RealInterval(0.0, s_max), cfg)
    raise ValueError(f"unknown method {method!r}")


def intersect_integral(u: float, f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_0^inf f(x^2+1) / sqrt(x^2 + u^2) dx``; meant for ``u >> 1``."""
    x_max = _x_extent(f, cfg)
    h = lambda x: float(f(np.array([x * x + 1.0]))[0])
    return intersect_form(u, h, x_max, cfg)


# ---------------------------------------------------------------------------
# bound suite
# ---------------------------------------------------------------------------

MAJORANT_FLOOR = 1e-9
CLAUSES = ("a-i", "a-ii", "b-i", "b-ii", "c-i", "c-ii")


def default_w_grid(p: WindowParams) -> np.ndarray:
    """21 uniform points on ``[0, 2r]`` then 64 log-spaced points on ``[2r, 5]``."""
    lo = np.linspace(0.0, 2 * p.r, 21)
    hi = np.geomspace(2 * p.r, 5.0, 65)[1:]
    return np.concatenate([lo, hi])


def default_u_grid_c() -> np.ndarray:
    return np.geomspace(1.0, 100.0, 17)


def _report(clause, p, grid, lhs, maj, regime, notes=None) -> BoundReport:
    grid = np.asarray(grid, dtype=float)
    lhs = np.abs(np.asarray(lhs, dtype=float))
    maj = np.asarray(maj, dtype=float)
    keep = maj >= MAJORANT_FLOOR
    ratio = float(np.max(lhs[keep] / maj[keep])) if np.any(keep) else float("nan")
    return BoundReport(clause, p, grid[keep].tolist(), lhs[keep].tolist(), maj[keep].tolist(),
                       [regime[i] for i in np.flatnonzero(keep)], ratio, int(np.sum(~keep)), notes or {})


def fd_derivative(fn: Callable[[float], float], w: float, h: float) -> float:
    if w - h < 0:
        # one-sided second order at the origin
        return (-3 * fn(w) + 4 * fn(w + h) - fn(w + 2 * h)) / (2 * h)
    return (fn(w + h) - fn(w - h)) / (2 * h)


def bound_suite_a(p: WindowParams, grid=None, variant: str = "f0", h: float = 1e-4) -> BoundReport:
    """Pointwise clause (a).

    ``variant='f0'``: ``|f0(cosh^2 w)|`` against ``T exp(-T^2 (w-r)^2) + [w <= 2r]``.
    ``variant='f1'``: ``|(sinh w f1(cosh^2 w))'|`` by central differences against
    ``T exp(-T^2 (w-r)^2) + 1`` for ``w <= 2r`` and
    ``T exp(-T^2 (w-r)^2) + exp(-2 (w-r)^2 / 3)`` beyond.
    Both read the Chebyshev caches of :class:`WindowCache`.
    """
    grid = default_w_grid(p) if grid is None else np.asarray(grid, dtype=float)
    T, r = p.T, p.r
    gauss = T * np.exp(-(T * (grid - r)) ** 2)
    regime = ["w<=2r" if w <= 2 * r else "w>=2r" for w in grid]
    if variant == "f0":
        lhs = WindowCache.get(p).F0(grid)
        maj = gauss + (grid <= 2 * r)
        return _report("a-i", p, grid, lhs, maj, regime)
    if variant != "f1":
        raise ValueError("variant must be 'f0' or 'f1'")
    cache = WindowCache.get(p)
    G = lambda w: float(cache.G(w))
    d1 = np.array([fd_derivative(G, w, h) for w in grid])
    d2 = np.array([fd_derivative(G, w, h / 2) for w in grid])
    rich = float(np.max(np.abs(d1 - d2) / np.maximum(np.abs(d2), 1e-300)))
    maj = gauss + np.where(grid <= 2 * r, 1.0, np.exp(-2 * (grid - r) ** 2 / 3))
    return _report("a-ii", p, grid, d2, maj, regime, {"richardson_rel": rich})


def bound_suite_b(p: WindowParams, grid=None, variant: str = "f0",
                  cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-9)) -> BoundReport:
    """Tail clause (b) for ``sinh^{-1} u >= 2r``.

    ``f0``: ``int_u^inf f0(x^2+1)/sqrt(x^2-u^2)`` against ``T exp(-T^2 r^2/2) u^-2``;
    ``f1``: the same with ``(x f1(x^2+1))'`` against ``(T exp(-T^2 r^2/2) + exp(-r^2/2)) u^-2``.
    """
    cache = WindowCache.get(p)
    T, r = p.T, p.r
    if grid is None:
        grid = np.sinh(np.geomspace(2 * r, 5.0, 64))
    grid = np.asarray(grid, dtype=float)
    if variant == "f0":
        h = lambda x: float(cache.F0(math.asinh(x)))
        x_max = math.sinh(cache.F0.b)
        pre = T * math.exp(-T * T * r * r / 2)
        clause = "b-i"
    else:
        h = lambda x: float(cache.dxG(x))
        x_max = math.sinh(cache.G.b)
        pre = T * math.exp(-T * T * r * r / 2) + math.exp(-r * r / 2)
        clause = "b-ii"
    lhs = [tail_form(u, h, x_max, cfg) for u in grid]
    maj = pre / grid ** 2
    return _report(clause, p, grid, lhs, maj, ["tail"] * len(grid))


def bound_suite_c(p: WindowParams, grid=None, variant: str = "f0",
                  cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-9)) -> BoundReport:
    """Intersection clause (c): ``int_0^inf h(x)/sqrt(x^2+u^2)`` against 1 for ``u >= 1``."""
    cache = WindowCache.get(p)
    grid = default_u_grid_c() if grid is None else np.asarray(grid, dtype=float)
    if variant == "f0":
        h = lambda x: float(cache.F0(math.asinh(x)))
        x_max = math.sinh(cache.F0.b)
        clause = "c-i"
    else:
        h = lambda x: float(cache.dxG(x))
        x_max = math.sinh(cache.G.b)
        clause = "c-ii"
    lhs = [intersect_form(u, h, x_max, cfg) for u in grid]
    return _report(clause, p, grid, lhs, np.ones(len(grid)), ["intersect"] * len(grid))


def run_clause(clause: str, p: WindowParams) -> BoundReport:
    if clause == "a-i":
        return bound_suite_a(p, variant="f0")
    if clause == "a-ii":
        return bound_suite_a(p, variant="f1")
    if clause == "b-i":
        return bound_suite_b(p, variant="f0")
    if clause == "b-ii":
        return bound_suite_b(p, variant="f1")
    if clause == "c-i":
        return bound_suite_c(p, variant="f0")
    if clause == "c-ii":
        return bound_suite_c(p, variant="f1")
    raise ValueError(f"unknown clause {clause!r}")


# ---------------------------------------------------------------------------
# baseline constants
# ---------------------------------------------------------------------------

BASELINE_FILE = "baseline_constants.txt"


def baseline_dir() -> Path:
    env = os.environ.get("HYPERSIEVE_BASELINE_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def baseline_key(clause: str, T: float, r: float) -> str:
    return f"{clause}/{T:g}/{r:g}"


def format_constant(x: float) -> str:
    return "%.*e" % (8, x)


def read_baseline(path: Path | None = None) -> dict[str, float]:
    path = Path(path) if path is not None else baseline_dir() / BASELINE_FILE
    out: dict[str, float] = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition("=")
        out[key.strip()] = float(val)
    return out


def write_baseline(values: dict[str, float], path: Path | None = None, header: str = "") -> Path:
    path = Path(path) if path is not None else baseline_dir() / BASELINE_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    lines += [f"{k}={format_constant(values[k])}" for k in sorted(values)]
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path
