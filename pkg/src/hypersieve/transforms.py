"""
Transform calculus for radial test functions on the hyperbolic plane.

A radial test function ``f`` on ``[1, inf)`` is paired with

* its Huber transforms ``d0(t)`` and ``d1(t)`` (hypergeometric kernels),
* a point-pair kernel ``k(u)`` through the Abel-type conversions
  ``k0_from_f`` / ``f_from_k0`` and ``k1prime_from_f`` / ``f_from_k1``,
* the Selberg/Harish-Chandra transform ``h(t)`` of that kernel.

The two routes to the spectral side agree: ``h_{k0}(t) = 2 d0(t)`` and
``h_{k1}(t) = 2 d1(t)``.  The inversion functions rebuild ``f`` from ``d0`` or
``d1`` through the profiles ``omega`` and ``tau`` and the kernel ``I(W, R)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .numerics import (
    DEFAULT_CONFIG,
    ChebyshevInterpolant,
    QuadratureConfig,
    RealInterval,
    decay_extent,
    fourier_integral,
    gauss_legendre,
    hyp2f1,
    quad,
    quad_sqrt_singular,
)

Array = np.ndarray

_KAPPA_SWITCH = 0.05
_GL20 = np.polynomial.legendre.leggauss(20)


def _as_vectorized(func: Callable) -> Callable:
    """Return ``func`` unchanged if it accepts arrays, else an element-wise wrapper."""
    try:
        probe = np.asarray(func(np.array([1.0, 2.0])), dtype=float)
        if probe.shape == (2,):
            return func
    except Exception:
        pass

    def wrapped(x):
        arr = np.asarray(x, dtype=float)
        out = np.array([float(func(float(v))) for v in arr.ravel()])
        return out.reshape(arr.shape) if arr.ndim else float(out[0])

    return wrapped


def _fd5(func: Callable[[float], float], x: float) -> float:
    h = np.finfo(float).eps ** (1.0 / 3.0) * max(1.0, abs(x))
    return (-func(x + 2 * h) + 8 * func(x + h) - 8 * func(x - h) + func(x - 2 * h)) / (12 * h)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass
class RadialTestFunction:
    """A decaying function on ``[1, inf)`` with derivative access.

    ``decay = (C, alpha)`` asserts ``|f(p)| <= C exp(-alpha sqrt(p))``.
    ``eval`` and ``deriv`` are called with numpy arrays; scalar-only
    callables are wrapped automatically.
    """

    eval: Callable
    deriv: Callable
    decay: tuple[float, float] = (1.0, 0.0)
    name: str = "f"

    def __post_init__(self):
        self.eval = _as_vectorized(self.eval)
        self.deriv = _as_vectorized(self.deriv)

    def __call__(self, p):
        return self.eval(p)

    def violations(self, n: int = 40) -> list[str]:
        """Sample-based checks of the derivative and decay claims."""
        out = []
        ps = np.geomspace(1.0, 1e4, n)
        C, alpha = self.decay
        vals = np.asarray(self.eval(ps), dtype=float)
        env = C * np.exp(-alpha * np.sqrt(ps))
        if np.any(np.abs(vals) > env * (1 + 1e-12) + 1e-300):
            out.append("decay envelope violated")
        scale = max(float(np.max(np.abs(np.asarray(self.deriv(ps[:n // 2]))))), 1e-300)
        for p in np.geomspace(1.05, 50.0, 12):
            fd = _fd5(lambda x: float(self.eval(np.array([x]))[0]), p)
            an = float(np.asarray(self.deriv(np.array([p])))[0])
            if abs(fd - an) > 1e-6 * max(abs(an), 1e-6 * scale):
                out.append(f"derivative mismatch at p={p:.4g}")
                break
        return out

    @staticmethod
    def zero() -> "RadialTestFunction":
        z = lambda p: np.zeros_like(np.asarray(p, dtype=float))
        return RadialTestFunction(z, z, (0.0, 0.0), "zero")

    @staticmethod
    def exponential() -> "RadialTestFunction":
        """``f(p) = exp(1 - p)``."""
        e = lambda p: np.exp(1.0 - np.asarray(p, dtype=float))
        return RadialTestFunction(e, lambda p: -e(p), (math.e, 1.0), "exp(1-p)")

    @staticmethod
    def gaussian() -> "RadialTestFunction":
        """``f(p) = exp(-(p-1)^2)`` restricted to ``p >= 1``."""
        g = lambda p: np.exp(-(np.asarray(p, dtype=float) - 1.0) ** 2)
        dg = lambda p: -2.0 * (np.asarray(p, dtype=float) - 1.0) * g(p)
        # (p-1)^2 >= sqrt(p) - 1 - 1/4 ... on p >= 1 the envelope e^{1.25 - sqrt p} is safe
        return RadialTestFunction(g, dg, (math.exp(1.25), 1.0), "exp(-(p-1)^2)")


@dataclass
class KernelFunction:
    """A point-pair kernel ``k(u)`` on ``[0, inf)``.

    ``decay`` is ``(C, alpha)`` with ``|k(u)| <= C exp(-alpha u)``, or ``None``
    when no envelope is known.
    """

    eval: Callable
    deriv: Callable
    decay: Optional[tuple[float, float]] = None
    name: str = "k"

    def __post_init__(self):
        self.eval = _as_vectorized(self.eval)
        self.deriv = _as_vectorized(self.deriv)

    def __call__(self, u):
        return self.eval(u)

    def extent(self, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
        """Point beyond which ``|k|`` is negligible relative to its peak."""
        if self.decay is not None and self.decay[1] > 0:
            C, alpha = self.decay
            peak = max(abs(float(self.eval(np.array([0.0]))[0])), 1e-300)
            return max(1.0, math.log(max(C, 1e-300) / (cfg.tail_cutoff * peak)) / alpha)
        g = lambda u: float(self.eval(np.array([u]))[0])
        return decay_extent(g, 0.0, cfg, step=0.25, growth=1.15)

    def tabulated(self, u_max: float | None = None, cfg: QuadratureConfig = DEFAULT_CONFIG,
                  tol: float = 1e-14) -> "KernelFunction":
        """Chebyshev-cached copy on ``[0, u_max]`` (zero beyond) with an exact derivative."""
        if u_max is None:
            u_max = self.extent(cfg)
        cheb = ChebyshevInterpolant.fit(self.eval, 0.0, u_max, tol=tol, initial_panels=4)
        der = cheb.derivative()
        return KernelFunction(cheb, der, self.decay, self.name + "~")

    @staticmethod
    def exponential() -> "KernelFunction":
        e = lambda u: np.exp(-np.asarray(u, dtype=float))
        return KernelFunction(e, lambda u: -e(u), (1.0, 1.0), "exp(-u)")

    @staticmethod
    def zero() -> "KernelFunction":
        z = lambda u: np.zeros_like(np.asarray(u, dtype=float))
        return KernelFunction(z, z, (0.0, 1.0), "zero")


class SpectralFunction:
    """A real function of the spectral parameter, even by default.

    ``envelope = (C, beta)`` declares ``|g(t)| <= C exp(-beta t^2)``; when it is
    absent the truncation point is found by sampling.  Values are memoised, so
    wrapping an expensive transform costs one evaluation per distinct ``t``.
    """

    def __init__(self, eval: Callable[[float], float], parity: str = "even",
                 envelope: Optional[tuple[float, float]] = None, name: str = "h"):
        if parity not in ("even", "odd", "none"):
            raise ValueError("parity must be 'even', 'odd' or 'none'")
        self._eval = eval
        self.parity = parity
        self.envelope = envelope
        self.name = name
        self._memo: dict[float, float] = {}
        self._profiles: dict = {}

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        if arr.ndim == 0:
            return self._one(float(arr))
        return np.array([self._one(float(x)) for x in arr.ravel()]).reshape(arr.shape)

    def _one(self, t: float) -> float:
        key = abs(t) if self.parity == "even" else t
        if key not in self._memo:
            if self.parity == "odd" and t < 0:
                self._memo[key] = -self._one(-t)
            else:
                self._memo[key] = float(self._eval(key))
        return self._memo[key]

    def parity_defect(self, ts=(0.3, 1.0, 2.5, 7.0)) -> float:
        """``max |g(t) - g(-t)|`` evaluated on the raw callable."""
        return max(abs(float(self._eval(t)) - float(self._eval(-t))) for t in ts)

    def extent(self, cfg: QuadratureConfig = DEFAULT_CONFIG, *, weight_power: int = 2,
               step: float = 0.5) -> float:
        """Truncation point for ``int |t|^weight_power |g(t)| dt``."""
        cut = cfg.tail_cutoff
        if self.envelope is not None:
            C, beta = self.envelope
            peak = max(abs(self(0.0)), abs(self(1.0)), 1e-300)
            t = 1.0
            while C * t ** weight_power * math.exp(-beta * t * t) > cut * peak:
                t *= 1.1
            return t
        # values under abs_tol are quadrature noise, not signal
        return decay_extent(
            lambda t: 0.0 if abs(self(t)) <= cfg.abs_tol else abs(self(t)) * max(1.0, t) ** weight_power,
            0.0, cfg, step=step)

    @staticmethod
    def zero() -> "SpectralFunction":
        return SpectralFunction(lambda t: 0.0, "even", (0.0, 1.0), "zero")


@dataclass
class ReconstructionProfile:
    """Radial profile feeding the inversion integral.

    For a ``d0`` input the profile is ``omega``; for ``d1`` it is
    ``tau = kappa * sinh``.  ``extent`` is the point beyond which the profile
    is negligible.
    """

    omega: Optional[Callable] = None
    omega_deriv: Optional[Callable] = None
    tau: Optional[Callable] = None
    tau_deriv: Optional[Callable] = None
    tau_deriv2: Optional[Callable] = None
    extent: float = 10.0
    kind: str = field(default="omega")

    def __post_init__(self):
        if self.omega is None and self.tau is None:
            raise ValueError("a profile needs omega or tau")
        self.kind = "omega" if self.omega is not None else "tau"

    def kappa_deriv(self, rho):
        """``kappa'`` with ``kappa = tau / sinh``.

        The numerator ``tau' sinh - tau cosh`` cancels to ``O(rho^3)`` near the
        origin; there it is computed as ``int_0^rho (tau'' - tau) sinh`` instead.
        """
        rho = np.asarray(rho, dtype=float)
        scalar = rho.ndim == 0
        rho = np.atleast_1d(rho)
        sh, ch = np.sinh(rho), np.cosh(rho)
        num = self.tau_deriv(rho) * sh - self.tau(rho) * ch
        small = rho < _KAPPA_SWITCH
        if self.tau_deriv2 is not None and np.any(small):
            rs = rho[small]
            s = 0.5 * rs[:, None] * (_GL20[0][None, :] + 1.0)
            wts = 0.5 * rs[:, None] * _GL20[1][None, :]
            integrand = (self.tau_deriv2(s) - self.tau(s)) * np.sinh(s)
            num[small] = np.sum(wts * integrand, axis=1)
        out = num / (sh * sh)
        return float(out[0]) if scalar else out

    def vanishes_at_infinity(self, tol: float = 1e-10) -> bool:
        fn = self.omega if self.kind == "omega" else self.tau
        tail = np.linspace(self.extent, self.extent + 5.0, 11)
        return bool(np.all(np.abs(fn(tail)) < tol))


# ---------------------------------------------------------------------------
# Huber transforms
# ---------------------------------------------------------------------------


def _p_extent(f: RadialTestFunction, cfg: QuadratureConfig) -> float:
    """``p`` beyond which ``|f|`` is negligible."""
    C, alpha = f.decay
    peak = float(np.max(np.abs(f(np.linspace(1.0, 4.0, 13)))))
    if peak == 0.0:
        return 1.0
    if alpha > 0:
        # envelope C exp(-alpha sqrt p) < cutoff * peak
        return (math.log(C / (cfg.tail_cutoff * peak)) / alpha) ** 2
    return decay_extent(lambda p: abs(float(f(np.array([p]))[0])), 1.0, cfg, step=0.5, growth=1.2)


def _sharp_p_extent(f: RadialTestFunction, cfg: QuadratureConfig) -> float:
    """Tighter truncation than the envelope: first sampled p past which f stays small."""
    p_env = _p_extent(f, cfg)
    ps = np.geomspace(1.0, max(p_env, 2.0), 400)
    vals = np.abs(np.asarray(f(ps), dtype=float))
    peak = vals.max()
    if peak == 0.0:
        return 1.0
    loud = np.flatnonzero(vals > cfg.tail_cutoff * peak)
    idx = min(int(loud[-1]) + 2, len(ps) - 1)
    return float(ps[idx])


def _huber_integrand(f: RadialTestFunction, t: float, which: int):
    s = 0.5 + 1j * t
    if which == 0:
        a, b, c = s / 2, (1 - s) / 2, 0.5
    else:
        a, b, c = (s + 1) / 2, (2 - s) / 2, 1.5

    def g(v):
        tn = np.tan(v)
        sec2 = 1.0 + tn * tn
        F = hyp2f1(a, b, c, -tn * tn)
        if np.max(np.abs(F.imag)) > 1e-8 * max(1.0, float(np.max(np.abs(F.real)))):
            raise ArithmeticError("Huber kernel is not real")
        base = sec2 * np.asarray(f(sec2), dtype=float) * F.real
        return base if which == 0 else tn * tn * base

    return g


def _huber(f: RadialTestFunction, t: float, cfg: QuadratureConfig, which: int) -> float:
    p_max = _sharp_p_extent(f, cfg)
    if p_max <= 1.0:
        return 0.0
    v_max = math.atan(math.sqrt(p_max - 1.0))
    panels = max(4, int(math.ceil(abs(t) * v_max / 4.0)))
    return gauss_legendre(_huber_integrand(f, t, which), 0.0, v_max, cfg, panels=panels)


def d0_direct(f: RadialTestFunction, t: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Huber transform ``d0_t(f)``.

    ``int_0^{pi/2} sec^2 v f(sec^2 v) 2F1(s/2, (1-s)/2; 1/2; -tan^2 v) dv`` with
    ``s = 1/2 + it``, evaluated by composite Gauss-Legendre in ``v``.
    """
    return _huber(f, float(t), cfg, 0)


def d1_direct(f: RadialTestFunction, t: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Huber transform ``d1_t(f)`` (kernel ``tan^2 v sec^2 v 2F1((s+1)/2, (2-s)/2; 3/2; -tan^2 v)``)."""
    return _huber(f, float(t), cfg, 1)


def huber_d0(f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> SpectralFunction:
    """``t -> d0_t(f)`` as a memoised spectral function."""
    return SpectralFunction(lambda t: d0_direct(f, t, cfg), "even", None, f"d0[{f.name}]")


def huber_d1(f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> SpectralFunction:
    return SpectralFunction(lambda t: d1_direct(f, t, cfg), "even", None, f"d1[{f.name}]")


# ---------------------------------------------------------------------------
# kernel <-> test function conversions
# ---------------------------------------------------------------------------


def _scalar(fn: Callable, x: float) -> float:
    return float(np.asarray(fn(np.array([x])))[0])


def _abel_fprime(f: RadialTestFunction, P: float, cfg: QuadratureConfig) -> float:
    """``int_P^inf f'(p) / sqrt(p - P) dp``."""
    p_max = _p_extent(f, cfg)
    if P >= p_max:
        return 0.0
    return quad_sqrt_singular(lambda p: _scalar(f.deriv, p), P, p_max, cfg)


def k0_from_f(f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> KernelFunction:
    """Kernel ``k0(u) = -((2u+1)/pi) int_{(2u+1)^2}^inf f'(p) / sqrt(p - (2u+1)^2) dp``."""

    def k(u):
        u = float(u)
        return -(2 * u + 1) / math.pi * _abel_fprime(f, (2 * u + 1) ** 2, cfg)

    kf = KernelFunction(k, lambda u: _fd5(k, float(u)), None, f"k0[{f.name}]")
    return kf


def k1prime_from_f(f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> Callable:
    """``k1'(u) = ((4u+2)/pi) int_{(2u+1)^2}^inf f'(p) / sqrt(p - (2u+1)^2) dp``."""

    def kp(u):
        u = float(u)
        return (4 * u + 2) / math.pi * _abel_fprime(f, (2 * u + 1) ** 2, cfg)

    return _as_vectorized(kp)


def k1_from_f(f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
              tol: float = 1e-14) -> KernelFunction:
    """Kernel whose derivative is ``k1prime_from_f(f)``, normalised to vanish at infinity."""
    kp = k1prime_from_f(f, cfg)
    u_max = _kernel_extent(f, cfg)
    cheb = ChebyshevInterpolant.fit(kp, 0.0, u_max, tol=tol, initial_panels=4)
    k = cheb.tail_integral()
    # k1 = -int_u^inf k1'
    neg = ChebyshevInterpolant(k.breaks, [-c for c in k.coeffs])
    return KernelFunction(neg, cheb, None, f"k1[{f.name}]")


def _kernel_extent(f: RadialTestFunction, cfg: QuadratureConfig) -> float:
    # k(u) only sees f on p >= (2u+1)^2
    p_max = _p_extent(f, cfg)
    return max(1.0, (math.sqrt(p_max) - 1.0) / 2.0)


def _theta_extent(k: KernelFunction, p: float, cfg: QuadratureConfig) -> float:
    u_max = k.extent(cfg)
    x = 2.0 * u_max + 1.0
    sp = math.sqrt(p)
    if x <= sp:
        return 0.0
    return math.acosh(x / sp)


def f_from_k0(k: KernelFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> RadialTestFunction:
    """``f(p) = 2 int_{sqrt p}^inf k((x-1)/2) / sqrt(x^2 - p) dx``, via ``x = sqrt(p) cosh(theta)``."""

    def f(p):
        p = float(p)
        th = _theta_extent(k, p, cfg)
        if th == 0.0:
            return 0.0
        sp = math.sqrt(p)
        return 2.0 * quad(lambda q: _scalar(k.eval, (sp * math.cosh(q) - 1) / 2), RealInterval(0.0, th), cfg)

    def fp(p):
        p = float(p)
        th = _theta_extent(k, p, cfg)
        if th == 0.0:
            return 0.0
        sp = math.sqrt(p)
        # d/dp of the integrand k((sqrt p cosh q - 1)/2)
        g = lambda q: _scalar(k.deriv, (sp * math.cosh(q) - 1) / 2) * math.cosh(q) / (4 * sp)
        return 2.0 * quad(g, RealInterval(0.0, th), cfg)

    decay = (k.decay[0] * 4.0, k.decay[1] / 2.0) if k.decay else (1.0, 0.0)
    return RadialTestFunction(f, fp, decay, f"f0[{k.name}]")


def f_from_k1(k: KernelFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> RadialTestFunction:
    """``f(p) = -int_{sqrt p}^inf k'((x-1)/2) / sqrt(x^2 - p) dx``."""

    def f(p):
        p = float(p)
        th = _theta_extent(k, p, cfg)
        if th == 0.0:
            return 0.0
        sp = math.sqrt(p)
        return -quad(lambda q: _scalar(k.deriv, (sp * math.cosh(q) - 1) / 2), RealInterval(0.0, th), cfg)

    def fp(p):
        return _fd5(f, float(p))

    decay = (k.decay[0] * 4.0, k.decay[1] / 2.0) if k.decay else (1.0, 0.0)
    return RadialTestFunction(f, fp, decay, f"f1[{k.name}]")


# ---------------------------------------------------------------------------
# Selberg / Harish-Chandra transform
# ---------------------------------------------------------------------------


def _g_profile(k: KernelFunction, cfg: QuadratureConfig) -> ChebyshevInterpolant:
    """Chebyshev cache of ``g(rho) = 2 q(sinh^2(rho/2))``, ``q(v) = int_v^inf k(u)/sqrt(u-v) du``."""
    cached = getattr(k, "_g_cache", None)
    if cached is not None:
        return cached
    u_max = k.extent(cfg)
    kt = k if isinstance(k.eval, ChebyshevInterpolant) else k.tabulated(u_max, cfg)
    rho_max = 2.0 * math.asinh(math.sqrt(u_max))

    def q(v):
        v = np.atleast_1d(np.asarray(v, dtype=float))
        out = np.empty_like(v)
        for i, vi in enumerate(v):
            s_max = math.sqrt(max(u_max - vi, 0.0))
            if s_max == 0.0:
                out[i] = 0.0
                continue
            out[i] = gauss_legendre(lambda s: 2.0 * kt(vi + s * s), 0.0, s_max, cfg.replace(abs_tol=1e-16, rel_tol=1e-14),
                                    order=20, panels=2)
        return out

    g = ChebyshevInterpolant.fit(lambda r: 2.0 * q(np.sinh(r / 2.0) ** 2), 0.0, rho_max, tol=1e-15, initial_panels=4)
    try:
        k._g_cache = g
    except AttributeError:
        pass
    return g


def sht_forward(k: KernelFunction, t: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Selberg/Harish-Chandra transform ``h(t) = int e^{i rho t} g(rho) d rho``."""
    g = _g_profile(k, cfg)
    if not np.any([np.any(c) for c in g.coeffs]):
        return 0.0
    val = fourier_integral(g, float(t), cfg, parity="even", t_max=g.b)
    return float(val)


def _trapezoid_nodes(h: SpectralFunction, cfg: QuadratureConfig, step: float, weight_power: int):
    t_max = h.extent(cfg, weight_power=weight_power, step=step)
    n = int(math.ceil(t_max / step))
    ts = step * np.arange(n + 1)
    vals = np.array([h(t) for t in ts])
    w = np.full(ts.shape, step)
    w[0] = step / 2
    return ts, vals, w


@dataclass
class _CosineSum:
    """``rho -> sum_j w_j c_j t_j^m cos/sin(rho t_j)``, a trapezoid Fourier sum on ``[0, t_max]``."""

    ts: Array
    coef: Array
    power: int
    kind: str  # 'cos' or 'sin'

    def __call__(self, rho):
        r = np.asarray(rho, dtype=float)
        flat = np.atleast_1d(r).ravel()
        out = np.empty(flat.shape)
        tp = self.coef * self.ts ** self.power
        trig = np.cos if self.kind == "cos" else np.sin
        for i in range(0, len(flat), 512):
            chunk = flat[i:i + 512]
            out[i:i + 512] = trig(np.outer(chunk, self.ts)) @ tp
        return float(out[0]) if r.ndim == 0 else out.reshape(r.shape)


def _profile_extent(fn: Callable, limit: float, floor: float = 1e-14) -> float:
    rho = np.linspace(0.0, limit, int(limit / 0.02) + 1)
    vals = np.abs(fn(rho))
    peak = vals.max()
    if peak == 0.0:
        return 0.0
    loud = np.flatnonzero(vals > floor * peak)
    return float(min(rho[loud[-1]] + 0.5, limit))


def profile_from_d0(d0: SpectralFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
                    step: float = 0.5) -> ReconstructionProfile:
    """``omega(rho) = (1/2pi) int e^{i rho t} d0(t) dt`` and its derivative, by the trapezoid rule.

    The rule is spectrally accurate for smooth decaying ``d0``; its aliasing
    period ``2 pi / step`` bounds the usable ``rho`` range.
    """
    key = ("omega", step, cfg)
    if key in d0._profiles:
        return d0._profiles[key]
    ts, vals, w = _trapezoid_nodes(d0, cfg, step, 1)
    omega = _CosineSum(ts, w * vals / math.pi, 0, "cos")
    domega = _CosineSum(ts, -w * vals / math.pi, 1, "sin")
    limit = math.pi / step
    prof = ReconstructionProfile(omega=omega, omega_deriv=domega, extent=_profile_extent(domega, limit))
    d0._profiles[key] = prof
    return prof


def profile_from_d1(d1: SpectralFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
                    step: float = 0.5) -> ReconstructionProfile:
    """``tau(rho) = (1/pi) int_0^inf t sin(rho t) d1(t) dt`` and ``tau'``, by the trapezoid rule."""
    key = ("tau", step, cfg)
    if key in d1._profiles:
        return d1._profiles[key]
    ts, vals, w = _trapezoid_nodes(d1, cfg, step, 2)
    tau = _CosineSum(ts, w * vals / math.pi, 1, "sin")
    dtau = _CosineSum(ts, w * vals / math.pi, 2, "cos")
    d2tau = _CosineSum(ts, -w * vals / math.pi, 3, "sin")
    limit = math.pi / step
    prof = ReconstructionProfile(tau=tau, tau_deriv=dtau, tau_deriv2=d2tau, extent=_profile_extent(dtau, limit))
    d1._profiles[key] = prof
    return prof


def sht_inverse(h: SpectralFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
                step: float = 0.25) -> KernelFunction:
    """Kernel from its spectral transform.

    ``Q(rho) = q(sinh^2(rho/2)) = (1/4pi) int e^{i rho t} h(t) dt``, then
    ``k(u) = -(1/pi) int_u^inf q'(v)/sqrt(v-u) dv``, computed as
    ``-(2 sqrt 2 / pi) int_0^inf Q'(rho)/sinh(rho) ds`` with ``cosh rho = 2u + 1 + s^2``.
    Only the even part of ``h`` contributes.
    """
    ts, vals, w = _trapezoid_nodes(h, cfg, step, 2)
    even = 0.5 * (vals + np.array([h(-t) for t in ts]))
    dQ = _CosineSum(ts, -w * even / (2 * math.pi), 1, "sin")
    d2Q0 = -float(np.sum(w * even * ts ** 2)) / (2 * math.pi)
    rho_max = _profile_extent(dQ, math.pi / step, 1e-15)

    def ratio(rho):
        rho = np.asarray(rho, dtype=float)
        small = rho < 1e-6
        safe = np.where(small, 1.0, rho)
        return np.where(small, d2Q0, dQ(safe) / np.sinh(safe))

    def k(u):
        u = float(u)
        c0 = 2 * u + 1
        if math.acosh(c0) >= rho_max:
            return 0.0
        s_max = math.sqrt(math.cosh(rho_max) - c0)
        val = gauss_legendre(lambda s: ratio(np.arccosh(c0 + s * s)), 0.0, s_max,
                             cfg.replace(abs_tol=1e-15, rel_tol=1e-12), panels=8)
        return -2.0 * math.sqrt(2.0) / math.pi * val

    return KernelFunction(k, lambda u: _fd5(k, float(u)), None, f"k[{h.name}]")


def d0_via_sht(f: RadialTestFunction, t: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``h_{k0}(t) / 2`` with ``k0 = k0_from_f(f)``."""
    k = _cached_kernel(f, cfg, 0)
    return 0.5 * sht_forward(k, t, cfg)


def d1_via_sht(f: RadialTestFunction, t: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``h_{k1}(t) / 2`` with ``k1`` integrated from ``k1prime_from_f(f)``."""
    k = _cached_kernel(f, cfg, 1)
    return 0.5 * sht_forward(k, t, cfg)


def _cached_kernel(f: RadialTestFunction, cfg: QuadratureConfig, which: int) -> KernelFunction:
    store = f.__dict__.setdefault("_kernels", {})
    key = (which, cfg)
    if key not in store:
        if which == 0:
            u_max = _kernel_extent(f, cfg)
            store[key] = k0_from_f(f, cfg).tabulated(u_max, cfg)
        else:
            store[key] = k1_from_f(f, cfg)
    return store[key]


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------


def _agm(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    for _ in range(64):
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        if np.all(np.abs(a - b) <= 1e-16 * a):
            break
    return a


def kernel_I(W, R, cfg: QuadratureConfig = DEFAULT_CONFIG, method: str = "quad"):
    """``I(W, R) = (-2 sqrt 2 / pi) int_0^1 (2W + (R-W) y)^{-1/2} dy / sqrt(y(1-y))``.

    ``method='quad'`` integrates after ``y = sin^2 phi``; ``'hyp2f1'`` uses
    ``-2 W^{-1/2} 2F1(1/2, 1/2; 1; (W-R)/(2W))``; ``'agm'`` uses the complete
    elliptic integral in its arithmetic-geometric mean form (vectorised).
    """
    if method == "agm":
        Wa = np.asarray(W, dtype=float)
        Ra = np.asarray(R, dtype=float)
        if np.any(Wa < 1) or np.any(Ra < Wa * (1 - 1e-14)):
            raise ValueError("kernel_I requires 1 <= W <= R")
        out = -2.0 * math.sqrt(2.0) / _agm(np.sqrt(2.0 * Wa), np.sqrt(Wa + Ra))
        return float(out) if out.ndim == 0 else out
    W = float(W)
    R = float(R)
    if W < 1 or R < W:
        raise ValueError("kernel_I requires 1 <= W <= R")
    if method == "hyp2f1":
        return -2.0 / math.sqrt(W) * float(hyp2f1(0.5, 0.5, 1.0, (W - R) / (2 * W)))
    if method != "quad":
        raise ValueError(f"unknown method {method!r}")
    g = lambda phi: 2.0 / math.sqrt(2 * W + (R - W) * math.sin(phi) ** 2)
    return -2.0 * math.sqrt(2.0) / math.pi * quad(g, RealInterval(0.0, math.pi / 2), cfg)


def omega_from_d0(d0: SpectralFunction, rho: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``omega(rho) = (1/2pi) int e^{i rho t} d0(t) dt``."""
    t_max = d0.extent(cfg, weight_power=0)
    if t_max == 0.0:
        return 0.0
    return float(fourier_integral(d0, float(rho), cfg, parity="even", t_max=t_max)) / (2 * math.pi)


# normalisation of tau: fixed by the f1 round trip (see tests)
TAU_CONSTANT = -1j / (2 * math.pi)


def tau_from_d1(d1: SpectralFunction, rho: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``tau(rho) = c int e^{i rho t} t d1(t) dt`` with ``c = -i/(2 pi)``.

    With this constant ``tau = kappa sinh`` reproduces ``f`` through
    ``reconstruct_f1``; the sine integral makes the result real.
    """
    t_max = d1.extent(cfg, weight_power=1)
    if t_max == 0.0:
        return 0.0
    val = fourier_integral(lambda t: t * d1(t), float(rho), cfg, parity="odd", t_max=t_max)
    return float((TAU_CONSTANT * val).real)


def _as_profile(src, kind: str, cfg: QuadratureConfig) -> ReconstructionProfile:
    if isinstance(src, ReconstructionProfile):
        return src
    if kind == "omega":
        return profile_from_d0(src, cfg)
    return profile_from_d1(src, cfg)


def _inversion_integral(deriv: Callable, w: float, extent: float, cfg: QuadratureConfig,
                        scale: float = 1.0, focus: tuple = (), zone: tuple | None = None) -> float:
    """``int_w^extent deriv(rho) I(cosh w, cosh rho) d rho`` by composite Gauss-Legendre.

    ``scale`` is the shortest length on which the profile varies and ``focus``
    lists points (such as Gaussian centres) that should be panel boundaries.
    When ``zone = (lo, hi)`` is given, ``scale`` only applies to panels inside
    it and unit scale is used elsewhere.
    """
    if w >= extent:
        return 0.0
    W = math.cosh(w)

    def g(rho):
        return deriv(rho) * kernel_I(W, np.maximum(np.cosh(rho), W), method="agm")

    edges = sorted({w, extent, *[x for x in focus if w < x < extent],
                    *[float(x) for x in np.arange(math.floor(w) + 1.0, extent, 1.0)]})
    total = 0.0
    if zone is not None:
        edges = sorted({*edges, *[x for x in zone if w < x < extent]})
    for lo, hi in zip(edges[:-1], edges[1:]):
        fine = zone is None or (lo < zone[1] and hi > zone[0])
        panels = max(2, int(math.ceil((hi - lo) / (scale if fine else 1.0))))
        total += gauss_legendre(g, lo, hi, cfg, order=16, panels=panels)
    return total


def reconstruct_f0(d0, w: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``f(cosh^2 w) = int_w^inf omega'(rho) I(cosh w, cosh rho) d rho``.

    ``d0`` is a :class:`SpectralFunction` (``omega`` is then built by a
    trapezoid Fourier sum) or a ready :class:`ReconstructionProfile`.
    """
    if w < 0:
        raise ValueError("w must be non-negative")
    prof = _as_profile(d0, "omega", cfg)
    return _inversion_integral(prof.omega_deriv, float(w), prof.extent, cfg)


def reconstruct_f1(d1, w: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``f(cosh^2 w) = int_w^inf kappa'(rho) I(cosh w, cosh rho) d rho`` with ``kappa = tau / sinh``."""
    if w < 0:
        raise ValueError("w must be non-negative")
    prof = _as_profile(d1, "tau", cfg)
    w = float(w)
    return _inversion_integral(prof.kappa_deriv, w, prof.extent, cfg)


def majorant_a(profile: ReconstructionProfile, w: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``|omega(w)| + int_w^inf |omega|``."""
    om = profile.omega
    tail = 0.0
    if w < profile.extent:
        tail = quad(lambda r: abs(float(om(r))), RealInterval(w, profile.extent), cfg)
    return abs(float(om(w))) + tail


def majorant_b(profile: ReconstructionProfile, w: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``|tau'(w)| + |tau(w)| + int_w^inf |tau|``."""
    ta = profile.tau
    tail = 0.0
    if w < profile.extent:
        tail = quad(lambda r: abs(float(ta(r))), RealInterval(w, profile.extent), cfg)
    return abs(float(profile.tau_deriv(w))) + abs(float(ta(w))) + tail
