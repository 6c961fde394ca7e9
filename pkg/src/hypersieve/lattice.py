"""Geometric side on the modular group.

Elements of ``SL(2, Z)`` are conjugated by a real matrix ``M`` that sends the
axis of a hyperbolic generator ``g0`` to the imaginary axis, so ``M g0 M^-1``
is diagonal.  Points ``z`` passed to the series below live in that conjugated
model.  Cosets ``<g0> \\ G`` and double cosets ``<g0> \\ G / <g0>`` are found by
enumerating integer matrices with bounded entries, so every census-dependent
result carries a saturation check (recompute at twice the entry bound).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _backend
from .numerics import DEFAULT_CONFIG, QuadratureConfig
from .numerics import ChebyshevInterpolant
from .transforms import KernelFunction, RadialTestFunction

__all__ = [
    "GroupElement", "GeodesicFrame", "DoubleCosetRep", "HuberPoint", "Census",
    "CensusIncompleteWarning", "DivergenceError", "DEFAULT_GENERATOR",
    "huber_coords", "b_invariant", "build_frame", "default_frame", "enumerate_cosets",
    "enumerate_double_cosets", "saturated_census", "count_B", "g0_geom", "g1_geom",
    "huber_series_A0", "huber_series_A1", "kernel_sum_F", "epsilon_flag",
    "axis_reversal_flag", "geometric_side", "geometric_side_terms", "GeometricSide",
    "census_csv",
]


class CensusIncompleteWarning(UserWarning):
    """Raised when doubling the entry bound changes a census."""


class DivergenceError(ArithmeticError):
    """``g0`` diverges at ``|B| = 1`` unless ``f(1) = 0``."""


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """Integer matrix ``[[a, b], [c, d]]`` with determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries} is not 1")

    @classmethod
    def from_any(cls, g) -> "GroupElement":
        if isinstance(g, GroupElement):
            return g
        arr = np.asarray(g).reshape(-1)
        return cls(*(int(x) for x in arr))

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def __matmul__(self, o: "GroupElement") -> "GroupElement":
        return GroupElement(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def power(self, n: int) -> "GroupElement":
        base = self if n >= 0 else self.inverse()
        out = GroupElement(1, 0, 0, 1)
        for _ in range(abs(n)):
            out = out @ base
        return out

    def normalized(self) -> "GroupElement":
        """Sign representative in ``PSL(2, Z)``: first nonzero entry positive."""
        for x in self.entries:
            if x:
                return self if x > 0 else GroupElement(*(-y for y in self.entries))
        raise AssertionError("zero matrix")

    @property
    def height(self) -> int:
        return max(abs(x) for x in self.entries)


DEFAULT_GENERATOR = GroupElement(2, 1, 1, 1)


@dataclass(frozen=True)
class GeodesicFrame:
    """Hyperbolic generator with a conjugator ``M`` that diagonalises it.

    ``generator`` is a :class:`GroupElement` or, for synthetic frames, a real
    2x2 array.  ``norm_lambda = mu^2`` and ``length = log(norm_lambda)``.
    """

    generator: object
    conjugator: np.ndarray
    norm_lambda: float
    length: float

    @property
    def mu(self) -> float:
        return math.sqrt(self.norm_lambda)

    @property
    def inverse_conjugator(self) -> np.ndarray:
        M = self.conjugator
        return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])

    @property
    def integral(self) -> bool:
        return isinstance(self.generator, GroupElement)

    def conjugate(self, g) -> np.ndarray:
        """``M g M^-1`` for one element or an ``(n, 4)`` array of entries (rows a, b, c, d)."""
        M, Mi = self.conjugator, self.inverse_conjugator
        if isinstance(g, GroupElement):
            return M @ g.matrix() @ Mi
        g = np.asarray(g, dtype=float)
        if g.shape == (2, 2):
            return M @ g @ Mi
        mats = g.reshape(-1, 2, 2)
        return np.einsum("ij,njk,kl->nil", M, mats, Mi).reshape(-1, 4)

    def residual(self) -> float:
        """Size of the off-diagonal part of ``M g0 M^-1``."""
        G = self.conjugate(self.generator if self.integral else np.asarray(self.generator, float))
        return float(max(abs(G[0, 1]), abs(G[1, 0])))

    @staticmethod
    def trivial() -> "GeodesicFrame":
        """Identity conjugator around ``diag(e, 1/e)``; useful for checking invariants."""
        g = np.diag([math.e, 1.0 / math.e])
        return GeodesicFrame(g, np.eye(2), math.e ** 2, 2.0)


@dataclass(frozen=True)
class DoubleCosetRep:
    """Canonical representative of a double coset with its invariant ``B``.

    ``height`` is the smallest maximal entry among the enumerated members.
    ``N`` is the exact integer ``2 (tr^2 - 4) B`` of the class.
    """

    element: GroupElement
    B: float
    height: int
    N: int = 0

    @property
    def is_unit(self) -> bool:
        """``|B| = 1``: the translate touches the axis at infinity."""
        return abs(abs(self.B) - 1.0) < 1e-12


@dataclass(frozen=True)
class HuberPoint:
    u: float
    v: float

    def __post_init__(self):
        if not -math.pi / 2 < self.v < math.pi / 2:
            raise ValueError("v must lie in (-pi/2, pi/2)")

    @property
    def z(self) -> complex:
        r = math.exp(self.u)
        return complex(-r * math.sin(self.v), r * math.cos(self.v))


class Census(list):
    """List of :class:`DoubleCosetRep` with enumeration metadata."""

    def __init__(self, reps: Sequence[DoubleCosetRep], X: float, H: int,
                 saturated: Optional[bool] = None, frame: Optional[GeodesicFrame] = None):
        super().__init__(reps)
        self.X = X
        self.H = H
        self.saturated = saturated
        self.frame = frame

    @property
    def unit_classes(self) -> list[DoubleCosetRep]:
        return [r for r in self if r.is_unit]

    @property
    def regular(self) -> list[DoubleCosetRep]:
        return [r for r in self if not r.is_unit]

    def signature(self) -> list[int]:
        return sorted(r.N for r in self)


# ---------------------------------------------------------------------------
# coordinates and frames
# ---------------------------------------------------------------------------


def huber_coords(z: complex) -> HuberPoint:
    """``u = log|z|``, ``v = -arctan(x / y)``."""
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("Huber coordinates need Im z > 0")
    return HuberPoint(math.log(abs(z)), -math.atan(z.real / z.imag))


def build_frame(generator) -> GeodesicFrame:
    """Frame sending the axis of a hyperbolic ``generator`` to the imaginary axis.

    Integer input gives an integral frame usable for enumeration; any real
    determinant-one matrix is accepted.
    """
    if isinstance(generator, GroupElement):
        g = generator
        G = g.matrix()
    else:
        arr = np.asarray(generator, dtype=float).reshape(2, 2)
        if np.all(arr == np.round(arr)) and round(np.linalg.det(arr)) == 1:
            g = GroupElement.from_any(arr)
            G = arr
        else:
            if abs(np.linalg.det(arr) - 1.0) > 1e-12:
                raise ValueError("generator must have determinant 1")
            g, G = arr, arr
    tr = float(G[0, 0] + G[1, 1])
    if abs(tr) <= 2:
        raise ValueError(f"generator with trace {tr} is not hyperbolic")
    mu = (abs(tr) + math.sqrt(tr * tr - 4)) / 2
    s = math.copysign(1.0, tr)
    cols = []
    for lam in (s * mu, s / mu):
        # kernel of G - lam: pick the better-conditioned row
        r0 = np.array([G[0, 0] - lam, G[0, 1]])
        r1 = np.array([G[1, 0], G[1, 1] - lam])
        row = r0 if np.hypot(*r0) >= np.hypot(*r1) else r1
        v = np.array([-row[1], row[0]]) if np.hypot(*row) > 0 else np.array([1.0, 0.0])
        cols.append(v / np.hypot(*v))
    P = np.column_stack(cols)
    det = np.linalg.det(P)
    if det < 0:
        P[:, 1] *= -1
        det = -det
    P /= math.sqrt(det)
    M = np.array([[P[1, 1], -P[0, 1]], [-P[1, 0], P[0, 0]]])
    frame = GeodesicFrame(g, M, mu * mu, 2 * math.log(mu))
    res = frame.residual()
    if res > 1e-12 * max(1.0, mu):
        raise ArithmeticError(f"frame conjugation residual {res:.3g}")
    return frame


def default_frame() -> GeodesicFrame:
    """Frame of ``[[2, 1], [1, 1]]``."""
    return build_frame(DEFAULT_GENERATOR)


def b_invariant(g, frame: GeodesicFrame) -> float:
    """``a'd' + b'c'`` of the conjugated matrix."""
    C = frame.conjugate(g)
    return float(C[0, 0] * C[1, 1] + C[0, 1] * C[1, 0])


# ---------------------------------------------------------------------------
# integer helpers (vectorised over rows a, b, c, d)
# ---------------------------------------------------------------------------


def _mul_rows(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    a, b, c, d = X.T
    e, f, g, h = Y.T
    return np.stack([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], axis=1)


def _require_integral(frame: GeodesicFrame) -> GroupElement:
    if not frame.integral:
        raise ValueError("enumeration needs a frame with an integer generator")
    return frame.generator


def _commutes_with(rows: np.ndarray, g: GroupElement) -> np.ndarray:
    G = np.array([g.entries], dtype=np.int64)
    return np.all(_mul_rows(rows, G) == _mul_rows(G, rows), axis=1)


def _sign_normalize(rows: np.ndarray) -> np.ndarray:
    first = np.where(rows[:, 0] != 0, rows[:, 0], np.where(rows[:, 1] != 0, rows[:, 1], rows[:, 2]))
    return rows * np.where(first < 0, -1, 1)[:, None]


def _pow_table(g: GroupElement, ks: np.ndarray) -> dict[int, np.ndarray]:
    return {int(k): np.array(g.power(int(k)).entries, dtype=np.int64) for k in np.unique(ks)}


def _left_mul_powers(g: GroupElement, ks: np.ndarray, rows: np.ndarray) -> np.ndarray:
    out = np.empty_like(rows)
    for k, P in _pow_table(g, ks).items():
        sel = ks == k
        out[sel] = _mul_rows(np.broadcast_to(P, (int(sel.sum()), 4)), rows[sel])
    return out


def _right_mul_powers(g: GroupElement, ks: np.ndarray, rows: np.ndarray) -> np.ndarray:
    out = np.empty_like(rows)
    for k, P in _pow_table(g, ks).items():
        sel = ks == k
        out[sel] = _mul_rows(rows[sel], np.broadcast_to(P, (int(sel.sum()), 4)))
    return out


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------


def _projective_angle(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # the point -q/p on the projective line as an angle in [0, 2 pi), sign-free
    return np.mod(2.0 * np.arctan2(p, -q), 2 * math.pi)


def _coset_rows(frame: GeodesicFrame, H: int) -> np.ndarray:
    g0 = _require_integral(frame)
    rows = _backend.enumerate_sl2(int(H))
    C = frame.conjugate(rows)
    u = 0.5 * np.log((C[:, 0] ** 2 + C[:, 1] ** 2) / (C[:, 2] ** 2 + C[:, 3] ** 2))
    ks = -np.floor(u / frame.length).astype(np.int64)
    red = _sign_normalize(_left_mul_powers(g0, ks, rows))
    # the coset is determined by the preimages of both axis endpoints
    turn = round(2 * math.pi * 1e9)
    key1 = np.round(_projective_angle(C[:, 2], C[:, 3]) * 1e9).astype(np.int64) % turn
    key2 = np.round(_projective_angle(C[:, 0], C[:, 1]) * 1e9).astype(np.int64) % turn
    _, first = np.unique(np.stack([key1, key2], axis=1), axis=0, return_index=True)
    keep = np.sort(first)
    return red[keep]


def enumerate_cosets(frame: GeodesicFrame, H: int) -> list[GroupElement]:
    """Representatives of ``<g0> \\ G`` reachable from matrices with entries at most ``H``.

    Each representative is the member whose conjugated image of ``i`` has
    ``u`` in ``[0, length)``.
    """
    return [GroupElement(*map(int, r)) for r in _coset_rows(frame, H)]


# ---------------------------------------------------------------------------
# double cosets
# ---------------------------------------------------------------------------


def _orbit_related(e1: np.ndarray, e2: np.ndarray, mu: float, tol: float = 1e-7) -> bool:
    """Is ``e2 = +-(a mu^m, b mu^n, c mu^-n, d mu^-m)`` for some ``m = n mod 2``?"""
    lmu = math.log(mu)

    def exps(x1, x2, y1, y2):
        if abs(x1) > tol and abs(x2) > tol:
            return [round(math.log(abs(x2 / x1)) / lmu)]
        if abs(y1) > tol and abs(y2) > tol:
            return [-round(math.log(abs(y2 / y1)) / lmu)]
        return [0, 1]

    scale = max(np.max(np.abs(e1)), np.max(np.abs(e2)), 1.0)
    for m in exps(e1[0], e2[0], e1[3], e2[3]):
        for n in exps(e1[1], e2[1], e1[2], e2[2]):
            if (m - n) % 2:
                continue
            t = np.array([e1[0] * mu ** m, e1[1] * mu ** n, e1[2] * mu ** -n, e1[3] * mu ** -m])
            if min(np.max(np.abs(t - e2)), np.max(np.abs(t + e2))) <= tol * scale:
                return True
    return False


def _census(frame: GeodesicFrame, X: float, H: int) -> Census:
    g0 = _require_integral(frame)
    tr = g0.trace
    disc = tr * tr - 4
    rows = _backend.enumerate_sl2(int(H))
    rows = rows[~_commutes_with(rows, g0)]
    A = g0.matrix() - g0.inverse().matrix()
    Ai = np.array([[int(A[0, 0]), int(A[0, 1]), int(A[1, 0]), int(A[1, 1])]], dtype=np.int64)
    inv = np.stack([rows[:, 3], -rows[:, 1], -rows[:, 2], rows[:, 0]], axis=1)
    P = _mul_rows(_mul_rows(_mul_rows(rows, np.broadcast_to(Ai, rows.shape)), inv),
                  np.broadcast_to(Ai, rows.shape))
    N = P[:, 0] + P[:, 3]
    keep = np.abs(N) <= 2 * disc * X
    rows, N = rows[keep], N[keep]
    if len(rows) == 0:
        return Census([], X, H, frame=frame)
    C = frame.conjugate(rows)
    mm, nn, canon = _backend.canonical_double(C[:, 0], C[:, 1], C[:, 2], C[:, 3], frame.mu)
    heights = np.max(np.abs(rows), axis=1)
    order = np.lexsort((heights, N))
    groups: dict[int, list[tuple[np.ndarray, int, int]]] = {}
    for i in order:
        reps = groups.setdefault(int(N[i]), [])
        e = canon[i]
        if any(_orbit_related(e, r[0], frame.mu) for r in reps):
            continue
        reps.append((e, int(i), int(heights[i])))
    out = []
    for n_val, reps in groups.items():
        for e, i, h in reps:
            m, n = int(mm[i]), int(nn[i])
            j, k = (m + n) // 2, (m - n) // 2
            el = g0.power(j) @ GroupElement(*map(int, rows[i])) @ g0.power(k)
            out.append(DoubleCosetRep(el.normalized(), n_val / (2.0 * disc), h, n_val))
    out.sort(key=lambda r: (abs(r.N), r.element.entries))
    return Census(out, X, H, frame=frame)


def enumerate_double_cosets(frame: GeodesicFrame, X: float, H: int,
                            check: bool = True) -> Census:
    """Non-identity double cosets with ``|B| <= X`` found among matrices with entries at most ``H``.

    With ``check`` the census is recomputed at ``2H``; a change sets
    ``saturated = False`` and emits :class:`CensusIncompleteWarning`.
    """
    census = _census(frame, X, H)
    if check:
        wider = _census(frame, X, 2 * H)
        census.saturated = wider.signature() == census.signature()
        if not census.saturated:
            warnings.warn(f"census at X={X}, H={H} changes under H -> {2 * H} "
                          f"({len(census)} -> {len(wider)} classes)", CensusIncompleteWarning,
                          stacklevel=2)
    return census


def saturated_census(frame: GeodesicFrame, X: float, H0: int = 8, H_max: int = 512) -> Census:
    """Double ``H`` from ``H0`` until the census is stable."""
    H = H0
    cur = _census(frame, X, H)
    while 2 * H <= H_max:
        nxt = _census(frame, X, 2 * H)
        if nxt.signature() == cur.signature():
            cur.saturated = True
            return cur
        H, cur = 2 * H, nxt
    cur.saturated = False
    warnings.warn(f"census at X={X} not saturated by H={H}", CensusIncompleteWarning, stacklevel=2)
    return cur


def count_B(frame: GeodesicFrame, X: float, H: int) -> int:
    """Number of non-identity double cosets with ``|B| <= X`` (entry bound ``H``)."""
    return len(enumerate_double_cosets(frame, X, H, check=False))


def census_csv(census: Sequence[DoubleCosetRep]) -> str:
    """CSV text with header ``a,b,c,d,B,height``."""
    lines = ["a,b,c,d,B,height"]
    reps = sorted(census, key=lambda r: (abs(r.B), r.element.entries))
    for r in reps:
        lines.append("%d,%d,%d,%d,%s,%d" % (*r.element.entries, format(r.B, ".12g"), r.height))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# g0 / g1
# ---------------------------------------------------------------------------


def _x_max(f: RadialTestFunction, cfg: QuadratureConfig) -> float:
    from .window import _x_extent

    return _x_extent(f, cfg)


def _g0_from_h(B: float, h: Callable[[float], float], h0: float, x_max: float,
               cfg: QuadratureConfig) -> float:
    from .window import intersect_form, tail_form
    from .numerics import RealInterval, quad

    B2 = B * B
    if abs(B2 - 1.0) < 1e-14:
        if h0 != 0.0:
            raise DivergenceError("g0 diverges at |B| = 1 when f(1) != 0")
        return 2.0 * quad(lambda x: h(x) / x if x > 0 else 0.0, RealInterval(0.0, x_max), cfg)
    if B2 > 1.0:
        return 2.0 * tail_form(math.sqrt(B2 - 1.0), h, x_max, cfg)
    return 2.0 * intersect_form(math.sqrt(1.0 - B2), h, x_max, cfg)


def _h0(f: RadialTestFunction) -> Callable[[float], float]:
    return lambda x: float(np.asarray(f(np.array([x * x + 1.0])))[0])


def _h1(f: RadialTestFunction, form: str) -> Callable[[float], float]:
    """Integrand profile of ``g1`` in ``x``: ``F(x^2 + 1)``."""
    if form == "derivative":
        # (x f(x^2+1))' = f + 2 x^2 f'
        def h(x):
            p = np.array([x * x + 1.0])
            return float(np.asarray(f(p))[0] + 2 * x * x * np.asarray(f.deriv(p))[0])
    elif form == "printed":
        def h(x):
            p = np.array([x * x + 1.0])
            return float(np.asarray(f(p))[0] + 2 * x * np.asarray(f.deriv(p))[0])
    else:
        raise ValueError(f"unknown g1 form {form!r}")
    return h


def g0_geom(B: float, f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
            x_max: Optional[float] = None) -> float:
    """``g0(B) = 2 int f(x^2+1) / sqrt(x^2+1-B^2) dx`` over ``x >= sqrt(max(B^2-1, 0))``."""
    xm = _x_max(f, cfg) if x_max is None else x_max
    h = _h0(f)
    return _g0_from_h(float(B), h, h(0.0), xm, cfg)


def g1_geom(B: float, f: RadialTestFunction, cfg: QuadratureConfig = DEFAULT_CONFIG,
            x_max: Optional[float] = None, form: str = "derivative") -> float:
    """``g1(B) = B g0(B; F)``.

    ``form='derivative'`` uses ``F(t) = f(t) + 2 (t-1) f'(t)``, so that
    ``F(x^2+1) = (x f(x^2+1))'``; ``form='printed'`` uses ``f + 2 sqrt(t-1) f'``.
    """
    B = float(B)
    if B == 0.0:
        return 0.0
    xm = _x_max(f, cfg) if x_max is None else x_max
    h = _h1(f, form)
    return B * _g0_from_h(B, h, h(0.0), xm, cfg)


# ---------------------------------------------------------------------------
# Huber series and automorphic kernel sums
# ---------------------------------------------------------------------------


def _coset_images(frame: GeodesicFrame, z: complex, H: int) -> np.ndarray:
    """``M gamma M^-1 z`` over coset representatives."""
    rows = _coset_rows(frame, H)
    C = frame.conjugate(rows)
    w = (C[:, 0] * z + C[:, 1]) / (C[:, 2] * z + C[:, 3])
    return w


def huber_series_A0(f: RadialTestFunction, z: complex, frame: GeodesicFrame, H: int,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Truncated ``sum f(1 / cos^2 v(gamma z))`` over cosets."""
    if complex(z).imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    w = _coset_images(frame, complex(z), H)
    p = 1.0 + (w.real / w.imag) ** 2
    return float(np.sum(np.asarray(f(p), dtype=float)))


def huber_series_A1(f: RadialTestFunction, z: complex, frame: GeodesicFrame, H: int,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Truncated ``sum tan v(gamma z) f(1 / cos^2 v(gamma z))`` over cosets."""
    if complex(z).imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    w = _coset_images(frame, complex(z), H)
    t = -w.real / w.imag
    p = 1.0 + t * t
    return float(np.sum(t * np.asarray(f(p), dtype=float)))


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def _sigma_integrals(k: Callable, amp: np.ndarray, shift: np.ndarray, s_max: np.ndarray,
                     panels: int) -> np.ndarray:
    """``2 int_0^s_max k(amp cosh(s) + shift) ds`` for each row, composite Gauss-Legendre."""
    edges = np.linspace(0.0, 1.0, panels + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mids[:, None] + half * _GL_X[None, :]).ravel()
    weights = np.tile(half * _GL_W, panels)
    s = s_max[:, None] * nodes[None, :]
    vals = np.asarray(k((amp[:, None] * np.cosh(s) + shift[:, None]).ravel()), dtype=float)
    vals = vals.reshape(s.shape)
    return 2.0 * s_max * (vals @ weights)


def kernel_sum_F(k: KernelFunction, z: complex, theta: float, frame: GeodesicFrame, H: int,
                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``F(z; theta | k)``: kernel integrated along the rotated axis, summed over cosets.

    For ``gamma z = x + i y`` with ``p = (x^2+y^2)/y^2`` the inner integral is
    ``int_0^inf k((p/(4r) + r/4) sec(theta) + (x/2y) tan(theta) - 1/2) dr/r``,
    evaluated as ``2 int_0^inf k((sqrt(p)/2) cosh(s) sec(theta) + ...) ds``.
    Kernels without a Chebyshev table are tabulated first.
    """
    if complex(z).imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    if abs(theta) >= math.pi / 2:
        raise ValueError("theta must lie in (-pi/2, pi/2)")
    kern = k if isinstance(k.eval, ChebyshevInterpolant) else k.tabulated(cfg=cfg)
    tab = kern.eval
    u_max = tab.b if isinstance(tab, ChebyshevInterpolant) else k.extent(cfg)
    w = _coset_images(frame, complex(z), H)
    x, y = w.real, w.imag
    sp = np.sqrt(1.0 + (x / y) ** 2)
    amp = 0.5 * sp / math.cos(theta)
    shift = 0.5 * (x / y) * math.tan(theta) - 0.5
    # the argument is amp cosh(s) + shift; drop rows that never enter the kernel's support
    live = amp + shift < u_max
    if not np.any(live):
        return 0.0
    amp, shift = amp[live], shift[live]
    s_max = np.arccosh(np.maximum((u_max - shift) / amp, 1.0))
    panels = 8
    prev = _sigma_integrals(tab, amp, shift, s_max, panels)
    while True:
        panels *= 2
        cur = _sigma_integrals(tab, amp, shift, s_max, panels)
        total = float(np.sum(cur))
        if abs(total - float(np.sum(prev))) <= cfg.target(total) or panels >= 512:
            return total
        prev = cur


# ---------------------------------------------------------------------------
# epsilon flag and geometric side
# ---------------------------------------------------------------------------


def epsilon_flag(H: int = 1, member: Optional[Callable[[GroupElement], bool]] = None) -> int:
    """1 iff the group has an element with ``a = d = 0`` and entries at most ``H``.

    ``member`` restricts the search to a subgroup of ``SL(2, Z)`` (default: all of it).
    With ``a = d = 0`` the determinant forces ``b c = -1``.
    """
    for b, c in ((-1, 1), (1, -1)):
        if max(abs(b), abs(c)) > H:
            continue
        g = GroupElement(0, b, c, 0)
        if member is None or member(g):
            return 1
    return 0


def axis_reversal_flag(frame: GeodesicFrame, H: int = 4) -> int:
    """1 iff some element with entries at most ``H`` is antidiagonal in the frame.

    Such an element swaps the endpoints of the axis; it is the zero-diagonal
    element that forces the ``m = 1`` formula to vanish.  For the default
    frame it is ``[[0, -1], [1, 0]]``.
    """
    rows = _backend.enumerate_sl2(int(H))
    rows = rows[rows[:, 0] + rows[:, 3] == 0]
    if len(rows) == 0:
        return 0
    C = frame.conjugate(rows)
    scale = np.max(np.abs(C), axis=1)
    return int(np.any((np.abs(C[:, 0]) < 1e-9 * scale) & (np.abs(C[:, 3]) < 1e-9 * scale)))


@dataclass
class GeometricSide:
    value: float
    identity_term: float
    terms: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    unit_excluded: int = 0
    saturated: Optional[bool] = None

    @property
    def cancellation_ratio(self) -> float:
        denom = float(np.sum(np.abs(self.terms)))
        return abs(float(np.sum(self.terms))) / denom if denom > 0 else 0.0


def geometric_side_terms(variant: str, f: RadialTestFunction, frame: GeodesicFrame,
                         census: Sequence[DoubleCosetRep], cfg: QuadratureConfig = DEFAULT_CONFIG,
                         eps: Optional[int] = None, g1_form: str = "derivative") -> GeometricSide:
    """Geometric side over a given census, with per-class terms.

    ``|B| = 1`` classes are left out of the sum and counted in ``unit_excluded``.
    """
    if variant not in ("a", "b"):
        raise ValueError("variant must be 'a' or 'b'")
    eps = axis_reversal_flag(frame) if eps is None else eps
    xm = _x_max(f, cfg)
    f1 = float(np.asarray(f(np.array([1.0])))[0])
    ident = (1 + eps if variant == "a" else 1 - eps) * f1 * frame.length
    reps = [r for r in census if not r.is_unit]
    Bs = np.array([r.B for r in reps])
    if variant == "a":
        terms = np.array([g0_geom(b, f, cfg, x_max=xm) for b in Bs])
    else:
        terms = np.array([g1_geom(b, f, cfg, x_max=xm, form=g1_form) for b in Bs])
    return GeometricSide(ident + float(np.sum(terms)), ident, terms, Bs,
                         len(census) - len(reps), getattr(census, "saturated", None))


def geometric_side(variant: str, f: RadialTestFunction, frame: GeodesicFrame, X: float, H: int,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``(1 +- eps) f(1) len + sum g0 (variant a) or g1 (variant b)`` over the census."""
    census = enumerate_double_cosets(frame, X, H)
    return geometric_side_terms(variant, f, frame, census, cfg).value
