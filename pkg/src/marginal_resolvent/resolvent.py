"""
Working with the resolvent curve: moments from the expansion at infinity,
branch continuation, Stieltjes inversion and support endpoints.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BranchAmbiguity,
    DiscriminantDegenerate,
    InconsistentLeadingOrder,
    NoRootConverged,
    NonZeroRemainder,
)
from .exactalg import MultiPoly, TruncatedSeries, discriminant, exact_divide, poly_gcd, rational_nullspace, series_of_poly
from .exactalg.polynomial import divide_exact
from .maps import MomentTable

__all__ = [
    "BranchState",
    "DensityCurve",
    "NumericCurve",
    "as_rational",
    "moments_from_curve",
    "track_branch",
    "density",
    "density_grid",
    "support_endpoints",
    "SupportReport",
    "split_factor",
]

DEFAULT_EPSILON = 1e-6
MAX_HALVINGS = 20
ROOT_RTOL = 1e-12
RESIDUAL_RTOL = 1e-10


def as_rational(v):
    """Exact value for a parameter given as int, Fraction, str or float."""
    if v is None:
        return None
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v).limit_denominator(10 ** 12)


def _params(y_val, c_val):
    out = {}
    if y_val is not None:
        out["y"] = as_rational(y_val)
    if c_val is not None:
        out["c"] = as_rational(c_val)
    return out


# ---------------------------------------------------------------- moments


def _expansion_equation(poly):
    """
    With ``W = u F`` and ``z = 1/u`` rewrite ``Q(W, z)`` as ``G(F, u)``
    (polynomial in ``u``), stored with ``W`` standing for ``F`` and ``z``
    for ``u``.
    """
    iw, iz = poly.vars.index("W"), poly.vars.index("z")
    shift = max(e[iz] - e[iw] for e in poly.terms)
    terms = {}
    for e, cf in poly.terms.items():
        e2 = list(e)
        e2[iz] = e[iw] - e[iz] + shift
        terms[tuple(e2)] = cf
    return MultiPoly(poly.vars, terms)


def moments_from_curve(curve, n_max, y_val=None, c_val=None) -> MomentTable:
    """
    Moments ``M_0 .. M_n_max`` of the branch ``W = sum M_n z^(-n-1)``.

    ``M_0 = 1`` is imposed; each further coefficient solves a linear
    equation whose coefficient is ``dG/dF`` at ``(F, u) = (1, 0)``.
    Parameters left as ``None`` stay symbolic.
    """
    poly = curve.poly.substitute(_params(y_val, c_val)) if (y_val is not None or c_val is not None) else curve.poly
    poly = poly.with_vars(tuple(sorted(set(poly.vars) | {"W", "z"}, key=lambda v: (v not in ("W", "z"), v))))
    G = _expansion_equation(poly).trim()
    lead = G.substitute({"z": 0})
    if not lead.substitute({"W": 1}).is_zero():
        raise InconsistentLeadingOrder(f"M_0 = 1 leaves {lead.substitute({'W': 1})} at leading order")
    g0 = lead.diff("W").substitute({"W": 1}).trim()
    if g0.is_zero():
        raise InconsistentLeadingOrder("leading equation has a multiple root at M_0 = 1")
    coeffs = [MultiPoly.const(1)]
    for n in range(1, n_max + 1):
        F = TruncatedSeries(n, tuple(coeffs), "z")
        r = series_of_poly(G, {"W": F}, n, "z")[n]
        if g0.is_constant():
            m = r.scale(Fraction(-1) / Fraction(g0.constant_value()))
        else:
            try:
                m = -divide_exact(r, g0)
            except NonZeroRemainder:
                raise InconsistentLeadingOrder(f"M_{n} is not a polynomial in the parameters") from None
        coeffs.append(m.trim())
    return MomentTable(tuple(coeffs))


# ---------------------------------------------------------------- numerics


class NumericCurve:
    """Float coefficients ``A[b, a]`` of ``W^b z^a`` at fixed parameters."""

    def __init__(self, curve, y_val=None, c_val=None):
        vals = {}
        if y_val is not None and "y" in curve.poly.vars:
            vals["y"] = y_val
        if c_val is not None:
            vals["c"] = c_val
        self.curve = curve
        self.A = curve.coefficient_grid(**vals)
        self.degree = self.A.shape[0] - 1
        self._zpow = np.arange(self.A.shape[1])

    def w_coefficients(self, z):
        """Coefficients in ``W`` (ascending) at the point ``z``."""
        return self.A @ (complex(z) ** self._zpow)

    def residual(self, w, z):
        p = self.w_coefficients(z)
        powers = w ** np.arange(len(p))
        return abs(np.dot(p, powers)), float(np.sum(np.abs(p) * np.abs(powers)))

    def slope(self, w, z):
        """``dw/dz = -Q_z / Q_W`` on the curve."""
        z = complex(z)
        zp = z ** self._zpow
        dzp = np.concatenate([[0], self._zpow[1:] * z ** (self._zpow[1:] - 1)])
        wp = w ** np.arange(self.degree + 1)
        dwp = np.concatenate([[0], np.arange(1, self.degree + 1) * w ** np.arange(self.degree)])
        qz = wp @ self.A @ dzp
        qw = dwp @ self.A @ zp
        return -qz / qw if qw != 0 else 0.0

    def roots(self, z):
        p = self.w_coefficients(z)
        nz = np.nonzero(np.abs(p) > 1e-300)[0]
        if len(nz) == 0:
            raise NoRootConverged(f"curve vanishes identically at z={z}")
        p = p[: nz[-1] + 1]
        if len(p) < 2:
            raise NoRootConverged(f"no roots in W at z={z}")
        r = np.roots(p[::-1])
        dp = p[1:] * np.arange(1, len(p))
        for _ in range(3):
            f = np.polyval(p[::-1], r)
            d = np.polyval(dp[::-1], r)
            ok = np.abs(d) > 0
            r = np.where(ok, r - np.where(ok, f / np.where(ok, d, 1), 0), r)
        if not np.all(np.isfinite(r)):
            raise NoRootConverged(f"non-finite roots at z={z}")
        return r


@dataclass
class BranchState:
    z: complex
    w: complex
    history: list = field(default_factory=list)


def _nearest(roots, w):
    d = np.abs(roots - w)
    order = np.argsort(d)
    return roots[order[0]], d[order[0]], (d[order[1]] if len(d) > 1 else np.inf)


def _step(nc, state, z_new):
    """
    Advance ``state`` to ``z_new``.  On ambiguity the step is halved (at
    most ``MAX_HALVINGS`` times in a row) and regrown after each success.
    """
    target = complex(z_new)
    frac = 1.0
    fails = 0
    while state.z != target:
        z = target if frac >= 1.0 else state.z + frac * (target - state.z)
        roots = nc.roots(z)
        pred = state.w + nc.slope(state.w, state.z) * (z - state.z)
        if not np.isfinite(pred):
            pred = state.w
        w, d1, d2 = _nearest(roots, pred)
        if d2 < 2 * d1 and d1 > 1e-14 * (1 + abs(pred)):
            fails += 1
            if fails > MAX_HALVINGS:
                raise BranchAmbiguity(f"cannot separate branches near z={z}")
            frac *= 0.5
            continue
        res, scale = nc.residual(w, z)
        if res > RESIDUAL_RTOL * max(scale, 1e-300):
            raise NoRootConverged(f"residual {res:.3e} at z={z}")
        state.z, state.w = z, w
        state.history.append((z, w))
        fails = 0
        frac = min(1.0, 2.0 * frac)


def _start(nc, z0):
    roots = nc.roots(z0)
    w, _, _ = _nearest(roots, 1 / z0)
    return BranchState(z0, w, [(z0, w)])


def track_branch(curve, path, y_val=None, c_val=None, w0=None, numeric=None):
    """
    Follow the root of the curve along ``path``.

    The start value is the root nearest ``1/path[0]`` unless ``w0`` is
    given; afterwards the nearest root to the previous value is taken,
    with step halving when two roots compete.
    """
    nc = numeric or NumericCurve(curve, y_val, c_val)
    path = [complex(z) for z in path]
    state = _start(nc, path[0]) if w0 is None else BranchState(path[0], complex(w0), [(path[0], complex(w0))])
    out = [state.w]
    for z in path[1:]:
        _step(nc, state, z)
        out.append(state.w)
    return out


# ---------------------------------------------------------------- density


@dataclass
class DensityCurve:
    lambdas: np.ndarray
    rho: np.ndarray
    c: float
    m: float
    epsilon: float
    support_estimate: tuple = (None, None)
    regime: str = "unbalanced"

    def mass(self):
        return float(np.trapezoid(self.rho, self.lambdas))

    def moment(self, k):
        return float(np.trapezoid(self.rho * self.lambdas ** k, self.lambdas))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["lambda", "rho"])
            for lam, r in zip(self.lambdas, self.rho):
                w.writerow([repr(float(lam)), repr(float(r))])

    def to_dict(self):
        return {
            "regime": self.regime,
            "c": self.c,
            "m": self.m,
            "epsilon": self.epsilon,
            "support_estimate": list(self.support_estimate),
            "mass": self.mass(),
            "lambda": [float(v) for v in self.lambdas],
            "rho": [float(v) for v in self.rho],
        }

    def to_json(self, path, extra=None):
        data = self.to_dict()
        if extra:
            data.update(extra)
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1)


def density_grid(upper, points=1500, lower=0.0, tail=1.0, fine=1e-12, ratio=1.04):
    """
    Abscissae covering ``[lower, upper]`` plus a short negative tail, with
    geometric clustering at ``lower`` (where the density may blow up).
    """
    n_geo = int(np.ceil(np.log(tail / fine) / np.log(ratio)))
    geo = fine * ratio ** np.arange(n_geo + 1)
    left = lower - geo[::-1]
    right = lower + geo[geo < min(tail, upper - lower)]
    start = right[-1] if len(right) else lower
    bulk = np.linspace(start, upper, points)
    return np.unique(np.concatenate([left, [lower], right, bulk]))


def _heights(H, eps, ratio=0.5):
    hs = [H]
    while hs[-1] * ratio > eps:
        hs.append(hs[-1] * ratio)
    hs.append(eps)
    return hs


def _stieltjes_on_grid(nc, grid, eps, R_start, H):
    """``w(lambda + i eps)`` on the tracked branch for each grid point."""
    grid = np.asarray(grid, dtype=float)
    order = np.argsort(grid)[::-1]
    state = _start(nc, complex(R_start, H))
    # sweep along Im z = H from R_start to the bottom of the grid
    top = grid[order[0]]
    x = R_start
    while x > top:
        x = max(top, x - max(0.25 * H, 0.1 * (x - top)))
        _step(nc, state, complex(x, H))
    heights = _heights(H, eps)
    w_out = np.empty(len(grid), dtype=complex)
    max_dx = 0.25 * H
    for i in order:
        lam = grid[i]
        while state.z.real - lam > max_dx:
            _step(nc, state, complex(state.z.real - max_dx, H))
        _step(nc, state, complex(lam, H))
        anchor = BranchState(state.z, state.w, [])
        down = BranchState(state.z, state.w, [])
        for h in heights[1:]:
            _step(nc, down, complex(lam, h))
        w_out[i] = down.w
        state = anchor
    return w_out


def _default_R(nc):
    # Cauchy-type bound on the scale of z where branches meet: crude but safe
    return 10.0 * (1.0 + _support_guess(nc))


def _support_guess(nc):
    # largest root modulus in z of the leading W coefficient and of the discriminant proxy
    A = nc.A
    bound = 1.0
    for b in range(A.shape[0]):
        row = np.trim_zeros(A[b], "b")
        if len(row) > 1 and row[-1] != 0:
            bound = max(bound, float(np.max(np.abs(row[:-1]) / abs(row[-1]))) + 1)
    return min(bound, 1e4)


def density(curve, y_val, c_val, grid, epsilon=DEFAULT_EPSILON, R_start=None, H=None, extrapolate=False, support=None):
    """
    ``rho(lambda) = -Im w(lambda + i eps) / pi`` on the branch analytic at
    infinity, reached from ``R_start + iH`` by a horizontal sweep and a
    geometric descent at each abscissa.
    """
    nc = NumericCurve(curve, y_val, c_val)
    grid = np.asarray(grid, dtype=float)
    if R_start is None:
        R_start = max(_default_R(nc), 10.0 * (1 + abs(grid).max()))
    if H is None:
        H = max(1.0, 0.05 * float(grid.max() - grid.min()))
    w = _stieltjes_on_grid(nc, grid, epsilon, R_start, H)
    rho = -w.imag / np.pi
    if extrapolate:
        w2 = _stieltjes_on_grid(nc, grid, epsilon / 2, R_start, H)
        rho = 2 * (-w2.imag / np.pi) - rho
    y = float(y_val) if y_val is not None else None
    m = (1.0 / y if y else float("inf")) if y is not None else None
    return DensityCurve(grid, rho, float(c_val), m, epsilon, support or (None, None), curve.regime)


# ---------------------------------------------------------------- support


def split_factor(curve, y_val, c_val, z_degree=None, order=None):
    """
    Proper factor of the specialised curve carrying the branch analytic at
    infinity, or ``None``.

    Looks for the lowest-degree polynomial relation ``P(W, z)`` with
    ``deg_W P < deg_W Q`` satisfied by the moment series, then checks that
    ``P`` divides ``Q`` exactly.
    """
    spec = curve.specialize(**_params(y_val, c_val))
    Q = spec.poly.with_vars(("W", "z"))
    dW = Q.degree("W")
    dz = Q.degree("z") if z_degree is None else z_degree
    for d in range(1, dW):
        ncols = (d + 1) * (dz + 1)
        N = order or (ncols + 8)
        M = moments_from_curve(spec, N + d, None, None).evaluate()
        M = [Fraction(v) for v in M]
        # F(u) = sum M_n u^n, W^b z^a = u^(b-a) F^b; scale by u^dz
        Fpow = [[Fraction(1)] + [Fraction(0)] * N]
        for b in range(1, d + 1):
            prev = Fpow[-1]
            Fpow.append([sum(prev[i] * M[n - i] for i in range(n + 1)) for n in range(N + 1)])
        cols = []
        for b in range(d + 1):
            for a in range(dz + 1):
                s = b - a + dz
                cols.append([Fpow[b][n - s] if n >= s else Fraction(0) for n in range(N + 1)])
        rows = [[cols[j][n] for j in range(ncols)] for n in range(N + 1)]
        basis = rational_nullspace(rows, ncols)
        for v in basis:
            terms = {}
            for j, cf in enumerate(v):
                if cf:
                    b, a = divmod(j, dz + 1)
                    terms[(b, a)] = cf
            P = MultiPoly(("W", "z"), terms).trim()
            if P.degree("W") <= 0:
                continue
            try:
                exact_divide(Q, P, "W")
            except (NonZeroRemainder, Exception):
                continue
            return P.integer_normal()
    return None


@dataclass
class SupportReport:
    lo: float
    hi: float
    endpoints: list
    candidates: list
    multi_interval: bool


def _real_roots_exact(p):
    """Real roots of a univariate MultiPoly in ``z`` (simple roots, polished)."""
    p = p.with_vars(("z",)).trim()
    if p.degree("z") <= 0:
        return []
    sq = p
    dp = p.diff("z")
    g = poly_gcd(p, dp)
    if g.degree("z") > 0:
        sq = exact_divide(p, g, "z")
    coeffs = [float(c.constant_value()) if c else 0.0 for c in sq.with_vars(("z",)).coefficients("z")]
    r = np.roots(coeffs[::-1])
    out = []
    scale = max(1.0, float(np.max(np.abs(r))) if len(r) else 1.0)
    for v in r:
        if abs(v.imag) < 1e-7 * scale:
            x = v.real
            # Newton polish on the exact square-free part
            c = np.array(coeffs[::-1])
            dc = np.polyder(c)
            for _ in range(5):
                d = np.polyval(dc, x)
                if d == 0:
                    break
                x -= np.polyval(c, x) / d
            out.append(float(x))
    return sorted(set(round(v, 12) for v in out))


PROBE_EPSILON = 1e-10


def support_endpoints(curve, y_val, c_val, probe=None, floor=1e-6, ratio=1e3) -> SupportReport:
    """
    Real ramification points from the discriminant in ``W``, kept only
    where the density switches between zero and positive values.
    """
    if split_factor(curve, y_val, c_val) is not None:
        raise DiscriminantDegenerate("curve splits at these parameters; use the factor carrying the physical branch")
    spec = curve.specialize(**_params(y_val, c_val))
    Q = spec.poly.with_vars(("W", "z"))
    D = discriminant(Q, "W")
    if D.is_zero():
        raise DiscriminantDegenerate("discriminant vanishes identically")
    mono = D.with_vars(("z",)).monomial_content()
    cands = _real_roots_exact(D.with_vars(("z",)).divide_monomial(mono))
    if mono[0] > 0:
        cands = sorted(set(cands) | {0.0})
    nc = NumericCurve(curve, y_val, c_val)
    ends = []
    span = max(1.0, max(abs(v) for v in cands) if cands else 1.0)
    for r in cands:
        delta = probe or 1e-3 * max(1.0, abs(r))
        pts = np.array([r - delta, r + delta])
        R = 10 * (1 + span)
        w = _stieltjes_on_grid(nc, pts, PROBE_EPSILON, R, max(1.0, 0.05 * span))
        lo_side, hi_side = np.abs(w.imag) / np.pi
        small, big = min(lo_side, hi_side), max(lo_side, hi_side)
        if big > floor and big > ratio * max(small, 1e-15):
            ends.append(r)
    if not ends:
        raise DiscriminantDegenerate("no discriminant root bounds the support")
    lo, hi = min(ends), max(ends)
    return SupportReport(lo, hi, ends, cands, len(ends) > 2)
