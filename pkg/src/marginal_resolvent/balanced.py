"""
Balanced regime: Marchenko-Pastur resolvent, the chi / S-transform chain
for the free square of MP_c, and the resulting cubic resolvent curve.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .elimination import SpectralCurve
from .errors import OnBranchCut
from .exactalg import MultiPoly, divide_exact
from .resolvent import DensityCurve, as_rational, density, moments_from_curve

__all__ = [
    "BALANCED_TEXT",
    "MP_TEXT",
    "balanced_curve",
    "mp_curve",
    "mp_resolvent",
    "mp_moments",
    "TransformChain",
    "s_transform_chain",
    "curve_from_chain",
    "chi_bc_by_reversion",
    "balanced_moments",
    "balanced_density",
    "fuss_catalan",
]

BALANCED_TEXT = "z^2*W^3 + 2*(c-1)*z*W^2 + ((c-1)^2 - z)*W + 1"
MP_TEXT = "z*W^2 + (c - z - 1)*W + 1"


def balanced_curve() -> SpectralCurve:
    return SpectralCurve(MultiPoly.parse(BALANCED_TEXT), ("c",), "balanced")


def mp_curve() -> SpectralCurve:
    return SpectralCurve(MultiPoly.parse(MP_TEXT), ("c",), "mp")


def fuss_catalan(n):
    from math import comb

    return comb(3 * n, n) // (2 * n + 1)


def mp_resolvent(z, c_val, side=None):
    """
    Stieltjes transform of MP_c at ``z``.

    Uses ``sqrt(z - a) sqrt(z - b)`` with principal roots, which is the
    branch behaving like ``z`` at infinity.  On the cut ``[a, b]`` a side
    ``"+"`` (``z + i0``) or ``"-"`` must be given.
    """
    c = float(c_val)
    z = complex(z)
    a, b = (1 - c ** 0.5) ** 2, (1 + c ** 0.5) ** 2
    if z.imag == 0 and a <= z.real <= b:
        if side is None:
            raise OnBranchCut(f"z={z.real} lies on the support [{a}, {b}]")
        z = complex(z.real, 1e-300 if side == "+" else -1e-300)
    if z == 0:
        raise OnBranchCut("z = 0")
    root = cmath.sqrt(z - a) * cmath.sqrt(z - b)
    return ((z + 1 - c) - root) / (2 * z)


def mp_moments(n_max, c_val=None):
    """MP_c moments from the quadratic (symbolic in ``c`` by default)."""
    return moments_from_curve(mp_curve(), n_max, None, c_val)


@dataclass(frozen=True)
class TransformChain:
    """Evaluators of the chi / S chain at fixed ``c``."""

    c: object

    def chi_inv(self, t):
        return t / (t * t + (self.c + 1) * t + self.c)

    def S(self, t):
        return 1 / (self.c + t)

    def S_BC(self, t):
        return self.S(t) ** 2

    def chi_bc_inv(self, t):
        return t / ((t + 1) * (self.c + t) ** 2)

    def S_from_chi_inv(self, t, chi_inv=None):
        """``(1 + t) / t * chi^{-1}(t)``: the definition of S."""
        f = chi_inv or self.chi_inv
        return (1 + t) / t * f(t)


def s_transform_chain(c_val) -> TransformChain:
    c = as_rational(c_val) if not isinstance(c_val, float) else c_val
    return TransformChain(c)


def curve_from_chain():
    """
    Cubic obtained from ``u (chi + 1)(c + chi)^2 - chi = 0`` with
    ``chi = z W - 1`` and ``u = 1/z``, after multiplying by ``z``.
    """
    W, z, c = MultiPoly.symbols("W z c")
    chi = z * W - 1
    # z * [ (1/z)(chi+1)(c+chi)^2 - chi ] = (chi+1)(c+chi)^2 - z chi
    expr = (chi + 1) * (c + chi) ** 2 - z * chi
    return SpectralCurve(divide_exact(expr, z), ("c",), "balanced")


def chi_bc_by_reversion(order, c_val):
    """
    Coefficients of ``chi_BC(u)`` through ``u^order`` obtained by reverting
    ``u = t / ((1 + t)(c + t)^2)`` with exact rationals; an independent
    route to the balanced moments.
    """
    c = as_rational(c_val)
    # t = u * h(t) with h(t) = (1 + t)(c + t)^2
    h = [c * c, 2 * c + c * c, 1 + 2 * c, Fraction(1)]
    t = [Fraction(0)] * (order + 1)
    for _ in range(order + 1):
        acc = [Fraction(0)] * (order + 1)
        p = [Fraction(1)] + [Fraction(0)] * order
        for hj in h:
            acc = [a + hj * b for a, b in zip(acc, p)]
            p = [sum(p[i] * t[n - i] for i in range(n + 1)) for n in range(order + 1)]
        t = [Fraction(0)] + acc[:order]
    return t


def balanced_moments(n_max, c_val=None):
    """Moments of MP_c boxtimes MP_c from the cubic (symbolic in ``c`` by default)."""
    return moments_from_curve(balanced_curve(), n_max, None, c_val)


def balanced_density(c_val, grid, epsilon=1e-6, **kw) -> DensityCurve:
    d = density(balanced_curve(), None, c_val, grid, epsilon, **kw)
    d.regime = "balanced"
    d.m = None
    return d

