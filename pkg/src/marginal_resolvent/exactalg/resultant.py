"""
Resultants, pseudo-remainders and gcds for :class:`MultiPoly`.

The resultant follows the subresultant pseudo-remainder sequence (Collins,
Brown), so every division along the way is exact in Q[other variables].
The gcd is the recursive primitive-PRS algorithm; it is only used to split
off common factors during elimination, never for factorisation.
"""

from __future__ import annotations

from ..errors import DegenerateInput
from .polynomial import MultiPoly, divide_exact, var_key

__all__ = [
    "pseudo_remainder",
    "resultant",
    "discriminant",
    "content",
    "primitive_part",
    "poly_gcd",
]

ONE = MultiPoly.const(1)


def _lc(p, var):
    return p.coefficients(var)[-1]


def pseudo_remainder(a, b, var):
    """``lc(b)^(deg a - deg b + 1) * a  mod  b`` in ``var``."""
    db = b.degree(var)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    da = a.degree(var)
    if da < db:
        return a
    lb = _lc(b, var)
    bc = b.coefficients(var)
    r = a.coefficients(var)
    e = da - db + 1
    # dense coefficient lists keep the inner loop cheap
    for k in range(da, db - 1, -1):
        top = r[k]
        if top.is_zero():
            r = [cf * lb for cf in r]
            e -= 1
            continue
        r = [cf * lb for cf in r]
        for j, cf in enumerate(bc):
            if cf:
                r[k - db + j] = r[k - db + j] - top * cf
        e -= 1
    out = MultiPoly.from_coefficients(r[:db], var)
    if e:
        out = out * lb ** e
    return out


def resultant(p, q, var):
    """Res_var(p, q) via the subresultant PRS."""
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    dp, dq = p.degree(var), q.degree(var)
    if dp <= 0 or dq <= 0:
        raise DegenerateInput(f"both polynomials need positive degree in {var}")
    a, b = p, q
    sign = 1
    if dp < dq:
        a, b = b, a
        if dp % 2 and dq % 2:
            sign = -sign
    g = h = ONE
    while True:
        da, db = a.degree(var), b.degree(var)
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = pseudo_remainder(a, b, var)
        a = b
        if r.is_zero():
            return MultiPoly.const(0)
        b = divide_exact(r, g * h ** delta)
        g = _lc(a, var)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = divide_exact(g ** delta, h ** (delta - 1))
        if b.degree(var) == 0:
            break
    da = a.degree(var)
    if da == 1:
        res = b
    else:
        res = divide_exact(b ** da, h ** (da - 1))
    return (res if sign > 0 else -res).trim()


def discriminant(p, var):
    """Res(p, p') / lc(p), with the usual sign (-1)^(d(d-1)/2)."""
    d = p.degree(var)
    if d < 2:
        raise DegenerateInput("discriminant needs degree >= 2")
    r = resultant(p, p.diff(var), var)
    r = divide_exact(r, _lc(p, var))
    return -r if (d * (d - 1) // 2) % 2 else r


def content(p, var):
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    g = MultiPoly.const(0)
    for cf in p.coefficients(var):
        if cf.is_zero():
            continue
        g = poly_gcd(g, cf)
        if g.is_constant():
            return ONE
    return g


def primitive_part(p, var):
    if p.is_zero():
        return p
    return divide_exact(p, content(p, var))


def _main_var(a, b):
    names = set(a.support()) | set(b.support())
    return min(names, key=lambda v: (max(a.degree(v), b.degree(v)), var_key(v)))


def poly_gcd(a, b):
    """Greatest common divisor, normalised by :meth:`MultiPoly.integer_normal`."""
    a, b = MultiPoly.coerce(a), MultiPoly.coerce(b)
    if a.is_zero():
        return b.integer_normal().trim() if b else b
    if b.is_zero():
        return a.integer_normal().trim()
    if a.is_constant() or b.is_constant():
        return ONE
    v = _main_var(a, b)
    if a.degree(v) == 0:
        return poly_gcd(a, content(b, v))
    if b.degree(v) == 0:
        return poly_gcd(content(a, v), b)
    ca, cb = content(a, v), content(b, v)
    pa, pb = divide_exact(a, ca), divide_exact(b, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        if pb.degree(v) == 0:
            pa = ONE
            break
        r = pseudo_remainder(pa, pb, v)
        pa, pb = pb, primitive_part(r, v)
    if not pa.is_constant():
        pa = primitive_part(pa, v)
    return (poly_gcd(ca, cb) * pa).integer_normal().trim()
