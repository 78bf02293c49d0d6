"""Truncated power series in one formal variable with MultiPoly coefficients."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NonUnitConstantTerm, OrderMismatch
from .polynomial import MultiPoly

__all__ = ["TruncatedSeries", "series_arith", "series_geometric_inverse", "series_of_poly"]

_ZERO = MultiPoly.const(0)
_ONE = MultiPoly.const(1)


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{j<=order} coeffs[j] * var^j``; products are cut at ``order``."""

    order: int
    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        coeffs = tuple(MultiPoly.coerce(c) for c in self.coeffs)
        if len(coeffs) > self.order + 1:
            raise ValueError("more coefficients than order + 1")
        coeffs = coeffs + (_ZERO,) * (self.order + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, order, var="x"):
        return cls(order, (), var)

    @classmethod
    def one(cls, order, var="x"):
        return cls(order, (_ONE,), var)

    @classmethod
    def constant(cls, value, order, var="x"):
        return cls(order, (MultiPoly.coerce(value),), var)

    @classmethod
    def generator(cls, order, var="x"):
        """The series ``var`` itself."""
        if order == 0:
            return cls.zero(0, var)
        return cls(order, (_ZERO, _ONE), var)

    def __getitem__(self, j):
        return self.coeffs[j]

    def __len__(self):
        return self.order + 1

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.order != self.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(other, self.order, self.var)
        self._check(other)
        return TruncatedSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, tuple(-a for a in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            q = MultiPoly.coerce(other)
            return TruncatedSeries(self.order, tuple(a * q for a in self.coeffs), self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        K = self.order
        # skip leading zero runs, common for the petal series
        la = next((i for i, t in enumerate(a) if t), K + 1)
        lb = next((i for i, t in enumerate(b) if t), K + 1)
        out = []
        for n in range(K + 1):
            acc = _ZERO
            for i in range(la, n - lb + 1):
                ai, bj = a[i], b[n - i]
                if ai and bj:
                    acc = acc + ai * bj
            out.append(acc)
        return TruncatedSeries(K, tuple(out), self.var)

    __rmul__ = __mul__

    def shift(self, k=1):
        """Multiply by ``var**k`` (truncating)."""
        return TruncatedSeries(self.order, ((_ZERO,) * k + self.coeffs)[: self.order + 1], self.var)

    def truncate(self, order):
        return TruncatedSeries(order, self.coeffs[: order + 1], self.var)

    def pad(self, order):
        return TruncatedSeries(order, self.coeffs[: order + 1], self.var)

    def map(self, fn):
        return TruncatedSeries(self.order, tuple(fn(c) for c in self.coeffs), self.var)

    def __pow__(self, k):
        out = TruncatedSeries.one(self.order, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})*{self.var}^{j}")
        return " + ".join(parts) + f" + O({self.var}^{self.order + 1})" if parts else f"O({self.var}^{self.order + 1})"


def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown op {op!r}")


def series_geometric_inverse(a):
    """Multiplicative inverse of a series whose constant term is exactly 1."""
    if not (a.coeffs[0] == _ONE):
        raise NonUnitConstantTerm(f"constant term is {a.coeffs[0]}, not 1")
    K = a.order
    b = [_ONE]
    for n in range(1, K + 1):
        acc = _ZERO
        for k in range(1, n + 1):
            if a.coeffs[k] and b[n - k]:
                acc = acc + a.coeffs[k] * b[n - k]
        b.append(-acc)
    return TruncatedSeries(K, tuple(b), a.var)


def series_of_poly(poly, substitutions, order, var="x"):
    """
    Evaluate ``poly`` with some variables replaced by series.

    ``var`` itself becomes the series variable; variables absent from
    ``substitutions`` stay in the coefficients.
    """
    poly = MultiPoly.coerce(poly)
    subs = {k: s for k, s in substitutions.items() if k in poly.vars}
    names = list(subs)
    keep = tuple(v for v in poly.vars if v not in subs and v != var)
    ivar = poly.vars.index(var) if var in poly.vars else None
    keep_idx = [poly.vars.index(v) for v in keep]
    sub_idx = [poly.vars.index(v) for v in names]

    groups = {}
    for e, cf in poly.terms.items():
        key = tuple(e[i] for i in sub_idx) + ((e[ivar],) if ivar is not None else (0,))
        groups.setdefault(key, {})[tuple(e[i] for i in keep_idx)] = cf

    powers = {}

    def power(name, k):
        if (name, k) not in powers:
            if k == 0:
                powers[(name, k)] = TruncatedSeries.one(order, var)
            elif k == 1:
                powers[(name, k)] = subs[name]
            else:
                powers[(name, k)] = power(name, k - 1) * subs[name]
        return powers[(name, k)]

    total = TruncatedSeries.zero(order, var)
    for key, terms in groups.items():
        coeff = MultiPoly._make(keep, terms)
        *sk, xk = key
        if xk > order:
            continue
        term = TruncatedSeries.constant(coeff, order, var).shift(xk)
        for name, k in zip(names, sk):
            if k:
                term = term * power(name, k)
        total = total + term
    return total
