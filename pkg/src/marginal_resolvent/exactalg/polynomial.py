"""
Sparse multivariate polynomials with exact rational coefficients.

Coefficients are Python ``int`` whenever they are integral and
:class:`fractions.Fraction` otherwise; mixing the two keeps the common
integer case on the fast path.  Exponent vectors are dense tuples over the
polynomial's variable tuple, which is always sorted in the canonical order
given by :data:`CANONICAL_VARS` (unknown names follow, alphabetically).
Because of that ordering, ``max(terms)`` is the lexicographic leading
monomial.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import gcd, lcm
from numbers import Number

from ..errors import NonZeroRemainder

__all__ = ["CANONICAL_VARS", "MultiPoly", "exact_divide", "divide_exact", "poly_arith"]

CANONICAL_VARS = ("x", "y", "c", "S01", "S00", "B01", "B00", "W", "z")
_CANON_INDEX = {name: i for i, name in enumerate(CANONICAL_VARS)}


def var_key(name):
    i = _CANON_INDEX.get(name)
    return (0, i, "") if i is not None else (1, 0, name)


def _norm(q):
    """Bring a scalar into the int-or-Fraction normal form."""
    if type(q) is int:
        return q
    if type(q) is Fraction:
        return q.numerator if q.denominator == 1 else q
    if isinstance(q, bool):
        return int(q)
    if isinstance(q, int):
        return int(q)
    if isinstance(q, Fraction):
        return _norm(Fraction(q.numerator, q.denominator))
    raise TypeError(f"not an exact rational: {q!r}")


def _qdiv(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _norm(Fraction(a) / b)


def _sorted_vars(names):
    out = tuple(sorted(set(names), key=var_key))
    return out


class MultiPoly:
    """Immutable polynomial in named variables over Q."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars=(), terms=None):
        vars = tuple(vars)
        svars = _sorted_vars(vars)
        if len(svars) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        n = len(vars)
        perm = [vars.index(v) for v in svars]
        out = {}
        for e, cf in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} does not match variables {vars}")
            if any(k < 0 for k in e):
                raise ValueError("negative exponent")
            cf = _norm(cf)
            if cf:
                key = tuple(e[p] for p in perm)
                out[key] = _norm(out.get(key, 0) + cf)
                if not out[key]:
                    del out[key]
        self.vars = svars
        self.terms = out
        self._hash = None

    @classmethod
    def _make(cls, vars, terms):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # construction helpers

    @classmethod
    def const(cls, value, vars=()):
        vars = _sorted_vars(vars)
        value = _norm(value)
        return cls._make(vars, {(0,) * len(vars): value} if value else {})

    @classmethod
    def var(cls, name):
        return cls._make((name,), {(1,): 1})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        """``exponents`` maps variable name to power."""
        vars = _sorted_vars(exponents)
        coeff = _norm(coeff)
        if not coeff:
            return cls._make(vars, {})
        return cls._make(vars, {tuple(exponents[v] for v in vars): coeff})

    @classmethod
    def symbols(cls, names):
        return tuple(cls.var(n) for n in names.replace(",", " ").split())

    @classmethod
    def parse(cls, text):
        """Parse ``+ - * ^ **`` expressions with integer constants and names."""
        tree = ast.parse(" ".join(text.replace("^", "**").split()), mode="eval")
        return _eval_ast(tree.body)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, MultiPoly):
            return value
        return cls.const(value)

    # structure

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        """Names of variables that actually occur."""
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def is_constant(self):
        return not self.support()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def trim(self):
        keep = self.support()
        if keep == self.vars:
            return self
        return self.with_vars(keep)

    def with_vars(self, vars):
        """Re-key onto ``vars`` (a superset of the support)."""
        vars = _sorted_vars(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else -1)
        for i, v in enumerate(self.vars):
            if v not in vars and any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} occurs and cannot be dropped")
        terms = {tuple(e[j] if j >= 0 else 0 for j in idx): cf for e, cf in self.terms.items()}
        return MultiPoly._make(vars, terms)

    def degree(self, var):
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficients(self, var):
        """Coefficients in ``var`` (index = power); each keeps this poly's variables."""
        if var not in self.vars:
            return [self]
        i = self.vars.index(var)
        buckets = {}
        for e, cf in self.terms.items():
            k = e[i]
            buckets.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = cf
        d = max(buckets) if buckets else -1
        return [MultiPoly._make(self.vars, buckets.get(k, {})) for k in range(d + 1)]

    @classmethod
    def from_coefficients(cls, coeffs, var):
        acc = cls.const(0)
        for k, cf in enumerate(coeffs):
            cf = cls.coerce(cf)
            if cf:
                acc = acc + cf * cls.monomial({var: k})
        return acc

    def leading_coefficient(self, var):
        return self.coefficients(var)[-1] if self.terms else MultiPoly.const(0, self.vars)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def coefficient(self, exponents):
        """Coefficient of the monomial given as ``{var: power}``."""
        e = tuple(exponents.get(v, 0) for v in self.vars)
        if any(v not in self.vars and k for v, k in exponents.items()):
            return 0
        return self.terms.get(e, 0)

    # arithmetic

    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = _sorted_vars(self.vars + other.vars)
        return vars, self.with_vars(vars).terms, other.with_vars(vars).terms

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, Number):
                other = MultiPoly.const(other, self.vars)
            else:
                return NotImplemented
        vars, a, b = self._aligned(other)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, cf in b.items():
            v = out.get(e, 0) + cf
            if v:
                out[e] = _norm(v) if type(v) is not int else v
            else:
                out.pop(e, None)
        return MultiPoly._make(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.vars, {e: -cf for e, cf in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (MultiPoly, Number)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q):
        q = _norm(q)
        if not q:
            return MultiPoly._make(self.vars, {})
        return MultiPoly._make(self.vars, {e: _norm(cf * q) for e, cf in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, Number):
                return self.scale(other)
            return NotImplemented
        vars, a, b = self._aligned(other)
        if not a or not b:
            return MultiPoly._make(vars, {})
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        n = len(vars)
        if n == 1:
            for (i,), ca in a.items():
                for (j,), cb in b.items():
                    k = (i + j,)
                    out[k] = get(k, 0) + ca * cb
        elif n == 2:
            for (i0, i1), ca in a.items():
                for (j0, j1), cb in b.items():
                    k = (i0 + j0, i1 + j1)
                    out[k] = get(k, 0) + ca * cb
        else:
            for ea, ca in a.items():
                for eb, cb in b.items():
                    k = tuple([p + q for p, q in zip(ea, eb)])
                    out[k] = get(k, 0) + ca * cb
        return MultiPoly._make(vars, {e: _norm(cf) for e, cf in out.items() if cf})

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, MultiPoly):
            return divide_exact(self, q)
        if isinstance(q, Number):
            return self.scale(Fraction(1) / _norm(q))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Number):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self.trim(), other.trim()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # calculus and substitution

    def diff(self, var):
        if var not in self.vars:
            return MultiPoly._make(self.vars, {})
        i = self.vars.index(var)
        out = {}
        for e, cf in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = cf * e[i]
        return MultiPoly._make(self.vars, out)

    def substitute(self, values):
        """Replace variables by numbers or polynomials; returns a MultiPoly."""
        values = {k: MultiPoly.coerce(v) for k, v in values.items() if k in self.vars}
        if not values:
            return self
        keep = tuple(v for v in self.vars if v not in values)
        keep_idx = [self.vars.index(v) for v in keep]
        sub_idx = [(self.vars.index(v), p) for v, p in values.items()]
        powers = {}

        def power(i, p, k):
            key = (i, k)
            if key not in powers:
                powers[key] = p ** k
            return powers[key]

        rest_groups = {}
        for e, cf in self.terms.items():
            sk = tuple(e[i] for i, _ in sub_idx)
            rest_groups.setdefault(sk, {})[tuple(e[i] for i in keep_idx)] = cf
        total = MultiPoly.const(0)
        for sk, rest_terms in rest_groups.items():
            part = MultiPoly._make(keep, rest_terms)
            for (i, p), k in zip(sub_idx, sk):
                if k:
                    part = part * power(i, p, k)
            total = total + part
        return total

    def evaluate(self, values):
        """Evaluate at numbers for every variable present (int, Fraction, float or complex)."""
        missing = [v for v in self.support() if v not in values]
        if missing:
            raise KeyError(f"no value for {missing}")
        vals = [values.get(v, 0) for v in self.vars]
        total = 0
        for e, cf in self.terms.items():
            t = cf
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    # content helpers

    def monomial_content(self):
        """Exponent vector of the largest monomial dividing every term."""
        if not self.terms:
            return (0,) * len(self.vars)
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def divide_monomial(self, exps):
        exps = tuple(exps)
        out = {}
        for e, cf in self.terms.items():
            d = tuple(a - b for a, b in zip(e, exps))
            if min(d, default=0) < 0:
                raise NonZeroRemainder("monomial does not divide polynomial")
            out[d] = cf
        return MultiPoly._make(self.vars, out)

    def integer_normal(self):
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for cf in self.terms.values():
            if type(cf) is Fraction:
                den = lcm(den, cf.denominator)
        ints = {e: int(cf * den) for e, cf in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if ints[max(ints)] < 0:
            g = -g
        return MultiPoly._make(self.vars, {e: v // g for e, v in ints.items()})

    # display

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, cf in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            sign = "-" if cf < 0 else "+"
            mag = -cf if cf < 0 else cf
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def _eval_ast(node):
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponent must be an integer literal")
            return left ** node.right.value
        right = _eval_ast(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant():
                raise ValueError("division only by constants")
            return left.scale(Fraction(1) / right.constant_value())
        raise ValueError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.UnaryOp):
        v = _eval_ast(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return MultiPoly.const(node.value)
    if isinstance(node, ast.Name):
        return MultiPoly.var(node.id)
    raise ValueError(f"cannot parse {ast.dump(node)}")


def poly_arith(a, b, op):
    """``op`` is one of ``"add"``, ``"sub"``, ``"mul"``."""
    a, b = MultiPoly.coerce(a), MultiPoly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _divide_terms(a_terms, b_terms):
    """Lex-leading-term division; returns quotient terms or None if inexact."""
    if not b_terms:
        raise ZeroDivisionError("division by zero polynomial")
    r = dict(a_terms)
    q = {}
    lb = max(b_terms)
    cb = b_terms[lb]
    others = [(e, cf) for e, cf in b_terms.items() if e != lb]
    while r:
        lr = max(r)
        d = tuple([i - j for i, j in zip(lr, lb)])
        if min(d, default=0) < 0:
            return None
        cq = _qdiv(r.pop(lr), cb)
        q[d] = cq
        for e, cf in others:
            k = tuple([i + j for i, j in zip(d, e)])
            v = r.get(k, 0) - cq * cf
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return {e: _norm(cf) for e, cf in q.items()}


def divide_exact(num, den):
    """Quotient ``num / den``; raises :class:`NonZeroRemainder` if inexact."""
    num, den = MultiPoly.coerce(num), MultiPoly.coerce(den)
    vars, a, b = num._aligned(den)
    q = _divide_terms(a, b)
    if q is None:
        raise NonZeroRemainder("polynomial division leaves a remainder")
    return MultiPoly._make(vars, q)


def exact_divide(num, den, var):
    """Long division in ``var`` with exactly divisible leading coefficients."""
    num, den = MultiPoly.coerce(num), MultiPoly.coerce(den)
    db = den.degree(var)
    if db <= 0:
        from ..errors import DegenerateInput

        raise DegenerateInput(f"divisor has no positive degree in {var}")
    vars = _sorted_vars(num.vars + den.vars + (var,))
    num, den = num.with_vars(vars), den.with_vars(vars)
    bc = den.coefficients(var)
    lead = bc[-1]
    rem = num.coefficients(var)
    quot = [MultiPoly.const(0, vars)] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        top = rem[k]
        if top.is_zero():
            continue
        try:
            qk = divide_exact(top, lead)
        except NonZeroRemainder:
            raise NonZeroRemainder(f"division in {var} is not exact") from None
        quot[k - db] = qk
        for j, cf in enumerate(bc):
            if cf:
                rem[k - db + j] = rem[k - db + j] - qk * cf
    if any(not r.is_zero() for r in rem[:db]):
        raise NonZeroRemainder(f"division in {var} leaves a remainder")
    return MultiPoly.from_coefficients(quot, var).with_vars(vars) if quot else MultiPoly.const(0, vars)
