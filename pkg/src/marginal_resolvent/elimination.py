"""
From the petal system to the algebraic equation of the resolvent.

The four generators are eliminated with iterated resultants.  Whenever a
resultant vanishes identically the two inputs share a factor; it is split
off with a gcd, checked not to carry the series branch, and dropped.
After each stage the monomial factor and the content in the parameters
``x, y, c`` are stripped; each stripped piece is checked against the
series solution so that nothing the series satisfies is ever discarded.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field

from .errors import DegenerateInput, EliminationFailed, OddPowerEncountered
from .exactalg import MultiPoly, TruncatedSeries, exact_divide, poly_gcd, resultant, series_of_poly
from .exactalg.polynomial import divide_exact
from .petals import PetalSystemState, solve_petal_system

__all__ = [
    "SpectralCurve",
    "EliminationResult",
    "build_system",
    "eliminate_to_eta",
    "eta_to_sextic",
    "reference_eta",
    "reference_sextic",
    "curve_diff",
    "vanishes_on_series",
    "degenerate_branch",
]

UNKNOWNS = ("S01", "S00", "B01", "B00")
PARAMETERS = ("x", "y", "c")
DEFAULT_ELIMINATION_ORDER = ("B00", "B01", "S00")
WITNESS_ORDER = 12

# Reference transcriptions of the published eta and resolvent curve.  They are
# regression targets only; nothing in the pipeline reads them.
ETA_TEXT = """
S01^7*(x^4*y^4-2*x^4*y^2+x^4)
+S01^6*(4*c*x^4*y^4-8*c*x^4*y^2+4*c*x^4-3*x^4*y^4+6*x^4*y^2-3*x^4)
+S01^5*(6*c^2*x^4*y^4-12*c^2*x^4*y^2+6*c^2*x^4-9*c*x^4*y^4+18*c*x^4*y^2-9*c*x^4+3*x^4*y^4-6*x^4*y^2+3*x^4-2*x^2*y^2-2*x^2)
+S01^4*(4*c^3*x^4*y^4-8*c^3*x^4*y^2+4*c^3*x^4-9*c^2*x^4*y^4+18*c^2*x^4*y^2-9*c^2*x^4+6*c*x^4*y^4-12*c*x^4*y^2+6*c*x^4
        -6*c*x^2*y^2-6*c*x^2-x^4*y^4+2*x^4*y^2-x^4+4*x^2*y^2+4*x^2)
+S01^3*(c^4*x^4*y^4-2*c^4*x^4*y^2+c^4*x^4-3*c^3*x^4*y^4+6*c^3*x^4*y^2-3*c^3*x^4+3*c^2*x^4*y^4-6*c^2*x^4*y^2+3*c^2*x^4
        -6*c^2*x^2*y^2-7*c^2*x^2-c*x^4*y^4+2*c*x^4*y^2-c*x^4+9*c*x^2*y^2+9*c*x^2-3*x^2*y^2-2*x^2+1)
+S01^2*(-2*c^3*x^2*y^2-4*c^3*x^2+6*c^2*x^2*y^2+7*c^2*x^2-5*c*x^2*y^2-3*c*x^2+2*c+x^2*y^2-1)
+S01*(-c^4*x^2+c^3*x^2*y^2+2*c^3*x^2-2*c^2*x^2*y^2-c^2*x^2+c^2+c*x^2*y^2-2*c)
-c^2
"""

SEXTIC_TEXT = """
W^6*(y^4*z^4-2*y^2*z^4+z^4)
+W^5*(3*c*y^4*z^3-6*c*y^2*z^3+3*c*z^3-3*y^4*z^3+6*y^2*z^3-3*z^3)
+W^4*(3*c^2*y^4*z^2-6*c^2*y^2*z^2+3*c^2*z^2-6*c*y^4*z^2+12*c*y^2*z^2-6*c*z^2+3*y^4*z^2-2*y^2*z^3-6*y^2*z^2
      -2*z^3+3*z^2)
+W^3*(c^3*y^4*z-2*c^3*y^2*z+c^3*z-3*c^2*y^4*z+6*c^2*y^2*z-3*c^2*z+3*c*y^4*z-4*c*y^2*z^2
      -6*c*y^2*z-4*c*z^2+3*c*z-y^4*z+4*y^2*z^2+2*y^2*z+4*z^2-z)
+W^2*(-2*c^2*y^2*z-3*c^2*z+5*c*y^2*z+5*c*z-3*y^2*z+z^2-2*z)
+W*(-c^3+c^2*y^2+2*c^2-2*c*y^2+c*z-c+y^2-z)
-c
"""


@dataclass(frozen=True)
class SpectralCurve:
    """Polynomial ``Q(W, z)`` with exact coefficients in the parameters."""

    poly: MultiPoly
    params: tuple = ("y", "c")
    regime: str = "unbalanced"

    @property
    def degree_W(self):
        return self.poly.degree("W")

    def specialize(self, **values):
        """Substitute exact parameter values (``y=..., c=...``)."""
        vals = {k: v for k, v in values.items() if v is not None}
        return SpectralCurve(self.poly.substitute(vals), tuple(p for p in self.params if p not in vals), self.regime)

    def coefficient_grid(self, **values):
        """Float array ``A[b, a]``: coefficient of ``W^b z^a`` at the given parameters."""
        import numpy as np

        spec = self.specialize(**values)
        free = [v for v in spec.poly.support() if v not in ("W", "z")]
        if free:
            raise ValueError(f"parameters {free} still free")
        p = spec.poly.with_vars(("W", "z"))
        dw = max(p.degree("W"), 0)
        dz = max(p.degree("z"), 0)
        grid = np.zeros((dw + 1, dz + 1))
        for (b, a), cf in p.terms.items():
            grid[b, a] = float(cf)
        return grid

    def __str__(self):
        return str(self.poly)


@dataclass
class EliminationResult:
    eta: MultiPoly
    raw: MultiPoly
    stripped: list = field(default_factory=list)
    split_common: list = field(default_factory=list)
    stages: list = field(default_factory=list)


def build_system(transcription: str = "lemma"):
    """
    The four generators in ``x, y, c, S01, S00, B01, B00``.

    ``transcription="lemma"`` uses ``D = 1 - 2 B01 + B01^2 - B00^2`` (the
    transfer-matrix denominator); ``"printed"`` uses the variant with a
    single ``-B01``, which the series solution and the map enumeration
    both reject.
    """
    x, y, c, S01, S00, B01, B00 = MultiPoly.symbols("x y c S01 S00 B01 B00")
    if transcription == "lemma":
        D = 1 - 2 * B01 + B01 ** 2 - B00 ** 2
    elif transcription == "printed":
        D = 1 - B01 + B01 ** 2 - B00 ** 2
    else:
        raise ValueError(f"unknown transcription {transcription!r}")
    return (
        S01 * D + B01 - 1,
        S00 * D - B00,
        c * x + x * S00 * B00 + x * S01 * B01 - B00,
        x * S00 * B01 + y ** 2 * x * S01 * B00 - B01,
    )


def degenerate_branch():
    """
    Exact solution on the ``D = 0`` locus: ``B00 = 0, B01 = 1, S01 = -c``,
    ``S00 = 1/x``.  Returned as a function of numeric ``(x, y, c)``.
    """

    def point(x, y, c):
        from fractions import Fraction

        return {"B00": 0, "B01": 1, "S01": -c, "S00": Fraction(1) / x, "x": x, "y": y, "c": c}

    return point


def vanishes_on_series(poly, state: PetalSystemState, order=None):
    """True iff ``poly`` evaluated on the series solution is ``O(x^(order+1))``."""
    order = state.order if order is None else order
    subs = {k: v.truncate(order) for k, v in state.as_substitution().items()}
    return series_of_poly(poly, subs, order, "x").is_zero()


def _unknowns_in(p):
    return [v for v in UNKNOWNS if p.degree(v) > 0]


def _parameter_content(p):
    """gcd of the coefficients of ``p`` as a polynomial in the unknowns."""
    unk = [v for v in UNKNOWNS if v in p.vars]
    if not unk:
        return p.integer_normal().trim()
    idx = [p.vars.index(v) for v in unk]
    groups = {}
    for e, cf in p.terms.items():
        key = tuple(e[i] for i in idx)
        groups.setdefault(key, {})[e] = cf
    g = MultiPoly.const(0)
    for terms in sorted(groups.values(), key=len):
        g = poly_gcd(g, MultiPoly._make(p.vars, terms))
        if g.is_constant():
            return MultiPoly.const(1)
    return g


def _strip(p, state, log):
    """Remove monomial and parameter-content factors that the series does not satisfy."""
    mono = p.monomial_content()
    if any(mono):
        for v, k in zip(p.vars, mono):
            if k:
                factor = MultiPoly.var(v)
                if vanishes_on_series(factor, state):
                    raise EliminationFailed(f"monomial factor {v} vanishes on the series")
                log.append((factor, k))
        p = p.divide_monomial(mono)
    cont = _parameter_content(p)
    if not cont.is_constant():
        if vanishes_on_series(cont, state):
            raise EliminationFailed("parameter content vanishes on the series")
        log.append((cont, 1))
        p = divide_exact(p, cont)
    return p.integer_normal().trim()


def eliminate_to_eta(generators=None, order=DEFAULT_ELIMINATION_ORDER, state=None, keep=("S01",)):
    """
    Eliminate ``order`` (then any remaining unknowns not in ``keep``) by
    iterated resultants and return an :class:`EliminationResult` whose
    ``eta`` lies in ``Q[S01, x, y, c]``.
    """
    if generators is None:
        generators = build_system()
    if state is None:
        state = solve_petal_system(WITNESS_ORDER)
    polys = [p.trim() for p in generators]
    result = EliminationResult(eta=None, raw=None)
    extra = [v for v in UNKNOWNS if v not in order and v not in keep]
    for v in tuple(order) + tuple(extra):
        with_v = [p for p in polys if p.degree(v) > 0]
        rest = [p for p in polys if p.degree(v) <= 0]
        if len(with_v) < 2:
            polys = rest
            continue
        pivot = min(with_v, key=lambda p: (p.degree(v), len(p.terms)))
        new = []
        for q in with_v:
            if q is pivot:
                continue
            r = resultant(pivot, q, v)
            if r.is_zero():
                g = poly_gcd(pivot, q)
                if vanishes_on_series(g, state):
                    raise EliminationFailed(f"common factor in {v} carries the series branch")
                result.split_common.append((v, g))
                a, b = divide_exact(pivot, g), divide_exact(q, g)
                if a.degree(v) <= 0 or b.degree(v) <= 0:
                    raise EliminationFailed(f"cofactors lose {v} after removing the common factor")
                r = resultant(a, b, v)
                if r.is_zero():
                    raise EliminationFailed(f"resultant in {v} vanishes after removing the common factor")
            new.append(_strip(r, state, result.stripped))
        result.stages.append((v, [len(p.terms) for p in new]))
        polys = rest + new
    finals = [p for p in polys if p.degree(keep[0]) > 0]
    if not finals:
        raise EliminationFailed("no polynomial in the kept variable survived")
    raw = finals[0]
    for p in finals[1:]:
        raw = poly_gcd(raw, p)
    result.raw = raw
    if not vanishes_on_series(raw, state):
        raise EliminationFailed("no factor of the iterated resultant vanishes on the series solution")
    result.eta = raw.integer_normal().trim()
    return result


def eta_to_sextic(eta: MultiPoly) -> SpectralCurve:
    """
    Divide out ``c + S01``, put ``x^2 = 1/z`` and ``S01 = z W``, and clear
    the smallest power of ``z`` needed for a polynomial.
    """
    S01, c = MultiPoly.var("S01"), MultiPoly.var("c")
    q = exact_divide(eta, c + S01, "S01")
    q = q.trim()
    names = q.vars
    ix = names.index("x") if "x" in names else None
    ij = names.index("S01")
    rest = [i for i, v in enumerate(names) if v not in ("x", "S01")]
    rest_names = tuple(names[i] for i in rest)
    raw = []
    for e, cf in q.terms.items():
        xk = e[ix] if ix is not None else 0
        if xk % 2:
            raise OddPowerEncountered("eta contains an odd power of x")
        j = e[ij]
        raw.append((j, j - xk // 2, tuple(e[i] for i in rest), cf))
    shift = -min(zexp for _, zexp, _, _ in raw)
    out_vars = rest_names + ("W", "z")
    terms = {}
    for j, zexp, re_, cf in raw:
        terms[re_ + (j, zexp + shift)] = cf
    poly = MultiPoly(out_vars, terms).integer_normal().trim()
    return SpectralCurve(poly, ("y", "c"), "unbalanced")


def reference_eta() -> MultiPoly:
    return MultiPoly.parse(ETA_TEXT)


def reference_sextic() -> SpectralCurve:
    return SpectralCurve(MultiPoly.parse(SEXTIC_TEXT), ("y", "c"), "unbalanced")


def _grouped_lines(poly):
    lines = []
    for b, cf in reversed(list(enumerate(poly.coefficients("W")))):
        if cf:
            lines.append(f"W^{b}: {cf}")
    return lines


def curve_diff(derived: SpectralCurve, reference: SpectralCurve = None):
    """Unified diff of the two curves grouped by powers of W; empty if identical."""
    reference = reference or reference_sextic()
    if derived.poly == reference.poly:
        return []
    return list(
        difflib.unified_diff(
            _grouped_lines(reference.poly),
            _grouped_lines(derived.poly),
            fromfile="reference",
            tofile="derived",
            lineterm="",
        )
    )
