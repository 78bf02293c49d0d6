"""
Petal generating functions solved as a fixed point on truncated series.

The state keeps the symmetry-reduced unknowns ``B00``, ``B01``, ``S00``,
``S01`` (``B11 = B00``, ``B10 = B01`` and likewise for ``S``).  A round
computes the sequence series from the petals,

    S01 = (1 - B01) / D,   S00 = B00 / D,   D = (1 - B01)^2 - B00^2,

and then the petals from the sequences,

    B00 = x (c + S00 B00 + S01 B01),   B01 = x (S00 B01 + y^2 S01 B00).

Because every petal carries an explicit factor ``x``, round ``r`` fixes
the coefficient of ``x^r`` for good.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientOrder, NoConvergence
from .exactalg import MultiPoly, TruncatedSeries, series_geometric_inverse
from .maps import MomentTable

__all__ = [
    "PetalSystemState",
    "DEFAULT_ORDER",
    "solve_petal_system",
    "solve_unreduced_petal_system",
    "extract_moments",
    "transfer_matrix_check",
    "transfer_eigenvalues",
]

K_MAX_MOMENT = 10
DEFAULT_ORDER = 2 * K_MAX_MOMENT

_C = MultiPoly.var("c")
_Y2 = MultiPoly.var("y") ** 2


@dataclass(frozen=True)
class PetalSystemState:
    B00: TruncatedSeries
    B01: TruncatedSeries
    S00: TruncatedSeries
    S01: TruncatedSeries
    denominator: str = "lemma"

    @property
    def order(self):
        return self.S01.order

    # symmetric partners
    @property
    def B11(self):
        return self.B00

    @property
    def B10(self):
        return self.B01

    @property
    def S11(self):
        return self.S00

    @property
    def S10(self):
        return self.S01

    def as_substitution(self):
        return {"B00": self.B00, "B01": self.B01, "S00": self.S00, "S01": self.S01}


def _sequences(B00, B01, denominator):
    one = TruncatedSeries.one(B00.order)
    if denominator == "lemma":
        D = one - B01 * 2 + B01 * B01 - B00 * B00
    elif denominator == "printed":
        # linear term as typeset in the summary system; kept for comparison
        D = one - B01 + B01 * B01 - B00 * B00
    else:
        raise ValueError(f"unknown denominator form {denominator!r}")
    inv = series_geometric_inverse(D)
    return B00 * inv, (one - B01) * inv


def _petals(B00, B01, S00, S01):
    K = B00.order
    c = TruncatedSeries.constant(_C, K)
    new00 = (c + S00 * B00 + S01 * B01).shift(1)
    new01 = (S00 * B01 + (S01 * B00) * _Y2).shift(1)
    return new00, new01


def solve_petal_system(K: int = DEFAULT_ORDER, denominator: str = "lemma") -> PetalSystemState:
    """
    Iterate the petal equations from ``B00 = B01 = 0`` until stable.

    Rounds before the last are carried out at the order they can already
    have fixed, which changes nothing in the result but saves most of the
    work; the final round runs at full order and must reproduce its input.
    """
    if K < 2:
        raise ValueError("series order must be at least 2")
    B00 = B01 = TruncatedSeries.zero(1)
    for r in range(1, K + 1):
        B00, B01 = B00.pad(r), B01.pad(r)
        S00, S01 = _sequences(B00, B01, denominator)
        B00, B01 = _petals(B00, B01, S00, S01)
    rounds = K
    for _ in range(2):
        rounds += 1
        S00, S01 = _sequences(B00, B01, denominator)
        n00, n01 = _petals(B00, B01, S00, S01)
        if n00 == B00 and n01 == B01:
            S00, S01 = _sequences(B00, B01, denominator)
            return PetalSystemState(B00, B01, S00, S01, denominator)
        B00, B01 = n00, n01
    raise NoConvergence(f"petal fixed point not stable after {rounds} rounds")


def solve_unreduced_petal_system(K: int = DEFAULT_ORDER):
    """
    Same fixed point without assuming the type-exchange symmetry.

    Carries all four ``B_ij`` and computes all four ``S_ij`` from the
    geometric series of the transfer matrix ``T_ab = B_{(1-a) b}``.
    Returns ``(B, S)`` as dicts keyed by ``(i, j)``.
    """
    zero = TruncatedSeries.zero(K)
    one = TruncatedSeries.one(K)
    c = TruncatedSeries.constant(_C, K)
    B = {(i, j): zero for i in (0, 1) for j in (0, 1)}
    S = None
    for _ in range(K + 2):
        T = [[B[(1 - a, b)] for b in (0, 1)] for a in (0, 1)]
        # sum_{n>=0} T^n, exact through order K since T has no constant term
        acc = [[one, zero], [zero, one]]
        power = [[one, zero], [zero, one]]
        for _n in range(K):
            power = [[power[i][0] * T[0][j] + power[i][1] * T[1][j] for j in (0, 1)] for i in (0, 1)]
            acc = [[acc[i][j] + power[i][j] for j in (0, 1)] for i in (0, 1)]
        S = {}
        for a in (0, 1):
            abar = 1 - a
            S[(a, a)] = acc[abar][a]
            S[(abar, a)] = acc[a][a]
        newB = {}
        for a in (0, 1):
            abar = 1 - a
            newB[(a, a)] = (c + S[(abar, abar)] * B[(a, a)] + S[(abar, a)] * B[(abar, a)]).shift(1)
            newB[(a, abar)] = (S[(abar, abar)] * B[(a, abar)] + (S[(abar, a)] * B[(abar, abar)]) * _Y2).shift(1)
        if newB == B:
            return B, S
        B = newB
    raise NoConvergence("unreduced petal system did not stabilise")


def extract_moments(state: PetalSystemState, n_max: int) -> MomentTable:
    """``M_n = [x^(2n)] S01`` for ``n = 0..n_max``."""
    if 2 * n_max > state.order:
        raise InsufficientOrder(f"need order {2 * n_max}, state has {state.order}")
    return MomentTable(tuple(state.S01[2 * n] for n in range(n_max + 1)))


def transfer_eigenvalues(state: PetalSystemState):
    """``(B01 + B00, B01 - B00)``, the eigenvalues of the symmetric transfer matrix."""
    return state.B01 + state.B00, state.B01 - state.B00


def transfer_matrix_check(state: PetalSystemState, n_terms: int) -> bool:
    """
    Compare ``sum_{j<=n_terms} (T^j)_00`` with ``S10`` through order
    ``min(K, n_terms)``.
    """
    K = state.order
    upto = min(K, n_terms)
    T = [[state.B10, state.B11], [state.B00, state.B01]]
    zero = TruncatedSeries.zero(K)
    power = [[TruncatedSeries.one(K), zero], [zero, TruncatedSeries.one(K)]]
    total = power[0][0]
    for _ in range(n_terms):
        power = [[power[i][0] * T[0][j] + power[i][1] * T[1][j] for j in (0, 1)] for i in (0, 1)]
        total = total + power[0][0]
    return all(total[j] == state.S10[j] for j in range(upto + 1))
