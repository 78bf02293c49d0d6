"""Exact Gaussian elimination over the rationals."""

from fractions import Fraction

__all__ = ["rational_nullspace"]


def rational_nullspace(rows, ncols):
    """Basis of ``{v : A v = 0}`` for a list of rational rows, via reduced row echelon form."""
    A = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][col]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fj in free:
        v = [Fraction(0)] * ncols
        v[fj] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fj]
        basis.append(v)
    return basis
