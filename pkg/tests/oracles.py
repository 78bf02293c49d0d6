"""
Independent reference computations used by the tests.  None of these call
into the code under test beyond basic data types.
"""

from fractions import Fraction
from itertools import permutations
from math import comb, sqrt


def det(rows):
    """Determinant over Q by Gaussian elimination."""
    A = [[Fraction(v) for v in r] for r in rows]
    n = len(A)
    sign, out = 1, Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        out *= A[col][col]
        for i in range(col + 1, n):
            f = A[i][col] / A[col][col]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return sign * out


def sylvester_resultant(p, q):
    """Resultant of two univariate coefficient lists (ascending) via the Sylvester determinant."""
    p = list(p)
    q = list(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, cf in enumerate(reversed(p)):
            row[i + j] = cf
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, cf in enumerate(reversed(q)):
            row[i + j] = cf
        rows.append(row)
    return det(rows)


def cycles_of(images):
    seen, count = set(), 0
    for s in range(1, len(images) + 1):
        if s in seen:
            continue
        count += 1
        i = s
        while i not in seen:
            seen.add(i)
            i = images[i - 1]
    return count


def brute_force_moment(k):
    """Dict {(white, alt): count} over planar maps with 2k edges, pure Python."""
    n = 2 * k
    full = list(range(2, n + 1)) + [1]
    out = {}
    for imgs in permutations(range(1, n + 1)):
        faces = cycles_of([full[imgs[i] - 1] for i in range(n)])
        whites = cycles_of(imgs)
        if whites - n + faces - 1:
            continue
        alt = sum(1 for e in range(1, n + 1) if (e % 2) != (imgs[e - 1] % 2))
        out[(whites, alt)] = out.get((whites, alt), 0) + 1
    return out


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def fuss_catalan(n):
    return comb(3 * n, n) // (2 * n + 1)


def narayana_mp_moment(n, c):
    """MP_c moments: sum_k N(n, k) c^k with Narayana numbers."""
    if n == 0:
        return Fraction(1)
    return sum(Fraction(comb(n, k) * comb(n, k - 1), n) * Fraction(c) ** k for k in range(1, n + 1))


def squared_mp1_density(lam):
    """Density of t^2 for t ~ MP_1."""
    r = sqrt(lam)
    return sqrt(r * (4 - r)) / (4 * 3.141592653589793 * lam)


def fuss_catalan_branch(z, tol=1e-15):
    """Resolvent of the Fuss-Catalan law at real z > 27/4 by fixed-point iteration."""
    u = 1.0 / z
    B = 1.0
    while True:
        nb = 1.0 + u * B ** 3
        if abs(nb - B) < tol:
            return nb / z
        B = nb


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _cycle_sizes(images):
    seen, sizes = set(), []
    for s in range(len(images)):
        if s in seen:
            continue
        n, i = 0, s
        while i not in seen:
            seen.add(i)
            i = images[i]
            n += 1
        sizes.append(n)
    return sizes


def free_product_moment(n, c):
    """
    phi((ab)^n) for free a, b both MP_c (all free cumulants equal c), via
    sum over non-crossing pi of kappa_pi[a] times b-moments on the Kreweras complement.
    """
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for part in _set_partitions(list(range(n))):
        pi = [0] * n
        for block in part:
            b = sorted(block)
            for i, v in enumerate(b):
                pi[v] = b[(i + 1) % len(b)]
        inv = [0] * n
        for i, v in enumerate(pi):
            inv[v] = i
        kre = [inv[(i + 1) % n] for i in range(n)]
        sizes = _cycle_sizes(kre)
        if len(part) + len(sizes) != n + 1:
            continue
        term = Fraction(c) ** len(part)
        for s in sizes:
            term *= narayana_mp_moment(s, c)
        total += term
    return total
