"""
Brute-force enumeration of edge-typed combinatorial maps.

A map on ``2k`` labelled edges has one black vertex whose rotation is the
full cycle ``(1 2 ... 2k)`` and white vertices given by the cycles of an
arbitrary permutation ``sigma_circ``.  Odd labels carry type 1 and even
labels type 0.  Summing the genus-zero weights over all ``(2k)!``
permutations gives the limiting moment as a polynomial in ``c`` and ``y``.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import NonPlanarMap, TooLarge
from .exactalg import MultiPoly

__all__ = [
    "Permutation",
    "EdgeTypedMap",
    "MomentTable",
    "cycle_count",
    "is_planar",
    "alt_statistic",
    "weight",
    "enumerate_moment",
    "iter_planar_maps",
    "dump_planar_maps",
    "DEFAULT_MAX_K",
]

DEFAULT_MAX_K = 5


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def __mul__(self, other):
        """Composition, right factor applied first."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def full_cycle(cls, n):
        return cls(tuple(list(range(2, n + 1)) + [1]))

    @classmethod
    def from_cycles(cls, text, n=None):
        """
        Parse cycle notation such as ``"(2)(5)(6)(143)"`` or ``"(1 4 3)(2)"``.

        Single-digit labels may be run together; larger labels need spaces
        or commas.
        """
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            body = body.strip()
            if not body:
                continue
            if re.search(r"[\s,]", body):
                labels = [int(t) for t in re.split(r"[\s,]+", body) if t]
            else:
                labels = [int(ch) for ch in body]
            cycles.append(labels)
        used = [v for cyc in cycles for v in cyc]
        size = n if n is not None else max(used, default=0)
        images = list(range(1, size + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def cycles(self):
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def cycle_notation(self):
        sep = "" if self.n < 10 else " "
        return "".join("(" + sep.join(str(v) for v in cyc) + ")" for cyc in self.cycles())


@dataclass(frozen=True)
class EdgeTypedMap:
    k: int
    sigma_circ: Permutation

    def __post_init__(self):
        if self.k < 1 or self.sigma_circ.n != 2 * self.k:
            raise ValueError("sigma_circ must act on 2k edges")

    @property
    def sigma_bullet(self):
        return Permutation.full_cycle(2 * self.k)

    @staticmethod
    def edge_type(e):
        return 1 if e % 2 else 0

    def white_vertices(self):
        return self.sigma_circ.cycles()

    def faces(self):
        return (self.sigma_bullet * self.sigma_circ).cycles()


@dataclass(frozen=True)
class MomentTable:
    """Moments ``M_0 .. M_n`` as polynomials in ``c`` and ``y`` (or numbers)."""

    entries: tuple

    def __getitem__(self, n):
        return self.entries[n]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def evaluate(self, y=None, c=None):
        values = {}
        if y is not None:
            values["y"] = y
        if c is not None:
            values["c"] = c
        return [MultiPoly.coerce(e).substitute(values).constant_value() for e in self.entries]

    def to_json(self):
        return [str(e) for e in self.entries]


def cycle_count(p: Permutation) -> int:
    return len(p.cycles())


def is_planar(m: EdgeTypedMap) -> bool:
    return cycle_count(m.sigma_circ) - 2 * m.k + len(m.faces()) - 1 == 0


def alt_statistic(m: EdgeTypedMap, white_vertex: Sequence[int]) -> int:
    """Number of type changes met going once around ``white_vertex``."""
    cyc = tuple(white_vertex)
    if cyc not in {c for c in m.white_vertices()}:
        # accept any rotation of a genuine cycle
        rotations = {cyc[i:] + cyc[:i] for i in range(len(cyc))}
        if not rotations & set(m.white_vertices()):
            raise ValueError(f"{cyc} is not a cycle of sigma_circ")
    types = [EdgeTypedMap.edge_type(e) for e in cyc]
    return sum(1 for a, b in zip(types, types[1:] + types[:1]) if a != b)


def weight(m: EdgeTypedMap) -> MultiPoly:
    """``c^(#white) * y^(sum alt)`` for a genus-zero map."""
    if not is_planar(m):
        raise NonPlanarMap("weight is only defined for planar maps")
    verts = m.white_vertices()
    alt = sum(alt_statistic(m, v) for v in verts)
    return MultiPoly.monomial({"c": len(verts), "y": alt})


def iter_planar_maps(k: int) -> Iterator[EdgeTypedMap]:
    """All genus-zero maps with ``2k`` edges, pure Python (small ``k`` only)."""
    import itertools

    for imgs in itertools.permutations(range(1, 2 * k + 1)):
        m = EdgeTypedMap(k, Permutation(imgs))
        if is_planar(m):
            yield m


def dump_planar_maps(k, fh):
    """Write one JSON object per planar map: ``k``, ``sigma_circ``, ``weight``."""
    count = 0
    for m in iter_planar_maps(k):
        fh.write(json.dumps({"k": k, "sigma_circ": m.sigma_circ.cycle_notation(), "weight": str(weight(m))}) + "\n")
        count += 1
    return count


def _all_permutations(n):
    perms = np.zeros((1, 1), dtype=np.int8)
    for m in range(2, n + 1):
        blocks = [np.insert(perms, pos, m - 1, axis=1) for pos in range(m)]
        perms = np.concatenate(blocks, axis=0)
    return perms


def _batch_cycle_counts(P):
    n = P.shape[1]
    idx = np.arange(n, dtype=P.dtype)
    mins = np.broadcast_to(idx, P.shape).copy()
    cur = P.copy()
    for _ in range(n - 1):
        np.minimum(mins, cur, out=mins)
        cur = np.take_along_axis(P, cur.astype(np.intp), axis=1).astype(P.dtype)
    return (mins == idx).sum(axis=1)


def enumerate_moment(k: int, max_k: int = DEFAULT_MAX_K, chunk: int = 400_000, odd_type: int = 1) -> MultiPoly:
    """
    Sum of planar-map weights over all ``(2k)!`` choices of ``sigma_circ``.

    Vectorised with numpy over blocks of permutations.  ``odd_type`` picks
    the type carried by odd labels; the result must not depend on it.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > max_k:
        raise TooLarge(f"(2k)! = {math.factorial(2 * k)} permutations exceeds the budget for k <= {max_k}")
    n = 2 * k
    perms = _all_permutations(n)
    # 0-based label i is 1-based label i+1: odd labels sit at even i
    types = np.array([odd_type if i % 2 == 0 else 1 - odd_type for i in range(n)], dtype=np.int8)
    counts = Counter()
    for start in range(0, perms.shape[0], chunk):
        P = perms[start:start + chunk]
        whites = _batch_cycle_counts(P)
        faces = _batch_cycle_counts(((P.astype(np.int16) + 1) % n).astype(np.int8))
        planar = whites - n + faces - 1 == 0
        alt = (types[P[planar]] != types[np.arange(n)]).sum(axis=1)
        pairs, mult = np.unique(np.stack([whites[planar], alt], axis=1), axis=0, return_counts=True)
        for (w, a), cnt in zip(pairs.tolist(), mult.tolist()):
            counts[(w, a)] += cnt
    total = MultiPoly.const(0)
    for (w, a), cnt in counts.items():
        total = total + MultiPoly.monomial({"c": w, "y": a}, cnt)
    return total


def enumerate_moments(n_max: int, max_k: int = DEFAULT_MAX_K) -> MomentTable:
    return MomentTable((MultiPoly.const(1),) + tuple(enumerate_moment(k, max_k) for k in range(1, n_max + 1)))
