"""Affine planes E = L + b of V_n over F_q and their enumeration.

Planes are canonical: the basis of L is in reduced row-echelon form and the
shift b is the lexicographically minimal element of the coset, so plane
equality is plain tuple comparison.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .qalg import (index_to_vec, is_prime, vec_add, vec_scale,
                   vec_sub, vec_to_index)


def rref(rows, q: int):
    """Reduced row-echelon form over F_q; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    n = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % q), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        rows[rank] = [(inv * v) % q for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % q:
                s = rows[i][col] % q
                rows[i] = [(a - s * b) % q for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return tuple(tuple(r) for r in rows[:rank]), tuple(pivots)


def span_indices(basis, q: int, n: int) -> frozenset:
    """Lexicographic indices of all linear combinations of the basis rows."""
    points = {(0,) * n}
    for row in basis:
        points = {vec_add(p, vec_scale(s, row, q), q)
                  for p in points for s in range(q)}
    return frozenset(vec_to_index(p, q) for p in points)


@dataclass(frozen=True)
class AffinePlane:
    """Coset L + b with canonical (RREF basis, lex-minimal shift)."""
    q: int
    n: int
    basis: tuple  # r RREF rows
    shift: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def make(cls, q: int, n: int, basis, shift) -> "AffinePlane":
        """Canonicalize an arbitrary (spanning set, representative) pair."""
        rows, _ = rref(basis, q)
        pts = [vec_add(index_to_vec(i, q, n), tuple(shift), q)
               for i in span_indices(rows, q, n)]
        b = min(pts, key=lambda p: vec_to_index(p, q))
        return cls(q, n, rows, b)

    @classmethod
    def from_points(cls, q: int, n: int, points) -> "AffinePlane":
        points = [tuple(p) for p in points]
        base = min(points, key=lambda p: vec_to_index(p, q))
        rows, _ = rref([vec_sub(p, base, q) for p in points], q)
        plane = cls(q, n, rows, base)
        if plane.point_indices() != frozenset(vec_to_index(p, q) for p in points):
            raise ValueError("point set is not an affine plane")
        return plane

    def point_indices(self) -> frozenset:
        b = vec_to_index(self.shift, self.q)
        bv = self.shift
        return frozenset(vec_to_index(vec_add(index_to_vec(i, self.q, self.n), bv, self.q), self.q)
                         for i in span_indices(self.basis, self.q, self.n))

    def points(self) -> list:
        return sorted(index_to_vec(i, self.q, self.n) for i in self.point_indices())

    def contains(self, x) -> bool:
        v = list(vec_sub(tuple(x), self.shift, self.q))
        for row in self.basis:
            p = next(i for i, c in enumerate(row) if c)
            if v[p]:
                s = v[p]
                v = [(a - s * b) % self.q for a, b in zip(v, row)]
        return not any(v)

    def chart(self):
        """Affine bijection V_r -> E as (A, b): w -> w A + b with A = basis rows."""
        return self.basis, self.shift

    def chart_inverse_index(self, v) -> int:
        """Index of the parameter w with w A + b == v (pivot coordinates of v - b)."""
        d = vec_sub(tuple(v), self.shift, self.q)
        w = []
        rem = list(d)
        for row in self.basis:
            p = next(i for i, c in enumerate(row) if c)
            s = rem[p]
            w.append(s)
            rem = [(a - s * b) % self.q for a, b in zip(rem, row)]
        if any(rem):
            raise ValueError("vector not on plane")
        return vec_to_index(tuple(w), self.q)

    def sort_key(self):
        return (vec_to_index(self.shift, self.q), self.basis)


@lru_cache(maxsize=None)
def all_subspaces(n: int, r: int, q: int) -> tuple:
    """All r-dimensional subspaces of V_n as RREF bases, deterministic order."""
    if not is_prime(q):
        raise ValueError("subspace enumeration requires prime q")
    if r == 0:
        return ((),)
    out = []
    for pivots in itertools.combinations(range(n), r):
        free = [(i, col) for i in range(r) for col in range(pivots[i] + 1, n)
                if col not in pivots]
        for assign in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, col), val in zip(free, assign):
                rows[i][col] = val
            out.append(tuple(tuple(row) for row in rows))
    return tuple(out)


@lru_cache(maxsize=None)
def all_planes(n: int, r: int, q: int) -> tuple:
    """All r-dimensional affine planes of V_n, in canonical order."""
    out = []
    for basis in all_subspaces(n, r, q):
        pivots = [next(i for i, c in enumerate(row) if c) for row in basis]
        reps = []
        freecols = [i for i in range(n) if i not in pivots]
        for assign in itertools.product(range(q), repeat=len(freecols)):
            v = [0] * n
            for col, val in zip(freecols, assign):
                v[col] = val
            reps.append(tuple(v))
        for rep in reps:
            out.append(AffinePlane.make(q, n, basis, rep))
    return tuple(sorted(out, key=AffinePlane.sort_key))


def subspace_intersection(bases, q: int, n: int) -> frozenset:
    """Point indices of the intersection of the spanned subspaces."""
    common = None
    for basis in bases:
        pts = span_indices(basis, q, n)
        common = pts if common is None else common & pts
    return common if common is not None else frozenset({0})
