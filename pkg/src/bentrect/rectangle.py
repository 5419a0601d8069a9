"""Rectangles of functions: construction, bentness, transposition, row checks.

A rectangle of f in F_{m+k} is the q^m x q^k matrix
box-f(u, v) = sum_y chi(f(u, y)) * conj(chi(v.y)); rows are spectra of the
restrictions f(u, .).  Entries are exact cyclotomic coefficient vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .qalg import CycloValue, QFunction, index_to_vec, is_prime, vec_to_index
from .transform import (chi_table, cyclo_at, decode_roots, digit_transform,
                        exact_div)


class Rectangle:
    """q^m x q^k matrix of cyclotomic values, rows indexed by u in V_m and
    columns by v in V_k, both lexicographic."""

    __slots__ = ("q", "m", "k", "entries")

    def __init__(self, q: int, m: int, k: int, entries: np.ndarray):
        if entries.shape != (q**m, q**k, q):
            raise ValueError("rectangle shape mismatch")
        self.q = q
        self.m = m
        self.k = k
        self.entries = entries

    def entry(self, u: int, v: int) -> CycloValue:
        return cyclo_at(self.entries, self.q, (u, v))

    def int_matrix(self) -> np.ndarray:
        """Entries as plain integers (q = 2, where all values are rational)."""
        if self.q != 2:
            raise ValueError("integer view requires q = 2")
        return self.entries[..., 0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rectangle):
            return NotImplemented
        return (self.q, self.m, self.k) == (other.q, other.m, other.k) and \
            np.array_equal(self.entries, other.entries)


def rectangle(f: QFunction, m: int) -> Rectangle:
    """The (m, n-m)-rectangle of f; m = 0 gives the spectrum as a single row,
    m = n the chi-table of f as a single column."""
    if not 0 <= m <= f.n:
        raise ValueError(f"m={m} out of range for n={f.n}")
    q, k = f.q, f.n - m
    ring = chi_table(f).reshape(q**m, q**k, q)
    entries = digit_transform(ring, q, k, axis=1, sign=-1) if k else ring
    return Rectangle(q, m, k, entries)


def row_functions(r: Rectangle) -> list:
    """Inverse-transform every row; raises if some row is not a spectrum."""
    q, k = r.q, r.k
    back = digit_transform(r.entries, q, k, axis=1, sign=+1) if k else r.entries
    try:
        back = exact_div(back, q**k)
    except ValueError:
        raise ValueError("row is not a function spectrum") from None
    residues = decode_roots(back, q)
    if np.any(residues < 0):
        raise ValueError("row is not a function spectrum")
    return [QFunction(q, k, row.tolist()) for row in residues]


def rectangle_function(r: Rectangle) -> QFunction:
    """The function whose rectangle r is (rows are spectra of restrictions)."""
    rows = row_functions(r)
    table = []
    for g in rows:
        table.extend(g.table)
    return QFunction(r.q, r.m + r.k, table)


def shift_shape(r: Rectangle, direction: int) -> Rectangle:
    """Convert to the adjacent shape: +1 moves a column digit to the rows
    (m+1, k-1), -1 moves a row digit to the columns (m-1, k+1).  Exact."""
    q, m, k = r.q, r.m, r.k
    if direction == +1:
        if k == 0:
            raise ValueError("shape out of range")
        a = r.entries.reshape(q**m, q, q**(k - 1), q)
        out = digit_transform(a, q, 1, axis=1, sign=+1)
        out = exact_div(out, q)
        return Rectangle(q, m + 1, k - 1, out.reshape(q**(m + 1), q**(k - 1), q))
    if direction == -1:
        if m == 0:
            raise ValueError("shape out of range")
        a = r.entries.reshape(q**(m - 1), q, q**k, q)
        out = digit_transform(a, q, 1, axis=1, sign=-1)
        return Rectangle(q, m - 1, k + 1, out.reshape(q**(m - 1), q**(k + 1), q))
    raise ValueError("direction must be +1 or -1")


def to_shape(r: Rectangle, m: int) -> Rectangle:
    """Convert to an arbitrary shape (m, n-m) by repeated adjacent shifts."""
    if not 0 <= m <= r.m + r.k:
        raise ValueError("shape out of range")
    while r.m < m:
        r = shift_shape(r, +1)
    while r.m > m:
        r = shift_shape(r, -1)
    return r


def column_spectra(r: Rectangle) -> np.ndarray:
    """Forward character sums over rows: T[x, v] = sum_u entry(u, v) chi(u.x)."""
    return digit_transform(r.entries, r.q, r.m, axis=0, sign=+1) if r.m else r.entries


def is_bent_rectangle(r: Rectangle) -> bool:
    """Every column scaled by q^((m-k)/2) is the spectrum of a function of
    V_m (rows are spectra by construction).

    Tested via the forward character sum over u, which must give
    q^((m+k)/2) * chi(c) everywhere; avoids materializing fractional scales.
    """
    n = r.m + r.k
    if n % 2:
        raise ValueError("exact bentness test requires m + k even")
    if not is_prime(r.q):
        raise ValueError("exact bentness test requires prime q")
    scaled = column_spectra(r)
    return bool(np.all(decode_roots(scaled, r.q, scale=r.q ** (n // 2)) >= 0))


def transpose(r: Rectangle):
    """Transposition box-f -> box-g = q^((m-k)/2) box-f^T of a bent rectangle.

    Returns the (k, m)-rectangle and the underlying function g with
    chi(g(v, u)) = q^(-n/2) hat-f(-u, v).
    """
    if not is_bent_rectangle(r):
        raise ValueError("transpose undefined: rectangle is not bent")
    q, m, k = r.q, r.m, r.k
    n = m + k
    scale = (m - k) // 2
    t = np.transpose(r.entries, (1, 0, 2))
    if scale >= 0:
        t = t * q**scale
    else:
        t = exact_div(t, q**(-scale))
    rect_g = Rectangle(q, k, m, t)

    # hat-f(u, v) = sum_x box-f(x, v) conj(chi(u.x))
    full = digit_transform(r.entries, q, m, axis=0, sign=-1) if m else r.entries
    neg = np.array([vec_to_index(tuple((-c) % q for c in index_to_vec(u, q, m)), q)
                    for u in range(q**m)])
    ring_g = exact_div(full[neg], q ** (n // 2))  # [u, v] -> chi(g(v, u))
    residues = decode_roots(ring_g, q)
    if np.any(residues < 0):
        raise ValueError("transpose undefined: scaled transpose is not a rectangle")
    g = QFunction(q, n, residues.T.reshape(-1).tolist())
    return rect_g, g


def two_row_check(r: Rectangle) -> bool:
    """Structure of bent (1, n-1)-rectangles over q = 2: rows plateaued of
    order n-2, each column with exactly one nonzero value +-2^(n/2)."""
    if r.q != 2 or r.m != 1:
        raise ValueError("two-row check requires q = 2, m = 1")
    from .spectral import plateaued_order
    n = r.m + r.k
    mat = r.int_matrix()
    peak = 1 << (n // 2)
    for col in mat.T:
        nz = col[col != 0]
        if len(nz) != 1 or abs(int(nz[0])) != peak:
            return False
    return all(plateaued_order(g) == n - 2 for g in row_functions(r))


def four_row_check(r: Rectangle) -> bool:
    """Column structure of bent (2, n-2)-rectangles over q = 2: every column
    is either four values +-2^(n/2-1) with an odd number of negatives and
    product -2^(2n-4), or has exactly one nonzero value +-2^(n/2)."""
    if r.q != 2 or r.m != 2:
        raise ValueError("four-row check requires q = 2, m = 2")
    n = r.m + r.k
    half, peak = 1 << (n // 2 - 1), 1 << (n // 2)
    for col in r.int_matrix().T:
        vals = [int(v) for v in col]
        if all(abs(v) == half for v in vals):
            negs = sum(v < 0 for v in vals)
            prod = vals[0] * vals[1] * vals[2] * vals[3]
            if negs % 2 == 0 or prod != -(1 << (2 * n - 4)):
                return False
        elif all(v == 0 or abs(v) == peak for v in vals):
            if sum(v != 0 for v in vals) != 1:
                return False
        else:
            return False
    return True


@dataclass(frozen=True)
class Cell:
    """2x2 submatrix of a Boolean rectangle at fixed (u', v'); rows are the
    last row digit, columns the first column digit."""
    u_prefix: int
    v_suffix: int
    values: tuple


def cells(r: Rectangle) -> Iterator[Cell]:
    """Iterate the 2^(m-1) * 2^(k-1) cells acted on by C1/C2 (q = 2)."""
    if r.q != 2 or r.m < 1 or r.k < 1:
        raise ValueError("cells require q = 2 and m, k >= 1")
    mat = r.int_matrix()
    half_k = 1 << (r.k - 1)
    for up in range(1 << (r.m - 1)):
        for vs in range(half_k):
            vals = tuple(tuple(int(mat[2 * up + a, b * half_k + vs])
                               for b in range(2)) for a in range(2))
            yield Cell(up, vs, vals)
