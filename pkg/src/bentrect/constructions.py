"""Bent-function constructions: Maiorana-McFarland, direct sums, Rothaus
quartets, Carlet flips, biaffine/bilinear squares, spreads with Dillon's
construction, and the plane-stretching primitive."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .affine_group import is_invertible, mat_transpose, mat_vec
from .planes import AffinePlane
from .qalg import (QFunction, all_vectors, dot, index_to_vec, is_prime,
                   vec_add, vec_to_index)
from .rectangle import Rectangle
from .spectral import is_bent, plateaued_order, wht
from .transform import canonical, rotate


def maiorana(q: int, n: int, pi, phi: QFunction) -> QFunction:
    """Maiorana-McFarland bent function f(x, y) = pi(x).y + phi(x).

    pi is a permutation of V_n given as a list of image indices in
    lexicographic order.
    """
    if phi.q != q or phi.n != n:
        raise ValueError("phi must be an n-variable function over Z_q")
    pi = list(pi)
    if sorted(pi) != list(range(q**n)):
        raise ValueError("pi is not a permutation of V_n")
    images = [index_to_vec(i, q, n) for i in pi]
    table = []
    for xi in range(q**n):
        px = images[xi]
        base = phi.value_at(xi)
        for y in all_vectors(q, n):
            table.append((dot(px, y, q) + base) % q)
    return QFunction(q, 2 * n, table)


def direct_sum(f1: QFunction, f2: QFunction) -> QFunction:
    """f(x, y) = f1(x) + f2(y); bent iff both inputs are bent."""
    if f1.q != f2.q:
        raise ValueError("modulus mismatch")
    q = f1.q
    table = [(a + b) % q for a in f1.table for b in f2.table]
    return QFunction(q, f1.n + f2.n, table)


def rothaus(f1: QFunction, f2: QFunction, f3: QFunction, f4: QFunction) -> QFunction:
    """Rothaus' construction from four bent functions with zero pointwise sum:

    f(u1, u2, y) = f1 f2 + f1 f3 + f2 f3 + u1 (f1 + f2) + u2 (f1 + f3) + u1 u2.
    """
    fs = (f1, f2, f3, f4)
    if any(f.q != 2 for f in fs):
        raise ValueError("Rothaus' construction requires q = 2")
    if len({f.n for f in fs}) != 1:
        raise ValueError("arity mismatch")
    t = [f.table_array() for f in fs]
    if np.any((t[0] + t[1] + t[2] + t[3]) % 2):
        raise ValueError("pointwise sum of the quartet must be identically 0")
    for f in fs:
        if not is_bent(f):
            raise ValueError("all four inputs must be bent")
    base = (t[0] * t[1] + t[0] * t[2] + t[1] * t[2]) % 2
    s12 = (t[0] + t[1]) % 2
    s13 = (t[0] + t[2]) % 2
    table = []
    for u1, u2 in itertools.product((0, 1), repeat=2):
        table.extend(((base + u1 * s12 + u2 * s13 + u1 * u2) % 2).tolist())
    return QFunction(2, f1.n + 2, table)


def plane_indicator(E: AffinePlane) -> QFunction:
    """Support function of the plane: 1 exactly on E."""
    pts = E.point_indices()
    return QFunction(E.q, E.n, [1 if i in pts else 0 for i in range(E.q**E.n)])


def carlet_flip(f: QFunction, E: AffinePlane):
    """Carlet's transformation g = f + indicator(E) for a bent f in 2n
    variables and a plane of dimension k >= n.

    Returns (g, condition) where condition is the bentness criterion
    plateaued_order(f restricted to E) == 2(k - n).
    """
    if f.q != 2 or f.n % 2:
        raise ValueError("Carlet flip requires q = 2 and even arity")
    n = f.n // 2
    k = E.dim
    if k < n:
        raise ValueError("plane dimension must be at least n")
    g = f + plane_indicator(E)
    basis, shift = E.chart()
    f_e = QFunction.from_callable(2, k, lambda w: f(_chart_point(E, w)))
    condition = plateaued_order(f_e) == 2 * (k - n)
    return g, condition


def _chart_point(E: AffinePlane, w) -> tuple:
    x = E.shift
    for wi, row in zip(w, E.basis):
        if wi:
            x = vec_add(x, tuple((wi * c) % E.q for c in row), E.q)
    return x


# ---------------------------------------------------------------------------
# biaffine and bilinear squares

@dataclass(frozen=True)
class BiaffinePhase:
    """phi(u, v) = sum alpha_ij u_i v_j + sum beta_i u_i + sum gamma_j v_j + delta;
    all restrictions to u and to v are affine."""
    q: int
    alpha: tuple  # n x n
    beta: tuple
    gamma: tuple
    delta: int = 0

    @classmethod
    def zero(cls, q: int, n: int) -> "BiaffinePhase":
        return cls(q, tuple((0,) * n for _ in range(n)), (0,) * n, (0,) * n, 0)

    def __call__(self, u, v) -> int:
        q = self.q
        total = self.delta
        for i, ui in enumerate(u):
            if ui:
                total += ui * (self.beta[i] + sum(a * vj for a, vj in zip(self.alpha[i], v)))
        total += sum(g * vj for g, vj in zip(self.gamma, v))
        return total % q


@dataclass(frozen=True)
class BiaffineMap:
    """Nonsingular biaffine pi(u, v) = uA + vB + (u C_1 v^T, ..., u C_n v^T) + d."""
    q: int
    A: tuple
    B: tuple
    C: tuple  # n matrices
    d: tuple

    def __post_init__(self):
        n = len(self.d)
        q = self.q
        if q**n > 4096:
            raise ValueError("nonsingularity validation limited to q^n <= 2^12")
        for v in all_vectors(q, n):
            mv = tuple(tuple((self.A[i][j] + sum(self.C[j][i][t] * v[t] for t in range(n))) % q
                             for j in range(n)) for i in range(n))
            if not is_invertible(mv, q):
                raise ValueError("restriction to u is singular for some v")
        for u in all_vectors(q, n):
            mu = tuple(tuple((self.B[i][j] + sum(self.C[j][t][i] * u[t] for t in range(n))) % q
                             for j in range(n)) for i in range(n))
            if not is_invertible(mu, q):
                raise ValueError("restriction to v is singular for some u")

    def __call__(self, u, v) -> tuple:
        q = self.q
        n = len(self.d)
        lin = vec_add(mat_vec(u, self.A, q), mat_vec(v, self.B, q), q)
        bil = tuple(sum(u[i] * self.C[t][i][j] * v[j]
                        for i in range(n) for j in range(n)) % q for t in range(n))
        return vec_add(vec_add(lin, bil, q), self.d, q)

    @classmethod
    def from_linear(cls, q: int, A, B, d=None) -> "BiaffineMap":
        n = len(A)
        zero = tuple(tuple((0,) * n for _ in range(n)) for _ in range(n))
        return cls(q, tuple(map(tuple, A)), tuple(map(tuple, B)), zero,
                   tuple(d) if d is not None else (0,) * n)


def biaffine_square(pi: BiaffineMap, g: QFunction, phi: BiaffinePhase) -> Rectangle:
    """box-f(u, v) = chi(phi(u, v)) * hat-g(pi(u, v)); a bent square."""
    q, n = g.q, g.n
    ghat = wht(g).values
    size = q**n
    entries = np.empty((size, size, q), dtype=np.int64)
    vecs = [index_to_vec(i, q, n) for i in range(size)]
    for ui, u in enumerate(vecs):
        for vi, v in enumerate(vecs):
            entries[ui, vi] = rotate(ghat[vec_to_index(pi(u, v), q)], phi(u, v), q)
    return Rectangle(q, n, n, canonical(entries, q))


@dataclass(frozen=True)
class BilinearFamily:
    """Matrices M_1..M_n with A_v = sum v_i M_i defining a nonsingular
    bilinear mapping pi(u, v) = u A_v: A_0 = 0 and A_v invertible for v != 0."""
    q: int
    mats: tuple

    def __post_init__(self):
        n = len(self.mats)
        if self.q**n > 4096:
            raise ValueError("nonsingularity validation limited to q^n <= 2^12")
        for v in all_vectors(self.q, n):
            if any(v) and not is_invertible(self.matrix(v), self.q):
                raise ValueError("A_v is singular for some nonzero v")

    def matrix(self, v) -> tuple:
        q = self.q
        n = len(self.mats)
        return tuple(tuple(sum(v[t] * self.mats[t][i][j] for t in range(n)) % q
                           for j in range(n)) for i in range(n))

    def __call__(self, u, v) -> tuple:
        return mat_vec(u, self.matrix(v), self.q)


def bilinear_square(fam: BilinearFamily, g: QFunction, phi: BiaffinePhase,
                    h: QFunction, h2: QFunction) -> Rectangle:
    """Bent square with entry hat-h(0) at (0, 0) and
    chi(phi(u, v)) hat-g(u A_v) elsewhere.

    h and h2 must satisfy hat-h(0) = hat-h2(0),
    hat-h(u) = chi(phi(u, 0)) hat-g(0) and hat-h2(v) = chi(phi(0, v)) hat-g(0)
    off the origin; validated exactly.
    """
    q, n = g.q, g.n
    size = q**n
    ghat = wht(g).values
    hhat, h2hat = wht(h).values, wht(h2).values
    if not np.array_equal(hhat[0], h2hat[0]):
        raise ValueError("hat-h(0) != hat-h2(0)")
    vecs = [index_to_vec(i, q, n) for i in range(size)]
    zero = (0,) * n
    for ui in range(1, size):
        want = canonical(rotate(ghat[0], phi(vecs[ui], zero), q), q)
        if not np.array_equal(hhat[ui], want):
            raise ValueError("h violates the spectral constraint")
    for vi in range(1, size):
        want = canonical(rotate(ghat[0], phi(zero, vecs[vi]), q), q)
        if not np.array_equal(h2hat[vi], want):
            raise ValueError("h2 violates the spectral constraint")
    entries = np.empty((size, size, q), dtype=np.int64)
    for ui, u in enumerate(vecs):
        for vi, v in enumerate(vecs):
            entries[ui, vi] = rotate(ghat[vec_to_index(fam(u, v), q)], phi(u, v), q)
    entries[0, 0] = hhat[0]
    return Rectangle(q, n, n, canonical(entries, q))


# ---------------------------------------------------------------------------
# spreads and Dillon's construction

@dataclass(frozen=True)
class Spread:
    """q^n + 1 pairwise-trivially-intersecting n-dimensional subspaces of
    V_{2n}: E_inf = {(0, v)} and E_v = {(u, u A_v)} for the family matrices."""
    q: int
    n: int
    mats: tuple  # A_v per v index, A_0 = 0

    def __post_init__(self):
        q, n = self.q, self.n
        if len(self.mats) != q**n:
            raise ValueError("need one matrix per vector of V_n")
        if any(any(any(row) for row in self.mats[0]) for _ in (0,)):
            raise ValueError("A_0 must be the zero matrix")
        for i in range(len(self.mats)):
            for j in range(i + 1, len(self.mats)):
                diff = tuple(tuple((a - b) % q for a, b in zip(ra, rb))
                             for ra, rb in zip(self.mats[i], self.mats[j]))
                if not is_invertible(diff, q):
                    raise ValueError("A - A' must be invertible for distinct members")

    def subspaces(self) -> list:
        """Point-index sets of E_inf, E_0, E_1, ... in V_{2n}."""
        q, n = self.q, self.n
        out = [frozenset(vec_to_index((0,) * n + v, q) for v in all_vectors(q, n))]
        for mat in self.mats:
            pts = frozenset(vec_to_index(tuple(u) + mat_vec(u, mat, q), q)
                            for u in all_vectors(q, n))
            out.append(pts)
        return out

    @classmethod
    def from_family(cls, fam: BilinearFamily, n: int) -> "Spread":
        mats = tuple(fam.matrix(v) for v in all_vectors(fam.q, n))
        return cls(fam.q, n, mats)


def dillon(spread: Spread, g: QFunction, c: int) -> QFunction:
    """Dillon's regular bent function: c on E_inf, g(v) on E_v minus the
    origin; requires hat-g(0) = 0 exactly."""
    q, n = spread.q, spread.n
    if not is_prime(q):
        raise ValueError("Dillon's construction requires prime q")
    if g.q != q or g.n != n:
        raise ValueError("g must be an n-variable function over F_q")
    ghat0 = wht(g)[0]
    if not ghat0.is_zero():
        raise ValueError("hat-g(0) must vanish")
    table = [0] * q**(2 * n)
    subspaces = spread.subspaces()
    for idx in subspaces[0]:
        table[idx] = c % q
    for vi, pts in enumerate(subspaces[1:]):
        for idx in pts:
            if idx != 0:
                table[idx] = g.value_at(vi)
    table[0] = c % q  # the origin lies on E_inf
    return QFunction(q, 2 * n, table)


# ---------------------------------------------------------------------------
# GF(q^n) multiplication families (default spread source)

def _poly_mul(a, b, q):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % q
    return out


def _poly_mod(a, mod, q):
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * c) % q
        a.pop()
    return a + [0] * (dm - len(a))


def _irreducible_poly(q: int, n: int) -> tuple:
    """A monic irreducible polynomial of degree n over F_q (coefficient list,
    constant term first), found by exhaustive search."""
    for tail in itertools.product(range(q), repeat=n):
        poly = list(tail) + [1]
        if _is_irreducible(poly, q):
            return tuple(poly)
    raise ValueError("no irreducible polynomial found")


def _is_irreducible(poly, q) -> bool:
    n = len(poly) - 1
    if poly[0] == 0:
        return False
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(q), repeat=d):
            div = list(tail) + [1]
            if _poly_divides(div, poly, q):
                return False
    return True


def _poly_divides(div, poly, q) -> bool:
    rem = list(poly)
    dd = len(div) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for i, c in enumerate(div):
                rem[shift + i] = (rem[shift + i] - lead * c) % q
        rem.pop()
    return not any(rem)


def field_family(q: int, n: int) -> BilinearFamily:
    """Multiplication by basis elements of GF(q^n) as a bilinear family;
    v_i indexes the basis 1, t, ..., t^(n-1) with x_1 most significant."""
    mod = _irreducible_poly(q, n)
    mats = []
    # coordinate i of a vector is the coefficient of t^(n-1-i) (lexicographic
    # indexing keeps x_1 most significant)
    for i in range(n):
        basis_elem = [0] * n
        basis_elem[n - 1 - i] = 1
        rows = []
        for j in range(n):
            other = [0] * n
            other[n - 1 - j] = 1
            prod = _poly_mod(_poly_mul(other, basis_elem, q), mod, q)
            rows.append(tuple(prod[n - 1 - t] for t in range(n)))
        mats.append(tuple(rows))
    # mats[i] maps u -> u * t^(n-1-i); A_v = sum v_i mats[i] is mult by v
    return BilinearFamily(q, tuple(mats))


def field_spread(q: int, n: int) -> Spread:
    return Spread.from_family(field_family(q, n), n)


# ---------------------------------------------------------------------------
# stretching

def stretch(g: QFunction, A, b) -> QFunction:
    """h(x) = g(x A^T) + b.x for an r x n matrix A of rank r; the spectrum of
    h is the spectrum of g stretched onto the plane {wA + b}."""
    q = g.q
    r = len(A)
    n = len(b)
    if r != g.n:
        raise ValueError("A must have one row per variable of g")
    if any(len(row) != n for row in A):
        raise ValueError("A rows must have length n")
    from .planes import rref
    _, pivots = rref(A, q)
    if len(pivots) != r:
        raise ValueError("A must have full row rank")
    at = mat_transpose(A)
    return QFunction.from_callable(
        q, n, lambda x: g(mat_vec(x, at, q)) + dot(b, x, q))
