"""Affine transformations of functions and their exact rectangle counterparts.

Covers GL/AGL elements over Z_q (row-vector action x -> xA), the six
elementary transformations A1-C2 split across an (m, k) coordinate
partition, decomposition of GL into the block generators, affine
equivalence with its spectrum predictor, and the normality test.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Optional

import numpy as np

from .planes import AffinePlane, all_planes
from .qalg import QFunction, dot, index_to_vec, vec_add, vec_to_index
from .rectangle import Rectangle
from .spectral import Spectrum
from .transform import exact_div, rotate, canonical


# ---------------------------------------------------------------------------
# matrices over Z_q

def identity_rows(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b, q: int) -> tuple:
    n, mid, p = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(mid)) % q
                       for j in range(p)) for i in range(n))


def mat_vec(x, a, q: int) -> tuple:
    """Row-vector action x -> xA."""
    n = len(a[0]) if a else 0
    return tuple(sum(x[i] * a[i][j] for i in range(len(x))) % q for j in range(n))


def mat_det(rows, q: int) -> int:
    """Determinant mod q via exact integer cofactor-free (Bareiss) elimination."""
    n = len(rows)
    m = [[int(v) for v in row] for row in rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
        prev = m[col][col]
    return (sign * m[n - 1][n - 1]) % q if n else 1 % q


def is_invertible(rows, q: int) -> bool:
    return gcd(mat_det(rows, q), q) == 1


def mat_inv(rows, q: int) -> tuple:
    """Inverse over Z_q via the adjugate; the determinant must be a unit."""
    n = len(rows)
    d = mat_det(rows, q)
    if gcd(d, q) != 1:
        raise ValueError("matrix is singular over Z_q")
    dinv = pow(d, -1, q)
    if n == 1:
        return ((dinv % q,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof = mat_det(minor, q) * (-1) ** (i + j)
            adj[j][i] = (cof * dinv) % q
    return tuple(tuple(r) for r in adj)


def mat_transpose(rows) -> tuple:
    return tuple(zip(*rows)) if rows else ()


@dataclass(frozen=True)
class LinearMap:
    """Invertible n x n matrix over Z_q acting on row vectors."""
    q: int
    rows: tuple

    def __post_init__(self):
        if not is_invertible(self.rows, self.q):
            raise ValueError("matrix is not invertible over Z_q")

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, x) -> tuple:
        return mat_vec(x, self.rows, self.q)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.q, mat_inv(self.rows, self.q))


@dataclass(frozen=True)
class AffineMap:
    """sigma(x) = xA + a."""
    A: LinearMap
    a: tuple

    @property
    def q(self) -> int:
        return self.A.q

    def apply(self, x) -> tuple:
        return vec_add(self.A.apply(x), self.a, self.q)


# ---------------------------------------------------------------------------
# elementary transformations

@dataclass(frozen=True)
class ElementaryTransform:
    """One of the tags A1, A2, B1, B2, C1, C2 with its parameters.

    A1: (A, a) acting on the first block; A2: (A, a) on the second block;
    B1: (b, c) linear phase on the first block; B2: b shift of the second
    block; C1/C2: parameter-free cross-block shears at the split position.
    """
    tag: str
    A: tuple = ()
    a: tuple = ()
    b: tuple = ()
    c: int = 0


def apply_transform(f: QFunction, t: ElementaryTransform, m: int) -> QFunction:
    """The transformed truth table g per the tagged rule, exact."""
    q, n = f.q, f.n
    k = n - m
    tag = t.tag
    if tag in ("C1", "C2") and not 1 <= m <= n - 1:
        raise ValueError("C1/C2 require 1 <= m <= n-1")
    if tag == "A1":
        if len(t.A) != m or len(t.a) != m:
            raise ValueError("A1 parameter dimensions must match m")
        if not is_invertible(t.A, q):
            raise ValueError("A1 matrix is not invertible")
        return QFunction.from_callable(
            q, n, lambda x: f(vec_add(mat_vec(x[:m], t.A, q), t.a, q) + x[m:]))
    if tag == "A2":
        if len(t.A) != k or len(t.a) != k:
            raise ValueError("A2 parameter dimensions must match k")
        if not is_invertible(t.A, q):
            raise ValueError("A2 matrix is not invertible")
        return QFunction.from_callable(
            q, n, lambda x: f(x[:m] + mat_vec(x[m:], t.A, q)) + dot(t.a, x[m:], q))
    if tag == "B1":
        if len(t.b) != m:
            raise ValueError("B1 vector dimension must match m")
        return QFunction.from_callable(
            q, n, lambda x: f(x) + dot(t.b, x[:m], q) + t.c)
    if tag == "B2":
        if len(t.b) != k:
            raise ValueError("B2 vector dimension must match k")
        return QFunction.from_callable(
            q, n, lambda x: f(x[:m] + vec_add(x[m:], t.b, q)))
    if tag == "C1":
        return QFunction.from_callable(
            q, n,
            lambda x: f(x[:m - 1] + ((x[m - 1] - x[m]) % q,) + x[m:]))
    if tag == "C2":
        return QFunction.from_callable(
            q, n,
            lambda x: f(x[:m] + ((x[m] - x[m - 1]) % q,) + x[m + 1:]))
    raise ValueError(f"unknown tag {tag!r}")


def apply_transform_rect(r: Rectangle, t: ElementaryTransform) -> Rectangle:
    """Exact rectangle counterpart: commutes with apply_transform through
    the rectangle construction."""
    q, m, k = r.q, r.m, r.k
    e = r.entries
    tag = t.tag
    if tag == "A1":
        src = [vec_to_index(vec_add(mat_vec(index_to_vec(u, q, m), t.A, q), t.a, q), q)
               for u in range(q**m)]
        return Rectangle(q, m, k, e[src])
    if tag == "A2":
        b2 = mat_transpose(mat_inv(t.A, q))
        src = [vec_to_index(mat_vec(
            tuple((c - s) % q for c, s in zip(index_to_vec(v, q, k), t.a)), b2, q), q)
            for v in range(q**k)]
        return Rectangle(q, m, k, e[:, src])
    if tag == "B1":
        out = np.empty_like(e)
        for u in range(q**m):
            phase = (dot(t.b, index_to_vec(u, q, m), q) + t.c) % q
            out[u] = rotate(e[u], phase, q)
        return Rectangle(q, m, k, canonical(out, q))
    if tag == "B2":
        out = np.empty_like(e)
        for v in range(q**k):
            phase = dot(t.b, index_to_vec(v, q, k), q)
            out[:, v] = rotate(e[:, v], phase, q)
        return Rectangle(q, m, k, canonical(out, q))
    if tag in ("C1", "C2") and (m < 1 or k < 1):
        raise ValueError("C1/C2 require m >= 1 and k >= 1")
    if tag == "C1":
        a = e.reshape(q**(m - 1), q, q, q**(k - 1), q)
        out = np.zeros_like(a)
        for u in range(q):
            for v in range(q):
                for x in range(q):
                    for y in range(q):
                        out[:, u, v] += rotate(a[:, x, y], -((u - x) * (v - y)) % q, q)
        out = exact_div(canonical(out, q), q)
        return Rectangle(q, m, k, out.reshape(e.shape))
    if tag == "C2":
        a = e.reshape(q**(m - 1), q, q, q**(k - 1), q).copy()
        for u in range(q):
            for v in range(q):
                a[:, u, v] = rotate(a[:, u, v], -(u * v) % q, q)
        return Rectangle(q, m, k, canonical(a, q).reshape(e.shape))
    raise ValueError(f"unknown tag {t.tag!r}")


# ---------------------------------------------------------------------------
# GL generated by G1, G2, R, S

class GLGenerator(NamedTuple):
    kind: str  # "G1" | "G2" | "R" | "S"
    rows: tuple


def _sub_matrix(n: int, i: int, j: int, q: int) -> tuple:
    """Transformation x_i <- x_i - x_j (0-based)."""
    rows = [list(r) for r in identity_rows(n)]
    rows[j][i] = (-1) % q
    return tuple(tuple(r) for r in rows)


def _scale_matrix(n: int, i: int, s: int, q: int) -> tuple:
    rows = [list(r) for r in identity_rows(n)]
    rows[i][i] = s % q
    return tuple(tuple(r) for r in rows)


def _swap_matrix(n: int, i: int, j: int) -> tuple:
    rows = [list(r) for r in identity_rows(n)]
    rows[i][i] = rows[j][j] = 0
    rows[i][j] = rows[j][i] = 1
    return tuple(tuple(r) for r in rows)


def r_matrix(n: int, m: int, q: int) -> tuple:
    """x_m <- x_m - x_{m+1} in the paper's 1-based numbering."""
    return _sub_matrix(n, m - 1, m, q)


def s_matrix(n: int, m: int, q: int) -> tuple:
    """x_{m+1} <- x_{m+1} - x_m in the paper's 1-based numbering."""
    return _sub_matrix(n, m, m - 1, q)


def _emit_generator(n: int, m: int, q: int, kind: str, rows) -> list:
    """Map a single scale/subtract matrix onto G1/G2/R/S words."""
    if kind == "scale":
        i, s = rows
        mat = _scale_matrix(n, i, s, q)
        return [GLGenerator("G1" if i < m else "G2", mat)]
    i, j = rows  # subtract x_j from x_i
    if i < m and j < m:
        return [GLGenerator("G1", _sub_matrix(n, i, j, q))]
    if i >= m and j >= m:
        return [GLGenerator("G2", _sub_matrix(n, i, j, q))]
    if i < m <= j:
        # conjugate R by in-block swaps: x_i <-> x_{m-1} (G1), x_j <-> x_m (G2)
        word = []
        if i != m - 1:
            word.append(GLGenerator("G1", _swap_matrix(n, i, m - 1)))
        if j != m:
            word.append(GLGenerator("G2", _swap_matrix(n, j, m)))
        core = [GLGenerator("R", r_matrix(n, m, q))]
        return word + core + word[::-1]
    # j < m <= i: conjugate S
    word = []
    if j != m - 1:
        word.append(GLGenerator("G1", _swap_matrix(n, j, m - 1)))
    if i != m:
        word.append(GLGenerator("G2", _swap_matrix(n, i, m)))
    core = [GLGenerator("S", s_matrix(n, m, q))]
    return word + core + word[::-1]


def decompose_gl(M, m: int, q: int) -> list:
    """Write M in GL_n(Z_q) as an ordered product of generators from
    G1, G2, R, S (split position m); the product of the returned matrices,
    leftmost applied first, equals M exactly.

    Elimination uses only unit scalings and coordinate subtractions, which
    covers prime q and the Euclidean-style path for small composite q.
    """
    rows = tuple(tuple(v % q for v in row) for row in M)
    n = len(rows)
    if not is_invertible(rows, q):
        raise ValueError("matrix is singular over Z_q")

    work = [list(r) for r in rows]
    ops = []  # (kind, payload) applied to rows of `work` in order

    def row_sub(jr: int, ir: int):
        # row_jr -= row_ir; transformation matrix: x_ir <- x_ir - x_jr
        work[jr] = [(a - b) % q for a, b in zip(work[jr], work[ir])]
        ops.append(("sub", (ir, jr)))

    def row_scale(ir: int, s: int):
        work[ir] = [(s * a) % q for a in work[ir]]
        ops.append(("scale", (ir, s)))

    for col in range(n):
        # bring a unit into position (col, col) using subtraction-only Euclid
        while True:
            units = [r for r in range(col, n) if gcd(work[r][col], q) == 1]
            if units:
                break
            nz = sorted((r for r in range(col, n) if work[r][col]),
                        key=lambda r: work[r][col])
            r_small, r_big = nz[0], next(r for r in nz if work[r][col] >= work[nz[0]][col] and r != nz[0])
            row_sub(r_big, r_small)
        pivot = units[0]
        if pivot != col:
            # swap rows pivot <-> col via subtract/add steps
            row_sub(col, pivot)                       # r_col -= r_pivot
            for _ in range(q - 1):                    # r_pivot += r_col
                row_sub(pivot, col)
            row_sub(col, pivot)                       # r_col -= r_pivot
            row_scale(col, q - 1)                     # r_col *= -1
        u = work[col][col]
        if u != 1:
            row_scale(col, pow(u, -1, q))
        for r in range(n):
            s = work[r][col]
            if r != col and s:
                for _ in range(s):
                    row_sub(r, col)

    # ops reduce M to I from the left (E_t ... E_1 M = I), so M is the
    # ordered product of their inverses: M = E_1^-1 E_2^-1 ... E_t^-1
    gens = []
    for kind, payload in ops:
        if kind == "scale":
            i, s = payload
            gens.extend(_emit_generator(n, m, q, "scale", (i, pow(s, -1, q))))
        else:
            i, j = payload
            for _ in range(q - 1):  # inverse of one subtraction: q-1 subtractions
                gens.extend(_emit_generator(n, m, q, "sub", (i, j)))
    if not gens:  # M was already the identity
        gens.append(GLGenerator("G1" if m else "G2", identity_rows(n)))
    return gens


def recompose(gens, q: int) -> tuple:
    """Ordered product of generator matrices (leftmost applied first)."""
    if not gens:
        raise ValueError("empty generator sequence")
    acc = gens[0].rows
    for g in gens[1:]:
        acc = mat_mul(acc, g.rows, q)
    return acc


# ---------------------------------------------------------------------------
# affine equivalence

def affine_equivalent(f: QFunction, sigma: AffineMap, b, c: int) -> QFunction:
    """g(x) = f(xA + a) + b.x + c."""
    q = f.q
    return QFunction.from_callable(
        q, f.n, lambda x: f(sigma.apply(x)) + dot(b, x, q) + c)


def predict_spectrum(spec: Spectrum, sigma: AffineMap, b, c: int) -> Spectrum:
    """Spectrum of the affine-equivalent function directly from hat-f:
    hat-g(u) = chi(a.v + c) hat-f(v) with v = (u - b)(A^{-1})^T."""
    q, n = spec.q, spec.n
    binv_t = mat_transpose(mat_inv(sigma.A.rows, q))
    out = np.empty_like(spec.values)
    for u in range(q**n):
        uv = index_to_vec(u, q, n)
        v = mat_vec(tuple((x - y) % q for x, y in zip(uv, b)), binv_t, q)
        phase = (dot(sigma.a, v, q) + c) % q
        out[u] = rotate(spec.values[vec_to_index(v, q)], phase, q)
    return Spectrum(q, n, canonical(out, q))


def realize_affine(sigma: AffineMap, b, c: int, m: int) -> list:
    """A sequence of elementary transformations (applied left to right at
    split m) whose composite equals affine_equivalent(., sigma, b, c)."""
    q = sigma.q
    n = sigma.A.n
    k = n - m
    im, ik = identity_rows(m), identity_rows(k)
    steps = []
    # argument shift first: f(y + a)
    if any(sigma.a[:m]):
        steps.append(ElementaryTransform("A1", A=im, a=tuple(sigma.a[:m])))
    if any(sigma.a[m:]):
        steps.append(ElementaryTransform("B2", b=tuple(sigma.a[m:])))
    # matrix substitutions: generators applied to f in reverse product order
    for gen in reversed(decompose_gl(sigma.A.rows, m, q)):
        if gen.kind == "G1":
            block = tuple(tuple(gen.rows[i][j] for j in range(m)) for i in range(m))
            steps.append(ElementaryTransform("A1", A=block, a=(0,) * m))
        elif gen.kind == "G2":
            block = tuple(tuple(gen.rows[m + i][m + j] for j in range(k)) for i in range(k))
            steps.append(ElementaryTransform("A2", A=block, a=(0,) * k))
        elif gen.kind == "R":
            steps.append(ElementaryTransform("C1"))
        else:
            steps.append(ElementaryTransform("C2"))
    # additive affine part last
    if any(b[:m]) or c:
        steps.append(ElementaryTransform("B1", b=tuple(b[:m]), c=c % q))
    if any(b[m:]):
        steps.append(ElementaryTransform("A2", A=ik, a=tuple(b[m:])))
    return steps


def random_invertible(n: int, q: int, rng) -> tuple:
    """Uniform random element of GL_n(Z_q) by rejection sampling."""
    while True:
        rows = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(n))
        if is_invertible(rows, q):
            return rows


def random_affine_image(f: QFunction, rng) -> QFunction:
    """f composed with a random invertible substitution plus random affine
    terms; preserves bentness."""
    q, n = f.q, f.n
    sigma = AffineMap(LinearMap(q, random_invertible(n, q, rng)),
                      tuple(rng.randrange(q) for _ in range(n)))
    b = tuple(rng.randrange(q) for _ in range(n))
    return affine_equivalent(f, sigma, b, rng.randrange(q))


# ---------------------------------------------------------------------------
# normality

@lru_cache(maxsize=None)
def _plane_point_indices(n: int, r: int) -> np.ndarray:
    """(planes, 2^r) table of point indices, chart-ordered, q = 2."""
    planes = all_planes(n, r, 2)
    out = np.empty((len(planes), 1 << r), dtype=np.int64)
    for p, plane in enumerate(planes):
        basis, shift = plane.chart()
        for w in range(1 << r):
            wv = index_to_vec(w, 2, r)
            x = list(shift)
            for wi, row in zip(wv, basis):
                if wi:
                    x = [(a + bcomp) % 2 for a, bcomp in zip(x, row)]
            out[p, w] = vec_to_index(tuple(x), 2)
    return out


def is_normal(f: QFunction) -> Optional[AffinePlane]:
    """First (canonical order) half-dimensional affine plane on which the
    restriction of f is affine, or None.

    Brute force over all such planes; meaningful for bent f but answers for
    any Boolean f of even arity.
    """
    if f.q != 2 or f.n % 2:
        raise ValueError("normality requires q = 2 and even arity")
    nu = f.n // 2
    idx = _plane_point_indices(f.n, nu)
    g = f.table_array()[idx]  # (planes, 2^nu) restriction tables
    t = g.copy()
    size = t.shape[1]
    step = 1
    while step < size:
        sel = np.arange(size) & step > 0
        t[:, sel] ^= t[:, np.arange(size)[sel] ^ step]
        step <<= 1
    high = np.array([bin(j).count("1") > 1 for j in range(size)])
    affine = ~np.any(t[:, high], axis=1)
    hits = np.nonzero(affine)[0]
    if len(hits) == 0:
        return None
    return all_planes(f.n, nu, 2)[int(hits[0])]
