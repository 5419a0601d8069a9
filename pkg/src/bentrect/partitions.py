"""Partitions of V_n into equal-dimension affine planes, their enumeration
and counting, and the bent rectangles they generate (rows supported on the
planes, filled by stretched spectra)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constructions import stretch
from .planes import AffinePlane, all_planes, subspace_intersection
from .qalg import QFunction, is_prime
from .rectangle import Rectangle
from .spectral import is_regular_bent, wht


def gaussian_coeff(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of V_n (Gaussian binomial)."""
    if not 0 <= r <= n:
        raise ValueError("r out of range")
    num = den = 1
    for i in range(r):
        num *= q**(n - i) - 1
        den *= q**(i + 1) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class PlanePartition:
    """q^m pairwise-disjoint planes of dimension n-m covering V_n, sorted by
    their lexicographically minimal points."""
    q: int
    n: int
    m: int
    planes: tuple

    def __post_init__(self):
        q, n, m = self.q, self.n, self.m
        if len(self.planes) != q**m:
            raise ValueError("wrong number of planes")
        covered = set()
        for p in self.planes:
            if (p.q, p.n, p.dim) != (q, n, n - m):
                raise ValueError("plane has wrong ambient space or dimension")
            covered |= p.point_indices()
        if len(covered) != q**n:
            raise ValueError("planes do not partition the space")

    @classmethod
    def make(cls, q: int, n: int, m: int, planes) -> "PlanePartition":
        return cls(q, n, m, tuple(sorted(planes, key=AffinePlane.sort_key)))


def enumerate_partitions(n: int, m: int, q: int, primitive_only: bool = False):
    """All partitions of V_n into q^m planes of dimension n-m, each exactly
    once, by backtracking that always covers the smallest uncovered point."""
    if not is_prime(q):
        raise ValueError("enumeration requires prime q")
    if q**n > 1 << 16:
        raise ValueError("space too large for exhaustive enumeration")
    planes = all_planes(n, n - m, q)
    size = q**n
    by_point = [[] for _ in range(size)]
    for p in planes:
        mask = 0
        for i in p.point_indices():
            mask |= 1 << i
        by_point[min(p.point_indices())].append((mask, p))
    full = (1 << size) - 1

    def rec(covered, chosen):
        if covered == full:
            part = PlanePartition(q, n, m, tuple(chosen))
            if not primitive_only or is_primitive(part):
                yield part
            return
        lowest = (~covered & (covered + 1)).bit_length() - 1
        for mask, p in by_point[lowest]:
            if not mask & covered:
                chosen.append(p)
                yield from rec(covered | mask, chosen)
                chosen.pop()

    yield from rec(0, [])


def is_primitive(p: PlanePartition) -> bool:
    """True iff the direction subspaces of the planes intersect only in 0."""
    common = subspace_intersection([pl.basis for pl in p.planes], p.q, p.n)
    return common == frozenset({0})


def count_partitions(n: int, m: int, q: int, primitive_only: bool = False) -> int:
    return sum(1 for _ in enumerate_partitions(n, m, q, primitive_only))


def count_partitions_formula(n: int, m: int, q: int) -> int:
    """Closed forms: any prime q for m = 1; q = 2 for m = 2; m = n trivially."""
    if m == 1:
        return (q**n - 1) // (q - 1)
    if m == 2 and q == 2:
        val = (2**n - 1) * (2**(n - 1) - 1) * (7 * 2**(n - 1) - 13)
        assert val % 3 == 0
        return val // 3
    if m == n:
        return 1
    raise ValueError("no closed form for these parameters")


def count_partitions_decomposition(n: int, m: int, q: int) -> int:
    """Total count as the sum over direction-kernel dimensions d of
    (subspace choices) * (primitive counts in the quotient), by brute-force
    primitive counts."""
    total = 0
    for d in range(n - m + 1):
        k = n - d
        if k < m:
            prim = 0
        else:
            prim = count_partitions(k, m, q, primitive_only=True)
        total += gaussian_coeff(n, d, q) * prim
    return total


# ---------------------------------------------------------------------------
# bent rectangles from partitions

def partition_bent(p: PlanePartition, gens, charts=None):
    """Rectangle with row u supported on plane u, filled with the stretched
    spectrum of gens[u], plus the underlying function f(u, x) of n+m
    variables.  charts[u] = (A, b) parameterizes plane u as {w A + b};
    defaults to the canonical chart of each plane."""
    q, n, m = p.q, p.n, p.m
    r = n - m
    if len(gens) != q**m:
        raise ValueError("need one generator per plane")
    if charts is None:
        charts = [pl.chart() for pl in p.planes]
    entries = np.empty((q**m, q**n, q), dtype=np.int64)
    table = []
    for u, (g, (A, b), plane) in enumerate(zip(gens, charts, p.planes)):
        if g.q != q or g.n != r:
            raise ValueError("generator has wrong modulus or arity")
        if r and not is_regular_bent(g):
            raise ValueError("generator is not regular bent")
        image = AffinePlane.make(q, n, A, b) if r else AffinePlane(q, n, (), tuple(b))
        if image != plane:
            raise ValueError("chart does not parameterize its plane")
        h = stretch(g, A, b)
        entries[u] = wht(h).values
        table.extend(h.table)
    rect = Rectangle(q, m, n, entries)
    return rect, QFunction(q, n + m, table)


def bent_count(q: int, k: int) -> int:
    """Exhaustive count of regular bent functions of k variables.

    Fast vectorized path for q = 2 (k <= 4); tiny brute force otherwise.
    """
    if q == 2:
        if k == 0:
            return 2
        if k % 2:
            return 0
        size = 1 << k
        if size > 16:
            raise ValueError("exhaustive count limited to k <= 4")
        idx = np.arange(size)
        hadamard = np.where(_popcount(idx[:, None] & idx[None, :]) % 2, -1, 1)
        tables = (np.arange(1 << size)[:, None] >> idx[None, :]) & 1
        spectra = (1 - 2 * tables).astype(np.int64) @ hadamard
        return int(np.count_nonzero(np.all(np.abs(spectra) == 1 << (k // 2), axis=1)))
    if q**(q**k) > 1 << 20:
        raise ValueError("space too large for exhaustive count")
    count = 0
    import itertools
    for tab in itertools.product(range(q), repeat=q**k):
        if is_regular_bent(QFunction(q, k, tab)):
            count += 1
    return count


def _popcount(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    while np.any(a):
        out += a & 1
        a = a >> 1
    return out


@lru_cache(maxsize=None)
def _bent_count_cached(q, k):
    return bent_count(q, k)


def count_constructed(n: int, m: int, q: int, bent_counts=None) -> int:
    """(q^m)! * c_q(n, m) * |B_{n-m}|^(q^m): distinct regular bent functions
    of n+m variables produced by the partition construction."""
    r = n - m
    if bent_counts is not None and r in bent_counts:
        b = bent_counts[r]
    else:
        b = _bent_count_cached(q, r)
    if m == 1 or (m == 2 and q == 2) or m == n:
        c = count_partitions_formula(n, m, q)
    else:
        c = count_partitions(n, m, q)
    return math.factorial(q**m) * c * b**(q**m)


# ---------------------------------------------------------------------------
# canonical partitions of V_3 and their lifts

def _e(i: int) -> tuple:
    v = [0, 0, 0]
    v[i - 1] = 1
    return tuple(v)


def _line(b, e) -> AffinePlane:
    return AffinePlane.make(2, 3, [e], b)


def canonical_partitions_v3() -> tuple:
    """The three canonical partitions of V_3 into lines; every line
    partition of V_3 is an affine coordinate change of one of them."""
    e1, e2, e3 = _e(1), _e(2), _e(3)
    zero = (0, 0, 0)
    add = lambda a, b: tuple((x + y) % 2 for x, y in zip(a, b))
    fam1 = [_line(zero, e3), _line(e2, e3), _line(e1, e3), _line(add(e1, e2), e3)]
    fam2 = [_line(zero, e3), _line(e2, e3), _line(e1, e2), _line(add(e1, e3), e2)]
    fam3 = [_line(zero, e3), _line(e2, e1),
            _line(add(e2, e3), add(add(e1, e2), e3)), _line(add(e1, e3), e2)]
    return tuple(PlanePartition.make(2, 3, 2, fam) for fam in (fam1, fam2, fam3))


def lift_canonical(p: PlanePartition, r: int) -> PlanePartition:
    """Lift a line partition of V_3 to a partition of V_{r+2} into
    r-dimensional planes: the line through b with direction e becomes
    {(b + alpha e, y) : alpha in F_2, y in V_{r-1}}."""
    if (p.q, p.n, p.m) != (2, 3, 2):
        raise ValueError("lifting applies to line partitions of V_3")
    if r < 1:
        raise ValueError("r must be at least 1")
    n = r + 2
    planes = []
    for line in p.planes:
        e = line.basis[0]
        rows = [e + (0,) * (r - 1)]
        for j in range(r - 1):
            row = [0] * n
            row[3 + j] = 1
            rows.append(tuple(row))
        planes.append(AffinePlane.make(2, n, rows, line.shift + (0,) * (r - 1)))
    return PlanePartition.make(2, n, 2, planes)


# ---------------------------------------------------------------------------
# the three closed forms for m = 2 and balancedness

def apart2_form(family: int, g1: QFunction, g2: QFunction,
                g3: QFunction, g4: QFunction) -> QFunction:
    """Closed form of the bent function built from the selected canonical
    partition of V_{r+2} with generators g1..g4; r+4 variables total,
    ordered (u1, u2, x1, x2, x3, y)."""
    gs = (g1, g2, g3, g4)
    if any(g.q != 2 for g in gs):
        raise ValueError("closed forms require q = 2")
    if len({g.n for g in gs}) != 1:
        raise ValueError("arity mismatch")
    r = g1.n
    if r < 2:
        raise ValueError("generators must have at least 2 variables")
    for g in gs:
        if not is_regular_bent(g):
            raise ValueError("generators must be bent")
    if family not in (1, 2, 3):
        raise ValueError("family must be 1, 2 or 3")

    def val(u1, u2, x):
        x1, x2, x3, y = x[0], x[1], x[2], x[3:]
        s = (x1 + x2 + x3) % 2
        if family == 1:
            a = g1((x3,) + y) + g2((x3,) + y) + g3((x3,) + y) + g4((x3,) + y)
            b = g1((x3,) + y) + g3((x3,) + y) + x1
            c = g1((x3,) + y) + g2((x3,) + y) + x2
        elif family == 2:
            a = g1((x3,) + y) + g2((x3,) + y) + g3((x2,) + y) + g4((x2,) + y) + x2 + x3
            b = g1((x3,) + y) + g3((x2,) + y) + x1
            c = g1((x3,) + y) + g2((x3,) + y) + x2
        else:
            a = g1((x3,) + y) + g2((x1,) + y) + g3((s,) + y) + g4((x2,) + y) + x1
            b = g1((x3,) + y) + g3((s,) + y) + x2 + x3
            c = g1((x3,) + y) + g2((x1,) + y) + x2
        return (u1 * u2 * a + u1 * b + u2 * c + g1((x3,) + y)) % 2

    return QFunction.from_callable(2, r + 4, lambda z: val(z[0], z[1], z[2:]))


def balanced_restriction_sums(f: QFunction) -> bool:
    """For f(u, x) with u in V_2: all six pairwise sums of the four
    restrictions to x take 0 and 1 equally often."""
    if f.q != 2 or f.n < 3:
        raise ValueError("expected a Boolean function of u1, u2 and x")
    t = f.table_array().reshape(4, -1)
    half = t.shape[1] // 2
    for i in range(4):
        for j in range(i + 1, 4):
            if int(np.count_nonzero((t[i] + t[j]) % 2)) != half:
                return False
    return True
