"""Exact base arithmetic: Z_q scalars and vectors, cyclotomic integers, function tables.

Vectors over Z_q are plain tuples of residues.  The lexicographic index of a
vector (x_1, ..., x_n) is sum(x_i * q**(n-1-i)), i.e. x_1 is the most
significant digit; this bijection with range(q**n) orders all tables,
spectra and rectangle axes throughout the package.
"""
from __future__ import annotations

import itertools

import numpy as np


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def vec_to_index(v, q: int) -> int:
    idx = 0
    for c in v:
        idx = idx * q + c
    return idx


def index_to_vec(idx: int, q: int, n: int) -> tuple:
    coords = [0] * n
    for i in range(n - 1, -1, -1):
        idx, coords[i] = divmod(idx, q)
    return tuple(coords)


def all_vectors(q: int, n: int):
    """All vectors of V_n in lexicographic order."""
    return itertools.product(range(q), repeat=n)


def dot(u, x, q: int) -> int:
    """Inner product u.x = u_1 x_1 + ... + u_n x_n mod q."""
    if len(u) != len(x):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(x)}")
    return sum(a * b for a, b in zip(u, x)) % q


def vec_add(u, x, q: int) -> tuple:
    return tuple((a + b) % q for a, b in zip(u, x))


def vec_sub(u, x, q: int) -> tuple:
    return tuple((a - b) % q for a, b in zip(u, x))


def vec_scale(s: int, u, q: int) -> tuple:
    return tuple((s * a) % q for a in u)


class CycloValue:
    """An element of Z[zeta_q], zeta_q = exp(2*pi*i/q), as an integer
    coefficient vector of length q.

    For prime q the vector is kept in canonical form with coeffs[q-1] == 0
    (reduction by 1 + zeta + ... + zeta^(q-1) = 0), so equality is a plain
    vector comparison.  For composite q the representation is not reduced
    and exactness is not guaranteed; use to_complex() there.
    """

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs, _canonical: bool = False):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != q:
            raise ValueError(f"need {q} coefficients, got {len(coeffs)}")
        if not _canonical and is_prime(q) and coeffs[q - 1] != 0:
            last = coeffs[q - 1]
            coeffs = tuple(c - last for c in coeffs)
        self.q = q
        self.coeffs = coeffs

    @classmethod
    def zero(cls, q: int) -> "CycloValue":
        return cls(q, (0,) * q, _canonical=True)

    @classmethod
    def integer(cls, q: int, value: int) -> "CycloValue":
        return cls(q, (value,) + (0,) * (q - 1), _canonical=True)

    @classmethod
    def root(cls, q: int, a: int) -> "CycloValue":
        """zeta_q**a in canonical form."""
        a %= q
        coeffs = [0] * q
        coeffs[a] = 1
        return cls(q, coeffs)

    def _check(self, other: "CycloValue"):
        if self.q != other.q:
            raise ValueError(f"modulus mismatch: {self.q} vs {other.q}")

    def __add__(self, other: "CycloValue") -> "CycloValue":
        self._check(other)
        return CycloValue(self.q, [a + b for a, b in zip(self.coeffs, other.coeffs)],
                          _canonical=is_prime(self.q))

    def __sub__(self, other: "CycloValue") -> "CycloValue":
        self._check(other)
        return CycloValue(self.q, [a - b for a, b in zip(self.coeffs, other.coeffs)],
                          _canonical=is_prime(self.q))

    def __neg__(self) -> "CycloValue":
        return CycloValue(self.q, [-a for a in self.coeffs], _canonical=is_prime(self.q))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloValue(self.q, [other * a for a in self.coeffs],
                              _canonical=is_prime(self.q))
        self._check(other)
        q = self.q
        out = [0] * q
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % q] += a * b
        return CycloValue(q, out)

    __rmul__ = __mul__

    def conj(self) -> "CycloValue":
        q = self.q
        out = [0] * q
        for a, c in enumerate(self.coeffs):
            out[(-a) % q] += c
        return CycloValue(q, out)

    def norm_sq(self) -> "CycloValue":
        """self * conj(self); an ordinary integer for values s * zeta^c."""
        return self * self.conj()

    def as_int(self) -> int:
        """The value as a rational integer; raises if it is not one."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def root_multiple(self):
        """Decompose as (s, c) with self == s * zeta^c, or None.

        Canonical forms (prime q): s*zeta^c is s*e_c for c < q-1 and
        (-s, ..., -s, 0) for c == q-1.
        """
        q = self.q
        nonzero = [i for i, c in enumerate(self.coeffs) if c != 0]
        if not nonzero:
            return (0, 0)
        if len(nonzero) == 1:
            return (self.coeffs[nonzero[0]], nonzero[0])
        if is_prime(q) and len(nonzero) == q - 1:
            s = self.coeffs[0]
            if all(c == s for c in self.coeffs[: q - 1]):
                return (-s, q - 1)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_complex(self) -> complex:
        q = self.q
        return sum(c * np.exp(2j * np.pi * a / q) for a, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycloValue.integer(self.q, other)
        if not isinstance(other, CycloValue):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self):
        return f"CycloValue(q={self.q}, coeffs={self.coeffs})"


def chi(q: int, a: int) -> CycloValue:
    """The additive character chi(a) = exp(2*pi*i*a/q) as an exact root of unity."""
    if not 0 <= a < q:
        raise ValueError(f"residue {a} out of range for q={q}")
    return CycloValue.root(q, a)


class QFunction:
    """A total map V_n -> Z_q stored as a dense table in lexicographic order."""

    __slots__ = ("q", "n", "table")

    def __init__(self, q: int, n: int, table):
        table = tuple(int(v) for v in table)
        if q < 2:
            raise ValueError("q must be >= 2")
        if len(table) != q**n:
            raise ValueError(f"table length {len(table)} != {q}^{n}")
        if any(not 0 <= v < q for v in table):
            raise ValueError("table entries out of range")
        self.q = q
        self.n = n
        self.table = table

    @classmethod
    def from_callable(cls, q: int, n: int, fn) -> "QFunction":
        return cls(q, n, [fn(x) % q for x in all_vectors(q, n)])

    @classmethod
    def constant(cls, q: int, n: int, c: int) -> "QFunction":
        return cls(q, n, [c % q] * q**n)

    def __call__(self, x) -> int:
        return self.table[vec_to_index(x, self.q)]

    def value_at(self, idx: int) -> int:
        return self.table[idx]

    def table_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def __add__(self, other: "QFunction") -> "QFunction":
        if (self.q, self.n) != (other.q, other.n):
            raise ValueError("shape mismatch")
        return QFunction(self.q, self.n,
                         [(a + b) % self.q for a, b in zip(self.table, other.table)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, QFunction):
            return NotImplemented
        return (self.q, self.n, self.table) == (other.q, other.n, other.table)

    def __hash__(self):
        return hash((self.q, self.n, self.table))

    def __repr__(self):
        return f"QFunction(q={self.q}, n={self.n}, table={self.table})"


def anf(f: QFunction) -> tuple:
    """Algebraic-normal-form coefficients of a Boolean function (Mobius transform).

    Coefficient at index m belongs to the monomial prod(x_i for bit i set in
    the lexicographic digit expansion of m).
    """
    if f.q != 2:
        raise ValueError("ANF is defined for q = 2 only")
    coeffs = list(f.table)
    size = len(coeffs)
    step = 1
    while step < size:
        for j in range(size):
            if j & step:
                coeffs[j] ^= coeffs[j ^ step]
        step <<= 1
    return tuple(coeffs)


def anf_degree(f: QFunction) -> int:
    """Degree of the ANF polynomial; the zero function has degree 0."""
    coeffs = anf(f)
    deg = 0
    for m, c in enumerate(coeffs):
        if c:
            deg = max(deg, bin(m).count("1"))
    return deg


def restrict(f: QFunction, fixed: dict) -> QFunction:
    """Substitute fixed[i] for coordinate i (0-based); returns a function of
    the remaining coordinates in their original order."""
    for i in fixed:
        if not 0 <= i < f.n:
            raise IndexError(f"coordinate {i} out of range")
    free = [i for i in range(f.n) if i not in fixed]
    q = f.q

    def value(y):
        x = [0] * f.n
        for i, v in fixed.items():
            x[i] = v % q
        for i, v in zip(free, y):
            x[i] = v
        return f(tuple(x))

    return QFunction.from_callable(q, len(free), value)
