"""Walsh-Hadamard transform and spectral classification predicates."""
from __future__ import annotations

from collections import Counter

import numpy as np

from .qalg import CycloValue, QFunction, is_prime
from .transform import (chi_table, cyclo_at, decode_roots, digit_transform,
                        exact_div, fwht_int, norm_sq_array)

# Numeric-mode heuristic: |abs(spectrum) - q^(n/2)| below this relative
# tolerance counts as bent when exact arithmetic is unavailable.
NUMERIC_TOL = 1e-6


class Spectrum:
    """Exact Walsh-Hadamard spectrum: q^n cyclotomic values indexed by u."""

    __slots__ = ("q", "n", "values")

    def __init__(self, q: int, n: int, values: np.ndarray):
        if values.shape != (q**n, q):
            raise ValueError("spectrum shape mismatch")
        self.q = q
        self.n = n
        self.values = values

    def __getitem__(self, idx: int) -> CycloValue:
        return cyclo_at(self.values, self.q, idx)

    def parseval_sum(self) -> CycloValue:
        """sum_u |values[u]|^2, exactly; equals q^(2n) for any function spectrum."""
        total = norm_sq_array(self.values, self.q).sum(axis=0)
        return CycloValue(self.q, total, _canonical=is_prime(self.q))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (self.q, self.n) == (other.q, other.n) and np.array_equal(
            self.values, other.values)


def wht(f: QFunction) -> Spectrum:
    """Exact Walsh-Hadamard transform hat-f(u) = sum_x chi(f(x)) * conj(chi(u.x)).

    Requires prime q; use wht_numeric for composite moduli.
    """
    if not is_prime(f.q):
        raise ValueError("exact transform requires prime q; use wht_numeric")
    values = digit_transform(chi_table(f), f.q, f.n, axis=0, sign=-1)
    return Spectrum(f.q, f.n, values)


def digit_transform_complex(arr: np.ndarray, q: int, n: int, sign: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / q)
    a = arr.reshape((q,) * n).astype(complex)
    for d in range(n):
        a = np.moveaxis(a, d, 0)
        out = np.empty_like(a)
        for j in range(q):
            out[j] = sum(a[t] * omega ** ((sign * j * t) % q) for t in range(q))
        a = np.moveaxis(out, 0, d)
    return a.reshape(q**n)


def wht_numeric(f: QFunction) -> np.ndarray:
    """Floating-point spectrum for arbitrary q; values are complex."""
    omega = np.exp(2j * np.pi / f.q)
    ring = omega ** np.array(f.table)
    return digit_transform_complex(ring, f.q, f.n, sign=-1)


def inverse_wht(s: Spectrum) -> QFunction:
    """Inverse transform; raises ValueError if s is not a function spectrum."""
    q, n = s.q, s.n
    back = digit_transform(s.values, q, n, axis=0, sign=+1)
    try:
        back = exact_div(back, q**n)
    except ValueError:
        raise ValueError("not a function spectrum") from None
    residues = decode_roots(back, q)
    if np.any(residues < 0):
        raise ValueError("not a function spectrum")
    return QFunction(q, n, residues.tolist())


def is_bent(f: QFunction) -> bool:
    """|hat-f(u)| = q^(n/2) for all u; exact for prime q, numeric otherwise."""
    if is_prime(f.q):
        norms = norm_sq_array(wht(f).values, f.q)
        target = np.zeros(f.q, dtype=np.int64)
        target[0] = f.q**f.n
        return bool(np.all(norms == target))
    mags = np.abs(wht_numeric(f))
    target = f.q ** (f.n / 2)
    return bool(np.all(np.abs(mags - target) < NUMERIC_TOL * target))


def is_regular_bent(f: QFunction) -> bool:
    """Bent with every spectral value equal to q^(n/2) times a root of unity."""
    q, n = f.q, f.n
    if is_prime(q) and n % 2 == 0:
        residues = decode_roots(wht(f).values, q, scale=q ** (n // 2))
        return bool(np.all(residues >= 0))
    # q^(n/2) irrational or composite q: numeric path only.
    spec = wht_numeric(f)
    target = q ** (n / 2)
    roots = target * np.exp(2j * np.pi * np.arange(q) / q)
    dist = np.abs(spec[:, None] - roots[None, :]).min(axis=1)
    return bool(np.all(dist < NUMERIC_TOL * target))


def spectral_profile(f: QFunction) -> Counter:
    """Multiset {|hat-f| value: count} for a Boolean function."""
    if f.q != 2:
        raise ValueError("spectral profile requires q = 2")
    return Counter(np.abs(fwht_int(f.table_array())).tolist())


def plateaued_order(f: QFunction):
    """Order r if hat-f has exactly 2^r nonzero values +-2^(n-r/2), else None.

    r = 0 means affine, r = n means bent.
    """
    if f.q != 2:
        raise ValueError("plateaued order requires q = 2")
    spec = fwht_int(f.table_array())
    nonzero = spec[spec != 0]
    count = len(nonzero)
    if count & (count - 1):
        return None
    r = count.bit_length() - 1
    mag_sq = 1 << (2 * f.n - r)
    if np.all(nonzero.astype(np.int64) ** 2 == mag_sq):
        return r
    return None


def quartet_combine(f1: QFunction, f2: QFunction, f3: QFunction, f4: QFunction):
    """Combine four Boolean functions whose spectra half-sum to a spectrum.

    Returns the majority function g = f1 f2 + f1 f3 + f2 f3 when the
    pointwise sum f1 + f2 + f3 + f4 is identically 1 (then hat-g is the
    half-sum of the four spectra); returns None otherwise, in which case the
    half-sum reconstructs no function.
    """
    fs = (f1, f2, f3, f4)
    if any(f.q != 2 for f in fs):
        raise ValueError("quartet combination requires q = 2")
    if len({f.n for f in fs}) != 1:
        raise ValueError("arity mismatch")
    t = [f.table_array() for f in fs]
    if not np.all((t[0] + t[1] + t[2] + t[3]) % 2 == 1):
        return None
    g = (t[0] * t[1] + t[0] * t[2] + t[1] * t[2]) % 2
    return QFunction(2, f1.n, g.tolist())
