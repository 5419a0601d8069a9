"""Vectorized exact arithmetic on arrays of cyclotomic coefficient vectors.

Arrays carry an extra trailing axis of length q holding Z[zeta_q]
coefficients in canonical form (prime q: last coefficient zero).  All
character sums are computed with a radix-q butterfly over digit axes, so a
length-q^n transform costs O(n * q^(n+1)) integer operations.
"""
from __future__ import annotations

import numpy as np

from .qalg import CycloValue, QFunction, is_prime


def canonical(arr: np.ndarray, q: int) -> np.ndarray:
    """Reduce coefficient vectors by 1 + zeta + ... + zeta^(q-1) = 0 (prime q)."""
    if is_prime(q):
        return arr - arr[..., -1:]
    return arr


def rotate(arr: np.ndarray, a: int, q: int) -> np.ndarray:
    """Multiply each coefficient vector by zeta^a (no reduction)."""
    return np.roll(arr, a % q, axis=-1)


def chi_array(values: np.ndarray, q: int) -> np.ndarray:
    """chi(v) for an integer array v; result has one extra axis of length q."""
    out = np.eye(q, dtype=np.int64)[np.asarray(values) % q]
    return canonical(out, q)


def chi_table(f: QFunction) -> np.ndarray:
    """The table of f-ring = chi(f(x)), shape (q^n, q)."""
    return chi_array(np.array(f.table, dtype=np.int64), f.q)


def digit_transform(arr: np.ndarray, q: int, n: int, axis: int, sign: int) -> np.ndarray:
    """Character transform along one length-q^n axis.

    out[..., u, ...] = sum_x arr[..., x, ...] * zeta^(sign * u.x), where u, x
    run over V_n in lexicographic order.  The trailing axis holds cyclotomic
    coefficients.  Exact; result is canonically reduced for prime q.
    """
    if arr.shape[axis] != q**n:
        raise ValueError("axis length does not match q^n")
    a = np.moveaxis(arr, axis, 0)
    tail = a.shape[1:]
    a = a.reshape((q,) * n + tail)
    for d in range(n):
        a = np.moveaxis(a, d, 0)
        out = np.empty_like(a)
        for j in range(q):
            acc = a[0].copy()
            for t in range(1, q):
                acc += np.roll(a[t], (sign * j * t) % q, axis=-1)
            out[j] = acc
        a = np.moveaxis(out, 0, d)
    a = a.reshape((q**n,) + tail)
    return canonical(np.moveaxis(a, 0, axis), q)


def exact_div(arr: np.ndarray, d: int) -> np.ndarray:
    """Divide exactly by an integer; raises on non-integral division."""
    if np.any(arr % d):
        raise ValueError(f"non-integral division by {d}")
    return arr // d


def root_vectors(q: int, scale: int = 1) -> np.ndarray:
    """Canonical coefficient vectors of scale * zeta^c for c in range(q)."""
    return canonical(scale * np.eye(q, dtype=np.int64), q)


def decode_roots(arr: np.ndarray, q: int, scale: int = 1) -> np.ndarray:
    """Decode each coefficient vector as scale * chi(c); -1 where impossible."""
    roots = root_vectors(q, scale)
    res = np.full(arr.shape[:-1], -1, dtype=np.int64)
    for c in range(q):
        res[np.all(arr == roots[c], axis=-1)] = c
    return res


def norm_sq_array(arr: np.ndarray, q: int) -> np.ndarray:
    """|z|^2 coefficient vectors for an array of cyclotomic values."""
    out = np.empty_like(arr)
    for k in range(q):
        out[..., k] = (arr * np.roll(arr, k, axis=-1)).sum(axis=-1)
    return canonical(out, q)


def cyclo_at(arr: np.ndarray, q: int, idx) -> CycloValue:
    return CycloValue(q, arr[idx], _canonical=is_prime(q))


def fwht_int(table: np.ndarray) -> np.ndarray:
    """Integer Walsh-Hadamard spectrum of a Boolean 0/1 table (q = 2 fast path).

    Matches the generic transform: hat-f(u) = sum_x (-1)^f(x) * (-1)^(u.x).
    """
    a = 1 - 2 * np.asarray(table, dtype=np.int64)
    h = 1
    size = a.shape[-1]
    a = a.copy()
    while h < size:
        for i in range(0, size, 2 * h):
            x = a[..., i:i + h].copy()
            y = a[..., i + h:i + 2 * h].copy()
            a[..., i:i + h] = x + y
            a[..., i + h:i + 2 * h] = x - y
        h *= 2
    return a
