import random

import numpy as np
import pytest

from bentrect.qalg import QFunction, index_to_vec
from bentrect.spectral import (Spectrum, inverse_wht, is_bent,
                               is_regular_bent, plateaued_order,
                               quartet_combine, spectral_profile, wht,
                               wht_numeric)
from bentrect.transform import canonical


def naive_wht(f):
    """Direct double-sum character transform, coefficient bookkeeping only."""
    q, n = f.q, f.n
    size = q**n
    out = np.zeros((size, q), dtype=np.int64)
    vecs = [index_to_vec(i, q, n) for i in range(size)]
    for u in range(size):
        for x in range(size):
            e = (f.value_at(x) - sum(a * b for a, b in zip(vecs[u], vecs[x]))) % q
            out[u, e] += 1
    return canonical(out, q)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 4), (3, 2), (5, 1), (3, 3)])
def test_butterfly_matches_naive(q, n):
    rng = random.Random(q * 100 + n)
    for _ in range(25):
        f = QFunction(q, n, [rng.randrange(q) for _ in range(q**n)])
        assert np.array_equal(wht(f).values, naive_wht(f))


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (5, 2)])
def test_parseval_and_roundtrip(q, n):
    rng = random.Random(q + n)
    for _ in range(20):
        f = QFunction(q, n, [rng.randrange(q) for _ in range(q**n)])
        s = wht(f)
        assert s.parseval_sum() == q**(2 * n)
        assert inverse_wht(s) == f


def test_inverse_rejects_non_spectrum():
    s = wht(QFunction(2, 2, [0, 0, 0, 1]))
    broken = Spectrum(2, 2, s.values.copy())
    broken.values[0, 0] += 1
    with pytest.raises(ValueError):
        inverse_wht(broken)


def test_numeric_matches_exact():
    rng = random.Random(0)
    for q, n in ((2, 3), (3, 2)):
        f = QFunction(q, n, [rng.randrange(q) for _ in range(q**n)])
        exact = np.array([wht(f)[u].to_complex() for u in range(q**n)])
        assert np.allclose(exact, wht_numeric(f))


def test_bent_predicates():
    prod = QFunction(2, 2, [0, 0, 0, 1])
    assert is_bent(prod) and is_regular_bent(prod)
    assert not is_bent(QFunction(2, 2, [0, 1, 0, 1]))
    xy3 = QFunction.from_callable(3, 2, lambda x: x[0] * x[1])
    assert is_bent(xy3) and is_regular_bent(xy3)
    # bent but the arity is odd for q=3: x^2 is bent on one variable
    sq = QFunction.from_callable(3, 1, lambda x: x[0] * x[0])
    assert is_bent(sq)


def test_plateaued_order():
    assert plateaued_order(QFunction(2, 2, [0, 0, 0, 1])) == 2
    assert plateaued_order(QFunction(2, 2, [0, 1, 0, 1])) == 0
    f = QFunction.from_callable(2, 3, lambda x: x[0] * x[1])
    assert plateaued_order(f) == 2
    g = QFunction.from_callable(2, 3, lambda x: x[0] * x[1] * x[2])
    assert plateaued_order(g) is None


def test_spectral_profile():
    prof = spectral_profile(QFunction(2, 2, [0, 0, 0, 1]))
    assert prof == {2: 4}


def test_quartet_combine():
    f = QFunction(2, 2, [0, 0, 0, 1])
    g = quartet_combine(f, f, f, f + QFunction.constant(2, 2, 1))
    assert g == f
    assert quartet_combine(f, f, f, f) is None
    # recovered g has the half-sum spectrum
    a = QFunction(2, 2, [0, 0, 0, 1])
    b = QFunction(2, 2, [0, 1, 0, 0])
    c = QFunction(2, 2, [0, 0, 1, 0])
    d = QFunction(2, 2, ((a.table_array() + b.table_array()
                          + c.table_array() + 1) % 2).tolist())
    g = quartet_combine(a, b, c, d)
    assert g is not None
    half = (wht(a).values + wht(b).values + wht(c).values + wht(d).values)
    assert np.array_equal(2 * wht(g).values, canonical(half, 2))
