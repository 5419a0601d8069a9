import random

import numpy as np
import pytest

from bentrect.affine_group import ElementaryTransform, apply_transform_rect
from bentrect.qalg import QFunction, restrict
from bentrect.rectangle import (Rectangle, cells, column_spectra,
                                four_row_check, is_bent_rectangle, rectangle,
                                rectangle_function, row_functions,
                                shift_shape, to_shape, transpose,
                                two_row_check)
from bentrect.spectral import is_regular_bent, wht


def random_fn(rng, q, n):
    return QFunction(q, n, [rng.randrange(q) for _ in range(q**n)])


def mm6(rng):
    from bentrect.constructions import maiorana
    pi = list(range(8))
    rng.shuffle(pi)
    return maiorana(2, 3, pi, random_fn(rng, 2, 3))


@pytest.mark.parametrize("q,n,m", [(2, 4, 1), (2, 4, 3), (3, 3, 2), (2, 5, 2)])
def test_rows_are_restriction_spectra(q, n, m):
    rng = random.Random(n * 10 + m)
    f = random_fn(rng, q, n)
    r = rectangle(f, m)
    for u in range(q**m):
        from bentrect.qalg import index_to_vec
        uv = index_to_vec(u, q, m)
        g = restrict(f, dict(enumerate(uv)))
        assert np.array_equal(r.entries[u], wht(g).values)


def test_extreme_shapes():
    f = QFunction(2, 2, [0, 0, 0, 1])
    r0 = rectangle(f, 0)
    assert np.array_equal(r0.entries[0], wht(f).values)
    r2 = rectangle(f, 2)
    assert r2.int_matrix().reshape(-1).tolist() == [1, 1, 1, -1]


def test_shape_shifts_exact():
    rng = random.Random(3)
    for q, n in ((2, 4), (3, 3)):
        f = random_fn(rng, q, n)
        base = rectangle(f, 0)
        for m in range(n + 1):
            assert to_shape(base, m) == rectangle(f, m)
        r = rectangle(f, 2)
        assert shift_shape(shift_shape(r, +1), -1) == r


def test_rectangle_function_roundtrip():
    rng = random.Random(4)
    f = random_fn(rng, 2, 5)
    assert rectangle_function(rectangle(f, 2)) == f
    assert len(row_functions(rectangle(f, 2))) == 4


def test_bent_rectangle_iff_regular_bent_sampled():
    rng = random.Random(5)
    for _ in range(50):
        f = random_fn(rng, 2, 4)
        rb = is_regular_bent(f)
        for m in range(5):
            assert is_bent_rectangle(rectangle(f, m)) == rb
    f3 = QFunction.from_callable(3, 2, lambda x: x[0] * x[1])
    for m in range(3):
        assert is_bent_rectangle(rectangle(f3, m))


def test_column_spectra_of_bent():
    f = QFunction.from_callable(2, 4, lambda x: x[0] * x[2] + x[1] * x[3])
    r = rectangle(f, 2)
    cols = column_spectra(r)
    assert np.all(np.abs(cols[..., 0]) == 4)


def test_transpose():
    rng = random.Random(6)
    f = mm6(rng)
    for m in (1, 2, 3):
        r = rectangle(f, m)
        rt, g = transpose(r)
        assert (rt.m, rt.k) == (r.k, r.m)
        assert is_regular_bent(g)
        assert is_bent_rectangle(rt)
        assert rectangle(g, r.k) == rt
        # scaled transpose relation
        if m >= r.k:
            assert np.array_equal(rt.entries,
                                  np.transpose(r.entries, (1, 0, 2)) * 2**((m - r.k)))
    with pytest.raises(ValueError):
        transpose(rectangle(QFunction(2, 4, [0] * 16), 2))


def test_double_transpose_identity():
    rng = random.Random(7)
    f = mm6(rng)
    _, g = transpose(rectangle(f, 2))
    _, f2 = transpose(rectangle(g, 4))
    assert f2 == f


def test_two_and_four_row_checks():
    rng = random.Random(8)
    f = mm6(rng)
    assert two_row_check(rectangle(f, 1))
    assert four_row_check(rectangle(f, 2))
    bad = QFunction(2, 4, [0] * 16)
    assert not two_row_check(rectangle(bad, 1))
    assert not four_row_check(rectangle(bad, 2))


def test_cells_and_cell_rules():
    e = np.zeros((2, 2, 2), dtype=np.int64)
    e[..., 0] = [[4, 4], [4, 0]]
    r = Rectangle(2, 1, 1, e)
    assert [c.values for c in cells(r)] == [((4, 4), (4, 0))]
    out = apply_transform_rect(r, ElementaryTransform("C1")).int_matrix()
    assert out.tolist() == [[6, 2], [2, 2]]
    e[..., 0] = [[4, 4], [4, -4]]
    out = apply_transform_rect(Rectangle(2, 1, 1, e),
                               ElementaryTransform("C1")).int_matrix()
    assert out.tolist() == [[8, 0], [0, 0]]
    out = apply_transform_rect(Rectangle(2, 1, 1, e),
                               ElementaryTransform("C2")).int_matrix()
    assert out.tolist() == [[4, 4], [4, 4]]
