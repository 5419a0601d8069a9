import pytest

from bentrect.partitions import gaussian_coeff
from bentrect.planes import (AffinePlane, all_planes, all_subspaces, rref,
                             span_indices, subspace_intersection)


def test_rref():
    rows, pivots = rref([(1, 1, 0), (0, 1, 1), (1, 0, 1)], 2)
    assert pivots == (0, 1)
    assert rows == ((1, 0, 1), (0, 1, 1))
    # (1, 2) = 2 * (2, 1) over F_3, so the rank is 1
    rows3, pivots3 = rref([(2, 1), (1, 2)], 3)
    assert pivots3 == (0,)
    assert rows3 == ((1, 2),)


def test_subspace_counts_match_gaussian():
    for n, r, q in ((4, 2, 2), (3, 1, 3), (4, 1, 2), (3, 2, 2), (2, 1, 5)):
        assert len(all_subspaces(n, r, q)) == gaussian_coeff(n, r, q)
        assert len(all_planes(n, r, q)) == gaussian_coeff(n, r, q) * q**(n - r)


def test_plane_canonicalization():
    # same coset from different representatives
    a = AffinePlane.make(2, 3, [(0, 1, 1)], (1, 0, 0))
    b = AffinePlane.make(2, 3, [(0, 1, 1)], (1, 1, 1))
    assert a == b
    assert a.shift == (1, 0, 0)
    assert a.point_indices() == frozenset({4, 7})


def test_contains_and_chart():
    p = AffinePlane.make(2, 4, [(1, 0, 1, 0), (0, 1, 0, 0)], (0, 0, 0, 1))
    pts = p.points()
    assert len(pts) == 4
    for x in pts:
        assert p.contains(x)
    assert not p.contains((0, 0, 0, 0))
    basis, shift = p.chart()
    for i, x in enumerate(sorted(p.point_indices())):
        from bentrect.qalg import index_to_vec
        w = p.chart_inverse_index(index_to_vec(x, 2, 4))
        assert 0 <= w < 4
    with pytest.raises(ValueError):
        p.chart_inverse_index((0, 0, 0, 0))


def test_from_points():
    p = AffinePlane.from_points(2, 2, [(0, 1), (1, 1)])
    assert p.dim == 1
    with pytest.raises(ValueError):
        AffinePlane.from_points(2, 2, [(0, 0), (0, 1), (1, 0)])


def test_span_and_intersection():
    assert span_indices([(1, 0), (0, 1)], 2, 2) == frozenset(range(4))
    common = subspace_intersection([((1, 0, 0), (0, 1, 0)),
                                    ((0, 1, 0), (0, 0, 1))], 2, 3)
    assert common == span_indices([(0, 1, 0)], 2, 3)
