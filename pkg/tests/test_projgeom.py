import itertools

import numpy as np
import pytest

from ffbertini.gf import make_field
from ffbertini.polyform import MultiForm, Poly
from ffbertini.projgeom import (
    BudgetExceeded,
    collinear,
    count_points,
    enumerate_points,
    frobenius_orbit,
    hyperplane_basis,
    incident,
    line_table,
    lines_through,
    normalize,
    num_points,
    point_array,
    point_chunks,
    points_on_hyperplane,
)


def conic(F, expr):
    return MultiForm.from_poly(expr, 2)


def xyz(F):
    return [Poly.var(F, 3, i) for i in range(3)]


@pytest.mark.parametrize("n,pk", [(1, (2, 1)), (2, (3, 1)), (3, (2, 1)), (2, (2, 2)),
                                  (3, (3, 1)), (2, (5, 1)), (1, (3, 2))])
def test_enumeration_count_and_canonical_form(n, pk):
    F = make_field(*pk)
    pts = list(enumerate_points(n, F))
    assert len(pts) == num_points(n, F.q) == (F.q ** (n + 1) - 1) // (F.q - 1)
    assert len(set(pts)) == len(pts)
    assert pts == sorted(pts, key=lambda P: _key(P))
    for P in pts:
        assert P == normalize(F, P)
        assert P[next(i for i, x in enumerate(P) if x)] == 1
    assert [tuple(r) for r in point_array(n, F).tolist()] == pts
    chunks = np.concatenate(list(point_chunks(n, F, chunk=7)))
    assert [tuple(r) for r in chunks.tolist()] == pts


def _key(P):
    # first nonzero position last-first, then lexicographic
    lead = next(i for i, x in enumerate(P) if x)
    return (-lead, P)


def test_examples():
    assert num_points(1, 2) == 3 and num_points(2, 3) == 13 and num_points(3, 2) == 15
    F = make_field(3)
    assert not incident(F, (1, 0, 0), (1, 0, 0))
    assert incident(F, (0, 1, 0), (1, 0, 0))
    assert collinear(F, (1, 0, 0), (0, 1, 0), (1, 1, 0))
    assert not collinear(F, (1, 0, 0), (0, 1, 0), (0, 0, 1))
    frame = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    assert not any(collinear(F, *T) for T in itertools.combinations(frame, 3))


def test_each_point_on_q_plus_one_lines():
    F = make_field(3)
    for P in enumerate_points(2, F):
        assert len(lines_through(F, P)) == 4


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_incidence_duality(pk):
    F = make_field(*pk)
    pts = list(enumerate_points(2, F))
    for P, H in itertools.product(pts, repeat=2):
        assert incident(F, P, H) == incident(F, H, P)


@pytest.mark.parametrize("n,pk", [(2, (3, 1)), (2, (2, 2)), (3, (2, 1)), (3, (3, 1))])
def test_hyperplane_basis(n, pk):
    F = make_field(*pk)
    for H in enumerate_points(n, F):
        B = hyperplane_basis(F, H)
        assert len(B) == n
        assert all(incident(F, P, H) for P in B)
        on = points_on_hyperplane(F, H)
        assert len(on) == num_points(n - 1, F.q)
        assert list(B) == on[:n] if n == 2 else True


def test_line_table_matches_enumeration():
    F = make_field(5)
    lines, P, Q = line_table(F)
    assert [tuple(r) for r in lines.tolist()] == list(enumerate_points(2, F))
    for L, a, b in zip(lines.tolist(), P.tolist(), Q.tolist()):
        assert incident(F, a, L) and incident(F, b, L) and a != b


def test_frobenius_orbits():
    F, K = make_field(3), make_field(3, 3)
    assert len(frobenius_orbit((1, 2, 0), F, F)) == 1
    alpha = next(a for a in K.elements() if a >= 3 and K.pow(a, 3) != a)
    assert len(frobenius_orbit(normalize(K, (alpha, 1, 0)), K, F)) == 3
    K6 = make_field(2, 6)
    F2 = make_field(2)
    for P in list(enumerate_points(2, K6))[::397]:
        assert 6 % len(frobenius_orbit(P, K6, F2)) == 0


def test_count_points_examples():
    F = make_field(3)
    x, y, z = xyz(F)
    assert count_points(conic(F, x * y)) == 7
    assert count_points(conic(F, x * y - z * z)) == 4
    assert count_points(conic(F, x * x + y * y + z * z)) == 4


def test_budget():
    F = make_field(7)
    with pytest.raises(BudgetExceeded):
        list(enumerate_points(3, F, budget=100))
    x, y, z = xyz(F)
    with pytest.raises(BudgetExceeded):
        count_points(conic(F, x * y), budget=10)
