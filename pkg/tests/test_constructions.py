import itertools

import numpy as np
import pytest

from ffbertini import kernels
from ffbertini.constructions import (
    ConstructionError,
    conic_cover,
    conic_from_matrix,
    cube_map_check,
    cuspidal_cubic,
    dual_conic,
    katz_surface,
    nodal_cubic,
    singular_family,
)
from ffbertini.gf import det_and_adjugate, make_field, rank
from ffbertini.pencil import Pencil, conic_singular_members
from ffbertini.polyform import MultiForm, Poly, partial
from ffbertini.projgeom import enumerate_points, incident, point_array
from ffbertini.search import is_blocking_collection
from ffbertini.transversal import (
    gram_matrix,
    is_transverse_hyperplane_P3,
    is_transverse_line,
    singular_point_search,
)


def test_katz_forms():
    K2 = katz_surface(make_field(2))
    assert K2.degree == 3 and len(K2.terms) == 4
    assert set(K2.terms.values()) == {1}
    K3 = katz_surface(make_field(3))
    assert K3.degree == 4 and len(K3.terms) == 4
    F = make_field(3)
    assert all(K3.evaluate(P) == 0 for P in enumerate_points(3, F))


@pytest.mark.parametrize("q", [2, 3])
def test_katz_every_plane_nontransverse(q):
    F = make_field(q)
    X = katz_surface(F)
    assert all(not is_transverse_hyperplane_P3(X, H).transverse
               for H in enumerate_points(3, F))


@pytest.mark.parametrize("q,d", [(2, 2), (3, 2), (3, 3), (5, 2), (2, 3), (5, 3)])
def test_singular_family(q, d):
    F = make_field(q)
    fam = singular_family(F, d)
    assert len(fam) == q + 1
    for C, P in zip(fam.curves, fam.meta["points"]):
        assert P[2] == 0
        assert C.evaluate(P) == 0 and all(partial(C, i).evaluate(P) == 0 for i in range(3))
    blocking, common = is_blocking_collection(fam.curves)
    assert blocking and common == []


def test_singular_family_bad_degree():
    with pytest.raises(ValueError):
        singular_family(make_field(3), 1)


def _conic_family_checks(F, fam):
    assert len(fam) == F.q + 1
    assert all(rank(F, gram_matrix(C)) == 3 for C in fam.curves)
    pts = point_array(2, F)
    covered = np.zeros(len(pts), dtype=bool)
    for C in fam.curves:
        covered |= kernels.eval_form(C, pts) == 0
    assert covered.all()
    P4 = tuple(fam.meta["P4"])
    assert all(C.evaluate(P4) == 0 for C in fam.curves)
    sing = conic_singular_members(Pencil(fam.curves[0], fam.curves[1]))
    assert len(sing) == 1 and sing.members[0][0].degree == 3
    assert all(rank(F, gram_matrix(D)) == 3 for D in fam.duals)
    blocking, _ = is_blocking_collection(fam.duals)
    assert blocking


@pytest.mark.parametrize("q", [3, 5, 7])
def test_conic_cover(q):
    _conic_family_checks(make_field(q), conic_cover(make_field(q)))


@pytest.mark.parametrize("pk", [(3, 2), (11, 1)])
def test_conic_cover_other_fields(pk):
    F = make_field(*pk)
    _conic_family_checks(F, conic_cover(F, seed=3))


def test_conic_cover_char_2_rejected():
    with pytest.raises(ValueError):
        conic_cover(make_field(2, 2))


def test_conic_cover_seeds_all_valid():
    F = make_field(5)
    for seed in range(4):
        _conic_family_checks(F, conic_cover(F, seed))


def test_dual_examples():
    F = make_field(5)
    I = [[int(i == j) for j in range(3)] for i in range(3)]
    C = conic_from_matrix(F, I)
    assert dual_conic(C) == C
    rng_M = [[1, 2, 0], [2, 3, 1], [0, 1, 4]]
    d, adj = det_and_adjugate(F, rng_M)
    d2, adj2 = det_and_adjugate(F, adj)
    assert adj2 == [[F.mul(d, x) for x in row] for row in rng_M]
    with pytest.raises(ValueError):
        dual_conic(conic_from_matrix(F, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]))


def test_tangent_lines_lie_on_dual():
    F = make_field(5)
    C = conic_from_matrix(F, [[1, 2, 0], [2, 1, 1], [0, 1, 4]])
    D = dual_conic(C)
    for L in enumerate_points(2, F):
        assert (D.evaluate(L) == 0) == (not is_transverse_line(C, L).transverse)


def test_cube_map_examples():
    assert cube_map_check(make_field(5))
    assert not cube_map_check(make_field(7))
    assert cube_map_check(make_field(2))


def test_cube_map_is_bijection_test():
    for pk in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1)]:
        F = make_field(*pk)
        images = {F.pow(x, 3) for x in F.elements()}
        assert cube_map_check(F) == (len(images) == F.q)
        assert cube_map_check(F) == (F.q % 3 != 1)


def test_nodal_and_cuspidal():
    for p in (5, 7, 13):
        F = make_field(p)
        for C in (nodal_cubic(F), cuspidal_cubic(F)):
            assert singular_point_search(C)[0] == (0, 0, 1)
        N = nodal_cubic(F)
        through = [L for L in enumerate_points(2, F) if incident(F, (0, 0, 1), L)]
        assert all(not is_transverse_line(N, L).transverse for L in through)
    F13 = make_field(13)
    assert any(is_transverse_line(nodal_cubic(F13), L).transverse
               for L in enumerate_points(2, F13))
