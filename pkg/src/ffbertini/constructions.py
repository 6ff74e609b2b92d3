"""Explicit surfaces, curves and blocking families.

* Katz's surface X^q Y - X Y^q + Z^q W - Z W^q, tangent to every F_q-plane.
* A family of q+1 curves, each singular at one F_q-point of the line z = 0.
* q+1 smooth conics through a Galois orbit of size 3 and one rational point
  whose F_q-points cover P^2(F_q); their duals admit no common transverse line.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .gf import (
    GF,
    det,
    det_and_adjugate,
    embedding_table,
    kernel_basis,
    make_field,
    rank,
)
from .pencil import ConicPencil, Pencil, conic_singular_members, enumerate_members
from .polyform import MultiForm, Poly, monomials, substitute_linear
from .projgeom import collinear, enumerate_points, frobenius_orbit, point_array
from .transversal import gram_matrix

__all__ = [
    "ConstructionError",
    "BlockingFamily",
    "katz_surface",
    "singular_family",
    "conic_cover",
    "dual_conic",
    "conic_from_matrix",
    "cube_map_check",
    "nodal_cubic",
    "cuspidal_cubic",
]


class ConstructionError(RuntimeError):
    """A construction's search space was exhausted or a postcondition failed."""


@dataclass
class BlockingFamily:
    curves: list
    meta: dict = field(default_factory=dict)
    duals: list | None = None

    @property
    def field(self) -> GF:
        return self.curves[0].field

    def __len__(self):
        return len(self.curves)


def _vars(F, n):
    return [Poly.var(F, n, i) for i in range(n)]


def katz_surface(F: GF) -> MultiForm:
    q = F.q
    X, Y, Z, W = _vars(F, 4)
    f = X**q * Y - X * Y**q + Z**q * W - Z * W**q
    return MultiForm.from_poly(f, q + 1)


def nodal_cubic(F: GF) -> MultiForm:
    """y^2 z - x^3 - x^2 z, with a node at [0:0:1]."""
    x, y, z = _vars(F, 3)
    return MultiForm.from_poly(y * y * z - x**3 - x * x * z, 3)


def cuspidal_cubic(F: GF) -> MultiForm:
    """y^2 z - x^3, with a cusp at [0:0:1]."""
    x, y, z = _vars(F, 3)
    return MultiForm.from_poly(y * y * z - x**3, 3)


def _completion(F: GF, P):
    """Invertible A with third column P, other columns the first fitting unit vectors."""
    units = [tuple(int(i == j) for i in range(3)) for j in range(3)]
    for i, u in enumerate(units):
        for v in units[i + 1:]:
            A = [[u[r], v[r], P[r]] for r in range(3)]
            if det(F, A):
                return A
    raise AssertionError("a nonzero vector always completes to a basis")


def singular_family(F: GF, d: int) -> BlockingFamily:
    """q+1 curves of degree d, the i-th singular at the i-th F-point of z = 0.

    C_i = f(A_i^{-1} X) with f = x^d + y^d, singular at [0:0:1], and
    A_i [0:0:1] = P_i.  Every line meets z = 0 in some P_i, so it passes
    through a singular point of C_i.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    x, y, _ = _vars(F, 3)
    base = MultiForm.from_poly(x**d + y**d, d)
    points = [P for P in enumerate_points(2, F) if P[2] == 0]
    curves = []
    for P in points:
        A = _completion(F, P)
        dt, adj = det_and_adjugate(F, A)
        inv = F.inv(dt)
        Ainv = [[F.mul(inv, a) for a in row] for row in adj]
        curves.append(substitute_linear(base, Ainv))
    return BlockingFamily(curves, {"q": F.q, "d": d, "points": points,
                                   "base_form": "x^d + y^d"})


# -- conics ----------------------------------------------------------------------------


def conic_from_matrix(F: GF, M) -> MultiForm:
    terms = {}
    for i in range(3):
        for j in range(i, 3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = M[i][i] if i == j else F.add(M[i][j], M[j][i])
    return MultiForm(F, 3, 2, terms)


def dual_conic(C, F: GF | None = None) -> MultiForm:
    """The conic of tangent lines: Gram matrix adj(M).  Needs rank 3, odd p."""
    if isinstance(C, MultiForm):
        F = C.field
        M = gram_matrix(C)
    else:
        M = C
        if F is None:
            raise ValueError("a field is required with a bare matrix")
        if F.p == 2:
            raise ValueError("polarization needs odd characteristic")
    dt, adj = det_and_adjugate(F, M)
    if dt == 0:
        raise ValueError("the conic is singular")
    return conic_from_matrix(F, adj)


def _conic_conditions(F: GF, K: GF, P1, P4):
    """F_p-linear conditions on conics over F (as F_p-vectors) through P1, P4.

    Unknown coefficients c_m = sum_j c_{m,j} t^j (t the generator of F over
    F_p).  The condition at P1 lies in K and is expanded in K's F_p-basis;
    the condition at P4 lies in F.  Columns: (monomial, j) pairs.
    """
    mons = monomials(3, 2)
    table = embedding_table(F, K)
    basis = [F.elem([int(i == j) for i in range(F.k)]) for j in range(F.k)]
    rows = []
    for pt, fld, emb in ((P1, K, table), (P4, F, None)):
        cols = []
        for mon in mons:
            v = 1
            for x, e in zip(pt, mon):
                v = fld.mul(v, fld.pow(x, e))
            for b in basis:
                bb = emb[b] if emb is not None else b
                cols.append(fld.coeffs(fld.mul(bb, v)))
        # transpose: one F_p-row per coordinate of the value
        rows.extend([col[r] for col in cols] for r in range(fld.k))
    return rows


def _fq_basis(F: GF, vectors, ncoef):
    """F-linearly independent F-vectors assembled from F_p-kernel vectors."""
    chosen = []
    for v in vectors:
        w = [F.elem(v[m * F.k:(m + 1) * F.k]) for m in range(ncoef)]
        if rank(F, chosen + [w]) == len(chosen) + 1:
            chosen.append(w)
    return chosen


def conic_cover(F: GF, seed: int = 0) -> BlockingFamily:
    """q+1 smooth conics whose F-points cover P^2(F), with their duals.

    P1 is searched in P^2(F_{q^3}) from a seeded offset for a Frobenius
    orbit {P1, P2, P3} of size 3; P4 is the first F-point with no three of
    the four points collinear.  The conics through all four form a pencil.
    """
    if F.p == 2:
        raise ValueError("the construction needs odd characteristic")
    K = make_field(F.p, F.k * 3)
    table = embedding_table(F, K)
    rational = list(enumerate_points(2, F))
    pts = point_array(2, K)
    start = seed % len(pts)
    for off in range(len(pts)):
        P1 = tuple(pts[(start + off) % len(pts)].tolist())
        orbit = frobenius_orbit(P1, K, F)
        if len(orbit) != 3 or collinear(K, *orbit):
            continue
        P4 = next((R for R in rational if _general(K, orbit, [table[x] for x in R])), None)
        if P4 is None:
            continue
        family = _cover_from_points(F, K, orbit, P4)
        if family is not None:
            family.meta.update({"seed": seed, "P1": [K.coeffs(x) for x in P1],
                                "P1_field": K.to_json(), "P4": list(P4)})
            return family
    raise ConstructionError("no admissible (P1, P4) pair found")


def _general(K, orbit, P4):
    pts = list(orbit) + [tuple(P4)]
    return all(not collinear(K, *(pts[i] for i in range(4) if i != j)) for j in range(4))


def _cover_from_points(F, K, orbit, P4):
    rows = _conic_conditions(F, K, orbit[0], P4)
    Fp = make_field(F.p)
    kern = kernel_basis(Fp, rows, ncols=6 * F.k)
    basis = _fq_basis(F, kern, 6)
    if len(basis) != 2:
        raise ConstructionError(f"expected a pencil, got dimension {len(basis)}")
    mons = monomials(3, 2)
    F1, F2 = (MultiForm(F, 3, 2, dict(zip(mons, b))) for b in basis)
    P = Pencil(F1, F2)
    members = enumerate_members(P)
    curves = [f for _, f in members]
    # postconditions
    if any(rank(F, gram_matrix(f)) != 3 for f in curves):
        raise ConstructionError("a rational member is singular")
    pts = point_array(2, F)
    covered = np.zeros(len(pts), dtype=bool)
    for f in curves:
        covered |= kernels.eval_form(f, pts) == 0
    if not covered.all():
        raise ConstructionError("the members do not cover P^2(F_q)")
    sing = conic_singular_members(ConicPencil.from_pencil(P))
    if sing.degenerate or len(sing) != 1 or sing.members[0][0].degree != 3:
        raise ConstructionError("singular members are not one degree-3 orbit")
    duals = [dual_conic(f) for f in curves]
    meta = {"q": F.q, "params": [list(st) for st, _ in members],
            "pencil": [F1.coefficient_vector(), F2.coefficient_vector()]}
    return BlockingFamily(curves, meta, duals)


def cube_map_check(F: GF) -> bool:
    """Is x -> x^3 a permutation of P^1(F)?  ([1:0] is fixed.)"""
    return len({F.pow(x, 3) for x in F.elements()}) == F.q
