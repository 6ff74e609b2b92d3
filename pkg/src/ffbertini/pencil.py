"""Pencils sF + tG of forms, their non-transverse members, and conic pencils.

For a line L the binary form s B_F + t B_G (B = restriction to L) has a
discriminant R_L(s, t) of degree 2(d-1); its roots, with multiplicity, are
the members not transverse to L.  For conic pencils the singular members
are the roots of det(s M_1 + t M_2), and condition (T) (every member has a
transverse line over the closure and some member is smooth) reduces to rank
conditions at those roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .gf import GF, embedding_table, make_field, rank
from .polyform import (
    BinaryForm,
    BinaryRoot,
    MultiForm,
    Poly,
    PolyOps,
    binary_coefficients,
    binary_from_poly,
    disc_binary,
    factor_binary,
    restrict_to_line,
)
from .projgeom import enumerate_points, hyperplane_basis, line_table
from .transversal import (
    Status,
    chart_restriction,
    gram_matrix,
    is_transverse_line,
    singular_point_search,
)

__all__ = [
    "Pencil",
    "ConicPencil",
    "MemberKind",
    "MemberCount",
    "member",
    "enumerate_members",
    "parameters",
    "member_disc_on_line",
    "nontransverse_member_count",
    "quadric_pencil_count_P3",
    "SingularMembers",
    "conic_singular_members",
    "half_discriminant",
    "satisfies_T_conic",
    "t_plausible",
    "member_disc_symbolic",
    "blocking_quartic",
    "pencil_line_counts",
]


@dataclass(frozen=True)
class Pencil:
    F: MultiForm
    G: MultiForm

    def __post_init__(self):
        F, G = self.F, self.G
        if F.field != G.field or F.nvars != G.nvars or F.degree != G.degree:
            raise ValueError("pencil forms must share field, variables and degree")
        if F.is_zero() or G.is_zero():
            raise ValueError("pencil forms must be nonzero")
        if F.is_proportional(G):
            raise ValueError("pencil forms are proportional")

    @property
    def field(self) -> GF:
        return self.F.field

    @property
    def degree(self) -> int:
        return self.F.degree

    @property
    def nvars(self) -> int:
        return self.F.nvars

    def member(self, s, t) -> MultiForm:
        return member(self, s, t)

    def base_change(self, K: GF) -> Pencil:
        return Pencil(self.F.base_change(K), self.G.base_change(K))

    def shares_component(self) -> bool:
        """Some line is contained in every member (a visible common factor)."""
        if self.nvars != 3:
            raise ValueError("only plane pencils are supported")
        _, P, Q = line_table(self.field)
        zf = ~np.any(kernels.restrict_form(self.F, P, Q), axis=1)
        zg = ~np.any(kernels.restrict_form(self.G, P, Q), axis=1)
        return bool(np.any(zf & zg))


def member(P: Pencil, s, t) -> MultiForm:
    if s == 0 and t == 0:
        raise ValueError("[0:0] is not a pencil parameter")
    return P.F.scale(s) + P.G.scale(t)


def parameters(F: GF) -> list[tuple]:
    """P^1(F) in canonical order."""
    return list(enumerate_points(1, F))


def enumerate_members(P: Pencil, F: GF | None = None):
    """[(parameter, member)] for every F-rational parameter (F defaults to P's field)."""
    if F is not None and F != P.field:
        P = P.base_change(F)
    return [(st, member(P, *st)) for st in parameters(P.field)]


# -- member counts on a line ------------------------------------------------------------


class MemberKind(str, Enum):
    ALL = "AllMembers"
    FINITE = "Finite"


@dataclass(frozen=True)
class MemberCount:
    kind: MemberKind
    roots: tuple = ()          # BinaryRoot per Galois orbit of parameters
    certified: bool = True

    @property
    def total(self) -> int:
        return sum(r.degree * r.multiplicity for r in self.roots)

    def rational_params(self) -> set:
        return {r.param for r in self.roots if r.degree == 1}

    def to_json(self):
        return {
            "kind": self.kind.value,
            "roots": [{"param": [r.field.coeffs(x) for x in r.param],
                       "residue_degree": r.degree,
                       "multiplicity": r.multiplicity} for r in self.roots],
            "certified": self.certified,
        }


def _binary_pencil_disc(BF, BG, F: GF) -> BinaryForm:
    """disc of s BF + t BG as a binary form in (s, t)."""
    d = len(BF) - 1
    ring = PolyOps(F, 2)
    s, t = Poly.var(F, 2, 0), Poly.var(F, 2, 1)
    coeffs = [s.scale(a) + t.scale(b) for a, b in zip(BF, BG)]
    return binary_from_poly(disc_binary(coeffs, ring), 2 * (d - 1))


def member_disc_on_line(P: Pencil, L) -> BinaryForm:
    """R_L(s, t) = disc(s B_F + t B_G), degree 2(d-1); zero when every member fails."""
    if P.nvars != 3:
        raise ValueError("expected a pencil of plane curves")
    BF = restrict_to_line(P.F, L).coeffs
    BG = restrict_to_line(P.G, L).coeffs
    return _binary_pencil_disc(BF, BG, P.field)


def nontransverse_member_count(P: Pencil, L) -> MemberCount:
    """Members not transverse to L, counted by the factorization of R_L.

    When p | d the discriminant is not authoritative; the count then comes
    from a pointwise sweep of the F-rational members and is uncertified.
    """
    F = P.field
    if P.degree % F.p == 0:
        bad = [st for st, f in enumerate_members(P)
               if is_transverse_line(f, L).status is not Status.TRANSVERSE]
        if len(bad) == F.q + 1:
            return MemberCount(MemberKind.ALL, certified=False)
        roots = tuple(BinaryRoot(st, F, 1, 1) for st in bad)
        return MemberCount(MemberKind.FINITE, roots, certified=False)
    R = member_disc_on_line(P, L)
    if R.is_zero():
        return MemberCount(MemberKind.ALL)
    return MemberCount(MemberKind.FINITE, tuple(factor_binary(R)))


def pencil_line_counts(P: Pencil, K: GF | None = None) -> np.ndarray:
    """For every K-line, the number of K-members not transverse to it."""
    if K is not None and K != P.field:
        P = P.base_change(K)
    K = P.field
    _, Pa, Qa = line_table(K)
    BF = kernels.restrict_form(P.F, Pa, Qa)
    BG = kernels.restrict_form(P.G, Pa, Qa)
    return kernels.pencil_line_status(K, BF, BG, parameters(K))


# -- quadric pencils in P^3 ---------------------------------------------------------------


def _det_pencil(M1, M2, F: GF) -> BinaryForm:
    """det(s M1 + t M2) as a binary form of degree n in (s, t)."""
    n = len(M1)
    ring = PolyOps(F, 2)
    s, t = Poly.var(F, 2, 0), Poly.var(F, 2, 1)
    M = [[s.scale(M1[i][j]) + t.scale(M2[i][j]) for j in range(n)] for i in range(n)]
    return binary_from_poly(ring.det(M), n)


def _congruence(F: GF, M, B):
    """B^T M B for B given as a list of column vectors."""
    n, m = len(M), len(B)
    MB = [[F.sum(F.mul(M[i][k], B[j][k]) for k in range(n)) for j in range(m)]
          for i in range(n)]
    return [[F.sum(F.mul(B[i][k], MB[k][j]) for k in range(n)) for j in range(m)]
            for i in range(m)]


def quadric_pencil_count_P3(P: Pencil, H) -> MemberCount:
    """Members of a quadric pencil in P^3 whose section by H is singular.

    These are the roots of the binary cubic det(s M1|_H + t M2|_H).
    """
    F = P.field
    if P.nvars != 4 or P.degree != 2:
        raise ValueError("expected a pencil of quadrics in P^3")
    if F.p == 2:
        raise ValueError("quadric Gram matrices need odd characteristic")
    B = hyperplane_basis(F, H)
    cubic = _det_pencil(_congruence(F, gram_matrix(P.F), B),
                        _congruence(F, gram_matrix(P.G), B), F)
    if cubic.is_zero():
        return MemberCount(MemberKind.ALL)
    return MemberCount(MemberKind.FINITE, tuple(factor_binary(cubic)))


# -- conic pencils ------------------------------------------------------------------------


@dataclass(frozen=True)
class ConicPencil:
    M1: tuple
    M2: tuple
    field: GF

    @classmethod
    def from_pencil(cls, P: Pencil) -> ConicPencil:
        if P.nvars != 3 or P.degree != 2:
            raise ValueError("expected a pencil of plane conics")
        to_t = lambda M: tuple(tuple(r) for r in M)  # noqa: E731
        return cls(to_t(gram_matrix(P.F)), to_t(gram_matrix(P.G)), P.field)

    def to_pencil(self) -> Pencil:
        F = self.field

        def form(M):
            terms = {}
            for i in range(3):
                for j in range(i, 3):
                    e = [0, 0, 0]
                    e[i] += 1
                    e[j] += 1
                    terms[tuple(e)] = M[i][i] if i == j else F.add(M[i][j], M[j][i])
            return MultiForm(F, 3, 2, terms)

        return Pencil(form(self.M1), form(self.M2))

    def det_cubic(self) -> BinaryForm:
        return _det_pencil(self.M1, self.M2, self.field)

    def member_matrix(self, s, t, K: GF | None = None):
        K = K or self.field
        table = embedding_table(self.field, K)
        return [[K.add(K.mul(s, table[a]), K.mul(t, table[b]))
                 for a, b in zip(r1, r2)] for r1, r2 in zip(self.M1, self.M2)]


@dataclass(frozen=True)
class SingularMembers:
    degenerate: bool                 # det(s M1 + t M2) vanishes identically
    members: tuple = ()              # (BinaryRoot, rank) per Galois orbit

    def __len__(self):
        return len(self.members)


def _conic(P) -> ConicPencil:
    return P if isinstance(P, ConicPencil) else ConicPencil.from_pencil(P)


def conic_singular_members(P) -> SingularMembers:
    CP = _conic(P)
    cubic = CP.det_cubic()
    if cubic.is_zero():
        return SingularMembers(True)
    out = []
    for r in factor_binary(cubic):
        M = CP.member_matrix(*r.param, K=r.field)
        out.append((r, rank(r.field, M)))
    return SingularMembers(False, tuple(out))


def half_discriminant(f: MultiForm):
    """4abc + uvw - a u^2 - b v^2 - c w^2 for a x^2+b y^2+c z^2+u yz+v xz+w xy.

    Vanishes exactly on singular conics, in every characteristic; equals
    4 det(Gram) when p is odd.
    """
    F = f.field
    T = f.terms.get
    a, b, c = T((2, 0, 0), 0), T((0, 2, 0), 0), T((0, 0, 2), 0)
    u, v, w = T((0, 1, 1), 0), T((1, 0, 1), 0), T((1, 1, 0), 0)
    return F.sum([F.mul(F.from_int(4), F.mul(a, F.mul(b, c))), F.mul(u, F.mul(v, w)),
                  F.neg(F.mul(a, F.mul(u, u))), F.neg(F.mul(b, F.mul(v, v))),
                  F.neg(F.mul(c, F.mul(w, w)))])


def _half_disc_cubic(P: Pencil) -> BinaryForm:
    F = P.field
    s, t = Poly.var(F, 2, 0), Poly.var(F, 2, 1)
    co = {e: s.scale(P.F.terms.get(e, 0)) + t.scale(P.G.terms.get(e, 0))
          for e in [(2, 0, 0), (0, 2, 0), (0, 0, 2), (0, 1, 1), (1, 0, 1), (1, 1, 0)]}
    a, b, c = co[(2, 0, 0)], co[(0, 2, 0)], co[(0, 0, 2)]
    u, v, w = co[(0, 1, 1)], co[(1, 0, 1)], co[(1, 1, 0)]
    four = Poly.constant(F, 2, F.from_int(4))
    D = four * a * b * c + u * v * w - a * u * u - b * v * v - c * w * w
    return binary_from_poly(D, 3)


def satisfies_T_conic(P) -> bool:
    """Condition (T) for a pencil of conics.

    Odd p: det(s M1 + t M2) is not identically zero and each of its roots is
    a rank-2 member.  p = 2: the half-discriminant cubic is not identically
    zero and no member is a double line, i.e. the cross-term coefficient
    vectors (yz, xz, xy) of F and G are linearly independent.
    """
    if isinstance(P, ConicPencil):
        if P.field.p == 2:
            raise ValueError("conic matrices need odd characteristic")
    elif P.field.p == 2:
        if _half_disc_cubic(P).is_zero():
            return False
        cross = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
        rows = [[f.terms.get(e, 0) for e in cross] for f in (P.F, P.G)]
        return rank(P.field, rows) == 2
    sing = conic_singular_members(P)
    return not sing.degenerate and all(rk == 2 for _, rk in sing.members)


def t_plausible(P: Pencil, max_ext: int = 3, budget: int | None = None) -> bool:
    """Necessary condition for (T) on general plane pencils: some member over
    F_{q^m}, m <= max_ext, has no singular point of residue degree <= (d-1)^2.

    This does not certify (T); it only rules out pencils with no smooth
    member found.
    """
    F = P.field
    bound = max(1, (P.degree - 1) ** 2)
    for m in range(1, max_ext + 1):
        K = F if m == 1 else make_field(F.p, F.k * m)
        for _, f in enumerate_members(P, K):
            if singular_point_search(f, max_deg=bound, budget=budget) is None:
                return True
    return False


# -- the symbolic locus of lines tangent to a member twice -------------------------------


def member_disc_symbolic(P: Pencil) -> Poly:
    """R(s, t, a, b, c) with the chart factor c^(d(d-1)) removed.

    Variables are ordered (s, t, a, b, c); R has degree 2(d-1) in (s, t).
    """
    F, d = P.field, P.degree
    if P.nvars != 3:
        raise ValueError("expected a pencil of plane curves")
    ring = PolyOps(F, 5)
    s, t = Poly.var(F, 5, 0), Poly.var(F, 5, 1)
    aux = [Poly.var(F, 5, i) for i in (2, 3, 4)]
    BF = chart_restriction(P.F, aux)
    BG = chart_restriction(P.G, aux)
    coeffs = [s * a + t * b for a, b in zip(BF, BG)]
    R = disc_binary(coeffs, ring)
    return R.divide_by_monomial((0, 0, 0, 0, d * (d - 1)))


def blocking_quartic(P) -> MultiForm:
    """D(a, b, c) = disc_{(s,t)} R, a quartic form in the line coordinates.

    D vanishes on every line L for which R_L has a repeated root, i.e. the
    lines tangent to a single member with multiplicity 2 in the count.
    """
    if isinstance(P, ConicPencil):
        P = P.to_pencil()
    F = P.field
    if P.degree != 2 or P.nvars != 3:
        raise ValueError("expected a pencil of conics")
    if F.p == 2:
        raise ValueError("the quartic locus needs odd characteristic")
    R = member_disc_symbolic(P)
    coeffs = binary_coefficients(R, 2)
    D = disc_binary(coeffs, PolyOps(F, 3))
    return MultiForm(F, 3, 4, D.terms)
