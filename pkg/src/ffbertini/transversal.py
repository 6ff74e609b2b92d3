"""Transversality of line and plane sections, and the symbolic tangent locus.

A hyperplane H is transverse to a hypersurface X when X cap H is smooth.  For
a plane curve of degree d this means the restriction to the line is a binary
form with d distinct roots, which is decided by gcd tests (exact in every
characteristic).  Plane sections of surfaces in P^3 are decided either by the
rank of the restricted Gram matrix (quadrics, odd p) or by a bounded search
for singular points over extensions of degree at most (d-1)^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import kernels
from .gf import GF, kernel_basis, make_field, rank
from .polyform import (
    MultiForm,
    Poly,
    PolyOps,
    binary_coefficients,
    compose,
    disc_binary,
    factor_binary,
    partial,
    restrict_to_line,
    substitute_linear,
)
from .projgeom import (
    BudgetExceeded,
    embed_point,
    hyperplane_basis,
    line_table,
    normalize,
    point_chunks,
)

__all__ = [
    "Status",
    "TransVerdict",
    "is_transverse_line",
    "is_reduced_plane_curve",
    "has_repeated_rational_line",
    "singular_point_search",
    "gram_matrix",
    "restrict_to_plane",
    "is_transverse_hyperplane_P3",
    "DiscLocus",
    "disc_locus",
    "chart_restriction",
    "line_codes",
    "nontransverse_lines",
]


class Status(str, Enum):
    TRANSVERSE = "Transverse"
    NONTRANSVERSE = "NonTransverse"
    CONTAINED = "Contained"


@dataclass(frozen=True)
class TransVerdict:
    status: Status
    witness: tuple | None = None
    witness_field: GF | None = None
    certified: bool = True

    @property
    def transverse(self) -> bool:
        return self.status is Status.TRANSVERSE

    def to_json(self):
        F = self.witness_field
        return {
            "status": self.status.value,
            "witness": None if self.witness is None else [F.coeffs(x) for x in self.witness],
            "witness_field": None if F is None else {"p": F.p, "k": F.k},
            "certified": self.certified,
        }


def _as_field(f: MultiForm, F: GF | None) -> MultiForm:
    return f if F is None or F == f.field else f.base_change(F)


# -- lines in P^2 -------------------------------------------------------------------


def is_transverse_line(C: MultiForm, L, F: GF | None = None) -> TransVerdict:
    """Verdict for the line L (coordinates in F, default C's field)."""
    C = _as_field(C, F)
    if C.is_zero():
        raise ValueError("the zero form does not define a curve")
    B = restrict_to_line(C, L)
    if B.is_zero():
        return TransVerdict(Status.CONTAINED)
    if B.degree == 1 or all(r.multiplicity == 1 for r in factor_binary(B)):
        return TransVerdict(Status.TRANSVERSE)
    root = next(r for r in factor_binary(B) if r.multiplicity > 1)
    K = root.field
    P, Q = (embed_point(X, C.field, K) for X in hyperplane_basis(C.field, L))
    u, v = root.param
    pt = tuple(K.add(K.mul(u, a), K.mul(v, b)) for a, b in zip(P, Q))
    return TransVerdict(Status.NONTRANSVERSE, normalize(K, pt), K)


def line_codes(C: MultiForm, F: GF | None = None) -> np.ndarray:
    """Kernel classification (ZERO/SQUAREFREE/REPEATED) of C on every F-line."""
    C = _as_field(C, F)
    _, P, Q = line_table(C.field)
    return kernels.classify_binary(C.field, kernels.restrict_form(C, P, Q))


def nontransverse_lines(C: MultiForm, F: GF | None = None) -> list[tuple]:
    """All F-lines whose section is not transverse, in canonical order."""
    C = _as_field(C, F)
    lines, _, _ = line_table(C.field)
    bad = np.flatnonzero(line_codes(C) != kernels.SQUAREFREE)
    return [tuple(lines[i].tolist()) for i in bad]


def _extension(F: GF, m: int) -> GF:
    return F if m == 1 else make_field(F.p, F.k * m)


def is_reduced_plane_curve(C: MultiForm, F: GF | None = None,
                           budget: int | None = None) -> bool:
    """Decide reducedness by looking for a squarefree line section.

    Over F_{q^m} with q^m >= 2d(d-1) a reduced curve has a transverse line,
    while every section of a non-reduced curve has a repeated root.
    """
    C = _as_field(C, F)
    if C.is_zero():
        return False
    d, q = C.degree, C.field.q
    if d == 1:
        return True
    m = 1
    while q**m < 2 * d * (d - 1):
        m += 1
    K = _extension(C.field, m)
    if budget is not None and K.q**2 + K.q + 1 > budget:
        raise BudgetExceeded(f"line sweep over F_{K.q} exceeds the budget")
    return bool(np.any(line_codes(C.base_change(K)) == kernels.SQUAREFREE))


def has_repeated_rational_line(C: MultiForm, F: GF | None = None) -> bool:
    """True if some F-line l has l^2 | C (C and all partials vanish on l).

    For d <= 3 a repeated factor must be such a line, so this decides
    reducedness without relying on transverse lines.
    """
    C = _as_field(C, F)
    if C.is_zero():
        return True
    if C.degree < 2:
        return False
    _, P, Q = line_table(C.field)
    zero = ~np.any(kernels.restrict_form(C, P, Q), axis=1)
    for i in range(C.nvars):
        D = partial(C, i)
        if not D.is_zero():
            zero &= ~np.any(kernels.restrict_form(D, P, Q), axis=1)
    return bool(np.any(zero))


def singular_point_search(C: MultiForm, F: GF | None = None, max_deg: int = 1,
                          budget: int | None = None):
    """First point of P^2(F_{q^m}), m = 1..max_deg, where C and its partials vanish.

    Returns (point, field) or None.
    """
    if max_deg < 1:
        raise ValueError("max_deg must be at least 1")
    C = _as_field(C, F)
    for m in range(1, max_deg + 1):
        K = _extension(C.field, m)
        hit = _singular_scan(C.base_change(K), budget)
        if hit is not None:
            return hit, K
    return None


def _singular_scan(C: MultiForm, budget):
    K = C.field
    forms = [C] + [D for D in (partial(C, i) for i in range(C.nvars)) if not D.is_zero()]
    for chunk in point_chunks(C.nvars - 1, K, budget=budget):
        alive = np.ones(len(chunk), dtype=bool)
        for f in forms:
            idx = np.flatnonzero(alive)
            if not len(idx):
                break
            alive[idx] = kernels.eval_form(f, chunk[idx]) == 0
        hits = np.flatnonzero(alive)
        if len(hits):
            return tuple(chunk[hits[0]].tolist())
    return None


# -- planes in P^3 --------------------------------------------------------------------


def gram_matrix(f: MultiForm):
    """Symmetric matrix M with f(x) = x^T M x (quadrics, odd p)."""
    F = f.field
    if f.degree != 2:
        raise ValueError("Gram matrices are defined for quadrics")
    if F.p == 2:
        raise ValueError("polarization needs odd characteristic")
    n = f.nvars
    half = F.inv(2)
    M = [[0] * n for _ in range(n)]
    for e, c in f.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            M[i][i] = c
        else:
            M[i][j] = M[j][i] = F.mul(c, half)
    return M


def restrict_to_plane(X: MultiForm, H, F: GF | None = None):
    """(plane-curve form, basis) for X restricted to the plane H of P^3."""
    X = _as_field(X, F)
    if X.nvars != 4:
        raise ValueError("expected a surface in P^3")
    basis = hyperplane_basis(X.field, H)
    A = [[basis[j][i] for j in range(3)] for i in range(4)]
    return substitute_linear(X, A), basis


def is_transverse_hyperplane_P3(X: MultiForm, H, F: GF | None = None,
                                method: str = "auto",
                                budget: int | None = None) -> TransVerdict:
    """Is the plane section X cap H smooth?

    method "matrix" (quadrics, odd p) uses the rank of the restricted Gram
    matrix; "search" looks for singular points over F_{q^m}, m <= (d-1)^2.
    A search cut short by the budget yields an uncertified Transverse.
    """
    X = _as_field(X, F)
    K = X.field
    f, basis = restrict_to_plane(X, H)
    if f.is_zero():
        return TransVerdict(Status.CONTAINED)
    if method == "auto":
        method = "matrix" if X.degree == 2 and K.p != 2 else "search"
    if method == "matrix":
        if K.p == 2:
            raise ValueError("the matrix path needs odd characteristic")
        M = gram_matrix(f)
        if rank(K, M) == 3:
            return TransVerdict(Status.TRANSVERSE)
        w = kernel_basis(K, M)[0]
        return TransVerdict(Status.NONTRANSVERSE, _lift(K, basis, w, K), K)
    if method != "search":
        raise ValueError(f"unknown method {method!r}")
    bound = max(1, (X.degree - 1) ** 2)
    certified = True
    for m in range(1, bound + 1):
        L = _extension(K, m)
        try:
            hit = _singular_scan(f.base_change(L), budget)
        except BudgetExceeded:
            certified = False
            break
        if hit is not None:
            return TransVerdict(Status.NONTRANSVERSE, _lift(K, basis, hit, L), L)
    return TransVerdict(Status.TRANSVERSE, certified=certified)


def _lift(K, basis, w, L):
    """Point of P^3 with plane coordinates w (in L) relative to basis (in K)."""
    B = [embed_point(b, K, L) for b in basis]
    pt = [L.sum(L.mul(w[j], B[j][i]) for j in range(3)) for i in range(4)]
    return normalize(L, pt)


# -- symbolic locus ------------------------------------------------------------------


class DiscLocus(NamedTuple):
    form: MultiForm   # in the dual coordinates (a, b, c)
    degenerate: bool  # the locus vanished identically
    advisory: bool    # p | d: vanishing is not authoritative


def chart_restriction(f: MultiForm, aux: list[Poly]) -> list[Poly]:
    """Binary coefficients of f(c x, c y, -(a x + b y)).

    `aux` = [a, b, c] as Polys in auxiliary variables; the result has one
    coefficient per x^(d-i) y^i, each a Poly in those variables.  This is
    c^d f(x, y, z) on the line a x + b y + c z = 0.
    """
    F = f.field
    naux = aux[0].nvars
    n = naux + 2

    def lift(P):
        return Poly(F, n, {(0, 0) + e: c for e, c in P.terms.items()})

    x = Poly.var(F, n, 0)
    y = Poly.var(F, n, 1)
    a, b, c = (lift(P) for P in aux)
    composed = compose(f, [c * x, c * y, -(a * x + b * y)])
    return binary_coefficients(composed, f.degree)


def disc_locus(C: MultiForm) -> DiscLocus:
    """Form of degree 2d(d-1) in (a, b, c) vanishing on the tangent lines.

    On lines with c != 0 and p not dividing d it vanishes exactly at the
    lines that are not transverse (including contained lines).  The factor
    c^(d(d-1)) coming from the chart is kept.
    """
    if C.nvars != 3:
        raise ValueError("expected a plane curve")
    F, d = C.field, C.degree
    if d < 2:
        raise ValueError("degree must be at least 2")
    ring = PolyOps(F, 3)
    aux = [Poly.var(F, 3, i) for i in range(3)]
    D = disc_binary(chart_restriction(C, aux), ring)
    form = MultiForm(F, 3, 2 * d * (d - 1), D.terms)
    return DiscLocus(form, form.is_zero(), d % F.p == 0)

