"""Points, hyperplanes and counting in P^n over finite fields.

A point is a tuple of field elements normalised so that the first nonzero
coordinate is 1.  Hyperplanes use the same representation (coefficients of
a linear form).  Canonical order is lexicographic on the normalised tuple,
using the integer order of field elements; every "first witness" in the
package refers to this order.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels
from .gf import GF, det, embedding_table, rank

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "num_points",
    "normalize",
    "enumerate_points",
    "point_array",
    "point_chunks",
    "incident",
    "frobenius_orbit",
    "collinear",
    "count_points",
    "hyperplane_basis",
    "line_table",
    "points_on_hyperplane",
    "lines_through",
    "embed_point",
]

DEFAULT_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured point budget."""


def num_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def _check_budget(count, budget):
    budget = DEFAULT_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceeded(f"{count} points exceed the budget of {budget}")


def normalize(F: GF, v) -> tuple:
    v = tuple(v)
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return v
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def enumerate_points(n: int, F: GF, budget: int | None = None):
    """All points of P^n(F) in canonical order (a generator)."""
    _check_budget(num_points(n, F.q), budget)
    for chunk in point_chunks(n, F):
        yield from map(tuple, chunk.tolist())


def point_chunks(n: int, F: GF, chunk: int = 1 << 16, budget: int | None = None):
    """Canonical enumeration of P^n(F) as int64 arrays of at most `chunk` rows."""
    _check_budget(num_points(n, F.q), budget)
    q = F.q
    # block with leading 1 at position n - r has r free trailing coordinates
    for r in range(n + 1):
        lead = n - r
        size = q**r
        for start in range(0, size, chunk):
            idx = np.arange(start, min(size, start + chunk), dtype=np.int64)
            arr = np.zeros((len(idx), n + 1), dtype=np.int64)
            arr[:, lead] = 1
            rem = idx
            for j in range(n, lead, -1):
                arr[:, j] = rem % q
                rem = rem // q
            yield arr


@lru_cache(maxsize=64)
def _point_array(n, F):
    arr = np.concatenate(list(point_chunks(n, F)))
    arr.setflags(write=False)
    return arr


def point_array(n: int, F: GF, budget: int | None = None) -> np.ndarray:
    _check_budget(num_points(n, F.q), budget)
    return _point_array(n, F)


def incident(F: GF, P, H) -> bool:
    if len(P) != len(H):
        raise ValueError("point and hyperplane live in different dimensions")
    return F.sum(F.mul(a, b) for a, b in zip(P, H)) == 0


def embed_point(P, src: GF, dst: GF) -> tuple:
    table = embedding_table(src, dst)
    return tuple(table[x] for x in P)


def frobenius_orbit(P, field: GF, base: GF) -> list[tuple]:
    """Orbit of P (coordinates in `field`) under the |base|-power Frobenius."""
    if field.p != base.p or field.k % base.k:
        raise ValueError("the point field must be an extension of the base field")
    orbit = [normalize(field, P)]
    while True:
        nxt = normalize(field, [field.pow(x, base.q) for x in orbit[-1]])
        if nxt == orbit[0]:
            return orbit
        orbit.append(nxt)


def collinear(F: GF, P1, P2, P3) -> bool:
    return det(F, [list(P1), list(P2), list(P3)]) == 0


def count_points(f, F: GF | None = None, budget: int | None = None) -> int:
    """#{P in P^n(F) : f(P) = 0}; F defaults to the field of f."""
    if F is not None and F != f.field:
        f = f.base_change(F)
    F = f.field
    n = f.nvars - 1
    total = 0
    for chunk in point_chunks(n, F, budget=budget):
        total += int(np.count_nonzero(kernels.eval_form(f, chunk) == 0))
    return total


def _line_pair(F: GF, L):
    """Two canonically least points of a line in P^2 (closed form)."""
    a, b, c = L
    if c == 0:
        if b == 0:
            return (0, 0, 1), (0, 1, 0)
        return (0, 0, 1), (1, F.neg(F.div(a, b)), 0)
    ic = F.inv(c)
    return (0, 1, F.neg(F.mul(b, ic))), (1, 0, F.neg(F.mul(a, ic)))


@lru_cache(maxsize=4096)
def _hyperplane_basis(F, H):
    if len(H) == 3:
        return _line_pair(F, H)
    n = len(H) - 1
    chosen = []
    for P in enumerate_points(n, F):
        if incident(F, P, H) and rank(F, chosen + [list(P)]) == len(chosen) + 1:
            chosen.append(list(P))
            if len(chosen) == n:
                return tuple(tuple(c) for c in chosen)
    raise AssertionError("hyperplane has too few points")  # unreachable


def hyperplane_basis(F: GF, H) -> tuple:
    """The n canonically least points of H spanning it (H in P^n)."""
    return _hyperplane_basis(F, normalize(F, H))


def points_on_hyperplane(F: GF, H) -> list[tuple]:
    n = len(H) - 1
    return [P for P in enumerate_points(n, F) if incident(F, P, H)]


def lines_through(F: GF, P) -> list[tuple]:
    """F-lines of P^2 through the point P (canonical order)."""
    return [L for L in enumerate_points(2, F) if incident(F, P, L)]


@lru_cache(maxsize=32)
def line_table(F: GF):
    """(lines, P, Q): every F-line of P^2 with its canonical spanning pair."""
    lines = point_array(2, F)
    P = np.zeros_like(lines)
    Q = np.zeros_like(lines)
    for i, L in enumerate(lines.tolist()):
        P[i], Q[i] = _line_pair(F, L)
    for a in (lines, P, Q):
        a.setflags(write=False)
    return lines, P, Q
