"""Sparse forms, binary forms and univariate polynomials over finite fields.

Conventions
-----------
* ``Poly`` is a sparse polynomial in ``nvars`` variables; ``MultiForm`` is the
  homogeneous subclass used for curves, surfaces and pencils.  ``Poly`` also
  serves as the symbolic coefficient domain ("PolyCoeff") for loci in
  auxiliary variables such as (a, b, c) or (s, t).
* A binary form of degree d is the coefficient sequence c_0..c_d of
  sum c_i x^(d-i) y^i.  The same descending convention is used for every
  coefficient sequence passed to ``resultant``.
* Univariate polynomials (``UniPoly``) are plain lists, lowest degree first.

Resultants are Sylvester determinants with the f-rows on top, so
Res(x - a, x - b) = a - b.  ``disc_binary`` is Res(B_x, B_y); for a quadratic
a x^2 + b xy + c y^2 this is 4ac - b^2, i.e. minus the classical
discriminant.  Only vanishing matters downstream.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import lru_cache

from .gf import GF, FieldMismatch, embedding_table, make_field
from . import gf as _gf

__all__ = [
    "Poly",
    "MultiForm",
    "BinaryForm",
    "BinaryRoot",
    "FieldOps",
    "PolyOps",
    "evaluate",
    "partial",
    "substitute_linear",
    "restrict_to_line",
    "gcd_uni",
    "squarefree_part",
    "is_squarefree_binary",
    "distinct_root_count",
    "resultant",
    "disc_binary",
    "disc_classical",
    "is_irreducible",
    "roots_in_field",
    "factor_binary",
    "monomials",
    "compose",
    "binary_coefficients",
    "binary_from_poly",
]


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree `degree`, descending lex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        out.extend((e,) + rest for rest in monomials(nvars - 1, degree - e))
    return out


class Poly:
    """Sparse polynomial: {exponent tuple: nonzero field element}."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: GF, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                clean[e] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def constant(cls, field, nvars, c):
        return Poly(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return Poly(field, nvars, {tuple(e): 1})

    def _like(self, terms):
        return Poly(self.field, self.nvars, terms)

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.field != self.field or other.nvars != self.nvars:
            raise FieldMismatch("polynomials live in different rings")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r} over F_{self.field.q})"

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    # arithmetic
    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return self._like(out)

    def __neg__(self):
        F = self.field
        return self._like({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return self._like(out)

    def scale(self, c):
        F = self.field
        return self._like({e: F.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        result = Poly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # evaluation
    def evaluate(self, point, field: GF | None = None):
        """Value at a coordinate vector whose entries lie in `field`."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        K = field or self.field
        table = embedding_table(self.field, K)
        total = 0
        for e, c in self.terms.items():
            v = table[c]
            for x, k in zip(point, e):
                if k:
                    v = K.mul(v, K.pow(x, k))
                    if not v:
                        break
            total = K.add(total, v)
        return total

    def specialize(self, assignment: dict):
        """Substitute field values for some variables; they are dropped."""
        F = self.field
        keep = [i for i in range(self.nvars) if i not in assignment]
        out: dict = {}
        for e, c in self.terms.items():
            v = c
            for i, x in assignment.items():
                if e[i]:
                    v = F.mul(v, F.pow(x, e[i]))
            if v:
                ne = tuple(e[i] for i in keep)
                out[ne] = F.add(out.get(ne, 0), v)
        return Poly(F, len(keep), out)

    def base_change(self, dst: GF):
        table = embedding_table(self.field, dst)
        return Poly(dst, self.nvars, {e: table[c] for e, c in self.terms.items()})

    def divide_by_monomial(self, exps):
        """Exact division by a monomial; ValueError if it does not divide."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, exps))
            if min(ne) < 0:
                raise ValueError("monomial does not divide the polynomial")
            out[ne] = c
        return self._like(out)

    def to_text(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            cs = str(c) if self.field.k == 1 else str(self.field.coeffs(c))
            mons = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            parts.append("*".join([cs] + mons))
        return " + ".join(parts)


class MultiForm(Poly):
    """Homogeneous form of a fixed degree (the zero form keeps its degree)."""

    __slots__ = ("degree",)

    def __init__(self, field: GF, nvars: int, degree: int, terms=None):
        super().__init__(field, nvars, terms)
        for e in self.terms:
            if sum(e) != degree:
                raise ValueError(f"term with exponent {e} is not of degree {degree}")
        self.degree = degree

    @classmethod
    def from_poly(cls, poly: Poly, degree: int | None = None):
        if degree is None:
            degree = poly.total_degree()
            if degree < 0:
                raise ValueError("degree of the zero form must be given")
        return cls(poly.field, poly.nvars, degree, poly.terms)

    @classmethod
    def from_coefficients(cls, field, nvars, degree, coeffs):
        """Form from coefficients listed in `monomials` order."""
        mons = monomials(nvars, degree)
        if len(coeffs) != len(mons):
            raise ValueError(f"expected {len(mons)} coefficients")
        return cls(field, nvars, degree, dict(zip(mons, coeffs)))

    def coefficient_vector(self):
        return [self.terms.get(m, 0) for m in monomials(self.nvars, self.degree)]

    def _like(self, terms):
        return MultiForm(self.field, self.nvars, self.degree, terms)

    def __add__(self, other):
        if isinstance(other, MultiForm) and other.degree != self.degree:
            raise ValueError("cannot add forms of different degrees")
        return self._like(Poly.__add__(self, other).terms)

    def __mul__(self, other):
        prod = Poly.__mul__(Poly(self.field, self.nvars, self.terms), other)
        if prod is NotImplemented:
            return prod
        deg = self.degree + (other.degree if isinstance(other, MultiForm)
                             else max(other.total_degree(), 0))
        return MultiForm(self.field, self.nvars, deg, prod.terms)

    def __pow__(self, n):
        p = Poly.__pow__(Poly(self.field, self.nvars, self.terms), n)
        return MultiForm(self.field, self.nvars, self.degree * n, p.terms)

    def base_change(self, dst: GF):
        return MultiForm.from_poly(Poly.base_change(self, dst), self.degree)

    def partial(self, i: int):
        return partial(self, i)

    def is_proportional(self, other) -> bool:
        """True when self and other are nonzero multiples of each other."""
        if self.is_zero() or other.is_zero():
            return False
        if set(self.terms) != set(other.terms):
            return False
        F = self.field
        mons = list(self.terms)
        a, b = self.terms[mons[0]], other.terms[mons[0]]
        return all(F.mul(self.terms[m], b) == F.mul(other.terms[m], a) for m in mons)


def evaluate(f: Poly, point, field: GF | None = None):
    return f.evaluate(point, field)


def partial(f: MultiForm, i: int) -> MultiForm:
    """Formal derivative in variable i (exponents are reduced mod p)."""
    if not 0 <= i < f.nvars:
        raise ValueError(f"variable index {i} out of range")
    F = f.field
    out = {}
    for e, c in f.terms.items():
        if e[i] % F.p:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = F.mul(c, e[i] % F.p)
    return MultiForm(F, f.nvars, max(f.degree - 1, 0), out)


def compose(f: Poly, polys) -> Poly:
    """f(P_0, ..., P_n) for Polys P_i sharing one ring."""
    if len(polys) != f.nvars:
        raise ValueError(f"need {f.nvars} polynomials, got {len(polys)}")
    ring = polys[0]
    cache = [[Poly.constant(ring.field, ring.nvars, 1)] for _ in polys]

    def power(i, k):
        ps = cache[i]
        while len(ps) <= k:
            ps.append(ps[-1] * polys[i])
        return ps[k]

    out = Poly(ring.field, ring.nvars)
    for e, c in f.terms.items():
        term = Poly.constant(ring.field, ring.nvars, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
                if term.is_zero():
                    break
        out = out + term
    return out


def substitute_linear(f: MultiForm, A) -> MultiForm:
    """f(A y): A has f.nvars rows, one column per new variable."""
    if len(A) != f.nvars:
        raise ValueError(f"matrix has {len(A)} rows, form has {f.nvars} variables")
    F = f.field
    m = len(A[0])
    lins = [Poly(F, m, {tuple(int(j == k) for k in range(m)): F.check(a)
                        for j, a in enumerate(row)}) for row in A]
    return MultiForm(F, m, f.degree, compose(f, lins).terms)


@dataclass(frozen=True)
class BinaryForm:
    """c_0 x^d + c_1 x^(d-1) y + ... + c_d y^d over a field."""

    field: GF
    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not any(self.coeffs)

    def evaluate(self, x, y, field: GF | None = None):
        K = field or self.field
        table = embedding_table(self.field, K)
        d = self.degree
        return K.sum(K.mul(table[c], K.mul(K.pow(x, d - i), K.pow(y, i)))
                     for i, c in enumerate(self.coeffs) if c)

    @classmethod
    def from_form(cls, f: MultiForm):
        if f.nvars != 2:
            raise ValueError("binary forms have two variables")
        d = f.degree
        return cls(f.field, tuple(f.terms.get((d - i, i), 0) for i in range(d + 1)))

    def dehomogenize(self):
        """(e, C): B = y^e C(x, y) with y not dividing C; C(x, 1) low-first."""
        e = 0
        while e <= self.degree and self.coeffs[e] == 0:
            e += 1
        uni = utrim([self.coeffs[self.degree - j] for j in range(self.degree - e + 1)])
        return e, uni


def restrict_to_line(f: MultiForm, L) -> BinaryForm:
    """f(uP + vQ) for the two canonically least points P, Q of the line L."""
    from .projgeom import hyperplane_basis

    if f.nvars != 3:
        raise ValueError("restrict_to_line expects a plane curve")
    P, Q = hyperplane_basis(f.field, L)
    A = [[P[i], Q[i]] for i in range(3)]
    return BinaryForm.from_form(substitute_linear(f, A))


# -- coefficient domains -------------------------------------------------------------


class FieldOps:
    """Ring interface over field elements (ints)."""

    def __init__(self, F: GF):
        self.F = F
        self.zero, self.one = 0, 1
        self.add, self.sub, self.mul, self.neg = F.add, F.sub, F.mul, F.neg

    def from_int(self, n):
        return n % self.F.p

    def is_zero(self, x):
        return x == 0

    def det(self, M):
        return _gf.det(self.F, M)


class PolyOps:
    """Ring interface over Poly coefficients in `nvars` auxiliary variables."""

    def __init__(self, F: GF, nvars: int):
        self.F = F
        self.nvars = nvars
        self.zero = Poly(F, nvars)
        self.one = Poly.constant(F, nvars, 1)
        self.add, self.sub, self.mul = operator.add, operator.sub, operator.mul
        self.neg = operator.neg

    def from_int(self, n):
        return Poly.constant(self.F, self.nvars, n % self.F.p)

    def is_zero(self, x):
        return x.is_zero()

    def det(self, M):
        return _laplace_det(self, M)


def _laplace_det(ring, M):
    """Cofactor expansion memoised on the set of used columns."""
    n = len(M)
    memo = {}

    def rec(r, used):
        if r == n:
            return ring.one
        if used in memo:
            return memo[used]
        acc = ring.zero
        pos = 0
        for c in range(n):
            if used >> c & 1:
                continue
            entry = M[r][c]
            if not ring.is_zero(entry):
                sub = rec(r + 1, used | 1 << c)
                if not ring.is_zero(sub):
                    t = ring.mul(entry, sub)
                    acc = ring.sub(acc, t) if pos % 2 else ring.add(acc, t)
            pos += 1
        memo[used] = acc
        return acc

    return rec(0, 0)


def _domain(obj, ring):
    if ring is not None:
        return ring
    if isinstance(obj, BinaryForm):
        return FieldOps(obj.field)
    raise ValueError("a coefficient domain is required")


def _seq(obj):
    return list(obj.coeffs) if isinstance(obj, BinaryForm) else list(obj)


def sylvester_matrix(f, g, ring):
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ring.zero] * i + list(f) + [ring.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ring.zero] * i + list(g) + [ring.zero] * (size - n - 1 - i))
    return rows


def resultant(f, g, ring=None):
    """Sylvester resultant of two descending coefficient sequences.

    Formal degrees are len - 1; both must be at least 1.
    """
    ring = _domain(f, ring)
    f, g = _seq(f), _seq(g)
    if len(f) < 2 or len(g) < 2:
        raise ValueError("resultant needs formal degrees >= 1")
    return ring.det(sylvester_matrix(f, g, ring))


def disc_binary(B, ring=None):
    """Res(B_x, B_y) of a binary form of degree >= 2.

    When p does not divide d this vanishes exactly when B = 0 or B has a
    repeated root on P^1.  When p | d use the gcd tests instead.
    """
    ring = _domain(B, ring)
    c = _seq(B)
    d = len(c) - 1
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    bx = [_scale_int(ring, d - i, c[i]) for i in range(d)]
    by = [_scale_int(ring, i, c[i]) for i in range(1, d + 1)]
    return resultant(bx, by, ring)


class _IntPolyOps:
    """Integer polynomials as {exponent tuple: int}, for universal formulas."""

    def __init__(self, nvars):
        self.zero = {}
        self.one = {(0,) * nvars: 1}

    @staticmethod
    def is_zero(x):
        return not x

    @staticmethod
    def add(x, y):
        out = dict(x)
        for e, c in y.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def sub(self, x, y):
        return self.add(x, {e: -c for e, c in y.items()})

    @staticmethod
    def mul(x, y):
        out = {}
        for e1, c1 in x.items():
            for e2, c2 in y.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return out


@lru_cache(maxsize=None)
def _universal_disc(d: int):
    """Res(B_x, B_y) / d^(d-2) over Z[c_0..c_d], as ((exponents, coeff), ...)."""
    n = d + 1
    ring = _IntPolyOps(n)

    def c(i, k):
        e = [0] * n
        e[i] = 1
        return {tuple(e): k} if k else {}

    bx = [c(i, d - i) for i in range(d)]
    by = [c(i, i) for i in range(1, d + 1)]
    R = _laplace_det(ring, sylvester_matrix(bx, by, ring))
    scale = d ** (d - 2)
    if any(v % scale for v in R.values()):
        raise AssertionError("Res(B_x, B_y) is not divisible by d^(d-2)")
    return tuple(sorted((e, v // scale) for e, v in R.items()))


def disc_classical(B, ring=None):
    """Res(B_x, B_y) / d^(d-2) with the division done over the integers.

    This is the discriminant with integer coefficients; it vanishes exactly
    when B = 0 or B has a repeated root, in every characteristic.
    """
    ring = _domain(B, ring)
    c = _seq(B)
    d = len(c) - 1
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    total = ring.zero
    for e, k in _universal_disc(d):
        term = ring.from_int(k)
        if ring.is_zero(term):
            continue
        for x, m in zip(c, e):
            for _ in range(m):
                term = ring.mul(term, x)
        total = ring.add(total, term)
    return total


def _scale_int(ring, n, x):
    k = ring.from_int(n)
    if ring.is_zero(k):
        return ring.zero
    return ring.mul(k, x)


# -- univariate polynomials (lists, lowest degree first) ------------------------------


def utrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def uadd(F, f, g):
    n = max(len(f), len(g))
    return utrim([F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
                  for i in range(n)])


def usub(F, f, g):
    n = max(len(f), len(g))
    return utrim([F.sub(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
                  for i in range(n)])


def umul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return utrim(out)


def umonic(F, f):
    f = utrim(f)
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(inv, c) for c in f]


def udivmod(F, f, g):
    g = utrim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = utrim(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    inv = F.inv(g[-1])
    quo = [0] * (len(r) - dg)
    while len(r) - 1 >= dg and r:
        c = F.mul(r[-1], inv)
        shift = len(r) - 1 - dg
        quo[shift] = c
        for i, gi in enumerate(g):
            if gi:
                r[shift + i] = F.sub(r[shift + i], F.mul(c, gi))
        r = utrim(r)
    return utrim(quo), r


def umod(F, f, g):
    return udivmod(F, f, g)[1]


def gcd_uni(F, f, g):
    """Monic gcd by Euclid; gcd(0, 0) = 0."""
    a, b = utrim(f), utrim(g)
    while b:
        a, b = b, umod(F, a, b)
    return umonic(F, a)


def uderiv(F, f):
    return utrim([F.mul(c, i % F.p) for i, c in enumerate(f)][1:])


def upowmod(F, base, e, mod):
    result = [1]
    base = umod(F, base, mod)
    while e:
        if e & 1:
            result = umod(F, umul(F, result, base), mod)
        base = umod(F, umul(F, base, base), mod)
        e >>= 1
    return result


def ueval(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F, f):
    """h with h^p = f, for f whose derivative vanishes."""
    e = F.q // F.p  # coefficient root: a^(p^(k-1))
    return utrim([F.pow(f[j], e) for j in range(0, len(f), F.p)])


def squarefree_part(F, f):
    """Radical (monic) of a nonzero univariate polynomial over F."""
    f = umonic(F, f)
    if not f:
        raise ValueError("squarefree part of the zero polynomial")
    if len(f) == 1:
        return [1]
    d = uderiv(F, f)
    if not d:
        return squarefree_part(F, _pth_root(F, f))
    g = gcd_uni(F, f, d)
    if len(g) == 1:
        return f
    w = umonic(F, udivmod(F, f, g)[0])
    r = squarefree_part(F, g)
    common = gcd_uni(F, w, r)
    return umonic(F, udivmod(F, umul(F, w, r), common)[0])


def is_squarefree_uni(F, f):
    f = utrim(f)
    if len(f) <= 2:
        return bool(f)
    return len(gcd_uni(F, f, uderiv(F, f))) == 1


def is_squarefree_binary(B: BinaryForm) -> bool:
    if B.is_zero():
        return False
    e, C = B.dehomogenize()
    return e <= 1 and is_squarefree_uni(B.field, C)


def distinct_root_count(B: BinaryForm) -> int:
    """Number of distinct roots on P^1 over the algebraic closure."""
    if B.is_zero():
        raise ValueError("the zero form has no finite root set")
    e, C = B.dehomogenize()
    return int(e > 0) + len(squarefree_part(B.field, C)) - 1


def is_irreducible(F, f) -> bool:
    """gcd(f, x^(q^i) - x) = 1 for i <= n/2 and f | x^(q^n) - x."""
    f = umonic(F, f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if n == 1:
        return True
    xq = [0, 1]
    for i in range(1, n + 1):
        xq = upowmod(F, xq, F.q, f)
        if i <= n // 2 and len(gcd_uni(F, f, usub(F, xq, [0, 1]))) != 1:
            return False
    return utrim(xq) == [0, 1]


def distinct_degree(F, f):
    """[(e, g_e)]: g_e is the product of the degree-e irreducible factors of
    the squarefree monic f."""
    out = []
    rem = umonic(F, f)
    h = [0, 1]
    e = 0
    while len(rem) - 1 >= 2 * (e + 1):
        e += 1
        h = upowmod(F, h, F.q, rem)
        g = gcd_uni(F, rem, usub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((e, g))
            rem = umonic(F, udivmod(F, rem, g)[0])
            h = umod(F, h, rem) if len(rem) > 1 else []
    if len(rem) > 1:
        out.append((len(rem) - 1, rem))
    return out


def roots_in_field(F, f) -> list[int]:
    """Distinct roots of f in F, ascending."""
    f = umonic(F, f)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if F.q <= 64:
        return [x for x in F.elements() if ueval(F, f, x) == 0]
    g = gcd_uni(F, f, usub(F, upowmod(F, [0, 1], F.q, f), [0, 1]))
    return sorted(_split_linear(F, g))


def _split_linear(F, g):
    """Roots of a product of distinct linear factors (Cantor-Zassenhaus)."""
    n = len(g) - 1
    if n <= 0:
        return []
    if n == 1:
        return [F.neg(F.div(g[0], g[1]))]
    for a in range(1, F.q):
        if F.p == 2:
            y = [0, a]
            h, t = [], umod(F, y, g)
            for _ in range(F.k):
                h = uadd(F, h, t)
                t = umod(F, umul(F, t, t), g)
        else:
            h = usub(F, upowmod(F, [a, 1], (F.q - 1) // 2, g), [1])
        d = gcd_uni(F, g, h)
        if 0 < len(d) - 1 < n:
            rest = umonic(F, udivmod(F, g, d)[0])
            return _split_linear(F, d) + _split_linear(F, rest)
    return [x for x in F.elements() if ueval(F, g, x) == 0]


@dataclass(frozen=True)
class BinaryRoot:
    """One Galois orbit of roots of a binary form."""

    param: tuple          # [s:t] coordinates in `field`
    field: GF             # residue field of the root
    degree: int           # residue degree over the base field
    multiplicity: int


def _multiplicity(K, f, r):
    m = 0
    while len(f) > 1:
        # synthetic division by (x - r)
        acc, quo = 0, []
        for c in reversed(f):
            acc = K.add(K.mul(acc, r), c)
            quo.append(acc)
        if quo[-1] != 0:
            break
        f = list(reversed(quo[:-1]))
        m += 1
    return m


def factor_binary(B: BinaryForm) -> list[BinaryRoot]:
    """Roots of a nonzero binary form grouped into Frobenius orbits.

    Each orbit is represented by its canonically least member in the
    residue field F_{q^e}; sum(degree * multiplicity) equals deg B.
    """
    if B.is_zero():
        raise ValueError("the zero form has no finite root set")
    F = B.field
    out = []
    e, C = B.dehomogenize()
    if e:
        out.append(BinaryRoot((1, 0), F, 1, e))
    if len(C) <= 1:
        return out
    rad = squarefree_part(F, C)
    for deg, g in distinct_degree(F, rad):
        K = F if deg == 1 else make_field(F.p, F.k * deg)
        table = embedding_table(F, K)
        gK = [table[c] for c in g]
        CK = [table[c] for c in C]
        seen = set()
        for r in roots_in_field(K, gK):
            if r in seen:
                continue
            orbit = {r}
            x = K.pow(r, F.q)
            while x not in orbit:
                orbit.add(x)
                x = K.pow(x, F.q)
            seen |= orbit
            rep = min(orbit)
            out.append(BinaryRoot((rep, 1), K, deg, _multiplicity(K, CK, rep)))
    return out


def binary_from_poly(P: Poly, degree: int) -> BinaryForm:
    """BinaryForm from a homogeneous Poly in two variables."""
    if P.nvars != 2:
        raise ValueError("expected a polynomial in two variables")
    return BinaryForm(P.field, tuple(P.terms.get((degree - i, i), 0)
                                     for i in range(degree + 1)))


def binary_coefficients(P: Poly, degree: int) -> list[Poly]:
    """Split P in variables (x, y, aux...) into binary coefficients.

    Returns [c_0, ..., c_degree] with P = sum c_i x^(degree-i) y^i and each
    c_i a Poly in the auxiliary variables.
    """
    naux = P.nvars - 2
    out = [dict() for _ in range(degree + 1)]
    for e, c in P.terms.items():
        if e[0] + e[1] != degree:
            raise ValueError("polynomial is not homogeneous in the main variables")
        out[e[1]][e[2:]] = c
    return [Poly(P.field, naux, t) for t in out]
