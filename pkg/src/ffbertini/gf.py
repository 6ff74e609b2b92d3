"""Finite fields F_{p^k} with table-driven arithmetic.

Elements are plain ints.  The element with coefficient vector
(c_0, ..., c_{k-1}) in the basis 1, t, ..., t^{k-1} is the integer
sum(c_i * p**i), so the prime subfield is {0, ..., p-1} with its usual
integer meaning and integer order is the canonical element order used
for every deterministic tie-break in the package.

Multiplication goes through exp/log tables of a primitive element and
addition in odd-characteristic extensions through a Zech table.  The same
tables are handed to the compiled kernels.
"""
from __future__ import annotations

import math
from functools import lru_cache
from threading import Lock

import numpy as np

__all__ = [
    "GF",
    "FieldMismatch",
    "make_field",
    "field_from_modulus",
    "is_prime",
    "prime_power",
    "arith",
    "frobenius",
    "embed",
    "embedding_table",
    "rref",
    "rank",
    "kernel_basis",
    "det",
    "det_and_adjugate",
    "matmul",
    "transpose",
]


class FieldMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**k; raise ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# -- dense polynomials over F_p as coefficient lists (low degree first) --------
# Used only to choose and validate moduli; general univariate algebra lives in
# polyform.


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    while len(_ptrim(f)) - 1 >= dg:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
    return f


def _pmulmod(a, b, g, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, g, p)


def _ppowmod(base, e, g, p):
    result, base = [1], _pmod(base, g, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, g, p)
        base = _pmulmod(base, base, g, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _prime_irreducible(f, p) -> bool:
    """gcd(f, x^{p^i} - x) = 1 for i <= k/2 and f | x^{p^k} - x."""
    k = len(f) - 1
    if k == 1:
        return True
    xp = [0, 1]
    for i in range(1, k + 1):
        xp = _ppowmod(xp, p, f, p)
        if i <= k // 2:
            h = list(xp) + [0] * max(0, 2 - len(xp))
            h[1] = (h[1] - 1) % p
            if len(_pgcd(f, h, p)) != 1:
                return False
    return _ptrim(list(xp)) == [0, 1]


class GF:
    """The field F_p[t]/(modulus) with q = p**k elements."""

    def __init__(self, p: int, k: int, modulus):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if k > 1 and not _prime_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _undigits(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + c
        return a

    def _mul_slow(self, a, b):
        if self.k == 1:
            return a * b % self.p
        m = _pmulmod(self._digits(a), self._digits(b), list(self.modulus), self.p)
        return self._undigits(m + [0] * (self.k - len(m)))

    def _mulmat(self, a):
        """k x k matrix of multiplication by a, acting on digit columns."""
        cols = []
        for j in range(self.k):
            e = self._mul_slow(a, self.p**j)
            cols.append(self._digits(e))
        return np.array(cols, dtype=np.int64).T

    def _primitive(self):
        q1 = self.q - 1
        factors = [f for f in range(2, q1 + 1) if q1 % f == 0 and is_prime(f)]
        for g in range(2 if self.q > 2 else 1, self.q):
            if all(self._pow_slow(g, q1 // f) != 1 for f in factors):
                return g
        raise AssertionError("no primitive element")  # unreachable for a field

    def _pow_slow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q, p, k = self.q, self.p, self.k
        q1 = q - 1
        g = self._primitive()
        self.generator = g
        exp = np.zeros(2 * q1, dtype=np.int64)
        block = max(1, math.isqrt(q1))
        small = [1]
        for _ in range(block - 1):
            small.append(self._mul_slow(small[-1], g))
        weights = p ** np.arange(k, dtype=np.int64)
        sd = np.array([self._digits(s) for s in small], dtype=np.int64)
        step = self._pow_slow(g, block)
        cur = 1
        for start in range(0, q1, block):
            if k == 1:
                vals = (sd[:, 0] * cur) % p
            else:
                vals = ((sd @ self._mulmat(cur).T) % p) @ weights
            n = min(block, q1 - start)
            exp[start:start + n] = vals[:n]
            cur = self._mul_slow(cur, step)
        exp[q1:] = exp[:q1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[:q1]] = np.arange(q1, dtype=np.int64)
        # zech[n] = log(1 + g^n), or -1 when 1 + g^n = 0
        e = exp[:q1]
        d0 = e % p
        one_plus = e - d0 + (d0 + 1) % p
        zech = np.where(one_plus == 0, -1, log[one_plus])
        allq = np.arange(q, dtype=np.int64)
        neg = np.zeros(q, dtype=np.int64)
        rem = allq.copy()
        for i in range(k):
            r = rem % p
            neg += ((p - r) % p) * p**i
            rem //= p
        self._np = (exp, log, zech.astype(np.int64), neg)
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._zech = zech.tolist()
        self._neg = neg.tolist()
        self._q1 = q1

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (_rebuild, (self.p, self.k, self.modulus))

    def to_json(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- elements ------------------------------------------------------------

    def elem(self, coeffs) -> int:
        """Element from a coefficient vector (length k, entries mod p)."""
        coeffs = list(coeffs)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return self._undigits([int(c) % self.p for c in coeffs])

    def coeffs(self, a: int) -> list[int]:
        return self._digits(a)

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def check(self, a):
        if not (0 <= a < self.q):
            raise FieldMismatch(f"{a} is not an element of {self!r}")
        return a

    def elements(self):
        return range(self.q)

    @property
    def gen(self) -> int:
        """The class of t (0 for prime fields, whose modulus is t)."""
        return self.p if self.k > 1 else 0

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        n = self._log[b] - la
        if n < 0:
            n += self._q1
        z = self._zech[n]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(self._q1 - self._log[a]) % self._q1]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def sum(self, xs):
        s = 0
        for x in xs:
            s = self.add(s, x)
        return s

    def is_square(self, a):
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def tables(self):
        """(exp, log, zech) as int64 arrays, for the compiled kernels."""
        return self._np[0], self._np[1], self._np[2]

    def arith(self, op: str, a, b=None, n=None):
        return arith(a, b, op, self, n=n)


_field_cache: dict = {}
_cache_lock = Lock()


def _rebuild(p, k, modulus):
    key = (p, k, tuple(modulus))
    with _cache_lock:
        f = _field_cache.get(key)
    if f is None:
        f = GF(p, k, modulus)
        with _cache_lock:
            f = _field_cache.setdefault(key, f)
    return f


def field_from_modulus(p: int, k: int, modulus) -> GF:
    """The (cached) field with an explicitly given modulus."""
    return _rebuild(p, k, tuple(int(c) % p for c in modulus))


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, seed: int = 0) -> GF:
    """Deterministic F_{p^k}.

    Monic degree-k polynomials are scanned in canonical order (by the
    integer encoding of their lower coefficients) starting at seed mod p^k;
    the first irreducible one becomes the modulus.  For k = 1 the modulus is
    t and the field is F_p.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return _rebuild(p, 1, (0, 1))
    n = p**k
    offset = seed % n
    for i in range(n):
        idx = (offset + i) % n
        low = []
        for _ in range(k):
            idx, r = divmod(idx, p)
            low.append(r)
        f = low + [1]
        if f[0] != 0 and _prime_irreducible(f, p):
            return _rebuild(p, k, tuple(f))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def arith(a, b, op: str, F: GF, n: int | None = None):
    """Field operation by name: add, sub, mul, div or pow (exponent n)."""
    F.check(a)
    if op == "pow":
        if n is None:
            raise ValueError("pow needs an exponent")
        return F.pow(a, n)
    F.check(b)
    if op == "add":
        return F.add(a, b)
    if op == "sub":
        return F.sub(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "div":
        return F.div(a, b)
    raise ValueError(f"unknown operation {op!r}")


def frobenius(F: GF, a: int, times: int = 1) -> int:
    """a -> a^p, iterated `times` times."""
    for _ in range(times):
        a = F.pow(a, F.p)
    return a


_embed_cache: dict = {}


def _least_root(src: GF, dst: GF) -> int:
    mod = src.modulus
    for x in dst.elements():
        acc = 0
        for c in reversed(mod):
            acc = dst.add(dst.mul(acc, x), c)
        if acc == 0:
            return x
    raise AssertionError("modulus has no root in the target field")


def embedding_table(src: GF, dst: GF) -> list[int]:
    """Images of every element of src under the fixed embedding src -> dst."""
    key = (src, dst)
    table = _embed_cache.get(key)
    if table is not None:
        return table
    if src.p != dst.p:
        raise FieldMismatch(f"characteristic mismatch: {src.p} vs {dst.p}")
    if dst.k % src.k:
        raise FieldMismatch(f"F_{src.q} does not embed in F_{dst.q}")
    if src == dst:
        table = list(range(src.q))
    elif src.k == 1:
        table = list(range(src.p))
    else:
        r = _least_root(src, dst)
        powers = [1]
        for _ in range(src.k - 1):
            powers.append(dst.mul(powers[-1], r))
        table = []
        for a in src.elements():
            acc = 0
            for c, pw in zip(src.coeffs(a), powers):
                if c:
                    acc = dst.add(acc, dst.mul(c, pw))
            table.append(acc)
    # write-once: a concurrent fill computes the same table
    return _embed_cache.setdefault(key, table)


def embed(a: int, src: GF, dst: GF) -> int:
    return embedding_table(src, dst)[src.check(a)]


# -- small dense linear algebra ---------------------------------------------------


def transpose(M):
    return [list(r) for r in zip(*M)]


def matmul(F: GF, A, B):
    Bt = transpose(B)
    return [[F.sum(F.mul(a, b) for a, b in zip(row, col)) for col in Bt] for row in A]


def rref(F: GF, M):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    R = [list(r) for r in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F: GF, M) -> int:
    if not M:
        return 0
    return len(rref(F, M)[1])


def kernel_basis(F: GF, M, ncols: int | None = None) -> list[list[int]]:
    """Canonical basis of the right kernel.

    One vector per free column (in increasing order), with a 1 in that
    column and zeros in the other free columns.
    """
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(F, M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def det(F: GF, M) -> int:
    R = [list(r) for r in M]
    n = len(R)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            d = F.neg(d)
        d = F.mul(d, R[c][c])
        inv = F.inv(R[c][c])
        for i in range(c + 1, n):
            if R[i][c]:
                f = F.mul(R[i][c], inv)
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[c])]
    return d


def det_and_adjugate(F: GF, M):
    """Determinant and adjugate of a 3 x 3 matrix, M adj(M) = det(M) I."""
    if len(M) != 3 or any(len(r) != 3 for r in M):
        raise ValueError("det_and_adjugate expects a 3 x 3 matrix")

    def minor(i, j):
        r = [x for x in range(3) if x != i]
        c = [y for y in range(3) if y != j]
        return F.sub(F.mul(M[r[0]][c[0]], M[r[1]][c[1]]),
                     F.mul(M[r[0]][c[1]], M[r[1]][c[0]]))

    cof = [[minor(i, j) if (i + j) % 2 == 0 else F.neg(minor(i, j))
            for j in range(3)] for i in range(3)]
    d = F.sum(F.mul(M[0][j], cof[0][j]) for j in range(3))
    return d, transpose(cof)
