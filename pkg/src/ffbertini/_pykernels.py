"""Pure-Python kernels; same signatures and results as the compiled ones.

Field elements are ints; arithmetic goes through the exp/log/zech tables
of the field (see gf.GF.tables).
"""
import numpy as np


class _Arith:
    __slots__ = ("q1", "exp", "log", "zech", "minus_one")

    def __init__(self, p, q, exp, log, zech):
        self.q1 = q - 1
        self.exp = exp.tolist()
        self.log = log.tolist()
        self.zech = zech.tolist()
        self.minus_one = p - 1

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        n = self.log[b] - la
        if n < 0:
            n += self.q1
        z = self.zech[n]
        if z < 0:
            return 0
        return self.exp[la + z]

    def sub(self, a, b):
        return self.add(a, self.mul(b, self.minus_one))

    def inv(self, a):
        return self.exp[(self.q1 - self.log[a]) % self.q1]

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % self.q1]


def eval_form(exps, coeffs, pts, p, q, exp, log, zech):
    A = _Arith(p, q, exp, log, zech)
    terms = list(zip(exps.tolist(), coeffs.tolist()))
    out = np.zeros(len(pts), dtype=np.int64)
    for n, pt in enumerate(pts.tolist()):
        total = 0
        for e, c in terms:
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = A.mul(v, A.pow(x, k))
                    if v == 0:
                        break
            total = A.add(total, v)
        out[n] = total
    return out


def restrict_form(exps, coeffs, P, Q, d, p, q, exp, log, zech):
    A = _Arith(p, q, exp, log, zech)
    terms = list(zip(exps.tolist(), coeffs.tolist()))
    out = np.zeros((len(P), d + 1), dtype=np.int64)
    for n, (pp, qq) in enumerate(zip(P.tolist(), Q.tolist())):
        acc = [0] * (d + 1)
        for e, c in terms:
            poly = [c]
            for i, k in enumerate(e):
                a, b = pp[i], qq[i]
                for _ in range(k):
                    new = [0] * (len(poly) + 1)
                    for j, x in enumerate(poly):
                        if x:
                            new[j] = A.add(new[j], A.mul(a, x))
                            new[j + 1] = A.add(new[j + 1], A.mul(b, x))
                    poly = new
            for j, x in enumerate(poly):
                acc[j] = A.add(acc[j], x)
        out[n] = acc
    return out


def _classify(A, p, c):
    """0: zero form, 1: squarefree of full degree, 2: repeated root."""
    d = len(c) - 1
    e = 0
    while e <= d and c[e] == 0:
        e += 1
    if e > d:
        return 0
    if e >= 2:
        return 2
    # C(x) = sum c_i x^(d-i), lowest degree first, degree d - e
    f = [c[d - j] for j in range(d - e + 1)]
    n = len(f) - 1
    if n <= 1:
        return 1
    g = [A.mul(f[j], j % p) for j in range(1, n + 1)]
    while g and g[-1] == 0:
        g.pop()
    if not g:
        return 2
    a, b = f, g
    while b:
        # a mod b
        r = list(a)
        lb = len(b) - 1
        inv = A.inv(b[-1])
        while len(r) - 1 >= lb:
            co = A.mul(r[-1], inv)
            s = len(r) - 1 - lb
            for i, bi in enumerate(b):
                if bi:
                    r[s + i] = A.sub(r[s + i], A.mul(co, bi))
            while r and r[-1] == 0:
                r.pop()
            if not r:
                break
        a, b = b, r
    return 1 if len(a) == 1 else 2


def classify_binary(B, p, q, exp, log, zech):
    A = _Arith(p, q, exp, log, zech)
    return np.array([_classify(A, p, row) for row in B.tolist()], dtype=np.uint8)


def pencil_line_status(BF, BG, S, T, p, q, exp, log, zech):
    A = _Arith(p, q, exp, log, zech)
    params = list(zip(S.tolist(), T.tolist()))
    out = np.zeros(len(BF), dtype=np.int64)
    for n, (bf, bg) in enumerate(zip(BF.tolist(), BG.tolist())):
        bad = 0
        for s, t in params:
            row = [A.add(A.mul(s, x), A.mul(t, y)) for x, y in zip(bf, bg)]
            if _classify(A, p, row) != 1:
                bad += 1
        out[n] = bad
    return out
