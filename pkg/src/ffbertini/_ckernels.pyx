# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; mirror of _pykernels with identical results."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

cdef enum:
    MAXDEG = 128


cdef inline i64 fmul(i64 a, i64 b, const i64[::1] E, const i64[::1] L) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return E[L[a] + L[b]]


cdef inline i64 fadd(i64 a, i64 b, const i64[::1] E, const i64[::1] L,
                     const i64[::1] Z, i64 q1) noexcept nogil:
    cdef i64 la, n, z
    if a == 0:
        return b
    if b == 0:
        return a
    la = L[a]
    n = L[b] - la
    if n < 0:
        n += q1
    z = Z[n]
    if z < 0:
        return 0
    return E[la + z]


cdef inline i64 fpow(i64 a, i64 e, const i64[::1] E, const i64[::1] L, i64 q1) noexcept nogil:
    if e == 0:
        return 1
    if a == 0:
        return 0
    return E[(L[a] * e) % q1]


cdef inline i64 finv(i64 a, const i64[::1] E, const i64[::1] L, i64 q1) noexcept nogil:
    return E[(q1 - L[a]) % q1]


def eval_form(const i64[:, ::1] exps, const i64[::1] coeffs, const i64[:, ::1] pts,
              i64 p, i64 q, const i64[::1] E, const i64[::1] L, const i64[::1] Z):
    cdef Py_ssize_t N = pts.shape[0], T = exps.shape[0], n = exps.shape[1]
    cdef Py_ssize_t a, t, i
    cdef i64 total, v, q1 = q - 1
    out = np.zeros(N, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for a in range(N):
            total = 0
            for t in range(T):
                v = coeffs[t]
                for i in range(n):
                    if exps[t, i]:
                        v = fmul(v, fpow(pts[a, i], exps[t, i], E, L, q1), E, L)
                        if v == 0:
                            break
                total = fadd(total, v, E, L, Z, q1)
            o[a] = total
    return out


def restrict_form(const i64[:, ::1] exps, const i64[::1] coeffs,
                  const i64[:, ::1] P, const i64[:, ::1] Q, int d,
                  i64 p, i64 q, const i64[::1] E, const i64[::1] L, const i64[::1] Z):
    if d + 2 > MAXDEG:
        raise ValueError("degree too large for the compiled kernel")
    cdef Py_ssize_t N = P.shape[0], T = exps.shape[0], n = exps.shape[1]
    cdef Py_ssize_t a, t, i, j, r, ln
    cdef i64 q1 = q - 1, x, pa, qb
    cdef i64 poly[MAXDEG]
    cdef i64 nxt[MAXDEG]
    out = np.zeros((N, d + 1), dtype=np.int64)
    cdef i64[:, ::1] o = out
    with nogil:
        for a in range(N):
            for t in range(T):
                poly[0] = coeffs[t]
                ln = 1
                for i in range(n):
                    pa = P[a, i]
                    qb = Q[a, i]
                    for r in range(exps[t, i]):
                        for j in range(ln + 1):
                            nxt[j] = 0
                        for j in range(ln):
                            x = poly[j]
                            if x:
                                nxt[j] = fadd(nxt[j], fmul(pa, x, E, L), E, L, Z, q1)
                                nxt[j + 1] = fadd(nxt[j + 1], fmul(qb, x, E, L), E, L, Z, q1)
                        ln += 1
                        for j in range(ln):
                            poly[j] = nxt[j]
                for j in range(ln):
                    o[a, j] = fadd(o[a, j], poly[j], E, L, Z, q1)
    return out


cdef int _classify(i64* c, int d, i64 p, const i64[::1] E, const i64[::1] L,
                   const i64[::1] Z, i64 q1) noexcept nogil:
    cdef int e = 0, n, j, i, la, lb, s
    cdef i64 f[MAXDEG]
    cdef i64 g[MAXDEG]
    cdef i64 r[MAXDEG]
    cdef i64 inv, co, minus_one = p - 1
    cdef i64* A
    cdef i64* B
    cdef i64* R
    cdef i64* tmp
    while e <= d and c[e] == 0:
        e += 1
    if e > d:
        return 0
    if e >= 2:
        return 2
    n = d - e
    for j in range(n + 1):
        f[j] = c[d - j]
    if n <= 1:
        return 1
    lb = -1
    for j in range(1, n + 1):
        g[j - 1] = fmul(f[j], j % p, E, L)
        if g[j - 1]:
            lb = j - 1
    if lb < 0:
        return 2
    la = n
    A = f
    B = g
    R = r
    while lb >= 0:
        # R = A mod B
        for j in range(la + 1):
            R[j] = A[j]
        inv = finv(B[lb], E, L, q1)
        while la >= lb:
            co = fmul(R[la], inv, E, L)
            s = la - lb
            for i in range(lb + 1):
                if B[i]:
                    R[s + i] = fadd(R[s + i], fmul(fmul(co, B[i], E, L), minus_one, E, L),
                                    E, L, Z, q1)
            while la >= 0 and R[la] == 0:
                la -= 1
            if la < 0:
                break
        # (A, B) <- (B, R)
        tmp = A
        A = B
        B = R
        R = tmp
        i = la
        la = lb
        lb = i
    return 1 if la == 0 else 2


def classify_binary(const i64[:, ::1] B, i64 p, i64 q,
                    const i64[::1] E, const i64[::1] L, const i64[::1] Z):
    cdef Py_ssize_t N = B.shape[0], a, j
    cdef int d = B.shape[1] - 1
    if d + 2 > MAXDEG:
        raise ValueError("degree too large for the compiled kernel")
    cdef i64 c[MAXDEG]
    out = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    with nogil:
        for a in range(N):
            for j in range(d + 1):
                c[j] = B[a, j]
            o[a] = _classify(c, d, p, E, L, Z, q - 1)
    return out


def pencil_line_status(const i64[:, ::1] BF, const i64[:, ::1] BG,
                       const i64[::1] S, const i64[::1] T,
                       i64 p, i64 q, const i64[::1] E, const i64[::1] L, const i64[::1] Z):
    cdef Py_ssize_t N = BF.shape[0], M = S.shape[0], a, m, j
    cdef int d = BF.shape[1] - 1
    if d + 2 > MAXDEG:
        raise ValueError("degree too large for the compiled kernel")
    cdef i64 c[MAXDEG]
    cdef i64 q1 = q - 1, bad
    out = np.zeros(N, dtype=np.int64)
    cdef i64[::1] o = out
    with nogil:
        for a in range(N):
            bad = 0
            for m in range(M):
                for j in range(d + 1):
                    c[j] = fadd(fmul(S[m], BF[a, j], E, L), fmul(T[m], BG[a, j], E, L),
                                E, L, Z, q1)
                if _classify(c, d, p, E, L, Z, q1) != 1:
                    bad += 1
            o[a] = bad
    return out
