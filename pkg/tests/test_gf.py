import itertools
import pickle
import random

import pytest
from hypothesis import given, strategies as st

from ffbertini.gf import (
    FieldMismatch,
    arith,
    det,
    det_and_adjugate,
    embed,
    frobenius,
    kernel_basis,
    make_field,
    matmul,
    prime_power,
    rank,
)

SMALL_Q = []
for q in range(2, 50):
    try:
        SMALL_Q.append(prime_power(q))
    except ValueError:
        pass


def _poly_roots(p, coeffs):
    # coeffs low-first over F_p
    return [x for x in range(p) if sum(c * x**i for i, c in enumerate(coeffs)) % p == 0]


def test_prime_field_modulus_convention():
    F = make_field(2, 1, 0)
    assert (F.p, F.k, F.q) == (2, 1, 2)
    assert F.modulus == (0, 1)


def test_f4_modulus_is_unique_irreducible_quadratic():
    # t^2, t^2+1, t^2+t all have roots in F_2
    reducible = [c for c in itertools.product(range(2), repeat=2)
                 if _poly_roots(2, list(c) + [1])]
    assert sorted(reducible) == [(0, 0), (0, 1), (1, 0)]
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_has_no_root():
    F = make_field(3, 2)
    assert _poly_roots(3, F.modulus) == []


@pytest.mark.parametrize("seed", range(6))
def test_seeded_moduli_are_irreducible(seed):
    F = make_field(5, 2, seed)
    assert _poly_roots(5, F.modulus) == []


def test_f4_multiplication_table():
    F = make_field(2, 2)
    t = F.elem([0, 1])
    assert F.mul(t, F.add(t, 1)) == 1
    # full table against polynomial multiplication mod t^2+t+1
    for a, b in itertools.product(range(4), repeat=2):
        a0, a1 = F.coeffs(a)
        b0, b1 = F.coeffs(b)
        c0 = a0 * b0 + a1 * b1
        c1 = a0 * b1 + a1 * b0 + a1 * b1
        assert F.mul(a, b) == F.elem([c0 % 2, c1 % 2])


def test_small_arith():
    F = make_field(5)
    assert arith(2, 3, "add", F) == 0
    assert arith(2, None, "pow", F, n=3) == 3
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        arith(1, 2, "mod", F)


@pytest.mark.parametrize("pk", SMALL_Q)
def test_field_axioms_exhaustive(pk):
    F = make_field(*pk)
    E = list(F.elements())
    assert len(E) == F.q
    for a in E:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, F.q) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.mul(a, F.pow(a, F.q - 2)) == 1
    rng = random.Random(F.q)
    triples = (list(itertools.product(E, repeat=3)) if F.q <= 9
               else [tuple(rng.choice(E) for _ in range(3)) for _ in range(3000)])
    for a, b, c in triples:
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.sub(F.add(a, b), b) == a


def test_frobenius():
    F4 = make_field(2, 2)
    t = F4.elem([0, 1])
    assert frobenius(F4, t) == F4.add(t, 1) == F4.mul(t, t)
    F7 = make_field(7)
    assert all(frobenius(F7, a) == a for a in F7.elements())


@pytest.mark.parametrize("pk", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_frobenius_order_is_k(pk):
    F = make_field(*pk)
    assert all(frobenius(F, a, F.k) == a for a in F.elements())
    g = F.gen
    assert all(frobenius(F, g, j) != g for j in range(1, F.k))


def test_embed_basics():
    F2, F4, F16 = make_field(2), make_field(2, 2), make_field(2, 4)
    assert embed(0, F4, F16) == 0 and embed(1, F4, F16) == 1
    assert [embed(a, F2, F4) for a in (0, 1)] == [0, 1]
    t = embed(F4.elem([0, 1]), F4, F16)
    assert F16.add(F16.add(F16.mul(t, t), t), 1) == 0
    with pytest.raises(FieldMismatch):
        embed(1, F4, make_field(2, 3))
    with pytest.raises(FieldMismatch):
        embed(1, F2, make_field(3))


@pytest.mark.parametrize("src,dst", [((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3)),
                                     ((3, 2), (3, 4)), ((2, 2), (2, 2))])
def test_embed_is_ring_homomorphism(src, dst):
    A, B = make_field(*src), make_field(*dst)
    for a, b in itertools.product(A.elements(), repeat=2):
        assert embed(A.add(a, b), A, B) == B.add(embed(a, A, B), embed(b, A, B))
        assert embed(A.mul(a, b), A, B) == B.mul(embed(a, A, B), embed(b, A, B))


def test_kernel_basis_examples():
    F = make_field(5)
    assert kernel_basis(F, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    assert len(kernel_basis(F, [[0, 0, 0], [0, 0, 0]])) == 3


def test_det_and_adjugate_examples():
    F = make_field(7)
    I = [[int(i == j) for j in range(3)] for i in range(3)]
    assert det_and_adjugate(F, I) == (1, I)
    d, adj = det_and_adjugate(F, [[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert d == 6 and adj == [[6, 0, 0], [0, 3, 0], [0, 0, 2]]
    assert det(F, [[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 0


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (7, 1), (2, 2), (3, 2), (2, 4)])
def test_adjugate_identity_seeded(pk):
    F = make_field(*pk)
    rng = random.Random(1)
    for _ in range(200):
        M = [[rng.randrange(F.q) for _ in range(3)] for _ in range(3)]
        d, adj = det_and_adjugate(F, M)
        assert matmul(F, M, adj) == [[d if i == j else 0 for j in range(3)] for i in range(3)]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 8), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(M=matrices, pk=st.sampled_from([(2, 1), (3, 2), (5, 1), (7, 1)]))
def test_kernel_rank_nullity(M, pk):
    F = make_field(*pk)
    M = [[x % F.q for x in row] for row in M]
    K = kernel_basis(F, M)
    ncols = len(M[0])
    assert rank(F, M) + len(K) == ncols
    for v in K:
        assert all(F.sum(F.mul(a, b) for a, b in zip(row, v)) == 0 for row in M)
    if K:
        assert rank(F, K) == len(K)


def test_fields_pickle_and_cache():
    F = make_field(3, 2)
    G = pickle.loads(pickle.dumps(F))
    assert G == F and G is F
    assert make_field(3, 2) is F


def test_bad_inputs():
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(ValueError):
        prime_power(12)
    assert prime_power(49) == (7, 2)
