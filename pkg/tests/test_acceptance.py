"""The twelve acceptance criteria, each with its tolerance and time limit.

Every test records one PASS/FAIL line, shown in the terminal summary.
"""
import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from ffbertini import kernels
from ffbertini.constructions import cube_map_check
from ffbertini.gf import make_field, prime_power
from ffbertini.polyform import (
    BinaryForm,
    MultiForm,
    Poly,
    disc_binary,
    disc_classical,
    is_squarefree_binary,
    monomials,
    partial,
    restrict_to_line,
    substitute_linear,
)
from ffbertini.projgeom import enumerate_points, line_table
from ffbertini.search import prop33_inequality, verify


class Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []
        self.notes = []

    def check(self, ok, message):
        if not ok:
            self.failures.append(message)

    def note(self, message):
        self.notes.append(message)


@contextmanager
def criterion(log, number, title, limit):
    c = Criterion(number, title, limit)
    t0 = time.perf_counter()
    error = None
    try:
        yield c
    except Exception as exc:  # record, then re-raise below
        error = exc
    elapsed = time.perf_counter() - t0
    if elapsed >= limit:
        c.failures.append(f"took {elapsed:.1f}s (limit {limit}s)")
    if error is not None:
        c.failures.append(f"{type(error).__name__}: {error}")
    status = "FAIL" if c.failures else "PASS"
    detail = "; ".join(c.failures or c.notes)
    log.append(f"{status} criterion {number}: {title} [{elapsed:.1f}s / {limit}s] {detail}")
    if error is not None:
        raise error
    assert not c.failures, "; ".join(c.failures)


def test_criterion_01_katz(acceptance_log):
    with criterion(acceptance_log, 1, "Katz surface tangent to every plane", 10) as c:
        for q, planes in ((2, 15), (3, 40)):
            r = verify("katz", q=q)
            c.check(r.ok and r.counts == {"planes": planes, "nontransverse": planes},
                    f"q={q}: {r.result} {r.counts}")
            c.note(f"q={q}: {r.counts['nontransverse']}/{planes}")


def test_criterion_02_point_bound(acceptance_log):
    with criterion(acceptance_log, 2, "point count <= dq+1, attained by concurrent lines", 60) as c:
        r = verify("lemma21", q=3, d=2)
        c.check(r.ok and r.counts["forms"] == 364, f"conics/F_3: {r.result} {r.counts}")
        c.check(r.counts["max_count"] == 7 and r.counts["concurrent_lines_count"] == 7,
                f"conics/F_3 extremal count {r.counts['max_count']}")
        s = verify("lemma21", q=2, d=3)
        c.check(s.ok and s.counts["forms"] == 1023, f"cubics/F_2: {s.result} {s.counts}")
        c.check(s.counts["max_count"] <= 7, f"cubics/F_2 max {s.counts['max_count']}")
        c.note(f"conics F_3 max {r.counts['max_count']}, cubics F_2 max {s.counts['max_count']}")


def test_criterion_03_transverse_line(acceptance_log):
    with criterion(acceptance_log, 3, "reduced curves have a transverse line", 120) as c:
        for q in (4, 5):
            r = verify("prop22", q=q, d=2)
            c.check(r.ok, f"conics/F_{q}: {r.result} {r.witness}")
            c.check(r.counts["max_nontransverse"] <= r.counts["bound"],
                    f"conics/F_{q} tally {r.counts['max_nontransverse']}")
            c.note(f"F_{q}: {r.counts['curves']} reduced conics")
        r = verify("prop22", q=13, d=3, samples=500, seed=0)
        c.check(r.ok and r.counts["curves"] == 500, f"cubics/F_13: {r.result} {r.witness}")
        c.check(r.counts["max_nontransverse"] <= 2 * 3 * 2 * 13 + 1, "cubic tally over bound")


def test_criterion_04_common_transverse_pairs(acceptance_log):
    with criterion(acceptance_log, 4, "500 conic pairs over F_17 share a transverse line", 60) as c:
        r = verify("prop23", q=17, d=2, N=2, samples=500, seed=0)
        c.check(r.ok, f"{r.result} {r.witness}")
        c.check(r.counts["max_union_nontransverse"] <= 2 * (2 * 2 * 1 * 17 + 1),
                f"tally {r.counts['max_union_nontransverse']}")
        c.note(f"max union tally {r.counts['max_union_nontransverse']} <= {r.counts['bound']}")


def test_criterion_05_singular_families_block(acceptance_log):
    with criterion(acceptance_log, 5, "singular families block every line", 30) as c:
        for q, d in ((2, 2), (3, 2), (3, 3), (5, 2)):
            r = verify("prop24", q=q, d=d)
            c.check(r.ok and r.counts["common_transverse"] == 0, f"(q,d)=({q},{d}): {r.counts}")


def test_criterion_06_conic_cover(acceptance_log):
    with criterion(acceptance_log, 6, "smooth conic cover and blocking duals", 60) as c:
        for q in (3, 5, 7):
            r = verify("conic_cover", q=q)
            k = r.counts
            c.check(r.ok, f"q={q}: {r.result} {k}")
            c.check(k.get("members") == q + 1 and k.get("all_smooth"), f"q={q} members")
            c.check(k.get("covered_points") == k.get("points") == q * q + q + 1,
                    f"q={q} coverage")
            c.check(k.get("singular_orbit_degree") == 3, f"q={q} orbit")
            c.check(k.get("dual_common_transverse") == 0, f"q={q} duals")


def test_criterion_07_member_counts_plane(acceptance_log):
    with criterion(acceptance_log, 7, "pencil member counts on lines over F_5", 300) as c:
        for d in (2, 3):
            r = verify("lemma31_n2", q=5, d=d, samples=100, seed=0)
            c.check(r.ok, f"d={d}: {r.result} {r.witness}")
            c.check(r.counts["all_members"] + r.counts["finite"] == 100 * 31, f"d={d} lines")
            c.note(f"d={d}: {r.counts['finite']} finite, {r.counts['all_members']} all")


def test_criterion_08_member_counts_planes(acceptance_log):
    with criterion(acceptance_log, 8, "quadric pencil counts on planes", 300) as c:
        for q in (3, 5):
            r = verify("lemma31_n3d2", q=q, samples=50, seed=0)
            c.check(r.ok, f"q={q}: {r.result} {r.witness}")
            c.note(f"q={q}: {r.counts['finite']} finite, {r.counts['all_members']} all")


def test_criterion_09_conic_pencils(acceptance_log):
    with criterion(acceptance_log, 9, "conic pencils with a singular orbit of degree 3 share a transverse line", 600) as c:
        for q in (17, 19):
            r = verify("prop33", q=q, samples=1000, seed=0)
            k = r.counts
            c.check(r.ok and k["successes"] == 1000, f"F_{q}: {k['successes']}/1000")
            c.check(k["max_quartic_degree"] <= 4, f"F_{q} quartic degree")
            c.check(k["max_quartic_points"] <= 4 * q + 1, f"F_{q} quartic points")
            c.check(k["max_singular_members"] <= 3, f"F_{q} singular members")
        ok = all(prop33_inequality(q) for q in range(16, 20001))
        q = Fraction(16)
        ok &= q * q + q + 1 > (q + 1) ** 2 / 2 + 4 * q + 1 + 3 * (q + 1)
        c.check(ok, "inequality chain")
        r = verify("prop33", q=16, samples=200, seed=0)
        c.check(r.counts["successes"] == 200,
                f"F_16: {r.counts['successes']}/200 succeed (no conic pencil in "
                f"characteristic 2 has a common transverse line)")


def test_criterion_10_extension_probe(acceptance_log):
    with criterion(acceptance_log, 10, "F_5 pencils succeed over F_25", 300) as c:
        r = verify("extension_probe", q=5, ext=2, samples=100, seed=0)
        c.check(r.ok and r.counts["successes_at_ext"] == 100, f"{r.result} {r.counts}")
        hist = r.counts["min_m_histogram"]
        c.check(all(k != "None" and int(k) <= 2 for k in hist), f"min m {hist}")
        c.note(f"min m histogram {hist}")


def test_criterion_11_cube_map(acceptance_log):
    with criterion(acceptance_log, 11, "cube map bijective iff q = 2 mod 3", 5) as c:
        wrong = []
        for q in range(2, 65):
            try:
                pk = prime_power(q)
            except ValueError:
                continue
            if cube_map_check(make_field(*pk)) != (q % 3 == 2):
                wrong.append(q)
        c.check(not wrong, f"differs at q in {wrong} (x -> x^3 is the Frobenius in "
                           f"characteristic 3)")


# -- criterion 12 -----------------------------------------------------------------------


def _field_axioms(F):
    E = list(F.elements())
    for a in E:
        if F.pow(a, F.q) != a or (a and F.mul(a, F.inv(a)) != 1):
            return False
        if F.add(a, F.neg(a)) != 0:
            return False
    for a, b in itertools.product(E, repeat=2):
        if F.add(a, b) != F.add(b, a) or F.mul(a, b) != F.mul(b, a):
            return False
    add = [[F.add(a, b) for b in E] for a in E]
    mul = [[F.mul(a, b) for b in E] for a in E]
    for a, b in itertools.product(E, repeat=2):
        ab, mab = add[a][b], mul[a][b]
        row_add, row_mul, ra, rb = add[ab], mul[mab], mul[a], mul[b]
        for cc in E:
            if row_add[cc] != add[a][add[b][cc]]:
                return False
            if row_mul[cc] != ra[mul[b][cc]]:
                return False
            if ra[add[b][cc]] != add[mab][ra[cc]]:
                return False
    return True


def _root_count(B, K):
    return sum(1 for pt in enumerate_points(1, K) if B.evaluate(*pt, field=K) == 0)


def _three_way(F, B, closure, cache):
    key = B.coeffs
    if key not in cache:
        d = B.degree
        gcd = is_squarefree_binary(B)
        count = _root_count(B, closure) == d
        classical = disc_classical(B) != 0
        agree = gcd == count == classical
        if d % F.p:
            agree &= (disc_binary(B) != 0) == gcd
        cache[key] = agree
    return cache[key]


def test_criterion_12_kernel_properties(acceptance_log):
    with criterion(acceptance_log, 12, "kernel property suites", 120) as c:
        fields = []
        for q in range(2, 50):
            try:
                fields.append(prime_power(q))
            except ValueError:
                pass
        bad = [p**k for p, k in fields if not _field_axioms(make_field(p, k))]
        c.check(not bad, f"field axioms fail for q in {bad}")
        c.note(f"axioms on {len(fields)} fields")

        rng = random.Random(0)
        euler_bad = 0
        for i in range(500):
            F = make_field([2, 3, 5, 7, 11][i % 5])
            n, d = rng.choice([2, 3, 4]), rng.randint(1, 5)
            f = MultiForm(F, n, d, {m: rng.randrange(F.q) for m in monomials(n, d)})
            lhs = Poly(F, n)
            for j in range(n):
                lhs = lhs + Poly.var(F, n, j) * partial(f, j)
            euler_bad += lhs.terms != f.scale(d % F.p).terms
        c.check(euler_bad == 0, f"Euler identity fails on {euler_bad} forms")

        for p in (2, 3):
            F = make_field(p)
            closure = make_field(p, 6)  # every root of degree <= 3 lives here
            cache = {}
            for d in (1, 2, 3):
                for cs in itertools.product(range(p), repeat=d + 1):
                    if not any(cs):
                        continue
                    B = BinaryForm(F, cs)
                    if d == 1:
                        c.check(is_squarefree_binary(B) and _root_count(B, closure) == 1,
                                f"linear form {cs} over F_{p}")
                    else:
                        c.check(_three_way(F, B, closure, cache), f"{cs} over F_{p}")

        F5, F25 = make_field(5), make_field(5, 2)
        _, P, Q = line_table(F5)
        cache, pairs = {}, 0
        for v in enumerate_points(5, F5):
            C = MultiForm.from_coefficients(F5, 3, 2, list(v))
            rows = kernels.restrict_form(C, P, Q)
            codes = kernels.classify_binary(F5, rows)
            for row, code in zip(rows.tolist(), codes.tolist()):
                pairs += 1
                B = BinaryForm(F5, tuple(row))
                if B.is_zero():
                    c.check(code == kernels.ZERO, f"zero section of {v}")
                    continue
                c.check(_three_way(F5, B, F25, cache), f"conic {v} section {row}")
                c.check((code == kernels.SQUAREFREE) == is_squarefree_binary(B),
                        f"kernel verdict for conic {v}")
        c.note(f"{pairs} (conic, line) pairs over F_5")

        # restrictions do not depend on the chosen spanning pair
        mismatches = 0
        for i in range(300):
            F = make_field([3, 5, 7][i % 3])
            f = MultiForm(F, 3, 3, {m: rng.randrange(F.q) for m in monomials(3, 3)})
            L = rng.choice(list(enumerate_points(2, F)))
            on = [X for X in enumerate_points(2, F)
                  if F.sum(F.mul(a, b) for a, b in zip(X, L)) == 0]
            A, B = rng.sample(on, 2)
            B1 = restrict_to_line(f, L)
            B2 = BinaryForm.from_form(substitute_linear(f, [[A[j], B[j]] for j in range(3)]))
            if B1.is_zero() != B2.is_zero():
                mismatches += 1
            elif not B1.is_zero():
                mismatches += is_squarefree_binary(B1) != is_squarefree_binary(B2)
        c.check(mismatches == 0, f"{mismatches} spanning-pair mismatches")
