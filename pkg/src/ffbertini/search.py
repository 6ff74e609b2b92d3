"""Line/plane sweeps, blocking tests and verification drivers.

Every sweep visits candidates in canonical order and reports the first
witness, so results do not depend on the worker count.  Random instances
come from ``random.Random(seed)`` and are drawn in the calling process
before any work is farmed out.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .constructions import (
    ConstructionError,
    conic_cover,
    cube_map_check,
    katz_surface,
    singular_family,
)
from .gf import GF, make_field, prime_power, rank
from .pencil import (
    ConicPencil,
    MemberKind,
    Pencil,
    blocking_quartic,
    conic_singular_members,
    nontransverse_member_count,
    parameters,
    pencil_line_counts,
    quadric_pencil_count_P3,
    satisfies_T_conic,
)
from .polyform import MultiForm, Poly, monomials, partial
from .projgeom import (
    BudgetExceeded,
    count_points,
    enumerate_points,
    line_table,
    normalize,
    num_points,
    point_array,
)
from .serialize import form_to_json, pencil_to_json
from .transversal import (
    gram_matrix,
    has_repeated_rational_line,
    is_reduced_plane_curve,
    is_transverse_hyperplane_P3,
    is_transverse_line,
    line_codes,
    singular_point_search,
)

__all__ = [
    "VerifyReport",
    "CLAIMS",
    "find_transverse_line",
    "find_common_transverse",
    "is_blocking_collection",
    "CommonTransverse",
    "pencil_common_transverse",
    "ExtensionProbe",
    "min_extension_for_success",
    "verify",
    "explore_conjecture25",
    "random_form",
    "random_reduced_curve",
    "random_pencil",
    "random_T_conic_pencil",
    "all_forms",
    "field_for",
]

VERIFIED, FALSIFIED, INCONCLUSIVE = "verified", "falsified", "inconclusive"


def field_for(q: int) -> GF:
    return make_field(*prime_power(q))


# -- worker pool ------------------------------------------------------------------------


def _pool_map(fn, items, jobs: int = 1):
    """map(fn, items) preserving order; a process pool when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _chunks(n, jobs):
    size = max(1, -(-n // max(1, jobs)))
    return [(i, min(n, i + size)) for i in range(0, n, size)]


def _codes_chunk(args):
    F, rows = args
    return kernels.classify_binary(F, rows)


def _line_status_chunk(args):
    F, BF, BG, params = args
    return kernels.pencil_line_status(F, BF, BG, params)


# -- samplers ---------------------------------------------------------------------------


def all_forms(F: GF, nvars: int, d: int):
    """Every form up to scalars, as normalized coefficient vectors."""
    mons = monomials(nvars, d)
    for v in enumerate_points(len(mons) - 1, F):
        yield MultiForm(F, nvars, d, dict(zip(mons, v)))


def random_form(F: GF, nvars: int, d: int, rng: random.Random) -> MultiForm:
    mons = monomials(nvars, d)
    while True:
        f = MultiForm(F, nvars, d, {m: rng.randrange(F.q) for m in mons})
        if not f.is_zero():
            return f


def _is_reduced(C: MultiForm) -> bool:
    # for d <= 3 use the repeated-line oracle, independent of transverse lines
    if C.degree <= 3:
        return not has_repeated_rational_line(C)
    return is_reduced_plane_curve(C)


def random_reduced_curve(F: GF, d: int, rng: random.Random) -> MultiForm:
    while True:
        C = random_form(F, 3, d, rng)
        if _is_reduced(C):
            return C


def random_pencil(F: GF, nvars: int, d: int, rng: random.Random) -> Pencil:
    while True:
        f, g = random_form(F, nvars, d, rng), random_form(F, nvars, d, rng)
        if not f.is_proportional(g):
            return Pencil(f, g)


def random_T_conic_pencil(F: GF, rng: random.Random) -> Pencil:
    while True:
        P = random_pencil(F, 3, 2, rng)
        if satisfies_T_conic(P):
            return P


# -- line searches ----------------------------------------------------------------------


def _line(lines, i):
    return tuple(lines[i].tolist())


def find_transverse_line(C: MultiForm, F: GF | None = None):
    """(first transverse line or None, number of transverse lines)."""
    if F is not None and F != C.field:
        C = C.base_change(F)
    lines, _, _ = line_table(C.field)
    good = np.flatnonzero(line_codes(C) == kernels.SQUAREFREE)
    return (_line(lines, good[0]) if len(good) else None), int(len(good))


def _common_mask(curves, F):
    curves = [C if F is None or C.field == F else C.base_change(F) for C in curves]
    K = curves[0].field
    if any(C.field != K or C.nvars != 3 for C in curves):
        raise ValueError("curves must be plane curves over one field")
    mask = np.ones(num_points(2, K.q), dtype=bool)
    for C in curves:
        mask &= line_codes(C) == kernels.SQUAREFREE
    return mask, K


def find_common_transverse(curves, F: GF | None = None):
    """First line transverse to every curve, or None."""
    mask, K = _common_mask(curves, F)
    good = np.flatnonzero(mask)
    return _line(line_table(K)[0], good[0]) if len(good) else None


def is_blocking_collection(curves, F: GF | None = None):
    """(blocking?, list of common-transverse lines)."""
    mask, K = _common_mask(curves, F)
    lines = line_table(K)[0]
    common = [_line(lines, i) for i in np.flatnonzero(mask)]
    return not common, common


# -- pencils ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CommonTransverse:
    hyperplane: tuple | None
    field: GF
    certified: bool
    candidates: int          # hyperplanes examined
    successes: int           # common-transverse hyperplanes among them


def _plane_pencil_counts(P: Pencil, jobs: int):
    K = P.field
    _, Pa, Qa = line_table(K)
    BF = kernels.restrict_form(P.F, Pa, Qa)
    BG = kernels.restrict_form(P.G, Pa, Qa)
    params = np.asarray(parameters(K), dtype=np.int64)
    if jobs <= 1:
        return kernels.pencil_line_status(K, BF, BG, params)
    parts = _pool_map(_line_status_chunk,
                      [(K, BF[a:b], BG[a:b], params) for a, b in _chunks(len(BF), jobs)],
                      jobs)
    return np.concatenate(parts)


def pencil_common_transverse(P: Pencil, F: GF | None = None, ext: int = 1,
                             jobs: int = 1, budget: int | None = None) -> CommonTransverse:
    """First F_{q^ext}-hyperplane transverse to every F_{q^ext}-member."""
    if ext < 1:
        raise ValueError("ext must be at least 1")
    base = F or P.field
    K = base if ext == 1 else make_field(base.p, base.k * ext)
    PK = P.base_change(K)
    n = P.nvars - 1
    count = num_points(n, K.q)
    if count * (K.q + 1) > (budget or 50_000_000):
        raise BudgetExceeded(f"{count} hyperplanes x {K.q + 1} members exceed the budget")
    if n == 2:
        bad = _plane_pencil_counts(PK, jobs)
        good = np.flatnonzero(bad == 0)
        lines = line_table(K)[0]
        hit = _line(lines, good[0]) if len(good) else None
        return CommonTransverse(hit, K, True, count, int(len(good)))
    if n != 3:
        raise ValueError("pencils in P^2 or P^3 only")
    planes = list(enumerate_points(3, K))
    if PK.degree == 2 and K.p != 2:
        ok = [quadric_pencil_count_P3(PK, H) for H in planes]
        flags = [c.kind is MemberKind.FINITE and not any(r.degree == 1 for r in c.roots)
                 for c in ok]
        certified = True
    else:
        flags, certified = [], True
        params = parameters(K)
        for H in planes:
            good = True
            for st in params:
                v = is_transverse_hyperplane_P3(PK.member(*st), H, budget=budget)
                if not v.transverse:
                    good = False
                    break
                certified &= v.certified
            flags.append(good)
    idx = [i for i, f in enumerate(flags) if f]
    return CommonTransverse(planes[idx[0]] if idx else None, K, certified, count, len(idx))


@dataclass
class ExtensionProbe:
    m: int | None
    stats: list = field(default_factory=list)
    inconclusive: bool = False


def min_extension_for_success(P: Pencil, F: GF | None = None, cap: int = 3,
                              jobs: int = 1, budget: int | None = None) -> ExtensionProbe:
    """Least m <= cap with a common transverse hyperplane over F_{q^m}."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    probe = ExtensionProbe(None)
    for m in range(1, cap + 1):
        try:
            res = pencil_common_transverse(P, F, ext=m, jobs=jobs, budget=budget)
        except BudgetExceeded:
            probe.inconclusive = True
            break
        probe.stats.append({"m": m, "q_m": res.field.q, "hyperplanes": res.candidates,
                            "common_transverse": res.successes})
        if res.hyperplane is not None and res.certified:
            probe.m = m
            break
    return probe


# -- reports ----------------------------------------------------------------------------


@dataclass
class VerifyReport:
    claim: str
    params: dict
    result: str
    witness: object = None
    counts: dict = field(default_factory=dict)
    seed: int = 0
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.result == VERIFIED

    def to_json(self):
        return asdict(self)


def _report(claim, params, ok, seed, t0, witness=None, counts=None, conclusive=True):
    result = (VERIFIED if ok else FALSIFIED) if conclusive else INCONCLUSIVE
    return VerifyReport(claim, params, result, witness, counts or {}, seed,
                        round((time.perf_counter() - t0) * 1000, 3))


# katz ----------------------------------------------------------------------------------


def _verify_katz(q, seed=0, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    X = katz_surface(F)
    planes = list(enumerate_points(3, F))
    bad, certified, witness = 0, True, None
    for H in planes:
        v = is_transverse_hyperplane_P3(X, H)
        certified &= v.certified
        if v.transverse:
            witness = witness or {"plane": list(H)}
        else:
            bad += 1
    counts = {"planes": len(planes), "nontransverse": bad}
    return _report("katz", {"q": q}, bad == len(planes), seed, t0, witness, counts,
                   conclusive=certified or bad < len(planes))


# lemma 2.1 -----------------------------------------------------------------------------


def _line_component(C: MultiForm) -> bool:
    return bool(np.any(line_codes(C) == kernels.ZERO))


def _verify_lemma21(q, d, seed=0, samples=None, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    pts = point_array(2, F)
    if samples:
        rng = random.Random(seed)
        forms = [random_form(F, 3, d, rng) for _ in range(samples)]
    else:
        forms = all_forms(F, 3, d)
    n, worst, worst_form, sharp_worst, witness = 0, -1, None, -1, None
    for f in forms:
        n += 1
        c = int(np.count_nonzero(kernels.eval_form(f, pts) == 0))
        if c > worst:
            worst, worst_form = c, f
        if c > d * q + 1:
            witness = witness or {"form": form_to_json(f), "count": c}
        if not _line_component(f):
            sharp_worst = max(sharp_worst, c)
            if c > d * q:
                witness = witness or {"form": form_to_json(f), "count": c,
                                      "bound": "no line component"}
    # d concurrent lines through [0:0:1] attain the bound when d <= q + 1
    concurrent_count = None
    if d <= q + 1:
        x, y = Poly.var(F, 3, 0), Poly.var(F, 3, 1)
        g = x
        for c in list(F.elements())[:d - 1]:
            g = g * (y - Poly.constant(F, 3, c) * x) if c else g * y
        concurrent_count = count_points(MultiForm.from_poly(g, d))
    ok = witness is None and (concurrent_count is None or concurrent_count == d * q + 1)
    counts = {"forms": n, "max_count": worst, "bound": d * q + 1,
              "max_without_line_component": sharp_worst,
              "concurrent_lines_count": concurrent_count,
              "max_attained_by": form_to_json(worst_form)}
    params = {"q": q, "d": d, "mode": "sample" if samples else "exhaustive"}
    if samples:
        params["samples"] = samples
    return _report("lemma21", params, ok, seed, t0, witness, counts)


# prop 2.2 ------------------------------------------------------------------------------


def _curve_line_tally(C):
    codes = line_codes(C)
    return int(np.count_nonzero(codes == kernels.SQUAREFREE)), int(
        np.count_nonzero(codes != kernels.SQUAREFREE))


def _verify_prop22(q, d, seed=0, samples=None, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    bound = 2 * d * (d - 1) * q + 1
    if samples:
        rng = random.Random(seed)
        curves = (random_reduced_curve(F, d, rng) for _ in range(samples))
    else:
        curves = (C for C in all_forms(F, 3, d) if _is_reduced(C))
    n, worst, witness = 0, 0, None
    for C in curves:
        n += 1
        good, bad = _curve_line_tally(C)
        worst = max(worst, bad)
        if good == 0 or bad > bound:
            witness = witness or {"curve": form_to_json(C), "transverse": good,
                                  "nontransverse": bad}
    if witness is None and n:
        # re-check one instance through the single-line oracle
        first, _ = find_transverse_line(C)
        if first is None or not is_transverse_line(C, first).transverse:
            witness = {"curve": form_to_json(C), "recheck": "failed"}
    counts = {"curves": n, "max_nontransverse": worst, "bound": bound,
              "hypothesis_q_ge": 2 * d * (d - 1)}
    params = {"q": q, "d": d, "mode": "sample" if samples else "exhaustive"}
    if samples:
        params["samples"] = samples
    return _report("prop22", params, witness is None, seed, t0, witness, counts)


# prop 2.3 ------------------------------------------------------------------------------


def _verify_prop23(q, d=2, N=2, seed=0, samples=500, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    rng = random.Random(seed)
    bound = N * (2 * d * (d - 1) * q + 1)
    worst, witness = 0, None
    for _ in range(samples):
        curves = [random_reduced_curve(F, d, rng) for _ in range(N)]
        mask, _ = _common_mask(curves, None)
        union_bad = int(np.count_nonzero(~mask))
        worst = max(worst, union_bad)
        if not mask.any() or union_bad > bound:
            witness = witness or {"curves": [form_to_json(C) for C in curves],
                                  "union_nontransverse": union_bad}
        elif witness is None:
            L = find_common_transverse(curves)
            if not all(is_transverse_line(C, L).transverse for C in curves):
                witness = {"curves": [form_to_json(C) for C in curves], "recheck": "failed"}
    counts = {"samples": samples, "max_union_nontransverse": worst, "bound": bound}
    return _report("prop23", {"q": q, "d": d, "N": N, "samples": samples}, witness is None,
                   seed, t0, witness, counts)


# prop 2.4 ------------------------------------------------------------------------------


def _verify_prop24(q, d, seed=0, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    fam = singular_family(F, d)
    singular_ok = all(
        all(g.evaluate(P) == 0 for g in [C] + [partial(C, i) for i in range(3)])
        for C, P in zip(fam.curves, fam.meta["points"]))
    blocking, common = is_blocking_collection(fam.curves)
    counts = {"curves": len(fam), "common_transverse": len(common),
              "singular_at_points": singular_ok}
    witness = {"line": list(common[0])} if common else None
    ok = blocking and singular_ok and len(fam) == q + 1
    return _report("prop24", {"q": q, "d": d}, ok, seed, t0, witness, counts)


# example 2.6 ---------------------------------------------------------------------------


def _verify_conic_cover(q, seed=0, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    try:
        fam = conic_cover(F, seed)
    except ConstructionError as exc:
        return _report("conic_cover", {"q": q}, False, seed, t0, {"error": str(exc)})
    # independent re-checks of the construction's postconditions
    smooth = all(rank(F, gram_matrix(f)) == 3 for f in fam.curves)
    pts = point_array(2, F)
    covered = np.zeros(len(pts), dtype=bool)
    for f in fam.curves:
        covered |= kernels.eval_form(f, pts) == 0
    P4 = tuple(fam.meta["P4"])
    through_p4 = all(f.evaluate(P4) == 0 for f in fam.curves)
    sing = conic_singular_members(ConicPencil.from_pencil(Pencil(fam.curves[0], fam.curves[1])))
    orbit = (not sing.degenerate and len(sing) == 1
             and sing.members[0][0].degree == 3)
    duals_smooth = all(rank(F, gram_matrix(f)) == 3 for f in fam.duals)
    blocking, common = is_blocking_collection(fam.duals)
    counts = {"members": len(fam), "covered_points": int(covered.sum()),
              "points": len(pts), "all_smooth": smooth, "through_P4": through_p4,
              "singular_orbit_degree": sing.members[0][0].degree if len(sing) else None,
              "duals_smooth": duals_smooth, "dual_common_transverse": len(common)}
    ok = (smooth and covered.all() and through_p4 and orbit and duals_smooth
          and blocking and len(fam) == q + 1)
    witness = {"P1": fam.meta["P1"], "P4": fam.meta["P4"],
               "pencil": fam.meta["pencil"]}
    return _report("conic_cover", {"q": q}, ok, seed, t0, witness, counts)


# lemma 3.1 -----------------------------------------------------------------------------


def _pointwise_members(P: Pencil):
    """Boolean array [line, member]: member not transverse to line."""
    K = P.field
    _, Pa, Qa = line_table(K)
    params = parameters(K)
    out = np.zeros((len(Pa), len(params)), dtype=bool)
    for j, st in enumerate(params):
        rows = kernels.restrict_form(P.member(*st), Pa, Qa)
        out[:, j] = kernels.classify_binary(K, rows) != kernels.SQUAREFREE
    return out, params


def _check_pencil_lines(P: Pencil):
    """(failures, tally) for every line: count check plus rational-root oracle."""
    K = P.field
    d = P.degree
    lines = line_table(K)[0]
    point_bad, params = _pointwise_members(P)
    failures, all_members, finite = [], 0, 0
    for i, L in enumerate(lines.tolist()):
        mc = nontransverse_member_count(P, L)
        pointwise = {params[j] for j in np.flatnonzero(point_bad[i])}
        if mc.kind is MemberKind.ALL:
            all_members += 1
            if len(pointwise) != len(params):
                failures.append({"line": L, "reason": "AllMembers but a member is transverse"})
            continue
        finite += 1
        rational = {normalize(K, r.param) for r in mc.roots if r.degree == 1}
        if mc.total != 2 * (d - 1):
            failures.append({"line": L, "reason": f"total {mc.total}"})
        if rational != pointwise:
            failures.append({"line": L, "reason": "rational roots differ from sweep",
                             "roots": sorted(rational), "sweep": sorted(pointwise)})
    return failures, {"all_members": all_members, "finite": finite}


def _verify_lemma31_n2(q, d, seed=0, samples=100, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    if d % F.p == 0:
        raise ValueError("the certified count needs p not dividing d")
    rng = random.Random(seed)
    tallies = {"all_members": 0, "finite": 0}
    witness = None
    for _ in range(samples):
        P = random_pencil(F, 3, d, rng)
        fails, t = _check_pencil_lines(P)
        for k in tallies:
            tallies[k] += t[k]
        if fails and witness is None:
            witness = {"pencil": pencil_to_json(P), "failures": fails[:3]}
    tallies["pencils"] = samples
    tallies["expected_total"] = 2 * (d - 1)
    return _report("lemma31_n2", {"q": q, "d": d, "samples": samples}, witness is None,
                   seed, t0, witness, tallies)


def _verify_lemma31_n3d2(q, seed=0, samples=50, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    if F.p == 2:
        raise ValueError("quadric pencils need odd characteristic")
    rng = random.Random(seed)
    planes = list(enumerate_points(3, F))
    params = parameters(F)
    tallies = {"all_members": 0, "finite": 0}
    witness = None
    for _ in range(samples):
        P = random_pencil(F, 4, 2, rng)
        for H in planes:
            mc = quadric_pencil_count_P3(P, H)
            if mc.kind is MemberKind.ALL:
                tallies["all_members"] += 1
                continue
            tallies["finite"] += 1
            rational = {normalize(F, r.param) for r in mc.roots if r.degree == 1}
            # independent path: rank of each rational member's plane section
            singular = {st for st in params
                        if not is_transverse_hyperplane_P3(P.member(*st), H).transverse}
            if mc.total != 3 or rational != singular:
                witness = witness or {"pencil": pencil_to_json(P), "plane": list(H),
                                      "total": mc.total}
    tallies["pencils"] = samples
    tallies["planes"] = len(planes)
    return _report("lemma31_n3d2", {"q": q, "samples": samples}, witness is None, seed, t0,
                   witness, tallies)


# prop 3.3 ------------------------------------------------------------------------------


def prop33_inequality(q) -> bool:
    """q^2 + q + 1 > (q+1)^2/2 + 4q + 1 + 3(q+1), exactly."""
    q = Fraction(q)
    return q * q + q + 1 > (q + 1) ** 2 / 2 + 4 * q + 1 + 3 * (q + 1)


def _prop33_chain_holds(limit=10_000):
    """The inequality for 16 <= q <= limit, and its closed form q^2 > 14q + 7."""
    numeric = all(prop33_inequality(q) for q in range(16, limit + 1))
    closed = all(prop33_inequality(q) == (q * q > 14 * q + 7) for q in range(1, limit + 1))
    # q^2 - 14q - 7 is increasing for q >= 7 and positive at 16
    return numeric and closed and 16 * 16 - 14 * 16 - 7 > 0


def _prop33_instance(args):
    P, odd = args
    K = P.field
    bad = pencil_line_counts(P)
    good = np.flatnonzero(bad == 0)
    out = {"success": bool(len(good)), "nontransverse_lines": int(np.count_nonzero(bad)),
           "line": _line(line_table(K)[0], good[0]) if len(good) else None}
    if odd:
        D = blocking_quartic(P)
        sing = conic_singular_members(P)
        out.update({
            "quartic_degree": D.total_degree() if not D.is_zero() else -1,
            "quartic_points": count_points(D) if not D.is_zero() else None,
            "singular_members": sum(r.degree for r, _ in sing.members),
            "rational_singular_members": sum(1 for r, _ in sing.members if r.degree == 1),
        })
    return out


def _verify_prop33(q, seed=0, samples=1000, jobs=1, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    rng = random.Random(seed)
    pencils = [random_T_conic_pencil(F, rng) for _ in range(samples)]
    odd = F.p != 2
    results = _pool_map(_prop33_instance, [(P, odd) for P in pencils], jobs)
    fails = [i for i, r in enumerate(results) if not r["success"]]
    counts = {"pencils": samples, "successes": samples - len(fails),
              "max_nontransverse_lines": max(r["nontransverse_lines"] for r in results),
              "lines": num_points(2, q)}
    ok = not fails
    witness = None
    if odd:
        qdeg = max(r["quartic_degree"] for r in results)
        qpts = max(r["quartic_points"] or 0 for r in results)
        sing = max(r["singular_members"] for r in results)
        counts.update({"max_quartic_degree": qdeg, "max_quartic_points": qpts,
                       "quartic_point_bound": 4 * q + 1, "max_singular_members": sing,
                       "max_rational_singular_members":
                           max(r["rational_singular_members"] for r in results)})
        ok = ok and qdeg <= 4 and qpts <= 4 * q + 1 and sing <= 3
    chain = _prop33_chain_holds()
    counts["inequality_chain"] = chain
    counts["inequality_at_q"] = prop33_inequality(q)
    ok = ok and chain
    if fails:
        P = pencils[fails[0]]
        witness = {"pencil": pencil_to_json(P),
                   "line_tangent_members": _tangent_member_sample(P)}
    elif pencils:
        # re-check the first witness line member by member
        L = results[0]["line"]
        P = pencils[0]
        if not all(is_transverse_line(P.member(*st), L).transverse
                   for st in parameters(F)):
            ok, witness = False, {"pencil": pencil_to_json(P), "recheck": "failed"}
    path = "discriminant+gcd" if odd else "gcd"
    return _report("prop33", {"q": q, "samples": samples, "path": path}, ok, seed, t0,
                   witness, counts)


def _tangent_member_sample(P: Pencil, limit=3):
    """For the first few lines, one rational member not transverse to it."""
    out = []
    for L in enumerate_points(2, P.field):
        st = next(st for st in parameters(P.field)
                  if not is_transverse_line(P.member(*st), L).transverse)
        out.append({"line": list(L), "member": list(st)})
        if len(out) == limit:
            break
    return out


# extension probe ----------------------------------------------------------------------


def _probe_instance(args):
    P, m, cap = args
    res = pencil_common_transverse(P, ext=m)
    probe = min_extension_for_success(P, cap=cap)
    return {"success_at_m": res.hyperplane is not None and res.certified,
            "min_m": probe.m}


def _verify_extension_probe(q, ext=2, seed=0, samples=100, cap=None, jobs=1, **_):
    t0 = time.perf_counter()
    F = field_for(q)
    cap = cap or ext
    rng = random.Random(seed)
    pencils = [random_T_conic_pencil(F, rng) for _ in range(samples)]
    results = _pool_map(_probe_instance, [(P, ext, cap) for P in pencils], jobs)
    fails = [i for i, r in enumerate(results)
             if not r["success_at_m"] or r["min_m"] is None or r["min_m"] > ext]
    hist = {}
    for r in results:
        hist[str(r["min_m"])] = hist.get(str(r["min_m"]), 0) + 1
    counts = {"pencils": samples, "successes_at_ext": sum(r["success_at_m"] for r in results),
              "min_m_histogram": dict(sorted(hist.items()))}
    witness = {"pencil": pencil_to_json(pencils[fails[0]])} if fails else None
    return _report("extension_probe", {"q": q, "ext": ext, "samples": samples}, not fails,
                   seed, t0, witness, counts)


# cube map ------------------------------------------------------------------------------


def _prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def _verify_cube_map(q=64, seed=0, **_):
    t0 = time.perf_counter()
    qs = _prime_powers(q)
    bad = [n for n in qs if cube_map_check(field_for(n)) != (n % 3 == 2)]
    counts = {"fields": len(qs), "bijective": sum(n % 3 == 2 for n in qs)}
    witness = ({"q": bad[0], "cube_map_check": not bad[0] % 3 == 2,
                "expected": bad[0] % 3 == 2} if bad else None)
    return _report("cube_map", {"q_max": q}, not bad, seed, t0, witness, counts)


CLAIMS = {
    "katz": _verify_katz,
    "lemma21": _verify_lemma21,
    "prop22": _verify_prop22,
    "prop23": _verify_prop23,
    "prop24": _verify_prop24,
    "conic_cover": _verify_conic_cover,
    "lemma31_n2": _verify_lemma31_n2,
    "lemma31_n3d2": _verify_lemma31_n3d2,
    "prop33": _verify_prop33,
    "cube_map": _verify_cube_map,
    "extension_probe": _verify_extension_probe,
}


def verify(claim: str, seed: int = 0, **params) -> VerifyReport:
    """Run the verification driver for `claim`; BudgetExceeded -> inconclusive."""
    try:
        fn = CLAIMS[claim]
    except KeyError:
        raise ValueError(f"unknown claim {claim!r}; choose from {sorted(CLAIMS)}") from None
    t0 = time.perf_counter()
    try:
        return fn(seed=seed, **params)
    except BudgetExceeded as exc:
        return _report(claim, params, False, seed, t0, {"budget": str(exc)},
                       conclusive=False)


# -- exploration ------------------------------------------------------------------------


def _is_smooth_curve(C: MultiForm, budget=None) -> bool:
    return singular_point_search(C, max_deg=max(1, (C.degree - 1) ** 2),
                                 budget=budget) is None


def explore_conjecture25(F: GF, d: int, budget: int = 100, seed: int = 0):
    """Random local search for q+1 smooth curves blocking every F-line.

    Exploratory only: the result never claims a verification.  Returns a
    dict with the best family, the number of blocked lines and the
    trajectory of the objective.
    """
    lines = num_points(2, F.q)
    if d == 2:
        fam = conic_cover(F, seed)
        blocked = lines - int(_common_mask(fam.duals, None)[0].sum())
        return {"family": fam.duals, "blocked": blocked, "lines": lines,
                "fully_blocking": blocked == lines, "trajectory": [blocked],
                "result": INCONCLUSIVE}
    rng = random.Random(seed)

    def smooth_curve():
        while True:
            C = random_form(F, 3, d, rng)
            if _is_smooth_curve(C):
                return C

    family = [smooth_curve() for _ in range(F.q + 1)]
    masks = [line_codes(C) != kernels.SQUAREFREE for C in family]

    def score(ms):
        return int(np.logical_or.reduce(ms).sum())

    best = score(masks)
    trajectory = [best]
    for _ in range(budget):
        if best == lines:
            break
        i = rng.randrange(len(family))
        C = smooth_curve()
        trial = masks[:i] + [line_codes(C) != kernels.SQUAREFREE] + masks[i + 1:]
        s = score(trial)
        if s >= best:
            family[i], masks, best = C, trial, s
        trajectory.append(best)
    return {"family": family, "blocked": best, "lines": lines,
            "fully_blocking": best == lines, "trajectory": trajectory,
            "result": INCONCLUSIVE}
