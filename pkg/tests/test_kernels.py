import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffbertini import kernels
from ffbertini.gf import make_field
from ffbertini.pencil import parameters
from ffbertini.polyform import BinaryForm, MultiForm, is_squarefree_binary, monomials
from ffbertini.projgeom import line_table, point_array

BACKENDS = kernels.available_backends()
FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (7, 1)]


def random_form(F, n, d, rng):
    return MultiForm(F, n, d, {m: rng.randrange(F.q) for m in monomials(n, d)})


def test_compiled_backend_selected_when_built():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_backend_switch_restores():
    old = kernels.BACKEND
    with kernels.backend("python"):
        assert kernels.BACKEND == "python"
    assert kernels.BACKEND == old
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.parametrize("pk", FIELDS)
def test_eval_form_matches_scalar_evaluation(pk):
    F = make_field(*pk)
    rng = random.Random(pk[0] * 10 + pk[1])
    pts = point_array(2, F)
    for _ in range(5):
        f = random_form(F, 3, rng.randint(1, 4), rng)
        expect = [f.evaluate(tuple(P)) for P in pts.tolist()]
        for name in BACKENDS:
            with kernels.backend(name):
                assert kernels.eval_form(f, pts).tolist() == expect


@pytest.mark.parametrize("pk", FIELDS)
def test_restrict_and_classify_match_scalar_path(pk):
    F = make_field(*pk)
    rng = random.Random(7 * pk[0] + pk[1])
    _, P, Q = line_table(F)
    for _ in range(4):
        f = random_form(F, 3, rng.randint(1, 4), rng)
        results = {}
        for name in BACKENDS:
            with kernels.backend(name):
                rows = kernels.restrict_form(f, P, Q)
                results[name] = (rows.tolist(), kernels.classify_binary(F, rows).tolist())
        rows, codes = results["python"]
        assert all(r == results["python"] for r in results.values())
        for row, code in zip(rows, codes):
            B = BinaryForm(F, tuple(row))
            if B.is_zero():
                assert code == kernels.ZERO
            else:
                expected = kernels.SQUAREFREE if is_squarefree_binary(B) else kernels.REPEATED
                assert code == expected


@pytest.mark.parametrize("pk", [(3, 1), (5, 1), (2, 2), (7, 1)])
def test_pencil_line_status_backends_agree(pk):
    F = make_field(*pk)
    rng = random.Random(pk[0])
    _, P, Q = line_table(F)
    params = np.asarray(parameters(F), dtype=np.int64)
    for d in (2, 3):
        f, g = random_form(F, 3, d, rng), random_form(F, 3, d, rng)
        out = []
        for name in BACKENDS:
            with kernels.backend(name):
                BF = kernels.restrict_form(f, P, Q)
                BG = kernels.restrict_form(g, P, Q)
                out.append(kernels.pencil_line_status(F, BF, BG, params).tolist())
        assert all(o == out[0] for o in out)
        # pointwise recount of non-squarefree members per line
        for i, (bf, bg) in enumerate(zip(BF.tolist(), BG.tolist())):
            bad = 0
            for s, t in params.tolist():
                row = tuple(F.add(F.mul(s, a), F.mul(t, b)) for a, b in zip(bf, bg))
                B = BinaryForm(F, row)
                bad += B.is_zero() or not is_squarefree_binary(B)
            assert out[0][i] == bad


@given(st.sampled_from(FIELDS), st.integers(1, 5), st.integers(0, 2**32))
def test_backends_agree_on_random_forms(pk, d, seed):
    F = make_field(*pk)
    rng = random.Random(seed)
    f = random_form(F, 3, d, rng)
    _, P, Q = line_table(F)
    outs = []
    for name in BACKENDS:
        with kernels.backend(name):
            rows = kernels.restrict_form(f, P, Q)
            outs.append((kernels.eval_form(f, point_array(2, F)).tolist(), rows.tolist(),
                         kernels.classify_binary(F, rows).tolist()))
    assert all(o == outs[0] for o in outs)


def test_shape_errors():
    F = make_field(3)
    f = random_form(F, 3, 2, random.Random(0))
    with pytest.raises(ValueError):
        kernels.eval_form(f, np.zeros(3, dtype=np.int64))
