import json
import random

import pytest
from hypothesis import given, strategies as st

from ffbertini.gf import make_field
from ffbertini.pencil import Pencil
from ffbertini.polyform import MultiForm, monomials
from ffbertini.serialize import (
    ParseError,
    field_from_json,
    form_from_json,
    form_to_json,
    form_to_text,
    parse_form,
    pencil_from_json,
    pencil_to_json,
    point_from_json,
    point_to_json,
)


def test_parse_examples():
    F = make_field(3)
    f = parse_form("x0*x1 - x2^2", p=3)
    assert f.terms == {(1, 1, 0): 1, (0, 0, 2): 2}
    with pytest.raises(ParseError) as err:
        parse_form("x0^2 + x1", p=5)
    assert "inhomogeneous" in str(err.value) and err.value.position == 7
    g = parse_form("[[1,[2,0,0]],[2,[0,2,0]]]", F=F)
    assert g.terms == {(2, 0, 0): 1, (0, 2, 0): 2}


def test_parse_errors_report_position():
    for bad, pos in [("x0*x1 + ?", 8), ("x0 x1", 3), ("x0^", 3)]:
        with pytest.raises(ParseError) as err:
            parse_form(bad, p=3)
        assert err.value.position == pos


def test_parse_coefficients_reduce():
    f = parse_form("7*x0^2 - x1*x2", p=5)
    assert f.terms == {(2, 0, 0): 2, (0, 1, 1): 4}
    assert parse_form("3*x0", p=3).is_zero()


def test_extension_coefficients_need_json():
    F = make_field(2, 2)
    f = form_from_json([[[0, 1], [1, 1, 0]], [1, [0, 0, 2]]], F)
    assert f.terms == {(1, 1, 0): 2, (0, 0, 2): 1}
    with pytest.raises(ValueError):
        form_to_text(f)
    with pytest.raises(ValueError):
        form_from_json([[[0, 1, 1], [2, 0]]], F)


forms = st.builds(
    lambda p, n, d, cs: (p, n, d, cs),
    st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 4),
    st.lists(st.integers(0, 100), min_size=35, max_size=35))


@given(forms)
def test_text_and_json_round_trip(args):
    p, n, d, cs = args
    F = make_field(p)
    mons = monomials(n, d)
    f = MultiForm(F, n, d, {m: c % p for m, c in zip(mons, cs)})
    if f.is_zero():
        return
    assert parse_form(form_to_text(f), F=F, nvars=n) == f
    assert form_from_json(json.dumps(form_to_json(f)), F) == f


@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 10**6))
def test_extension_round_trip(pk, seed):
    F = make_field(*pk)
    rng = random.Random(seed)
    f = MultiForm(F, 3, 2, {m: rng.randrange(F.q) for m in monomials(3, 2)})
    if f.is_zero():
        return
    assert form_from_json(form_to_json(f), F) == f
    P = (rng.randrange(F.q), 1, rng.randrange(F.q))
    assert point_from_json(F, point_to_json(F, P)) == P


def test_field_and_pencil_round_trip():
    for pk in [(5, 1), (2, 4), (3, 2)]:
        F = make_field(*pk)
        assert field_from_json(F.to_json()) is F
    F = make_field(7)
    x = parse_form("x0*x1 + x2^2", F=F)
    y = parse_form("x0^2 + 3*x1*x2", F=F)
    P = Pencil(x, y)
    Q = pencil_from_json(json.dumps(pencil_to_json(P)))
    assert Q.F == P.F and Q.G == P.G
