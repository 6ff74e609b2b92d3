"""Text and JSON encodings of fields, forms, points and pencils.

Text grammar (prime-field coefficients only)::

    form  := term (("+" | "-") term)*
    term  := [int ["*"]] factor ("*" factor)*  |  int
    factor:= "x" index ["^" exponent]

JSON form: ``[[c, [e0, ..., en]], ...]`` with c an int (prime field) or a
coefficient vector (extension field).  Canonical output lists terms by
exponent vector, descending lexicographic.
"""
from __future__ import annotations

import json
import re

from .gf import GF, field_from_modulus, make_field
from .pencil import Pencil
from .polyform import MultiForm

__all__ = [
    "ParseError",
    "field_to_json",
    "field_from_json",
    "elem_to_json",
    "elem_from_json",
    "form_to_json",
    "form_from_json",
    "form_to_text",
    "parse_form",
    "point_to_json",
    "point_from_json",
    "pencil_to_json",
    "pencil_from_json",
]


class ParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


def field_to_json(F: GF) -> dict:
    return F.to_json()


def field_from_json(data: dict) -> GF:
    p, k = int(data["p"]), int(data.get("k", 1))
    modulus = data.get("modulus")
    if modulus is None:
        return make_field(p, k)
    return field_from_modulus(p, k, modulus)


def elem_to_json(F: GF, a: int):
    return a if F.k == 1 else F.coeffs(a)


def elem_from_json(F: GF, c) -> int:
    if isinstance(c, list):
        if len(c) != F.k:
            raise ValueError(f"coefficient vector {c} has length != {F.k}")
        if any(not 0 <= x < F.p for x in c):
            raise ValueError(f"coefficient vector {c} has entries outside [0, {F.p})")
        return F.elem(c)
    if F.k != 1 and not 0 <= c < F.p:
        raise ValueError(f"integer coefficient {c} is not in the prime field")
    return F.from_int(int(c))


def form_to_json(f: MultiForm) -> list:
    return [[elem_to_json(f.field, c), list(e)] for e, c in f.sorted_terms()]


def form_from_json(data, F: GF, nvars: int | None = None,
                   degree: int | None = None) -> MultiForm:
    if isinstance(data, str):
        data = json.loads(data)
    if not data:
        if nvars is None or degree is None:
            raise ValueError("the zero form needs explicit nvars and degree")
        return MultiForm(F, nvars, degree)
    terms = {}
    for c, e in data:
        e = tuple(int(x) for x in e)
        if nvars is not None and len(e) != nvars:
            raise ValueError(f"exponent vector {list(e)} should have length {nvars}")
        terms[e] = F.add(terms.get(e, 0), elem_from_json(F, c))
    nv = nvars if nvars is not None else len(next(iter(terms)))
    degs = {sum(e) for e in terms}
    deg = degree if degree is not None else max(degs)
    for e in terms:
        if sum(e) != deg:
            raise ValueError(f"inhomogeneous term with exponents {list(e)}")
    return MultiForm(F, nv, deg, terms)


def form_to_text(f: MultiForm) -> str:
    if f.field.k != 1:
        raise ValueError("text output is limited to prime fields; use JSON")
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        factors = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k]
        parts.append("*".join([str(c)] + factors) if c != 1 or not factors
                     else "*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^]))")


def _tokens(text):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "var")
        if m.group("num") is not None:
            yield "num", int(m.group("num")), start
        elif m.group("var") is not None:
            yield "var", int(m.group("idx")), start
        else:
            yield m.group("op"), None, start
        pos = m.end()
    yield "end", None, len(text)


def _parse_terms(text):
    toks = list(_tokens(text))
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        t = toks[i]
        if t[0] != kind:
            raise ParseError(f"expected {kind}, found {t[0]}", t[2])
        i += 1
        return t

    terms = []
    sign = 1
    if peek()[0] in "+-":
        sign = -1 if take(peek()[0])[0] == "-" else 1
    while True:
        start = peek()[2]
        coeff, exps = 1, {}
        expect_factor = True
        if peek()[0] == "num":
            coeff = take("num")[1]
            expect_factor = False
            if peek()[0] == "*":
                take("*")
                expect_factor = True
        if expect_factor:
            while True:
                idx = take("var")[1]
                e = 1
                if peek()[0] == "^":
                    take("^")
                    e = take("num")[1]
                exps[idx] = exps.get(idx, 0) + e
                if peek()[0] != "*":
                    break
                take("*")
        terms.append((sign * coeff, exps, start))
        kind = peek()[0]
        if kind == "end":
            return terms
        if kind not in "+-":
            raise ParseError(f"unexpected {kind}", peek()[2])
        sign = -1 if take(kind)[0] == "-" else 1


def parse_form(src, p: int | None = None, k: int = 1, F: GF | None = None,
               nvars: int | None = None) -> MultiForm:
    """Parse the text grammar or the JSON form into a MultiForm."""
    if F is None:
        if p is None:
            raise ValueError("a field (or p) is required")
        F = make_field(p, k)
    if not isinstance(src, str) or src.lstrip().startswith("["):
        return form_from_json(src, F, nvars)
    raw = _parse_terms(src)
    n = max((max(e, default=-1) for _, e, _ in raw), default=-1) + 1
    if nvars is not None:
        if n > nvars:
            raise ParseError(f"variable x{n - 1} exceeds {nvars} variables")
        n = nvars
    if n == 0:
        raise ParseError("a form needs at least one variable")
    terms, degree = {}, None
    for c, e, pos in raw:
        vec = tuple(e.get(j, 0) for j in range(n))
        if degree is None:
            degree = sum(vec)
        elif sum(vec) != degree:
            raise ParseError(f"inhomogeneous term of degree {sum(vec)} (expected {degree})",
                             pos)
        terms[vec] = F.add(terms.get(vec, 0), c % F.p)
    return MultiForm(F, n, degree, terms)


def point_to_json(F: GF, P) -> list:
    return [elem_to_json(F, x) for x in P]


def point_from_json(F: GF, data) -> tuple:
    return tuple(F.elem(c) if isinstance(c, list) else F.from_int(c) for c in data)


def pencil_to_json(P: Pencil) -> dict:
    return {"F": form_to_json(P.F), "G": form_to_json(P.G), "field": P.field.to_json()}


def pencil_from_json(data) -> Pencil:
    if isinstance(data, str):
        data = json.loads(data)
    F = field_from_json(data["field"])
    f = form_from_json(data["F"], F)
    g = form_from_json(data["G"], F, f.nvars, f.degree)
    return Pencil(f, g)
