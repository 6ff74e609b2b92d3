"""Hot loops behind a backend switch.

The compiled extension (``_ckernels``) is used when it was built; otherwise
the pure-Python twin in ``_pykernels`` is selected at import.  Set
``FFBERTINI_KERNELS=python`` to force the fallback, or call ``use_backend``.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = [
    "BACKEND",
    "available_backends",
    "use_backend",
    "backend",
    "eval_form",
    "restrict_form",
    "classify_binary",
    "pencil_line_status",
    "ZERO",
    "SQUAREFREE",
    "REPEATED",
]

ZERO, SQUAREFREE, REPEATED = 0, 1, 2


def available_backends():
    return ["cython", "python"] if _ckernels is not None else ["python"]


def _pick(name):
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        return _ckernels
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


_requested = os.environ.get("FFBERTINI_KERNELS", "").strip().lower()
if _requested in ("python", "cython"):
    BACKEND = _requested
else:
    BACKEND = "cython" if _ckernels is not None else "python"
_impl = _pick(BACKEND)


def use_backend(name: str):
    global _impl, BACKEND
    _impl = _pick(name)
    BACKEND = name


@contextmanager
def backend(name: str):
    old = BACKEND
    use_backend(name)
    try:
        yield
    finally:
        use_backend(old)


def _tabs(F):
    exp, log, zech = F.tables()
    return F.p, F.q, exp, log, zech


def _form_arrays(f):
    items = list(f.terms.items())
    if not items:
        return (np.zeros((0, f.nvars), dtype=np.int64), np.zeros(0, dtype=np.int64))
    exps = np.ascontiguousarray([e for e, _ in items], dtype=np.int64)
    coeffs = np.ascontiguousarray([c for _, c in items], dtype=np.int64)
    return exps, coeffs


def _arr(a, ndim):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array")
    return a


def eval_form(f, pts):
    """Values of the form f at the rows of pts (coordinates in f.field)."""
    exps, coeffs = _form_arrays(f)
    return _impl.eval_form(exps, coeffs, _arr(pts, 2), *_tabs(f.field))


def restrict_form(f, P, Q):
    """Binary restrictions f(uP_i + vQ_i), one row of d+1 coefficients per i."""
    exps, coeffs = _form_arrays(f)
    return _impl.restrict_form(exps, coeffs, _arr(P, 2), _arr(Q, 2), f.degree,
                               *_tabs(f.field))


def classify_binary(F, B):
    """Per row: ZERO, SQUAREFREE (d distinct roots) or REPEATED."""
    return _impl.classify_binary(_arr(B, 2), *_tabs(F))


def pencil_line_status(F, BF, BG, params):
    """For each line, how many members sF + tG are not transverse to it."""
    params = np.asarray(params, dtype=np.int64).reshape(-1, 2)
    S = np.ascontiguousarray(params[:, 0])
    T = np.ascontiguousarray(params[:, 1])
    return _impl.pencil_line_status(_arr(BF, 2), _arr(BG, 2), S, T, *_tabs(F))
