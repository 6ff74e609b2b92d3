"""Command-line frontend.

    ffbertini verify CLAIM [--q Q] [--d D] [--samples N] ...
    ffbertini search line|common|blocking|extension ...
    ffbertini construct katz|singular|conic-cover|nodal|cuspidal ...
    ffbertini count FORM --p P [--k K]
    ffbertini check line|plane FORM --at COORDS --p P [--k K]
    ffbertini explore --q Q --d D [--budget B]

Exit codes: 0 verified/found, 1 falsified/not found, 2 usage error,
3 budget exceeded or inconclusive.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .constructions import (
    ConstructionError,
    conic_cover,
    cuspidal_cubic,
    katz_surface,
    nodal_cubic,
    singular_family,
)
from .gf import GF, make_field
from .projgeom import BudgetExceeded, count_points
from .search import (
    CLAIMS,
    explore_conjecture25,
    field_for,
    find_transverse_line,
    is_blocking_collection,
    min_extension_for_success,
    pencil_common_transverse,
    verify,
)
from .serialize import (
    ParseError,
    field_from_json,
    form_from_json,
    form_to_json,
    parse_form,
    pencil_from_json,
    point_to_json,
)
from .transversal import is_transverse_hyperplane_P3, is_transverse_line

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_EXIT = {"verified": EXIT_OK, "found": EXIT_OK, "falsified": EXIT_FAIL,
         "not_found": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


# -- inputs -----------------------------------------------------------------------------


def _fixture_path(name: str) -> Path | None:
    p = Path(name)
    if p.is_file():
        return p
    base = resources.files("ffbertini") / "fixtures"
    for stem in (p.name, p.name + ".json"):
        ref = base / stem
        if ref.is_file():
            return Path(str(ref))
    return None


def _load_json(arg: str):
    path = _fixture_path(arg)
    if path is not None:
        return json.loads(path.read_text())
    try:
        return json.loads(arg)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{arg!r} is neither a file, a fixture name nor JSON") from exc


def _field(args) -> GF:
    if args.q is not None:
        return field_for(args.q)
    if args.p is None:
        raise UsageError("a field is required: --q Q or --p P [--k K]")
    return make_field(args.p, args.k)


def _form(arg: str, args):
    """A form given as text, as JSON, or as a fixture file holding one form."""
    path = _fixture_path(arg)
    if path is not None:
        data = json.loads(path.read_text())
        F = field_from_json(data["field"])
        return form_from_json(data["form"], F)
    return parse_form(arg, F=_field(args))


def _coords(text: str, F: GF):
    try:
        return tuple(F.from_int(int(x)) for x in text.strip("[]() ").split(","))
    except ValueError as exc:
        raise UsageError(f"bad coordinates {text!r}") from exc


def _curves(arg: str):
    data = _load_json(arg)
    if not {"forms", "field"} <= set(data):
        raise UsageError(f"{arg!r} does not hold a curve collection (keys forms, field)")
    F = field_from_json(data["field"])
    return [form_from_json(f, F) for f in data["forms"]], F


def _pencil(arg: str):
    data = _load_json(arg)
    data = data.get("pencil", data)
    if not {"F", "G", "field"} <= set(data):
        raise UsageError(f"{arg!r} does not hold a pencil (keys F, G, field)")
    return pencil_from_json(data)


# -- commands ---------------------------------------------------------------------------


def _cmd_verify(args):
    params = {}
    for key in ("q", "d", "samples", "ext"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    if args.N is not None:
        params["N"] = args.N
    if args.claim in ("prop33", "extension_probe"):
        params["jobs"] = args.jobs
    try:
        rep = verify(args.claim, seed=args.seed, **params)
    except TypeError as exc:
        raise UsageError(f"bad parameters for {args.claim}: {exc}") from exc
    return rep.result, rep.params, rep.witness, rep.counts


def _cmd_search(args):
    kind = args.kind
    if kind == "line":
        C = _form(args.form, args)
        first, n = find_transverse_line(C)
        res = "found" if first else "not_found"
        return res, {"form": form_to_json(C), "field": C.field.to_json()}, \
            first and {"line": point_to_json(C.field, first)}, {"transverse_lines": n}
    if kind == "blocking":
        curves, F = _curves(args.form)
        blocking, common = is_blocking_collection(curves)
        witness = {"line": point_to_json(F, common[0])} if common else None
        return ("found" if blocking else "not_found"), {"curves": len(curves), "q": F.q}, \
            witness, {"common_transverse": len(common)}
    P = _pencil(args.pencil or args.form)
    F = P.field
    if kind == "common":
        r = pencil_common_transverse(P, ext=args.ext or 1, jobs=args.jobs, budget=args.budget)
        if r.hyperplane is not None and not r.certified:
            res = "inconclusive"
        else:
            res = "found" if r.hyperplane is not None else "not_found"
        witness = None if r.hyperplane is None else {
            "hyperplane": point_to_json(r.field, r.hyperplane), "field": r.field.to_json()}
        return res, {"q": F.q, "ext": args.ext or 1}, witness, {
            "hyperplanes": r.candidates, "common_transverse": r.successes,
            "certified": r.certified}
    if kind == "extension":
        probe = min_extension_for_success(P, cap=args.ext or 3, jobs=args.jobs,
                                          budget=args.budget)
        res = "found" if probe.m else ("inconclusive" if probe.inconclusive else "not_found")
        return res, {"q": F.q, "cap": args.ext or 3}, {"m": probe.m}, {"per_m": probe.stats}
    raise UsageError(f"unknown search {kind!r}")


def _cmd_construct(args):
    F = _field(args)
    what = args.what
    if what == "katz":
        X = katz_surface(F)
        return "found", {"q": F.q}, {"form": form_to_json(X)}, {"terms": len(X.terms)}
    if what in ("nodal", "cuspidal"):
        C = (nodal_cubic if what == "nodal" else cuspidal_cubic)(F)
        return "found", {"q": F.q}, {"form": form_to_json(C)}, {"terms": len(C.terms)}
    if what == "singular":
        if args.d is None:
            raise UsageError("--d is required")
        fam = singular_family(F, args.d)
        return "found", {"q": F.q, "d": args.d}, {
            "forms": [form_to_json(C) for C in fam.curves],
            "points": [list(P) for P in fam.meta["points"]]}, {"curves": len(fam)}
    if what == "conic-cover":
        try:
            fam = conic_cover(F, args.seed)
        except ConstructionError as exc:
            return "not_found", {"q": F.q}, {"error": str(exc)}, {}
        return "found", {"q": F.q}, {
            "conics": [form_to_json(C) for C in fam.curves],
            "duals": [form_to_json(C) for C in fam.duals],
            "P1": fam.meta["P1"], "P4": fam.meta["P4"]}, {"members": len(fam)}
    raise UsageError(f"unknown construction {what!r}")


def _cmd_count(args):
    f = _form(args.form, args)
    n = count_points(f, budget=args.budget)
    return "found", {"form": form_to_json(f), "field": f.field.to_json()}, None, {"points": n}


def _cmd_check(args):
    f = _form(args.form, args)
    F = f.field
    H = _coords(args.at, F)
    if args.kind == "line":
        v = is_transverse_line(f, H)
    else:
        v = is_transverse_hyperplane_P3(f, H, budget=args.budget)
    res = "found" if v.transverse else "not_found"
    if v.transverse and not v.certified:
        res = "inconclusive"
    return res, {"form": form_to_json(f), "at": list(H), "field": F.to_json()}, \
        v.to_json(), {}


def _cmd_explore(args):
    F = _field(args)
    if args.d is None:
        raise UsageError("--d is required")
    out = explore_conjecture25(F, args.d, budget=args.budget or 100, seed=args.seed)
    return "inconclusive", {"q": F.q, "d": args.d}, {
        "family": [form_to_json(C) for C in out["family"]]}, {
        "blocked": out["blocked"], "lines": out["lines"],
        "fully_blocking": out["fully_blocking"], "trajectory": out["trajectory"]}


_COMMANDS = {"verify": _cmd_verify, "search": _cmd_search, "construct": _cmd_construct,
             "count": _cmd_count, "check": _cmd_check, "explore": _cmd_explore}


# -- output -----------------------------------------------------------------------------


def _plain(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, (tuple, set, frozenset)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, default=_plain, sort_keys=True) + "\n"
    buf = io.StringIO()
    counts = report.get("counts") or {}
    keys = sorted(counts)
    header = ["command", "result", "seed", "params", *keys]
    row = [report["command"], report["result"], report["seed"],
           json.dumps(report["params"], default=_plain, sort_keys=True)]
    row += [v if isinstance(v, (int, float, str)) else
            json.dumps(v, default=_plain, sort_keys=True) for v in (counts[k] for k in keys)]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerow(row)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--d", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int)
    common.add_argument("--ext", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out")

    ap = argparse.ArgumentParser(prog="ffbertini", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification driver")
    v.add_argument("claim", choices=sorted(CLAIMS))

    s = sub.add_parser("search", parents=[common], help="transverse line/plane searches")
    s.add_argument("kind", choices=["line", "common", "blocking", "extension"])
    s.add_argument("form", nargs="?", help="form, curve-family file, or pencil file")
    s.add_argument("--pencil")

    c = sub.add_parser("construct", parents=[common], help="explicit constructions")
    c.add_argument("what", choices=["katz", "singular", "conic-cover", "nodal", "cuspidal"])

    n = sub.add_parser("count", parents=[common], help="count F_q-points of a form")
    n.add_argument("form")

    k = sub.add_parser("check", parents=[common], help="transversality at one hyperplane")
    k.add_argument("kind", choices=["line", "plane"])
    k.add_argument("form")
    k.add_argument("--at", required=True, help="comma-separated coordinates")

    sub.add_parser("explore", parents=[common], help="random search for smooth blocking families")
    return ap


def dispatch(args) -> tuple[int, dict]:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    t0 = time.perf_counter()
    try:
        result, params, witness, counts = _COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        result, params, witness, counts = "inconclusive", {}, {"budget": str(exc)}, {}
    name = args.command
    sub = getattr(args, "claim", None) or getattr(args, "kind", None) or getattr(args, "what", None)
    if sub:
        name = f"{name} {sub}"
    report = {"command": name, "params": params, "result": result, "witness": witness,
              "counts": counts, "seed": args.seed,
              "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
              "version": __version__}
    return _EXIT[result], report


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, report = dispatch(args)
    except (UsageError, ParseError, ValueError, KeyError) as exc:
        print(f"ffbertini: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
