"""The fixture corpus: deterministic JSON files under ffbertini/fixtures."""
from __future__ import annotations

import json
import random
from importlib import resources
from pathlib import Path

from .constructions import conic_cover, cuspidal_cubic, katz_surface, nodal_cubic, singular_family
from .search import field_for, random_T_conic_pencil
from .serialize import form_to_json, pencil_to_json

__all__ = ["build_corpus", "fixture_dir", "load_fixture", "write_corpus"]


def _form(name, f):
    return {"kind": "form", "name": name, "field": f.field.to_json(), "form": form_to_json(f)}


def build_corpus() -> dict[str, dict]:
    out = {}
    for q in (2, 3):
        out[f"katz_{q}.json"] = _form(f"katz q={q}", katz_surface(field_for(q)))
    F13 = field_for(13)
    out["nodal_cubic_13.json"] = _form("nodal cubic", nodal_cubic(F13))
    out["cuspidal_cubic_13.json"] = _form("cuspidal cubic", cuspidal_cubic(F13))
    for q, d in ((2, 2), (3, 2), (3, 3), (5, 2)):
        fam = singular_family(field_for(q), d)
        out[f"singular_family_{q}_{d}.json"] = {
            "kind": "family", "name": f"singular family q={q} d={d}",
            "field": fam.field.to_json(), "forms": [form_to_json(C) for C in fam.curves],
            "points": [list(P) for P in fam.meta["points"]]}
    for q in (5, 17, 19):
        P = random_T_conic_pencil(field_for(q), random.Random(0))
        out[f"conic_pencil_{q}.json"] = {"kind": "pencil", "name": f"seeded conic pencil q={q}",
                                         "seed": 0, "pencil": pencil_to_json(P)}
    for q in (3, 5, 7):
        fam = conic_cover(field_for(q), 0)
        out[f"conic_cover_{q}.json"] = {
            "kind": "family", "name": f"dual conic cover q={q}", "seed": 0,
            "field": fam.field.to_json(), "forms": [form_to_json(C) for C in fam.duals],
            "conics": [form_to_json(C) for C in fam.curves],
            "P1": fam.meta["P1"], "P1_field": fam.meta["P1_field"], "P4": fam.meta["P4"]}
    return out


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def fixture_dir() -> Path:
    return Path(str(resources.files("ffbertini") / "fixtures"))


def load_fixture(name: str):
    return json.loads((fixture_dir() / name).read_text())


def write_corpus(target: Path | None = None) -> list[str]:
    target = target or fixture_dir()
    target.mkdir(parents=True, exist_ok=True)
    names = []
    for name, data in build_corpus().items():
        (target / name).write_text(dumps(data))
        names.append(name)
    return names


if __name__ == "__main__":
    print("\n".join(write_corpus()))
