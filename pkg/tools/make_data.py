"""Regenerate the JSON files shipped under src/confviz/data.

Run from the repository root:

    python3 tools/make_data.py

The Pappus blocks come out of the numeric collinearity scan and the polytope
coordinates out of the closed-form constructions, so nothing in the data
directory is hand-typed.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from confviz import jsonio  # noqa: E402
from confviz.pappus import derive_pappus_structure  # noqa: E402
from confviz.spatial import POLYTOPE_NAMES, reference_coordinates  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "confviz" / "data"


def freeze_pappus() -> None:
    c = derive_pappus_structure()
    obj = {
        "points": c.points,
        "blocks": [list(b) for b in c.blocks],
        "provenance": "pappus",
        "data_version": 1,
    }
    (DATA / "pappus_structure.json").write_text(jsonio.dumps(obj) + "\n", encoding="utf-8")
    print(f"pappus_structure.json: {len(c.blocks)} blocks")


def freeze_polytopes() -> None:
    obj = {"data_version": 1, "polytopes": {}}
    for name in POLYTOPE_NAMES:
        coords = reference_coordinates(name)
        obj["polytopes"][name] = [[float(x) for x in row] for row in coords]
    (DATA / "polytopes.json").write_text(jsonio.dumps(obj) + "\n", encoding="utf-8")
    print(f"polytopes.json: {', '.join(POLYTOPE_NAMES)}")


if __name__ == "__main__":
    DATA.mkdir(parents=True, exist_ok=True)
    freeze_pappus()
    freeze_polytopes()
