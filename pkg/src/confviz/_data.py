"""Access to JSON files shipped under confviz/data."""

from __future__ import annotations

import json
from importlib import resources


def load_packaged_json(name: str):
    path = resources.files("confviz").joinpath("data", name)
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)
