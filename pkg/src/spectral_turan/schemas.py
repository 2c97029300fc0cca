"""Access to the JSON schemas that describe every machine-readable output."""

from __future__ import annotations

import json
from importlib import resources

SCHEMA_NAMES = ("graph", "spectral", "detect", "search-report", "climb", "stability-report", "table")


def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"unknown schema {name!r}; known: {', '.join(SCHEMA_NAMES)}")
    path = resources.files("spectral_turan").joinpath("schemas", f"{name}.json")
    return json.loads(path.read_text())
