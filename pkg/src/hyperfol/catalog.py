"""Catalog of symmetric spaces: root data, Killing scale and optional realization."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .rootsys import RootSystem, build_root_system

ENV_VAR = "HYPERFOL_CATALOG"

ENTRY_SCHEMA = {
    "type": "object",
    "required": ["name", "root_type", "rank", "multiplicities"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "pattern": "^[A-Za-z0-9_]+$"},
        "description": {"type": "string"},
        "root_type": {"enum": ["A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "BC"]},
        "rank": {"type": "integer", "minimum": 1},
        "multiplicities": {
            "type": "object",
            "required": ["short", "long"],
            "additionalProperties": False,
            "properties": {
                "short": {"type": "integer", "minimum": 1},
                "long": {"type": "integer", "minimum": 1},
                "doubled": {"type": "integer", "minimum": 1},
            },
        },
        "realization": {"type": "string"},
        "killing_scale": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "k0_dim": {"type": "integer", "minimum": 0},
    },
}
CATALOG_SCHEMA = {"type": "array", "items": ENTRY_SCHEMA}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    root_type: str
    rank: int
    multiplicities: tuple[tuple[str, int], ...]
    realization: str | None = None
    killing_scale: Fraction | None = None
    k0_dim: int | None = None
    description: str = ""

    def root_system(self) -> RootSystem:
        return _root_system(self)

    def realize(self):
        """(algebra, decomposition) with the declared root data enforced."""
        return _realize(self)


@lru_cache(maxsize=None)
def _root_system(entry: CatalogEntry) -> RootSystem:
    mult = dict(entry.multiplicities)
    if entry.root_type != "BC":
        mult.pop("doubled", None)
    scale = entry.killing_scale if entry.killing_scale is not None else Fraction(1)
    return build_root_system(entry.root_type, entry.rank, mult, scale, entry.k0_dim)


@lru_cache(maxsize=None)
def _realize(entry: CatalogEntry):
    from .matrixlie import REALIZATIONS, restricted_root_decomposition
    if entry.realization is None:
        raise CatalogError(f"{entry.name} has no bundled realization")
    if entry.realization not in REALIZATIONS:
        raise CatalogError(f"unknown realization {entry.realization!r}")
    g = REALIZATIONS[entry.realization]()
    return g, restricted_root_decomposition(g, entry.root_system())


def catalog_path() -> Path | None:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def _parse(raw) -> dict[str, CatalogEntry]:
    try:
        jsonschema.validate(raw, CATALOG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise CatalogError(f"catalog does not match the schema: {exc.message}") from exc
    out = {}
    for item in raw:
        if item["name"] in out:
            raise CatalogError(f"duplicate catalog entry {item['name']}")
        scale = None
        if "killing_scale" in item:
            num, den = item["killing_scale"]
            if num <= 0 or den <= 0:
                raise CatalogError(f"{item['name']}: killing_scale must be positive")
            scale = Fraction(num, den)
        entry = CatalogEntry(item["name"], item["root_type"], item["rank"],
                             tuple(sorted(item["multiplicities"].items())), item.get("realization"),
                             scale, item.get("k0_dim"), item.get("description", ""))
        try:
            entry.root_system()
        except ValueError as exc:
            raise CatalogError(f"{item['name']}: {exc}") from exc
        out[entry.name] = entry
    return out


def load_catalog(path: str | Path | None = None) -> dict[str, CatalogEntry]:
    """Read and validate a catalog; defaults to $HYPERFOL_CATALOG or the bundled file."""
    path = Path(path) if path is not None else catalog_path()
    if path is None:
        text = resources.files("hyperfol").joinpath("data/catalog.json").read_text()
    else:
        try:
            text = path.read_text()
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    return _parse(raw)


def get_entry(name: str, path: str | Path | None = None) -> CatalogEntry:
    cat = load_catalog(path)
    if name not in cat:
        raise CatalogError(f"unknown space {name!r}; known: {', '.join(cat)}")
    return cat[name]
