"""Baca/tulis JSON (schema ``cvk/1``) untuk sistem Coxeter, polytope, dan report.

Wrapper ini menstandarkan akses input: path file, ``fixture:<name>`` atau
``diagram:<name>``. Semua kegagalan parse dilempar sebagai ``ParseError`` (exit 2)
dengan ``locus`` yang menunjuk field bermasalah.

Usage:
    from cvk.io import load_input, polytope_to_dict
    loaded = load_input("fixture:triangle-237")
    payload = polytope_to_dict(loaded.polytope)
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.catalog import FIXTURES, diagram, fixture
from cvk.coxsys import CoxeterSystem, build_system, label_from_json
from cvk.polytope import MirrorPolytope, build_mirror_polytope, cartan_simplex, tits_simplex
from utils.errors import ParseError
from utils.mlogger import logger

log = logger.bind(module="io")

SCHEMA = "cvk/1"


@dataclass(frozen=True, eq=False)
class LoadedInput:
    name: str
    polytope: MirrorPolytope | None
    system: CoxeterSystem | None
    peripherals: tuple[str, ...] | None = None

    def require_polytope(self) -> MirrorPolytope:
        if self.polytope is None:
            raise ParseError(f"input {self.name!r} is a Coxeter system, a polytope is needed",
                             locus={"input": self.name})
        return self.polytope


def envelope(kind: str, payload: dict[str, Any]) -> dict[str, Any]:
    return {"schema": SCHEMA, "kind": kind, **payload}


def polytope_to_dict(poly: MirrorPolytope) -> dict[str, Any]:
    return envelope("polytope", {
        "dim": poly.dim,
        "facets": [
            {"name": n, "alpha": a.tolist(), "v": v.tolist()}
            for n, a, v in zip(poly.names, poly.alphas, poly.vectors, strict=True)
        ],
    })


def system_to_dict(sys: CoxeterSystem, peripherals: tuple[str, ...] | None = None) -> dict[str, Any]:
    payload = sys.to_dict()
    if peripherals is not None:
        payload["peripherals"] = list(peripherals)
    return envelope("coxeter-system", payload)


def _field(data: dict[str, Any], key: str) -> Any:
    try:
        return data[key]
    except KeyError:
        raise ParseError(f"missing field {key!r}", locus={"field": key}) from None


def polytope_from_dict(data: dict[str, Any], *, tol: Tolerance = DEFAULT_TOLERANCE) -> MirrorPolytope:
    facets = _field(data, "facets")
    if not isinstance(facets, list) or not facets:
        raise ParseError("'facets' must be a non-empty list", locus={"field": "facets"})
    try:
        pairs = [(np.asarray(f["alpha"], dtype=float), np.asarray(f["v"], dtype=float)) for f in facets]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad facet entry: {e}", locus={"field": "facets"}) from e
    names = [str(f.get("name", k + 1)) for k, f in enumerate(facets)]
    raw_dim = data.get("dim", len(pairs[0][0]) - 1)
    if isinstance(raw_dim, float) and raw_dim.is_integer():
        raw_dim = int(raw_dim)
    if isinstance(raw_dim, bool) or not isinstance(raw_dim, int):
        raise ParseError(f"'dim' must be an integer, got {raw_dim!r}", locus={"field": "dim"})
    return build_mirror_polytope(raw_dim, pairs, names=names, tol=tol)


def system_from_dict(data: Any) -> tuple[CoxeterSystem, tuple[str, ...] | None]:
    if not isinstance(data, dict):
        raise ParseError("Coxeter system must be an object", locus={"field": "coxeter"})
    generators = _field(data, "generators")
    raw = _field(data, "labels")
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        raise ParseError("'labels' must be a matrix", locus={"field": "labels"})
    labels = [[label_from_json(m) for m in row] for row in raw]
    system = build_system(generators, labels)
    peripherals = data.get("peripherals")
    return system, None if peripherals is None else tuple(str(p) for p in peripherals)


def _document_kind(data: dict[str, Any]) -> str:
    """``kind`` if given, otherwise read off the keys of a bare document."""
    if "kind" in data:
        return data["kind"]
    if "coxeter" in data:
        return "tits-simplex"
    if "generators" in data or "labels" in data:
        return "coxeter-system"
    if "matrix" in data:
        return "cartan"
    return "polytope"


def parse_document(data: Any, name: str, *, tol: Tolerance = DEFAULT_TOLERANCE) -> LoadedInput:
    """Dispatch on ``kind`` or, without it, on the keys present.

    Bare shapes: ``{"facets": ...}`` is a polytope, ``{"generators", "labels"}``
    a Coxeter system and ``{"coxeter": <system>}`` its Tits simplex.
    """
    if not isinstance(data, dict):
        raise ParseError("top-level JSON must be an object", locus={"input": name})
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}", locus={"schema": schema})
    kind = _document_kind(data)
    match kind:
        case "polytope":
            return LoadedInput(name, polytope_from_dict(data, tol=tol), None)
        case "tits-simplex":
            system, peripherals = system_from_dict(_field(data, "coxeter"))
            return LoadedInput(name, tits_simplex(system, tol=tol), system, peripherals)
        case "coxeter-system":
            system, peripherals = system_from_dict(data)
            return LoadedInput(name, None, system, peripherals)
        case "cartan":
            matrix = np.asarray(_field(data, "matrix"), dtype=float)
            return LoadedInput(name, cartan_simplex(matrix, names=data.get("names"), tol=tol), None)
    raise ParseError(f"unknown kind {kind!r}", locus={"kind": kind})


def load_input(source: str, *, tol: Tolerance = DEFAULT_TOLERANCE) -> LoadedInput:
    """Load ``fixture:<name>``, ``diagram:<name>`` or a JSON file.

    Raises:
        ParseError: the file is missing or not valid JSON.
        ValidationError: the content fails validation.
    """
    if source.startswith("fixture:"):
        name = source.removeprefix("fixture:")
        built = fixture(name)
        peripherals = FIXTURES[name].peripherals
        if isinstance(built, MirrorPolytope):
            return LoadedInput(name, built, None)
        return LoadedInput(name, None, built, peripherals)
    if source.startswith("diagram:"):
        name = source.removeprefix("diagram:")
        system = diagram(name)
        return LoadedInput(name, tits_simplex(system, tol=tol), system)

    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}", locus={"path": str(path)}) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e.msg}", locus={"line": e.lineno, "column": e.colno}) from e
    log.debug(f"loaded {path}")
    return parse_document(data, path.stem, tol=tol)


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, default=_json_default) + "\n"


def _json_default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


__all__ = [
    "SCHEMA",
    "LoadedInput",
    "dumps",
    "envelope",
    "load_input",
    "parse_document",
    "polytope_from_dict",
    "polytope_to_dict",
    "system_from_dict",
    "system_to_dict",
]
