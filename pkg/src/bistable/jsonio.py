"""Shared JSON formats: complexes, systems, classes, traces.

Field order is fixed and floats are pre-rounded by the builders, so dumps
are byte-stable across runs (golden-file friendly).
"""

from __future__ import annotations

import json
from typing import Any

from .cells import CellComplex
from .gf2 import BitVector
from .systems import Classification, CouplingSystem


def complex_to_dict(x: CellComplex) -> dict:
    out: dict[str, Any] = {
        "vertices": x.n_vertices,
        "edges": [[u, v] for u, v in x.edges],
        "faces": [list(f) for f in x.faces],
    }
    if x.labels:
        out["labels"] = x.labels
    return out


def complex_from_dict(data: dict) -> CellComplex:
    return CellComplex.build(
        int(data["vertices"]),
        [tuple(e) for e in data.get("edges", [])],
        [tuple(f) for f in data.get("faces", [])],
        data.get("labels") or {},
    )


def system_to_dict(sys: CouplingSystem) -> dict:
    out: dict[str, Any] = {
        "complex": complex_to_dict(sys.complex),
        "constraint_edges": list(sys.constraint_edges),
        "coupling": [sys.coupling[e] for e in sys.constraint_edges],
    }
    if sys.twist is not None:
        out["twist"] = [sys.twist[e] for e in sys.constraint_edges]
    if sys.pinned:
        out["pinned"] = {str(v): sys.pinned[v] for v in sorted(sys.pinned)}
    return out


def system_from_dict(data: dict) -> CouplingSystem:
    x = complex_from_dict(data["complex"])
    return CouplingSystem.make(
        x,
        data["constraint_edges"],
        data["coupling"],
        data.get("twist"),
        {int(v): int(b) for v, b in (data.get("pinned") or {}).items()},
    )


def classification_to_dict(c: Classification) -> dict:
    out: dict[str, Any] = {
        "level": c.level,
        "detail": c.detail,
        "groups": c.groups,
    }
    if c.witness is not None:
        out["witness"] = list(c.witness)
    if c.sections is not None:
        out["sections"] = c.sections
    if c.relative is not None:
        out["relative_class"] = {
            "degree": c.relative.degree,
            "coordinates": c.relative.coordinates.to_list(),
            "representative_support": c.relative.representative.support(),
        }
    return out


def class_to_dict(degree: int, coordinates: BitVector, representative: BitVector) -> dict:
    return {
        "degree": degree,
        "coordinates": coordinates.to_list(),
        "representative_support": representative.support(),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def save(obj: Any, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def load(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)


def load_system(path: str) -> CouplingSystem:
    return system_from_dict(load(path))


def save_system(sys: CouplingSystem, path: str) -> None:
    save(system_to_dict(sys), path)
