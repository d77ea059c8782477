"""JSON forms of subalgebras and verdicts."""
from __future__ import annotations

import json
from typing import Optional

from .algebra import build_algebra
from .field import Field
from .liestruct import GradedSubalgebra

FORMAT = "superstructure/subalgebra-1"


def ambient_json(amb) -> dict:
    return {
        "series": amb.series,
        "n": amb.n,
        "split": list(amb.split) if amb.split is not None else None,
        "field": amb.field.p,
        "dims": {str(d): amb.dim(d) for d in amb.degrees},
    }


def subalgebra_to_json(s: GradedSubalgebra, with_basis: bool = True) -> dict:
    amb = s.ambient
    out = {
        "format": FORMAT,
        "ambient": ambient_json(amb),
        "name": s.name,
        "note": s.note,
        "dims": {str(d): s.dim(d) for d in s.degrees()},
        "sdim": list(s.sdim()),
        "components": {str(d): [list(r) for r in rows] for d, rows in s.components.items()},
    }
    if with_basis:
        out["basis"] = {str(d): s.basis_strings(d) for d in s.degrees()}
    return out


def subalgebra_from_json(data: dict) -> GradedSubalgebra:
    if data.get("format") != FORMAT:
        raise ValueError(f"not a serialized subalgebra (format {data.get('format')!r})")
    a = data["ambient"]
    split = tuple(a["split"]) if a["split"] is not None else None
    amb = build_algebra(a["series"], a["n"], Field(a["field"]), split)
    comps = {int(d): [tuple(r) for r in rows] for d, rows in data["components"].items()}
    s = GradedSubalgebra(amb, comps, data.get("name", ""), data.get("note", ""))
    for d, rows in s.components.items():
        if any(len(r) != amb.dim(d) for r in rows):
            raise ValueError(f"degree {d}: row length does not match the ambient")
    return s


def dumps(obj, indent: Optional[int] = 2) -> str:
    """Deterministic JSON text (sorted keys)."""
    if isinstance(obj, GradedSubalgebra):
        obj = subalgebra_to_json(obj)
    elif hasattr(obj, "to_json"):
        obj = obj.to_json()
    return json.dumps(obj, indent=indent, sort_keys=True, ensure_ascii=False, default=str)


def loads_subalgebra(text: str) -> GradedSubalgebra:
    return subalgebra_from_json(json.loads(text))
