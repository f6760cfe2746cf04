"""File formats: one JSON envelope, one payload shape per object kind.

Envelope: {"schema": "qc/1", "kind": ..., "payload": ...}.  Quantales are
either the name of a built-in ("ext_rational", "Q1", "Q2", "Q3", "chain4")
or a finite table object; elements serialize as element names for finite
quantales and as "p/q", "n", or "inf" for the extended rationals.  Every
emitted object re-parses to an equal value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .completion import CompletionSpace, filter_point_name
from .errors import StructureError
from .filters import Filter
from .quantale import (
    BUILTIN_QUANTALES,
    EXT_RATIONAL,
    ExtendedRationalQuantale,
    FiniteQuantale,
    ValueQuantale,
)
from .vspace import VSpace

SCHEMA = "qc/1"


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, no whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def envelope(kind: str, payload) -> dict:
    return {"schema": SCHEMA, "kind": kind, "payload": payload}


def parse_envelope(obj, expected_kind: str | None = None) -> tuple[str, dict]:
    if not isinstance(obj, dict):
        raise StructureError("expected a JSON object envelope")
    if obj.get("schema") != SCHEMA:
        raise StructureError(f"unknown schema tag {obj.get('schema')!r}; expected {SCHEMA!r}")
    kind = obj.get("kind")
    if not isinstance(kind, str):
        raise StructureError("envelope is missing its kind")
    if expected_kind is not None and kind != expected_kind:
        raise StructureError(f"expected a {expected_kind!r} file, found {kind!r}")
    if "payload" not in obj:
        raise StructureError("envelope is missing its payload")
    return kind, obj["payload"]


def loads_envelope(text: str, expected_kind: str | None = None) -> tuple[str, dict]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"bad JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return parse_envelope(obj, expected_kind)


# --- quantales --------------------------------------------------------------


def quantale_to_payload(q: ValueQuantale):
    if isinstance(q, ExtendedRationalQuantale):
        return "ext_rational"
    if isinstance(q, FiniteQuantale):
        return {
            "kind": "finite",
            "elements": list(q.names),
            "leq": [[bool(v) for v in row] for row in q._leq],
            "add": [[int(v) for v in row] for row in q._add],
        }
    raise StructureError(f"cannot serialize quantale {q!r}")


def parse_quantale(payload) -> ValueQuantale:
    if isinstance(payload, str):
        if payload in BUILTIN_QUANTALES:
            return BUILTIN_QUANTALES[payload]
        raise StructureError(
            f"unknown quantale name {payload!r}; known: {sorted(BUILTIN_QUANTALES)}"
        )
    if not isinstance(payload, dict):
        raise StructureError("quantale payload must be a name or an object")
    kind = payload.get("kind")
    if kind == "ext_rational":
        return EXT_RATIONAL
    if kind == "finite":
        for field in ("elements", "leq", "add"):
            if field not in payload:
                raise StructureError(f"finite quantale payload is missing {field!r}")
        return FiniteQuantale(payload["elements"], payload["leq"], payload["add"])
    raise StructureError(f"unknown quantale kind {kind!r}")


# --- spaces -----------------------------------------------------------------


def space_to_payload(space: VSpace) -> dict:
    q = space.quantale
    return {
        "quantale": quantale_to_payload(q),
        "points": list(space.points),
        "d": [[q.format(e) for e in row] for row in space.dmat],
    }


def parse_space(payload) -> VSpace:
    if not isinstance(payload, dict):
        raise StructureError("space payload must be an object")
    for field in ("quantale", "points", "d"):
        if field not in payload:
            raise StructureError(f"space payload is missing {field!r}")
    q = parse_quantale(payload["quantale"])
    rows = payload["d"]
    if not isinstance(rows, list):
        raise StructureError("space distances must be a matrix")
    dmat = [[q.parse(e) for e in row] for row in rows]
    return VSpace(q, payload["points"], dmat)


# --- filters ----------------------------------------------------------------


def filter_to_payload(f: Filter) -> dict:
    return {"space": space_to_payload(f.space), "core": list(f.core)}


def parse_filter(payload) -> Filter:
    if not isinstance(payload, dict) or "space" not in payload or "core" not in payload:
        raise StructureError("filter payload needs 'space' and 'core'")
    space = parse_space(payload["space"])
    return Filter(space, space.mask(payload["core"]))


# --- completions ------------------------------------------------------------


@dataclass(frozen=True)
class CompletionDoc:
    """Serializable view of a completion: the filter space, the cores of
    its points, and the base-point embedding."""

    space: VSpace
    cores: tuple
    embedding: dict

    def __eq__(self, other):
        return (
            isinstance(other, CompletionDoc)
            and self.space == other.space
            and self.cores == other.cores
            and self.embedding == other.embedding
        )


def completion_to_payload(comp: CompletionSpace) -> dict:
    return {
        "space": space_to_payload(comp.space),
        "points": [{"core": list(f.core)} for f in comp.filters],
        "embedding": {p: int(i) for p, i in sorted(comp.embedding.items())},
    }


def completion_doc_to_payload(doc: CompletionDoc) -> dict:
    return {
        "space": space_to_payload(doc.space),
        "points": [{"core": list(core)} for core in doc.cores],
        "embedding": {p: int(i) for p, i in sorted(doc.embedding.items())},
    }


def parse_completion(payload) -> CompletionDoc:
    if not isinstance(payload, dict):
        raise StructureError("completion payload must be an object")
    for field in ("space", "points", "embedding"):
        if field not in payload:
            raise StructureError(f"completion payload is missing {field!r}")
    space = parse_space(payload["space"])
    cores = tuple(tuple(entry["core"]) for entry in payload["points"])
    embedding = dict(payload["embedding"])
    for p, i in embedding.items():
        if not isinstance(i, int) or not 0 <= i < len(cores):
            raise StructureError(f"embedding index {i!r} for {p!r} out of range")
    return CompletionDoc(space, cores, embedding)


def completion_space_doc(comp: CompletionSpace) -> CompletionDoc:
    return CompletionDoc(
        comp.space,
        tuple(f.core for f in comp.filters),
        dict(comp.embedding),
    )


__all__ = [
    "SCHEMA",
    "CompletionDoc",
    "completion_doc_to_payload",
    "completion_space_doc",
    "completion_to_payload",
    "dumps_canonical",
    "envelope",
    "filter_point_name",
    "filter_to_payload",
    "loads_envelope",
    "parse_completion",
    "parse_envelope",
    "parse_filter",
    "parse_quantale",
    "parse_space",
    "quantale_to_payload",
    "space_to_payload",
]
