"""Canonical JSON and CSV forms of a character table.

Document layout::

    {"characters": [{"degree": 2, "provenance": {...}, "values": [[c0, .., c_{N-1}], ...]}, ...],
     "classes": [{"rep": [[coeffs of a], [coeffs of b], ...], "size": 4}, ...],
     "metadata": {...}}

Field elements are written as little-endian coefficient lists of length m,
cyclotomic values as canonical length-N coefficient lists.  Keys are sorted,
separators fixed and there are no floats, so the bytes depend only on the
input parameters.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .construct import CharacterTable
from .cyclotomic import CycloNum, coord_dim
from .groups import ParameterError, SuzukiGroup, make_group

FORMAT = "suzuki-chars-table/1"


class DocumentError(ValueError):
    """A stored document is malformed or inconsistent with its metadata."""


def metadata(G: SuzukiGroup) -> dict:
    F = G.ctx
    return {
        "format": FORMAT,
        "family": G.family,
        "p": G.p,
        "m": G.m,
        "l": G.l,
        "epsilon": None if G.family == "A" else list(F.coeffs(G.eps)),
        "modulus": list(F.modulus),
        "root_order": G.root_order,
        "order": G.order,
        "n": G.n,
        "k": G.k,
        "vz": bool(G.vz),
    }


def _canonical_rows(N: int, values: np.ndarray) -> np.ndarray:
    """(..., D) coordinates -> (..., N) canonical coefficient vectors."""
    pad = np.zeros(values.shape[:-1] + (N - values.shape[-1],), dtype=np.int64)
    return np.concatenate([values.astype(np.int64), pad], axis=-1)


def to_document(table: CharacterTable) -> dict:
    G = table.group
    F = G.ctx
    reps = np.asarray(table.class_reps)
    classes = [
        {"rep": [list(F.coeffs(int(x))) for x in row], "size": int(s)}
        for row, s in zip(reps, table.class_sizes)
    ]
    vals = _canonical_rows(table.N, np.asarray(table.values))
    chars = [
        {"degree": int(d), "provenance": prov, "values": row.tolist()}
        for d, prov, row in zip(table.degrees, table.provenance, vals)
    ]
    return {"metadata": metadata(G), "classes": classes, "characters": chars}


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def to_json(table: CharacterTable) -> str:
    return dumps_json(to_document(table))


def to_csv(table: CharacterTable) -> str:
    """One row per character, one column per class."""
    N = table.N
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    reps = np.asarray(table.class_reps)
    w.writerow(["character", "degree"] + [":".join(str(int(x)) for x in row) for row in reps])
    w.writerow(["class_size", ""] + [int(s) for s in table.class_sizes])
    for i, (d, row) in enumerate(zip(table.degrees, np.asarray(table.values))):
        cells = [CycloNum.from_coords(N, c.tolist()).render() for c in row]
        w.writerow([i, int(d)] + cells)
    return buf.getvalue()


# -- reading ---------------------------------------------------------------------


def _need(d: dict, key: str, kind):
    if not isinstance(d, dict) or key not in d:
        raise DocumentError(f"missing field {key!r}")
    val = d[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise DocumentError(f"field {key!r} must be an integer")
    if kind is not int and not isinstance(val, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return val


def group_from_metadata(meta: dict) -> SuzukiGroup:
    family = _need(meta, "family", str)
    p, m, l = _need(meta, "p", int), _need(meta, "m", int), _need(meta, "l", int)
    eps = meta.get("epsilon")
    modulus = meta.get("modulus")
    try:
        return make_group(family, p, m, l, eps, modulus)
    except (ParameterError, ValueError) as e:
        raise DocumentError(f"metadata does not describe a valid group: {e}") from e


def from_document(doc: dict) -> CharacterTable:
    """Rebuild a table from a document (values are taken as stored)."""
    meta = _need(doc, "metadata", dict)
    G = group_from_metadata(meta)
    F = G.ctx
    N = G.root_order
    if meta.get("root_order", N) != N:
        raise DocumentError(f"root_order {meta.get('root_order')} does not match the group ({N})")
    classes = _need(doc, "classes", list)
    chars = _need(doc, "characters", list)
    K = len(classes)
    try:
        reps = np.array([[F.from_coeffs(c) for c in _need(cl, "rep", list)] for cl in classes], dtype=np.int64)
        sizes = np.array([_need(cl, "size", int) for cl in classes], dtype=np.int64)
        vals = np.array([_need(ch, "values", list) for ch in chars], dtype=np.int64)
    except (TypeError, ValueError) as e:
        if isinstance(e, DocumentError):
            raise
        raise DocumentError(f"malformed class or value data: {e}") from e
    if reps.shape != (K, G.ncoords):
        raise DocumentError(f"class representatives must have {G.ncoords} coordinates")
    if vals.shape != (len(chars), K, N):
        raise DocumentError(f"values must form a {len(chars)} x {K} array of length-{N} lists")
    D = coord_dim(N)
    if N == 4:
        canon = vals[..., 2:] == 0
    else:
        canon = vals[..., N - 1:] == 0
    if not canon.all():
        raise DocumentError("values are not in canonical form")
    prov = [ch.get("provenance", {}) for ch in chars]
    return CharacterTable(G, reps, sizes, np.ascontiguousarray(vals[..., :D]), prov)


def loads_json(text: str) -> CharacterTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from e
    return from_document(doc)
