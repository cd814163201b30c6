"""JSON cap files.

A cap file records the field (p, k, q, modulus coefficients), the form
identifier, and the member points as normalized homogeneous coordinate
4-tuples of element encodings, sorted by point id.  Serialization is
canonical (sorted keys, fixed separators), so parse(serialize(cap)) is
byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import CapFileError
from .hermitian import SurfaceModel, is_cap, normalize_point

FORM_ID = "diagonal"


def cap_payload(model: SurfaceModel, ids) -> dict:
    ids = sorted(int(x) for x in ids)
    spec = model.field.spec
    return {
        "q": spec.q,
        "p": spec.p,
        "k": spec.k,
        "modulus": list(model.field.modulus),
        "form": FORM_ID,
        "points": [list(model.coords_of(i)) for i in ids],
    }


def serialize_cap(model: SurfaceModel, ids) -> bytes:
    payload = cap_payload(model, ids)
    return (json.dumps(payload, sort_keys=True, separators=(",", ": ")) + "\n").encode()


def write_cap(path, model: SurfaceModel, ids) -> None:
    Path(path).write_bytes(serialize_cap(model, ids))


def read_cap(path) -> dict:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CapFileError(f"capfile-unreadable: {exc}") from exc
    for key in ("q", "p", "k", "modulus", "form", "points"):
        if key not in payload:
            raise CapFileError(f"capfile-missing-field: {key}")
    return payload


def resolve_cap(model: SurfaceModel, payload: dict) -> np.ndarray:
    """Validate a parsed cap file against a model and return sorted PointIds.

    Raises CapFileError naming the first violated invariant.
    """
    spec = model.field.spec
    if (payload["p"], payload["k"], payload["q"]) != (spec.p, spec.k, spec.q):
        raise CapFileError(
            f"capfile-field-mismatch: file has p={payload['p']} k={payload['k']} q={payload['q']}"
        )
    if tuple(payload["modulus"]) != model.field.modulus:
        raise CapFileError("capfile-modulus-mismatch")
    if payload["form"] != FORM_ID:
        raise CapFileError(f"capfile-unknown-form: {payload['form']!r}")
    ids = []
    for raw in payload["points"]:
        if len(raw) != 4 or not all(
            isinstance(c, int) and 0 <= c < model.q2 for c in raw
        ):
            raise CapFileError(f"capfile-bad-coordinates: {raw}")
        coords = tuple(raw)
        if normalize_point(model.field, coords) != coords:
            raise CapFileError(f"capfile-point-not-normalized: {raw}")
        try:
            ids.append(model.point_id(coords))
        except KeyError:
            raise CapFileError(f"capfile-point-off-surface: {raw}") from None
    if len(set(ids)) != len(ids):
        raise CapFileError("capfile-duplicate-points")
    if not is_cap(model, ids):
        raise CapFileError("capfile-not-a-cap")
    return np.array(sorted(ids), dtype=np.int32)


def load_cap_ids(model: SurfaceModel, path) -> np.ndarray:
    return resolve_cap(model, read_cap(path))
