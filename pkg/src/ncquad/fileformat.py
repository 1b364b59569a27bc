"""Input files, canonical serialization, and digests.

A quintuple file is JSON with exactly one of:

    {"family": "linear"}
    {"family": "type-a", "a": "1", "b": "2", "c": "3"}
    {"w": [[[[...]]]]}            (2x2x2x2 nested exact-rational strings)

plus an optional {"field": "Q" | "Fp:<prime>"} (default "Q").  Rationals
travel as strings to stay exact; the tensor index order is slots 0..3
with basis index 0 = x and 1 = y.  Digests are over the canonical
full-tensor form, so equivalent spellings of the same input agree.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .fields import GF, QQ, FpElement, PrimeField, QuadElement, RationalField
from .quintuples import Quintuple, build_linear_quadric, build_type_a
from .tensors import Tensor
from .quintuples import SLOT_LABELS


class InputError(ValueError):
    """Malformed or unsupported input file contents."""


def field_to_str(field) -> str:
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, PrimeField):
        return f"Fp:{field.p}"
    raise InputError(f"no file spelling for field {field!r}")


def field_from_str(s: str):
    if s == "Q":
        return QQ
    if s.startswith("Fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise InputError(f"bad prime in field spec {s!r}") from None
        try:
            return GF(p)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"unknown field spec {s!r}")


def scalar_str(field, x) -> str:
    return field.format(x)


def scalar_json(x):
    """JSON value for one scalar: rationals and prime-field elements as
    strings, quadratic-extension elements as [a, b] coefficient pairs."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, FpElement):
        return str(x.value)
    if isinstance(x, QuadElement):
        return [scalar_json(x.a), scalar_json(x.b)]
    if isinstance(x, int):
        return str(x)
    raise TypeError(f"not a scalar: {x!r}")


def parse_quintuple_file(doc: dict) -> tuple[Quintuple, dict]:
    """Parse a quintuple file dict into (Quintuple, meta).

    meta keeps the family spelling and the field tag, enough to
    serialize back to an identical canonical file.
    """
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    field = field_from_str(doc.get("field", "Q"))
    has_family = "family" in doc
    has_w = "w" in doc
    if has_family == has_w:
        raise InputError('provide exactly one of "family" or "w"')
    if has_family:
        fam = doc["family"]
        if fam == "linear":
            q = build_linear_quadric(field)
            meta = {"family": "linear", "field": field_to_str(field)}
            return q, meta
        if fam == "type-a":
            try:
                a, b, c = (field.of(str(doc[k])) for k in ("a", "b", "c"))
            except KeyError as exc:
                raise InputError(f"type-a input needs coefficient {exc}") from None
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise InputError(f"bad coefficient: {exc}") from None
            q = build_type_a(a, b, c, field)
            meta = {
                "family": "type-a",
                "a": scalar_str(field, a),
                "b": scalar_str(field, b),
                "c": scalar_str(field, c),
                "field": field_to_str(field),
            }
            return q, meta
        raise InputError(f"unknown family {fam!r}")
    nested = doc["w"]
    flat = []

    def walk(node, depth):
        if depth == 4:
            if isinstance(node, (list, dict, bool)) or node is None:
                raise InputError("tensor entries must be rational strings or ints")
            try:
                flat.append(field.of(str(node)))
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise InputError(f"bad tensor entry {node!r}: {exc}") from None
            return
        if not isinstance(node, list) or len(node) != 2:
            raise InputError("w must be a 2x2x2x2 nested array")
        for child in node:
            walk(child, depth + 1)

    walk(nested, 0)
    q = Quintuple(Tensor(field, (2, 2, 2, 2), flat, SLOT_LABELS))
    meta = {"w": tensor_nested_strings(q), "field": field_to_str(field)}
    return q, meta


def tensor_nested_strings(q: Quintuple):
    field = q.field
    nested = q.w.as_nested()

    def conv(node):
        if isinstance(node, list):
            return [conv(x) for x in node]
        return scalar_str(field, node)

    return conv(nested)


def serialize_quintuple_meta(meta: dict) -> dict:
    """The canonical file dict for a parsed input (round-trip identity)."""
    return dict(meta)


def canonical_json_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def input_digest(q: Quintuple) -> str:
    doc = {
        "field": field_to_str(q.field),
        "w": tensor_nested_strings(q),
    }
    return hashlib.sha256(canonical_json_bytes(doc)).hexdigest()


def load_quintuple(path: str) -> tuple[Quintuple, dict]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
    return parse_quintuple_file(doc)
