"""JSON encoding of every object the CLI reads or writes.

Scalars are always strings in the field's text encoding.  ``dumps`` sorts
keys so equal objects print to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .closedform import PARAM_NAMES, ClosedFormParams
from .enumeration import EnumerationResult, Rejection
from .errors import InvalidField, SchemaError
from .field import Field, Scalar, field_from_json
from .parray import EndParameters, ParameterArray, TypeTag, ValidationReport
from .witness import WitnessFamily


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _get(obj: dict, key: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"missing key {key!r}")
    return obj[key]


def field_to_json(f: Field) -> dict:
    return f.to_json()


def field_of(obj) -> Field:
    try:
        return field_from_json(obj)
    except InvalidField as exc:
        raise SchemaError(str(exc)) from exc


def scalar_to_json(x: Scalar) -> str:
    return str(x)


def scalar_from_json(f: Field, s) -> Scalar:
    if not isinstance(s, str):
        raise SchemaError(f"scalars must be strings, got {s!r}")
    try:
        return f.parse(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot read {s!r} as an element of {f}") from exc


def _scalars(f: Field, seq) -> tuple:
    if not isinstance(seq, list):
        raise SchemaError("expected a list of scalars")
    return tuple(scalar_from_json(f, s) for s in seq)


def array_to_json(p: ParameterArray) -> dict:
    return {"field": p.field.to_json(), "d": p.d,
            "theta": [str(x) for x in p.theta], "theta_star": [str(x) for x in p.theta_star],
            "varphi": [str(x) for x in p.varphi], "phi": [str(x) for x in p.phi]}


def _int(obj: dict, key: str) -> int:
    v = _get(obj, key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{key!r} must be an integer")
    return v


def array_from_json(obj: dict) -> ParameterArray:
    f = field_of(_get(obj, "field"))
    d = _int(obj, "d")
    seqs = [_scalars(f, _get(obj, k)) for k in ("theta", "theta_star", "varphi", "phi")]
    return ParameterArray(f, d, *seqs)


def ends_to_json(e: EndParameters) -> dict:
    out = {"field": e.field.to_json(), "d": e.d}
    out.update({n: str(getattr(e, n)) for n in EndParameters.NAMES})
    return out


def ends_from_json(obj: dict) -> EndParameters:
    f = field_of(_get(obj, "field"))
    d = _int(obj, "d")
    return EndParameters(f, d, *(scalar_from_json(f, _get(obj, n)) for n in EndParameters.NAMES))


def tag_to_json(t: TypeTag) -> dict:
    return {"type": t.tag, "field": t.q.field.to_json(), "beta": str(t.beta), "q": str(t.q)}


def tag_from_json(obj: dict) -> TypeTag:
    f = field_of(_get(obj, "field"))
    q = scalar_from_json(f, _get(obj, "q"))
    raw = _get(obj, "beta")
    b = None
    for g in (f, f.base):
        if g is None:
            continue
        try:
            b = g.parse(raw)
            break
        except (ValueError, ZeroDivisionError):
            continue
    if b is None:
        raise SchemaError(f"cannot read beta {raw!r}")
    try:
        return TypeTag(_get(obj, "type"), b, q)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def report_to_json(r: ValidationReport) -> dict:
    return r.to_json()


def report_from_json(obj: dict) -> ValidationReport:
    if _get(obj, "valid"):
        return ValidationReport(True)
    v = _get(obj, "violation")
    return ValidationReport(False, _get(v, "condition"), _get(v, "index"))


def closed_form_to_json(cf: ClosedFormParams) -> dict:
    return {"tag": tag_to_json(cf.tag),
            "params": {n: str(cf.values[n]) for n in PARAM_NAMES[cf.tag.tag]}}


def closed_form_from_json(obj: dict) -> ClosedFormParams:
    tag = tag_from_json(_get(obj, "tag"))
    params = _get(obj, "params")
    f = tag.q.field
    return ClosedFormParams(tag, {n: scalar_from_json(f, _get(params, n))
                                  for n in PARAM_NAMES[tag.tag]})


def _rejection_to_json(r: Rejection) -> dict:
    out = {"type": r.tag, "condition": r.condition, "index": r.index, "q": None}
    if r.q is not None:
        out["q"] = {"field": r.q.field.to_json(), "value": str(r.q)}
    return out


def _rejection_from_json(obj: dict) -> Rejection:
    q = _get(obj, "q")
    if q is not None:
        q = scalar_from_json(field_of(_get(q, "field")), _get(q, "value"))
    return Rejection(_get(obj, "type"), q, _get(obj, "condition"), _get(obj, "index"))


def enumeration_to_json(res: EnumerationResult) -> dict:
    return {
        "inputs": ends_to_json(res.inputs),
        "omega": str(res.omega),
        "candidates": [{"tag": tag_to_json(t), "array": array_to_json(p)}
                       for t, p in res.candidates],
        "rejected": [_rejection_to_json(r) for r in res.rejected],
        "coverage": res.coverage,
    }


def enumeration_from_json(obj: dict) -> EnumerationResult:
    e = ends_from_json(_get(obj, "inputs"))
    cands = tuple((tag_from_json(_get(c, "tag")), array_from_json(_get(c, "array")))
                  for c in _get(obj, "candidates"))
    rejected = tuple(_rejection_from_json(r) for r in _get(obj, "rejected"))
    return EnumerationResult(e, scalar_from_json(e.field, _get(obj, "omega")), cands,
                             rejected, _get(obj, "coverage"))


def witness_to_json(w: WitnessFamily) -> dict:
    return {"field": w.field.to_json(), "d": w.d, "omega": str(w.omega), "zeta": str(w.zeta),
            "qs": [str(q) for q in w.qs], "arrays": [array_to_json(p) for p in w.arrays],
            "shared_ends": ends_to_json(w.shared_ends)}


def witness_from_json(obj: dict) -> WitnessFamily:
    f = field_of(_get(obj, "field"))
    return WitnessFamily(f, _int(obj, "d"), scalar_from_json(f, _get(obj, "omega")),
                         scalar_from_json(f, _get(obj, "zeta")), _scalars(f, _get(obj, "qs")),
                         tuple(array_from_json(a) for a in _get(obj, "arrays")),
                         ends_from_json(_get(obj, "shared_ends")))


def error_to_json(kind: str, detail: str) -> dict:
    return {"error": {"kind": kind, "detail": detail}}
