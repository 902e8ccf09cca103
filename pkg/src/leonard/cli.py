"""Command-line interface: ``leonard <subcommand> [input] [-o output]``.

Exit status is 0 on success, 1 when the input is well formed but rejected
(an invalid array, no valid reconstruction, an exhausted search), and 2 for
malformed input.  Errors are printed as {"error": {"kind", "detail"}}.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import io
from .closedform import evaluate, fit, theta_sum, theta_sum_literal
from .enumeration import enumerate_arrays, search_field
from .errors import (
    FieldMismatch,
    InvalidEndParameters,
    InvalidField,
    LeonardError,
    LengthMismatch,
    NoValidArray,
    SchemaError,
)
from .field import Field, Scalar
from .generate import random_array, supported
from .omegapoly import build as build_omega_poly, has_repeated_root, roots_excluding_pm1
from .parray import (
    D4,
    TYPES,
    classify,
    d4_apply,
    end_parameters,
    omega,
    validate,
)
from .reconstruct import phi_by_appendix, reconstruct, reconstruct_tagged, theta_from_ends
from .witness import DEFAULT_MAX_PRIME, build_witness

INPUT_ERRORS = (SchemaError, InvalidField, LengthMismatch, InvalidEndParameters, FieldMismatch)


class Rejected(Exception):
    """Domain rejection carrying a JSON payload for stdout."""

    def __init__(self, payload: dict):
        super().__init__()
        self.payload = payload


def _read_json(path: Optional[str]):
    text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _parse_in(f: Field, text, what: str) -> Scalar:
    """Read a scalar in ``f`` or, failing that, in its search extension."""
    for g in (f, search_field(f)):
        try:
            return io.scalar_from_json(g, text)
        except SchemaError:
            continue
    raise SchemaError(f"cannot read {what} {text!r}")


def cmd_validate(args) -> dict:
    p = io.array_from_json(_read_json(args.input))
    report = validate(p)
    if not report:
        raise Rejected(io.report_to_json(report))
    return io.report_to_json(report)


def _valid_array(args):
    p = io.array_from_json(_read_json(args.input))
    report = validate(p)
    if not report:
        raise Rejected({"error": {"kind": "InvalidArray",
                                  "detail": f"condition ({report.condition}) fails "
                                            f"at index {report.index}"},
                        **io.report_to_json(report)})
    return p


def cmd_classify(args) -> dict:
    p = _valid_array(args)
    out = io.tag_to_json(classify(p))
    out["omega"] = str(omega(p))
    return out


def cmd_d4(args) -> dict:
    p = io.array_from_json(_read_json(args.input))
    try:
        return io.array_to_json(d4_apply(args.g, p))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def cmd_fit(args) -> dict:
    return io.closed_form_to_json(fit(_valid_array(args)))


def cmd_reconstruct(args) -> dict:
    obj = _read_json(args.input)
    e = io.ends_from_json(io._get(obj, "end_parameters"))
    if "q" in obj:
        q = _parse_in(e.field, obj["q"], "q")
        b = q + q.inverse()
        return io.array_to_json(reconstruct(e, b.descend(), q))
    b = _parse_in(e.field, io._get(obj, "beta"), "beta")
    return io.array_to_json(reconstruct(e, b))


def cmd_enumerate(args) -> dict:
    e = io.ends_from_json(_read_json(args.input))
    return io.enumeration_to_json(enumerate_arrays(e))


def cmd_omega_roots(args) -> dict:
    if args.d is not None:
        if args.field is None or args.omega is None:
            raise SchemaError("--d needs --field and --omega")
        obj = {"field": json.loads(args.field), "d": args.d, "omega": args.omega}
    else:
        obj = _read_json(args.input)
    f = io.field_of(io._get(obj, "field"))
    d = io._int(obj, "d")
    if d < 3:
        raise SchemaError("d must be at least 3")
    w = io.scalar_from_json(f, io._get(obj, "omega"))
    if w == 1:
        raise SchemaError("omega = 1 is excluded")
    fw = build_omega_poly(f, d, w)
    return {"roots": [str(r) for r in roots_excluding_pm1(fw)],
            "excluded": {"1": fw.poly(f.one).is_zero(), "-1": fw.poly(-f.one).is_zero()},
            "repeated": has_repeated_root(fw)}


def cmd_witness(args) -> dict:
    if args.d is not None:
        d, fobj, budgets = args.d, json.loads(args.field) if args.field else None, {}
    else:
        obj = _read_json(args.input)
        d, fobj, budgets = io._int(obj, "d"), obj.get("field"), obj.get("budgets") or {}
    max_prime = args.max_prime or budgets.get("max_prime", DEFAULT_MAX_PRIME)
    omega_budget = args.omega_budget or budgets.get("omega_budget")
    field = io.field_of(fobj) if fobj is not None else None
    if field is not None and field.kind != "prime":
        raise SchemaError("witness search runs over prime fields only")
    try:
        fam = build_witness(d, field, max_prime=max_prime, omega_budget=omega_budget)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    print(fam.table(), file=sys.stderr)
    return io.witness_to_json(fam)


def _selftest_one(tag: str, d: int, rng: random.Random) -> list[str]:
    cf, p = random_array(tag, d, rng)
    fails = []
    e, t = end_parameters(p), classify(p)
    if t.tag != tag:
        fails.append("classify")
    if reconstruct(e, t.beta) != p:
        fails.append("reconstruct")
    th, ts = theta_from_ends(e, t)
    vp, ph = phi_by_appendix(e, t)
    if (tuple(th), tuple(ts), tuple(vp), tuple(ph)) != (p.theta, p.theta_star, p.varphi, p.phi):
        fails.append("appendix")
    if any(theta_sum(p, i, t) != theta_sum_literal(p, i) for i in range(1, d + 1)):
        fails.append("theta_sum")
    if any(not validate(d4_apply(g, p)) for g in D4):
        fails.append("d4")
    if reconstruct_tagged(e, t) != p or evaluate(fit(p), d) != p:
        fails.append("fit")
    return fails


def cmd_selftest(args) -> dict:
    rng = random.Random(args.seed)
    failures, checks = [], 0
    for tag in TYPES:
        for d in range(3, 9):
            if not supported(tag, d):
                continue
            for _ in range(args.count):
                checks += 1
                for name in _selftest_one(tag, d, rng):
                    failures.append({"type": tag, "d": d, "check": name})
    out = {"seed": args.seed, "arrays": checks, "failures": failures}
    if failures:
        raise Rejected(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leonard", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, has_input=True):
        sp = sub.add_parser(name, help=help_text)
        if has_input:
            sp.add_argument("input", nargs="?", help="input JSON path (default: stdin)")
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check conditions (i)-(v) of a parameter array")
    add("classify", cmd_classify, "type, fundamental parameter, q and Omega")
    add("d4", cmd_d4, "apply an element of D4").add_argument(
        "--g", required=True, help="word in *, ↓ (or d) and ⇓ (or D)")
    add("fit", cmd_fit, "closed-form parameters of an array")
    add("reconstruct", cmd_reconstruct, "array from end-parameters and beta or q")
    add("enumerate", cmd_enumerate, "every array realizing given end-parameters")
    sp = add("omega-roots", cmd_omega_roots, "roots of f_omega other than +-1")
    sp.add_argument("--field", help="field descriptor JSON")
    sp.add_argument("--d", type=int)
    sp.add_argument("--omega", help="omega in the field's text encoding")
    sp = add("witness", cmd_witness, "distinct arrays with common end-parameters")
    sp.add_argument("--d", type=int)
    sp.add_argument("--field", help="restrict the search to this prime field")
    sp.add_argument("--max-prime", type=int)
    sp.add_argument("--omega-budget", type=int)
    sp = add("selftest", cmd_selftest, "round-trip checks on random arrays", has_input=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=3, help="arrays per type and diameter")
    return ap


def _emit(payload: dict, path: Optional[str]) -> None:
    text = io.dumps(payload)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    output = getattr(args, "output", None)
    try:
        payload = args.func(args)
    except Rejected as rej:
        _emit(rej.payload, output)
        return 1
    except INPUT_ERRORS as exc:
        _emit(io.error_to_json(exc.kind, str(exc)), output)
        return 2
    except LeonardError as exc:
        out = io.error_to_json(exc.kind, str(exc))
        if isinstance(exc, NoValidArray):
            out["error"].update(condition=exc.condition, index=exc.index)
        _emit(out, output)
        return 1
    except (ValueError, OSError) as exc:
        _emit(io.error_to_json("SchemaError", str(exc)), output)
        return 2
    _emit(payload, output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
