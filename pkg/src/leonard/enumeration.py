"""All parameter arrays sharing a given set of end-parameters.

Type I candidates come from the roots of f_Omega; the special types are
decided by Omega alone.  Each candidate is rebuilt through
:func:`reconstruct.reconstruct_tagged` and kept only if it validates and
reproduces the ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateQ, NoValidArray
from .field import Field, PrimeField, Scalar
from .omegapoly import build as build_omega_poly
from .parray import TYPES, EndParameters, ParameterArray, TypeTag, end_parameters, validate
from .poly import DEFAULT_SCAN_BUDGET, distinct_roots
from .reconstruct import reconstruct_tagged

__all__ = ["EnumerationResult", "Rejection", "omega_of_ends", "candidate_types",
           "enumerate_arrays", "search_field", "max_candidates"]


def max_candidates(d: int) -> int:
    return (d - 1) // 2


@dataclass(frozen=True)
class Rejection:
    """A candidate that did not survive: its type, its q, and why."""

    tag: str
    q: Optional[Scalar]
    condition: str
    index: Optional[int] = None


@dataclass(frozen=True)
class EnumerationResult:
    inputs: EndParameters
    omega: Scalar
    candidates: tuple[tuple[TypeTag, ParameterArray], ...]
    rejected: tuple[Rejection, ...] = ()
    coverage: str = ""

    @property
    def arrays(self) -> tuple[ParameterArray, ...]:
        return tuple(p for _, p in self.candidates)


def omega_of_ends(e: EndParameters) -> Scalar:
    num = e.phi1 + e.phid - e.varphi1 - e.varphid
    return num / ((e.theta0 - e.thetad) * (e.theta_star0 - e.theta_stard))


def search_field(f: Field) -> Field:
    """Where type I q's are looked for: GF(p^2) over GF(p), else ``f`` itself."""
    if isinstance(f, PrimeField) and f.p != 2:
        return f.quadratic_extension()
    return f


def _coverage(f: Field) -> str:
    ext = search_field(f)
    if ext is f:
        return f"q searched in {f} only"
    return f"q searched in {ext}; higher extensions not covered"


def _q_ok(q: Scalar, d: int) -> bool:
    return all(q**i != 1 for i in range(1, d + 1))


def _candidates(e: EndParameters, budget: int):
    f, d = e.field, e.d
    w = omega_of_ends(e)
    tags: list[TypeTag] = []
    rejected: list[Rejection] = []
    if w == 1:
        return w, tags, rejected

    ext = search_field(f)
    poly = build_omega_poly(f, d, w).poly.lift(ext)
    seen = set()
    for q in distinct_roots(poly, budget):
        if q == 1 or q == -1 or q in seen:
            continue
        qi = q.inverse()
        seen.update((q, qi))
        rep = min(q, qi, key=Scalar.sort_key).descend()
        if not _q_ok(rep, d):
            rejected.append(Rejection("I", rep, "ii"))
            continue
        tags.append(TypeTag("I", (rep + rep.inverse()).descend(), rep))

    c = f.characteristic
    d_ok = not f(d).is_zero()
    one = f.one
    special = []
    if c != 2 and d_ok:
        if w == f(2) / d:
            special.append(("II", one, c == 0 or c > d))
        if d % 2 == 0 and w == f(2 * (d - 1)) / d:
            special.append(("III+", -one, c == 0 or 2 * c > d))
    if c != 2 and d % 2 == 1 and w == 2:
        special.append(("III-", -one, c == 0 or 2 * c > d))
    if c == 2 and d == 3 and w.is_zero():
        special.append(("IV", one, True))
    for kind, q, allowed in special:
        if allowed:
            tags.append(TypeTag(kind, q + q.inverse(), q))
        else:
            rejected.append(Rejection(kind, q, "ii"))
    kinds = {t.tag for t in tags}
    if "II" in kinds and kinds & {"III+", "III-"}:
        raise AssertionError("types II and III cannot share end-parameters")
    return w, tags, rejected


def candidate_types(e: EndParameters, budget: int = DEFAULT_SCAN_BUDGET) -> list[TypeTag]:
    """Type tags that could realize ``e``, in canonical order."""
    return _candidates(e, budget)[1]


def _tag_key(t: TypeTag):
    return (TYPES.index(t.tag), t.q.sort_key())


def enumerate_arrays(e: EndParameters, budget: int = DEFAULT_SCAN_BUDGET) -> EnumerationResult:
    """Every parameter array realizing ``e`` over its field or the search extension."""
    w, tags, rejected = _candidates(e, budget)
    kept = []
    for t in sorted(tags, key=_tag_key):
        try:
            p = reconstruct_tagged(e, t)
        except NoValidArray as err:
            rejected.append(Rejection(t.tag, t.q, err.condition, err.index))
            continue
        except DegenerateQ:
            rejected.append(Rejection(t.tag, t.q, "degenerate"))
            continue
        kept.append((t, p))

    if len(kept) > max_candidates(e.d):
        raise AssertionError(f"{len(kept)} candidates exceed the bound {max_candidates(e.d)}")
    for i, (_, p) in enumerate(kept):
        if not validate(p) or end_parameters(p).lift(p.field) != e.lift(p.field):
            raise AssertionError("an emitted candidate does not realize the inputs")
        if any(p == other for _, other in kept[:i]):
            raise AssertionError("two candidates coincide")
    rejected.sort(key=lambda r: (TYPES.index(r.tag), r.q.sort_key() if r.q is not None else ()))
    return EnumerationResult(e, w, tuple(kept), tuple(rejected), _coverage(e.field))
