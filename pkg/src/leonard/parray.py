"""Parameter arrays: validation, the fundamental parameter, type, Omega, D4.

Indexing follows the usual convention: ``theta[i]`` and ``theta_star[i]``
for ``0 <= i <= d``, while ``varphi[i - 1]`` and ``phi[i - 1]`` hold
``varphi_i`` and ``phi_i`` for ``1 <= i <= d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import InvalidEndParameters, LengthMismatch
from .field import Field, Scalar, solve_quadratic_unit

__all__ = [
    "ParameterArray",
    "EndParameters",
    "TypeTag",
    "ValidationReport",
    "D4Element",
    "D4",
    "TYPES",
    "validate",
    "beta",
    "classify",
    "type_for_beta",
    "omega",
    "d4_apply",
    "end_parameters",
]

TYPES = ("I", "II", "III+", "III-", "IV")


def _coerce(field: Field, values: Iterable) -> tuple[Scalar, ...]:
    return tuple(field(v) for v in values)


@dataclass(frozen=True)
class ParameterArray:
    field: Field
    d: int
    theta: tuple[Scalar, ...]
    theta_star: tuple[Scalar, ...]
    varphi: tuple[Scalar, ...]
    phi: tuple[Scalar, ...]

    def __post_init__(self):
        if self.d < 3:
            raise LengthMismatch(f"diameter must be at least 3, got {self.d}")
        for name, want in (("theta", self.d + 1), ("theta_star", self.d + 1),
                           ("varphi", self.d), ("phi", self.d)):
            seq = getattr(self, name)
            if len(seq) != want:
                raise LengthMismatch(f"{name} has length {len(seq)}, expected {want}")
            object.__setattr__(self, name, _coerce(self.field, seq))

    @classmethod
    def build(cls, field: Field, theta: Sequence, theta_star: Sequence,
              varphi: Sequence, phi: Sequence) -> "ParameterArray":
        return cls(field, len(theta) - 1, tuple(theta), tuple(theta_star),
                   tuple(varphi), tuple(phi))

    def entries(self) -> tuple[Scalar, ...]:
        return self.theta + self.theta_star + self.varphi + self.phi

    def descend(self) -> "ParameterArray":
        """The same array over the base field when every entry lies there."""
        base = self.field.base
        if base is None:
            return self
        low = [self.field.descend(x) for x in self.entries()]
        if any(x is None for x in low):
            return self
        d = self.d
        return ParameterArray(base, d, tuple(low[: d + 1]), tuple(low[d + 1: 2 * d + 2]),
                              tuple(low[2 * d + 2: 3 * d + 2]), tuple(low[3 * d + 2:]))

    def lift(self, ext: Field) -> "ParameterArray":
        if ext == self.field:
            return self
        return ParameterArray(ext, self.d, *(tuple(ext.lift(x) for x in seq) for seq in
                                             (self.theta, self.theta_star, self.varphi, self.phi)))

    def sort_key(self):
        return tuple(x.sort_key() for x in self.entries())


@dataclass(frozen=True)
class EndParameters:
    """The eight scalars theta_0, theta_d, theta*_0, theta*_d, varphi_1,
    varphi_d, phi_1, phi_d."""

    field: Field
    d: int
    theta0: Scalar
    thetad: Scalar
    theta_star0: Scalar
    theta_stard: Scalar
    varphi1: Scalar
    varphid: Scalar
    phi1: Scalar
    phid: Scalar

    NAMES = ("theta0", "thetad", "theta_star0", "theta_stard",
             "varphi1", "varphid", "phi1", "phid")

    def __post_init__(self):
        if self.d < 3:
            raise InvalidEndParameters(f"diameter must be at least 3, got {self.d}")
        for name in self.NAMES:
            object.__setattr__(self, name, self.field(getattr(self, name)))
        if self.theta0 == self.thetad:
            raise InvalidEndParameters("theta_0 must differ from theta_d")
        if self.theta_star0 == self.theta_stard:
            raise InvalidEndParameters("theta*_0 must differ from theta*_d")
        for name in ("varphi1", "varphid", "phi1", "phid"):
            if getattr(self, name).is_zero():
                raise InvalidEndParameters(f"{name} must be nonzero")

    @classmethod
    def from_values(cls, field: Field, d: int, values: Sequence) -> "EndParameters":
        if len(values) != 8:
            raise LengthMismatch("end parameters are 8 scalars")
        return cls(field, d, *values)

    def values(self) -> tuple[Scalar, ...]:
        return tuple(getattr(self, n) for n in self.NAMES)

    def lift(self, ext: Field) -> "EndParameters":
        if ext == self.field:
            return self
        return EndParameters(ext, self.d, *(ext.lift(v) for v in self.values()))


@dataclass(frozen=True)
class TypeTag:
    tag: str
    beta: Scalar
    q: Scalar

    def __post_init__(self):
        if self.tag not in TYPES:
            raise ValueError(f"unknown type {self.tag!r}")


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    condition: Optional[str] = None
    index: Optional[int] = None

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        if self.valid:
            return {"valid": True, "violation": None}
        return {"valid": False, "violation": {"condition": self.condition, "index": self.index}}


def _theta_sum(theta: Sequence[Scalar], d: int, i: int) -> Scalar:
    denom = theta[0] - theta[d]
    total = theta[0].field.zero
    for ell in range(i):
        total = total + (theta[ell] - theta[d - ell]) / denom
    return total


def validate(p: ParameterArray) -> ValidationReport:
    """Check the five defining conditions; report the first failure.

    Conditions are checked in the order (i), (ii), (v), (iii), (iv).
    """
    d, th, ts = p.d, p.theta, p.theta_star
    for seq in (th, ts):
        for i, j in combinations(range(d + 1), 2):
            if seq[i] == seq[j]:
                return ValidationReport(False, "i", i)
    for seq in (p.varphi, p.phi):
        for k, x in enumerate(seq):
            if x.is_zero():
                return ValidationReport(False, "ii", k + 1)
    common = (th[0] - th[3]) / (th[1] - th[2])
    for i in range(2, d):
        a = (th[i - 2] - th[i + 1]) / (th[i - 1] - th[i])
        b = (ts[i - 2] - ts[i + 1]) / (ts[i - 1] - ts[i])
        if a != common or b != common:
            return ValidationReport(False, "v", i)
    for i in range(1, d + 1):
        s = _theta_sum(th, d, i)
        if p.varphi[i - 1] != p.phi[0] * s + (ts[i] - ts[0]) * (th[i - 1] - th[d]):
            return ValidationReport(False, "iii", i)
    for i in range(1, d + 1):
        s = _theta_sum(th, d, i)
        if p.phi[i - 1] != p.varphi[0] * s + (ts[i] - ts[0]) * (th[d - i + 1] - th[0]):
            return ValidationReport(False, "iv", i)
    return ValidationReport(True)


def beta(p: ParameterArray) -> Scalar:
    """Fundamental parameter, read off the first theta window."""
    th = p.theta
    return (th[0] - th[3]) / (th[1] - th[2]) - 1


def type_for_beta(field: Field, b: Scalar, d: int) -> str:
    if field.characteristic == 2:
        return "IV" if b.is_zero() else "I"
    if b == 2:
        return "II"
    if b == -2:
        return "III+" if d % 2 == 0 else "III-"
    return "I"


def classify(p: ParameterArray, q: Optional[Scalar] = None) -> TypeTag:
    """Type of ``p`` together with beta and a canonical q.

    For type I the canonical q is the smaller of the pair {q, 1/q} in the
    field's canonical order; an explicit ``q`` overrides the search but must
    satisfy q + 1/q = beta.
    """
    b = beta(p)
    return tag_for(p.field, b, p.d, q)


def tag_for(field: Field, b: Scalar, d: int, q: Optional[Scalar] = None) -> TypeTag:
    kind = type_for_beta(field, b, d)
    if kind in ("II", "IV"):
        fixed = field.one
    elif kind in ("III+", "III-"):
        fixed = -field.one
    else:
        fixed = None
    if q is not None:
        if q.is_zero() or q + q.inverse() != b:
            raise ValueError(f"q = {q} does not satisfy q + 1/q = {b}")
        return TypeTag(kind, b, q)
    if fixed is not None:
        return TypeTag(kind, b, fixed)
    roots = solve_quadratic_unit(field, b)
    return TypeTag(kind, b, roots[0])


def omega(p: ParameterArray) -> Scalar:
    """(phi_1 + phi_d - varphi_1 - varphi_d) / ((theta_0 - theta_d)(theta*_0 - theta*_d))."""
    d = p.d
    num = p.phi[0] + p.phi[d - 1] - p.varphi[0] - p.varphi[d - 1]
    return num / ((p.theta[0] - p.theta[d]) * (p.theta_star[0] - p.theta_star[d]))


_LETTERS = {"*": "*", "d": "↓", "↓": "↓", "D": "⇓", "⇓": "⇓"}


@dataclass(frozen=True)
class D4Element:
    """Normal form ``*^star ↓^down ⇓^ddown`` of an element of D4."""

    star: bool = False
    down: bool = False
    ddown: bool = False

    @classmethod
    def parse(cls, word: str) -> "D4Element":
        """Reduce a word over ``*``, ``↓`` (or ``d``) and ``⇓`` (or ``D``)."""
        s = a = b = False
        for ch in word.replace(" ", ""):
            letter = _LETTERS.get(ch)
            if letter is None:
                raise ValueError(f"unknown D4 generator {ch!r}")
            if letter == "*":
                # ↓^a ⇓^b * = * ⇓^a ↓^b
                s, a, b = not s, b, a
            elif letter == "↓":
                a = not a
            else:
                b = not b
        return cls(s, a, b)

    @property
    def word(self) -> str:
        return ("*" if self.star else "") + ("↓" if self.down else "") + ("⇓" if self.ddown else "")

    def __mul__(self, other: "D4Element") -> "D4Element":
        return D4Element.parse(self.word + other.word)

    def __str__(self):
        return self.word or "1"


D4 = tuple(D4Element(s, a, b) for s in (False, True) for a in (False, True) for b in (False, True))


def _apply_letter(letter: str, p: ParameterArray) -> ParameterArray:
    d, th, ts, vp, ph = p.d, p.theta, p.theta_star, p.varphi, p.phi
    if letter == "↓":
        return ParameterArray(p.field, d, th, ts[::-1], ph[::-1], vp[::-1])
    if letter == "⇓":
        return ParameterArray(p.field, d, th[::-1], ts, ph, vp)
    return ParameterArray(p.field, d, ts, th, vp, ph[::-1])


def d4_apply(g, p: ParameterArray) -> ParameterArray:
    """Apply a D4 element (or a raw word) letter by letter, left to right."""
    word = g.word if isinstance(g, D4Element) else str(g)
    for ch in word.replace(" ", ""):
        if ch == "1":
            continue
        letter = _LETTERS.get(ch)
        if letter is None:
            raise ValueError(f"unknown D4 generator {ch!r}")
        p = _apply_letter(letter, p)
    return p


def end_parameters(p: ParameterArray) -> EndParameters:
    d = p.d
    return EndParameters(p.field, d, p.theta[0], p.theta[d], p.theta_star[0], p.theta_star[d],
                         p.varphi[0], p.varphi[d - 1], p.phi[0], p.phi[d - 1])
