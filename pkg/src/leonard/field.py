"""Exact fields: the rationals, GF(p), GF(p^2) = GF(p)(sqrt r) and GF(2^k).

Every element is a :class:`Scalar` holding its field and a canonical raw
value.  Raw values per kind:

* rational        -- :class:`fractions.Fraction`
* prime           -- ``int`` in ``[0, p)``
* prime_quadratic -- ``(a, b)`` meaning ``a + b*s`` with ``s*s = r``
* binary          -- ``int`` bit pattern of degree ``< k``, reduced mod ``m``

A prime field is treated as a subfield of its quadratic extensions (and
GF(2) as a subfield of every binary field); arithmetic between a subfield
element and an extension element lifts the former automatically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import FieldMismatch, InvalidField, NoRootInField

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "QuadraticField",
    "BinaryField",
    "Scalar",
    "QQ",
    "field_from_json",
    "char",
    "int_embed",
    "solve_quadratic_unit",
    "smallest_nonresidue",
]


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    """Least quadratic nonresidue modulo the odd prime ``p``."""
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise InvalidField(f"no quadratic nonresidue modulo {p}")


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


@lru_cache(maxsize=None)
def _gf2_irreducible(m: int) -> bool:
    k = m.bit_length() - 1
    if k < 1:
        return False
    # Any factorization has a factor of degree <= k // 2.
    for f in range(2, 1 << (k // 2 + 1)):
        if _gf2_mod(m, f) == 0 and f != m:
            return False
    return True


class Field:
    """Abstract exact field.  Subclasses are frozen dataclasses."""

    kind: str = ""
    base: Optional["Field"] = None

    # raw-level arithmetic, overridden per kind
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def inv(self, a): raise NotImplementedError
    def is_zero_raw(self, a) -> bool: raise NotImplementedError
    def from_int_raw(self, n: int): raise NotImplementedError
    def key(self, a): raise NotImplementedError
    def text(self, a) -> str: raise NotImplementedError
    def parse_raw(self, s: str): raise NotImplementedError
    def sqrt_raw(self, a): raise NotImplementedError
    def to_json(self) -> dict: raise NotImplementedError
    def hash_raw(self, a) -> int: raise NotImplementedError

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    @property
    def size(self) -> Optional[int]:
        """Number of elements, ``None`` for the rationals."""
        return None

    def raw_elements(self) -> Iterator:
        raise InvalidField(f"{self} is infinite")

    # lifting between a subfield and this field
    def lift_raw(self, sub: "Field", a):
        raise FieldMismatch(f"cannot embed {sub} into {self}")

    def descend_raw(self, a):
        """Raw value in :attr:`base` if ``a`` lies there, else ``None``."""
        return None

    # ---- Scalar-level helpers ----------------------------------------
    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            return self.lift(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return Scalar(self, self.from_int_raw(value))
        if isinstance(value, Fraction):
            num = self(value.numerator)
            return num / self(value.denominator)
        raise TypeError(f"cannot convert {value!r} into {self}")

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.from_int_raw(0))

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.from_int_raw(1))

    def parse(self, s: str) -> "Scalar":
        return Scalar(self, self.parse_raw(s.strip()))

    def elements(self) -> Iterator["Scalar"]:
        """All elements in canonical order (finite fields only)."""
        for a in self.raw_elements():
            yield Scalar(self, a)

    def contains_subfield(self, sub: "Field") -> bool:
        return sub == self or (self.base is not None and sub == self.base)

    def lift(self, x: "Scalar") -> "Scalar":
        if x.field == self:
            return x
        if self.base is not None and x.field == self.base:
            return Scalar(self, self.lift_raw(x.field, x.v))
        raise FieldMismatch(f"cannot embed an element of {x.field} into {self}")

    def descend(self, x: "Scalar") -> Optional["Scalar"]:
        """``x`` as an element of :attr:`base`, or ``None`` if it is not there."""
        if self.base is None:
            return None
        raw = self.descend_raw(x.v)
        return None if raw is None else Scalar(self.base, raw)

    def sqrt(self, x: "Scalar") -> Optional["Scalar"]:
        """A square root of ``x`` in this field, or ``None``."""
        raw = self.sqrt_raw(self.lift(x).v)
        return None if raw is None else Scalar(self, raw)

    def quadratic_extension(self) -> "Field":
        raise NoRootInField(f"no supported quadratic extension of {self}")

    def eval_raw(self, coeffs, x):
        """Horner evaluation of raw coefficients (low degree first) at raw ``x``."""
        acc = self.from_int_raw(0)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


@dataclass(frozen=True)
class RationalField(Field):
    kind = "rational"

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def neg(self, a): return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def is_zero_raw(self, a): return a == 0
    def from_int_raw(self, n): return Fraction(n)
    def key(self, a): return (a.numerator, a.denominator)
    def text(self, a): return f"{a.numerator}/{a.denominator}"

    def parse_raw(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidField(f"bad rational literal {s!r}") from exc

    def sqrt_raw(self, a):
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def hash_raw(self, a): return hash(a)

    @property
    def characteristic(self): return 0

    def to_json(self): return {"kind": "rational"}
    def __str__(self): return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    kind = "prime"

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InvalidField(f"{self.p} is not prime")

    def add(self, a, b): return (a + b) % self.p
    def sub(self, a, b): return (a - b) % self.p
    def mul(self, a, b): return (a * b) % self.p
    def neg(self, a): return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return pow(a, -1, self.p)

    def is_zero_raw(self, a): return a == 0
    def from_int_raw(self, n): return n % self.p
    def key(self, a): return a
    def text(self, a): return str(a)

    def parse_raw(self, s):
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise InvalidField(f"bad GF({self.p}) literal {s!r}") from exc

    def sqrt_raw(self, a):
        if a == 0 or self.p == 2:
            return a
        if pow(a, (self.p - 1) // 2, self.p) != 1:
            return None
        return min(sqrt_mod(a, self.p, all_roots=True))

    def hash_raw(self, a): return hash(("GF", self.p, a))

    @property
    def characteristic(self): return self.p

    @property
    def size(self): return self.p

    def raw_elements(self): return iter(range(self.p))

    def eval_raw(self, coeffs, x):
        p = self.p
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        return acc

    def quadratic_extension(self):
        if self.p == 2:
            return BinaryField(2, 0b111)
        return QuadraticField(self.p, smallest_nonresidue(self.p))

    def to_json(self): return {"kind": "prime", "p": self.p}
    def __str__(self): return f"GF({self.p})"


_QUAD_RE = re.compile(r"^\s*([+-]?\d+)?\s*(?:([+-])\s*(\d*)\s*\*?\s*s)?\s*$")


@dataclass(frozen=True)
class QuadraticField(Field):
    """GF(p)(s) with s^2 = r for a nonresidue r, i.e. GF(p^2)."""

    p: int
    r: int
    kind = "prime_quadratic"
    base: Field = dc_field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise InvalidField(f"{self.p} is not an odd prime")
        if pow(self.r % self.p, (self.p - 1) // 2, self.p) != self.p - 1:
            raise InvalidField(f"{self.r} is a square modulo {self.p}")
        object.__setattr__(self, "base", PrimeField(self.p))

    def add(self, a, b): return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)
    def sub(self, a, b): return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def mul(self, a, b):
        p = self.p
        return ((a[0] * b[0] + self.r * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def neg(self, a): return ((-a[0]) % self.p, (-a[1]) % self.p)

    def inv(self, a):
        p = self.p
        norm = (a[0] * a[0] - self.r * a[1] * a[1]) % p
        if norm == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        n = pow(norm, -1, p)
        return ((a[0] * n) % p, (-a[1] * n) % p)

    def is_zero_raw(self, a): return a == (0, 0)
    def from_int_raw(self, n): return (n % self.p, 0)
    def key(self, a): return a[0] + a[1] * self.p
    def text(self, a): return f"{a[0]}+{a[1]}*s"

    def parse_raw(self, s):
        m = _QUAD_RE.match(s)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InvalidField(f"bad {self} literal {s!r}")
        a = int(m.group(1) or 0)
        b = 0
        if m.group(2):
            b = int(m.group(3) or 1) * (-1 if m.group(2) == "-" else 1)
        return (a % self.p, b % self.p)

    def sqrt_raw(self, a):
        fp = self.base
        x, y = a
        if y == 0:
            rt = fp.sqrt_raw(x)
            if rt is not None:
                return (rt, 0)
            # x / r is then a square and sqrt(x) = sqrt(x / r) * s
            rt = fp.sqrt_raw(fp.mul(x, fp.inv(self.r % self.p)))
            return (0, rt)
        norm = (x * x - self.r * y * y) % self.p
        n = fp.sqrt_raw(norm)
        if n is None:
            return None
        inv2 = fp.inv(2)
        for sign in (1, -1):
            u2 = fp.mul(fp.add(x, sign * n % self.p), inv2)
            u = fp.sqrt_raw(u2)
            if u:
                v = fp.mul(y, fp.inv(fp.mul(2, u)))
                return (u, v)
        return None

    def hash_raw(self, a):
        if a[1] == 0:
            return hash(("GF", self.p, a[0]))
        return hash(("GF2", self.p, self.r, a))

    @property
    def characteristic(self): return self.p

    @property
    def size(self): return self.p * self.p

    def raw_elements(self):
        p = self.p
        return ((n % p, n // p) for n in range(p * p))

    def eval_raw(self, coeffs, x):
        p, r = self.p, self.r
        xa, xb = x
        a = b = 0
        for ca, cb in reversed(coeffs):
            a, b = (a * xa + r * b * xb + ca) % p, (a * xb + b * xa + cb) % p
        return (a, b)

    def lift_raw(self, sub, a):
        return (a, 0)

    def descend_raw(self, a):
        return a[0] if a[1] == 0 else None

    def to_json(self): return {"kind": "prime_quadratic", "p": self.p, "r": self.r}
    def __str__(self): return f"GF({self.p}^2)"


@dataclass(frozen=True)
class BinaryField(Field):
    """GF(2^k) = GF(2)[t]/(m(t)); ``m`` is the modulus bit pattern."""

    k: int
    m: int
    kind = "binary"
    base: Field = dc_field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not 1 <= self.k <= 16:
            raise InvalidField("binary fields are supported for 1 <= k <= 16")
        if self.m.bit_length() - 1 != self.k or not _gf2_irreducible(self.m):
            raise InvalidField(f"{bin(self.m)} is not an irreducible of degree {self.k}")
        object.__setattr__(self, "base", PrimeField(2))

    def add(self, a, b): return a ^ b
    def sub(self, a, b): return a ^ b
    def mul(self, a, b): return _gf2_mod(_clmul(a, b), self.m)
    def neg(self, a): return a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return self._pow(a, (1 << self.k) - 2)

    def _pow(self, a, e):
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def is_zero_raw(self, a): return a == 0
    def from_int_raw(self, n): return n & 1
    def key(self, a): return a
    def text(self, a): return hex(a)

    def parse_raw(self, s):
        try:
            v = int(s, 16)
        except ValueError as exc:
            raise InvalidField(f"bad {self} literal {s!r}") from exc
        return _gf2_mod(v, self.m)

    def sqrt_raw(self, a):
        # Frobenius is bijective: sqrt(a) = a^(2^(k-1)).
        return self._pow(a, 1 << (self.k - 1))

    def hash_raw(self, a):
        if a in (0, 1):
            return hash(("GF", 2, a))
        return hash(("GF2k", self.k, self.m, a))

    @property
    def characteristic(self): return 2

    @property
    def size(self): return 1 << self.k

    def raw_elements(self): return iter(range(1 << self.k))

    def lift_raw(self, sub, a):
        return a

    def descend_raw(self, a):
        return a if a in (0, 1) else None

    def to_json(self): return {"kind": "binary", "k": self.k, "m": bin(self.m)}
    def __str__(self): return f"GF(2^{self.k})"


QQ = RationalField()


def field_from_json(obj: dict) -> Field:
    """Build a field from its JSON descriptor."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidField(f"bad field descriptor {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "rational":
            return QQ
        if kind == "prime":
            return PrimeField(int(obj["p"]))
        if kind == "prime_quadratic":
            return QuadraticField(int(obj["p"]), int(obj["r"]))
        if kind == "binary":
            m = obj["m"]
            m = int(m, 0) if isinstance(m, str) else int(m)
            return BinaryField(int(obj["k"]), m)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidField):
            raise
        raise InvalidField(f"bad field descriptor {obj!r}") from exc
    raise InvalidField(f"unknown field kind {kind!r}")


class Scalar:
    """Immutable element of an exact field."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field == self.field:
                return self, other
            if self.field.contains_subfield(other.field):
                return self, self.field.lift(other)
            if other.field.contains_subfield(self.field):
                return other.field.lift(self), other
            raise FieldMismatch(f"{self.field} and {other.field} are unrelated")
        if isinstance(other, (int, Fraction)):
            return self, self.field(other)
        return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, a.field.add(a.v, b.v))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, a.field.sub(a.v, b.v))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, a.field.sub(b.v, a.v))

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, a.field.mul(a.v, b.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, a.field.mul(a.v, a.field.inv(b.v)))

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return Scalar(a.field, a.field.mul(b.v, a.field.inv(a.v)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.v))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        f = self.field
        base = self.v
        if e < 0:
            base = f.inv(base)
            e = -e
        out = f.from_int_raw(1)
        while e:
            if e & 1:
                out = f.mul(out, base)
            base = f.mul(base, base)
            e >>= 1
        return Scalar(f, out)

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.v))

    def is_zero(self) -> bool:
        return self.field.is_zero_raw(self.v)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.field == self.field:
                return self.v == other.v
            try:
                a, b = self._coerce(other)
            except FieldMismatch:
                return False
            return a.v == b.v
        if isinstance(other, (int, Fraction)):
            return self.v == self.field(other).v
        return NotImplemented

    def __ne__(self, other):
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    def __hash__(self):
        return self.field.hash_raw(self.v)

    def sort_key(self):
        return self.field.key(self.v)

    def descend(self) -> "Scalar":
        """Move to the base field when the value lies there; else ``self``."""
        low = self.field.descend(self)
        return self if low is None else low

    def __str__(self):
        return self.field.text(self.v)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


def char(f: Field) -> int:
    """Characteristic of ``f`` (0 for the rationals)."""
    return f.characteristic


def int_embed(f: Field, n: int) -> Scalar:
    """The image of the integer ``n`` in ``f``."""
    return f(n)


def solve_quadratic_unit(f: Field, beta: Scalar) -> tuple[Scalar, ...]:
    """All ``q`` with ``q + 1/q = beta``, sorted canonically.

    Over GF(p) the roots may live in the quadratic extension.  Raises
    :class:`NoRootInField` when no supported field contains a root.
    """
    beta = f.lift(beta) if beta.field != f and f.contains_subfield(beta.field) else beta
    f = beta.field
    if f.characteristic == 2:
        if beta.is_zero():
            return (f.one,)
        if f.size is None or f.size > 1 << 16:
            raise NoRootInField(f"no root of x^2 + {beta}x + 1 in {f}")
        roots = [x for x in f.elements() if (x * x + beta * x + 1).is_zero()]
        if not roots:
            raise NoRootInField(f"x^2 + {beta}x + 1 has no root in {f}")
        return tuple(sorted(roots, key=Scalar.sort_key))
    disc = beta * beta - 4
    rt = f.sqrt(disc)
    target = f
    if rt is None:
        if f.kind == "rational":
            raise NoRootInField(
                f"beta^2 - 4 = {disc} is not a rational square; supply q explicitly"
            )
        if f.kind != "prime":
            raise NoRootInField(f"x^2 - {beta}x + 1 has no root in {f}")
        target = f.quadratic_extension()
        rt = target.sqrt(target.lift(disc))
        beta = target.lift(beta)
    roots = {(beta + rt) / 2, (beta - rt) / 2}
    return tuple(sorted(roots, key=Scalar.sort_key))
