"""Dense univariate polynomials over an exact field.

Coefficients are stored low degree first; the zero polynomial has no
coefficients.  Besides the usual ring operations this module provides the
monic Euclidean gcd, Sylvester resultants (Bareiss elimination, which also
works when the coefficients are themselves polynomials) and root finding.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

from sympy import divisors

from .errors import FieldMismatch, FieldTooLarge
from .field import Field, Scalar

__all__ = [
    "Polynomial",
    "poly_gcd",
    "resultant",
    "sylvester_matrix",
    "bareiss_det",
    "poly_roots",
    "distinct_roots",
    "count_distinct_roots",
    "DEFAULT_SCAN_BUDGET",
]

DEFAULT_SCAN_BUDGET = 10**6


class Polynomial:
    """Immutable polynomial with coefficients in ``field``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Scalar) and c.field == field else field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> "Polynomial":
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable) -> "Polynomial":
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [-field(r), 1])
        return out

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return Polynomial(self.field, [other])

    def __add__(self, other):
        o = self._other(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self.field, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if self.is_zero() or o.is_zero():
            return Polynomial(self.field)
        f = self.field
        a = [c.v for c in self.coeffs]
        b = [c.v for c in o.coeffs]
        out = [f.from_int_raw(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if f.is_zero_raw(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(ai, bj))
        return Polynomial(f, [Scalar(f, v) for v in out])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        o = self._other(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = [c for c in self.coeffs]
        inv_lc = o.lc.inverse()
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Polynomial(f), self
        quo = [f.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + o.degree] * inv_lc
            quo[k] = c
            if c.is_zero():
                continue
            for j, oc in enumerate(o.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return Polynomial(f, quo), Polynomial(f, rem[: o.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Scalar)):
            return self == Polynomial(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, x):
        f = self.field
        if isinstance(x, Scalar) and x.field != f:
            # evaluate in the extension that contains x
            lifted = Polynomial(x.field, [x.field.lift(c) for c in self.coeffs])
            return lifted(x)
        x = f(x)
        return Scalar(f, f.eval_raw([c.v for c in self.coeffs], x.v))

    def derivative(self) -> "Polynomial":
        return Polynomial(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def lift(self, ext: Field) -> "Polynomial":
        return Polynomial(ext, [ext.lift(c) for c in self.coeffs])

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        out = Polynomial(self.field, [1]) % mod
        base = self % mod
        while e:
            if e & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            e >>= 1
        return out

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Polynomial({self.field}, {self})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def sylvester_matrix(a: Sequence, b: Sequence, zero) -> list[list]:
    """Sylvester matrix of coefficient lists given highest degree first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(a) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(b) + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence], *, one, zero, exact_div: Callable,
                is_zero: Callable):
    """Fraction-free determinant over an integral domain.

    ``exact_div(a, b)`` must return ``a / b`` when the quotient is exact.
    """
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = False
    prev = one
    for k in range(n - 1):
        if is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = not sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign else det


def resultant(a: Polynomial, b: Polynomial) -> Scalar:
    """Resultant of ``a`` and ``b`` as the Sylvester determinant."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    f = a.field
    if a.degree == 0 and b.degree == 0:
        return f.one
    mat = sylvester_matrix(a.coeffs[::-1], b.coeffs[::-1], f.zero)
    return bareiss_det(mat, one=f.one, zero=f.zero, exact_div=lambda x, y: x / y,
                       is_zero=Scalar.is_zero)


def count_distinct_roots(p: Polynomial) -> int:
    """Number of distinct roots of ``p`` in its (finite) field."""
    size = p.field.size
    if size is None:
        return len(distinct_roots(p))
    xp = Polynomial.x(p.field).powmod(size, p)
    h = poly_gcd(p, xp - Polynomial.x(p.field))
    return h.degree


def _multiplicity(p: Polynomial, r: Scalar) -> int:
    lin = Polynomial(p.field, [-r, 1])
    k = 0
    while not p.is_zero():
        q, rem = divmod(p, lin)
        if not rem.is_zero():
            break
        p = q
        k += 1
    return k


def _rational_roots(p: Polynomial) -> list[Scalar]:
    f = p.field
    den = lcm(*(c.v.denominator for c in p.coeffs))
    ints = [int(c.v * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    found = []
    if ints[0] == 0:
        found.append(f.zero)
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return found
    work = Polynomial(f, ints)
    nums = divisors(abs(ints[0]))
    dens = divisors(abs(ints[-1]))
    seen = set()
    for v in dens:
        for u in nums:
            for cand in (Fraction(u, v), Fraction(-u, v)):
                if cand in seen:
                    continue
                seen.add(cand)
                if work(cand).is_zero():
                    found.append(f(cand))
    return found


def distinct_roots(p: Polynomial, budget: int = DEFAULT_SCAN_BUDGET) -> list[Scalar]:
    """Distinct roots of ``p`` in its field, in canonical order."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    f = p.field
    if p.degree == 0:
        return []
    if f.size is None:
        sqf = p.exact_div(poly_gcd(p, p.derivative()))
        return sorted(_rational_roots(sqf), key=Scalar.sort_key)
    if f.size > budget:
        raise FieldTooLarge(f"{f} has {f.size} elements, budget is {budget}")
    want = count_distinct_roots(p)
    raw = [c.v for c in p.coeffs]
    out = []
    if want:
        for x in f.raw_elements():
            if f.is_zero_raw(f.eval_raw(raw, x)):
                out.append(Scalar(f, x))
                if len(out) == want:
                    break
    return sorted(out, key=Scalar.sort_key)


def poly_roots(p: Polynomial, budget: int = DEFAULT_SCAN_BUDGET) -> list[Scalar]:
    """Roots of ``p`` in its field with multiplicity, in canonical order."""
    out = []
    for r in distinct_roots(p, budget):
        out.extend([r] * _multiplicity(p, r))
    return out
