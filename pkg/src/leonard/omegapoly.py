"""The polynomial f_w(x) = w (x^d - 1) - (x - 1)(x^(d-1) + 1).

Its roots other than +-1 are exactly the q of the type I arrays whose
Omega equals w.  This module builds it, reproduces its special
factorizations, counts and finds roots, detects repeated roots by two
independent routes, and searches for admissible values of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Iterator, Optional

from .errors import BudgetExhausted, NoSpecialCase
from .field import Field, Scalar
from .poly import (
    DEFAULT_SCAN_BUDGET,
    Polynomial,
    bareiss_det,
    distinct_roots,
    poly_gcd,
    resultant,
    sylvester_matrix,
)

__all__ = [
    "OmegaPolynomial",
    "Factorization",
    "CLAUSES",
    "build",
    "factor_special",
    "root_bound",
    "roots_excluding_pm1",
    "has_repeated_root",
    "gamma_membership",
    "find_admissible_omega",
    "omega_of_root",
    "repeated_root_locus",
]

CLAUSES = ("i", "ii", "iii", "iv", "v", "vi")


@dataclass(frozen=True)
class OmegaPolynomial:
    field: Field
    d: int
    omega: Scalar
    poly: Polynomial


def build(field: Field, d: int, omega) -> OmegaPolynomial:
    if d < 3:
        raise ValueError("d must be at least 3")
    w = field(omega)
    coeffs = [field.zero] * (d + 1)
    # w x^d - w - (x^d - x^(d-1) + x - 1)
    coeffs[d] = w - 1
    coeffs[d - 1] = field.one
    coeffs[1] = coeffs[1] - 1
    coeffs[0] = coeffs[0] + 1 - w
    return OmegaPolynomial(field, d, w, Polynomial(field, coeffs))


@dataclass(frozen=True)
class Factorization:
    """``constant * prod(factor ** exp) * g``."""

    clause: str
    constant: Scalar
    factors: tuple[tuple[Polynomial, int], ...]
    g: Polynomial

    def expand(self) -> Polynomial:
        out = self.g * self.constant
        for fac, e in self.factors:
            out = out * fac**e
        return out


def _clause_applies(f: OmegaPolynomial, clause: str) -> bool:
    F, d, w = f.field, f.d, f.omega
    d_ok = not F(d).is_zero()
    if clause == "i":
        return True
    if clause == "ii":
        return d % 2 == 0
    if clause == "iii":
        return d % 2 == 0 and d_ok and w == F(2) / d
    if clause == "iv":
        return d % 2 == 1 and d_ok and w == F(2) / d
    if clause == "v":
        return d % 2 == 0 and d_ok and w == F(2 * (d - 1)) / d
    return d % 2 == 1 and w == 2


def _even_odd_g(F: Field, d: int, odd_sign: int) -> Polynomial:
    half = d // 2
    coeffs = [F.zero] * (d - 3)
    for r in range((d - 4) // 2 + 1):
        coeffs[2 * r] = F((r + 1) * (half - r - 1))
    for r in range(1, (d - 4) // 2 + 1):
        coeffs[2 * r - 1] = F(odd_sign * r * (half - r - 1))
    return Polynomial(F, coeffs)


def factor_special(f: OmegaPolynomial, clause: Optional[str] = None) -> Factorization:
    """One of the displayed factorizations of f_w.

    With ``clause=None`` the most specific applicable clause is used
    (clause (i) always applies).  Asking for a clause whose hypothesis fails
    raises :class:`NoSpecialCase`.
    """
    if clause is None:
        for c in ("iii", "iv", "v", "vi", "ii", "i"):
            if _clause_applies(f, c):
                clause = c
                break
    if clause not in CLAUSES:
        raise ValueError(f"unknown clause {clause!r}")
    if not _clause_applies(f, clause):
        raise NoSpecialCase(f"clause ({clause}) does not apply to d={f.d}, w={f.omega}")
    F, d, w = f.field, f.d, f.omega
    xm1 = Polynomial(F, [-1, 1])
    xp1 = Polynomial(F, [1, 1])
    if clause == "i":
        g = Polynomial(F, [w - 1] + [w] * (d - 2) + [w - 1])
        return Factorization(clause, F.one, ((xm1, 1),), g)
    if clause == "ii":
        coeffs = [F.zero] * (d - 1)
        for r in range(d - 1):
            coeffs[r] = F(-((-1) ** r))
        for r in range((d - 2) // 2 + 1):
            coeffs[2 * r] = coeffs[2 * r] + w
        return Factorization(clause, F.one, ((xm1, 1), (xp1, 1)), Polynomial(F, coeffs))
    if clause == "iii":
        return Factorization(clause, -F(2) / d, ((xm1, 3), (xp1, 1)), _even_odd_g(F, d, 1))
    if clause == "iv":
        g = Polynomial(F, [(r + 1) * (d - r - 2) for r in range(d - 2)])
        return Factorization(clause, -F(1) / d, ((xm1, 3),), g)
    if clause == "v":
        return Factorization(clause, F(2) / d, ((xm1, 1), (xp1, 3)), _even_odd_g(F, d, -1))
    coeffs = [F.zero] * (d - 2)
    for r in range((d - 3) // 2 + 1):
        coeffs[2 * r] = F.one
    return Factorization(clause, F.one, ((xm1, 1), (xp1, 2)), Polynomial(F, coeffs))


def root_bound(f: OmegaPolynomial) -> int:
    """Upper bound on the number of roots other than +-1, by clause."""
    F, d, w = f.field, f.d, f.omega
    d_ok = not F(d).is_zero()
    if d % 2 == 0:
        if d_ok and (w == F(2) / d or w == F(2 * (d - 1)) / d):
            return d - 4
        return d - 2
    if (d_ok and w == F(2) / d) or w == 2:
        return d - 3
    return d - 1


def roots_excluding_pm1(f: OmegaPolynomial, budget: int = DEFAULT_SCAN_BUDGET) -> list[Scalar]:
    """Distinct in-field roots of f_w other than 1 and -1."""
    if f.omega == 1:
        raise ValueError("w = 1 is excluded")
    return [r for r in distinct_roots(f.poly, budget) if r != 1 and r != -1]


def has_repeated_root(f: OmegaPolynomial) -> bool:
    """Repeated root over the algebraic closure, decided by gcd and by resultant."""
    p = f.poly
    dp = p.derivative()
    if dp.is_zero():
        return p.degree >= 1
    by_gcd = poly_gcd(p, dp).degree >= 1
    by_res = resultant(p, dp).is_zero()
    if by_gcd != by_res:
        raise AssertionError("gcd and resultant disagree on a repeated root")
    return by_gcd


def gamma_membership(q: Scalar, d: int) -> bool:
    """Is q an r-th root of unity for some 3 <= r <= d, with q^2 != 1?"""
    if q.is_zero():
        raise ValueError("q must be nonzero")
    if q * q == 1:
        return False
    return any(q**r == 1 for r in range(3, d + 1))


def omega_of_root(q: Scalar, d: int) -> Optional[Scalar]:
    """The unique w with f_w(q) = 0, or ``None`` when q^d = 1."""
    den = q**d - 1
    if den.is_zero():
        return None
    return (q - 1) * (q ** (d - 1) + 1) / den


def _rationals_by_height() -> Iterator[Fraction]:
    yield Fraction(0)
    for h in count(1):
        batch = set()
        for den in range(1, h + 1):
            for num in (h, -h) if den < h else range(-h, h + 1):
                batch.add(Fraction(num, den))
        for num in range(-h, h + 1):
            batch.add(Fraction(num, h))
        yield from sorted((x for x in batch if x and max(abs(x.numerator), x.denominator) == h),
                          key=lambda x: (x.numerator, x.denominator))


def _omega_candidates(field: Field) -> Iterator[Scalar]:
    if field.size is None:
        for x in _rationals_by_height():
            yield field(x)
    else:
        yield from field.elements()


def find_admissible_omega(field: Field, d: int, budget: int = 200,
                          scan_budget: int = DEFAULT_SCAN_BUDGET) -> list[Scalar]:
    """Values w (not 1 or 2) with no repeated root and no root in Gamma.

    At most ``budget`` candidates are examined, in canonical order.
    """
    if field.characteristic == 2:
        raise ValueError("characteristic 2 is excluded")
    if field(d).is_zero():
        raise ValueError(f"d = {d} vanishes in {field}")
    found = []
    for n, w in enumerate(_omega_candidates(field)):
        if n >= budget:
            break
        if w == 1 or w == 2:
            continue
        f = build(field, d, w)
        if has_repeated_root(f):
            continue
        if any(gamma_membership(r, d) for r in distinct_roots(f.poly, scan_budget)):
            continue
        found.append(w)
    if not found:
        raise BudgetExhausted(f"no admissible w among the first {budget} candidates")
    return found


def repeated_root_locus(field: Field, d: int) -> Polynomial:
    """det of the Sylvester matrix of (f_w, f_w') as a polynomial in w.

    Formal degrees d and d - 1 are used, matching the displayed matrix, so
    w = 1 (where the leading coefficient drops) is a root.
    """
    W = Polynomial.x(field)
    one = Polynomial(field, [1])
    zero = Polynomial(field)
    # coefficients highest degree first, each a polynomial in w
    f = [zero] * (d + 1)
    f[0] = W - 1
    f[1] = one
    f[d - 1] = -one
    f[d] = one - W
    fp = [f[k] * (d - k) for k in range(d)]
    mat = sylvester_matrix(f, fp, zero)
    return bareiss_det(mat, one=one, zero=zero, exact_div=Polynomial.exact_div,
                       is_zero=Polynomial.is_zero)
