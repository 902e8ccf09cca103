"""Families of floor((d-1)/2) distinct parameter arrays with common end-parameters.

The shared ends are (0, 1, 0, 1, 1, -1, zeta, omega - zeta).  For each
root q of f_omega off {+-1} the array with fundamental parameter q + 1/q
is built; the Z polynomials tell which zeta break it.  Since no field here
is algebraically closed, prime fields GF(p) are searched for an omega whose
f_omega splits with the required root structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

from sympy import nextprime

from .errors import NoValidArray, SearchExhausted
from .field import Field, PrimeField, Scalar
from .omegapoly import build as build_omega_poly, gamma_membership, has_repeated_root
from .parray import EndParameters, ParameterArray, TypeTag, beta
from .poly import Polynomial, distinct_roots
from .reconstruct import reconstruct_tagged

__all__ = ["WitnessFamily", "ZPolys", "z_polynomials", "bad_zeta_set", "shared_ends",
           "build_witness", "family_size", "DEFAULT_MAX_PRIME"]

DEFAULT_MAX_PRIME = 5000


def family_size(d: int) -> int:
    return (d - 1) // 2


class ZPolys(NamedTuple):
    z1: Optional[Polynomial]
    z2: Optional[Polynomial]
    z3: Optional[Polynomial]
    z4: Optional[Polynomial]


@dataclass(frozen=True)
class WitnessFamily:
    field: Field
    d: int
    omega: Scalar
    zeta: Scalar
    qs: tuple[Scalar, ...]
    arrays: tuple[ParameterArray, ...]
    shared_ends: EndParameters

    def table(self) -> str:
        """Plain-text summary: one row per array with beta, q and entries."""
        rows = [f"field {self.field}  d={self.d}  omega={self.omega}  zeta={self.zeta}"]
        for q, p in zip(self.qs, self.arrays):
            rows.append(f"beta={beta(p)}  q={q}")
            for name in ("theta", "theta_star", "varphi", "phi"):
                rows.append(f"  {name:<10} " + " ".join(str(x) for x in getattr(p, name)))
        return "\n".join(rows)


def _check_q(q: Scalar, d: int) -> None:
    if q.is_zero() or any(q**i == 1 for i in range(1, d + 1)):
        raise ValueError("q must be nonzero with q^i != 1 for 1 <= i <= d")


def z_polynomials(field: Field, d: int, q, i: int, j: Optional[int] = None) -> ZPolys:
    """Z1, Z2 at (i, j) when ``j`` is given; Z3, Z4 at i when 1 <= i <= d.

    Each is a polynomial in zeta of degree at most 2.
    """
    q = field(q)
    _check_q(q, d)
    F = field
    qd, qd1 = q**d - 1, q ** (d - 1) - 1
    z1 = z2 = z3 = z4 = None
    if j is not None:
        if not (0 <= i <= d and 0 <= j <= d):
            raise ValueError("Z1, Z2 need 0 <= i, j <= d")
        e = d - i - j
        lin = qd * (q**e - 1)
        z1 = Polynomial(F, [q * qd1 * (q ** (e - 1) - 1), lin])
        z2 = Polynomial(F, [-(q ** (d - 1) + 1) * (q ** (e + 1) + 1)
                            + 2 * q**e * (q ** (i + j) + 1), lin])
    if 1 <= i <= d:
        a, b = q ** (i - 1) - 1, q ** (d - i) - 1
        sq = qd**2 * a * b
        z3 = Polynomial(F, [
            -qd1 * (q**i - 1) * ((q ** (d - 1) + 1) * (q ** (d - i + 1) + 1)
                                 - 2 * q ** (d - i) * (q**i + 1)),
            -(q - 1) * qd * (q ** (d - 1) + 1) * a * b,
            sq])
        z4 = Polynomial(F, [
            -qd1 * a * ((q ** (d - 1) + 1) * (q ** (d - i + 2) + 1)
                        - 2 * q ** (d - i + 1) * (q ** (i - 1) + 1)),
            -(q - 1) * qd * (b * (q ** (d + i - 2) - 1) - q ** (d - i) * a**2),
            sq])
    elif j is None:
        raise ValueError("Z3, Z4 need 1 <= i <= d")
    return ZPolys(z1, z2, z3, z4)


def bad_zeta_set(field: Field, d: int, q) -> frozenset:
    """Every zeta in ``field`` at which some Z1..Z4 vanishes."""
    bad = set()
    polys = []
    for i, j in combinations(range(d + 1), 2):
        z = z_polynomials(field, d, q, i, j)
        polys += [z.z1, z.z2]
    for i in range(1, d + 1):
        z = z_polynomials(field, d, q, i)
        polys += [z.z3, z.z4]
    for p in polys:
        if p.is_zero():
            raise ValueError("a Z polynomial vanishes identically")
        bad.update(distinct_roots(p))
    return frozenset(bad)


def shared_ends(field: Field, d: int, omega, zeta) -> EndParameters:
    w, z = field(omega), field(zeta)
    return EndParameters(field, d, 0, 1, 0, 1, 1, -1, z, w - z)


def _omega_classes(F: PrimeField, d: int) -> dict:
    """w -> roots q of f_w in F off {0, +-1}, by inverting q -> w(q)."""
    classes: dict = {}
    p = F.p
    for n in range(2, p - 1):
        q = Scalar(F, n)
        den = q**d - 1
        if den.is_zero():
            continue
        w = (q - 1) * (q ** (d - 1) + 1) / den
        classes.setdefault(w, []).append(q)
    return classes


def _family_for(F: PrimeField, d: int, w: Scalar, roots: list) -> Optional[WitnessFamily]:
    n = family_size(d)
    qs = sorted({min(q, q.inverse(), key=Scalar.sort_key) for q in roots}, key=Scalar.sort_key)
    if len(qs) != n:
        return None
    bad = set()
    for q in qs:
        bad |= bad_zeta_set(F, d, q)
    for zeta in F.elements():
        if zeta in bad:
            continue
        e = shared_ends(F, d, w, zeta)
        try:
            arrays = tuple(reconstruct_tagged(e, TypeTag("I", q + q.inverse(), q)) for q in qs)
        except NoValidArray:
            continue
        return WitnessFamily(F, d, w, zeta, tuple(qs), arrays, e)
    return None


def _search_one(F: PrimeField, d: int, omega_budget: int) -> Optional[WitnessFamily]:
    n = family_size(d)
    classes = _omega_classes(F, d)
    tried = 0
    for w in sorted(classes, key=Scalar.sort_key):
        if w == 1 or w == 2:
            continue
        if tried >= omega_budget:
            break
        tried += 1
        roots = classes[w]
        if len(roots) != 2 * n or any(gamma_membership(q, d) for q in roots):
            continue
        if has_repeated_root(build_omega_poly(F, d, w)):
            continue
        fam = _family_for(F, d, w, roots)
        if fam is not None:
            return fam
    return None


def build_witness(d: int, field: Optional[PrimeField] = None,
                  max_prime: int = DEFAULT_MAX_PRIME,
                  omega_budget: Optional[int] = None) -> WitnessFamily:
    """Search for a witness family of diameter ``d``.

    Primes are tried in ascending order from d + 2, skipping those dividing
    2d; within GF(p) at most ``omega_budget`` (default 5p) values of omega
    are examined.  A given ``field`` restricts the search to it.
    """
    if d < 3:
        raise ValueError("d must be at least 3")
    if field is not None:
        fields = [field]
        if field.characteristic == 2 or field(d).is_zero():
            raise ValueError("need characteristic other than 2 with d nonzero")
    else:
        fields = []
        p = nextprime(d + 1)
        while p <= max_prime:
            if (2 * d) % p:
                fields.append(p)
            p = nextprime(p)
    for F in fields:
        F = F if isinstance(F, PrimeField) else PrimeField(F)
        fam = _search_one(F, d, omega_budget if omega_budget is not None else 5 * F.p)
        if fam is not None:
            return fam
    raise SearchExhausted(f"no witness family for d={d} within the search budget")
