"""Rebuild a parameter array from its end-parameters and fundamental parameter.

Two independent routes produce varphi_i, phi_i: the literal recursion
through the theta sums (``phi_by_recursion`` on top of ``theta_from_ends``)
and the direct per-type formulas in the end-parameters (``phi_by_appendix``).
"""

from __future__ import annotations

from typing import Optional

from .errors import DegenerateQ, NoValidArray
from .field import Field, Scalar
from .parray import (
    EndParameters,
    ParameterArray,
    TypeTag,
    _theta_sum,
    tag_for,
    validate,
)

__all__ = ["theta_from_ends", "phi_by_recursion", "phi_by_appendix", "reconstruct"]


def _nonzero(x: Scalar, what: str) -> Scalar:
    if x.is_zero():
        raise DegenerateQ(f"{what} vanishes")
    return x


def _work_field(e: EndParameters, t: TypeTag) -> Field:
    f = t.q.field
    if f != e.field and not f.contains_subfield(e.field):
        f = e.field
    return f


def theta_from_ends(e: EndParameters, t: TypeTag):
    """theta_i and theta*_i in terms of the end-parameters and q."""
    f = _work_field(e, t)
    e = e.lift(f)
    d, kind = e.d, t.tag
    q = f.lift(t.q)
    t0, td, s0, sd = e.theta0, e.thetad, e.theta_star0, e.theta_stard
    gap, gap_s = t0 - td, s0 - sd
    # the two "cross" terms shared by every type
    x = (e.phi1 - e.varphid) / gap_s
    xs = (e.phid - e.varphid) / gap

    if kind == "IV":
        return ([t0, t0 + x, td + x, td], [s0, s0 + xs, sd + xs, sd])

    theta, theta_s = [], []
    if kind == "I":
        den_a = _nonzero((q ** (d - 1) - 1) * (q**d - 1), "(q^(d-1) - 1)(q^d - 1)")
        den_b = _nonzero((q - 1) * (q ** (d - 1) - 1), "(q - 1)(q^(d-1) - 1)")
        for i in range(d + 1):
            a = (q**i - 1) * (q ** (2 * d - i - 1) - 1) / den_a
            b = (q**i - 1) * (q ** (d - i) - 1) / den_b
            theta.append(t0 - a * gap + b * x)
            theta_s.append(s0 - a * gap_s + b * xs)
        return theta, theta_s
    if kind == "II":
        dd = _nonzero(f(d), "d")
        d1 = _nonzero(f(d - 1), "d - 1")
        for i in range(d + 1):
            a = f(i * (2 * d - i - 1)) / (dd * d1)
            b = f(i * (d - i)) / d1
            theta.append(t0 - a * gap + b * x)
            theta_s.append(s0 - a * gap_s + b * xs)
        return theta, theta_s
    if kind == "III+":
        dd = _nonzero(f(d), "d")
        for i in range(d + 1):
            if i % 2 == 0:
                theta.append(t0 - i * gap / dd)
                theta_s.append(s0 - i * gap_s / dd)
            else:
                a = f(2 * d - i - 1) / dd
                theta.append(t0 - a * gap + x)
                theta_s.append(s0 - a * gap_s + xs)
        return theta, theta_s
    d1 = _nonzero(f(d - 1), "d - 1")
    for i in range(d + 1):
        if i % 2 == 0:
            a, b = f(i) / d1, f(i) / d1
        else:
            a, b = f(2 * d - i - 1) / d1, f(d - i) / d1
        theta.append(t0 - a * gap + b * x)
        theta_s.append(s0 - a * gap_s + b * xs)
    return theta, theta_s


def phi_by_recursion(e: EndParameters, theta, theta_star):
    """varphi_i, phi_i from the defining sum identities, sums taken literally."""
    f = theta[0].field
    e = e.lift(f)
    d = e.d
    varphi, phi = [], []
    for i in range(1, d + 1):
        s = _theta_sum(theta, d, i)
        rise = theta_star[i] - theta_star[0]
        varphi.append(e.phi1 * s + rise * (theta[i - 1] - theta[d]))
        phi.append(e.varphi1 * s + rise * (theta[d - i + 1] - theta[0]))
    return varphi, phi


def _appendix_type1(e, q, d, i, P):
    v1, vd, p1, pd = e.varphi1, e.varphid, e.phi1, e.phid
    qd1 = _nonzero(q ** (d - 1) - 1, "q^(d-1) - 1")
    qd = _nonzero(q**d - 1, "q^d - 1")
    q1 = _nonzero(q - 1, "q - 1")
    a = q ** (i - 1) * (q**i - 1) * (q ** (d - i) - 1) * (q ** (d - i + 1) - 1) \
        * (q ** (2 * d - i - 1) - 1) * P / (qd1**2 * qd**2)
    c = (q**i - 1) * (q ** (d - i + 1) - 1) / (q1 * qd1**2 * qd)
    u = (q ** (i - 1) - 1) * (q ** (2 * d - i - 1) - 1)
    w = q ** (i - 1) * (q ** (d - i) - 1) ** 2
    k = (q ** (i - 1) - 1) * (q**i - 1) * (q ** (d - i) - 1) * (q ** (d - i + 1) - 1) \
        / (q1**2 * qd1**2 * P)
    varphi = -a + c * (u * vd + w * (p1 + pd - vd)) + k * (p1 - vd) * (pd - vd)
    phi = a + c * (u * pd + w * (v1 + vd - pd)) - k * (v1 - pd) * (vd - pd)
    return varphi, phi


def _appendix_type2(e, f, d, i, P):
    v1, vd, p1, pd = e.varphi1, e.varphid, e.phi1, e.phid
    dd = _nonzero(f(d), "d")
    d1 = _nonzero(f(d - 1), "d - 1")
    a = f(i * (d - i) * (d - i + 1) * (2 * d - i - 1)) * P / (dd**2 * d1**2)
    c = f(i * (d - i + 1)) / (dd * d1**2)
    u, w = (i - 1) * (2 * d - i - 1), (d - i) ** 2
    k = f(i * (i - 1) * (d - i) * (d - i + 1)) / (d1**2 * P)
    varphi = -a + c * (u * vd + w * (p1 + pd - vd)) + k * (p1 - vd) * (pd - vd)
    phi = a + c * (u * pd + w * (v1 + vd - pd)) - k * (v1 - pd) * (vd - pd)
    return varphi, phi


def _appendix_type3p(e, f, d, i, P):
    v1, vd, p1, pd = e.varphi1, e.varphid, e.phi1, e.phid
    dd = _nonzero(f(d), "d")
    if i % 2 == 0:
        return (i * (dd * vd + (d - i) * P) / dd**2,
                i * (dd * pd - (d - i) * P) / dd**2)
    return ((d - i + 1) * (dd * (p1 + pd - vd) - (2 * d - i - 1) * P) / dd**2,
            (d - i + 1) * (dd * (v1 + vd - pd) + (2 * d - i - 1) * P) / dd**2)


def _appendix_type3m(e, f, d, i, P):
    v1, vd, p1, pd = e.varphi1, e.varphid, e.phi1, e.phid
    d1sq = _nonzero(f(d - 1), "d - 1") ** 2
    if i % 2 == 0:
        c = f(i * (d - i + 1)) / (d1sq * P)
        return (c * (p1 - vd - P) * (pd - vd - P),
                -c * (v1 - pd + P) * (vd - pd + P))
    u, w = (i - 1) * (2 * d - i - 1), (d - i) ** 2
    a = (d - i) * (2 * d - i - 1) * P / d1sq
    k = f((i - 1) * (d - i)) / (d1sq * P)
    varphi = -a + (u * vd + w * (p1 + pd - vd)) / d1sq + k * (p1 - vd) * (pd - vd)
    phi = a + (u * pd + w * (v1 + vd - pd)) / d1sq - k * (v1 - pd) * (vd - pd)
    return varphi, phi


def phi_by_appendix(e: EndParameters, t: TypeTag):
    """varphi_i, phi_i straight from the end-parameters and q."""
    f = _work_field(e, t)
    e = e.lift(f)
    d, kind = e.d, t.tag
    P = (e.theta0 - e.thetad) * (e.theta_star0 - e.theta_stard)
    if kind == "IV":
        v1, v3, p1, p3 = e.varphi1, e.varphid, e.phi1, e.phid
        v2 = (p1 - v1 + P) * (p1 - v3 + P) / P
        p2 = (v1 - p1 + P) * (v1 - p3 + P) / P
        return [v1, v2, v3], [p1, p2, p3]
    q = f.lift(t.q)
    varphi, phi = [], []
    for i in range(1, d + 1):
        if kind == "I":
            a, b = _appendix_type1(e, q, d, i, P)
        elif kind == "II":
            a, b = _appendix_type2(e, f, d, i, P)
        elif kind == "III+":
            a, b = _appendix_type3p(e, f, d, i, P)
        else:
            a, b = _appendix_type3m(e, f, d, i, P)
        varphi.append(a)
        phi.append(b)
    return varphi, phi


def build_candidate(e: EndParameters, t: TypeTag) -> ParameterArray:
    """The sequence determined by (e, q), descended to e's field when possible."""
    theta, theta_star = theta_from_ends(e, t)
    varphi, phi = phi_by_recursion(e, theta, theta_star)
    f = theta[0].field
    p = ParameterArray(f, e.d, tuple(theta), tuple(theta_star), tuple(varphi), tuple(phi))
    return p.descend()


def reconstruct(e: EndParameters, beta: Scalar, q_hint: Optional[Scalar] = None) -> ParameterArray:
    """The unique parameter array with end-parameters ``e`` and fundamental parameter ``beta``.

    Raises :class:`NoValidArray` when the determined sequence is not a
    parameter array realizing ``e``; ``condition`` is ``"ends"`` when the
    end-parameters do not come back, else the violated condition.
    """
    f = beta.field if beta.field.contains_subfield(e.field) else e.field
    t = tag_for(f, f.lift(beta), e.d, q_hint)
    return reconstruct_tagged(e, t)


def _end_values(p: ParameterArray) -> tuple:
    d = p.d
    return (p.theta[0], p.theta[d], p.theta_star[0], p.theta_star[d],
            p.varphi[0], p.varphi[d - 1], p.phi[0], p.phi[d - 1])


def reconstruct_tagged(e: EndParameters, t: TypeTag) -> ParameterArray:
    """Like :func:`reconstruct` with the type and q already resolved."""
    p = build_candidate(e, t)
    if _end_values(p) != e.lift(p.field).values():
        raise NoValidArray("end-parameters are not reproduced", "ends", None)
    report = validate(p)
    if not report:
        raise NoValidArray(f"condition ({report.condition}) fails at index {report.index}",
                           report.condition, report.index)
    return p
