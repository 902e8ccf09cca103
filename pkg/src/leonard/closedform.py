"""Closed forms of parameter arrays for types I, II, III+, III- and IV.

``evaluate`` turns a tuple of closed-form parameters into a sequence;
``fit`` recovers one such tuple from an array.  ``theta_sum`` evaluates the
partial sums sum_{l<i} (theta_l - theta_{d-l}) / (theta_0 - theta_d) via the
type-indexed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .errors import FitInconsistent, TypeFieldMismatch
from .field import Field, Scalar
from .parray import ParameterArray, TypeTag, _theta_sum, classify

__all__ = [
    "ClosedFormParams",
    "PARAM_NAMES",
    "evaluate",
    "fit",
    "theta_sum",
    "theta_sum_literal",
]

PARAM_NAMES = {
    "I": ("eta", "mu", "h", "eta_s", "mu_s", "h_s", "tau"),
    "II": ("eta", "mu", "h", "eta_s", "mu_s", "h_s", "tau"),
    "III+": ("eta", "h", "s", "eta_s", "h_s", "s_s", "tau"),
    "III-": ("eta", "h", "s", "eta_s", "h_s", "s_s", "tau"),
    "IV": ("theta0", "theta_star0", "h", "s", "h_s", "s_s", "r"),
}


@dataclass(frozen=True)
class ClosedFormParams:
    """Closed-form parameters of one type; ``values`` is keyed by PARAM_NAMES."""

    tag: TypeTag
    values: Mapping[str, Scalar]

    def __post_init__(self):
        names = PARAM_NAMES[self.tag.tag]
        missing = [n for n in names if n not in self.values]
        if missing:
            raise ValueError(f"missing closed-form parameters {missing}")
        f = self.field
        object.__setattr__(self, "values", {n: f(self.values[n]) for n in names})

    @property
    def field(self) -> Field:
        return self.tag.q.field

    def __getitem__(self, name: str) -> Scalar:
        return self.values[name]


def _check_field(tag: str, f: Field, d: int) -> None:
    if tag == "IV":
        if f.characteristic != 2:
            raise TypeFieldMismatch("type IV needs characteristic 2")
        if d != 3:
            raise TypeFieldMismatch("type IV only exists for d = 3")
    elif tag != "I" and f.characteristic == 2:
        raise TypeFieldMismatch(f"type {tag} needs characteristic other than 2")


def _theta_type1(q, eta, mu, h, d, i):
    return eta + mu * q**i + h * q ** (d - i)


def _theta_type2(f, eta, mu, h, d, i):
    return eta + mu * (i - f(Fraction(d, 2))) + h * (i * (d - i))


def _theta_type3(f, eta, h, s, d, i):
    lin = h * (i - f(Fraction(d, 2)))
    return eta + s + lin if i % 2 == 0 else eta - s - lin


def _varphi_phi(tag: str, f: Field, q: Scalar, v: Mapping[str, Scalar], d: int, i: int):
    """(varphi_i, phi_i) for 1 <= i <= d."""
    if tag == "I":
        c = (q**i - 1) * (q ** (d - i + 1) - 1)
        mu, h, mus, hs, tau = v["mu"], v["h"], v["mu_s"], v["h_s"], v["tau"]
        return (c * (tau - mu * mus * q ** (i - 1) - h * hs * q ** (d - i)),
                c * (tau - h * mus * q ** (i - 1) - mu * hs * q ** (d - i)))
    if tag == "II":
        mu, h, mus, hs, tau = v["mu"], v["h"], v["mu_s"], v["h_s"], v["tau"]
        c = f(i * (d - i + 1))
        half = f(Fraction(1, 2))
        mid = i - f(Fraction(d + 1, 2))
        tail = h * hs * ((i - 1) * (d - i))
        return (c * (tau - mu * mus * half + (h * mus + mu * hs) * mid + tail),
                c * (tau + mu * mus * half + (h * mus - mu * hs) * mid + tail))
    if tag in ("III+", "III-"):
        h, s, hs, ss, tau = v["h"], v["s"], v["h_s"], v["s_s"], v["tau"]
        mid = i - f(Fraction(d + 1, 2))
        if tag == "III+":
            if i % 2 == 0:
                return (i * (tau - s * hs - ss * h - h * hs * mid),
                        i * (tau - s * hs + ss * h + h * hs * mid))
            c = f(d - i + 1)
            return (c * (tau + s * hs + ss * h + h * hs * mid),
                    c * (tau + s * hs - ss * h - h * hs * mid))
        if i % 2 == 0:
            x = h * hs * (i * (d - i + 1))
            return x, x
        base = h * hs * (i * (d - i + 1))
        return (tau - 2 * s * ss + base - 2 * (h * ss + hs * s) * mid,
                tau + 2 * s * ss + base - 2 * (h * ss - hs * s) * mid)
    h, s, hs, ss, r = v["h"], v["s"], v["h_s"], v["s_s"], v["r"]
    hh = h * hs
    return {1: (hh * r, hh * (r + s + s * ss)),
            2: (hh, hh),
            3: (hh * (r + s + ss), hh * (r + ss + s * ss))}[i]


def _thetas(tag: str, f: Field, q: Scalar, v: Mapping[str, Scalar], d: int, star: bool):
    sfx = "_s" if star else ""
    if tag == "IV":
        t0 = v["theta_star0" if star else "theta0"]
        h, s = v["h" + sfx], v["s" + sfx]
        return [t0, t0 + h * (s + 1), t0 + h, t0 + h * s]
    eta, h = v["eta" + sfx], v["h" + sfx]
    if tag == "I":
        return [_theta_type1(q, eta, v["mu" + sfx], h, d, i) for i in range(d + 1)]
    if tag == "II":
        return [_theta_type2(f, eta, v["mu" + sfx], h, d, i) for i in range(d + 1)]
    return [_theta_type3(f, eta, h, v["s" + sfx], d, i) for i in range(d + 1)]


def evaluate(cf: ClosedFormParams, d: int) -> ParameterArray:
    """The sequence given by the closed-form parameters (not validated)."""
    tag, f, q = cf.tag.tag, cf.field, cf.tag.q
    _check_field(tag, f, d)
    v = cf.values
    theta = _thetas(tag, f, q, v, d, star=False)
    theta_star = _thetas(tag, f, q, v, d, star=True)
    pairs = [_varphi_phi(tag, f, q, v, d, i) for i in range(1, d + 1)]
    return ParameterArray(f, d, tuple(theta), tuple(theta_star),
                          tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


def _solve3(rows, rhs):
    """Gauss-Jordan elimination for a small nonsingular system."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            raise FitInconsistent("singular closed-form system")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                c = m[r][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _basis(tag: str, f: Field, q: Scalar, d: int, i: int):
    if tag == "I":
        return [f.one, q**i, q ** (d - i)]
    if tag == "II":
        return [f.one, i - f(Fraction(d, 2)), f(i * (d - i))]
    sign = 1 if i % 2 == 0 else -1
    return [f.one, f(sign), (i - f(Fraction(d, 2))) * sign]


def fit(p: ParameterArray, tag: Optional[TypeTag] = None) -> ClosedFormParams:
    """Closed-form parameters reproducing ``p`` exactly.

    The theta-side unknowns are pinned by theta_0, theta_1, theta_2 (and
    likewise on the starred side), tau (or r) by varphi_1.
    """
    tag = tag or classify(p)
    kind, q = tag.tag, tag.q
    f = q.field
    d = p.d
    _check_field(kind, f, d)
    th = [f.lift(x) for x in p.theta]
    ts = [f.lift(x) for x in p.theta_star]
    vals: dict[str, Scalar] = {}
    if kind == "IV":
        for seq, sfx, t0 in ((th, "", "theta0"), (ts, "_s", "theta_star0")):
            h = seq[2] - seq[0]
            if h.is_zero():
                raise FitInconsistent("theta_2 = theta_0 for a type IV array")
            vals[t0] = seq[0]
            vals["h" + sfx] = h
            vals["s" + sfx] = (seq[3] - seq[0]) / h
        hh = vals["h"] * vals["h_s"]
        vals["r"] = f.lift(p.varphi[0]) / hh
    else:
        names = ("eta", "mu", "h") if kind in ("I", "II") else ("eta", "s", "h")
        rows = [_basis(kind, f, q, d, i) for i in range(3)]
        for seq, sfx in ((th, ""), (ts, "_s")):
            sol = _solve3(rows, seq[:3])
            for n, x in zip(names, sol):
                vals[n + sfx] = x
        # varphi_1 is affine in tau
        vals["tau"] = f.zero
        b0 = _varphi_phi(kind, f, q, vals, d, 1)[0]
        vals["tau"] = f.one
        slope = _varphi_phi(kind, f, q, vals, d, 1)[0] - b0
        if slope.is_zero():
            raise FitInconsistent("tau does not enter varphi_1")
        vals["tau"] = (f.lift(p.varphi[0]) - b0) / slope
    cf = ClosedFormParams(tag, vals)
    back = evaluate(cf, d)
    if back.lift(f).entries() != p.lift(f).entries():
        raise FitInconsistent(f"array does not follow the type {kind} closed form")
    return cf


def theta_sum_literal(p: ParameterArray, i: int) -> Scalar:
    """The partial sum evaluated term by term."""
    return _theta_sum(p.theta, p.d, i)


def theta_sum(p: ParameterArray, i: int, tag: Optional[TypeTag] = None) -> Scalar:
    """The partial sum via the type-indexed closed form, 1 <= i <= d."""
    d = p.d
    if not 1 <= i <= d:
        raise ValueError(f"index {i} outside 1..{d}")
    tag = tag or classify(p)
    f = p.field
    kind = tag.tag
    if kind == "I":
        q = tag.q
        val = (q**i - 1) * (q ** (d - i + 1) - 1) / ((q - 1) * (q**d - 1))
        return val.descend() if val.field != f else val
    if kind == "II":
        return f(Fraction(i * (d - i + 1), d))
    if kind == "III+":
        return f(Fraction(i, d)) if i % 2 == 0 else f(Fraction(d - i + 1, d))
    return f.zero if i % 2 == 0 else f.one
