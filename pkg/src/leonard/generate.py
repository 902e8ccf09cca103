"""Random admissible parameter arrays of each type, for tests and ``selftest``."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from .closedform import PARAM_NAMES, ClosedFormParams, evaluate
from .field import BinaryField, Field, PrimeField, Scalar
from .parray import ParameterArray, TypeTag, validate

__all__ = ["GF16", "random_scalar", "random_q", "random_closed_form", "random_array",
           "default_field"]

GF16 = BinaryField(4, 0b10011)


def default_field(tag: str) -> Field:
    return GF16 if tag == "IV" else PrimeField(101)


def random_scalar(f: Field, rng: random.Random, nonzero: bool = False) -> Scalar:
    while True:
        if f.size is None:
            x = f(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        else:
            x = Scalar(f, list(f.raw_elements())[rng.randrange(f.size)]) if f.size <= 4096 \
                else f(rng.randrange(f.characteristic))
        if not (nonzero and x.is_zero()):
            return x


def random_q(f: Field, d: int, rng: random.Random) -> Scalar:
    """A q with q^i != 1 for 1 <= i <= d (and so q != +-1)."""
    while True:
        if f.size is None:
            q = f(Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 3)))
        else:
            q = random_scalar(f, rng, nonzero=True)
        if not q.is_zero() and all(q**i != 1 for i in range(1, d + 1)) and q * q != 1:
            return q


def random_closed_form(tag: str, f: Field, d: int, rng: random.Random) -> ClosedFormParams:
    if tag == "I":
        q = random_q(f, d, rng)
    elif tag in ("II", "IV"):
        q = f.one
    else:
        q = -f.one
    b = q + q.inverse()
    values = {n: random_scalar(f, rng) for n in PARAM_NAMES[tag]}
    return ClosedFormParams(TypeTag(tag, b, q), values)


def random_array(tag: str, d: int, rng: random.Random, f: Optional[Field] = None,
                 accept: Callable[[ParameterArray], bool] = validate,
                 max_tries: int = 10_000) -> tuple[ClosedFormParams, ParameterArray]:
    """Draw closed-form parameters until ``accept`` admits the evaluated array."""
    f = f or default_field(tag)
    for _ in range(max_tries):
        cf = random_closed_form(tag, f, d, rng)
        p = evaluate(cf, d)
        if accept(p):
            return cf, p
    raise RuntimeError(f"no admissible type {tag} array after {max_tries} draws")


def supported(tag: str, d: int) -> bool:
    """Whether type ``tag`` exists at diameter ``d``."""
    if tag == "III+":
        return d % 2 == 0
    if tag == "III-":
        return d % 2 == 1
    if tag == "IV":
        return d == 3
    return True
