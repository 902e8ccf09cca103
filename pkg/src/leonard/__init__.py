"""Exact computations with Leonard-system parameter arrays."""

from .field import (
    QQ,
    BinaryField,
    Field,
    PrimeField,
    QuadraticField,
    Scalar,
    field_from_json,
)
from .poly import Polynomial

__all__ = ["QQ", "BinaryField", "Field", "PrimeField", "QuadraticField", "Scalar",
           "field_from_json", "Polynomial"]

__version__ = "0.1.0"
