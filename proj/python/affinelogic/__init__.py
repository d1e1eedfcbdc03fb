"""Exact affine continuous logic on finite metric structures.

Rationals cross the boundary as fractions.Fraction.
"""

from ._core import (
    AffineError,
    Structure,
    certificate,
    distance_predicate,
    extreme_points,
    is_definable_set,
    json_report,
    keisler_decompose,
    pra,
    render,
    satisfiable,
    type_hull,
    ultramean,
    ultramean_identity,
)

__all__ = [
    "AffineError",
    "Structure",
    "certificate",
    "distance_predicate",
    "extreme_points",
    "is_definable_set",
    "json_report",
    "keisler_decompose",
    "pra",
    "render",
    "satisfiable",
    "type_hull",
    "ultramean",
    "ultramean_identity",
]
