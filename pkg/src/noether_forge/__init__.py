"""Exact good-semigroup arithmetic and linear-system checks for singular curves."""
from noether_forge.semigroup import (
    GoodSemigroup,
    IdealValueSet,
    ValueSet,
    canonical_K,
    classify,
    delta_set,
    distance,
    from_numerical_generators,
    sumset,
    validate,
)

__all__ = [
    "GoodSemigroup",
    "IdealValueSet",
    "ValueSet",
    "canonical_K",
    "classify",
    "delta_set",
    "distance",
    "from_numerical_generators",
    "sumset",
    "validate",
]
__version__ = "0.1.0"
