"""Association schemes on triples built from two-transitive permutation groups."""

from .permgrp import Perm, PermGroup
from .scheme import (
    IntersectionTensor,
    TripleScheme,
    build_scheme,
    build_scheme_from_stabilizer,
    classify_triple,
    intersection_tensor,
    verify_axioms,
)

__all__ = [
    "IntersectionTensor",
    "Perm",
    "PermGroup",
    "TripleScheme",
    "build_scheme",
    "build_scheme_from_stabilizer",
    "classify_triple",
    "intersection_tensor",
    "verify_axioms",
]

__version__ = "0.1.0"
