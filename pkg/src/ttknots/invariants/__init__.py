"""Exact knot invariants of braid closures."""

from .burau import (
    BurauMatrix, NotAKnot, alexander, alexander_reference, burau_coefficients,
    burau_matrix_from_cube, det_bareiss, reduced_burau,
)
from .core import (
    DEFAULT_JONES_CEILING, CeilingExceeded, ConventionError, InvariantSet,
    UNKNOT_INVARIANTS, check_consistency, invariant_set, jones, jones_from_bracket,
    kauffman_bracket,
)
from .temperley_lieb import TLState, bracket_dense, bracket_sparse

__all__ = [
    "BurauMatrix", "NotAKnot", "alexander", "alexander_reference", "burau_coefficients",
    "burau_matrix_from_cube", "det_bareiss", "reduced_burau",
    "DEFAULT_JONES_CEILING", "CeilingExceeded", "ConventionError", "InvariantSet",
    "UNKNOT_INVARIANTS", "check_consistency", "invariant_set", "jones",
    "jones_from_bracket", "kauffman_bracket",
    "TLState", "bracket_dense", "bracket_sparse",
]
