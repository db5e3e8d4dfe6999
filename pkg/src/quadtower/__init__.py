"""Exact quadratic towers over Q, finite fields and k(t), with a 2-group series engine."""
from .sqclass import SquareClassSpace, SquareClassVector, insert_and_test_independent, intersection_trivial, membership
from .twogroup import FiniteTwoGroup, fingerprint, named_group, structural_checks, tower_series

__version__ = "0.1.0"

__all__ = [
    "SquareClassSpace", "SquareClassVector", "insert_and_test_independent", "intersection_trivial", "membership",
    "FiniteTwoGroup", "fingerprint", "named_group", "structural_checks", "tower_series",
]
