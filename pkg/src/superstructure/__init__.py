"""Graded solvable subalgebras of vectorial Lie superalgebras over Q and F_p."""
from .algebra import SERIES, AlgebraDesc, AlgebraError, build_algebra
from .liestruct import GradedSubalgebra, closure, is_solvable
from .verify import SweepConfig, Verdict, check_maximal

__version__ = "0.1.0"

__all__ = [
    "SERIES", "AlgebraDesc", "AlgebraError", "build_algebra",
    "GradedSubalgebra", "closure", "is_solvable",
    "SweepConfig", "Verdict", "check_maximal",
]
