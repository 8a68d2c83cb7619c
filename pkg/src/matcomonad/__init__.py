"""Exact computations with coalgebras, comodules and triangular matrix comonads."""

from .base import (AxiomError, CoalgebraMismatchError, DimensionError, FieldMismatchError,
                   InternalAssertion, MatcomonadError, RadicalRefusal, Verdict)
from .linalg import QQ, Field, Mat

__version__ = "0.1.0"

__all__ = [
    "AxiomError", "CoalgebraMismatchError", "DimensionError", "FieldMismatchError",
    "InternalAssertion", "MatcomonadError", "RadicalRefusal", "Verdict",
    "QQ", "Field", "Mat", "__version__",
]
