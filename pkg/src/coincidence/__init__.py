"""Finite matrix groups over Z/nZ, split lifting, p-adic index sequences and
an obstruction engine for coincidences of division fields of elliptic curves."""

from __future__ import annotations

from .errors import (
    BadModulus,
    CoincidenceError,
    GroupTooLarge,
    InternalInconsistency,
    MalformedRecord,
    NotAbelianQuotient,
    NotInvertible,
    NotLarge,
    NotNormal,
    Pole,
    SearchBudgetExceeded,
)
from .matgroup import MatGroup, gl2, sl2
from .modmat import Mat2

__version__ = "0.1.0"

__all__ = [
    "BadModulus",
    "CoincidenceError",
    "GroupTooLarge",
    "InternalInconsistency",
    "MalformedRecord",
    "Mat2",
    "MatGroup",
    "NotAbelianQuotient",
    "NotInvertible",
    "NotLarge",
    "NotNormal",
    "Pole",
    "SearchBudgetExceeded",
    "gl2",
    "sl2",
]
