"""Atemporal fragment: admissible concrete domains and the completion tableau."""

from mtalc.atemporal.domain import (
    AdmissibleDomain,
    RationalOrderDomain,
    rational_satisfiable,
)
from mtalc.atemporal.tableau import alcd_satisfiable

__all__ = [
    "AdmissibleDomain",
    "RationalOrderDomain",
    "rational_satisfiable",
    "alcd_satisfiable",
]
