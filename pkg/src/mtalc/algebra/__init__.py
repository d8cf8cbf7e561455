"""Qualitative spatial relation algebras: RCC8 (binary) and CYC_t (ternary)."""

from mtalc.algebra import cyct, rcc8
from mtalc.algebra.cyct import derive_cyct_atoms
from mtalc.algebra.rcc8 import Rcc8Atom

__all__ = ["rcc8", "cyct", "Rcc8Atom", "derive_cyct_atoms"]
