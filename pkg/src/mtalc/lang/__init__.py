"""Concept language: sorted AST, concrete syntax, TBox transformations."""

from mtalc.lang import ast, parser, transform
from mtalc.lang.parser import LangError, ParsedFile, parse
from mtalc.lang.transform import (
    TBoxClass,
    ValidationResult,
    dnf2,
    dnf_elements,
    name_subconcepts,
    nnf,
    validate,
)

__all__ = [
    "ast",
    "parser",
    "transform",
    "parse",
    "ParsedFile",
    "LangError",
    "validate",
    "ValidationResult",
    "TBoxClass",
    "nnf",
    "dnf2",
    "dnf_elements",
    "name_subconcepts",
]
