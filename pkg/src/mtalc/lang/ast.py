"""Sorted abstract syntax for concepts, signatures and TBoxes.

Concepts come in two sorts, atemporal and temporal; top and bottom belong
to both. Roles split into general roles and abstract features (functional
roles), each sort separately; concrete features are aspatial or spatial.
A predicate restriction applies a spatial relation or an aspatial domain
predicate to feature chains, where a chain is a (possibly empty) run of
abstract features ending in one concrete feature, read as a composition.

Nodes are immutable and hashable; transformations build new trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class Sort(Enum):
    ATEMPORAL = "atemporal"
    TEMPORAL = "temporal"
    EITHER = "either"  # top and bottom live in both sorts


def join_sorts(a: Sort, b: Sort) -> Optional[Sort]:
    """Common sort of two subconcepts, or None if they clash."""
    if a is Sort.EITHER:
        return b
    if b is Sort.EITHER or a is b:
        return a
    return None


@dataclass(frozen=True)
class Role:
    name: str
    temporal: bool
    feature: bool


@dataclass(frozen=True)
class FeatureChain:
    """Abstract-feature prefix plus one concrete feature tip.

    A spatial chain has temporal abstract features and a spatial tip; an
    aspatial chain has atemporal abstract features and an aspatial tip.
    """

    prefix: tuple[str, ...]
    tip: str
    spatial: bool

    def __str__(self) -> str:
        return " ".join(self.prefix + (self.tip,))


@dataclass(frozen=True)
class SpatialPredicate:
    """A relation of the configured spatial algebra, as a bitmask."""

    calculus: str  # "rcc8" | "cyct"
    mask: int

    @property
    def arity(self) -> int:
        return 2 if self.calculus == "rcc8" else 3


@dataclass(frozen=True)
class DomainPredicate:
    """A named predicate of the aspatial concrete domain."""

    name: str
    arity: int


Predicate = Union[SpatialPredicate, DomainPredicate]


class Concept:
    """Base class for concept nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Concept):
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Bot(Concept):
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Name(Concept):
    name: str
    sort: Sort

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not(Concept):
    arg: Concept

    def __str__(self) -> str:
        return f"not {_paren(self.arg)}"


@dataclass(frozen=True)
class And(Concept):
    left: Concept
    right: Concept

    def __str__(self) -> str:
        return f"{_paren(self.left)} and {_paren(self.right)}"


@dataclass(frozen=True)
class Or(Concept):
    left: Concept
    right: Concept

    def __str__(self) -> str:
        return f"{_paren(self.left)} or {_paren(self.right)}"


@dataclass(frozen=True)
class Exists(Concept):
    role: Role
    arg: Concept

    def __str__(self) -> str:
        return f"some {self.role.name} . {_paren(self.arg)}"


@dataclass(frozen=True)
class Forall(Concept):
    role: Role
    arg: Concept

    def __str__(self) -> str:
        return f"all {self.role.name} . {_paren(self.arg)}"


@dataclass(frozen=True)
class Pred(Concept):
    chains: tuple[FeatureChain, ...]
    predicate: Predicate

    def __str__(self) -> str:
        chains = "".join(f"({c})" for c in self.chains)
        if isinstance(self.predicate, SpatialPredicate):
            from mtalc.algebra import cyct, rcc8

            mod = rcc8 if self.predicate.calculus == "rcc8" else cyct
            return f"some {chains}.{mod.format_relation(self.predicate.mask)}"
        return f"some {chains}.{self.predicate.name}"


@dataclass(frozen=True)
class Absent(Concept):
    """Marker: the named abstract feature has no successor here.

    Produced when negating predicate restrictions over nonempty chains;
    clashes with anything that demands a successor for the feature.
    """

    feature: str
    temporal: bool

    def __str__(self) -> str:
        return f"<no {self.feature}-successor>"


@dataclass(frozen=True)
class AbsentValue(Concept):
    """Marker: the named aspatial concrete feature has no value here."""

    feature: str

    def __str__(self) -> str:
        return f"<no {self.feature}-value>"


def _paren(c: Concept) -> str:
    if isinstance(c, (And, Or)):
        return f"({c})"
    return str(c)


def sort_of(c: Concept) -> Sort:
    """Sort of a well-formed concept (construction enforces the sort rules)."""
    if isinstance(c, (Top, Bot)):
        return Sort.EITHER
    if isinstance(c, Name):
        return c.sort
    if isinstance(c, Not):
        return sort_of(c.arg)
    if isinstance(c, (And, Or)):
        joined = join_sorts(sort_of(c.left), sort_of(c.right))
        assert joined is not None, "ill-sorted conjunction"
        return joined
    if isinstance(c, (Exists, Forall)):
        return Sort.TEMPORAL if c.role.temporal else Sort.ATEMPORAL
    if isinstance(c, Pred):
        return Sort.TEMPORAL if isinstance(c.predicate, SpatialPredicate) else Sort.ATEMPORAL
    if isinstance(c, Absent):
        return Sort.TEMPORAL if c.temporal else Sort.ATEMPORAL
    if isinstance(c, AbsentValue):
        return Sort.ATEMPORAL
    raise TypeError(f"not a concept: {c!r}")


@dataclass
class Signature:
    """Declared names, partitioned into the six mutually disjoint sets."""

    atemporal_concepts: set[str] = field(default_factory=set)
    temporal_concepts: set[str] = field(default_factory=set)
    atemporal_roles: set[str] = field(default_factory=set)
    atemporal_features: set[str] = field(default_factory=set)
    temporal_roles: set[str] = field(default_factory=set)
    temporal_features: set[str] = field(default_factory=set)
    aspatial_features: set[str] = field(default_factory=set)
    spatial_features: set[str] = field(default_factory=set)
    # general temporal roles / temporal abstract features actually used
    used_temporal_roles: set[str] = field(default_factory=set)
    used_temporal_features: set[str] = field(default_factory=set)

    def all_names(self) -> set[str]:
        return (
            self.atemporal_concepts
            | self.temporal_concepts
            | self.atemporal_roles
            | self.atemporal_features
            | self.temporal_roles
            | self.temporal_features
            | self.aspatial_features
            | self.spatial_features
        )

    @property
    def p(self) -> int:
        """Count of general temporal roles used in concepts."""
        return len(self.used_temporal_roles)

    @property
    def q(self) -> int:
        """Count of temporal abstract features used in concepts."""
        return len(self.used_temporal_features)


@dataclass
class Axiom:
    name: str
    sort: Sort
    eventuality: bool
    concept: Concept


@dataclass
class TBox:
    """Definitional axioms; at most one per defined name."""

    axioms: list[Axiom] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._by_name = {ax.name: ax for ax in self.axioms}
        if len(self._by_name) != len(self.axioms):
            raise ValueError("a concept name appears more than once as a left hand side")

    def defined_names(self) -> list[str]:
        return [ax.name for ax in self.axioms]

    def get(self, name: str) -> Optional[Axiom]:
        return self._by_name.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def extended(self, axiom: Axiom) -> "TBox":
        return TBox(self.axioms + [axiom])
