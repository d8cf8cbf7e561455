"""Admissible concrete domains for the atemporal tableau.

A domain ships a predicate set closed under negation (including a
predicate for the whole universe and its empty complement) together with
a decision procedure for finite conjunctions of predicate atoms over
named variables. The rational linear order is the bundled sample domain.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Hashable, Sequence

Atom = tuple[str, tuple[Hashable, ...]]


class AdmissibleDomain(ABC):
    """Predicate signature plus a conjunction-satisfiability decider."""

    name: str
    predicates: dict[str, int]  # predicate name -> arity
    negation: dict[str, str]  # predicate name -> complement predicate
    top_predicate: str

    @abstractmethod
    def satisfiable(self, atoms: Sequence[Atom]) -> bool:
        """Decide a finite conjunction of predicate atoms."""


def rational_satisfiable(atoms: Sequence[Atom]) -> bool:
    """Decide a conjunction of order atoms over the rationals.

    Equality components are contracted along two-way reachability in the
    weak-order graph; the conjunction is unsatisfiable exactly when a
    strict edge or a disequality lands inside one component.
    """
    nodes: set[Hashable] = set()
    weak: dict[Hashable, set[Hashable]] = {}
    strict: list[tuple[Hashable, Hashable]] = []
    neq: list[tuple[Hashable, Hashable]] = []

    def edge(x: Hashable, y: Hashable, is_strict: bool) -> None:
        weak.setdefault(x, set()).add(y)
        if is_strict:
            strict.append((x, y))

    for pred, args in atoms:
        if pred in ("top1", "bot1"):
            if len(args) != 1:
                raise ValueError(f"arity mismatch for {pred!r}: {args!r}")
            nodes.add(args[0])
            if pred == "bot1":
                return False
            continue
        if len(args) != 2:
            raise ValueError(f"arity mismatch for {pred!r}: {args!r}")
        x, y = args
        nodes.update(args)
        if pred == "lt":
            edge(x, y, True)
        elif pred == "gt":
            edge(y, x, True)
        elif pred == "le":
            edge(x, y, False)
        elif pred == "ge":
            edge(y, x, False)
        elif pred == "eq":
            edge(x, y, False)
            edge(y, x, False)
        elif pred == "neq":
            neq.append((x, y))
        else:
            raise ValueError(f"unknown rational-order predicate: {pred!r}")

    def reach(start: Hashable) -> set[Hashable]:
        seen = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for nxt in weak.get(cur, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    reachable = {x: reach(x) for x in nodes}
    for x, y in strict:
        if x in reachable[y]:  # y reaches back to x: strict edge inside a cycle
            return False
    for x, y in neq:
        if x == y:
            return False
        if y in reachable.get(x, ()) and x in reachable.get(y, ()):
            return False
    return True


class RationalOrderDomain(AdmissibleDomain):
    """Binary order predicates over the rationals, plus the unary top/bottom."""

    name = "rational-order"
    predicates = {
        "top1": 1,
        "bot1": 1,
        "lt": 2,
        "le": 2,
        "eq": 2,
        "neq": 2,
        "ge": 2,
        "gt": 2,
    }
    negation = {
        "lt": "ge",
        "ge": "lt",
        "le": "gt",
        "gt": "le",
        "eq": "neq",
        "neq": "eq",
        "top1": "bot1",
        "bot1": "top1",
    }
    top_predicate = "top1"

    def satisfiable(self, atoms: Sequence[Atom]) -> bool:
        return rational_satisfiable(atoms)
