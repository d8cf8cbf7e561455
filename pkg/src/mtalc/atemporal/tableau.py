"""Completion tableau for the atemporal fragment with a concrete domain.

Satisfiability of an atemporal concept w.r.t. the acyclic atemporal part
of a TBox: conjunctions expand in place, disjunctions branch (left first,
depth first), existentials over general roles create one successor per
concept while abstract features funnel into a single functional
successor, universals propagate to present and future successors, and
defined names unfold lazily in both polarities. Predicate restrictions
walk their feature chains, creating successors on demand, and accumulate
concrete atoms over ``(node, feature)`` variables; the domain's decision
procedure is consulted after every addition. Absence markers close the
branch as soon as anything demands the successor or value they deny.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from mtalc.atemporal.domain import AdmissibleDomain, Atom, RationalOrderDomain
from mtalc.lang.ast import (
    Absent,
    AbsentValue,
    And,
    Bot,
    Concept,
    DomainPredicate,
    Exists,
    Forall,
    Name,
    Not,
    Or,
    Pred,
    Sort,
    TBox,
    Top,
    sort_of,
)
from mtalc.lang.transform import nnf


def _atemporal_cycle(tbox: TBox) -> Optional[str]:
    """Name of an atemporal defined concept that uses itself, if any."""
    from mtalc.lang.transform import _names_in

    atemporal = {ax.name: ax for ax in tbox.axioms if ax.sort is Sort.ATEMPORAL}
    direct = {
        name: {n for n in _names_in(ax.concept) if n in atemporal}
        for name, ax in atemporal.items()
    }
    for start in direct:
        seen: set[str] = set()
        frontier = list(direct[start])
        while frontier:
            cur = frontier.pop()
            if cur == start:
                return start
            if cur not in seen:
                seen.add(cur)
                frontier.extend(direct.get(cur, ()))
    return None


@dataclass
class _State:
    domain: AdmissibleDomain
    pos: dict[str, Concept]
    neg: dict[str, Concept]
    queue: list[tuple[int, Concept]] = field(default_factory=list)
    next_node: int = 1
    positive: dict[int, set[str]] = field(default_factory=dict)
    negative: dict[int, set[str]] = field(default_factory=dict)
    done: dict[int, set[Concept]] = field(default_factory=dict)
    feature_succ: dict[tuple[int, str], int] = field(default_factory=dict)
    role_succ: dict[tuple[int, str], list[int]] = field(default_factory=dict)
    foralls: dict[tuple[int, str], list[Concept]] = field(default_factory=dict)
    absent: set[tuple[int, str]] = field(default_factory=set)
    absent_value: set[tuple[int, str]] = field(default_factory=set)
    concrete_vars: set[tuple[int, str]] = field(default_factory=set)
    atoms: list[Atom] = field(default_factory=list)

    def copy(self) -> "_State":
        return _State(
            self.domain,
            self.pos,
            self.neg,
            list(self.queue),
            self.next_node,
            {k: set(v) for k, v in self.positive.items()},
            {k: set(v) for k, v in self.negative.items()},
            {k: set(v) for k, v in self.done.items()},
            dict(self.feature_succ),
            {k: list(v) for k, v in self.role_succ.items()},
            {k: list(v) for k, v in self.foralls.items()},
            set(self.absent),
            set(self.absent_value),
            set(self.concrete_vars),
            list(self.atoms),
        )

    def new_node(self) -> int:
        node = self.next_node
        self.next_node += 1
        self.positive[node] = set()
        self.negative[node] = set()
        self.done[node] = set()
        return node


class _Clash(Exception):
    pass


def _feature_successor(st: _State, node: int, feature: str) -> int:
    succ = st.feature_succ.get((node, feature))
    if succ is not None:
        return succ
    if (node, feature) in st.absent:
        raise _Clash()
    succ = st.new_node()
    st.feature_succ[(node, feature)] = succ
    for c in st.foralls.get((node, feature), ()):
        st.queue.append((succ, c))
    return succ


def _apply(st: _State, node: int, c: Concept) -> None:
    """One expansion step; raises _Clash when the branch closes."""
    if isinstance(c, Top):
        return
    if isinstance(c, Bot):
        raise _Clash()
    if isinstance(c, Name):
        if c.name in st.pos:
            st.queue.append((node, st.pos[c.name]))
            return
        if c.name in st.negative[node]:
            raise _Clash()
        st.positive[node].add(c.name)
        return
    if isinstance(c, Not):
        assert isinstance(c.arg, Name), f"negation not normalized: {c}"
        name = c.arg.name
        if name in st.neg:
            st.queue.append((node, st.neg[name]))
            return
        if name in st.positive[node]:
            raise _Clash()
        st.negative[node].add(name)
        return
    if isinstance(c, And):
        st.queue.append((node, c.left))
        st.queue.append((node, c.right))
        return
    if isinstance(c, Exists):
        if c.role.feature:
            succ = _feature_successor(st, node, c.role.name)
        else:
            succ = st.new_node()
            st.role_succ.setdefault((node, c.role.name), []).append(succ)
            for fc in st.foralls.get((node, c.role.name), ()):
                st.queue.append((succ, fc))
        st.queue.append((succ, c.arg))
        return
    if isinstance(c, Forall):
        st.foralls.setdefault((node, c.role.name), []).append(c.arg)
        if c.role.feature:
            succ = st.feature_succ.get((node, c.role.name))
            if succ is not None:
                st.queue.append((succ, c.arg))
        else:
            for succ in st.role_succ.get((node, c.role.name), ()):
                st.queue.append((succ, c.arg))
        return
    if isinstance(c, Pred):
        assert isinstance(c.predicate, DomainPredicate), "spatial predicate in the atemporal tableau"
        variables = []
        for chain in c.chains:
            cur = node
            for f in chain.prefix:
                cur = _feature_successor(st, cur, f)
            if (cur, chain.tip) in st.absent_value:
                raise _Clash()
            st.concrete_vars.add((cur, chain.tip))
            variables.append((cur, chain.tip))
        st.atoms.append((c.predicate.name, tuple(variables)))
        if not st.domain.satisfiable(st.atoms):
            raise _Clash()
        return
    if isinstance(c, Absent):
        if (node, c.feature) in st.feature_succ:
            raise _Clash()
        st.absent.add((node, c.feature))
        return
    if isinstance(c, AbsentValue):
        if (node, c.feature) in st.concrete_vars:
            raise _Clash()
        st.absent_value.add((node, c.feature))
        return
    raise TypeError(f"not an expandable concept: {c!r}")


def _saturate(st: _State) -> bool:
    while st.queue:
        node, c = st.queue.pop(0)
        if c in st.done[node]:
            continue
        if isinstance(c, Or):
            left = st.copy()
            left.done[node].add(c)
            left.queue.insert(0, (node, c.left))
            if _saturate(left):
                return True
            right = st.copy()
            right.done[node].add(c)
            right.queue.insert(0, (node, c.right))
            return _saturate(right)
        st.done[node].add(c)
        try:
            _apply(st, node, c)
        except _Clash:
            return False
    return True


def alcd_satisfiable(
    c: Concept,
    tbox: TBox,
    domain: Optional[AdmissibleDomain] = None,
) -> bool:
    """Satisfiability of an atemporal concept w.r.t. the TBox's atemporal part.

    Raises ValueError on temporal input or a cyclic atemporal definition.
    """
    if domain is None:
        domain = RationalOrderDomain()
    if sort_of(c) is Sort.TEMPORAL:
        raise ValueError("the atemporal tableau needs an atemporal concept")
    cyclic = _atemporal_cycle(tbox)
    if cyclic is not None:
        raise ValueError(f"atemporal definitions must be acyclic; {cyclic!r} uses itself")

    pos: dict[str, Concept] = {}
    neg: dict[str, Concept] = {}
    for ax in tbox.axioms:
        if ax.sort is Sort.ATEMPORAL:
            pos[ax.name] = nnf(ax.concept, domain.negation)
            neg[ax.name] = nnf(Not(ax.concept), domain.negation)

    st = _State(domain, pos, neg)
    root = st.new_node()
    st.queue.append((root, nnf(c, domain.negation)))
    return _saturate(st)
