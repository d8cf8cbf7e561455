"""Concept and TBox transformations feeding the decision engines.

Provides TBox classification (acyclic / weakly cyclic / twc-atac /
rejected), negation normal form, the universal-free disjunctive normal
form whose elements split into propositional literals, concrete-domain
restrictions and successor obligations, and the naming pass that turns
every quantifier body into a defined concept name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from mtalc.lang.ast import (
    Absent,
    AbsentValue,
    And,
    Axiom,
    Bot,
    Concept,
    DomainPredicate,
    Exists,
    FeatureChain,
    Forall,
    Name,
    Not,
    Or,
    Pred,
    Role,
    Sort,
    SpatialPredicate,
    TBox,
    Top,
    sort_of,
)

# ---------------------------------------------------------------------------
# TBox classification


class TBoxClass(Enum):
    ACYCLIC = "ACYCLIC"
    WEAKLY_CYCLIC = "WEAKLY_CYCLIC"
    TWC_ATAC = "TWC_ATAC"
    REJECTED = "REJECTED"


@dataclass(frozen=True)
class ValidationResult:
    kind: TBoxClass
    reason: Optional[str] = None

    def __str__(self) -> str:
        if self.kind is TBoxClass.REJECTED:
            return f"REJECTED: {self.reason}"
        return self.kind.value


def _names_in(c: Concept) -> Iterable[str]:
    if isinstance(c, Name):
        yield c.name
    elif isinstance(c, Not):
        yield from _names_in(c.arg)
    elif isinstance(c, (And, Or)):
        yield from _names_in(c.left)
        yield from _names_in(c.right)
    elif isinstance(c, (Exists, Forall)):
        yield from _names_in(c.arg)


def _occurs_unquantified(c: Concept, name: str) -> bool:
    if isinstance(c, Name):
        return c.name == name
    if isinstance(c, Not):
        return _occurs_unquantified(c.arg, name)
    if isinstance(c, (And, Or)):
        return _occurs_unquantified(c.left, name) or _occurs_unquantified(c.right, name)
    return False  # quantifiers shield everything below them


def validate(tbox: TBox) -> ValidationResult:
    """Classify a TBox by its "uses" graph over defined concepts.

    A defined concept directly uses every defined concept in its right hand
    side; "uses" is the transitive closure. Distinct mutually-using
    concepts, or a self-occurrence outside every quantifier, are rejected.
    """
    defined = set(tbox.defined_names())
    direct: dict[str, set[str]] = {}
    for ax in tbox.axioms:
        direct[ax.name] = {n for n in _names_in(ax.concept) if n in defined}

    uses: dict[str, set[str]] = {}
    for start in direct:
        seen: set[str] = set()
        frontier = list(direct[start])
        while frontier:
            cur = frontier.pop()
            if cur in seen:
                continue
            seen.add(cur)
            frontier.extend(direct.get(cur, ()))
        uses[start] = seen

    for a in sorted(uses):
        for b in sorted(uses[a]):
            if b != a and a in uses.get(b, ()):
                return ValidationResult(
                    TBoxClass.REJECTED,
                    f"condition 1: {a} and {b} use each other",
                )
    for ax in tbox.axioms:
        if ax.name in uses[ax.name] and _occurs_unquantified(ax.concept, ax.name):
            return ValidationResult(
                TBoxClass.REJECTED,
                f"condition 2: {ax.name} occurs in its own definition outside every quantifier",
            )

    self_users = [ax for ax in tbox.axioms if ax.name in uses[ax.name]]
    if not self_users:
        return ValidationResult(TBoxClass.ACYCLIC)
    if all(ax.sort is Sort.TEMPORAL for ax in self_users):
        return ValidationResult(TBoxClass.TWC_ATAC)
    return ValidationResult(TBoxClass.WEAKLY_CYCLIC)


# ---------------------------------------------------------------------------
# Negation normal form

# Negation closure of the rational order domain's predicate set.
RATIONAL_NEGATION = {
    "lt": "ge",
    "ge": "lt",
    "le": "gt",
    "gt": "le",
    "eq": "neq",
    "neq": "eq",
    "top1": "bot1",
    "bot1": "top1",
}


def _or_all(parts: list[Concept]) -> Concept:
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def _and_all(parts: list[Concept]) -> Concept:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def _chain_undef_markers(chain: FeatureChain) -> list[Concept]:
    """Concepts asserting that some step of the chain is undefined.

    Abstract-feature steps can always be absent; the concrete tip only for
    aspatial chains (spatial concrete features are total per world).
    """
    out: list[Concept] = []
    for i, f in enumerate(chain.prefix):
        marker: Concept = Absent(f, temporal=chain.spatial)
        for g in reversed(chain.prefix[:i]):
            marker = Exists(Role(g, temporal=chain.spatial, feature=True), marker)
        out.append(marker)
    if not chain.spatial:
        marker = AbsentValue(chain.tip)
        for g in reversed(chain.prefix):
            marker = Exists(Role(g, temporal=False, feature=True), marker)
        out.append(marker)
    return out


def _negate_pred(node: Pred, negation: dict[str, str]) -> Concept:
    if isinstance(node.predicate, SpatialPredicate):
        from mtalc.algebra import cyct, rcc8

        full = rcc8.FULL if node.predicate.calculus == "rcc8" else cyct.FULL
        mask = full & ~node.predicate.mask
        flipped: Concept = (
            Pred(node.chains, SpatialPredicate(node.predicate.calculus, mask))
            if mask
            else Bot()
        )
    else:
        flipped = Pred(
            node.chains,
            DomainPredicate(negation[node.predicate.name], node.predicate.arity),
        )
    parts = [flipped]
    for chain in node.chains:
        parts.extend(_chain_undef_markers(chain))
    return _or_all(parts)


def nnf(c: Concept, negation: Optional[dict[str, str]] = None) -> Concept:
    """Push negation down to names, markers and predicates.

    Negating a predicate restriction complements the predicate (spatial
    complements stay within the algebra; aspatial ones use the domain's
    negation map) and, for every chain step that may be undefined, adds a
    disjunct marking that step absent. Negated concept names are kept as
    literals; defined names unfold lazily downstream.
    """
    if negation is None:
        negation = RATIONAL_NEGATION
    if isinstance(c, (Top, Bot, Name, Pred, Absent, AbsentValue)):
        return c
    if isinstance(c, And):
        return And(nnf(c.left, negation), nnf(c.right, negation))
    if isinstance(c, Or):
        return Or(nnf(c.left, negation), nnf(c.right, negation))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.arg, negation))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.arg, negation))
    assert isinstance(c, Not)
    arg = c.arg
    if isinstance(arg, Top):
        return Bot()
    if isinstance(arg, Bot):
        return Top()
    if isinstance(arg, Name):
        return c
    if isinstance(arg, Not):
        return nnf(arg.arg, negation)
    if isinstance(arg, And):
        return Or(nnf(Not(arg.left), negation), nnf(Not(arg.right), negation))
    if isinstance(arg, Or):
        return And(nnf(Not(arg.left), negation), nnf(Not(arg.right), negation))
    if isinstance(arg, Exists):
        return Forall(arg.role, nnf(Not(arg.arg), negation))
    if isinstance(arg, Forall):
        return Exists(arg.role, nnf(Not(arg.arg), negation))
    if isinstance(arg, Pred):
        return _negate_pred(arg, negation)
    if isinstance(arg, Absent):
        # "some successor exists" is the positive form of a missing marker
        return Exists(Role(arg.feature, temporal=arg.temporal, feature=True), Top())
    if isinstance(arg, AbsentValue):
        chain = FeatureChain((), arg.feature, spatial=False)
        return Pred((chain,), DomainPredicate("top1", 1))
    raise TypeError(f"not a concept: {arg!r}")


# ---------------------------------------------------------------------------
# Universal-free disjunctive normal form


@dataclass(frozen=True)
class Obligation:
    """One successor demand: the target concepts conjoined at the successor.

    ``defers`` lists defined names sent onwards by their own axiom's
    disjunct; it drives the eventuality bookkeeping of the run search.
    """

    role: Role
    targets: tuple[Concept, ...]
    defers: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Guard:
    """Residual universal restriction on an abstract feature.

    Applies to a feature successor created by a chain walk when no
    explicit obligation on the feature exists in the same element.
    """

    feature: str
    temporal: bool
    targets: tuple[Concept, ...]
    defers: frozenset[str] = frozenset()


@dataclass(frozen=True)
class DnfElement:
    """One disjunct: propositional literals, predicate restrictions,
    successor obligations, plus residual feature guards."""

    props: tuple[Concept, ...]
    preds: tuple[Pred, ...]
    obligations: tuple[Obligation, ...]
    guards: tuple[Guard, ...] = ()

    def prop_set(self) -> frozenset[Concept]:
        return frozenset(self.props)


@dataclass
class _Parts:
    lits: list[Concept] = field(default_factory=list)
    preds: list[Pred] = field(default_factory=list)
    exists: list[tuple[Role, Concept, frozenset[str]]] = field(default_factory=list)
    foralls: list[tuple[Role, Concept, frozenset[str]]] = field(default_factory=list)

    def merged(self, other: "_Parts") -> "_Parts":
        return _Parts(
            self.lits + other.lits,
            self.preds + other.preds,
            self.exists + other.exists,
            self.foralls + other.foralls,
        )


def prop_closure(c: Concept, unfold: Optional[dict[str, Concept]]) -> frozenset[str]:
    """Names demanded at the same node as ``c``: names in propositional
    positions, unfolding defined names through their definitions."""
    out: set[str] = set()

    def walk(node: Concept, seen: frozenset[str]) -> None:
        if isinstance(node, Name):
            if node.name in out or node.name in seen:
                out.add(node.name)
                return
            out.add(node.name)
            if unfold is not None and node.name in unfold:
                walk(unfold[node.name], seen | {node.name})
        elif isinstance(node, Not):
            walk(node.arg, seen)
        elif isinstance(node, (And, Or)):
            walk(node.left, seen)
            walk(node.right, seen)

    walk(c, frozenset())
    return frozenset(out)


def _distribute(
    c: Concept,
    unfold: Optional[dict[str, Concept]],
    owner: Optional[str],
    stack: tuple[str, ...],
) -> list[_Parts]:
    """DNF distribution; defined temporal names in propositional positions
    unfold in place when their definitions are supplied."""
    if isinstance(c, Top):
        return [_Parts()]
    if isinstance(c, Bot):
        return []
    if isinstance(c, Name):
        if unfold is not None and c.name in unfold:
            if c.name in stack:
                raise ValueError(f"propositional cycle through {c.name!r}")
            return _distribute(unfold[c.name], unfold, c.name, stack + (c.name,))
        return [_Parts(lits=[c])]
    if isinstance(c, (Not, Absent, AbsentValue)):
        return [_Parts(lits=[c])]
    if isinstance(c, Pred):
        return [_Parts(preds=[c])]
    if isinstance(c, (Exists, Forall)):
        # the owner defers itself iff the successor re-demands it, possibly
        # through names the target unfolds into
        defers = frozenset()
        if owner is not None and owner in prop_closure(c.arg, unfold):
            defers = frozenset({owner})
        part = (c.role, c.arg, defers)
        if isinstance(c, Exists):
            return [_Parts(exists=[part])]
        return [_Parts(foralls=[part])]
    if isinstance(c, Or):
        return _distribute(c.left, unfold, owner, stack) + _distribute(
            c.right, unfold, owner, stack
        )
    if isinstance(c, And):
        left = _distribute(c.left, unfold, owner, stack)
        right = _distribute(c.right, unfold, owner, stack)
        return [l.merged(r) for l in left for r in right]
    raise TypeError(f"not a concept: {c!r}")


def _clashes(lits: list[Concept]) -> bool:
    pos = {l.name for l in lits if isinstance(l, Name)}
    neg = {l.arg.name for l in lits if isinstance(l, Not) and isinstance(l.arg, Name)}
    return bool(pos & neg)


def _dedupe(seq):
    seen = set()
    out = []
    for x in seq:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _conjoin_targets(targets: list[Concept]) -> tuple[Concept, ...]:
    targets = _dedupe(targets)
    if len(targets) > 1:
        targets = [t for t in targets if not isinstance(t, Top)] or [Top()]
    return tuple(targets)


def absorb(parts_list: list[_Parts]) -> Optional[DnfElement]:
    """Merge disjunct parts into one element, folding universals away.

    Universal restrictions join every obligation on the same role; a
    universal over an abstract feature with no matching obligation is kept
    as a guard (a chain walk may still create that successor); a universal
    over a general role with no matching obligation is vacuously satisfied
    by omitting the successor. Returns None on a propositional clash.
    """
    lits: list[Concept] = []
    preds: list[Pred] = []
    exists: list[tuple[Role, Concept, frozenset[str]]] = []
    foralls: list[tuple[Role, Concept, frozenset[str]]] = []
    for p in parts_list:
        lits.extend(p.lits)
        preds.extend(p.preds)
        exists.extend(p.exists)
        foralls.extend(p.foralls)
    if _clashes(lits):
        return None

    # group obligations: one per abstract feature, one per distinct
    # (general role, target) concept
    feature_ob: dict[str, tuple[Role, list[Concept], set[str]]] = {}
    general_ob: dict[tuple[str, Concept], tuple[Role, list[Concept], set[str]]] = {}
    order: list[tuple[str, object]] = []
    for role, target, defers in exists:
        if role.feature:
            if role.name not in feature_ob:
                feature_ob[role.name] = (role, [], set())
                order.append(("f", role.name))
            feature_ob[role.name][1].append(target)
            feature_ob[role.name][2].update(defers)
        else:
            key = (role.name, target)
            if key not in general_ob:
                general_ob[key] = (role, [], set())
                order.append(("g", key))
            general_ob[key][1].append(target)
            general_ob[key][2].update(defers)

    guard_acc: dict[str, tuple[Role, list[Concept], set[str]]] = {}
    for role, target, defers in foralls:
        if role.feature and role.name in feature_ob:
            feature_ob[role.name][1].append(target)
            feature_ob[role.name][2].update(defers)
        elif role.feature:
            if role.name not in guard_acc:
                guard_acc[role.name] = (role, [], set())
            guard_acc[role.name][1].append(target)
            guard_acc[role.name][2].update(defers)
        else:
            for (rname, _), (orole, targets, dset) in general_ob.items():
                if rname == role.name:
                    targets.append(target)
                    dset.update(defers)

    obligations: list[Obligation] = []
    for kind, key in order:
        role, targets, defers = feature_ob[key] if kind == "f" else general_ob[key]
        obligations.append(Obligation(role, _conjoin_targets(targets), frozenset(defers)))
    guards = tuple(
        Guard(name, role.temporal, _conjoin_targets(targets), frozenset(defers))
        for name, (role, targets, defers) in sorted(guard_acc.items())
    )
    return DnfElement(tuple(_dedupe(lits)), tuple(_dedupe(preds)), tuple(obligations), guards)


def dnf_elements(
    c: Concept,
    tbox: Optional[TBox] = None,
) -> list[DnfElement]:
    """Universal-free DNF of a concept in negation normal form.

    With a TBox, defined temporal names in propositional positions are
    unfolded into their definitions (weak cyclicity keeps this finite);
    quantified occurrences stay put. Clashing disjuncts are dropped.
    """
    unfold = None
    if tbox is not None:
        unfold = {
            ax.name: ax.concept for ax in tbox.axioms if ax.sort is not Sort.ATEMPORAL
        }
    out = []
    for parts in _distribute(c, unfold, None, ()):
        element = absorb([parts])
        if element is not None:
            out.append(element)
    return out


# Spec-facing alias: the decomposition S_prop | S_csp | S_exists.
dnf2 = dnf_elements


# ---------------------------------------------------------------------------
# Subconcept naming


class _FreshNames:
    def __init__(self, taken: set[str], prefix: str = "_S"):
        self.taken = set(taken)
        self.prefix = prefix
        self.counter = 0

    def fresh(self) -> str:
        while True:
            self.counter += 1
            cand = f"{self.prefix}{self.counter}"
            if cand not in self.taken:
                self.taken.add(cand)
                return cand


def name_subconcepts(tbox: TBox) -> TBox:
    """Replace every quantifier body with a defined concept name.

    Bodies already referring to a defined name stay; every other body gets
    a fresh axiom of the matching sort. Fresh temporal names are
    noneventualities. Idempotent on fully named TBoxes.
    """
    defined = set(tbox.defined_names())
    fresh = _FreshNames(defined)
    new_axioms: list[Axiom] = []

    def walk(c: Concept) -> Concept:
        if isinstance(c, (Top, Bot, Name, Pred, Absent, AbsentValue)):
            return c
        if isinstance(c, Not):
            return Not(walk(c.arg))
        if isinstance(c, And):
            return And(walk(c.left), walk(c.right))
        if isinstance(c, Or):
            return Or(walk(c.left), walk(c.right))
        assert isinstance(c, (Exists, Forall))
        body = c.arg
        if isinstance(body, Name) and body.name in defined:
            return c
        named_body = walk(body)
        body_sort = sort_of(named_body)
        if body_sort is Sort.EITHER:
            body_sort = Sort.TEMPORAL if c.role.temporal else Sort.ATEMPORAL
        new_name = fresh.fresh()
        defined.add(new_name)
        new_axioms.append(Axiom(new_name, body_sort, False, named_body))
        ref = Name(new_name, body_sort)
        return Exists(c.role, ref) if isinstance(c, Exists) else Forall(c.role, ref)

    rewritten = [
        Axiom(ax.name, ax.sort, ax.eventuality, walk(ax.concept)) for ax in tbox.axioms
    ]
    return TBox(rewritten + new_axioms)


def dualize(tbox: TBox) -> tuple[TBox, dict[str, str]]:
    """Replace negated temporal defined names with dual defined names.

    The dual of B is a fresh noneventuality defined as the negation normal
    form of B's negated definition, so run labels only ever carry positive
    state names. Returns the rewritten TBox and the name mapping.
    """
    temporal_defined = {
        ax.name: ax for ax in tbox.axioms if ax.sort is not Sort.ATEMPORAL
    }
    duals: dict[str, str] = {}
    fresh = _FreshNames(set(tbox.defined_names()), prefix="_N")
    pending: list[str] = []

    def rewrite(c: Concept) -> Concept:
        if isinstance(c, Not) and isinstance(c.arg, Name) and c.arg.name in temporal_defined:
            base = c.arg.name
            if base not in duals:
                duals[base] = fresh.fresh()
                pending.append(base)
            return Name(duals[base], Sort.TEMPORAL)
        if isinstance(c, Not):
            return Not(rewrite(c.arg))
        if isinstance(c, And):
            return And(rewrite(c.left), rewrite(c.right))
        if isinstance(c, Or):
            return Or(rewrite(c.left), rewrite(c.right))
        if isinstance(c, Exists):
            return Exists(c.role, rewrite(c.arg))
        if isinstance(c, Forall):
            return Forall(c.role, rewrite(c.arg))
        return c

    axioms = [
        Axiom(ax.name, ax.sort, ax.eventuality, rewrite(ax.concept)) for ax in tbox.axioms
    ]
    done: set[str] = set()
    while pending:
        base = pending.pop(0)
        if base in done:
            continue
        done.add(base)
        body = rewrite(nnf(Not(temporal_defined[base].concept)))
        axioms.append(Axiom(duals[base], Sort.TEMPORAL, False, body))
    return TBox(axioms), duals
