"""Satisfiability of temporal concepts w.r.t. weakly cyclic TBoxes.

The TBox plus a fresh initial definition for the input concept is turned
into a transition system: defined concept names are the states, and each
axiom's universal-free DNF gives the possible moves. A run picks one
element per node; abstract-feature obligations share one successor per
feature while general-role obligations each open their own direction.
Spatial predicate restrictions walk their feature chains through the run,
contributing variables ``(node, feature)`` and constraints to a global
CSP that is filtered incrementally during construction.

Search is depth first over element choices. A branch may close with a
back-edge to an ancestor carrying the same signature (label, deferred
eventualities, pending chain walks); the back-edge is accepted only if no
declared eventuality is deferred continuously around the loop. Once a run
is fully constructed its global CSP is solved outright, on a finite
unfolding of the run's loops; only runs whose unfolded CSP has a scenario
count as satisfying.

Mixed concepts delegate the atemporal conjuncts of every run node to the
atemporal tableau, which requires the TBox's atemporal part to be acyclic
(the twc-atac condition).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Union

from mtalc.algebra import cyct, rcc8
from mtalc.atemporal.domain import AdmissibleDomain, RationalOrderDomain
from mtalc.atemporal.tableau import alcd_satisfiable
from mtalc.lang.ast import (
    Absent,
    And,
    Axiom,
    Bot,
    Concept,
    Name,
    Not,
    Pred,
    Sort,
    SpatialPredicate,
    TBox,
    Top,
    sort_of,
)
from mtalc.lang.transform import (
    DnfElement,
    TBoxClass,
    _distribute,
    _Parts,
    absorb,
    dualize,
    name_subconcepts,
    nnf,
    validate,
)
from mtalc.network import (
    BinaryNetwork,
    PropagationQueue,
    TernaryNetwork,
    insert_constraint,
    refine,
    search_scenario,
)

INIT_NAME = "_Init"


class PrepareError(ValueError):
    """The TBox or concept cannot feed the temporal engine."""


# direction labels: ("f", feature name) or ("r", rrc index)
Direction = tuple[str, object]


@dataclass(frozen=True)
class RrcEntry:
    """One general-role obligation concept; its index is a tree direction."""

    index: int
    role_name: str
    target: str


@dataclass
class PreparedTBox:
    """Transformed TBox ready for the run search."""

    tbox: TBox  # normalized: NNF, duals introduced, subconcepts named
    calculus: str
    features: tuple[str, ...]  # temporal abstract features appearing (af)
    rrc: tuple[RrcEntry, ...]  # general-role obligations appearing
    eventualities: frozenset[str]
    elements: dict[str, tuple[DnfElement, ...]]  # absorbed, for inspection
    p: int  # general temporal roles used
    q: int  # temporal abstract features used
    _raw: dict[str, list[_Parts]] = field(default_factory=dict, repr=False)
    _unfold_map: dict[str, Concept] = field(default_factory=dict, repr=False)
    _name_order: dict[str, int] = field(default_factory=dict, repr=False)
    _rrc_index: dict[tuple[str, str], int] = field(default_factory=dict, repr=False)
    _max_chain: int = 0

    @property
    def arity(self) -> int:
        """Tree arity m + p of the structures the search explores."""
        return len(self.features) + len(self.rrc)

    def axiom_sort(self, name: str) -> Sort:
        ax = self.tbox.get(name)
        assert ax is not None
        return ax.sort


def _collect_temporal_features(parts_by_name: dict[str, list[_Parts]]) -> list[str]:
    seen: list[str] = []

    def note(f: str) -> None:
        if f not in seen:
            seen.append(f)

    for name in parts_by_name:
        for parts in parts_by_name[name]:
            for role, _, _ in parts.exists:
                if role.feature and role.temporal:
                    note(role.name)
            for role, _, _ in parts.foralls:
                if role.feature and role.temporal:
                    note(role.name)
            for pred in parts.preds:
                for chain in pred.chains:
                    for f in chain.prefix:
                        note(f)
    return seen


def prepare(
    tbox: TBox,
    concept: Concept,
    calculus: Optional[str] = None,
    domain: Optional[AdmissibleDomain] = None,
) -> PreparedTBox:
    """Extend the TBox with an initial definition and precompute the moves.

    Raises PrepareError when validation rejects the TBox, when the
    atemporal part is cyclic, or when the concept is not temporal.
    """
    if domain is None:
        domain = RationalOrderDomain()
    if sort_of(concept) is Sort.ATEMPORAL:
        raise PrepareError("the temporal engine needs a temporal concept")
    verdict = validate(tbox)
    if verdict.kind is TBoxClass.REJECTED:
        raise PrepareError(f"TBox rejected: {verdict.reason}")
    if verdict.kind is TBoxClass.WEAKLY_CYCLIC:
        # weakly cyclic with an atemporal self-user: the delegated tableau
        # could not terminate
        raise PrepareError("cyclic atemporal definitions are not supported")

    extended = tbox.extended(Axiom(INIT_NAME, Sort.TEMPORAL, False, concept))
    normalized = TBox(
        [
            Axiom(ax.name, ax.sort, ax.eventuality, nnf(ax.concept, domain.negation))
            for ax in extended.axioms
        ]
    )
    dualized, _ = dualize(normalized)
    named = name_subconcepts(dualized)

    unfold_map = {ax.name: ax.concept for ax in named.axioms if ax.sort is Sort.TEMPORAL}
    raw: dict[str, list[_Parts]] = {}
    elements: dict[str, tuple[DnfElement, ...]] = {}
    for ax in named.axioms:
        if ax.sort is not Sort.TEMPORAL:
            continue
        disjuncts = _distribute(ax.concept, unfold_map, ax.name, (ax.name,))
        raw[ax.name] = disjuncts
        absorbed = []
        for d in disjuncts:
            el = absorb([d])
            if el is not None:
                absorbed.append(el)
        elements[ax.name] = tuple(absorbed)

    found_calculi = set()
    max_chain = 0
    for parts_list in raw.values():
        for parts in parts_list:
            for pred in parts.preds:
                assert isinstance(pred.predicate, SpatialPredicate)
                found_calculi.add(pred.predicate.calculus)
                max_chain = max(max_chain, *(len(c.prefix) for c in pred.chains))
    if len(found_calculi) > 1:
        raise PrepareError(f"mixed spatial calculi: {sorted(found_calculi)}")
    if calculus is None:
        calculus = found_calculi.pop() if found_calculi else "rcc8"
    elif found_calculi and found_calculi != {calculus}:
        raise PrepareError(
            f"predicates use {found_calculi.pop()!r} but the run asked for {calculus!r}"
        )

    rrc_entries: list[RrcEntry] = []
    rrc_index: dict[tuple[str, str], int] = {}
    for name in named.defined_names():
        for parts in raw.get(name, ()):
            for role, target, _ in parts.exists:
                if role.feature:
                    continue
                assert isinstance(target, Name)
                key = (role.name, target.name)
                if key not in rrc_index:
                    rrc_index[key] = len(rrc_entries)
                    rrc_entries.append(RrcEntry(len(rrc_entries), role.name, target.name))

    # p and q per the signature's "used" reading: roles and abstract
    # features occurring in the prepared axioms
    used_roles = {e.role_name for e in rrc_entries}
    features = _collect_temporal_features(raw)

    eventualities = frozenset(ax.name for ax in named.axioms if ax.eventuality)
    return PreparedTBox(
        tbox=named,
        calculus=calculus,
        features=tuple(features),
        rrc=tuple(rrc_entries),
        eventualities=eventualities,
        elements=elements,
        p=len(used_roles),
        q=len(features),
        _raw=raw,
        _unfold_map=unfold_map,
        _name_order={n: i for i, n in enumerate(named.defined_names())},
        _rrc_index=rrc_index,
        _max_chain=max_chain,
    )


# ---------------------------------------------------------------------------
# Candidate expansion


@dataclass(frozen=True)
class FeatureChild:
    feature: str
    targets: frozenset[str]
    deferred: frozenset[str]  # eventualities sent onwards by their own axiom


@dataclass(frozen=True)
class RoleChild:
    direction: int  # index into PreparedTBox.rrc
    role_name: str
    targets: frozenset[str]
    deferred: frozenset[str]


@dataclass(frozen=True)
class Candidate:
    """One consistent element of the label's decomposition, with its
    successor demands mapped to tree directions."""

    element: DnfElement
    feature_children: tuple[FeatureChild, ...]
    role_children: tuple[RoleChild, ...]
    absents: frozenset[str]  # features this element declares successor-free

    def guard_for(self, feature: str) -> tuple[frozenset[str], frozenset[str]]:
        for g in self.element.guards:
            if g.feature == feature:
                return (
                    frozenset(t.name for t in g.targets if isinstance(t, Name)),
                    g.defers,
                )
        return frozenset(), frozenset()


def _target_names(targets: tuple[Concept, ...]) -> frozenset[str]:
    names = set()
    for t in targets:
        if isinstance(t, Top):
            continue
        assert isinstance(t, Name), f"unnamed obligation target: {t}"
        names.add(t.name)
    return frozenset(names)


def expand(pt: PreparedTBox, label: frozenset[str]) -> list[Candidate]:
    """Consistent decomposition elements of a node label.

    The label's temporal names contribute one raw disjunct each; every
    combination is merged with universal restrictions folded into the
    obligations they match. Candidates whose literals clash, or that both
    demand and forbid a feature successor, are dropped.
    """
    temporal = sorted(
        (n for n in label if pt.axiom_sort(n) is Sort.TEMPORAL),
        key=lambda n: pt._name_order[n],
    )
    for name in temporal:
        if name not in pt._raw:
            raise PrepareError(f"not a prepared temporal name: {name!r}")
    out: list[Candidate] = []
    for combo in product(*(pt._raw[name] for name in temporal)):
        element = absorb(list(combo))
        if element is None:
            continue
        absents = frozenset(
            lit.feature for lit in element.props if isinstance(lit, Absent) and lit.temporal
        )
        feature_children: list[FeatureChild] = []
        role_children: list[RoleChild] = []
        ok = True
        for ob in element.obligations:
            evts = ob.defers & pt.eventualities
            if ob.role.feature:
                if ob.role.name in absents:
                    ok = False
                    break
                feature_children.append(
                    FeatureChild(ob.role.name, _target_names(ob.targets), evts)
                )
            else:
                assert ob.base is not None
                direction = pt._rrc_index[(ob.role.name, ob.base)]
                role_children.append(
                    RoleChild(direction, ob.role.name, _target_names(ob.targets), evts)
                )
        if not ok:
            continue
        chain_firsts = {
            chain.prefix[0]
            for pred in element.preds
            for chain in pred.chains
            if chain.prefix
        }
        if chain_firsts & absents:
            continue
        out.append(
            Candidate(element, tuple(feature_children), tuple(role_children), absents)
        )
    return out


# ---------------------------------------------------------------------------
# Global CSP bookkeeping


@dataclass(frozen=True)
class _Record:
    mask: int
    slots: tuple[Optional[tuple[int, str]], ...]


class GlobalCsp:
    """Constraint store over (run node, spatial feature) variables.

    In online mode a live network mirrors every fully resolved constraint
    and is filtered to local consistency on demand; otherwise constraints
    are only recorded and the final solve sees them through the run's
    unfolding.
    """

    def __init__(self, calculus: str, online: bool = True):
        self.calculus = calculus
        self.online = online
        self.net = BinaryNetwork() if calculus == "rcc8" else TernaryNetwork()
        self.queue = PropagationQueue()
        self.vars: dict[tuple[int, str], int] = {}
        self.records: dict[int, _Record] = {}
        self.next_record = 0

    def clone(self) -> "GlobalCsp":
        other = GlobalCsp.__new__(GlobalCsp)
        other.calculus = self.calculus
        other.online = self.online
        other.net = self.net.clone()
        other.queue = PropagationQueue()
        for item in self.queue._fifo:
            other.queue.push(item)
        other.vars = dict(self.vars)
        other.records = dict(self.records)
        other.next_record = self.next_record
        return other

    def variable(self, node: int, feature: str) -> int:
        key = (node, feature)
        var = self.vars.get(key)
        if var is None:
            var = self.net.add_variable()
            self.vars[key] = var
        return var

    def new_record(self, mask: int, n_slots: int) -> int:
        rid = self.next_record
        self.next_record += 1
        self.records[rid] = _Record(mask, (None,) * n_slots)
        return rid

    def resolve(self, rid: int, slot: int, node: int, feature: str) -> None:
        rec = self.records[rid]
        slots = list(rec.slots)
        assert slots[slot] is None
        slots[slot] = (node, feature)
        rec = _Record(rec.mask, tuple(slots))
        self.records[rid] = rec
        if self.online and all(s is not None for s in rec.slots):
            ids = tuple(self.variable(*s) for s in rec.slots)
            insert_constraint(self.net, ids, rec.mask, self.queue)

    def propagate(self) -> bool:
        if not self.online:
            return True
        if self.net.inconsistent:
            return False
        return refine(self.net, self.queue)


# ---------------------------------------------------------------------------
# Run search


@dataclass(frozen=True)
class _Walk:
    """A chain suffix still travelling through the run."""

    remaining: tuple[str, ...]
    tip: str
    record: int
    slot: int

    @property
    def shape(self) -> tuple[tuple[str, ...], str]:
        return (self.remaining, self.tip)


@dataclass
class RunNode:
    node_id: int
    label: frozenset[str]
    pending: frozenset[str]
    candidate: Optional[Candidate]  # None for a back-edge leaf
    children: dict[Direction, "RunNode"] = field(default_factory=dict)
    back_target: Optional[int] = None


@dataclass(frozen=True)
class _PathEntry:
    signature: tuple
    node_id: int
    pending: frozenset[str]


@dataclass
class SatResult:
    satisfiable: bool
    witness: Optional[dict] = None


class _Search:
    def __init__(
        self,
        pt: PreparedTBox,
        domain: AdmissibleDomain,
        online_filtering: bool,
        unfold: int,
    ):
        self.pt = pt
        self.domain = domain
        self.online = online_filtering
        self.unfold = unfold
        self.counter = 0
        self.atemporal_cache: dict[frozenset[str], bool] = {}

    def run(self) -> Optional[tuple[RunNode, GlobalCsp]]:
        csp = GlobalCsp(self.pt.calculus, online=self.online)
        root_label = frozenset({INIT_NAME})
        for node, final_csp in self._solve(root_label, frozenset(), (), csp, ()):
            solved = self._final_solve(node)
            if solved is not None:
                return node, solved
        return None

    # -- node resolution ------------------------------------------------

    def _atemporal_ok(self, names: frozenset[str]) -> bool:
        if not names:
            return True
        cached = self.atemporal_cache.get(names)
        if cached is None:
            ordered = sorted(names)
            conj: Concept = Name(ordered[0], Sort.ATEMPORAL)
            for n in ordered[1:]:
                conj = And(conj, Name(n, Sort.ATEMPORAL))
            cached = alcd_satisfiable(conj, self.pt.tbox, self.domain)
            self.atemporal_cache[names] = cached
        return cached

    def _solve(
        self,
        label: frozenset[str],
        pending: frozenset[str],
        walks: tuple[_Walk, ...],
        csp: GlobalCsp,
        path: tuple[_PathEntry, ...],
    ) -> Iterator[tuple[RunNode, GlobalCsp]]:
        shape = frozenset(w.shape for w in walks)
        signature = (label, pending, shape)

        matches = [i for i, entry in enumerate(path) if entry.signature == signature]
        if matches:
            # a repeated signature must close; nearest ancestor first
            for i in reversed(matches):
                loop_pending = path[i].pending
                for entry in path[i + 1 :]:
                    loop_pending = loop_pending & entry.pending
                loop_pending = loop_pending & pending
                if not loop_pending:
                    node = RunNode(
                        self._fresh_id(), label, pending, None, {}, path[i].node_id
                    )
                    yield node, csp
            return

        atemporal_names = frozenset(
            n for n in label if self.pt.axiom_sort(n) is Sort.ATEMPORAL
        )
        if not self._atemporal_ok(atemporal_names):
            return

        node_id = self._fresh_id()
        entry = _PathEntry(signature, node_id, pending)
        for cand in expand(self.pt, label):
            if cand.absents & {w.remaining[0] for w in walks if w.remaining}:
                continue
            trial = csp.clone()
            child_walks: dict[str, list[_Walk]] = {}
            consistent = True

            def route(walk: _Walk, at_node: int) -> None:
                if walk.remaining:
                    child_walks.setdefault(walk.remaining[0], []).append(
                        _Walk(walk.remaining[1:], walk.tip, walk.record, walk.slot)
                    )
                else:
                    trial.resolve(walk.record, walk.slot, at_node, walk.tip)

            for walk in walks:
                route(walk, node_id)
            for pred in cand.element.preds:
                assert isinstance(pred.predicate, SpatialPredicate)
                rid = trial.new_record(pred.predicate.mask, len(pred.chains))
                for slot, chain in enumerate(pred.chains):
                    route(_Walk(chain.prefix, chain.tip, rid, slot), node_id)
            if self.online and not trial.propagate():
                continue

            demanded: list[str] = []
            by_feature: dict[str, FeatureChild] = {}
            for fc in cand.feature_children:
                demanded.append(fc.feature)
                by_feature[fc.feature] = fc
            for f in self.pt.features:
                if f in child_walks and f not in by_feature:
                    demanded.append(f)
            demanded.sort(key=lambda f: self.pt.features.index(f))

            specs: list[tuple[Direction, frozenset[str], frozenset[str], tuple[_Walk, ...]]] = []
            for f in demanded:
                fc = by_feature.get(f)
                if fc is not None:
                    targets, deferred = fc.targets, fc.deferred
                    gt, gd = frozenset(), frozenset()
                else:
                    targets, deferred = frozenset(), frozenset()
                    gt, gd = cand.guard_for(f)
                specs.append(
                    (
                        ("f", f),
                        targets | gt,
                        (deferred | gd) & self.pt.eventualities,
                        tuple(child_walks.get(f, ())),
                    )
                )
            for rc in sorted(cand.role_children, key=lambda rc: rc.direction):
                specs.append((("r", rc.direction), rc.targets, rc.deferred, ()))

            for children, final_csp in self._solve_children(specs, trial, path + (entry,)):
                node = RunNode(node_id, label, pending, cand, dict(children))
                yield node, final_csp

    def _solve_children(
        self,
        specs: list,
        csp: GlobalCsp,
        path: tuple[_PathEntry, ...],
    ) -> Iterator[tuple[list[tuple[Direction, RunNode]], GlobalCsp]]:
        if not specs:
            yield [], csp
            return
        (direction, targets, deferred, walks), rest = specs[0], specs[1:]
        for child, csp1 in self._solve(targets, deferred, walks, csp, path):
            for others, csp2 in self._solve_children(rest, csp1, path):
                yield [(direction, child)] + others, csp2

    def _fresh_id(self) -> int:
        self.counter += 1
        return self.counter - 1

    # -- final solve over the unfolded run --------------------------------

    def _final_solve(self, root: RunNode) -> Optional[GlobalCsp]:
        """Solve the run's global CSP on a finite unfolding of its loops.

        Every loop is traversed ``unfold`` extra times (plus headroom for
        the longest chain, so no walk is cut short spuriously); constraints
        whose walks leave the truncated unfolding are dropped.
        """
        by_id: dict[int, RunNode] = {}

        def index(node: RunNode) -> None:
            by_id[node.node_id] = node
            for child in node.children.values():
                index(child)

        index(root)

        budget_default = self.unfold + self.pt._max_chain
        final = GlobalCsp(self.pt.calculus, online=True)
        occurrences: dict[int, int] = {}
        names: dict[int, str] = {}

        class _UNode:
            __slots__ = ("uid", "source", "children")

            def __init__(self, uid: int, source: RunNode):
                self.uid = uid
                self.source = source
                self.children: dict[Direction, Optional[_UNode]] = {}

        uid_counter = [0]
        unodes: list[_UNode] = []

        def build(node: RunNode, budgets: dict[int, int]) -> Optional[_UNode]:
            if node.candidate is None:  # back-edge leaf
                assert node.back_target is not None
                remaining = budgets.get(node.node_id, budget_default)
                if remaining <= 0:
                    return None
                new_budgets = dict(budgets)
                new_budgets[node.node_id] = remaining - 1
                return build(by_id[node.back_target], new_budgets)
            uid = uid_counter[0]
            uid_counter[0] += 1
            k = occurrences.get(node.node_id, 0)
            occurrences[node.node_id] = k + 1
            names[uid] = f"s{node.node_id}" if k == 0 else f"s{node.node_id}~{k}"
            unode = _UNode(uid, node)
            unodes.append(unode)
            for direction, child in node.children.items():
                unode.children[direction] = build(child, budgets)
            return unode

        uroot = build(root, {})
        assert uroot is not None

        for unode in unodes:
            cand = unode.source.candidate
            assert cand is not None
            for pred in cand.element.preds:
                assert isinstance(pred.predicate, SpatialPredicate)
                endpoints = []
                for chain in pred.chains:
                    cur: Optional[_UNode] = unode
                    for f in chain.prefix:
                        cur = cur.children.get(("f", f)) if cur is not None else None
                    if cur is None:
                        endpoints = None
                        break
                    endpoints.append((cur.uid, chain.tip))
                if endpoints is None:
                    continue  # walk left the unfolding: dropped by truncation
                ids = tuple(final.variable(node, tip) for node, tip in endpoints)
                insert_constraint(final.net, ids, pred.predicate.mask, final.queue)

        if final.net.inconsistent:
            return None
        scenario = search_scenario(final.net)
        if scenario is None:
            return None
        final.scenario = scenario  # type: ignore[attr-defined]
        final.var_names = {  # type: ignore[attr-defined]
            var: f"{names[node]}.{feature}" for (node, feature), var in final.vars.items()
        }
        return final


# ---------------------------------------------------------------------------
# Public entry points


def _witness(root: RunNode, csp: GlobalCsp, pt: PreparedTBox) -> dict:
    nodes = []
    edges = []
    back_edges = []

    def render_direction(d: Direction) -> str:
        if d[0] == "f":
            return str(d[1])
        return f"R{d[1]}:{pt.rrc[d[1]].role_name}"

    def visit(node: RunNode) -> None:
        if node.candidate is None:
            back_edges.append({"from": node.node_id, "to": node.back_target})
            return
        element = node.candidate.element
        nodes.append(
            {
                "id": node.node_id,
                "label": sorted(node.label),
                "pending": sorted(node.pending),
                "props": sorted(str(p) for p in element.props),
                "constraints": [str(p) for p in element.preds],
            }
        )
        for direction in node.children:
            child = node.children[direction]
            if child.candidate is None:
                back_edges.append(
                    {
                        "from": node.node_id,
                        "direction": render_direction(direction),
                        "to": child.back_target,
                    }
                )
            else:
                edges.append(
                    {
                        "from": node.node_id,
                        "direction": render_direction(direction),
                        "to": child.node_id,
                    }
                )
                visit(child)

    visit(root)
    mod = rcc8 if pt.calculus == "rcc8" else cyct
    scenario_out = []
    scenario = getattr(csp, "scenario", {})
    var_names = getattr(csp, "var_names", {})
    inverse = {v: k for k, v in var_names.items()}
    for key in sorted(scenario):
        atom_mask = scenario[key]
        scenario_out.append(
            {
                "vars": [var_names.get(v, str(v)) for v in key],
                "atom": mod.format_relation(atom_mask).strip("{}"),
            }
        )
    return {
        "calculus": pt.calculus,
        "arity": {"features": list(pt.features), "roles": len(pt.rrc)},
        "nodes": nodes,
        "edges": edges,
        "back_edges": back_edges,
        "scenario": scenario_out,
    }


def mtalc_satisfiable(
    pt: PreparedTBox,
    domain: Optional[AdmissibleDomain] = None,
    online_filtering: bool = True,
    unfold: int = 2,
) -> SatResult:
    """Decide satisfiability of the prepared concept; SAT carries a witness."""
    if domain is None:
        domain = RationalOrderDomain()
    search = _Search(pt, domain, online_filtering, unfold)
    found = search.run()
    if found is None:
        return SatResult(False)
    node, csp = found
    return SatResult(True, _witness(node, csp, pt))


def mtalcd_satisfiable(
    pt: PreparedTBox,
    domain: Optional[AdmissibleDomain] = None,
    online_filtering: bool = True,
    unfold: int = 2,
) -> SatResult:
    """Mixed-sort satisfiability: atemporal conjuncts go to the tableau."""
    return mtalc_satisfiable(pt, domain, online_filtering, unfold)


def satisfiable(
    concept: Concept,
    tbox: TBox,
    domain: Optional[AdmissibleDomain] = None,
    calculus: Optional[str] = None,
    online_filtering: bool = True,
    unfold: int = 2,
) -> SatResult:
    """Route a concept to the right engine by sort."""
    if domain is None:
        domain = RationalOrderDomain()
    if sort_of(concept) is Sort.ATEMPORAL:
        verdict = validate(tbox)
        if verdict.kind is TBoxClass.REJECTED:
            raise PrepareError(f"TBox rejected: {verdict.reason}")
        return SatResult(alcd_satisfiable(concept, tbox, domain))
    pt = prepare(tbox, concept, calculus, domain)
    return mtalcd_satisfiable(pt, domain, online_filtering, unfold)


def subsumes(
    c: Concept,
    d: Concept,
    tbox: TBox,
    domain: Optional[AdmissibleDomain] = None,
    calculus: Optional[str] = None,
    unfold: int = 2,
) -> bool:
    """Does c subsume d? Decided as insatisfiability of d and not-c."""
    from mtalc.lang.ast import join_sorts

    if join_sorts(sort_of(c), sort_of(d)) is None:
        raise PrepareError("subsumption needs concepts of one sort")
    question = And(d, Not(c))
    return not satisfiable(question, tbox, domain, calculus, unfold=unfold).satisfiable
