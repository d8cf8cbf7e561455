"""Qualitative constraint networks over the spatial algebras.

A binary network stores one RCC8 relation per variable pair (i < j); the
converse direction is implicit. A ternary network stores one CYC_t
relation per variable triple, held in ascending argument order; reads in
any other order go through the algebra's permutation maps. Propagation is
queue driven: a constraint is enqueued whenever its relation strictly
shrinks, and an empty queue means the network is locally consistent (path
consistent for pairs, 4-consistent for triples). An empty relation marks
the whole network inconsistent; it is a value, not an error.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, permutations
from typing import Iterator, Optional, Union

from mtalc.algebra import cyct, rcc8

ConstraintId = Union[tuple[int, int], tuple[int, int, int]]


class PropagationQueue:
    """FIFO of constraint ids pending repropagation, with duplicate suppression."""

    def __init__(self) -> None:
        self._fifo: deque[ConstraintId] = deque()
        self._members: set[ConstraintId] = set()

    def push(self, item: ConstraintId) -> None:
        if item not in self._members:
            self._members.add(item)
            self._fifo.append(item)

    def pop(self) -> ConstraintId:
        item = self._fifo.popleft()
        self._members.remove(item)
        return item

    def clear(self) -> None:
        self._fifo.clear()
        self._members.clear()

    def __len__(self) -> int:
        return len(self._fifo)

    def __bool__(self) -> bool:
        return bool(self._fifo)


class BinaryNetwork:
    """RCC8 constraint network; unstored pairs are implicitly universal."""

    arity = 2

    def __init__(self, n: int = 0) -> None:
        self.n = n
        self.constraints: dict[tuple[int, int], int] = {}
        self.inconsistent = False

    def clone(self) -> "BinaryNetwork":
        other = BinaryNetwork(self.n)
        other.constraints = dict(self.constraints)
        other.inconsistent = self.inconsistent
        return other

    def add_variable(self) -> int:
        self.n += 1
        return self.n - 1

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"variable out of range: ({i}, {j})")

    def get(self, i: int, j: int) -> int:
        """Relation of (i, j); the stored half determines the converse."""
        self._check(i, j)
        if i == j:
            return rcc8.Rcc8Atom.EQ.bit
        if i < j:
            return self.constraints.get((i, j), rcc8.FULL)
        return rcc8.converse(self.constraints.get((j, i), rcc8.FULL))

    def set(self, i: int, j: int, rel: int) -> None:
        self._check(i, j)
        if i == j:
            raise ValueError("diagonal entries are implicit")
        if i > j:
            i, j, rel = j, i, rcc8.converse(rel)
        self.constraints[(i, j)] = rel
        if rel == rcc8.EMPTY:
            self.inconsistent = True

    def pairs(self) -> Iterator[tuple[int, int]]:
        return combinations(range(self.n), 2)

    def dump(self) -> str:
        lines = []
        for i, j in sorted(self.constraints):
            lines.append(f"{i} {j} {rcc8.format_relation(self.constraints[(i, j)])}")
        return "\n".join(lines)


class TernaryNetwork:
    """CYC_t constraint network over distinct-variable triples."""

    arity = 3

    def __init__(self, n: int = 0) -> None:
        self.n = n
        self.constraints: dict[tuple[int, int, int], int] = {}
        self.inconsistent = False

    def clone(self) -> "TernaryNetwork":
        other = TernaryNetwork(self.n)
        other.constraints = dict(self.constraints)
        other.inconsistent = self.inconsistent
        return other

    def add_variable(self) -> int:
        self.n += 1
        return self.n - 1

    @staticmethod
    def _canonical(i: int, j: int, k: int) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        """Sorted key plus the reordering that maps the key to (i, j, k)."""
        order = sorted(((i, 0), (j, 1), (k, 2)))
        key = (order[0][0], order[1][0], order[2][0])
        # perm[p] = position in key of the variable at position p of (i, j, k)
        perm = [0, 0, 0]
        for pos_in_key, (_, orig_pos) in enumerate(order):
            perm[orig_pos] = pos_in_key
        return key, (perm[0], perm[1], perm[2])

    def get(self, i: int, j: int, k: int) -> int:
        if len({i, j, k}) != 3:
            raise ValueError(f"ternary constraints need distinct variables: ({i}, {j}, {k})")
        if not all(0 <= v < self.n for v in (i, j, k)):
            raise IndexError(f"variable out of range: ({i}, {j}, {k})")
        key, perm = self._canonical(i, j, k)
        stored = self.constraints.get(key, cyct.FULL)
        if perm == (0, 1, 2):
            return stored
        return cyct.transform(stored, perm)

    def set(self, i: int, j: int, k: int, rel: int) -> None:
        if len({i, j, k}) != 3:
            raise ValueError(f"ternary constraints need distinct variables: ({i}, {j}, {k})")
        key, perm = self._canonical(i, j, k)
        if perm != (0, 1, 2):
            # invert: stored relation is on the sorted triple
            inverse = (perm.index(0), perm.index(1), perm.index(2))
            rel = cyct.transform(rel, inverse)
        self.constraints[key] = rel
        if rel == cyct.EMPTY:
            self.inconsistent = True

    def triples(self) -> Iterator[tuple[int, int, int]]:
        return combinations(range(self.n), 3)

    def dump(self) -> str:
        lines = []
        for i, j, k in sorted(self.constraints):
            lines.append(f"{i} {j} {k} {cyct.format_relation(self.constraints[(i, j, k)])}")
        return "\n".join(lines)


Network = Union[BinaryNetwork, TernaryNetwork]


def insert_constraint(net: Network, ids: ConstraintId, rel: int, queue: PropagationQueue) -> None:
    """Intersect a constraint with ``rel``, enqueueing it if it shrank.

    Variables beyond the current count are created on demand with universal
    relations. A binary constraint on (i, i) is the implicit diagonal: it
    stays untouched, but the network becomes inconsistent unless ``rel``
    admits EQ.
    """
    if len(ids) != net.arity:
        raise ValueError(f"arity mismatch: {len(ids)} ids for a {net.arity}-ary network")
    while net.n <= max(ids):
        net.add_variable()
    if net.arity == 2:
        i, j = ids
        if i == j:
            if not rel & rcc8.Rcc8Atom.EQ.bit:
                net.inconsistent = True
            return
        old = net.get(i, j)
        new = old & rel
        if new != old:
            net.set(i, j, new)
            queue.push((i, j) if i < j else (j, i))
    else:
        old = net.get(*ids)
        new = old & rel
        if new != old:
            net.set(*ids, new)
            key, _ = TernaryNetwork._canonical(*ids)
            queue.push(key)


def path_consistency(net: BinaryNetwork, queue: PropagationQueue) -> bool:
    """Refine to the largest path-consistent network; False iff inconsistent.

    The queue must contain at least every constraint changed since the last
    fixpoint; pass all pairs for an initial run.
    """
    if net.inconsistent:
        return False
    while queue:
        i, j = queue.pop()
        for k in range(net.n):
            if k == i or k == j:
                continue
            for a, c, b in ((i, j, k), (k, i, j)):
                # refine (a, b) through pivot c
                old = net.get(a, b)
                new = old & rcc8.compose(net.get(a, c), net.get(c, b))
                if new != old:
                    net.set(a, b, new)
                    if new == rcc8.EMPTY:
                        return False
                    queue.push((a, b) if a < b else (b, a))
    return True


_QUAD_ORDERS = tuple(permutations(range(4)))


def four_consistency(net: TernaryNetwork, queue: PropagationQueue) -> bool:
    """Refine every triple through every 4th variable; False iff inconsistent.

    For each quadruple and each ordered choice (x, y, u, z) of its members,
    the relation on (x, y, z) is intersected with the composition of the
    relations on (x, y, u) and (y, u, z).
    """
    if net.inconsistent:
        return False
    while queue:
        t = queue.pop()
        tset = set(t)
        for l in range(net.n):
            if l in tset:
                continue
            quad = (*t, l)
            for order in _QUAD_ORDERS:
                x, y, u, z = (quad[p] for p in order)
                old = net.get(x, y, z)
                new = old & cyct.compose(net.get(x, y, u), net.get(y, u, z))
                if new != old:
                    net.set(x, y, z, new)
                    if new == cyct.EMPTY:
                        return False
                    key, _ = TernaryNetwork._canonical(x, y, z)
                    queue.push(key)
    return True


def _enqueue_all(net: Network, queue: PropagationQueue) -> None:
    if net.arity == 2:
        for pair in net.pairs():
            queue.push(pair)
    else:
        for triple in net.triples():
            queue.push(triple)


def refine(net: Network, queue: Optional[PropagationQueue] = None) -> bool:
    """Run the algebra's local-consistency filter from the given queue."""
    if queue is None:
        queue = PropagationQueue()
        _enqueue_all(net, queue)
    if net.arity == 2:
        return path_consistency(net, queue)
    return four_consistency(net, queue)


def _atom_bits(rel: int) -> list[int]:
    bits = []
    while rel:
        low = rel & (-rel)
        bits.append(low)
        rel ^= low
    return bits


Scenario = dict[ConstraintId, int]


def search_scenario(net: Network) -> Optional[Scenario]:
    """Find a locally consistent atomic refinement, or None.

    Chronological backtracking, splitting the smallest non-singleton
    constraint first, with the local-consistency filter as forward check.
    Atom order follows declaration order, so runs are reproducible. The
    returned scenario maps every pair (resp. triple) to a single atom mask.
    """
    work = net.clone()
    if not refine(work):
        return None
    return _search(work)


def _search(net: Network) -> Optional[Scenario]:
    best: Optional[ConstraintId] = None
    best_size = 0
    keys = net.pairs() if net.arity == 2 else net.triples()
    for key in keys:
        rel = net.get(*key)
        size = bin(rel).count("1")
        if size > 1 and (best is None or size < best_size):
            best, best_size = key, size
    if best is None:
        scenario: Scenario = {}
        all_keys = net.pairs() if net.arity == 2 else net.triples()
        for key in all_keys:
            scenario[key] = net.get(*key)
        return scenario
    for bit in _atom_bits(net.get(*best)):
        trial = net.clone()
        trial.set(*best, bit)
        queue = PropagationQueue()
        queue.push(best)
        if refine(trial, queue):
            found = _search(trial)
            if found is not None:
                return found
    return None
