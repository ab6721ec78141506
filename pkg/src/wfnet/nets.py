"""Immutable Petri net model with interface node sets.

A net here is a bipartite directed graph of places and transitions together
with nonempty input and output node sets.  When the interface is homogeneous
(all places or all transitions) and every node lies on a path from some input
to some output, the net is a workflow net; `validate` checks exactly that and
reports every violation it finds instead of stopping at the first.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Literal

NodeId = str
Arc = tuple[NodeId, NodeId]
IoType = Literal["place", "transition"]

ID_PATTERN = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class Net:
    """A Petri net with designated input and output nodes.

    Instances are values: all fields are frozen sets and every operation on
    nets returns a new instance.  Construction does not validate; arbitrary
    candidates can be represented so that `validate` stays total.
    """

    places: frozenset[NodeId]
    transitions: frozenset[NodeId]
    arcs: frozenset[Arc]
    inputs: frozenset[NodeId]
    outputs: frozenset[NodeId]
    name: str | None = field(default=None, compare=False)

    @classmethod
    def of(
        cls,
        places: Iterable[NodeId] = (),
        transitions: Iterable[NodeId] = (),
        arcs: Iterable[Arc] = (),
        inputs: Iterable[NodeId] = (),
        outputs: Iterable[NodeId] = (),
        name: str | None = None,
    ) -> Net:
        """Build a net from any iterables, deduplicating as sets."""
        return cls(
            places=frozenset(places),
            transitions=frozenset(transitions),
            arcs=frozenset((a, b) for a, b in arcs),
            inputs=frozenset(inputs),
            outputs=frozenset(outputs),
            name=name,
        )

    @property
    def nodes(self) -> frozenset[NodeId]:
        return self.places | self.transitions

    def __contains__(self, node: NodeId) -> bool:
        return node in self.places or node in self.transitions

    def __len__(self) -> int:
        return len(self.places) + len(self.transitions)

    def is_place(self, node: NodeId) -> bool:
        if node in self.places:
            return True
        if node in self.transitions:
            return False
        raise KeyError(node)

    @cached_property
    def _pred(self) -> dict[NodeId, frozenset[NodeId]]:
        acc: dict[NodeId, set[NodeId]] = {n: set() for n in self.nodes}
        for a, b in self.arcs:
            acc.setdefault(b, set()).add(a)
        return {n: frozenset(s) for n, s in acc.items()}

    @cached_property
    def _succ(self) -> dict[NodeId, frozenset[NodeId]]:
        acc: dict[NodeId, set[NodeId]] = {n: set() for n in self.nodes}
        for a, b in self.arcs:
            acc.setdefault(a, set()).add(b)
        return {n: frozenset(s) for n, s in acc.items()}

    def preset(self, node: NodeId) -> frozenset[NodeId]:
        """All sources of arcs into `node`."""
        if node not in self:
            raise KeyError(node)
        return self._pred.get(node, frozenset())

    def postset(self, node: NodeId) -> frozenset[NodeId]:
        """All targets of arcs out of `node`."""
        if node not in self:
            raise KeyError(node)
        return self._succ.get(node, frozenset())

    @property
    def io_type(self) -> IoType:
        """The interface type of an I/O consistent net.

        Raises ValueError when the interface mixes places and transitions,
        is empty, or mentions unknown nodes; use `validate` for a full
        diagnosis.
        """
        interface = self.inputs | self.outputs
        if interface and interface <= self.places:
            return "place"
        if interface and interface <= self.transitions:
            return "transition"
        raise ValueError("interface is not all places or all transitions")

    def replace(self, **changes) -> Net:
        """Return a copy with the given fields replaced."""
        return dataclasses.replace(self, **changes)


def reachable(net: Net, origin: NodeId, target: NodeId) -> bool:
    """True when a directed path leads from origin to target.

    Single-node paths count, so reachable(net, n, n) always holds.
    """
    if origin not in net or target not in net:
        raise KeyError(origin if origin not in net else target)
    return target in descendants(net, origin)


def descendants(net: Net, origin: NodeId) -> frozenset[NodeId]:
    """All nodes reachable from origin, including origin itself."""
    seen = {origin}
    frontier = [origin]
    succ = net._succ
    while frontier:
        node = frontier.pop()
        for nxt in succ.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def ancestors(net: Net, origin: NodeId) -> frozenset[NodeId]:
    """All nodes that reach origin, including origin itself."""
    seen = {origin}
    frontier = [origin]
    pred = net._pred
    while frontier:
        node = frontier.pop()
        for prv in pred.get(node, ()):
            if prv not in seen:
                seen.add(prv)
                frontier.append(prv)
    return frozenset(seen)


def is_acyclic(net: Net) -> bool:
    """True when the arc relation has no directed cycle (Kahn's algorithm)."""
    indeg = {n: len(net._pred.get(n, ())) for n in net.nodes}
    queue = [n for n, d in indeg.items() if d == 0]
    removed = 0
    while queue:
        node = queue.pop()
        removed += 1
        for nxt in net._succ.get(node, ()):
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                queue.append(nxt)
    return removed == len(indeg)


def descendants_closure(net: Net) -> dict[NodeId, frozenset[NodeId]]:
    """Reachability closure for every node at once.

    Condenses strongly connected components first (iterative Kosaraju) and
    propagates reachable sets over the condensation, so repeated queries stay
    cheap even on cyclic nets.
    """
    order = sorted(net.nodes)
    succ = net._succ
    pred = net._pred

    finish: list[NodeId] = []
    seen: set[NodeId] = set()
    for root in order:
        if root in seen:
            continue
        stack: list[tuple[NodeId, Iterator[NodeId]]] = [(root, iter(sorted(succ.get(root, ()))))]
        seen.add(root)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(sorted(succ.get(nxt, ())))))
                    advanced = True
                    break
            if not advanced:
                finish.append(node)
                stack.pop()

    component: dict[NodeId, int] = {}
    members: list[list[NodeId]] = []
    for root in reversed(finish):
        if root in component:
            continue
        comp = len(members)
        members.append([])
        todo = [root]
        component[root] = comp
        while todo:
            node = todo.pop()
            members[comp].append(node)
            for prv in pred.get(node, ()):
                if prv not in component:
                    component[prv] = comp
                    todo.append(prv)

    # Kosaraju emits components in reverse topological order of the
    # condensation, so successors are always ready before their callers.
    comp_reach: list[set[NodeId]] = [set() for _ in members]
    for comp in range(len(members) - 1, -1, -1):
        acc = set(members[comp])
        for node in members[comp]:
            for nxt in succ.get(node, ()):
                nc = component[nxt]
                if nc != comp:
                    acc |= comp_reach[nc]
        comp_reach[comp] = acc

    frozen = [frozenset(s) for s in comp_reach]
    return {n: frozen[component[n]] for n in net.nodes}


@dataclass(frozen=True)
class ValidationReport:
    """Everything wrong with a candidate net, grouped by category.

    An empty report means the candidate is a workflow net and `io_type`
    carries its interface type.
    """

    io_type: IoType | None
    node_clashes: tuple[NodeId, ...] = ()
    bad_ids: tuple[NodeId, ...] = ()
    dangling_arcs: tuple[Arc, ...] = ()
    nonbipartite_arcs: tuple[Arc, ...] = ()
    unknown_interface: tuple[NodeId, ...] = ()
    empty_interface: tuple[str, ...] = ()
    mixed_interface: tuple[NodeId, ...] = ()
    unreachable_nodes: tuple[NodeId, ...] = ()
    dead_end_nodes: tuple[NodeId, ...] = ()
    duplicate_arcs: tuple[Arc, ...] = ()

    @property
    def ok(self) -> bool:
        return not (
            self.node_clashes
            or self.bad_ids
            or self.dangling_arcs
            or self.nonbipartite_arcs
            or self.unknown_interface
            or self.empty_interface
            or self.mixed_interface
            or self.unreachable_nodes
            or self.dead_end_nodes
        )

    def lines(self) -> list[str]:
        """Human-readable report, one line per violation category."""
        out: list[str] = []
        if self.node_clashes:
            out.append("both place and transition: " + ", ".join(self.node_clashes))
        if self.bad_ids:
            out.append("invalid node ids: " + ", ".join(repr(n) for n in self.bad_ids))
        if self.dangling_arcs:
            out.append("arcs with unknown endpoints: " + _arc_list(self.dangling_arcs))
        if self.nonbipartite_arcs:
            out.append("arcs between same-type nodes: " + _arc_list(self.nonbipartite_arcs))
        if self.unknown_interface:
            out.append("interface nodes not in net: " + ", ".join(self.unknown_interface))
        if self.empty_interface:
            out.append("empty interface sets: " + ", ".join(self.empty_interface))
        if self.mixed_interface:
            out.append("interface mixes places and transitions: " + ", ".join(self.mixed_interface))
        if self.unreachable_nodes:
            out.append("not reachable from any input: " + ", ".join(self.unreachable_nodes))
        if self.dead_end_nodes:
            out.append("cannot reach any output: " + ", ".join(self.dead_end_nodes))
        if self.duplicate_arcs:
            out.append("duplicate arcs collapsed: " + _arc_list(self.duplicate_arcs))
        if self.ok:
            out.insert(0, f"valid workflow net ({self.io_type} interface)")
        return out


def _arc_list(arcs: Iterable[Arc]) -> str:
    return ", ".join(f"{a}->{b}" for a, b in sorted(arcs))


def validate(net: Net, duplicate_arcs: Iterable[Arc] = ()) -> ValidationReport:
    """Check the workflow net conditions, reporting every violation.

    Total on arbitrary `Net` values.  `duplicate_arcs` lets loaders record
    arcs that were collapsed during parsing; they appear in the report as a
    warning without affecting validity.
    """
    clashes = sorted(net.places & net.transitions)
    bad_ids = sorted(n for n in net.nodes if not ID_PATTERN.match(n))
    dangling = sorted(
        (a, b) for a, b in net.arcs if a not in net or b not in net
    )
    nonbipartite = sorted(
        (a, b)
        for a, b in net.arcs
        if a in net and b in net and net.is_place(a) == net.is_place(b)
    )

    interface = net.inputs | net.outputs
    unknown_io = sorted(n for n in interface if n not in net)
    empty: list[str] = []
    if not net.inputs:
        empty.append("inputs")
    if not net.outputs:
        empty.append("outputs")

    known_io = interface - set(unknown_io)
    io_places = known_io & net.places
    io_transitions = known_io & net.transitions
    mixed: list[NodeId] = []
    io_type: IoType | None = None
    if io_places and io_transitions:
        mixed = sorted(min(io_places, io_transitions, key=len))
    elif io_places:
        io_type = "place"
    elif io_transitions:
        io_type = "transition"

    unreachable: list[NodeId] = []
    dead_ends: list[NodeId] = []
    real_inputs = [n for n in net.inputs if n in net]
    real_outputs = [n for n in net.outputs if n in net]
    if real_inputs:
        from_inputs: set[NodeId] = set()
        for n in real_inputs:
            from_inputs |= descendants(net, n)
        unreachable = sorted(net.nodes - from_inputs)
    if real_outputs:
        to_outputs: set[NodeId] = set()
        for n in real_outputs:
            to_outputs |= ancestors(net, n)
        dead_ends = sorted(net.nodes - to_outputs)

    report = ValidationReport(
        io_type=io_type,
        node_clashes=tuple(clashes),
        bad_ids=tuple(bad_ids),
        dangling_arcs=tuple(dangling),
        nonbipartite_arcs=tuple(nonbipartite),
        unknown_interface=tuple(unknown_io),
        empty_interface=tuple(empty),
        mixed_interface=tuple(mixed),
        unreachable_nodes=tuple(unreachable),
        dead_end_nodes=tuple(dead_ends),
        duplicate_arcs=tuple(sorted(set(duplicate_arcs))),
    )
    if not report.ok:
        return dataclasses.replace(report, io_type=None)
    return report


class InvalidNetError(ValueError):
    """Raised when an operation needs a workflow net but got something else."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.lines()) or "invalid net")


def require_wf(net: Net) -> IoType:
    """Return the interface type of a valid workflow net or raise."""
    report = validate(net)
    if not report.ok:
        raise InvalidNetError(report)
    assert report.io_type is not None
    return report.io_type


def fresh_name(base: str, taken: Iterable[NodeId]) -> NodeId:
    """`base` if unused, else the first `base_2`, `base_3`, ... that is."""
    used = set(taken)
    if base not in used:
        return base
    k = 2
    while f"{base}_{k}" in used:
        k += 1
    return f"{base}_{k}"


class FreshIds:
    """Counter-based supply of contraction node ids (ctr_0, ctr_1, ...).

    Skips ids already present in the universe it was created over, and never
    hands out the same id twice, so one supply can serve a whole reduction
    run even as contraction introduces new nodes.
    """

    def __init__(self, taken: Iterable[NodeId] = ()):
        self._taken = set(taken)
        self._next = 0

    def take(self) -> NodeId:
        while True:
            candidate = f"ctr_{self._next}"
            self._next += 1
            if candidate not in self._taken:
                self._taken.add(candidate)
                return candidate

    def reserve(self, ids: Iterable[NodeId]) -> None:
        self._taken.update(ids)


def place_completion(net: Net) -> Net:
    """Close a transition-interface net with one input and one output place.

    Adds a fresh place feeding every input transition and a fresh place fed
    by every output transition; the result is a place-interface net with a
    single input and a single output.
    """
    if net.io_type != "transition":
        raise ValueError("place completion applies to transition-interface nets")
    p_i = fresh_name("p_i", net.nodes)
    p_o = fresh_name("p_o", net.nodes | {p_i})
    arcs = set(net.arcs)
    arcs.update((p_i, t) for t in net.inputs)
    arcs.update((t, p_o) for t in net.outputs)
    return Net(
        places=net.places | {p_i, p_o},
        transitions=net.transitions,
        arcs=frozenset(arcs),
        inputs=frozenset({p_i}),
        outputs=frozenset({p_o}),
        name=net.name,
    )


def transition_completion(net: Net) -> Net:
    """Dual of `place_completion` for place-interface nets."""
    if net.io_type != "place":
        raise ValueError("transition completion applies to place-interface nets")
    t_i = fresh_name("t_i", net.nodes)
    t_o = fresh_name("t_o", net.nodes | {t_i})
    arcs = set(net.arcs)
    arcs.update((t_i, p) for p in net.inputs)
    arcs.update((p, t_o) for p in net.outputs)
    return Net(
        places=net.places,
        transitions=net.transitions | {t_i, t_o},
        arcs=frozenset(arcs),
        inputs=frozenset({t_i}),
        outputs=frozenset({t_o}),
        name=net.name,
    )
