"""Finding and contracting nested subnets until a normal form is reached.

The search has three detectors, tried in order over a deterministic node
ordering:

* the loop test, which folds a place together with a pure self-loop
  transition;
* the parallel test, which merges two nodes with identical wiring and
  identical interface membership;
* `expand`, which grows a candidate subnet outward from an (input, output)
  node pair, tracking which of the four basic classes the grown region
  could still belong to and giving up when none survives.

Contracting whatever they find, over and over, terminates (every step
removes at least one node) and is confluent up to isomorphism, so the
result does not depend on the order policy.  A net is hierarchical in the
AND-OR sense exactly when its normal form is a single node.

`reduce` records every contraction in a refinement tree whose leaves are
the original nodes, mirroring how such a net could have been generated by
substitutions.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .classes import classify
from .nets import FreshIds, Net, NodeId, descendants, is_acyclic, require_wf
from .subnets import contract, is_well_nested, subnet_view

Observer = Callable[[Net, frozenset[NodeId], NodeId, Net], None]

# Caps for the opportunistic fast search inside reduce.  They only bound
# how much work is spent per candidate before giving up; the exhaustive
# scan that follows a dry fast search has no caps, so completeness never
# depends on them.
_CANDIDATE_CAP = 24
_CANDIDATE_VISIT_CAP = 400
_GROW_CAP = 300


@dataclass(frozen=True)
class Leaf:
    """An original node that has not been contracted away below this point."""

    node: NodeId

    @property
    def first_leaf(self) -> NodeId:
        return self.node

    def leaf_ids(self) -> frozenset[NodeId]:
        return frozenset({self.node})

    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class Internal:
    """One contraction event: `children` collapsed into `node`."""

    node: NodeId
    classes: frozenset[str]
    children: tuple["RefinementTree", ...]

    @property
    def first_leaf(self) -> NodeId:
        return self.children[0].first_leaf

    def leaf_ids(self) -> frozenset[NodeId]:
        out: set[NodeId] = set()
        for child in self.children:
            out |= child.leaf_ids()
        return frozenset(out)

    def depth(self) -> int:
        return 1 + max(child.depth() for child in self.children)


RefinementTree = Leaf | Internal


def expand(net: Net, i: NodeId, o: NodeId) -> frozenset[NodeId] | None:
    """Grow a contractible subnet with input i and output o, if one exists.

    Starts from {i, o} and alternates two closures: a node whose full preset
    and interface membership match i's counts as a further input, anyone
    else pulls their predecessors in; dually on the output side.  Along the
    way the possible basic classes are pruned, and the grown selection is
    verified before being returned.
    """
    if i == o:
        raise ValueError("need two distinct nodes")
    if i not in net or o not in net:
        raise KeyError(i if i not in net else o)
    if net.is_place(i) != net.is_place(o):
        raise ValueError("nodes must share one type")
    if o not in descendants(net, i):
        raise ValueError(f"{o} is not reachable from {i}")
    return _grow(net, i, o)


def _grow(net: Net, i: NodeId, o: NodeId, cap: int | None = None) -> frozenset[NodeId] | None:
    possible = {"11pOR", "pAND"} if net.is_place(i) else {"11tAND", "tOR"}
    selection = {i, o}
    ins = {i}
    outs = {o}
    pending = {i, o}
    pre_i = net.preset(i)
    post_o = net.postset(o)
    i_is_input = i in net.inputs
    o_is_output = o in net.outputs

    while pending and possible:
        n = min(pending)
        pending.remove(n)

        pre_n = net.preset(n)
        if pre_n == pre_i and (n in net.inputs) == i_is_input:
            if n not in ins:
                possible -= {"11pOR", "11tAND"}
                ins.add(n)
        else:
            pending |= pre_n - selection
            selection |= pre_n

        post_n = net.postset(n)
        if post_n == post_o and (n in net.outputs) == o_is_output:
            if n not in outs:
                possible -= {"11pOR", "11tAND"}
                outs.add(n)
        else:
            pending |= post_n - selection
            selection |= post_n

        inner_pre = len(pre_n & selection)
        inner_post = len(post_n & selection)
        if (
            (n in ins and inner_pre != 0)
            or (n not in ins and inner_pre != 1)
            or (n in outs and inner_post != 0)
            or (n not in outs and inner_post != 1)
        ):
            if net.is_place(n):
                possible -= {"pAND", "11tAND"}
            else:
                possible -= {"tOR", "11pOR"}

        if cap is not None and len(selection) > cap:
            return None

    if not possible:
        return None
    view = subnet_view(net, selection)
    if not is_acyclic(view.net):
        possible -= {"pAND", "11tAND"}
    if not possible:
        return None
    # The per-node checks above can miss arcs that appeared after a node was
    # analysed, so confirm the selection really is contractible.
    if not view.is_wf:
        return None
    if not classify(view.net).basic_classes:
        return None
    if not is_well_nested(net, selection):
        return None
    return frozenset(selection)


def node_order(net: Net, seed: int | None = None) -> list[NodeId]:
    """Lexicographic node order, or a seeded shuffle of it."""
    order = sorted(net.nodes)
    if seed is not None:
        random.Random(seed).shuffle(order)
    return order


def find_contractible(
    net: Net, order: Sequence[NodeId] | None = None
) -> tuple[frozenset[NodeId], frozenset[str]] | None:
    """First contractible non-trivial selection under the given node order.

    Runs the loop test over all diagonal pairs, then the parallel test over
    all same-type pairs, then `expand` over reachable same-type pairs, and
    returns the selection together with the basic classes of its view.
    """
    ordering = list(order) if order is not None else node_order(net)

    for p in ordering:
        if not net.is_place(p):
            continue
        hit = _loop_at(net, p, ordering)
        if hit is not None:
            return _with_classes(net, hit)

    sig = {
        n: (
            net.is_place(n),
            net.preset(n),
            net.postset(n),
            n in net.inputs,
            n in net.outputs,
        )
        for n in ordering
    }
    for a in range(len(ordering)):
        for b in range(a + 1, len(ordering)):
            n1, n2 = ordering[a], ordering[b]
            if sig[n1] == sig[n2]:
                return _with_classes(net, frozenset({n1, n2}))

    for n1 in ordering:
        reach = descendants(net, n1)
        n1_place = net.is_place(n1)
        for n2 in ordering:
            if n2 == n1 or net.is_place(n2) != n1_place or n2 not in reach:
                continue
            grown = _grow(net, n1, n2)
            if grown is not None:
                return _with_classes(net, grown)
    return None


def _loop_at(net: Net, p: NodeId, ordering: Sequence[NodeId]) -> frozenset[NodeId] | None:
    """S = {p, t} for the first pure self-loop transition t on place p."""
    loops = [
        t
        for t in net.postset(p)
        if net.preset(t) == {p}
        and net.postset(t) == {p}
        and t not in net.inputs
        and t not in net.outputs
    ]
    if not loops:
        return None
    rank = {n: k for k, n in enumerate(ordering)}
    t = min(loops, key=lambda n: (rank.get(n, len(rank)), n))
    return frozenset({p, t})


def _with_classes(net: Net, selection: frozenset[NodeId]) -> tuple[frozenset[NodeId], frozenset[str]]:
    return selection, classify(subnet_view(net, selection).net).basic_classes


@dataclass(frozen=True)
class ReduceResult:
    """Normal form of a net plus the contraction history that produced it.

    `forest` holds one refinement tree per surviving node, ordered by first
    leaf id; for a fully reduced net it is a single tree covering every
    original node.
    """

    net: Net
    forest: tuple[RefinementTree, ...]

    @property
    def contractions(self) -> int:
        count = 0
        todo: list[RefinementTree] = list(self.forest)
        while todo:
            t = todo.pop()
            if isinstance(t, Internal):
                count += 1
                todo.extend(t.children)
        return count


def reduce_net(net: Net, seed: int | None = None, observer: Observer | None = None) -> ReduceResult:
    """Contract subnets until none is left to contract.

    Deterministic for a fixed seed; different seeds reach the same normal
    form up to renaming of nodes.  `observer(before, selection, fresh,
    after)` is invoked for every contraction, in order.
    """
    require_wf(net)
    return _Reducer(net, seed).run(observer)


def is_andor(net: Net, seed: int | None = None) -> bool:
    """Does the net collapse to a single node?"""
    return len(reduce_net(net, seed).net) == 1


class _Reducer:
    """Worklist-driven reduction.

    A queue of focus nodes drives cheap local checks (loop, parallel, capped
    expand from the focus).  Whenever the queue runs dry, one uncapped
    exhaustive scan decides whether a normal form is reached; if it still
    finds a contraction the fast search restarts from scratch, so the caps
    never affect the final result, only how quickly it is found.
    """

    def __init__(self, net: Net, seed: int | None):
        self.net = net
        self.rank: dict[NodeId, int] = {n: k for k, n in enumerate(node_order(net, seed))}
        self.trees: dict[NodeId, RefinementTree] = {n: Leaf(n) for n in net.nodes}
        self.fresh_ids = FreshIds(net.nodes)
        self.queue: deque[NodeId] = deque(sorted(net.nodes, key=self.rank.__getitem__))
        self.queued: set[NodeId] = set(self.queue)

    def run(self, observer: Observer | None) -> ReduceResult:
        while True:
            hit = self._fast_search()
            if hit is None:
                hit = find_contractible(self.net, self._ordering())
                if hit is None:
                    break
                self._apply(hit, observer)
                self._requeue_all()
                continue
            self._apply(hit, observer)
        roots = sorted(self.trees.values(), key=lambda t: t.first_leaf)
        return ReduceResult(net=self.net, forest=tuple(roots))

    def _ordering(self) -> list[NodeId]:
        return sorted(self.net.nodes, key=self.rank.__getitem__)

    def _requeue_all(self) -> None:
        self.queue = deque(self._ordering())
        self.queued = set(self.queue)

    def _enqueue(self, nodes: Iterable[NodeId]) -> None:
        for n in sorted(nodes, key=lambda x: self.rank.get(x, len(self.rank))):
            if n in self.net and n not in self.queued:
                self.queue.append(n)
                self.queued.add(n)

    def _fast_search(self) -> tuple[frozenset[NodeId], frozenset[str]] | None:
        net = self.net
        while self.queue:
            focus = self.queue.popleft()
            self.queued.discard(focus)
            if focus not in net:
                continue
            hit = self._try_focus(focus)
            if hit is not None:
                return hit
        return None

    def _try_focus(self, focus: NodeId) -> tuple[frozenset[NodeId], frozenset[str]] | None:
        net = self.net

        if net.is_place(focus):
            loop = _loop_at(net, focus, ())
            if loop is not None:
                return _with_classes(net, loop)
        else:
            pre = net.preset(focus)
            if (
                len(pre) == 1
                and pre == net.postset(focus)
                and focus not in net.inputs
                and focus not in net.outputs
            ):
                return _with_classes(net, frozenset(pre | {focus}))

        twin = self._parallel_partner(focus)
        if twin is not None:
            return _with_classes(net, frozenset({focus, twin}))

        for o in self._expand_candidates(focus):
            grown = _grow(net, focus, o, cap=_GROW_CAP)
            if grown is not None:
                return _with_classes(net, grown)
        return None

    def _parallel_partner(self, focus: NodeId) -> NodeId | None:
        net = self.net
        pre = net.preset(focus)
        post = net.postset(focus)
        pool = net.postset(min(pre)) if pre else (net.places if net.is_place(focus) else net.transitions)
        best: NodeId | None = None
        for n in pool:
            if (
                n != focus
                and net.is_place(n) == net.is_place(focus)
                and net.preset(n) == pre
                and net.postset(n) == post
                and (n in net.inputs) == (focus in net.inputs)
                and (n in net.outputs) == (focus in net.outputs)
            ):
                key = (self.rank.get(n, len(self.rank)), n)
                if best is None or key < (self.rank.get(best, len(self.rank)), best):
                    best = n
        return best

    def _expand_candidates(self, focus: NodeId) -> list[NodeId]:
        """Same-type nodes reachable from focus, nearest first, capped."""
        net = self.net
        rank = self.rank
        want_place = net.is_place(focus)
        found: list[NodeId] = []
        seen = {focus}
        layer = [focus]
        visited = 1
        while layer and len(found) < _CANDIDATE_CAP and visited < _CANDIDATE_VISIT_CAP:
            nxt: set[NodeId] = set()
            for n in layer:
                nxt |= net.postset(n) - seen
            layer = sorted(nxt, key=lambda n: rank.get(n, len(rank)))
            seen |= nxt
            visited += len(nxt)
            for n in layer:
                if net.is_place(n) == want_place and len(found) < _CANDIDATE_CAP:
                    found.append(n)
        return found

    def _apply(
        self,
        hit: tuple[frozenset[NodeId], frozenset[str]],
        observer: Observer | None,
    ) -> None:
        selection, classes = hit
        fresh = self.fresh_ids.take()
        before = self.net
        after = contract(before, selection, fresh)
        if observer is not None:
            observer(before, selection, fresh, after)

        children = tuple(sorted((self.trees.pop(n) for n in selection), key=lambda t: t.first_leaf))
        self.trees[fresh] = Internal(node=fresh, classes=classes, children=children)
        self.rank[fresh] = len(self.rank)
        self.net = after

        # The fresh node and everything whose wiring just changed deserve a
        # fresh look; so do their mates, since parallel twins may now exist.
        boundary = after.preset(fresh) | after.postset(fresh)
        second = set()
        for n in boundary:
            second |= after.preset(n) | after.postset(n)
        self._enqueue({fresh} | boundary | (second & after.nodes))
