"""Independent brute-force oracles and small-net utilities for the tests.

Everything here is deliberately written against plain dicts and sets, not
the library's Marking or ReachabilityGraph types, so that agreement between
an oracle and the implementation actually means something.
"""

from __future__ import annotations

import itertools
import random

from wfnet import Net, validate

Bag = tuple[tuple[str, int], ...]


def to_bag(counts: dict[str, int]) -> Bag:
    return tuple(sorted((p, c) for p, c in counts.items() if c))


def fire_all(net: Net, counts: dict[str, int]) -> list[tuple[str, dict[str, int]]]:
    """Every enabled transition with its successor, by transition id."""
    out = []
    for t in sorted(net.transitions):
        pre = net.preset(t)
        if all(counts.get(p, 0) >= 1 for p in pre):
            nxt = dict(counts)
            for p in pre:
                nxt[p] -= 1
            for p in net.postset(t):
                nxt[p] = nxt.get(p, 0) + 1
            out.append((t, {p: c for p, c in nxt.items() if c}))
    return out


def reach_set(net: Net, start: dict[str, int], limit: int = 200_000) -> set[Bag] | None:
    """All reachable bags, or None if the state space exceeds `limit`."""
    seen = {to_bag(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for _, succ in fire_all(net, m):
                bag = to_bag(succ)
                if bag not in seen:
                    seen.add(bag)
                    if len(seen) > limit:
                        return None
                    nxt.append(succ)
        frontier = nxt
    return seen


def can_reach(net: Net, start: dict[str, int], goal: Bag, limit: int = 200_000) -> bool:
    seen = {to_bag(start)}
    frontier = [start]
    while frontier:
        if goal in seen:
            return True
        nxt = []
        for m in frontier:
            for _, succ in fire_all(net, m):
                bag = to_bag(succ)
                if bag not in seen:
                    seen.add(bag)
                    if len(seen) > limit:
                        raise RuntimeError("oracle state limit hit")
                    nxt.append(succ)
        frontier = nxt
    return goal in seen


def interface_bag(net: Net, nodes: frozenset[str], k: int) -> dict[str, int]:
    return {p: k for p in nodes} if k else {}


def oracle_k_sound(net: Net, k: int) -> tuple[bool, Bag | None]:
    """Exhaustive k-soundness for place-interface nets with finite state space."""
    start = interface_bag(net, net.inputs, k)
    goal = to_bag(interface_bag(net, net.outputs, k))
    space = reach_set(net, start)
    assert space is not None, "oracle needs a finite state space"
    for bag in sorted(space):
        if not can_reach(net, dict(bag), goal):
            return False, bag
    return True, None


def oracle_substitution_sound(net: Net, k: int) -> tuple[bool, tuple[Bag, int] | None]:
    """Exhaustive check of the substitution variant for place-interface nets."""
    start = interface_bag(net, net.inputs, k)
    space = reach_set(net, start)
    assert space is not None
    for k_prime in range(k + 1):
        removed = interface_bag(net, net.outputs, k_prime)
        goal = to_bag(interface_bag(net, net.outputs, k - k_prime))
        for bag in sorted(space):
            counts = dict(bag)
            if all(counts.get(p, 0) >= c for p, c in removed.items()):
                rest = {p: c - removed.get(p, 0) for p, c in counts.items()}
                if not can_reach(net, rest, goal):
                    return False, (bag, k_prime)
    return True, None


# A state of the exhaustive contraction search.  Nodes are frozensets of
# original ids: the node standing for a contracted region is the set of
# everything it absorbed, which makes states from different contraction
# orders of the same regions literally equal and lets the memo merge them.
_State = tuple[frozenset, frozenset, frozenset, frozenset, frozenset]


def _closure(start: set, adjacency: dict, allowed: frozenset) -> set:
    seen = set(start)
    work = list(start)
    while work:
        n = work.pop()
        for m in adjacency.get(n, ()):
            if m in allowed and m not in seen:
                seen.add(m)
                work.append(m)
    return seen


def _contractible(state: _State, sel: frozenset):
    """(inputs, outputs, io type) of the induced view when `sel` may be
    contracted: at least two nodes, a workflow net in a basic class, with
    all inputs and all outputs agreeing on their outside wiring."""
    places, transitions, arcs, inputs, outputs = state
    if len(sel) < 2:
        return None
    vin = {n for n in sel if n in inputs} | {b for a, b in arcs if a not in sel and b in sel}
    vout = {n for n in sel if n in outputs} | {a for a, b in arcs if a in sel and b not in sel}
    if not vin or not vout:
        return None
    iface = vin | vout
    if iface <= places:
        io = "place"
    elif iface <= transitions:
        io = "transition"
    else:
        return None

    forward: dict = {}
    backward: dict = {}
    internal = [(a, b) for a, b in arcs if a in sel and b in sel]
    for a, b in internal:
        forward.setdefault(a, []).append(b)
        backward.setdefault(b, []).append(a)
    if _closure(vin, forward, sel) != sel or _closure(vout, backward, sel) != sel:
        return None

    pre = {n: 0 for n in sel}
    post = {n: 0 for n in sel}
    for a, b in internal:
        post[a] += 1
        pre[b] += 1

    def wired(kind: frozenset) -> bool:
        # One producer and one consumer each, interface standing in for
        # the missing edge.
        for n in sel & kind:
            if not ((n in vin and pre[n] == 0) or (n not in vin and pre[n] == 1)):
                return False
            if not ((n in vout and post[n] == 0) or (n not in vout and post[n] == 1)):
                return False
        return True

    def acyclic() -> bool:
        marks: dict = {}
        for root in sel:
            if root in marks:
                continue
            stack = [(root, iter(forward.get(root, ())))]
            marks[root] = "open"
            while stack:
                n, succs = stack[-1]
                for m in succs:
                    if marks.get(m) == "open":
                        return False
                    if m not in marks:
                        marks[m] = "open"
                        stack.append((m, iter(forward.get(m, ()))))
                        break
                else:
                    marks[n] = "done"
                    stack.pop()
        return True

    one_one = len(vin) == 1 and len(vout) == 1
    if io == "place":
        basic = (wired(places) and acyclic()) or (one_one and wired(transitions))
    else:
        basic = wired(transitions) or (one_one and wired(places) and acyclic())
    if not basic:
        return None

    for group, pool, side in ((vin, inputs, "in"), (vout, outputs, "out")):
        nodes = sorted(group, key=sorted)
        first = nodes[0]
        if side == "in":
            outside = {a for a, b in arcs if b == first and a not in sel}
        else:
            outside = {b for a, b in arcs if a == first and b not in sel}
        for n in nodes[1:]:
            if side == "in":
                other = {a for a, b in arcs if b == n and a not in sel}
            else:
                other = {b for a, b in arcs if a == n and b not in sel}
            if other != outside or (n in pool) != (first in pool):
                return None
    return vin, vout, io


def _contract_state(state: _State, sel: frozenset, io: str) -> _State:
    places, transitions, arcs, inputs, outputs = state
    fresh = frozenset().union(*sel)
    new_arcs = set()
    for a, b in arcs:
        if a not in sel and b not in sel:
            new_arcs.add((a, b))
        elif a not in sel and b in sel:
            new_arcs.add((a, fresh))
        elif a in sel and b not in sel:
            new_arcs.add((fresh, b))
    new_places = set(places - sel)
    new_transitions = set(transitions - sel)
    (new_places if io == "place" else new_transitions).add(fresh)
    new_inputs = set(inputs - sel)
    if inputs & sel:
        new_inputs.add(fresh)
    new_outputs = set(outputs - sel)
    if outputs & sel:
        new_outputs.add(fresh)
    return (
        frozenset(new_places), frozenset(new_transitions), frozenset(new_arcs),
        frozenset(new_inputs), frozenset(new_outputs),
    )


def _search(state: _State, memo: dict) -> bool:
    nodes = state[0] | state[1]
    if len(nodes) == 1:
        return True
    if state in memo:
        return memo[state]
    memo[state] = False
    ordered = sorted(nodes, key=sorted)
    for size in range(2, len(ordered) + 1):
        for combo in itertools.combinations(ordered, size):
            sel = frozenset(combo)
            hit = _contractible(state, sel)
            if hit is None:
                continue
            if _search(_contract_state(state, sel, hit[2]), memo):
                memo[state] = True
                return True
    return False


def oracle_andor(net: Net) -> bool:
    """Does any sequence of contractions collapse `net` to one node?

    Tries every node subset at every step, so it does not rely on
    confluence, on the library's subnet search, or on its contraction
    code.  Exponential, hence the size guard.
    """
    assert len(net) <= 14, "oracle enumerates all subsets, keep nets small"
    wrap = {n: frozenset({n}) for n in net.places | net.transitions}
    state: _State = (
        frozenset(wrap[p] for p in net.places),
        frozenset(wrap[t] for t in net.transitions),
        frozenset((wrap[a], wrap[b]) for a, b in net.arcs),
        frozenset(wrap[n] for n in net.inputs),
        frozenset(wrap[n] for n in net.outputs),
    )
    return _search(state, {})


def perturb(net: Net, seed: int, tries: int = 40) -> Net | None:
    """A random single-edit variant of `net` that still validates.

    Edits: toggle one arc, or move one interface membership.  Returns None
    when no valid variant is found within `tries` attempts.
    """
    rng = random.Random(seed)
    places = sorted(net.places)
    transitions = sorted(net.transitions)
    interface_pool = places if net.io_type == "place" else transitions
    for _ in range(tries):
        choice = rng.randrange(3)
        if choice == 0 and places and transitions:
            p = rng.choice(places)
            t = rng.choice(transitions)
            arc = (p, t) if rng.random() < 0.5 else (t, p)
            candidate = net.replace(arcs=net.arcs ^ {arc})
        elif choice == 1 and interface_pool:
            n = rng.choice(interface_pool)
            candidate = net.replace(inputs=net.inputs ^ {n})
        elif choice == 2 and interface_pool:
            n = rng.choice(interface_pool)
            candidate = net.replace(outputs=net.outputs ^ {n})
        else:
            continue
        if candidate != net and validate(candidate).ok:
            return candidate
    return None
