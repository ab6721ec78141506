"""Net isomorphism by deterministic backtracking search.

Nodes are partitioned by a local signature (kind, degrees, interface
membership); only same-signature nodes can correspond, which prunes the
search enough for the net sizes this library produces.  Candidate order is
fixed by sorting, so the returned mapping is deterministic.
"""

from __future__ import annotations

from .nets import Net, NodeId

Signature = tuple[bool, int, int, bool, bool]


def _signature(net: Net, n: NodeId) -> Signature:
    return (
        net.is_place(n),
        len(net.preset(n)),
        len(net.postset(n)),
        n in net.inputs,
        n in net.outputs,
    )


def find_isomorphism(a: Net, b: Net) -> dict[NodeId, NodeId] | None:
    """A node bijection making arcs and interfaces correspond, or None.

    The mapping sends places to places and transitions to transitions and
    respects input and output membership; names are otherwise ignored.
    """
    if (
        len(a.places) != len(b.places)
        or len(a.transitions) != len(b.transitions)
        or len(a.arcs) != len(b.arcs)
        or len(a.inputs) != len(b.inputs)
        or len(a.outputs) != len(b.outputs)
    ):
        return None

    groups_a: dict[Signature, list[NodeId]] = {}
    groups_b: dict[Signature, list[NodeId]] = {}
    for n in sorted(a.nodes):
        groups_a.setdefault(_signature(a, n), []).append(n)
    for n in sorted(b.nodes):
        groups_b.setdefault(_signature(b, n), []).append(n)
    if set(groups_a) != set(groups_b):
        return None
    if any(len(groups_a[s]) != len(groups_b[s]) for s in groups_a):
        return None

    # Most constrained signatures first; ties broken by name for determinism.
    order: list[NodeId] = []
    for sig in sorted(groups_a, key=lambda s: (len(groups_a[s]), s)):
        order.extend(groups_a[sig])
    candidates = {n: groups_b[_signature(a, n)] for n in order}

    mapping: dict[NodeId, NodeId] = {}
    used: set[NodeId] = set()
    arcs_b = b.arcs

    def consistent(n: NodeId, image: NodeId) -> bool:
        for m, m_img in mapping.items():
            if ((n, m) in a.arcs) != ((image, m_img) in arcs_b):
                return False
            if ((m, n) in a.arcs) != ((m_img, image) in arcs_b):
                return False
        return True

    def assign(index: int) -> bool:
        if index == len(order):
            return True
        n = order[index]
        for image in candidates[n]:
            if image in used or not consistent(n, image):
                continue
            mapping[n] = image
            used.add(image)
            if assign(index + 1):
                return True
            del mapping[n]
            used.remove(image)
        return False

    if not assign(0):
        return None
    return {n: mapping[n] for n in sorted(mapping)}


def isomorphic(a: Net, b: Net) -> bool:
    return find_isomorphism(a, b) is not None
