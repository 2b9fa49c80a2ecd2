"""Tree-node and reticulation components of a network."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .errors import HasRedundantNodes, NotReticulate, NotTreeComponent
from .network import Network, NodeKind, reachable


class ComponentKind(enum.Enum):
    TREE = "tree"
    RETICULATION = "reticulation"


@dataclass(frozen=True)
class Decomposition:
    """Partition of tree nodes and reticulate nodes into components.

    Component ids are dense and ordered by the smallest node id they contain.
    Redundant nodes and leaves belong to no component (index -1).
    """

    component_index: tuple[int, ...]
    component_kind: tuple[ComponentKind, ...]
    component_root: tuple[int, ...]

    def __len__(self):
        return len(self.component_root)

    @cached_property
    def component_of(self) -> dict[int, int]:
        """Component id of every tree node and reticulate node."""
        return {v: c for v, c in enumerate(self.component_index) if c >= 0}

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        groups: list[list[int]] = [[] for _ in self.component_root]
        for v, c in enumerate(self.component_index):
            if c >= 0:
                groups[c].append(v)
        return tuple(map(tuple, groups))

    @cached_property
    def tree_components(self) -> tuple[int, ...]:
        return tuple(c for c, k in enumerate(self.component_kind) if k is ComponentKind.TREE)

    @cached_property
    def reticulation_components(self) -> tuple[int, ...]:
        return tuple(
            c for c, k in enumerate(self.component_kind) if k is ComponentKind.RETICULATION
        )

    @property
    def p(self) -> int:
        """Number of tree-node components."""
        return len(self.tree_components)

    @property
    def q(self) -> int:
        """Number of reticulation components."""
        return len(self.reticulation_components)


def decompose(net: Network) -> Decomposition:
    """Components in two linear sweeps.

    A tree node has one parent, so top-down it joins its parent's component
    when that parent is a tree node; a reticulation has one child, so
    bottom-up it joins its child's component when that child is reticulate.
    """
    kinds, parents, children = net.kinds, net.parents, net.children
    tree, ret = NodeKind.TREE, NodeKind.RETICULATE
    order = net.topological_order
    draft = [-1] * len(net)
    draft_root: list[int] = []
    for v in order:
        if kinds[v] is tree:
            ps = parents[v]
            if ps and kinds[ps[0]] is tree:
                draft[v] = draft[ps[0]]
            else:
                draft[v] = len(draft_root)
                draft_root.append(v)
    for v in reversed(order):
        if kinds[v] is ret:
            c = children[v][0]
            if kinds[c] is ret:
                draft[v] = draft[c]
            else:
                draft[v] = len(draft_root)
                draft_root.append(v)

    # renumber so that ids follow the smallest member
    final = [-1] * len(draft_root)
    index = [-1] * len(draft)
    comp_kind: list[ComponentKind] = []
    roots: list[int] = []
    for v, k in enumerate(draft):
        if k < 0:
            continue
        c = final[k]
        if c < 0:
            c = final[k] = len(roots)
            comp_kind.append(ComponentKind.TREE if kinds[v] is tree else ComponentKind.RETICULATION)
            roots.append(draft_root[k])
        index[v] = c

    return Decomposition(
        component_index=tuple(index),
        component_kind=tuple(comp_kind),
        component_root=tuple(roots),
    )


def check_component_bound(net: Network, d: Decomposition | None = None) -> bool:
    """``p - 1 <= q <= n + p - 1`` for a network without degree-2 nodes."""
    if net.redundant_nodes:
        raise HasRedundantNodes("component bound needs a network without redundant nodes")
    d = d if d is not None else decompose(net)
    n = len(net.leaves)
    return d.p - 1 <= d.q <= n + d.p - 1


def is_isolated(net: Network, r: int) -> bool:
    """A reticulation is isolated if neither a parent nor its child is reticulate."""
    if net.kind(r) is not NodeKind.RETICULATE:
        raise NotReticulate(f"node {net.display(r)} is not reticulate")
    kinds = net.kinds
    if kinds[net.children[r][0]] is NodeKind.RETICULATE:
        return False
    return all(kinds[p] is not NodeKind.RETICULATE for p in net.parents[r])


def is_exposed(net: Network, d: Decomposition, c: int) -> bool:
    """Only leaves, redundant nodes and isolated reticulations lie below tree component *c*."""
    if not 0 <= c < len(d) or d.component_kind[c] is not ComponentKind.TREE:
        raise NotTreeComponent(f"component {c} is not a tree-node component")
    inside = set(d.members[c])
    for v in reachable(net.children, d.component_root[c]):
        if v in inside:
            continue
        kind = net.kinds[v]
        if kind is NodeKind.TREE:
            return False
        if kind is NodeKind.RETICULATE and not is_isolated(net, v):
            return False
    return True
