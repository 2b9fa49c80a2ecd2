"""Network compression: contract every component to a single node."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .decomposition import ComponentKind, Decomposition, decompose
from .errors import NotReticulate
from .network import Network, NodeKind

Edge = tuple[int, int]
_CODE = {k: i for i, k in enumerate(NodeKind)}


@dataclass(frozen=True)
class CompressionResult:
    """The compressed network together with the node and edge maps.

    ``f[v]`` is the compressed node representing ``v``; ``g`` maps every edge
    that does not lie inside a component to its compressed edge;
    ``preimage[a]`` lists the original nodes mapped to ``a``. The last two
    are built on first use.
    """

    source: Network
    decomposition: Decomposition
    compressed: Network
    f: tuple[int, ...]
    component_node: tuple[int, ...]

    @cached_property
    def g(self) -> dict[Edge, Edge]:
        kinds, f = self.source.kinds, self.f
        tree, ret = NodeKind.TREE, NodeKind.RETICULATE
        out = {}
        for u, cs in enumerate(self.source.children):
            ku = kinds[u]
            for v in cs:
                if not (kinds[v] is ku and (ku is tree or ku is ret)):
                    out[(u, v)] = (f[u], f[v])
        return out

    @cached_property
    def preimage(self) -> tuple[tuple[int, ...], ...]:
        groups: list[list[int]] = [[] for _ in range(len(self.compressed))]
        for v, a in enumerate(self.f):
            groups[a].append(v)
        return tuple(tuple(p) for p in groups)

    def node_component(self, a: int) -> int | None:
        """Component represented by compressed node *a*, or None for a redundant node or leaf."""
        c = self.decomposition.component_index[self.preimage[a][0]]
        return c if c >= 0 else None

    def f_set(self, nodes: Iterable[int]) -> frozenset[int]:
        return frozenset(self.f[v] for v in nodes)

    def g_set(self, edges: Iterable[Edge]) -> frozenset[Edge]:
        return frozenset(self.g[e] for e in edges if e in self.g)


def compress(net: Network, d: Decomposition | None = None) -> CompressionResult:
    """Contract every tree-node and reticulation component to one node.

    The result is built directly rather than re-validated: a quotient by
    connected components of one node kind is again a valid network (see
    the tests, which validate it independently).
    """
    d = d if d is not None else decompose(net)
    index = np.asarray(d.component_index, dtype=np.int64)
    in_comp = index >= 0

    # compressed ids follow the first occurrence of each class in node order;
    # component ids are ordered by smallest member, so firsts come out sorted
    members_at = np.flatnonzero(in_comp)
    _, first_at = np.unique(index[members_at], return_index=True)
    first_member = members_at[first_at]
    is_first = ~in_comp
    is_first[first_member] = True
    new_id = np.cumsum(is_first) - 1
    m = int(new_id[-1]) + 1
    component_node = new_id[first_member]
    f = new_id.copy()
    f[members_at] = component_node[index[members_at]]

    labels: dict[int, str] = {}
    counts = {ComponentKind.TREE: 0, ComponentKind.RETICULATION: 0}
    for c, a in enumerate(component_node.tolist()):
        kind = d.component_kind[c]
        labels[a] = f"{'tau' if kind is ComponentKind.TREE else 'sigma'}{counts[kind]}"
        counts[kind] += 1
    fl = f.tolist()
    component_index = d.component_index
    for v, name in net.names.items():
        if component_index[v] < 0:
            labels[fl[v]] = name

    # drop edges inside a component; only edges into a reticulation can
    # repeat, since every other node has one parent and a tree-node
    # component is entered only through its root
    tails, heads = net.edge_arrays
    codes = net.kind_codes
    tree, ret = _CODE[NodeKind.TREE], _CODE[NodeKind.RETICULATE]
    kt, kh = codes[tails], codes[heads]
    outside = ~((kt == kh) & ((kt == tree) | (kt == ret)))
    a, b = f[tails[outside]], f[heads[outside]]
    into_ret = np.flatnonzero(kh[outside] == ret)
    _, keep_first = np.unique(a[into_ret] * m + b[into_ret], return_index=True)
    keep = np.ones(len(a), dtype=bool)
    keep[into_ret] = False
    keep[into_ret[keep_first]] = True
    a, b = a[keep], b[keep]
    # grouped by tail, the same order in which a Network lists parents
    order = np.argsort(a, kind="stable")
    children: list[list[int]] = [[] for _ in range(m)]
    parents: list[list[int]] = [[] for _ in range(m)]
    for x, y in zip(a[order].tolist(), b[order].tolist()):
        children[x].append(y)
        parents[y].append(x)

    return CompressionResult(
        source=net,
        decomposition=d,
        compressed=Network(children, fl[net.root], labels, parents),
        f=tuple(fl),
        component_node=tuple(component_node.tolist()),
    )


def image_subgraph(
    cr: CompressionResult, nodes: Iterable[int], edges: Iterable[Edge]
) -> tuple[frozenset[int], frozenset[Edge]]:
    """``(f(V), g(E))`` for a subgraph of the source network."""
    return cr.f_set(nodes), cr.g_set(edges)


def path_image(cr: CompressionResult, path: Sequence[int]) -> list[int]:
    """Images of the nodes along *path*, consecutive repeats removed."""
    out: list[int] = []
    for v in path:
        a = cr.f[v]
        if not out or out[-1] != a:
            out.append(a)
    return out


def is_inner(net: Network, d: Decomposition, r: int) -> bool:
    """All parents of reticulation *r* are tree nodes of one tree-node component."""
    if net.kind(r) is not NodeKind.RETICULATE:
        raise NotReticulate(f"node {net.display(r)} is not reticulate")
    comps = set()
    for p in net.parents[r]:
        if net.kinds[p] is not NodeKind.TREE:
            return False
        comps.add(d.component_of[p])
    return len(comps) == 1
