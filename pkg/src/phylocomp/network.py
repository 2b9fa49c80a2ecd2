"""Rooted phylogenetic network data model.

A :class:`Network` is an immutable rooted acyclic digraph over dense integer
node ids ``0..n-1``. Leaves carry taxon names; internal nodes may carry an
optional name as well (used only for display and CLI lookups).

Networks are never built directly: :func:`validate` checks an arbitrary
digraph and assigns the dense ids.
"""

from __future__ import annotations

import enum
from collections import deque
from functools import cached_property
from itertools import chain
from typing import Hashable, Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    CyclicGraph,
    DegreeViolation,
    DuplicateTaxon,
    MultipleRoots,
    NoRoot,
    ParallelEdge,
    UnknownNode,
    UnlabeledLeaf,
    ValidationError,
)


class NodeKind(enum.Enum):
    TREE = "tree"
    RETICULATE = "reticulate"
    REDUNDANT = "redundant"
    LEAF = "leaf"

    def __str__(self):
        return self.value


def _kind_from_degrees(indeg: int, outdeg: int) -> NodeKind:
    if outdeg == 0:
        return NodeKind.LEAF
    if indeg >= 2:
        return NodeKind.RETICULATE
    if indeg == 0 or outdeg >= 2:
        return NodeKind.TREE
    return NodeKind.REDUNDANT


class Network:
    """Immutable rooted phylogenetic network.

    Use :func:`validate` (or one of the parsers) to obtain instances; the
    constructor trusts its arguments.
    """

    def __init__(self, children, root: int, names: Mapping[int, str], parents=None):
        self.children: tuple[tuple[int, ...], ...] = tuple(map(tuple, children))
        if parents is None:
            parents = [[] for _ in self.children]
            for u, cs in enumerate(self.children):
                for v in cs:
                    parents[v].append(u)
        self.parents: tuple[tuple[int, ...], ...] = tuple(map(tuple, parents))
        self.root = root
        self.names: dict[int, str] = dict(names)
        self.kinds: tuple[NodeKind, ...] = tuple(
            map(_kind_from_degrees, map(len, self.parents), map(len, self.children))
        )
        leaf = NodeKind.LEAF
        kinds = self.kinds
        self._taxon_index = {name: v for v, name in self.names.items() if kinds[v] is leaf}

    # -- basic accessors -------------------------------------------------

    def __len__(self):
        return len(self.children)

    def __repr__(self):
        return (
            f"Network(nodes={len(self)}, edges={self.n_edges}, "
            f"leaves={len(self.leaves)}, reticulations={len(self.reticulations)})"
        )

    @property
    def nodes(self) -> range:
        return range(len(self.children))

    @cached_property
    def n_edges(self) -> int:
        return sum(map(len, self.children))

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Tails and heads of all edges as integer arrays, in :meth:`edges` order."""
        tails = np.repeat(np.arange(len(self), dtype=np.int64), list(map(len, self.children)))
        heads = np.fromiter(chain.from_iterable(self.children), dtype=np.int64, count=self.n_edges)
        return tails, heads

    @cached_property
    def kind_codes(self) -> np.ndarray:
        """Node kinds as small integers: the position of each kind in :class:`NodeKind`."""
        code = {k: i for i, k in enumerate(NodeKind)}
        return np.fromiter(map(code.__getitem__, self.kinds), dtype=np.int8, count=len(self))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, cs in enumerate(self.children):
            for v in cs:
                yield (u, v)

    def check_node(self, v) -> int:
        if not isinstance(v, int) or not 0 <= v < len(self.children):
            raise UnknownNode(f"unknown node {v!r}")
        return v

    def kind(self, v: int) -> NodeKind:
        return self.kinds[self.check_node(v)]

    def label(self, v: int) -> str | None:
        return self.names.get(v)

    def display(self, v: int) -> str:
        """Name of *v* if it has one, else its numeric id."""
        name = self.names.get(v)
        return name if name is not None else str(v)

    def _of_kind(self, kind):
        return tuple(v for v in self.nodes if self.kinds[v] is kind)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return self._of_kind(NodeKind.LEAF)

    @cached_property
    def tree_nodes(self) -> tuple[int, ...]:
        return self._of_kind(NodeKind.TREE)

    @cached_property
    def reticulations(self) -> tuple[int, ...]:
        return self._of_kind(NodeKind.RETICULATE)

    @cached_property
    def redundant_nodes(self) -> tuple[int, ...]:
        return self._of_kind(NodeKind.REDUNDANT)

    @cached_property
    def taxa(self) -> frozenset[str]:
        return frozenset(self._taxon_index)

    def leaf_of(self, taxon: str) -> int:
        try:
            return self._taxon_index[taxon]
        except KeyError:
            raise UnknownNode(f"unknown taxon {taxon!r}") from None

    def find(self, key: str | int) -> int:
        """Resolve a node id, a taxon, or an internal node name to a node id."""
        if isinstance(key, int):
            return self.check_node(key)
        if key in self._taxon_index:
            return self._taxon_index[key]
        hits = [v for v, name in self.names.items() if name == key]
        if len(hits) == 1:
            return hits[0]
        if not hits and key.lstrip("-").isdigit():
            return self.check_node(int(key))
        if hits:
            raise UnknownNode(f"node name {key!r} is ambiguous")
        raise UnknownNode(f"unknown node {key!r}")

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        # ids already in topological order (true for generated networks) are kept
        if all(u < v for u, cs in enumerate(self.children) for v in cs):
            return tuple(self.nodes)
        indeg = [len(p) for p in self.parents]
        order = []
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in self.children[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
        return tuple(order)

    def relabeled(self, names: Mapping[int, str]) -> "Network":
        return Network(self.children, self.root, names)


# -- validation ---------------------------------------------------------------


def validate(
    edges: Iterable[tuple[Hashable, Hashable]],
    labels: Mapping[Hashable, str] | None = None,
    root: Hashable | None = None,
    nodes: Iterable[Hashable] = (),
) -> Network:
    """Check a raw digraph and return it as a :class:`Network`.

    ``labels`` maps node keys to names; every leaf needs one, internal nodes
    may have one. Dense ids follow the order in which nodes are first seen
    (``nodes`` first, then edge endpoints). Raises a
    :class:`~phylocomp.errors.ValidationError` subclass naming the first
    violated condition.
    """
    labels = dict(labels or {})
    index: dict[Hashable, int] = {}
    keys: list[Hashable] = []

    def intern(key):
        i = index.get(key)
        if i is None:
            i = index[key] = len(keys)
            keys.append(key)
        return i

    for key in nodes:
        intern(key)
    children: list[list[int]] = []
    seen_edges = set()
    for a, b in edges:
        if (a, b) in seen_edges:
            raise ParallelEdge(f"parallel edge {a!r}->{b!r}", edge=(a, b))
        seen_edges.add((a, b))
        if a == b:
            raise CyclicGraph(f"self-loop at {a!r}", node=a)
        u, v = intern(a), intern(b)
        while len(children) < len(keys):
            children.append([])
        children[u].append(v)
    if root is not None:
        intern(root)
    while len(children) < len(keys):
        children.append([])
    n = len(keys)
    if n == 0:
        raise NoRoot("empty digraph has no root")

    indeg = [0] * n
    for cs in children:
        for v in cs:
            indeg[v] += 1

    # Kahn's algorithm doubles as the cycle check.
    remaining = list(indeg)
    queue = deque(v for v in range(n) if remaining[v] == 0)
    visited = 0
    while queue:
        u = queue.popleft()
        visited += 1
        for v in children[u]:
            remaining[v] -= 1
            if remaining[v] == 0:
                queue.append(v)
    if visited < n:
        stuck = next(v for v in range(n) if remaining[v] > 0)
        raise CyclicGraph(f"digraph has a cycle through {keys[stuck]!r}", node=keys[stuck])

    roots = [v for v in range(n) if indeg[v] == 0]
    if len(roots) > 1:
        raise MultipleRoots(
            f"nodes {keys[roots[0]]!r} and {keys[roots[1]]!r} both have indegree 0",
            node=keys[roots[1]],
        )
    r = roots[0]
    if root is not None and index[root] != r:
        raise MultipleRoots(f"declared root {root!r} has a parent", node=root)
    if not children[r]:
        raise DegreeViolation(f"root {keys[r]!r} has no children", node=keys[r])

    for v in range(n):
        outdeg = len(children[v])
        if indeg[v] >= 2 and outdeg >= 2:
            raise DegreeViolation(
                f"node {keys[v]!r} has indegree {indeg[v]} and outdegree {outdeg}", node=keys[v]
            )
        if outdeg == 0 and indeg[v] != 1:
            raise DegreeViolation(f"leaf {keys[v]!r} has indegree {indeg[v]}", node=keys[v])

    names: dict[int, str] = {}
    taxa: dict[str, Hashable] = {}
    for v in range(n):
        name = labels.get(keys[v])
        if not children[v]:
            if name is None:
                raise UnlabeledLeaf(f"leaf {keys[v]!r} has no taxon", node=keys[v])
            if name in taxa:
                raise DuplicateTaxon(
                    f"taxon {name!r} labels both {taxa[name]!r} and {keys[v]!r}", node=keys[v]
                )
            taxa[name] = keys[v]
        if name is not None:
            names[v] = str(name)
    return Network(children, r, names)


# -- traversal ----------------------------------------------------------------


def reachable(children, start: int, blocked: int | None = None) -> set[int]:
    """Nodes reachable from *start* (inclusive) along ``children``, never entering *blocked*."""
    if start == blocked:
        return set()
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in children[u]:
            if v not in seen and v != blocked:
                seen.add(v)
                stack.append(v)
    return seen


def node_kind(net: Network, v: int) -> NodeKind:
    return net.kind(v)


def is_ancestor(net: Network, u: int, v: int) -> bool:
    """True iff a directed path of length at least one leads from *u* to *v*."""
    net.check_node(u)
    net.check_node(v)
    if u == v:
        return False
    return v in reachable(net.children, u)


def is_dominator(net: Network, x: int, y: int) -> bool:
    """True iff every root-to-*y* path passes through *x* (and ``x != y``).

    Deletion test: remove *x*, check whether *y* is still reachable from the
    root. O(V + E) per call; this is the reference for :func:`visible_nodes`.
    """
    net.check_node(x)
    net.check_node(y)
    if x == y:
        return False
    if x == net.root:
        return True
    return y not in reachable(net.children, net.root, blocked=x)


def immediate_dominators(net: Network) -> list[int]:
    """Immediate dominator of every node (``-1`` for the root).

    In a DAG the immediate dominator of ``v`` is the nearest common ancestor,
    in the dominator tree, of all parents of ``v``; processing nodes in
    topological order makes one pass sufficient.
    """
    n = len(net)
    idom = [-1] * n
    depth = [0] * n
    for v in net.topological_order:
        ps = net.parents[v]
        if not ps:
            continue
        d = ps[0]
        for p in ps[1:]:
            a, b = d, p
            while a != b:
                if depth[a] >= depth[b]:
                    a = idom[a]
                else:
                    b = idom[b]
            d = a
        idom[v] = d
        depth[v] = depth[d] + 1
    return idom


def visible_nodes(net: Network) -> frozenset[int]:
    """Nodes that dominate at least one leaf, plus the leaves themselves.

    A node is visible exactly when it lies on the dominator-tree path from
    the root to some leaf, so marking upwards from every leaf (stopping at
    already marked nodes) gives the set in linear time once the dominator
    tree is known.
    """
    idom = immediate_dominators(net)
    visible = set()
    for leaf in net.leaves:
        v = leaf
        while v != -1 and v not in visible:
            visible.add(v)
            v = idom[v]
    return frozenset(visible)


def leaves_below(net: Network, u: int) -> frozenset[str]:
    """Taxa of all leaves reachable from *u*, including *u* itself if it is a leaf."""
    net.check_node(u)
    return frozenset(
        net.names[v] for v in reachable(net.children, u) if net.kinds[v] is NodeKind.LEAF
    )


# -- utilities ----------------------------------------------------------------


def to_networkx(net: Network):
    import networkx as nx

    g = nx.DiGraph()
    for v in net.nodes:
        g.add_node(v, label=net.names.get(v) if net.kinds[v] is NodeKind.LEAF else None)
    g.add_edges_from(net.edges())
    return g


def is_isomorphic(a: Network, b: Network) -> bool:
    """Leaf-label-preserving digraph isomorphism."""
    if (len(a), a.n_edges, a.taxa) != (len(b), b.n_edges, b.taxa):
        return False
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    matcher = DiGraphMatcher(
        to_networkx(a), to_networkx(b), node_match=lambda x, y: x["label"] == y["label"]
    )
    return matcher.is_isomorphic()


def suppress_redundant(net: Network) -> Network:
    """Contract every degree-2 node into an edge from its parent to its child.

    Contraction may create a parallel edge, which is collapsed; that can turn
    further nodes into degree-2 nodes, so the process repeats until none is
    left. Displayed clusters of surviving tree nodes are unchanged.
    """
    children = [set(cs) for cs in net.children]
    parents = [set(ps) for ps in net.parents]
    alive = [True] * len(net)
    stack = [v for v in net.nodes if len(parents[v]) == 1 and len(children[v]) == 1]
    while stack:
        d = stack.pop()
        if not alive[d] or len(parents[d]) != 1 or len(children[d]) != 1:
            continue
        (p,) = parents[d]
        (c,) = children[d]
        alive[d] = False
        children[p].discard(d)
        parents[c].discard(d)
        children[p].add(c)
        parents[c].add(p)
        for w in (p, c):
            if w != net.root and len(parents[w]) == 1 and len(children[w]) == 1:
                stack.append(w)
    edges = [(u, v) for u in net.nodes if alive[u] for v in sorted(children[u])]
    labels = {v: name for v, name in net.names.items() if alive[v]}
    return validate(edges, labels, root=net.root, nodes=[net.root])


__all__ = [
    "Network",
    "NodeKind",
    "ValidationError",
    "validate",
    "node_kind",
    "is_ancestor",
    "is_dominator",
    "immediate_dominators",
    "visible_nodes",
    "leaves_below",
    "reachable",
    "is_isomorphic",
    "to_networkx",
    "suppress_redundant",
]
