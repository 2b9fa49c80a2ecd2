"""Small cluster containment (SCC) and cluster containment (CC).

The general algorithm works on quasi-reticulation-visible networks without
degree-2 nodes. It colors the compression below the component of the query
node, then checks three conditions:

1. no purple node lies below ``f(u)`` in the compression;
2. the red leaves are displayed at ``u`` in the small network ``N'`` built
   around the component of ``u`` (an exposed component, so the cheap test of
   :func:`solve_scc_exposed` applies);
3. after cutting the reticulate edges that would mix colors, the compression
   stays root-connected and every red leaf is still below ``f(u)``.

Every step is a constant number of linear passes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .classify import is_tree_child
from .compression import CompressionResult, compress
from .decomposition import Decomposition, decompose, is_exposed
from .errors import (
    ComponentNotExposed,
    HasRedundantNodes,
    InvalidCluster,
    NotQuasiRV,
    NotTreeNode,
)
from .network import Network, NodeKind, reachable


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"
    PURPLE = "purple"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SccInstance:
    net: Network
    u: int
    cluster: frozenset[str]

    def __post_init__(self):
        if self.net.kind(self.u) is not NodeKind.TREE:
            raise NotTreeNode(f"node {self.net.display(self.u)} is not a tree node")
        if not self.cluster:
            raise InvalidCluster("the cluster must be nonempty")
        unknown = self.cluster - self.net.taxa
        if unknown:
            raise InvalidCluster(f"not taxa of the network: {sorted(unknown)}")


def make_instance(net: Network, u: int | str, cluster: Iterable[str]) -> SccInstance:
    return SccInstance(net, net.find(u), frozenset(cluster))


@dataclass(frozen=True)
class Coloring:
    """Colors of the non-reticulate compressed nodes strictly below ``top``."""

    top: int
    color_of: dict[int, Color]

    def __getitem__(self, a):
        return self.color_of[a]

    def get(self, a):
        return self.color_of.get(a)

    @property
    def has_purple(self) -> bool:
        return Color.PURPLE in self.color_of.values()


@dataclass
class ColoredDigraph:
    """Small auxiliary digraph with red/blue leaves (the network ``N'``)."""

    root: Hashable
    u: Hashable
    children: dict[Hashable, list[Hashable]] = field(default_factory=dict)
    red: set[Hashable] = field(default_factory=set)
    blue: set[Hashable] = field(default_factory=set)

    def add_edge(self, a, b):
        self.children.setdefault(a, []).append(b)
        self.children.setdefault(b, [])

    @property
    def nodes(self):
        return set(self.children)


@dataclass(frozen=True)
class SccReport:
    """Outcome of each condition; ``True`` means the condition holds."""

    answer: bool
    purple: bool
    nprime: bool
    ndouble: bool

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "conditions": {"purple": self.purple, "nprime": self.nprime, "ndouble": self.ndouble},
        }


def _displayed_in_exposed(children, root, u, red, blue) -> bool:
    """Red leaves all below *u* and no blue leaf dominated by *u*."""
    below = reachable(children, u)
    if not all(r in below for r in red):
        return False
    avoiding = reachable(children, root, blocked=u)
    return all(b in avoiding for b in blue)


def solve_scc_exposed(inst: SccInstance, d: Decomposition | None = None) -> bool:
    """SCC when the tree-node component of ``u`` is exposed.

    Then the cluster is displayed at ``u`` iff all of its leaves are below
    ``u`` and ``u`` dominates no other leaf.
    """
    net = inst.net
    d = d if d is not None else decompose(net)
    c = d.component_index[inst.u]
    if not is_exposed(net, d, c):
        raise ComponentNotExposed(f"component of {net.display(inst.u)} is not exposed")
    red = [net.leaf_of(t) for t in inst.cluster]
    blue = [v for v in net.leaves if net.names[v] not in inst.cluster]
    return _displayed_in_exposed(net.children, net.root, inst.u, red, blue)


def _require_quasi_rv(cr: CompressionResult):
    if not is_tree_child(cr.compressed):
        raise NotQuasiRV("the network is not quasi-reticulation-visible")


def color_compression(inst: SccInstance, cr: CompressionResult | None = None) -> Coloring:
    """Bottom-up red/blue/purple coloring of the compression below ``f(u)``."""
    cr = cr if cr is not None else compress(inst.net)
    _require_quasi_rv(cr)
    return _color(inst, cr)


# colors as bit sets: purple is red | blue
_RED, _BLUE = 1, 2
_COLOR = (None, Color.RED, Color.BLUE, Color.PURPLE)


def _color(inst: SccInstance, cr: CompressionResult) -> Coloring:
    comp = cr.compressed
    top = cr.f[inst.u]
    children, kinds, names = comp.children, comp.kinds, comp.names
    leaf, ret = NodeKind.LEAF, NodeKind.RETICULATE
    cluster = inst.cluster
    # post-order DFS below top; state 1 = open, 2 = colored
    code = bytearray(len(children))
    state = bytearray(len(children))
    stack = [top]
    while stack:
        a = stack[-1]
        if not state[a]:
            state[a] = 1
            stack.extend(c for c in children[a] if not state[c])
            continue
        stack.pop()
        if state[a] == 2:
            continue
        state[a] = 2
        kind = kinds[a]
        if kind is leaf:
            code[a] = _RED if names[a] in cluster else _BLUE
        elif kind is not ret:
            bits = 0
            for c in children[a]:
                if kinds[c] is not ret:
                    bits |= code[c]
            code[a] = bits
    colors = {
        a: _COLOR[code[a]]
        for a in range(len(children))
        if state[a] and a != top and kinds[a] is not ret
    }
    return Coloring(top, colors)


def _retained_children(cr: CompressionResult, coloring: Coloring):
    """Reticulate children of ``f(u)`` kept in ``N'``, with the color of their new leaf."""
    comp = cr.compressed
    top = coloring.top
    kept = {}
    for a in comp.children[top]:
        kind = comp.kinds[a]
        if kind is NodeKind.LEAF:
            continue
        if kind is not NodeKind.RETICULATE:
            kept[a] = coloring[a]
            continue
        child_color = coloring.get(comp.children[a][0])
        others = [coloring.get(p) for p in comp.parents[a] if p != top]
        if child_color is Color.BLUE and all(c is Color.RED for c in others):
            kept[a] = Color.BLUE
        elif child_color is Color.RED and Color.RED not in others:
            kept[a] = Color.RED
    return kept


def build_n_prime(inst: SccInstance, cr: CompressionResult, coloring: Coloring) -> ColoredDigraph:
    """The network ``N'`` around the tree-node component of ``u``.

    Node keys are ``("v", node)`` for nodes of the input network,
    ``("x", a)`` for retained compressed nodes and ``("l", a)`` for the new
    leaf hung below ``("x", a)``.
    """
    _require_quasi_rv(cr)
    return _n_prime(inst, cr, coloring)


def _n_prime(inst: SccInstance, cr: CompressionResult, coloring: Coloring) -> ColoredDigraph:
    net = inst.net
    d = cr.decomposition
    tau = d.component_index[inst.u]
    inside = set(d.members[tau])
    kept = _retained_children(cr, coloring)
    g = ColoredDigraph(root=("v", d.component_root[tau]), u=("v", inst.u))
    g.children.setdefault(g.root, [])
    for v in d.members[tau]:
        for c in net.children[v]:
            if c in inside:
                g.add_edge(("v", v), ("v", c))
            elif net.kinds[c] is NodeKind.LEAF:
                g.add_edge(("v", v), ("v", c))
                (g.red if net.names[c] in inst.cluster else g.blue).add(("v", c))
            else:
                a = cr.f[c]
                if a in kept:
                    x = ("x", a)
                    if x not in g.children.get(("v", v), ()):
                        g.add_edge(("v", v), x)
    for a, color in kept.items():
        g.add_edge(("x", a), ("l", a))
        (g.red if color is Color.RED else g.blue).add(("l", a))
    return g


def build_n_double_prime(
    inst: SccInstance, cr: CompressionResult, coloring: Coloring
) -> set[tuple[int, int]]:
    """Edges of the compression removed to obtain ``N''``."""
    _require_quasi_rv(cr)
    return _n_double_prime(cr, coloring)


def _n_double_prime(cr: CompressionResult, coloring: Coloring) -> set[tuple[int, int]]:
    comp = cr.compressed
    top = coloring.top
    removed = set()
    for x in comp.nodes:
        if comp.kinds[x] is not NodeKind.RETICULATE:
            continue
        child_color = coloring.get(comp.children[x][0])
        if child_color is None:
            continue  # not below f(u)
        parents = comp.parents[x]
        if child_color is Color.RED:
            for p in parents:
                if p != top and coloring.get(p) in (Color.BLUE, None):
                    removed.add((p, x))
            if top in parents and any(coloring.get(p) is Color.RED for p in parents):
                removed.add((top, x))
        elif child_color is Color.BLUE:
            for p in parents:
                if coloring.get(p) is Color.RED:
                    removed.add((p, x))
            if top in parents and any(
                p != top and coloring.get(p) in (Color.BLUE, None) for p in parents
            ):
                removed.add((top, x))
    return removed


def _marks(children, start: int, removed: set[tuple[int, int]] | None = None) -> bytearray:
    """0/1 marks of the nodes reachable from *start* without using an edge in *removed*."""
    seen = bytearray(len(children))
    seen[start] = 1
    stack = [start]
    while stack:
        a = stack.pop()
        for c in children[a]:
            if not seen[c] and (not removed or (a, c) not in removed):
                seen[c] = 1
                stack.append(c)
    return seen


def _n_prime_holds(inst: SccInstance, cr: CompressionResult, coloring: Coloring) -> bool:
    """Condition (ii) evaluated by walking ``N'`` in place instead of building it.

    The tree-node component of ``u`` is a tree, so its leaves split into those
    below ``u`` and those reached from the component root around ``u``. An
    edge leaving the component ends at a network leaf or at a retained
    compressed node, whose new leaf is reached with it.
    """
    net = inst.net
    index = cr.decomposition.component_index
    tau = index[inst.u]
    kept = _retained_children(cr, coloring)
    children, kinds, f, names = net.children, net.kinds, cr.f, net.names
    cluster = inst.cluster
    leaf = NodeKind.LEAF

    def walk(start, blocked, want_red):
        """Kept nodes reached; False if a leaf of the wrong color is reached."""
        hit = set()
        stack = [start]
        while stack:
            v = stack.pop()
            for c in children[v]:
                if c == blocked:
                    continue
                if index[c] == tau:
                    stack.append(c)
                elif kinds[c] is leaf:
                    if (names[c] in cluster) is not want_red:
                        return None
                elif f[c] in kept:
                    hit.add(f[c])
        return hit

    below = walk(inst.u, None, True)
    root = cr.decomposition.component_root[tau]
    around = walk(root, inst.u, False) if root != inst.u else set()
    if below is None or around is None:
        return False
    # as in build_n_prime, a new leaf that is not red counts as blue
    return all(a in (below if color is Color.RED else around) for a, color in kept.items())


def scc_report(inst: SccInstance, cr: CompressionResult | None = None) -> SccReport:
    """Decide SCC and report which of the three conditions hold."""
    net = inst.net
    if net.redundant_nodes:
        raise HasRedundantNodes(
            "SCC expects a network without degree-2 nodes; see suppress_redundant()"
        )
    cr = cr if cr is not None else compress(net)
    _require_quasi_rv(cr)
    coloring = _color(inst, cr)
    comp = cr.compressed

    no_purple = not coloring.has_purple

    nprime = _n_prime_holds(inst, cr, coloring)

    removed = _n_double_prime(cr, coloring)
    connected = all(_marks(comp.children, comp.root, removed))
    under_top = _marks(comp.children, coloring.top, removed)
    ndouble = connected and all(under_top[comp.leaf_of(t)] for t in inst.cluster)

    return SccReport(no_purple and nprime and ndouble, no_purple, nprime, ndouble)


def solve_scc(inst: SccInstance, cr: CompressionResult | None = None) -> bool:
    return scc_report(inst, cr).answer


def solve_cc(net: Network, cluster: Iterable[str], cr: CompressionResult | None = None) -> int | None:
    """First tree node, in topological order, at which *cluster* is displayed."""
    cluster = frozenset(cluster)
    cr = cr if cr is not None else compress(net)
    for u in net.topological_order:
        if net.kinds[u] is NodeKind.TREE and solve_scc(SccInstance(net, u, cluster), cr):
            return u
    return None
