"""Membership tests for the network classes handled by the package."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .compression import CompressionResult, compress, is_inner
from .decomposition import decompose
from .errors import NotBinary
from .network import Network, NodeKind, visible_nodes

_NON_RETICULATE = (NodeKind.TREE, NodeKind.REDUNDANT, NodeKind.LEAF)


def _binary_witness(net: Network):
    for v in net.nodes:
        kind = net.kinds[v]
        if kind is NodeKind.RETICULATE and len(net.parents[v]) != 2:
            return v
        if kind is NodeKind.TREE:
            outdeg = len(net.children[v])
            if outdeg > 2 or (outdeg < 2 and v != net.root):
                return v
    return None


def is_binary(net: Network) -> bool:
    """Reticulations have two parents and tree nodes two children; degree-2 nodes are allowed."""
    return _binary_witness(net) is None


def _tree_child_witness(net: Network):
    kinds = net.kinds
    for v in net.nodes:
        if kinds[v] is NodeKind.LEAF:
            continue
        if not any(kinds[c] in _NON_RETICULATE for c in net.children[v]):
            return v
    return None


def is_tree_child(net: Network) -> bool:
    """Every non-leaf node has a child that is a leaf, a tree node, or a redundant node."""
    return _tree_child_witness(net) is None


def _rv_witness(net: Network):
    visible = visible_nodes(net)
    for v in net.reticulations + net.redundant_nodes:
        if v not in visible:
            return v
    return None


def is_reticulation_visible(net: Network) -> bool:
    return _rv_witness(net) is None


def _tree_sibling_witness(net: Network):
    kinds = net.kinds
    for r in net.reticulations:
        ok = any(
            c != r and kinds[c] in (NodeKind.TREE, NodeKind.LEAF)
            for p in net.parents[r]
            for c in net.children[p]
        )
        if not ok:
            return r
    return None


def is_tree_sibling(net: Network) -> bool:
    """Every reticulation has a sibling that is a tree node or a leaf."""
    return _tree_sibling_witness(net) is None


def _galled_witness(net: Network):
    if not is_binary(net):
        raise NotBinary("galled networks are defined for binary networks only")
    d = decompose(net)
    for r in net.reticulations:
        # Tree nodes have a single parent, so the tree-node paths into r are the
        # upward chains inside one tree-node component; they meet iff both
        # parents share a component.
        if not is_inner(net, d, r):
            return r
    return None


def is_galled(net: Network) -> bool:
    return _galled_witness(net) is None


def _tree_based_witness(net: Network):
    """Unsaturated node of a maximum matching, or None if tree-based.

    A switching strands a non-leaf node exactly when all of its children are
    reticulations that chose another parent. Such "needy" nodes must each be
    chosen by a distinct reticulate child, i.e. a matching saturating them.
    """
    kinds = net.kinds
    needy = [
        v
        for v in net.nodes
        if kinds[v] is not NodeKind.LEAF
        and all(kinds[c] is NodeKind.RETICULATE for c in net.children[v])
    ]
    match_of_ret: dict[int, int] = {}

    def augment(start):
        # iterative Kuhn search for an augmenting path from `start`
        visited = set()
        stack = [(start, iter(net.children[start]))]
        path: list[tuple[int, int]] = []
        while stack:
            v, it = stack[-1]
            advanced = False
            for r in it:
                if r in visited:
                    continue
                visited.add(r)
                owner = match_of_ret.get(r)
                if owner is None:
                    path.append((v, r))
                    for a, b in path:
                        match_of_ret[b] = a
                    return True
                path.append((v, r))
                stack.append((owner, iter(net.children[owner])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path:
                    path.pop()
        return False

    for v in needy:
        if not augment(v):
            return v
    return None


def is_tree_based(net: Network) -> bool:
    """Some one-parent-per-reticulation spanning tree keeps exactly the leaves of *net*."""
    return _tree_based_witness(net) is None


def is_quasi_reticulation_visible(net: Network, cr: CompressionResult | None = None) -> bool:
    """The compression is tree-child."""
    cr = cr if cr is not None else compress(net)
    return is_tree_child(cr.compressed)


def is_quasi_galled(net: Network, cr: CompressionResult | None = None) -> bool:
    """The compression has no reticulate node."""
    cr = cr if cr is not None else compress(net)
    return not cr.compressed.reticulations


@dataclass
class ClassificationReport:
    binary: bool
    tree_child: bool
    reticulation_visible: bool
    tree_sibling: bool
    galled: bool | None
    tree_based: bool
    quasi_reticulation_visible: bool
    quasi_galled: bool
    witnesses: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def classification_report(net: Network) -> ClassificationReport:
    cr = compress(net)
    comp = cr.compressed
    witnesses: dict[str, str] = {}

    def run(name, finder, target=net, prefix=""):
        w = finder(target)
        if w is not None:
            witnesses[name] = prefix + target.display(w)
        return w is None

    binary = run("binary", _binary_witness)
    galled = run("galled", _galled_witness) if binary else None
    if not binary:
        witnesses["galled"] = "not-binary"
    return ClassificationReport(
        binary=binary,
        tree_child=run("tree_child", _tree_child_witness),
        reticulation_visible=run("reticulation_visible", _rv_witness),
        tree_sibling=run("tree_sibling", _tree_sibling_witness),
        galled=galled,
        tree_based=run("tree_based", _tree_based_witness),
        quasi_reticulation_visible=run(
            "quasi_reticulation_visible", _tree_child_witness, comp, "compressed:"
        ),
        quasi_galled=run(
            "quasi_galled",
            lambda n: n.reticulations[0] if n.reticulations else None,
            comp,
            "compressed:",
        ),
        witnesses=witnesses,
    )
