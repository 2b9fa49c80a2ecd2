"""Exponential-time ground truth based on switchings.

A switching keeps exactly one incoming edge per reticulation; the result is a
spanning tree of the network. Everything here enumerates switchings
explicitly and refuses to run past a budget instead of truncating.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded, InvalidCluster, NotTreeNode
from .network import Network, NodeKind, reachable, validate

DEFAULT_BUDGET = 2**20


def default_budget() -> int:
    env = os.environ.get("PHYLO_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Switching:
    retained_parent: dict[int, int]


def switching_count(net: Network) -> int:
    return math.prod(len(net.parents[r]) for r in net.reticulations)


def _choices(net: Network, budget: int | None):
    budget = default_budget() if budget is None else budget
    count = switching_count(net)
    if count > budget:
        raise BudgetExceeded(f"{count} switchings exceed the budget of {budget}")
    rets = net.reticulations
    return rets, itertools.product(*(sorted(net.parents[r]) for r in rets))


def enumerate_switchings(net: Network, budget: int | None = None) -> Iterator[Switching]:
    """All switchings in lexicographic order of chosen parents (reticulations by id)."""
    rets, choices = _choices(net, budget)
    for choice in choices:
        yield Switching(dict(zip(rets, choice)))


def _tree_children(net: Network, chosen: dict[int, int]) -> list[list[int]]:
    kinds = net.kinds
    out = []
    for u, cs in enumerate(net.children):
        out.append(
            [v for v in cs if kinds[v] is not NodeKind.RETICULATE or chosen[v] == u]
        )
    return out


def _leaf_bits(net: Network) -> dict[int, int]:
    order = sorted(net.leaves, key=lambda v: net.names[v])
    return {v: 1 << i for i, v in enumerate(order)}


def _cluster_masks(net: Network, tree_children, bits) -> list[int]:
    masks = [0] * len(net)
    for v in reversed(net.topological_order):
        m = bits.get(v, 0)
        for c in tree_children[v]:
            m |= masks[c]
        masks[v] = m
    return masks


def _mask_of(net: Network, taxa) -> int:
    bits = _leaf_bits(net)
    m = 0
    for t in taxa:
        if t not in net.taxa:
            raise InvalidCluster(f"{t!r} is not a taxon of the network")
        m |= bits[net.leaf_of(t)]
    return m


def _taxa_of(net: Network, mask: int) -> frozenset[str]:
    order = sorted(net.taxa)
    return frozenset(order[i] for i in range(len(order)) if mask >> i & 1)


def softwired_cluster_table(net: Network, budget: int | None = None) -> dict[int, set[int]]:
    """For every tree node, the set of nonempty softwired clusters as leaf bitmasks.

    Bit ``i`` stands for the ``i``-th taxon in sorted order.
    """
    rets, choices = _choices(net, budget)
    bits = _leaf_bits(net)
    table: dict[int, set[int]] = {u: set() for u in net.tree_nodes}
    for choice in choices:
        masks = _cluster_masks(net, _tree_children(net, dict(zip(rets, choice))), bits)
        for u, seen in table.items():
            if masks[u]:
                seen.add(masks[u])
    return table


def cluster_mask(net: Network, taxa) -> int:
    return _mask_of(net, taxa)


def softwired_clusters_at(net: Network, u: int, budget: int | None = None) -> set[frozenset[str]]:
    if net.kind(u) is not NodeKind.TREE:
        raise NotTreeNode(f"node {net.display(u)} is not a tree node")
    rets, choices = _choices(net, budget)
    bits = _leaf_bits(net)
    found = set()
    for choice in choices:
        masks = _cluster_masks(net, _tree_children(net, dict(zip(rets, choice))), bits)
        if masks[u]:
            found.add(masks[u])
    return {_taxa_of(net, m) for m in found}


def oracle_scc(net: Network, u: int, cluster, budget: int | None = None) -> bool:
    """Is *cluster* exactly the leaf set below *u* in some switching's spanning tree?"""
    if net.kind(u) is not NodeKind.TREE:
        raise NotTreeNode(f"node {net.display(u)} is not a tree node")
    target = _mask_of(net, cluster)
    rets, choices = _choices(net, budget)
    bits = _leaf_bits(net)
    for choice in choices:
        masks = _cluster_masks(net, _tree_children(net, dict(zip(rets, choice))), bits)
        if masks[u] == target:
            return True
    return False


def oracle_is_tree_based(net: Network, budget: int | None = None) -> bool:
    """Some switching leaves no non-leaf node without children."""
    rets, choices = _choices(net, budget)
    for choice in choices:
        tc = _tree_children(net, dict(zip(rets, choice)))
        if all(tc[v] for v in net.nodes if net.kinds[v] is not NodeKind.LEAF):
            return True
    return False


def oracle_dominators(net: Network) -> dict[int, frozenset[str]]:
    """Leaves dominated by each node, by node deletion and reachability."""
    rows = {}
    for x in net.nodes:
        if x == net.root:
            rows[x] = net.taxa
            continue
        alive = reachable(net.children, net.root, blocked=x)
        rows[x] = frozenset(net.names[v] for v in net.leaves if v != x and v not in alive)
    return rows


def displayed_tree(net: Network, switching: Switching) -> Network:
    """Spanning tree of *switching* with branches that end in no leaf pruned."""
    tc = _tree_children(net, switching.retained_parent)
    live = [False] * len(net)
    for v in reversed(net.topological_order):
        live[v] = net.kinds[v] is NodeKind.LEAF or any(live[c] for c in tc[v])
    edges = [(u, v) for u in net.nodes if live[u] for v in tc[u] if live[v]]
    labels = {v: net.names[v] for v in net.leaves}
    return validate(edges, labels, root=net.root, nodes=[net.root])


def displayed_trees(net: Network, budget: int | None = None) -> Iterator[Network]:
    for s in enumerate_switchings(net, budget):
        yield displayed_tree(net, s)
