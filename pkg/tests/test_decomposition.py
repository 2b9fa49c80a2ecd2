import networkx as nx
import pytest
from conftest import FIG1_LIKE, named, network_strategy
from hypothesis import given, settings

from phylocomp import (
    ComponentKind,
    NodeKind,
    check_component_bound,
    decompose,
    is_exposed,
    is_isolated,
    parse_enewick,
)
from phylocomp.errors import HasRedundantNodes, NotReticulate, NotTreeComponent
from phylocomp.network import to_networkx


def _oracle_components(net, kind):
    """Weakly connected components of the subgraph induced by nodes of one kind."""
    g = to_networkx(net).subgraph([v for v in net.nodes if net.kinds[v] is kind])
    return {frozenset(c) for c in nx.weakly_connected_components(g)}


def _members(d, kind):
    return {frozenset(d.members[c]) for c in range(len(d)) if d.component_kind[c] is kind}


def test_net_d1(net_d1):
    d = decompose(net_d1)
    assert (d.p, d.q) == (1, 1)
    (t,) = d.tree_components
    assert set(d.members[t]) == {net_d1.find(x) for x in ("rho", "v1", "v2")}
    (s,) = d.reticulation_components
    assert d.members[s] == (net_d1.find("r"),)
    assert check_component_bound(net_d1, d)


def test_tree(tree5):
    d = decompose(tree5)
    assert (d.p, d.q) == (1, 0)
    assert check_component_bound(tree5)
    assert is_exposed(tree5, d, 0)


def test_fig1_like_counts():
    net = parse_enewick(FIG1_LIKE)
    d = decompose(net)
    assert (d.p, d.q) == (5, 7)
    assert not net.redundant_nodes
    assert check_component_bound(net, d)


def test_bound_needs_no_redundant_nodes():
    net = named([("rho", "d"), ("rho", "l1"), ("d", "l2")])
    with pytest.raises(HasRedundantNodes):
        check_component_bound(net)


def test_isolated(net_d1, net_n1):
    assert is_isolated(net_d1, net_d1.find("r"))
    assert not is_isolated(net_n1, net_n1.find("r1"))
    assert not is_isolated(net_n1, net_n1.find("r2"))
    with pytest.raises(NotReticulate):
        is_isolated(net_d1, net_d1.find("v1"))


def test_exposed(net_d1, net_n1):
    assert is_exposed(net_d1, decompose(net_d1), 0)
    d = decompose(net_n1)
    (t,) = d.tree_components
    assert set(d.members[t]) == {net_n1.find(x) for x in ("rho", "a", "b", "c")}
    assert not is_exposed(net_n1, d, t)
    with pytest.raises(NotTreeComponent):
        is_exposed(net_n1, d, d.reticulation_components[0])


@given(network_strategy(max_leaves=8, max_rets=6, redundant=2))
@settings(max_examples=100, deadline=None)
def test_components_match_oracle(net):
    d = decompose(net)
    assert _members(d, ComponentKind.TREE) == _oracle_components(net, NodeKind.TREE)
    assert _members(d, ComponentKind.RETICULATION) == _oracle_components(net, NodeKind.RETICULATE)
    # redundant nodes and leaves belong to no component
    assert set(d.component_of) == set(net.tree_nodes) | set(net.reticulations)
    # ids ordered by smallest member
    mins = [min(d.members[c]) for c in range(len(d))]
    assert mins == sorted(mins)


@given(network_strategy(max_leaves=8, max_rets=6, redundant=2))
@settings(max_examples=100, deadline=None)
def test_component_roots(net):
    d = decompose(net)
    for c in range(len(d)):
        root = d.component_root[c]
        members = set(d.members[c])
        if d.component_kind[c] is ComponentKind.RETICULATION:
            # the root is the lowest member: every other member lies above it
            for v in members - {root}:
                assert net.children[v][0] in members
            assert net.children[root][0] not in members
            continue
        for v in members - {root}:
            assert net.parents[v][0] in members
        ps = net.parents[root]
        assert root == net.root or net.kinds[ps[0]] in (NodeKind.RETICULATE, NodeKind.REDUNDANT)


@given(network_strategy(max_leaves=8, max_rets=6, redundant=2))
@settings(max_examples=100, deadline=None)
def test_components_maximal(net):
    d = decompose(net)
    for u, v in net.edges():
        if net.kinds[u] is net.kinds[v] and net.kinds[u] in (NodeKind.TREE, NodeKind.RETICULATE):
            assert d.component_of[u] == d.component_of[v]


@given(network_strategy(max_leaves=8, max_rets=6))
@settings(max_examples=150, deadline=None)
def test_component_bound_property(net):
    assert check_component_bound(net)
