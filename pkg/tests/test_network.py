import pytest
from conftest import dominates_by_paths, named, network_strategy
from hypothesis import given, settings

from phylocomp import (
    NodeKind,
    is_ancestor,
    is_dominator,
    leaves_below,
    node_kind,
    suppress_redundant,
    validate,
    visible_nodes,
)
from phylocomp.errors import (
    CyclicGraph,
    DegreeViolation,
    DuplicateTaxon,
    MultipleRoots,
    NoRoot,
    ParallelEdge,
    UnknownNode,
    UnlabeledLeaf,
)
from phylocomp.oracle import oracle_dominators, softwired_cluster_table


# -- validation -----------------------------------------------------------


def test_kinds_of_net_d1(net_d1):
    f = net_d1.find
    assert node_kind(net_d1, f("rho")) is NodeKind.TREE
    assert node_kind(net_d1, f("v1")) is NodeKind.TREE
    assert node_kind(net_d1, f("r")) is NodeKind.RETICULATE
    assert node_kind(net_d1, f("l3")) is NodeKind.LEAF
    assert net_d1.taxa == {"l1", "l2", "l3"}
    assert len(net_d1) == 7 and net_d1.n_edges == 7


def test_redundant_node_kind():
    net = validate([("rho", "d"), ("rho", "a"), ("d", "b")], {"a": "a", "b": "b"})
    assert net.kind(0 + 1) is NodeKind.REDUNDANT
    assert net.redundant_nodes == (1,)


def test_root_with_single_child_is_tree_node():
    net = validate([("rho", "a")], {"a": "a"})
    assert net.kind(net.root) is NodeKind.TREE


@pytest.mark.parametrize(
    "edges, labels, err",
    [
        ([], {}, NoRoot),
        ([("a", "b"), ("b", "a")], {}, CyclicGraph),
        ([("a", "x"), ("b", "x")], {"x": "x"}, MultipleRoots),
        ([("r", "x"), ("r", "y"), ("x", "z"), ("y", "z"), ("z", "l1"), ("z", "l2")],
         {"l1": "l1", "l2": "l2"}, DegreeViolation),
        ([("r", "a"), ("r", "b")], {"a": "a"}, UnlabeledLeaf),
        ([("r", "a"), ("r", "b")], {"a": "t", "b": "t"}, DuplicateTaxon),
        ([("r", "a"), ("r", "a"), ("r", "b")], {"a": "a", "b": "b"}, ParallelEdge),
        ([("r", "r")], {}, CyclicGraph),
    ],
)
def test_validation_errors(edges, labels, err):
    with pytest.raises(err):
        validate(edges, labels)


def test_unknown_node(net_d1):
    with pytest.raises(UnknownNode):
        is_ancestor(net_d1, 0, 99)
    with pytest.raises(UnknownNode):
        net_d1.find("nope")


@given(network_strategy(redundant=2))
@settings(max_examples=80, deadline=None)
def test_kind_partition(net):
    counts = [len(net.tree_nodes), len(net.reticulations), len(net.redundant_nodes), len(net.leaves)]
    assert sum(counts) == len(net)
    for v in net.nodes:
        i, o = len(net.parents[v]), len(net.children[v])
        k = net.kind(v)
        if v == net.root:
            assert k is NodeKind.TREE
        elif k is NodeKind.RETICULATE:
            assert i >= 2 and o == 1
        elif k is NodeKind.TREE:
            assert i == 1 and o >= 2
        elif k is NodeKind.REDUNDANT:
            assert i == 1 and o == 1
        else:
            assert i == 1 and o == 0


@given(network_strategy(redundant=2))
@settings(max_examples=60, deadline=None)
def test_topological_order(net):
    for relabel in (False, True):
        if relabel:
            # reversed ids are never topological, so the queue-based order is used
            n = len(net)
            net = validate(
                [(n - 1 - u, n - 1 - v) for u, v in net.edges()],
                {n - 1 - v: name for v, name in net.names.items()},
                root=n - 1 - net.root,
                nodes=range(n),
            )
        order = net.topological_order
        assert sorted(order) == list(net.nodes)
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in net.edges())


# -- ancestry and dominance -----------------------------------------------


def test_is_ancestor(net_d1):
    f = net_d1.find
    assert is_ancestor(net_d1, net_d1.root, f("l3"))
    assert not is_ancestor(net_d1, f("l1"), net_d1.root)
    assert not is_ancestor(net_d1, f("v1"), f("v1"))


def test_is_dominator_examples(net_d1):
    f = net_d1.find
    assert is_dominator(net_d1, f("r"), f("l3"))
    assert dominates_by_paths(net_d1, f("r"), f("l3"))
    assert not is_dominator(net_d1, f("v1"), f("r"))
    for v in net_d1.nodes:
        if v != net_d1.root:
            assert is_dominator(net_d1, net_d1.root, v)


@given(network_strategy(max_leaves=4, max_rets=3, redundant=1))
@settings(max_examples=40, deadline=None)
def test_dominator_matches_all_paths(net):
    for x in net.nodes:
        for y in net.nodes:
            assert is_dominator(net, x, y) == dominates_by_paths(net, x, y)


@given(network_strategy(max_leaves=5, max_rets=4, redundant=1))
@settings(max_examples=40, deadline=None)
def test_dominator_transitive(net):
    dom = {(x, y) for x in net.nodes for y in net.nodes if is_dominator(net, x, y)}
    for x, y in dom:
        for y2, z in dom:
            if y2 == y:
                assert (x, z) in dom


# -- visibility -----------------------------------------------------------


def test_visible_examples(net_d1, net_i1):
    assert visible_nodes(net_d1) == frozenset(net_d1.nodes)
    vis = visible_nodes(net_i1)
    assert net_i1.find("u1") not in vis and net_i1.find("u2") not in vis
    assert net_i1.find("r1") in vis


def test_visible_through_dominated_tree_node():
    # t dominates l through its invisible tree child c; no local rule sees this
    net = named([("rho", "t"), ("rho", "r2"), ("t", "c"), ("t", "r"), ("c", "r"), ("c", "r2"),
                 ("r", "l"), ("r2", "l2")])
    t = net.find("t")
    assert is_dominator(net, t, net.find("l"))
    assert t in visible_nodes(net)
    assert net.find("c") not in visible_nodes(net)


def _visible_oracle(net):
    rows = oracle_dominators(net)
    return {x for x, row in rows.items() if row} | set(net.leaves)


@given(network_strategy(redundant=2))
@settings(max_examples=100, deadline=None)
def test_visible_matches_deletion_oracle(net):
    assert visible_nodes(net) == _visible_oracle(net)


@given(network_strategy(redundant=2))
@settings(max_examples=100, deadline=None)
def test_visibility_local_rules(net):
    vis = visible_nodes(net)
    for v in net.nodes:
        kids = net.children[v]
        k = net.kinds[v]
        if kids and all(net.kinds[c] is NodeKind.RETICULATE for c in kids):
            assert v not in vis
        if any(c in vis and net.kinds[c] in (NodeKind.TREE, NodeKind.REDUNDANT) for c in kids):
            assert v in vis
        if k in (NodeKind.RETICULATE, NodeKind.REDUNDANT):
            (c,) = kids
            ok = net.kinds[c] is NodeKind.LEAF or (
                c in vis and net.kinds[c] in (NodeKind.TREE, NodeKind.REDUNDANT)
            )
            assert (v in vis) == ok


# -- leaves below and redundant suppression -------------------------------


def test_leaves_below(net_d1):
    assert leaves_below(net_d1, net_d1.find("v1")) == {"l1", "l3"}
    assert leaves_below(net_d1, net_d1.find("l2")) == {"l2"}
    assert leaves_below(net_d1, net_d1.root) == net_d1.taxa


@given(network_strategy(max_leaves=5, max_rets=3, redundant=3, targets=("any", "quasi-rv")))
@settings(max_examples=60, deadline=None)
def test_suppress_redundant(net):
    net = net.relabeled({v: net.names.get(v, f"_{v}") for v in net.nodes})
    out = suppress_redundant(net)
    assert not out.redundant_nodes
    assert out.taxa == net.taxa
    # tree nodes that survive keep their softwired clusters
    before = softwired_cluster_table(net)
    after = softwired_cluster_table(out)
    for w, masks in after.items():
        v = net.find(out.names[w])
        if net.kinds[v] is NodeKind.TREE:
            assert masks == before[v]
