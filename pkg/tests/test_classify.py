import itertools
import json

import pytest
from conftest import TREE_SIBLING_WITNESS, all_paths, named, network_strategy
from hypothesis import given, settings

from phylocomp import (
    NodeKind,
    classification_report,
    compress,
    decompose,
    is_binary,
    is_galled,
    is_inner,
    is_quasi_galled,
    is_quasi_reticulation_visible,
    is_reticulation_visible,
    is_tree_based,
    is_tree_child,
    is_tree_sibling,
    parse_enewick,
    visible_nodes,
)
from phylocomp.errors import NotBinary
from phylocomp.oracle import oracle_dominators, oracle_is_tree_based


def _galled_oracle(net):
    """Two internally disjoint all-tree-node paths into every reticulation."""
    tree = set(net.tree_nodes)
    for u in net.reticulations:
        found = False
        for w in tree:
            paths = [p for p in all_paths(net, w, u) if all(x in tree for x in p[:-1])]
            for p, q in itertools.combinations(paths, 2):
                if set(p[1:-1]).isdisjoint(q[1:-1]) and p[1] != q[1]:
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def _rv_oracle(net):
    rows = oracle_dominators(net)
    visible = {x for x, row in rows.items() if row}
    return set(net.reticulations) | set(net.redundant_nodes) <= visible


# -- named examples ---------------------------------------------------------


def test_net_d1_all_true(net_d1):
    report = classification_report(net_d1)
    flags = {k: v for k, v in report.to_json().items() if k != "witnesses"}
    assert all(flags.values()), flags
    assert report.witnesses == {}


def test_net_i1(net_i1):
    assert not is_tree_child(net_i1)
    assert is_reticulation_visible(net_i1)
    assert not is_tree_sibling(net_i1)
    assert is_quasi_galled(net_i1)
    comp = compress(net_i1).compressed
    assert len(comp.redundant_nodes) == 2


def test_net_n1(net_n1):
    report = classification_report(net_n1)
    assert report.binary
    assert not report.tree_child
    assert not report.reticulation_visible
    assert report.quasi_reticulation_visible
    assert report.quasi_galled
    assert report.galled is False
    assert report.witnesses["galled"] == "r2"
    assert report.witnesses["reticulation_visible"] == "r1"


def test_tree_all_true(tree5):
    report = classification_report(parse_enewick("((a,b),(c,(d,e)));"))
    assert all(v for k, v in report.to_json().items() if k != "witnesses")
    # a multifurcating tree is not binary, so galled is left undecided
    report = classification_report(tree5)
    assert report.galled is None
    assert all(v for k, v in report.to_json().items() if k not in ("witnesses", "galled", "binary"))


def test_binary_details():
    three = named([("rho", "a"), ("rho", "b"), ("rho", "c"), ("a", "r"), ("b", "r"), ("c", "r"),
                   ("a", "l1"), ("b", "l2"), ("c", "l3"), ("r", "l4")])
    assert not is_binary(three)
    with_redundant = named([("rho", "d"), ("rho", "l1"), ("d", "l2")])
    assert is_binary(with_redundant)


def test_galled_requires_binary():
    multi = parse_enewick("(a,b,c);")
    with pytest.raises(NotBinary):
        is_galled(multi)
    report = classification_report(multi)
    assert report.galled is None and report.witnesses["galled"] == "not-binary"


def test_galled_net_d1(net_d1):
    assert is_galled(net_d1)


def test_not_tree_based_example():
    # u1 and u2 each need a distinct reticulate child, but both have only r
    net = named([("rho", "u1"), ("rho", "u2"), ("u1", "r"), ("u2", "r"), ("r", "l1"),
                 ("rho", "l2")])
    assert oracle_is_tree_based(net) == is_tree_based(net)


def test_not_tree_based_nonbinary():
    # u1, u2, u3 need three distinct reticulate children among r1, r2
    net = named([("rho", "u1"), ("rho", "u2"), ("rho", "u3"),
                 ("u1", "r1"), ("u1", "r2"), ("u2", "r1"), ("u2", "r2"), ("u3", "r1"), ("u3", "r2"),
                 ("r1", "l1"), ("r2", "l2")])
    assert not oracle_is_tree_based(net)
    assert not is_tree_based(net)
    assert "tree_based" in classification_report(net).witnesses


def test_report_json_keys(net_d1):
    keys = list(classification_report(net_d1).to_json())
    assert keys == ["binary", "tree_child", "reticulation_visible", "tree_sibling", "galled",
                    "tree_based", "quasi_reticulation_visible", "quasi_galled", "witnesses"]
    json.dumps(classification_report(net_d1).to_json())


def test_tree_child_with_only_redundant_siblings():
    # siblings of r are degree-2 nodes, which count for tree-child but not tree-sibling
    net = named([("rho", "d1"), ("rho", "r"), ("d1", "t"), ("t", "d2"), ("t", "r"),
                 ("d2", "l1"), ("r", "l2")])
    assert is_tree_child(net)
    assert not is_tree_sibling(net)


def test_tree_sibling_not_closed_under_compression():
    net = parse_enewick(TREE_SIBLING_WITNESS)
    assert len(net) <= 30
    assert is_tree_sibling(net)
    assert not is_tree_sibling(compress(net).compressed)


# -- agreement with oracles ---------------------------------------------------


@given(network_strategy(redundant=2))
@settings(max_examples=150, deadline=None)
def test_tree_child_iff_all_visible(net):
    vis = visible_nodes(net)
    assert is_tree_child(net) == all(v in vis for v in net.nodes)


@given(network_strategy(redundant=2))
@settings(max_examples=150, deadline=None)
def test_rv_matches_oracle(net):
    assert is_reticulation_visible(net) == _rv_oracle(net)


@given(network_strategy(max_leaves=6, max_rets=5, redundant=2))
@settings(max_examples=150, deadline=None)
def test_tree_based_matches_oracle(net):
    assert is_tree_based(net) == oracle_is_tree_based(net)


@given(network_strategy(max_leaves=5, max_rets=4, redundant=1, binary=True))
@settings(max_examples=100, deadline=None)
def test_galled_matches_oracle(net):
    assert is_galled(net) == _galled_oracle(net)


@given(network_strategy(redundant=2))
@settings(max_examples=150, deadline=None)
def test_tree_sibling_definition(net):
    expect = all(
        any(c != r and net.kinds[c] in (NodeKind.TREE, NodeKind.LEAF)
            for p in net.parents[r] for c in net.children[p])
        for r in net.reticulations
    )
    assert is_tree_sibling(net) == expect


# -- implications ------------------------------------------------------------


@given(network_strategy(max_leaves=7, max_rets=5, redundant=2))
@settings(max_examples=200, deadline=None)
def test_implication_lattice(net):
    rep = classification_report(net)
    if rep.tree_child:
        assert rep.reticulation_visible
        if not net.redundant_nodes:
            assert rep.tree_sibling
    if rep.reticulation_visible:
        assert rep.quasi_reticulation_visible
    if rep.galled:
        assert rep.quasi_galled
    if rep.quasi_galled:
        assert rep.quasi_reticulation_visible
    if rep.binary and rep.reticulation_visible:
        assert rep.tree_based
    assert rep.quasi_reticulation_visible == is_quasi_reticulation_visible(net)


@given(network_strategy(max_leaves=6, max_rets=5, targets=("galled",)))
@settings(max_examples=80, deadline=None)
def test_galled_reticulations_are_inner(net):
    assert is_galled(net)
    d = decompose(net)
    assert all(is_inner(net, d, r) for r in net.reticulations)
