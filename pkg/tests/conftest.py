import pytest

from phylocomp import validate

D1_EDGES = [("rho", "v1"), ("rho", "v2"), ("v1", "l1"), ("v1", "r"), ("v2", "r"), ("v2", "l2"), ("r", "l3")]
I1_EDGES = [("rho", "u1"), ("rho", "u2"), ("u1", "r1"), ("u1", "r2"), ("u2", "r1"), ("u2", "r2"), ("r1", "l1"), ("r2", "l2")]
N1_EDGES = [
    ("rho", "a"), ("rho", "b"), ("a", "l1"), ("a", "r1"), ("b", "r1"), ("b", "c"),
    ("c", "l2"), ("c", "r2"), ("r1", "r2"), ("r2", "l3"),
]

# tree-sibling network whose compression is not tree-sibling
TREE_SIBLING_WITNESS = (
    "(((((((t1,(t3)#H3))#H2,#H3),(t2)#H4),#H2))#H1,((((#H1,(#H4,#H3)))#H5,#H3),#H5));"
)
# binary, no degree-2 nodes, five tree-node and seven reticulation components,
# compression tree-child with exactly three degree-2 nodes
FIG1_LIKE = (
    "((t1,((((((t10)#H2,t11))#H1,t6),(t4)#H3),((((t12,t13),t7),((t9)#H6)#H5))#H4)),"
    "(((((#H1,t2),(((((((#H2,((t8,(#H6)#H9),#H5)),#H4))#H8,t5))#H7,t3),#H8)),#H7),#H3),#H9));"
)


def named(edges):
    keys = {k for e in edges for k in e}
    return validate(edges, {k: k for k in keys}, root="rho")


@pytest.fixture
def net_d1():
    return named(D1_EDGES)


@pytest.fixture
def net_i1():
    return named(I1_EDGES)


@pytest.fixture
def net_n1():
    return named(N1_EDGES)


@pytest.fixture
def tree5():
    return named([("rho", "x"), ("rho", "l1"), ("x", "l2"), ("x", "y"), ("y", "l3"), ("y", "l4"), ("y", "l5")])


def all_paths(net, src, dst):
    """Every directed path from src to dst, by plain DFS."""
    out, stack = [], [(src, [src])]
    while stack:
        v, path = stack.pop()
        if v == dst:
            out.append(path)
            continue
        for c in net.children[v]:
            stack.append((c, path + [c]))
    return out


def dominates_by_paths(net, x, y):
    paths = all_paths(net, net.root, y)
    return x != y and bool(paths) and all(x in p for p in paths)


def network_strategy(max_leaves=6, max_rets=4, targets=None, redundant=0, binary=None):
    """Hypothesis strategy drawing generated networks."""
    from hypothesis import reject
    from hypothesis import strategies as st

    from phylocomp.errors import GenerationFailed
    from phylocomp.generators import TARGETS, GenSpec, generate

    targets = targets or TARGETS

    @st.composite
    def draw(data):
        target = data(st.sampled_from(targets))
        leaves = data(st.integers(2, max_leaves))
        cap = max_rets if target in ("any", "quasi-rv") else min(max_rets, leaves - 1)
        spec = GenSpec(
            leaves=leaves,
            reticulations=data(st.integers(0, cap)),
            target=target,
            seed=data(st.integers(0, 2**32 - 1)),
            redundant=data(st.integers(0, redundant)),
            binary=data(st.booleans()) if binary is None else binary,
        )
        try:
            return generate(spec)
        except GenerationFailed:
            reject()

    return draw()


def iso_bruteforce(a, b):
    """Leaf-label-preserving isomorphism by trying every bijection of internal nodes."""
    import itertools

    if (len(a), a.n_edges, a.taxa) != (len(b), b.n_edges, b.taxa):
        return False
    fixed = {v: b.leaf_of(a.names[v]) for v in a.leaves}
    inner_a = [v for v in a.nodes if v not in fixed]
    inner_b = [v for v in b.nodes if v not in set(fixed.values())]
    eb = set(b.edges())
    for perm in itertools.permutations(inner_b):
        m = {**fixed, **dict(zip(inner_a, perm))}
        if all((m[u], m[v]) in eb for u, v in a.edges()):
            return True
    return False
