"""Seeded random networks, optionally restricted to a network class.

Networks start as a random tree; reticulations are then added one at a time
by subdividing two edges ``a->b`` (new node ``s``) and ``c->d`` (new node
``t``) and adding ``s->t``. Every node carries a real-valued "time" that
increases along edges, and new nodes only ever point forward in time, so the
result is acyclic by construction.

``tree-child`` and ``quasi-rv`` targets are enforced by local degree rules and
scale to millions of nodes; ``reticulation-visible`` and ``galled`` targets
re-check the whole network after every proposal and are meant for small
networks.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, replace

import numpy as np

from .errors import GenerationFailed
from .network import Network, validate

TARGETS = ("any", "tree-child", "reticulation-visible", "galled", "quasi-rv")
_LOCAL = ("tree-child", "quasi-rv")
_GLOBAL = ("reticulation-visible", "galled")
# consecutive rejected proposals after which a global target gives up
_STALL = 1000


@dataclass(frozen=True)
class GenSpec:
    leaves: int
    reticulations: int = 0
    target: str = "any"
    seed: int = 0
    redundant: int = 0
    binary: bool = False
    max_tries: int = 10_000

    def __post_init__(self):
        if self.leaves < 1:
            raise ValueError("leaves must be >= 1")
        if self.reticulations < 0 or self.redundant < 0:
            raise ValueError("counts must be >= 0")
        if self.leaves == 1 and self.reticulations:
            raise ValueError("a single-leaf network has no room for reticulations")
        if self.target not in TARGETS:
            raise ValueError(f"unknown class target {self.target!r}; pick one of {TARGETS}")


class _Random:
    """Buffered uniform draws from a counter-based (Philox) generator."""

    def __init__(self, seed):
        self._gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
        self._buf = []

    def random(self) -> float:
        if not self._buf:
            self._buf = self._gen.random(4096).tolist()
        return self._buf.pop()

    def index(self, n: int) -> int:
        return min(int(self.random() * n), n - 1)

    def choice(self, seq):
        return seq[self.index(len(seq))]

    def between(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * (0.05 + 0.9 * self.random())


class _Draft:
    def __init__(self):
        self.children: list[list[int]] = []
        self.parents: list[list[int]] = []
        self.time: list[float] = []
        self.edges: list[tuple[int, int]] = []
        self.edge_at: dict[tuple[int, int], int] = {}
        self.rets: list[int] = []
        self.extra = 0

    def node(self, t: float) -> int:
        self.children.append([])
        self.parents.append([])
        self.time.append(t)
        return len(self.time) - 1

    def add_edge(self, u, v):
        self.children[u].append(v)
        self.parents[v].append(u)
        self.edge_at[(u, v)] = len(self.edges)
        self.edges.append((u, v))
        if len(self.parents[v]) == 2:
            self.rets.append(v)

    def subdivide(self, e: tuple[int, int], t: float) -> int:
        u, v = e
        w = self.node(t)
        i = self.edge_at.pop(e)
        self.edges[i] = (u, w)
        self.edge_at[(u, w)] = i
        self.children[u][self.children[u].index(v)] = w
        self.parents[v][self.parents[v].index(u)] = w
        self.parents[w].append(u)
        self.children[w].append(v)
        self.edge_at[(w, v)] = len(self.edges)
        self.edges.append((w, v))
        return w

    def nonret(self, v) -> bool:
        return len(self.parents[v]) < 2

    def is_tree(self, v) -> bool:
        return len(self.parents[v]) < 2 and len(self.children[v]) >= 2


def _grow_tree(d: _Draft, rng: _Random, n: int, binary: bool) -> None:
    root = d.node(0.0)
    if n == 1:
        d.add_edge(root, d.node(1.0))
        return
    leaves = [d.node(1.0), d.node(1.0)]
    d.add_edge(root, leaves[0])
    d.add_edge(root, leaves[1])
    internal = [root]
    while len(leaves) < n:
        if not binary and rng.random() < 0.2:
            p = rng.choice(internal)
            leaf = d.node(d.time[p] + 1.0)
            d.add_edge(p, leaf)
            leaves.append(leaf)
            continue
        i = rng.index(len(leaves))
        x = leaves[i]
        a, b = d.node(d.time[x] + 1.0), d.node(d.time[x] + 1.0)
        d.add_edge(x, a)
        d.add_edge(x, b)
        internal.append(x)
        leaves[i] = a
        leaves.append(b)
    # leaves all at the same, latest time: every edge can host a forward edge
    last = max(d.time) + 1.0
    for v in leaves:
        d.time[v] = last


def _tree_component(d: _Draft, v: int) -> list[int]:
    if not d.is_tree(v):
        return [v]
    seen, stack = {v}, [v]
    while stack:
        x = stack.pop()
        nbrs = list(d.children[x]) + list(d.parents[x])
        for y in nbrs:
            if y not in seen and d.is_tree(y):
                seen.add(y)
                stack.append(y)
    return list(seen)


def _pick_edges(d: _Draft, rng: _Random, target: str):
    e1 = rng.choice(d.edges)
    if target == "galled" and rng.random() < 0.8:
        comp = _tree_component(d, e1[0])
        e2 = (rng.choice(comp), None)
        e2 = (e2[0], rng.choice(d.children[e2[0]]))
    elif target == "quasi-rv" and d.rets and rng.random() < 0.25:
        r = rng.choice(d.rets)
        e2 = (rng.choice(d.parents[r]), r)
    else:
        e2 = rng.choice(d.edges)
    return e1, e2


def _local_ok_new(d: _Draft, e1, e2, target: str) -> bool:
    (a, b), (c, dd) = e1, e2
    if not d.nonret(b):
        return False
    if not d.nonret(dd):
        return target == "quasi-rv"
    if not d.nonret(c):
        return target == "quasi-rv"
    return any(x != dd and d.nonret(x) for x in d.children[c])


def _propose(d: _Draft, rng: _Random, spec: GenSpec) -> bool:
    """Try one random modification in place; return False if it was rejected up front."""
    allow_extra = not spec.binary and spec.target != "galled"
    if allow_extra and d.rets and d.extra < spec.reticulations and rng.random() < 0.2:
        e1 = rng.choice(d.edges)
        r = rng.choice(d.rets)
        ts = rng.between(d.time[e1[0]], d.time[e1[1]])
        if ts >= d.time[r] or e1[1] == r:
            return False
        if spec.target in _LOCAL and not d.nonret(e1[1]):
            return False
        s = d.subdivide(e1, ts)
        d.add_edge(s, r)
        d.extra += 1
        return True
    e1, e2 = _pick_edges(d, rng, spec.target)
    if e1 == e2:
        return False
    ts = rng.between(d.time[e1[0]], d.time[e1[1]])
    tt = rng.between(d.time[e2[0]], d.time[e2[1]])
    if not ts < tt:
        return False
    if spec.target in _LOCAL and not _local_ok_new(d, e1, e2, spec.target):
        return False
    s = d.subdivide(e1, ts)
    t = d.subdivide(e2, tt)
    d.add_edge(s, t)
    return True


def _finish(d: _Draft, leaves: int) -> Network:
    # number nodes by time: a topological order, and cache-friendly for big networks
    order = sorted(range(len(d.time)), key=d.time.__getitem__)
    labels = {}
    i = 0
    for v in order:
        if not d.children[v]:
            i += 1
            labels[v] = f"t{i}"
    return validate(d.edges, labels, root=0, nodes=order)


def _holds(net: Network, target: str) -> bool:
    from .classify import is_galled, is_reticulation_visible

    if target == "galled":
        return is_galled(net)
    return is_reticulation_visible(net)


def generate(spec: GenSpec) -> Network:
    """Deterministic random network for *spec*; raises GenerationFailed past ``max_tries``."""
    if spec.target == "tree-child" and spec.reticulations > spec.leaves - 1:
        # a tree-child network on n leaves has at most n - 1 reticulations
        raise GenerationFailed(
            f"a tree-child network on {spec.leaves} leaves has at most {spec.leaves - 1} reticulations"
        )
    rng = _Random(spec.seed)
    binary = spec.binary or spec.target == "galled"
    spec = replace(spec, binary=binary)
    d = _Draft()
    _grow_tree(d, rng, spec.leaves, binary)
    tries = 0
    budget = spec.max_tries + 20 * spec.reticulations
    n_rets = 0
    stalled = 0
    while n_rets < spec.reticulations:
        tries += 1
        if tries > budget or stalled > _STALL:
            raise GenerationFailed(
                f"could not place {spec.reticulations} reticulations for {spec.target} "
                f"within {budget} tries"
            )
        if spec.target in _GLOBAL:
            saved = copy.deepcopy(d.__dict__)
            if _propose(d, rng, spec) and _holds(_finish(d, spec.leaves), spec.target):
                stalled = 0 if len(d.rets) > n_rets else stalled + 1
                n_rets = len(d.rets)
                continue
            d.__dict__ = saved
            stalled += 1
        elif _propose(d, rng, spec):
            n_rets = len(d.rets)

    placed = 0
    while placed < spec.redundant:
        tries += 1
        if tries > budget + 20 * spec.redundant:
            raise GenerationFailed(f"could not place {spec.redundant} redundant nodes")
        e = rng.choice(d.edges)
        head = e[1]
        if spec.target in _GLOBAL and d.children[head]:
            continue
        if spec.target in _LOCAL and not d.nonret(head):
            continue
        d.subdivide(e, rng.between(d.time[e[0]], d.time[head]))
        placed += 1
    return _finish(d, spec.leaves)


def size_ladder(base: GenSpec, sizes) -> list[Network]:
    """One network per target size ``|V| + |E|``, keeping the reticulation/leaf ratio of *base*.

    Rung ``i`` is seeded with ``(base.seed, i)``. The accounting assumes a
    binary network (``4n`` for the tree, ``5`` per reticulation).
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    ratio = base.reticulations / base.leaves
    out = []
    for i, size in enumerate(sizes):
        n = max(2, round(size / (4 + 5 * ratio)))
        k = round(ratio * n)
        spec = replace(
            base,
            leaves=n,
            reticulations=k,
            seed=_rung_seed(base.seed, i),
            binary=True,
            max_tries=max(base.max_tries, 20 * k),
        )
        out.append(generate(spec))
    return out


def _rung_seed(seed: int, i: int) -> int:
    return int(np.random.SeedSequence([seed, i]).generate_state(1, np.uint64)[0])
