"""Extended Newick and edge-list readers, writers, and DOT export.

Dialect accepted by :func:`parse_enewick`:

* one network per document, terminated by ``;``
* leaf and internal labels are bare words (no quoting); internal labels optional
* a reticulate node is written once with its children, ``(...)name#H1``,
  and referenced by ``#H1`` under each of its other parents
* branch lengths (``:``) and comments (``[...]``) are rejected
"""

from __future__ import annotations

import re

from .errors import ENewickSyntaxError, UnknownHybridReference
from .network import Network, NodeKind, validate

_SPECIAL = set("(),;:#[]")
_TAG_RE = re.compile(r"#([A-Za-z0-9_]+)")


def _is_word_char(ch: str) -> bool:
    return ch not in _SPECIAL and not ch.isspace()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.next_id = 0
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, str] = {}
        self.hybrids: dict[str, int] = {}
        self.hybrid_uses: dict[str, int] = {}
        self.hybrid_defined: set[str] = set()

    def error(self, message, cls=ENewickSyntaxError):
        raise cls(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and _is_word_char(self.text[self.pos]):
            self.pos += 1
        return self.text[start:self.pos]

    def fresh(self) -> int:
        self.next_id += 1
        return self.next_id - 1

    def parse(self) -> int:
        root = self.subtree()
        if self.peek() != ";":
            self.error("expected ';'")
        self.pos += 1
        if self.peek():
            self.error("trailing text after ';'")
        return root

    def subtree(self) -> int:
        kids: list[int] | None = None
        if self.peek() == "(":
            self.pos += 1
            kids = [self.subtree()]
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.subtree())
            if self.peek() != ")":
                self.error("expected ',' or ')'")
            self.pos += 1
        self.skip_ws()
        name = self.word()
        tag = None
        if self.peek() == "#":
            m = _TAG_RE.match(self.text, self.pos)
            if not m:
                self.error("malformed hybrid tag")
            tag = m.group(1)
            self.pos = m.end()
        ch = self.peek()
        if ch == ":":
            self.error("branch lengths are not supported")
        if ch == "[":
            self.error("comments are not supported")
        if ch not in (",", ")", ";"):
            self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")

        if tag is None:
            node = self.fresh()
        else:
            node = self.hybrids.get(tag)
            if node is None:
                node = self.hybrids[tag] = self.fresh()
            self.hybrid_uses[tag] = self.hybrid_uses.get(tag, 0) + 1
            if kids is not None or name:
                if tag in self.hybrid_defined:
                    self.error(f"hybrid #{tag} is defined twice")
                self.hybrid_defined.add(tag)
        if name:
            self.labels[node] = name
        for k in kids or ():
            self.edges.append((node, k))
        return node


def parse_enewick(text: str) -> Network:
    """Parse one extended Newick network; the result always passes validation."""
    p = _Parser(text)
    root = p.parse()
    for tag, uses in p.hybrid_uses.items():
        if tag not in p.hybrid_defined:
            raise UnknownHybridReference(f"hybrid #{tag} is referenced but never defined")
        if uses < 2:
            raise ENewickSyntaxError(f"hybrid #{tag} occurs only once")
    return validate(p.edges, p.labels, root=root, nodes=[root])


def _check_name(name: str) -> str:
    if not name or not all(_is_word_char(ch) for ch in name):
        raise ValueError(f"label {name!r} cannot be written in extended Newick")
    return name


def min_taxa(net: Network) -> list[str]:
    """Lexicographically smallest taxon below every node."""
    best: list[str | None] = [None] * len(net)
    for v in reversed(net.topological_order):
        if net.kinds[v] is NodeKind.LEAF:
            best[v] = net.names[v]
        else:
            best[v] = min(best[c] for c in net.children[v])
    return best  # type: ignore[return-value]


def write_enewick(net: Network) -> str:
    """Canonical extended Newick text for *net*.

    Children are ordered by the smallest taxon below them, ties broken by
    node id; a reticulation is written in full at its first occurrence in
    that order and as a bare ``#H<k>`` reference elsewhere.
    """
    key = min_taxa(net)
    tags: dict[int, str] = {}
    out: list[str] = []
    stack: list[tuple[int, bool]] = [(net.root, True)]
    while stack:
        v, entering = stack.pop()
        if v == -1:
            out.append(",")
            continue
        if not entering:
            out.append(")")
            if v in net.names:
                out.append(_check_name(net.names[v]))
            if v in tags:
                out.append(tags[v])
            continue
        kind = net.kinds[v]
        if kind is NodeKind.LEAF:
            out.append(_check_name(net.names[v]))
            continue
        if kind is NodeKind.RETICULATE:
            if v in tags:
                out.append(tags[v])
                continue
            tags[v] = f"#H{len(tags) + 1}"
        out.append("(")
        stack.append((v, False))
        kids = sorted(net.children[v], key=lambda c: (key[c], c))
        for i in range(len(kids) - 1, -1, -1):
            stack.append((kids[i], True))
            if i:
                stack.append((-1, True))
    out.append(";")
    return "".join(out)


def parse_edge_list(text: str) -> Network:
    """Read ``parent<TAB>child`` lines; ``#`` starts a comment line.

    Every node keeps its identifier as its name, so sinks are labeled by
    their identifier. Repeated lines are merged.
    """
    edges: dict[tuple[str, str], None] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t") if "\t" in line else line.split()
        fields = [f.strip() for f in fields]
        if len(fields) != 2 or not all(fields):
            raise ENewickSyntaxError(f"line {lineno}: expected 'parent<TAB>child'")
        edges[(fields[0], fields[1])] = None
    names = {x: x for e in edges for x in e}
    return validate(list(edges), names)


def write_edge_list(net: Network) -> str:
    lines = [f"{net.display(u)}\t{net.display(v)}" for u, v in net.edges()]
    return "\n".join(lines) + "\n"


_FILL = {"red": "#e41a1c", "blue": "#377eb8", "purple": "#984ea3"}


def export_dot(net: Network, decoration=None, name: str = "N") -> str:
    """Render *net* as a DOT digraph.

    ``decoration`` may be a :class:`~phylocomp.decomposition.Decomposition`
    (components drawn as clusters) or a
    :class:`~phylocomp.containment.Coloring` (nodes filled with their color).
    """
    component_of = getattr(decoration, "component_of", None)
    color_of = getattr(decoration, "color_of", None)
    lines = [f"digraph {name} {{", "  node [shape=circle, label=\"\"];"]

    def node_line(v):
        attrs = [f'label="{net.display(v)}"']
        kind = net.kinds[v]
        if kind is NodeKind.RETICULATE:
            attrs.append('style=filled, fillcolor="gray40"')
        elif kind is NodeKind.LEAF:
            attrs.append('shape=doublecircle, style=dashed')
        elif kind is NodeKind.REDUNDANT:
            attrs.append("shape=point")
        if color_of is not None and v in color_of:
            color = str(color_of[v])
            attrs.append(f'style=filled, fillcolor="{_FILL.get(color, color)}"')
        return f"  n{v} [{', '.join(attrs)}];"

    clustered = set()
    if component_of is not None:
        members: dict[int, list[int]] = {}
        for v, c in component_of.items():
            members.setdefault(c, []).append(v)
        for c in sorted(members):
            kind = decoration.component_kind[c]
            style = "filled" if kind.value == "tree" else "dashed"
            lines.append(f"  subgraph cluster_{c} {{")
            lines.append(f'    style={style}; color="gray70"; label="{kind.value[0]}{c}";')
            for v in sorted(members[c]):
                lines.append("  " + node_line(v))
                clustered.add(v)
            lines.append("  }")
    for v in net.nodes:
        if v not in clustered:
            lines.append(node_line(v))
    for u, v in net.edges():
        lines.append(f"  n{u} -> n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
