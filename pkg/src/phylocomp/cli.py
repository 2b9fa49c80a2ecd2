"""Command-line interface.

Exit codes: 0 yes/success, 1 no (decision subcommands), 2 usage or input
error, 3 precondition not met (e.g. the network is not
quasi-reticulation-visible).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from . import __version__
from .classify import classification_report
from .compression import compress
from .containment import make_instance, scc_report, solve_cc
from .decomposition import decompose
from .enewick import export_dot, parse_edge_list, parse_enewick, write_edge_list, write_enewick
from .errors import (
    BudgetExceeded,
    ENewickSyntaxError,
    InvalidCluster,
    PhyloError,
    PreconditionError,
    UnknownNode,
    ValidationError,
)
from .generators import TARGETS, GenSpec, generate, size_ladder
from .network import Network
from .oracle import displayed_trees, oracle_is_tree_based, oracle_scc, softwired_clusters_at


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def read_network(path: str, fmt: str | None = None) -> Network:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    if fmt is None:
        if path.endswith(".tsv"):
            fmt = "tsv"
        elif path == "-" and not any(ch in text for ch in "(;"):
            fmt = "tsv"
        else:
            fmt = "enwk"
    return parse_edge_list(text) if fmt == "tsv" else parse_enewick(text)


def _emit(text: str, out: str | None):
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cluster(arg: str) -> list[str]:
    return [t.strip() for t in arg.split(",") if t.strip()]


def _dump(obj):
    print(json.dumps(obj, ensure_ascii=False, sort_keys=False))


def cmd_validate(args):
    net = read_network(args.input, args.format)
    info = {
        "valid": True,
        "nodes": len(net),
        "edges": net.n_edges,
        "leaves": len(net.leaves),
        "reticulations": len(net.reticulations),
        "redundant": len(net.redundant_nodes),
    }
    if args.json:
        _dump(info)
    else:
        print(" ".join(f"{k}={v}" for k, v in info.items()))
    return 0


def cmd_classify(args):
    net = read_network(args.input, args.format)
    report = classification_report(net).to_json()
    if args.json:
        _dump(report)
    else:
        for key, value in report.items():
            if key != "witnesses":
                extra = f"  ({report['witnesses'][key]})" if key in report["witnesses"] else ""
                print(f"{key}\t{value}{extra}")
    return 0


def cmd_decompose(args):
    net = read_network(args.input, args.format)
    d = decompose(net)
    lines = ["node\tkind\tcomponent"]
    for v in net.nodes:
        c = d.component_of.get(v)
        lines.append(f"{net.display(v)}\t{net.kinds[v]}\t{'' if c is None else c}")
    _emit("\n".join(lines) + "\n", args.out)
    if args.dot:
        _emit(export_dot(net, d), args.dot)
    return 0


def cmd_compress(args):
    net = read_network(args.input, args.format)
    cr = compress(net)
    comp = cr.compressed
    text = write_enewick(comp) + "\n"
    fmap = "".join(f"{net.display(v)}\t{comp.display(cr.f[v])}\n" for v in net.nodes)
    if args.out:
        _emit(text, args.out)
        _emit(fmap, args.map or args.out + ".f.tsv")
    else:
        _emit(text, None)
        if args.map:
            _emit(fmap, args.map)
    return 0


def cmd_scc(args):
    net = read_network(args.input, args.format)
    inst = make_instance(net, args.node, _cluster(args.cluster))
    report = scc_report(inst)
    _dump(report.to_json())
    return 0 if report.answer else 1


def cmd_cc(args):
    net = read_network(args.input, args.format)
    u = solve_cc(net, _cluster(args.cluster))
    _dump({"answer": u is not None, "node": None if u is None else net.display(u)})
    return 0 if u is not None else 1


def cmd_oracle(args):
    net = read_network(args.input, args.format)
    if args.what == "scc":
        if not args.node or not args.cluster:
            raise InvalidCluster("oracle scc needs --node and --cluster")
        inst = make_instance(net, args.node, _cluster(args.cluster))
        answer = oracle_scc(net, inst.u, inst.cluster, args.budget)
        _dump({"answer": answer})
        return 0 if answer else 1
    if args.what == "clusters":
        if not args.node:
            raise InvalidCluster("oracle clusters needs --node")
        clusters = softwired_clusters_at(net, net.find(args.node), args.budget)
        _dump({"node": args.node, "clusters": sorted(sorted(c) for c in clusters)})
        return 0
    if args.what == "tree-based":
        answer = oracle_is_tree_based(net, args.budget)
        _dump({"answer": answer})
        return 0 if answer else 1
    for tree in displayed_trees(net, args.budget):
        print(write_enewick(tree))
    return 0


def cmd_gen(args):
    spec = GenSpec(
        leaves=args.leaves,
        reticulations=args.reticulations,
        target=args.target,
        seed=args.seed,
        redundant=args.redundant,
        binary=args.binary,
    )
    net = generate(spec)
    text = write_edge_list(net) if args.format == "tsv" else write_enewick(net) + "\n"
    _emit(text, args.out)
    return 0


def cmd_bench(args):
    import random

    sizes = [int(s) for s in args.sizes.split(",")]
    base = GenSpec(leaves=40, reticulations=10, target="quasi-rv", seed=args.seed)
    rng = random.Random(args.seed)
    print("size,nanoseconds,answer")
    for size, net in zip(sizes, size_ladder(base, sizes)):
        taxa = sorted(net.taxa)
        tree_nodes = net.tree_nodes
        samples = []
        for _ in range(args.queries):
            u = rng.choice(tree_nodes)
            cluster = rng.sample(taxa, rng.randint(1, min(len(taxa), 8)))
            inst = make_instance(net, u, cluster)
            t0 = time.perf_counter_ns()
            answer = scc_report(inst).answer
            samples.append((time.perf_counter_ns() - t0, answer))
        median = statistics.median(ns for ns, _ in samples)
        print(f"{size},{int(median)},{sum(a for _, a in samples)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="phylocomp", description="Rooted phylogenetic network compression tools")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=1, help="worker cap (computations are serial)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp):
        sp.add_argument("input", help="network file, or '-' for standard input")
        sp.add_argument("--format", choices=("enwk", "tsv"), help="override format detection")
        return sp

    sp = with_input(sub.add_parser("validate", help="check a network"))
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = with_input(sub.add_parser("classify", help="network class report"))
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = with_input(sub.add_parser("decompose", help="tree-node and reticulation components"))
    sp.add_argument("-o", "--out")
    sp.add_argument("--dot", help="also write a DOT rendering to this path")
    sp.set_defaults(func=cmd_decompose)

    sp = with_input(sub.add_parser("compress", help="compressed network and node map"))
    sp.add_argument("-o", "--out")
    sp.add_argument("--map", help="path for the node map TSV")
    sp.set_defaults(func=cmd_compress)

    sp = with_input(sub.add_parser("scc", help="is a cluster displayed at a node?"))
    sp.add_argument("--node", required=True)
    sp.add_argument("--cluster", required=True, help="comma-separated taxa")
    sp.set_defaults(func=cmd_scc)

    sp = with_input(sub.add_parser("cc", help="is a cluster displayed at some node?"))
    sp.add_argument("--cluster", required=True)
    sp.set_defaults(func=cmd_cc)

    sp = sub.add_parser("oracle", help="brute-force answers by switching enumeration")
    sp.add_argument("what", choices=("scc", "clusters", "trees", "tree-based"))
    with_input(sp)
    sp.add_argument("--node")
    sp.add_argument("--cluster")
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="generate a random network")
    sp.add_argument("--leaves", type=int, required=True)
    sp.add_argument("--reticulations", type=int, default=0)
    sp.add_argument("--class", dest="target", choices=TARGETS, default="any")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--redundant", type=int, default=0)
    sp.add_argument("--binary", action="store_true")
    sp.add_argument("--format", choices=("enwk", "tsv"), default="enwk")
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="timing harness")
    sp.add_argument("what", choices=("scc",))
    sp.add_argument("--sizes", default="1000,10000,100000")
    sp.add_argument("--queries", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValidationError, ENewickSyntaxError, UnknownNode, InvalidCluster, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, BudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except PhyloError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
