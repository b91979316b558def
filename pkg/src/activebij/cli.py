"""Command line front end: ``activebij {tutte,alpha,table,verify}``.

Graph documents are JSON objects ``{"vertices": n, "edges": [[t, h], ...]}``.
List position gives the edge order (1-based) and ``t -> h`` is the
reference direction. Exit codes: 0 success, 1 verification failure,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .bijection import (
    alpha,
    alpha_dc,
    alpha_dc_refined,
    alpha_refined,
    tree_active_data,
)
from .checks import CheckResult, run_suite
from .config import limits
from .corpus import random_batch
from .edgesets import EdgeSet, from_ranks, label, ranks, sort_key
from .errors import DomainError, InvariantError, PreconditionError, ResourceLimitError
from .filtration import (
    ActivePartition,
    Filtration,
    Part,
    active_filtration,
    active_partition,
)
from .graph import OrderedGraph, bases, is_connected
from .orientation import Digraph, activity_sets, reorientations
from .tutte import (
    TuttePoly,
    convolution,
    tutte_by_filtrations,
    tutte_by_orientations,
    tutte_by_trees,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

METHODS = {
    "trees": tutte_by_trees,
    "orientations": tutte_by_orientations,
    "filtrations": tutte_by_filtrations,
    "convolution": convolution,
}


class InputError(ValueError):
    """Malformed or unsupported input; maps to exit code 2."""


# -- graph documents -------------------------------------------------------------


def graph_from_document(doc) -> OrderedGraph:
    if not isinstance(doc, dict) or set(doc) != {"vertices", "edges"}:
        raise InputError('expected an object with exactly the keys "vertices" and "edges"')
    n, edges = doc["vertices"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError('"vertices" must be a positive integer')
    if not isinstance(edges, list):
        raise InputError('"edges" must be a list')
    if not edges:
        raise InputError("the edge list is empty")
    pairs = []
    for k, e in enumerate(edges, 1):
        ok = isinstance(e, list) and len(e) == 2 and all(
            isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n for v in e
        )
        if not ok:
            raise InputError(f"edge {k}: expected [tail, head] with indices in 0..{n - 1}, got {e!r}")
        pairs.append((e[0], e[1]))
    G = OrderedGraph(n, pairs)
    if not is_connected(G):
        raise InputError("the graph is disconnected")
    return G


def graph_to_document(G: OrderedGraph) -> dict:
    return {"vertices": G.vertex_count, "edges": [list(e) for e in G.endpoints]}


def parse_graph_text(text: str) -> tuple[OrderedGraph, Digraph]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    G = graph_from_document(doc)
    return G, Digraph(G, 0)


def parse_graph(source: str) -> tuple[OrderedGraph, Digraph]:
    """Read a graph document from a path, or from stdin when ``source`` is ``-``."""
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
    return parse_graph_text(text)


def parse_edge_list(text: str, G: OrderedGraph) -> EdgeSet:
    """``"2,3"`` or ``"[2, 3]"`` or ``""`` to an edge set of G."""
    body = text.strip().strip("[]{}")
    try:
        items = [int(t) for t in body.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad edge list {text!r}") from None
    bad = [k for k in items if not 1 <= k <= len(G.endpoints)]
    if bad:
        raise InputError(f"edge ids out of range: {bad}")
    return from_ranks(items)


# -- table rows ------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    tree: tuple[int, ...]
    cyclic_flat: tuple[int, ...]
    chain_cyclic: tuple[tuple[int, ...], ...]
    chain_acyclic: tuple[tuple[int, ...], ...]
    parts: tuple[tuple[int, tuple[int, ...], str], ...]
    members: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "tree": list(self.tree),
            "cyclic_flat": list(self.cyclic_flat),
            "filtration": {
                "cyclic": [list(F) for F in self.chain_cyclic],
                "acyclic": [list(F) for F in self.chain_acyclic],
            },
            "partition": [{"min": m, "edges": list(P), "kind": k} for m, P, k in self.parts],
            "class": [list(A) for A in self.members],
        }

    @classmethod
    def from_json(cls, d: dict) -> TableRow:
        return cls(
            tree=tuple(d["tree"]),
            cyclic_flat=tuple(d["cyclic_flat"]),
            chain_cyclic=tuple(tuple(F) for F in d["filtration"]["cyclic"]),
            chain_acyclic=tuple(tuple(F) for F in d["filtration"]["acyclic"]),
            parts=tuple((p["min"], tuple(p["edges"]), p["kind"]) for p in d["partition"]),
            members=tuple(tuple(A) for A in d["class"]),
        )

    def filtration(self) -> Filtration:
        return Filtration(
            tuple(from_ranks(F) for F in self.chain_cyclic),
            tuple(from_ranks(F) for F in self.chain_acyclic),
        )

    def partition(self) -> ActivePartition:
        return ActivePartition.of(Part(m, from_ranks(P), k) for m, P, k in self.parts)


def table_rows(ref: Digraph) -> list[TableRow]:
    """One row per spanning tree, members given as reorientations of ``ref``.

    Classes are collected as fibers of alpha and cross-checked against the
    single-pass preimages of each tree."""
    G = ref.base
    fibers: dict[EdgeSet, list[EdgeSet]] = {}
    for R in reorientations(G):
        fibers.setdefault(alpha(Digraph(G, R)), []).append(R)
    rows = []
    for T in sorted(bases(G), key=sort_key):
        fiber = fibers.get(T, [])
        if sorted(fiber) != sorted(tree_active_data(G, T).preimages):
            raise InvariantError(f"fiber of tree {ranks(T)} differs from its single-pass preimages")
        dg = Digraph(G, fiber[0])
        f = active_filtration(dg)
        members = sorted(ranks(R ^ ref.reorient) for R in fiber)
        rows.append(
            TableRow(
                tree=tuple(ranks(T)),
                cyclic_flat=tuple(ranks(f.cyclic_flat)),
                chain_cyclic=tuple(tuple(ranks(F)) for F in f.chain_cyclic),
                chain_acyclic=tuple(tuple(ranks(F)) for F in f.chain_acyclic),
                parts=tuple((p.min_edge, tuple(ranks(p.part)), p.kind) for p in active_partition(dg).parts),
                members=tuple(tuple(m) for m in members),
            )
        )
    return rows


def rows_to_json(G: OrderedGraph, rows: list[TableRow]) -> str:
    return json.dumps({"graph": graph_to_document(G), "rows": [r.to_json() for r in rows]}, indent=1)


def rows_from_json(text: str) -> tuple[OrderedGraph, list[TableRow]]:
    d = json.loads(text)
    return graph_from_document(d["graph"]), [TableRow.from_json(r) for r in d["rows"]]


def render_rows(G: OrderedGraph, rows: list[TableRow]) -> str:
    E = G.live
    lines = []
    cells = []
    for r in rows:
        cells.append((
            r.filtration().text(E),
            r.partition().text(E),
            " ".join(label(from_ranks(A), E) for A in r.members),
            label(from_ranks(r.tree), E),
        ))
    head = ("filtration", "partition", "class", "tree")
    widths = [max(len(c[k]) for c in cells + [head]) for k in range(3)]
    for c in [head] + cells:
        lines.append("  ".join(c[k].ljust(widths[k]) for k in range(3)) + "  " + c[3])
    return "\n".join(lines)


# -- subcommands -----------------------------------------------------------------


def _table_text(t: TuttePoly) -> str:
    rows = t.to_rows()
    width = max(len(str(c)) for row in rows for c in row)
    head = " " * 5 + " ".join(f"y^{j}".rjust(width + 2) for j in range(len(rows[0])))
    body = [f"x^{i}".ljust(5) + " ".join(str(c).rjust(width + 2) for c in row) for i, row in enumerate(rows)]
    return "\n".join([head, *body])


def cmd_tutte(args, out) -> int:
    G, _ = parse_graph(args.graph)
    if args.method != "all":
        t = METHODS[args.method](G)
        print(_table_text(t), file=out)
        print(f"T = {t}", file=out)
        return EXIT_OK
    results = {name: fn(G) for name, fn in METHODS.items()}
    first = results["trees"]
    print(_table_text(first), file=out)
    for name, t in results.items():
        print(f"{name:<13} {t}", file=out)
    ok = len(set(results.values())) == 1
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_alpha(args, out) -> int:
    G, ref = parse_graph(args.graph)
    A = parse_edge_list(args.reorient, G)
    dg = ref.reoriented(A)
    E = G.live
    status = EXIT_OK
    trees = {}
    if args.route in ("decomposition", "both"):
        trees["decomposition"] = alpha(dg)
    if args.route in ("dc", "both"):
        trees["dc"] = alpha_dc(dg)
    for name, T in trees.items():
        print(f"tree ({name}): {label(T, E)}", file=out)
    if len(set(trees.values())) > 1:
        print("FAIL: routes disagree", file=out)
        status = EXIT_FAIL
    act = activity_sets(dg)
    print(f"filtration: {active_filtration(dg).text(E)}", file=out)
    print(f"partition: {active_partition(dg).text(E)}", file=out)
    print(f"O (active): {label(act.active, E)}", file=out)
    print(f"O* (dual-active): {label(act.dual_active, E)}", file=out)
    if args.refined:
        subs = {}
        if args.route in ("decomposition", "both"):
            subs["decomposition"] = alpha_refined(ref, A)
        if args.route in ("dc", "both"):
            subs["dc"] = alpha_dc_refined(ref, A)
        for name, X in subs.items():
            print(f"refined ({name}): {label(X, E)}", file=out)
        if len(set(subs.values())) > 1:
            print("FAIL: refined routes disagree", file=out)
            status = EXIT_FAIL
    return status


def cmd_table(args, out) -> int:
    G, ref = parse_graph(args.graph)
    rows = table_rows(ref)
    print(rows_to_json(G, rows) if args.json else render_rows(G, rows), file=out)
    return EXIT_OK


def _verify_one(job) -> list[CheckResult]:
    doc, corrupt, caps = job
    limits.__dict__.update(caps)
    G = graph_from_document(doc)
    return run_suite(G, Digraph(G, 0), corrupt_signs=corrupt)


def cmd_verify(args, out) -> int:
    graphs = []
    if args.graph is not None:
        graphs.append(parse_graph(args.graph)[0])
    if args.random:
        graphs.extend(random_batch(args.random, args.seed, max_edges=args.random_edges))
    if not graphs:
        raise InputError("give a graph file or --random N")
    caps = asdict(limits)
    jobs = [(graph_to_document(G), args.corrupt_signs, caps) for G in graphs]
    if args.threads > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    failed = False
    names = [r.name for r in results[0]]
    for k, name in enumerate(names):
        bad = [(g, res[k]) for g, res in enumerate(results) if not res[k].ok]
        failed |= bool(bad)
        if not bad:
            print(f"PASS {name}", file=out)
        for g, res in bad:
            where = f" (graph {g}: {json.dumps(jobs[g][0])})" if len(graphs) > 1 else ""
            print(f"FAIL {name}{where}: {res.detail}", file=out)
    print(f"{len(graphs)} graph(s), {'failures found' if failed else 'all checks passed'}", file=out)
    return EXIT_FAIL if failed else EXIT_OK


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="activebij", description=__doc__.splitlines()[0])
    p.add_argument("--max-edges", type=int, help="override the enumeration caps")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tutte", help="Tutte polynomial")
    t.add_argument("graph")
    t.add_argument("--method", choices=[*METHODS, "all"], default="trees")
    t.set_defaults(run=cmd_tutte)

    a = sub.add_parser("alpha", help="active spanning tree of a reorientation")
    a.add_argument("graph")
    a.add_argument("--reorient", default="", help="edge ids to reverse, e.g. 2,3")
    a.add_argument("--route", choices=["decomposition", "dc", "both"], default="decomposition")
    a.add_argument("--refined", action="store_true", help="also print the refined image")
    a.set_defaults(run=cmd_alpha)

    tb = sub.add_parser("table", help="activity classes per spanning tree")
    tb.add_argument("graph")
    tb.add_argument("--json", action="store_true")
    tb.set_defaults(run=cmd_table)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("graph", nargs="?")
    v.add_argument("--random", type=int, default=0, metavar="N", help="add N random multigraphs")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--random-edges", type=int, default=7, help="edge bound for random graphs")
    v.add_argument("--threads", type=int, default=1, help="worker processes")
    v.add_argument("--corrupt-signs", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(run=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.max_edges is not None:
        limits.max_edges = limits.max_orientation_edges = args.max_edges
    try:
        return args.run(args, out)
    except (InputError, DomainError, PreconditionError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"FAIL: invariant breach: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
