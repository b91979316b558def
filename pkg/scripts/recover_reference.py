"""Score all 64 reference orientations of K4 against the transcribed table.

For each candidate reference, count how many listed class members fall in
the class of their row's tree. Prints the ranking and the unmatched entries
of the winners.
"""

import argparse
import json
from pathlib import Path

from activebij.bijection import alpha
from activebij.edgesets import from_ranks, label
from activebij.graph import OrderedGraph
from activebij.orientation import Digraph, reorientations

DEFAULT_TABLE = Path(__file__).resolve().parents[1] / "tests" / "data" / "k4_table.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--table", type=Path, default=DEFAULT_TABLE)
    ap.add_argument("--top", type=int, default=5)
    args = ap.parse_args()

    table = json.loads(args.table.read_text())
    G = OrderedGraph(table["vertices"], [tuple(e) for e in table["edge_pairs"]])
    fibers = {}
    for R in reorientations(G):
        fibers.setdefault(alpha(Digraph(G, R)), set()).add(R)
    listed = [(from_ranks(r["tree"]), from_ranks(A)) for r in table["rows"] for A in r["listed"]]

    scores = {ref: sum((A ^ ref) in fibers[T] for T, A in listed) for ref in reorientations(G)}
    ranking = sorted(scores, key=lambda ref: (-scores[ref], ref))
    print(f"{len(listed)} listed members")
    for ref in ranking[: args.top]:
        print(f"reference reversing {label(ref, G.live):>8}: {scores[ref]} matched")
    best = scores[ranking[0]]
    for ref in (r for r in ranking if scores[r] == best):
        misses = [(label(T), label(A ^ ref)) for T, A in listed if (A ^ ref) not in fibers[T]]
        print(f"unmatched with reference {label(ref, G.live)}: " + ", ".join(f"{a} (row {t})" for t, a in misses))


if __name__ == "__main__":
    main()
