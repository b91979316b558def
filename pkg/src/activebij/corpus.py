"""Small-graph corpora: exhaustive connected multigraphs up to isomorphism,
and seeded random multigraphs with shuffled edge order and directions."""

from __future__ import annotations

import random
from functools import cache
from itertools import permutations

from .graph import OrderedGraph

Pairs = tuple[tuple[int, int], ...]


def _canonical(n: int, pairs: Pairs) -> Pairs:
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in pairs))
        if best is None or form < best:
            best = form
    return best


@cache
def _classes(max_vertices: int, max_edges: int) -> tuple[tuple[int, Pairs], ...]:
    """Connected loopy multigraphs without isolated vertices, one per
    isomorphism class, grown one edge at a time (every such graph with two
    or more edges loses an edge to a smaller one: a cycle edge, or a leaf)."""
    level = {(1, ((0, 0),)), (2, ((0, 1),))} if max_vertices >= 2 else {(1, ((0, 0),))}
    found = set(level)
    for _ in range(max_edges - 1):
        nxt = set()
        for n, pairs in level:
            options = [(u, v) for u in range(n) for v in range(u, n)]
            for extra in options:
                nxt.add((n, _canonical(n, pairs + (extra,))))
            if n < max_vertices:
                for u in range(n):
                    nxt.add((n + 1, _canonical(n + 1, pairs + ((u, n),))))
        level = nxt
        found |= nxt
    return tuple(sorted(found, key=lambda g: (len(g[1]), g[0], g[1])))


def exhaustive(max_vertices: int = 5, max_edges: int = 7) -> list[OrderedGraph]:
    """One ordered graph per isomorphism class, edges in canonical order,
    each directed from its smaller to its larger vertex."""
    return [OrderedGraph(n, pairs) for n, pairs in _classes(max_vertices, max_edges)]


def random_multigraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8,
                      loop_rate: float = 0.1) -> OrderedGraph:
    """A connected multigraph with random edge order and directions."""
    m = rng.randint(1, max_edges)
    n = rng.randint(1, min(max_vertices, m + 1))
    pairs = [(rng.randrange(v), v) for v in range(1, n)]  # random spanning tree
    while len(pairs) < m:
        if n == 1 or rng.random() < loop_rate:
            u = rng.randrange(n)
            pairs.append((u, u))
        else:
            u, v = rng.sample(range(n), 2)
            pairs.append((u, v))
    rng.shuffle(pairs)
    pairs = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in pairs]
    return OrderedGraph(n, pairs)


def random_batch(count: int, seed: int, max_vertices: int = 5, max_edges: int = 8) -> list[OrderedGraph]:
    rng = random.Random(seed)
    return [random_multigraph(rng, max_vertices, max_edges) for _ in range(count)]
