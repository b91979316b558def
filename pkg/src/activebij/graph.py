"""Ordered multigraphs and their minors.

A graph is stored as its ambient edge list plus two disjoint edge masks:
the live edges and the contracted edges. Deleted edges are simply absent
from both. Every minor therefore keeps the ambient edge ranks, and cycles,
cocycles and trees of minors are subsets of the same ground set.

Edge ``k`` has stored endpoints ``(tail, head)``; that order is the
reference direction used for all signs.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import cache
from itertools import combinations
from typing import NamedTuple

from .config import limits
from .edgesets import EdgeSet, bits, ranks, size, sort_key
from .errors import DomainError, InvalidSubsetError, ResourceLimitError


class OrderedGraph:
    """A minor of an ambient multigraph on a linearly ordered edge set."""

    __slots__ = ("_hash", "contracted", "endpoints", "live", "vertex_count")

    def __init__(
        self,
        vertex_count: int,
        endpoints: Sequence[tuple[int, int]],
        live: EdgeSet | None = None,
        contracted: EdgeSet = 0,
    ):
        endpoints = tuple((int(u), int(v)) for u, v in endpoints)
        for u, v in endpoints:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise DomainError(f"endpoint out of range in edge {(u, v)}")
        ground = (1 << len(endpoints)) - 1
        if live is None:
            live = ground
        if live & ~ground or contracted & ~ground:
            raise InvalidSubsetError("edge set outside the ambient edge list")
        if live & contracted:
            raise InvalidSubsetError("live and contracted edges overlap")
        self.vertex_count = vertex_count
        self.endpoints = endpoints
        self.live = live
        self.contracted = contracted
        self._hash = hash((vertex_count, endpoints, live, contracted))

    def _key(self):
        return (self.vertex_count, self.endpoints, self.live, self.contracted)

    def __eq__(self, other):
        return isinstance(other, OrderedGraph) and (
            self is other or (self._hash == other._hash and self._key() == other._key())
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (
            f"OrderedGraph(vertices={self.vertex_count}, edges={list(self.endpoints)}, "
            f"live={ranks(self.live)}, contracted={ranks(self.contracted)})"
        )

    @property
    def ground(self) -> EdgeSet:
        """All ambient edges, live or not."""
        return (1 << len(self.endpoints)) - 1

    def edges(self) -> list[tuple[int, tuple[int, int]]]:
        """Live edges as ``(rank, (tail, head))`` with merged vertex labels."""
        ends = structure(self).ends
        return [(i + 1, ends[i]) for i in range(len(self.endpoints)) if self.live >> i & 1]

    def vertices(self) -> list[int]:
        return list(structure(self).vertices)

    def __len__(self):
        return size(self.live)


def from_edge_list(vertex_count: int, edges: Sequence[tuple[int, int]]) -> OrderedGraph:
    return OrderedGraph(vertex_count, edges)


def _derived(G: OrderedGraph, live: EdgeSet, contracted: EdgeSet) -> OrderedGraph:
    # the ambient data is already validated
    H = object.__new__(OrderedGraph)
    H.vertex_count = G.vertex_count
    H.endpoints = G.endpoints
    H.live = live
    H.contracted = contracted
    H._hash = hash((G.vertex_count, G.endpoints, live, contracted))
    return H


def restrict(G: OrderedGraph, F: EdgeSet) -> OrderedGraph:
    """G(F): keep only the edges of F."""
    if F & ~G.live:
        raise InvalidSubsetError(f"{ranks(F)} is not a subset of the live edges {ranks(G.live)}")
    return _derived(G, F, G.contracted)


def contract(G: OrderedGraph, F: EdgeSet) -> OrderedGraph:
    """G/F: merge the endpoints of every edge of F."""
    if F & ~G.live:
        raise InvalidSubsetError(f"{ranks(F)} is not a subset of the live edges {ranks(G.live)}")
    return _derived(G, G.live & ~F, G.contracted | F)


def delete(G: OrderedGraph, F: EdgeSet) -> OrderedGraph:
    return restrict(G, G.live & ~F)


def minor(G: OrderedGraph, keep: EdgeSet, contracted: EdgeSet) -> OrderedGraph:
    """G(keep)/contracted, with ``contracted`` a subset of ``keep``."""
    return contract(restrict(G, keep), contracted)


# -- derived structure -------------------------------------------------------


class Structure(NamedTuple):
    ends: tuple  # per ambient edge index: merged (tail, head), or None if not live
    vertices: tuple[int, ...]  # merged vertices touched by live edges
    components: tuple[tuple[tuple[int, ...], EdgeSet], ...]
    rank: int


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@cache
def structure(G: OrderedGraph) -> Structure:
    uf = _UnionFind(G.vertex_count)
    for b in bits(G.contracted):
        u, v = G.endpoints[b.bit_length() - 1]
        uf.union(u, v)
    ends: list = [None] * len(G.endpoints)
    touched = set()
    for i, (u, v) in enumerate(G.endpoints):
        if G.live >> i & 1:
            e = (uf.find(u), uf.find(v))
            ends[i] = e
            touched.update(e)
    vertices = tuple(sorted(touched))

    comp = _UnionFind(G.vertex_count)
    for e in ends:
        if e is not None:
            comp.union(*e)
    groups: dict[int, list[int]] = {}
    for v in vertices:
        groups.setdefault(comp.find(v), []).append(v)
    edge_groups: dict[int, int] = {}
    for i, e in enumerate(ends):
        if e is not None:
            r = comp.find(e[0])
            edge_groups[r] = edge_groups.get(r, 0) | (1 << i)
    components = tuple(
        (tuple(vs), edge_groups[r]) for r, vs in sorted(groups.items(), key=lambda kv: kv[1][0])
    )
    rank = len(vertices) - len(components)
    return Structure(tuple(ends), vertices, components, rank)


def rank(G: OrderedGraph, A: EdgeSet | None = None) -> int:
    """Size of a spanning forest of G(A)."""
    st = structure(G)
    if A is None:
        return st.rank
    if A & ~G.live:
        raise InvalidSubsetError(f"{ranks(A)} is not a subset of the live edges")
    uf = _UnionFind(G.vertex_count)
    r = 0
    for b in bits(A):
        if uf.union(*st.ends[b.bit_length() - 1]):
            r += 1
    return r


def is_connected(G: OrderedGraph) -> bool:
    return len(structure(G).components) <= 1


def is_independent(G: OrderedGraph, A: EdgeSet) -> bool:
    return rank(G, A) == size(A)


# -- cycles and cocycles -----------------------------------------------------


class SignedEdgeSet(NamedTuple):
    """A signed cycle or cocycle, signs relative to stored edge directions."""

    positive: EdgeSet
    negative: EdgeSet

    @property
    def support(self) -> EdgeSet:
        return self.positive | self.negative

    def __neg__(self):
        return SignedEdgeSet(self.negative, self.positive)


def _check_cap(G: OrderedGraph) -> None:
    if size(G.live) > limits.max_edges:
        raise ResourceLimitError(
            f"{size(G.live)} live edges exceeds the listing cap of {limits.max_edges}"
        )


def _adjacency(G: OrderedGraph) -> dict[int, list[tuple[int, int, bool]]]:
    """vertex -> [(edge index, other end, leaves this vertex as its tail)]"""
    adj: dict[int, list[tuple[int, int, bool]]] = {}
    for i, e in enumerate(structure(G).ends):
        if e is None or e[0] == e[1]:
            continue
        u, v = e
        adj.setdefault(u, []).append((i, v, True))
        adj.setdefault(v, []).append((i, u, False))
    return adj


def signed_cycles(G: OrderedGraph) -> tuple[SignedEdgeSet, ...]:
    _check_cap(G)
    return _signed_cycles(G)


@cache
def _signed_cycles(G: OrderedGraph) -> tuple[SignedEdgeSet, ...]:
    """Every cycle once, signed so that its smallest edge is positive."""
    ends = structure(G).ends
    adj = _adjacency(G)
    found: list[SignedEdgeSet] = []
    for i, e in enumerate(ends):
        if e is None:
            continue
        bit = 1 << i
        tail, head = e
        if tail == head:
            found.append(SignedEdgeSet(bit, 0))
            continue
        # Walk from head back to tail using only larger edges, so each cycle
        # is produced exactly once, from its smallest edge.
        stack = [(head, bit, bit, 1 << head)]
        while stack:
            cur, supp, pos, seen = stack.pop()
            for j, w, forward in adj.get(cur, ()):
                if j <= i:
                    continue
                jb = 1 << j
                s2, p2 = supp | jb, pos | (jb if forward else 0)
                if w == tail:
                    found.append(SignedEdgeSet(p2, s2 & ~p2))
                elif not seen >> w & 1:
                    stack.append((w, s2, p2, seen | (1 << w)))
    found.sort(key=lambda c: sort_key(c.support))
    return tuple(found)


def signed_cocycles(G: OrderedGraph) -> tuple[SignedEdgeSet, ...]:
    _check_cap(G)
    return _signed_cocycles(G)


@cache
def _signed_cocycles(G: OrderedGraph) -> tuple[SignedEdgeSet, ...]:
    """Every cocycle (minimal cut) once, signed so that its smallest edge is positive."""
    st = structure(G)
    found: list[SignedEdgeSet] = []
    for verts, emask in st.components:
        k = len(verts)
        if k < 2:
            continue
        local = {v: n for n, v in enumerate(verts)}
        nbr = [0] * k
        cross = []  # (edge bit, local tail, local head)
        for b in bits(emask):
            u, v = st.ends[b.bit_length() - 1]
            if u == v:
                continue
            lu, lv = local[u], local[v]
            nbr[lu] |= 1 << lv
            nbr[lv] |= 1 << lu
            cross.append((b, lu, lv))
        full = (1 << k) - 1

        def connected(side: int) -> bool:
            start = side & -side
            reach, frontier = start, start
            while frontier:
                nxt = 0
                for n in range(k):
                    if frontier >> n & 1:
                        nxt |= nbr[n]
                nxt &= side & ~reach
                reach |= nxt
                frontier = nxt
            return reach == side

        # the side containing the first vertex
        for rest in range(1 << (k - 1)):
            side = 1 | (rest << 1)
            if side == full:
                continue
            if not (connected(side) and connected(full & ~side)):
                continue
            out_edges = in_edges = 0
            for b, lu, lv in cross:
                su, sv = side >> lu & 1, side >> lv & 1
                if su and not sv:
                    out_edges |= b
                elif sv and not su:
                    in_edges |= b
            supp = out_edges | in_edges
            if (supp & -supp) & out_edges:
                found.append(SignedEdgeSet(out_edges, in_edges))
            else:
                found.append(SignedEdgeSet(in_edges, out_edges))
    found.sort(key=lambda c: sort_key(c.support))
    return tuple(found)


def all_cycles(G: OrderedGraph) -> list[EdgeSet]:
    return [c.support for c in signed_cycles(G)]


def all_cocycles(G: OrderedGraph) -> list[EdgeSet]:
    return [d.support for d in signed_cocycles(G)]


# -- spanning trees ----------------------------------------------------------


@cache
def bases(G: OrderedGraph) -> tuple[EdgeSet, ...]:
    """Maximal spanning forests of G, lexicographically ordered.

    For a connected graph these are the spanning trees. Disconnected minors
    show up inside filtrations and convolutions, where forests are the
    right objects.
    """
    st = structure(G)
    live_idx = [i for i in range(len(st.ends)) if st.ends[i] is not None]
    r = st.rank
    out = []
    for combo in combinations(live_idx, r):
        uf = _UnionFind(G.vertex_count)
        if all(uf.union(*st.ends[i]) for i in combo):
            out.append(sum(1 << i for i in combo))
    return tuple(out)


def spanning_trees(G: OrderedGraph) -> list[EdgeSet]:
    if not is_connected(G):
        raise DomainError("spanning trees requested for a disconnected graph")
    return list(bases(G))


def is_basis(G: OrderedGraph, T: EdgeSet) -> bool:
    return not (T & ~G.live) and size(T) == structure(G).rank and is_independent(G, T)


def _require_basis(G: OrderedGraph, T: EdgeSet) -> None:
    if not is_basis(G, T):
        raise DomainError(f"{ranks(T)} is not a spanning tree of the graph")


@cache
def fundamentals(G: OrderedGraph, T: EdgeSet) -> tuple:
    """Per ambient edge index: the signed fundamental cycle (edge outside T)
    or fundamental cocycle (edge in T), with that edge positive; None for
    edges that are not live."""
    _require_basis(G, T)
    st = structure(G)
    ends = st.ends
    tree_adj: dict[int, list[tuple[int, int, bool]]] = {}
    for b in bits(T):
        i = b.bit_length() - 1
        u, v = ends[i]
        tree_adj.setdefault(u, []).append((i, v, True))
        tree_adj.setdefault(v, []).append((i, u, False))

    # root every tree component; parent edge and depth give paths
    parent: dict[int, tuple[int, int, bool] | None] = {}
    depth: dict[int, int] = {}
    order: list[int] = []
    for root in st.vertices:
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = [root]
        while queue:
            x = queue.pop()
            order.append(x)
            for i, w, fwd in tree_adj.get(x, ()):
                if w not in parent:
                    # edge i goes x -> w when fwd, so from w towards the root
                    # it is traversed head -> tail
                    parent[w] = (i, x, not fwd)
                    depth[w] = depth[x] + 1
                    queue.append(w)

    result: list = [None] * len(ends)
    for i, e in enumerate(ends):
        if e is None or T >> i & 1:
            continue
        bit = 1 << i
        tail, head = e
        # cycle: along e from tail to head, then tree path head -> tail
        pos, neg = bit, 0
        a, b = head, tail
        up_from_a = []  # edges walked from a upward: (edge, forward-when-walking-up)
        up_from_b = []
        while a != b:
            if depth[a] >= depth[b]:
                i2, pa, fwd_up = parent[a]
                up_from_a.append((i2, fwd_up))
                a = pa
            else:
                i2, pb, fwd_up = parent[b]
                up_from_b.append((i2, fwd_up))
                b = pb
        for i2, fwd_up in up_from_a:
            if fwd_up:
                pos |= 1 << i2
            else:
                neg |= 1 << i2
        # the b-side is walked downward, reversing direction
        for i2, fwd_up in up_from_b:
            if fwd_up:
                neg |= 1 << i2
            else:
                pos |= 1 << i2
        result[i] = SignedEdgeSet(pos, neg)

    for bt in bits(T):
        i = bt.bit_length() - 1
        tail, head = ends[i]
        side = {tail}
        queue = [tail]
        while queue:
            x = queue.pop()
            for j, w, _ in tree_adj.get(x, ()):
                if j != i and w not in side:
                    side.add(w)
                    queue.append(w)
        pos = neg = 0
        for j, e in enumerate(ends):
            if e is None:
                continue
            su, sv = e[0] in side, e[1] in side
            if su and not sv:
                pos |= 1 << j
            elif sv and not su:
                neg |= 1 << j
        result[i] = SignedEdgeSet(pos, neg)
    return tuple(result)


def fundamental_cycle(G: OrderedGraph, T: EdgeSet, e: int) -> SignedEdgeSet:
    """C(T;e) for a live edge ``e`` (rank) outside T, with ``e`` positive."""
    if not (G.live >> (e - 1) & 1):
        raise DomainError(f"edge {e} is not live")
    if T >> (e - 1) & 1:
        raise DomainError(f"edge {e} belongs to the tree")
    return fundamentals(G, T)[e - 1]


def fundamental_cocycle(G: OrderedGraph, T: EdgeSet, b: int) -> SignedEdgeSet:
    """C*(T;b) for an edge ``b`` (rank) of T, with ``b`` positive."""
    if not (T >> (b - 1) & 1):
        raise DomainError(f"edge {b} does not belong to the tree")
    return fundamentals(G, T)[b - 1]


# -- edge types and connectivity ---------------------------------------------


@cache
def classify_edge(G: OrderedGraph, e: int) -> str:
    """'loop', 'isthmus' or 'ordinary' for a live edge given by rank."""
    if not (G.live >> (e - 1) & 1):
        raise DomainError(f"edge {e} is not live")
    u, v = structure(G).ends[e - 1]
    if u == v:
        return "loop"
    if rank(G, G.live & ~(1 << (e - 1))) < structure(G).rank:
        return "isthmus"
    return "ordinary"


def has_loop(G: OrderedGraph) -> bool:
    return any(e is not None and e[0] == e[1] for e in structure(G).ends)


def has_isthmus(G: OrderedGraph) -> bool:
    return any(classify_edge(G, r) == "isthmus" for r in ranks(G.live))


@cache
def is_2connected_loopless(G: OrderedGraph) -> bool:
    """Loopless and 2-connected; a loopless graph on two vertices counts."""
    st = structure(G)
    if not G.live or has_loop(G) or len(st.components) != 1:
        return False
    verts = st.vertices
    if len(verts) <= 2:
        return True
    adj = _adjacency(G)
    for cut in verts:
        start = next(v for v in verts if v != cut)
        seen = {cut, start}
        queue = [start]
        while queue:
            x = queue.pop()
            for _, w, _ in adj.get(x, ()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) < len(verts):
            return False
    return True


def is_cyclic_flat(G: OrderedGraph, F: EdgeSet) -> bool:
    """G/F has no loop and G(F) has no isthmus."""
    return not has_loop(contract(G, F)) and not has_isthmus(restrict(G, F))
