"""Filtrations of an ordered graph, the active filtration of a digraph,
activity classes, and exhaustive enumeration of connected filtrations."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache
from typing import NamedTuple

from .config import limits
from .edgesets import EdgeSet, bits, label, lowest, ranks, size, sort_key, subsets
from .errors import InvariantError, ResourceLimitError
from .graph import (
    OrderedGraph,
    is_2connected_loopless,
    is_cyclic_flat,
    minor,
    structure,
)
from .orientation import (
    Digraph,
    activity_sets,
    directed_cocycles,
    directed_cycles,
    is_bipolar,
    is_cyclic_bipolar,
)

CYCLIC = "cyclic"
ACYCLIC = "acyclic"


@dataclass(frozen=True)
class Filtration:
    """``chain_cyclic`` runs upward from the empty set to the cyclic flat,
    ``chain_acyclic`` runs upward from the cyclic flat to the ground set."""

    chain_cyclic: tuple[EdgeSet, ...]
    chain_acyclic: tuple[EdgeSet, ...]

    @property
    def cyclic_flat(self) -> EdgeSet:
        return self.chain_acyclic[0]

    @property
    def iota(self) -> int:
        return len(self.chain_acyclic) - 1

    @property
    def epsilon(self) -> int:
        return len(self.chain_cyclic) - 1

    def acyclic_layers(self) -> list[tuple[EdgeSet, EdgeSet]]:
        """(F_{k-1}, F_k) for k = 1..iota."""
        c = self.chain_acyclic
        return [(c[k - 1], c[k]) for k in range(1, len(c))]

    def cyclic_layers(self) -> list[tuple[EdgeSet, EdgeSet]]:
        """(F'_k, F'_{k-1}) for k = 1..epsilon, outermost layer first."""
        c = self.chain_cyclic[::-1]
        return [(c[k], c[k - 1]) for k in range(1, len(c))]

    def text(self, ground: EdgeSet) -> str:
        """Chain written bottom-up with the cyclic flat in brackets."""
        out = [label(F, ground) for F in self.chain_cyclic[:-1]]
        out.append("[" + label(self.cyclic_flat, ground) + "]")
        out.extend(label(F, ground) for F in self.chain_acyclic[1:])
        return " < ".join(out)

    def sort_key(self):
        return (
            tuple(sort_key(F) for F in self.chain_cyclic),
            tuple(sort_key(F) for F in self.chain_acyclic),
        )


class Part(NamedTuple):
    min_edge: int
    part: EdgeSet
    kind: str


@dataclass(frozen=True)
class ActivePartition:
    parts: tuple[Part, ...]  # sorted by min_edge

    @classmethod
    def of(cls, parts) -> ActivePartition:
        return cls(tuple(sorted(parts)))

    @property
    def cyclic_flat(self) -> EdgeSet:
        out = 0
        for p in self.parts:
            if p.kind == CYCLIC:
                out |= p.part
        return out

    @property
    def ground(self) -> EdgeSet:
        out = 0
        for p in self.parts:
            out |= p.part
        return out

    def part_of(self, edge_bit: EdgeSet) -> Part:
        for p in self.parts:
            if p.part & edge_bit:
                return p
        raise KeyError(edge_bit)

    def without(self, edge_bit: EdgeSet) -> ActivePartition:
        """Remove one edge from its part, dropping the part if it empties."""
        out = []
        for p in self.parts:
            rest = p.part & ~edge_bit
            if rest:
                out.append(Part(lowest(rest).bit_length(), rest, p.kind))
        return ActivePartition.of(out)

    def text(self, ground: EdgeSet) -> str:
        acyc = [label(p.part, ground) for p in self.parts if p.kind == ACYCLIC]
        cyc = [label(p.part, ground) for p in self.parts if p.kind == CYCLIC]
        left = "+".join(acyc) if acyc else "-"
        right = "+".join(cyc) if cyc else "-"
        return f"{left} | cyclic {right}"


def partition_of(f: Filtration) -> ActivePartition:
    parts = []
    for lo, hi in f.acyclic_layers():
        d = hi & ~lo
        parts.append(Part(lowest(d).bit_length(), d, ACYCLIC))
    for lo, hi in f.cyclic_layers():
        d = hi & ~lo
        parts.append(Part(lowest(d).bit_length(), d, CYCLIC))
    return ActivePartition.of(parts)


# -- active filtration of a digraph ------------------------------------------


@cache
def active_filtration(dg: Digraph) -> Filtration:
    E = dg.live
    cycles = directed_cycles(dg)
    cocycles = directed_cocycles(dg)
    act = activity_sets(dg)

    acyclic = []
    for a in bits(act.dual_active):
        removed = 0
        for D in cocycles:
            if lowest(D) >= a:
                removed |= D
        acyclic.append(E & ~removed)
    acyclic.append(E)

    cyclic = []
    for a in bits(act.active):
        kept = 0
        for C in cycles:
            if lowest(C) >= a:
                kept |= C
        cyclic.append(kept)
    cyclic.append(0)
    cyclic.reverse()

    if cyclic[-1] != acyclic[0]:
        raise InvariantError("union of directed cycles differs from the complement of directed cocycles")
    return Filtration(tuple(cyclic), tuple(acyclic))


@cache
def active_partition(dg: Digraph) -> ActivePartition:
    return partition_of(active_filtration(dg))


def active_minors(dg: Digraph) -> list[tuple[Digraph, str]]:
    """Ğ(F_k)/F_{k-1} (bipolar) and Ğ(F'_{k-1})/F'_k (cyclic-bipolar)."""
    f = active_filtration(dg)
    out = []
    for lo, hi in f.acyclic_layers():
        m = dg.minor(hi, lo)
        if not is_bipolar(m, lowest(hi & ~lo).bit_length()):
            raise InvariantError("acyclic active minor is not bipolar")
        out.append((m, ACYCLIC))
    for lo, hi in f.cyclic_layers():
        m = dg.minor(hi, lo)
        if not is_cyclic_bipolar(m, lowest(hi & ~lo).bit_length()):
            raise InvariantError("cyclic active minor is not cyclic-bipolar")
        out.append((m, CYCLIC))
    return out


# -- filtrations of a graph --------------------------------------------------


def filtration_minors(G: OrderedGraph, f: Filtration) -> list[tuple[OrderedGraph, str]]:
    out = [(minor(G, hi, lo), ACYCLIC) for lo, hi in f.acyclic_layers()]
    out += [(minor(G, hi, lo), CYCLIC) for lo, hi in f.cyclic_layers()]
    return out


def _strictly_nested(chain) -> bool:
    return all(a & ~b == 0 and a != b for a, b in zip(chain, chain[1:]))


def is_filtration(G: OrderedGraph, f: Filtration) -> bool:
    if not f.chain_cyclic or not f.chain_acyclic:
        return False
    if f.chain_cyclic[0] != 0 or f.chain_acyclic[-1] != G.live:
        return False
    if f.chain_cyclic[-1] != f.chain_acyclic[0]:
        return False
    if not (_strictly_nested(f.chain_cyclic) and _strictly_nested(f.chain_acyclic)):
        return False
    acyc_mins = [lowest(hi & ~lo) for lo, hi in f.acyclic_layers()]
    cyc_mins = [lowest(hi & ~lo) for lo, hi in f.cyclic_layers()]
    return all(a < b for a, b in zip(acyc_mins, acyc_mins[1:])) and all(
        a < b for a, b in zip(cyc_mins, cyc_mins[1:])
    )


def _single_edge_kind(H: OrderedGraph) -> str | None:
    if size(H.live) != 1:
        return None
    u, v = next(e for e in structure(H).ends if e is not None)
    return "loop" if u == v else "isthmus"


def layer_is_connected(H: OrderedGraph, kind: str) -> bool:
    """A layer minor of a connected filtration: 2-connected loopless with at
    least two edges, or a single isthmus (acyclic) / single loop (cyclic)."""
    single = _single_edge_kind(H)
    if single is not None:
        return single == ("isthmus" if kind == ACYCLIC else "loop")
    return size(H.live) >= 2 and is_2connected_loopless(H)


def filtration_weight(G: OrderedGraph, f: Filtration) -> int:
    """Product of beta over acyclic layers and beta* over cyclic layers."""
    from .tutte import beta, beta_star

    w = 1
    for H, kind in filtration_minors(G, f):
        w *= beta(H) if kind == ACYCLIC else beta_star(H)
        if not w:
            return 0
    return w


def is_connected_filtration(G: OrderedGraph, f: Filtration) -> bool:
    """Checked both by layer connectivity and by a nonzero beta product."""
    if not is_filtration(G, f):
        return False
    by_structure = all(layer_is_connected(H, kind) for H, kind in filtration_minors(G, f))
    by_beta = filtration_weight(G, f) != 0
    if by_structure != by_beta:
        raise InvariantError("layer connectivity and beta product disagree")
    return by_structure


def _chains(G: OrderedGraph, bottom: EdgeSet, top: EdgeSet, kind: str) -> Iterator[list[EdgeSet]]:
    """Connected chains bottom = F_0 < ... < F_k = top, built upward for the
    acyclic side. For the cyclic side they are built downward from ``top``."""
    if bottom == top:
        yield [bottom]
        return
    if kind == ACYCLIC:
        rest = top & ~bottom
        first = lowest(rest)
        for extra in subsets(rest & ~first):
            nxt = bottom | first | extra
            if not layer_is_connected(minor(G, nxt, bottom), ACYCLIC):
                continue
            for tail in _chains(G, nxt, top, kind):
                yield [bottom] + tail
    else:
        # peel the outermost cyclic layer, which holds the smallest edge
        first = lowest(top & ~bottom)
        for extra in subsets(top & ~bottom & ~first):
            layer = first | extra
            inner = top & ~layer
            if not layer_is_connected(minor(G, top, inner), CYCLIC):
                continue
            for head in _chains(G, bottom, inner, kind):
                yield head + [top]


def enumerate_connected_filtrations(G: OrderedGraph) -> list[Filtration]:
    if size(G.live) > limits.max_filtration_edges:
        raise ResourceLimitError(
            f"{size(G.live)} edges exceeds the filtration cap of {limits.max_filtration_edges}"
        )
    return list(_enumerate(G))


@cache
def _enumerate(G: OrderedGraph) -> tuple[Filtration, ...]:
    out = []
    for Fc in subsets(G.live):
        # a connected filtration always sits on a cyclic flat
        if not is_cyclic_flat(G, Fc):
            continue
        acyclic = list(_chains(G, Fc, G.live, ACYCLIC))
        if not acyclic:
            continue
        cyclic = list(_chains(G, 0, Fc, CYCLIC))
        for c in cyclic:
            for a in acyclic:
                out.append(Filtration(tuple(c), tuple(a)))
    out.sort(key=Filtration.sort_key)
    if len(set(out)) != len(out):
        raise InvariantError("a filtration was enumerated twice")
    return tuple(out)


def inducing_filtrations(dg: Digraph) -> list[Filtration]:
    """Connected filtrations whose layer minors of ``dg`` are bipolar
    (acyclic layers) or cyclic-bipolar (cyclic layers) w.r.t. their minima."""
    out = []
    for f in enumerate_connected_filtrations(dg.base):
        ok = all(
            is_bipolar(dg.minor(hi, lo), lowest(hi & ~lo).bit_length())
            for lo, hi in f.acyclic_layers()
        ) and all(
            is_cyclic_bipolar(dg.minor(hi, lo), lowest(hi & ~lo).bit_length())
            for lo, hi in f.cyclic_layers()
        )
        if ok:
            out.append(f)
    return out


# -- activity classes ----------------------------------------------------------


@dataclass(frozen=True)
class ActivityClass:
    representative: EdgeSet  # reorientation relative to stored directions
    partition: ActivePartition

    def members(self) -> list[EdgeSet]:
        parts = [p.part for p in self.partition.parts]
        out = []
        for k in range(1 << len(parts)):
            flip = 0
            for n, P in enumerate(parts):
                if k >> n & 1:
                    flip |= P
            out.append(self.representative ^ flip)
        out.sort(key=sort_key)
        return out

    def __len__(self):
        return 1 << len(self.partition.parts)


def activity_class(dg: Digraph) -> ActivityClass:
    cls = ActivityClass(dg.reorient, active_partition(dg))
    # canonical representative: the smallest member
    return ActivityClass(cls.members()[0], cls.partition)


def is_active_fixed(ref: Digraph, A: EdgeSet) -> bool:
    return not activity_sets(ref.reoriented(A)).active & A


def is_dual_active_fixed(ref: Digraph, A: EdgeSet) -> bool:
    return not activity_sets(ref.reoriented(A)).dual_active & A


def class_representative(ref: Digraph, cls: ActivityClass) -> EdgeSet:
    """The member A (relative to ``ref``) that is active-fixed and dual-active-fixed."""
    hits = []
    for R in cls.members():
        A = R ^ ref.reorient
        if is_active_fixed(ref, A) and is_dual_active_fixed(ref, A):
            hits.append(A)
    if len(hits) != 1:
        raise InvariantError(f"class has {len(hits)} fixed representatives")
    return hits[0]


def describe_partition(p: ActivePartition) -> str:
    return p.text(p.ground)


def describe_parts(p: ActivePartition) -> list[tuple[int, list[int], str]]:
    return [(q.min_edge, ranks(q.part), q.kind) for q in p.parts]
