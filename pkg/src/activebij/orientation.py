"""Directed graphs as a base graph plus a set of reversed edges."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache
from typing import NamedTuple

from .config import limits
from .edgesets import EdgeSet, lowest, ranks, size, subsets
from .errors import DomainError, InvalidSubsetError, ResourceLimitError
from .graph import (
    OrderedGraph,
    SignedEdgeSet,
    contract,
    restrict,
    signed_cocycles,
    signed_cycles,
)


@dataclass(frozen=True)
class Digraph:
    """``base`` with the edges of ``reorient`` flipped relative to their
    stored (tail, head) order."""

    base: OrderedGraph
    reorient: EdgeSet = 0

    def __post_init__(self):
        if self.reorient & ~self.base.live:
            raise InvalidSubsetError("reoriented edges must be live")

    @property
    def live(self) -> EdgeSet:
        return self.base.live

    def reoriented(self, A: EdgeSet) -> Digraph:
        """-_A of this digraph."""
        return Digraph(self.base, self.reorient ^ A)

    def opposite(self) -> Digraph:
        return Digraph(self.base, self.reorient ^ self.base.live)

    def restrict(self, F: EdgeSet) -> Digraph:
        return Digraph(restrict(self.base, F), self.reorient & F)

    def contract(self, F: EdgeSet) -> Digraph:
        g = contract(self.base, F)
        return Digraph(g, self.reorient & g.live)

    def delete(self, F: EdgeSet) -> Digraph:
        return self.restrict(self.base.live & ~F)

    def minor(self, keep: EdgeSet, contracted: EdgeSet) -> Digraph:
        """Ğ(keep)/contracted."""
        return self.restrict(keep).contract(contracted)

    def sign(self, signed: SignedEdgeSet, edge_bit: EdgeSet) -> int:
        """+1 or -1: the sign of an edge of ``signed`` under this orientation."""
        s = 1 if signed.positive & edge_bit else -1
        return -s if self.reorient & edge_bit else s


class ActivitySets(NamedTuple):
    active: EdgeSet  # minima of directed cycles
    dual_active: EdgeSet  # minima of directed cocycles


def _is_directed(s: SignedEdgeSet, R: EdgeSet) -> bool:
    hit = R & (s.positive | s.negative)
    return hit == s.positive or hit == s.negative


@cache
def directed_cycles(dg: Digraph) -> tuple[EdgeSet, ...]:
    R = dg.reorient
    return tuple(c.support for c in signed_cycles(dg.base) if _is_directed(c, R))


@cache
def directed_cocycles(dg: Digraph) -> tuple[EdgeSet, ...]:
    R = dg.reorient
    return tuple(d.support for d in signed_cocycles(dg.base) if _is_directed(d, R))


@cache
def activity_sets(dg: Digraph) -> ActivitySets:
    active = dual = 0
    for c in directed_cycles(dg):
        active |= lowest(c)
    for d in directed_cocycles(dg):
        dual |= lowest(d)
    return ActivitySets(active, dual)


def is_acyclic(dg: Digraph) -> bool:
    return not directed_cycles(dg)


def is_strongly_connected(dg: Digraph) -> bool:
    return not directed_cocycles(dg)


def cyclic_part(dg: Digraph) -> EdgeSet:
    """Union of all directed cycles."""
    out = 0
    for c in directed_cycles(dg):
        out |= c
    return out


def _edge_bit(dg: Digraph, p: int) -> EdgeSet:
    bit = 1 << (p - 1)
    if not dg.live & bit:
        raise DomainError(f"edge {p} is not live")
    return bit


def is_bipolar(dg: Digraph, p: int) -> bool:
    """Every edge lies in a directed cocycle and every directed cocycle contains p."""
    bit = _edge_bit(dg, p)
    covered = 0
    for d in directed_cocycles(dg):
        if not d & bit:
            return False
        covered |= d
    return covered == dg.live


def is_cyclic_bipolar(dg: Digraph, p: int) -> bool:
    """Every edge lies in a directed cycle and every directed cycle contains p."""
    bit = _edge_bit(dg, p)
    covered = 0
    for c in directed_cycles(dg):
        if not c & bit:
            return False
        covered |= c
    return covered == dg.live


def reorientations(G: OrderedGraph) -> Iterator[EdgeSet]:
    """All 2^|E| reorientation subsets of G."""
    if size(G.live) > limits.max_orientation_edges:
        raise ResourceLimitError(
            f"{size(G.live)} edges exceeds the orientation cap of {limits.max_orientation_edges}"
        )
    return subsets(G.live)


def describe(dg: Digraph) -> str:
    return f"Digraph(edges={[r for r in ranks(dg.live)]}, reversed={ranks(dg.reorient)})"
