"""Tree activities, subset activities over tree intervals, and the matching
four-parameter activities of reorientations."""

from __future__ import annotations

from functools import cache
from typing import NamedTuple

from .edgesets import EdgeSet, bits, lowest, ranks
from .errors import DomainError, InvalidSubsetError
from .graph import OrderedGraph, bases, fundamentals
from .orientation import Digraph, activity_sets


class TreeActivities(NamedTuple):
    internal: EdgeSet
    external: EdgeSet


class SubsetActivities(NamedTuple):
    int_: EdgeSet
    p: EdgeSet
    ext: EdgeSet
    q: EdgeSet


class OrientationActivities(NamedTuple):
    theta_star: EdgeSet
    theta_star_bar: EdgeSet
    theta: EdgeSet
    theta_bar: EdgeSet


@cache
def tree_activities(G: OrderedGraph, T: EdgeSet) -> TreeActivities:
    """Tree edges minimal in their fundamental cocycle, and non-tree edges
    minimal in their fundamental cycle."""
    fund = fundamentals(G, T)  # raises DomainError for non-trees
    internal = external = 0
    for b in bits(G.live):
        s = fund[b.bit_length() - 1]
        if lowest(s.positive | s.negative) == b:
            if T & b:
                internal |= b
            else:
                external |= b
    return TreeActivities(internal, external)


def interval_of(G: OrderedGraph, T: EdgeSet) -> tuple[EdgeSet, EdgeSet]:
    act = tree_activities(G, T)
    return T & ~act.internal, T | act.external


def locate_interval(G: OrderedGraph, A: EdgeSet) -> EdgeSet:
    """The spanning tree whose interval contains A, found by scanning trees."""
    if A & ~G.live:
        raise InvalidSubsetError(f"{ranks(A)} is not a subset of the live edges")
    for T in bases(G):
        lower, upper = interval_of(G, T)
        if lower & ~A == 0 and A & ~upper == 0:
            return T
    raise DomainError(f"no tree interval contains {ranks(A)}")


def subset_activities(G: OrderedGraph, A: EdgeSet) -> SubsetActivities:
    T = locate_interval(G, A)
    act = tree_activities(G, T)
    return SubsetActivities(
        int_=act.internal & A,
        p=act.internal & ~A,
        ext=act.external & ~A,
        q=act.external & A,
    )


def orientation_activities(ref: Digraph, A: EdgeSet) -> OrientationActivities:
    """Activities of -_A(ref), split by whether the edge was reoriented."""
    o = activity_sets(ref.reoriented(A))
    return OrientationActivities(
        theta_star=o.dual_active & ~A,
        theta_star_bar=o.dual_active & A,
        theta=o.active & ~A,
        theta_bar=o.active & A,
    )
