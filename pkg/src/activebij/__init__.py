"""Active bijection between orientations and spanning trees of ordered graphs."""

from .edgesets import EdgeSet, mask, ranks
from .graph import OrderedGraph, contract, restrict
from .orientation import Digraph

__all__ = ["Digraph", "EdgeSet", "OrderedGraph", "contract", "mask", "ranks", "restrict"]
