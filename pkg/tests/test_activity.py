import oracles
import pytest
from conftest import small_graphs
from hypothesis import given, settings

from activebij.activity import (
    interval_of,
    locate_interval,
    orientation_activities,
    subset_activities,
    tree_activities,
)
from activebij.edgesets import mask, ranks, size, subsets
from activebij.errors import DomainError
from activebij.graph import bases, rank
from activebij.orientation import Digraph, activity_sets


def test_tree_activity_examples(k3, k4):
    assert tree_activities(k3, mask(1, 2)) == (mask(1, 2), 0)
    assert tree_activities(k3, mask(2, 3)) == (0, mask(1))
    assert tree_activities(k4, mask(1, 3, 4)) == (mask(1, 4), 0)
    with pytest.raises(DomainError):
        tree_activities(k3, mask(1))


def test_intervals(k3, k4):
    assert interval_of(k4, mask(1, 3, 4)) == (mask(3), mask(1, 3, 4))
    assert interval_of(k3, mask(2, 3))[0] == mask(2, 3)
    assert interval_of(k4, mask(1, 2, 4))[0] == 0


def test_locate_interval(k3):
    assert locate_interval(k3, 0) == mask(1, 2)
    assert locate_interval(k3, k3.live) == mask(2, 3)
    for T in bases(k3):
        assert locate_interval(k3, T) == T


def test_subset_activities(k3):
    assert subset_activities(k3, 0) == (0, mask(1, 2), 0, 0)
    assert subset_activities(k3, k3.live) == (0, 0, 0, mask(1))
    T = mask(1, 3)
    s = subset_activities(k3, T)
    assert s.p == s.q == 0


def test_orientation_activities_extremes(k3):
    ref = Digraph(k3, 0)
    o = orientation_activities(ref, 0)
    assert o.theta_bar == o.theta_star_bar == 0
    o = orientation_activities(ref, k3.live)
    assert o.theta == o.theta_star == 0


def test_orientation_activities_reoriented_edge(k3):
    ref = Digraph(k3, 0)
    A = mask(1)
    assert activity_sets(ref.reoriented(A)).dual_active & mask(1)
    assert orientation_activities(ref, A).theta_star_bar & mask(1)


@settings(max_examples=50, deadline=None)
@given(small_graphs())
def test_tree_activities_match_brute_force(G):
    n, pairs = G.vertex_count, list(G.endpoints)
    for T in bases(G):
        act = tree_activities(G, T)
        want = oracles.tree_activities(n, pairs, frozenset(ranks(T)))
        assert (set(ranks(act.internal)), set(ranks(act.external))) == want


@settings(max_examples=50, deadline=None)
@given(small_graphs())
def test_rank_formulas(G):
    r = rank(G)
    for A in subsets(G.live):
        s = subset_activities(G, A)
        assert size(s.p) == r - rank(G, A)
        assert size(s.q) == size(A) - rank(G, A)
