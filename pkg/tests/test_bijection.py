import oracles
import pytest
from conftest import isthmus, loop, small_graphs
from hypothesis import given, settings

from activebij.activity import interval_of, tree_activities
from activebij.bijection import (
    active_closure,
    alpha,
    alpha_dc,
    alpha_dc_refined,
    alpha_dc_uniactive,
    alpha_refined,
    alpha_uniactive,
    alpha_uniactive_inverse,
    dc_pair_identity,
    tree_active_data,
    tree_active_filtration,
)
from activebij.edgesets import highest, lowest, mask, ranks, subsets
from activebij.errors import DomainError, PreconditionError
from activebij.filtration import (
    CYCLIC,
    active_minors,
    active_partition,
    is_active_fixed,
    is_dual_active_fixed,
)
from activebij.graph import OrderedGraph, bases
from activebij.orientation import Digraph, is_bipolar, is_cyclic_bipolar, reorientations
from activebij.tutte import beta


def test_base_cases():
    assert alpha_uniactive(Digraph(isthmus(), 0)) == mask(1)
    assert alpha_uniactive(Digraph(loop(), 0)) == 0
    assert alpha_dc_uniactive(Digraph(isthmus(), 1)) == mask(1)


def test_precondition(k3):
    with pytest.raises(PreconditionError):
        alpha_uniactive(Digraph(k3, 0))  # active partition 1+23
    with pytest.raises(PreconditionError):
        alpha_uniactive_inverse(k3, mask(1, 2))


def test_k4_decomposed_example(k4):
    dg = Digraph(k4, mask(3))
    pieces = [alpha_uniactive(m) for m, _ in active_minors(dg)]
    assert pieces[0] == mask(1, 3)
    assert pieces[0] | pieces[1] == mask(1, 3, 4)
    assert alpha(dg) == mask(1, 3, 4)


def test_k3_class_maps_to_first_tree(k3):
    for A in (0, mask(1), mask(2, 3), k3.live):
        assert alpha(Digraph(k3, A)) == mask(1, 2)


def test_refined_examples(k3, k4_ref):
    assert alpha_refined(k4_ref, 0) == alpha(k4_ref)
    for A in reorientations(k4_ref.base):
        if is_active_fixed(k4_ref, A) and is_dual_active_fixed(k4_ref, A):
            assert alpha_refined(k4_ref, A) == alpha(k4_ref.reoriented(A))
    ref = Digraph(k3, 0)
    images = {alpha_refined(ref, A) for A in subsets(k3.live)}
    assert images == set(subsets(k3.live))
    for A in subsets(k3.live):
        T = alpha(ref.reoriented(A))
        lower, upper = interval_of(k3, T)
        X = alpha_refined(ref, A)
        assert lower & ~X == 0 and X & ~upper == 0


def test_uniactive_inverse(k3, k4):
    assert set(alpha_uniactive_inverse(k3, mask(1, 3))) == {mask(3), mask(1, 2)}
    assert set(alpha_uniactive_inverse(isthmus(), mask(1))) == {0, 1}
    p = 1
    uniactive = [T for T in bases(k4) if tree_activities(k4, T) in ((p, 0), (0, p))]
    assert uniactive
    for T in uniactive:
        for R in alpha_uniactive_inverse(k4, T):
            assert alpha_uniactive(Digraph(k4, R)) == T


def test_tree_active_data_k4(k4, k4_ref):
    E = k4.live
    d = tree_active_data(k4, mask(1, 2, 4))
    assert d.partition.text(E) == "1+23+456 | cyclic -"
    assert len(d.preimages) == 8
    d = tree_active_data(k4, mask(4, 5, 6))
    assert d.partition.text(E) == "- | cyclic 1+24+356"
    assert d.partition.cyclic_flat == E and len(d.preimages) == 8
    with pytest.raises(DomainError):
        tree_active_data(k4, mask(1, 2, 4), k4_ref, mask(3))


def test_refined_preimage_of_fixed_representative(k4, k4_ref):
    for A in reorientations(k4):
        if is_active_fixed(k4_ref, A) and is_dual_active_fixed(k4_ref, A):
            T = alpha(k4_ref.reoriented(A))
            assert tree_active_data(k4, T, k4_ref, T).refined_preimage == A


def test_active_closure(k4):
    T = mask(4, 5, 6)
    ext = tree_activities(k4, T).external
    assert active_closure(k4, T, ext) == k4.live
    assert active_closure(k4, T, 0) == 0
    for T in bases(k4):
        ext = tree_activities(k4, T).external
        if ext:
            a = highest(ext)
            part = tree_active_data(k4, T).partition.part_of(a)
            assert part.kind == CYCLIC and active_closure(k4, T, a) == part.part
    mixed = next(T for T in bases(k4) if all(tree_activities(k4, T)))
    act = tree_activities(k4, mixed)
    with pytest.raises(DomainError):
        active_closure(k4, mixed, act.internal | act.external)


def test_tree_active_filtration(k4):
    E = k4.live
    assert tree_active_filtration(k4, mask(1, 3, 4)).text(E) == "[{}] < 123 < E"
    t_min = bases(k4)[0]
    assert tree_active_filtration(k4, t_min).cyclic_flat == 0


def test_dc_on_k4(k4, k4_ref):
    count = 0
    for R in reorientations(k4):
        dg = Digraph(k4, R)
        assert alpha_dc(dg) == alpha(dg)
        assert alpha_dc_refined(k4_ref, R) == alpha_refined(k4_ref, R)
        if is_bipolar(dg, 1):
            assert alpha_dc_uniactive(dg) == alpha_uniactive(dg)
            if dc_pair_identity(dg) is not None:
                count += 1
                assert dc_pair_identity(dg)
    assert count > 0


def test_dc_loop_and_isthmus_rules():
    # largest edge is a loop
    G = OrderedGraph(3, [(0, 1), (0, 2), (1, 2), (2, 2)])
    w = mask(4)
    for R in reorientations(G):
        dg = Digraph(G, R)
        assert alpha_dc(dg) == alpha(dg.delete(w)) == alpha(dg)
        ref = Digraph(G, 0)
        if R & w:
            assert alpha_dc_refined(ref, R) & w
    # largest edge is an isthmus
    H = OrderedGraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    w = mask(4)
    ref = Digraph(H, 0)
    for R in reorientations(H):
        dg = Digraph(H, R)
        assert alpha_dc(dg) == alpha(dg.contract(w)) | w == alpha(dg)
        if R & w:
            assert not alpha_dc_refined(ref, R) & w


def _is_uniactive_input(dg):
    return is_bipolar(dg, 1) or is_cyclic_bipolar(dg, 1)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_criterion_search_matches_oracle(G):
    n, pairs = G.vertex_count, list(G.endpoints)
    for R in reorientations(G):
        dg = Digraph(G, R)
        if not _is_uniactive_input(dg):
            continue
        hits = oracles.criterion_trees(n, pairs, set(ranks(R)), cyclic=not is_bipolar(dg, 1))
        assert [sorted(h) for h in hits] == [ranks(alpha_uniactive(dg))]


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_bipolar_bijection_counts(G):
    """Bipolar orientations with edge 1 kept map injectively onto internal
    uniactive trees, and there are beta of them."""
    p = lowest(G.live)
    image = []
    for R in reorientations(G):
        if R & p or not is_bipolar(Digraph(G, R), 1):
            continue
        image.append(alpha_uniactive(Digraph(G, R)))
    assert len(image) == len(set(image)) == beta(G)
    assert set(image) == {T for T in bases(G) if tree_activities(G, T) == (p, 0)}


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_opposite_and_class_invariance(G):
    for R in reorientations(G):
        dg = Digraph(G, R)
        T = alpha(dg)
        assert alpha(dg.opposite()) == T
        for part in active_partition(dg).parts:
            assert alpha(dg.reoriented(part.part)) == T


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_round_trips(G):
    ref = Digraph(G, 0)
    for T in bases(G):
        d = tree_active_data(G, T)
        assert {alpha(Digraph(G, R)) for R in d.preimages} == {T}
        lower, upper = interval_of(G, T)
        for extra in subsets(upper & ~lower):
            X = lower | extra
            assert alpha_refined(ref, tree_active_data(G, T, ref, X).refined_preimage) == X
