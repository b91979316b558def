"""The active bijection between orientations and spanning trees.

Three levels are built here: the uniactive map on bipolar and
cyclic-bipolar digraphs (by an exhaustive sign-criterion search), the
canonical map glued over active minors, and the refined map on edge
subsets relative to a reference orientation. Each level also has a
deletion/contraction construction, and the tree side has its own
closure-based and single-pass constructions. Every pair of routes is
expected to agree and disagreements raise ``InvariantError``.
"""

from __future__ import annotations

from functools import cache
from itertools import product
from typing import NamedTuple

from .activity import tree_activities
from .edgesets import EdgeSet, bits, highest, lowest, ranks, size
from .errors import DomainError, InvariantError, PreconditionError
from .filtration import (
    ACYCLIC,
    CYCLIC,
    ActivePartition,
    Filtration,
    Part,
    active_filtration,
    active_minors,
    active_partition,
)
from .graph import (
    OrderedGraph,
    SignedEdgeSet,
    bases,
    classify_edge,
    contract,
    delete,
    fundamentals,
    restrict,
)
from .orientation import Digraph, activity_sets, is_bipolar, is_cyclic_bipolar


def _positive(s: SignedEdgeSet, R: EdgeSet, bit: EdgeSet) -> bool:
    """Whether ``bit`` is positive in ``s`` once the edges of R are reversed."""
    return bool(s.positive & bit) != bool(R & bit)


def _opposite(s: SignedEdgeSet, R: EdgeSet, x: EdgeSet, y: EdgeSet) -> bool:
    return _positive(s, R, x) != _positive(s, R, y)


def _idx(bit: EdgeSet) -> int:
    return bit.bit_length() - 1


# -- uniactive level -----------------------------------------------------------


def _meets_criterion(G: OrderedGraph, R: EdgeSet, T: EdgeSet, skip: EdgeSet) -> bool:
    """Each live edge other than ``skip`` is opposite, in its fundamental
    cycle or cocycle, to that set's smallest edge."""
    fund = fundamentals(G, T)
    for e in bits(G.live & ~skip):
        s = fund[_idx(e)]
        a = lowest(s.positive | s.negative)
        if a == e or not _opposite(s, R, a, e):
            return False
    return True


def uniactive_kind(dg: Digraph) -> str:
    """ACYCLIC for bipolar, CYCLIC for cyclic-bipolar w.r.t. the smallest edge."""
    if not dg.live:
        raise PreconditionError("empty digraph")
    p = lowest(dg.live).bit_length()
    if is_bipolar(dg, p):
        return ACYCLIC
    if is_cyclic_bipolar(dg, p):
        return CYCLIC
    raise PreconditionError("digraph is neither bipolar nor cyclic-bipolar w.r.t. its smallest edge")


@cache
def alpha_uniactive(dg: Digraph) -> EdgeSet:
    """The fully optimal spanning tree, by search over all spanning trees."""
    kind = uniactive_kind(dg)
    G = dg.base
    p = lowest(G.live)
    hits = []
    for T in bases(G):
        if kind == ACYCLIC:
            # the tree contains p, which is exempt from the cocycle condition
            ok = T & p and _meets_criterion(G, dg.reorient, T, p & T)
        else:
            ok = not T & p and _meets_criterion(G, dg.reorient, T, p)
        if ok:
            hits.append(T)
    if len(hits) != 1:
        raise InvariantError(f"sign criterion matched {len(hits)} trees, expected exactly one")
    T = hits[0]
    if kind == CYCLIC and size(G.live) > 1:
        # active duality with the bipolar digraph obtained by reversing p
        second = lowest(G.live & ~p)
        dual = alpha_uniactive(dg.reoriented(p))
        if T != (dual & ~p) | second:
            raise InvariantError("cyclic-bipolar tree breaks active duality")
    return T


@cache
def alpha(dg: Digraph) -> EdgeSet:
    """Canonical active spanning tree: union of the trees of the active minors."""
    T = 0
    for m, _ in active_minors(dg):
        T |= alpha_uniactive(m)
    return T


def alpha_refined(ref: Digraph, A: EdgeSet) -> EdgeSet:
    """Refined active bijection of subsets relative to ``ref``."""
    dg = ref.reoriented(A)
    o = activity_sets(dg)
    return (alpha(dg) & ~(A & o.dual_active)) | (A & o.active)


# -- inverses ----------------------------------------------------------------


class PreimagePair(NamedTuple):
    first: EdgeSet
    second: EdgeSet


def alpha_uniactive_inverse(G: OrderedGraph, T: EdgeSet) -> PreimagePair:
    """The two opposite orientations with fully optimal tree T, as
    reorientation subsets of the stored directions."""
    act = tree_activities(G, T)
    p = lowest(G.live)
    if (act.internal, act.external) not in ((p, 0), (0, p)):
        raise PreconditionError(f"tree {ranks(T)} is not uniactive")
    fund = fundamentals(G, T)
    R = 0  # the smallest edge keeps its stored direction
    for e in bits(G.live & ~p):
        s = fund[_idx(e)]
        a = lowest(s.positive | s.negative)
        # e is positive in its own fundamental set; make it disagree with a
        if _positive(s, R, a):
            R |= e
    return PreimagePair(R, R ^ G.live)


class TreeActiveData(NamedTuple):
    partition: ActivePartition
    preimages: list  # reorientations of stored directions
    refined_preimage: EdgeSet | None  # relative to the reference


def _single_pass(G: OrderedGraph, T: EdgeSet, reverse_active) -> tuple[dict, EdgeSet]:
    """One sweep in edge order assigning parts and directions.

    ``reverse_active(e)`` decides whether an active edge is reversed
    relative to its stored direction. Returns (edge -> key of its part, R).
    Part keys are the active edges themselves.
    """
    act = tree_activities(G, T)
    fund = fundamentals(G, T)
    part: dict[EdgeSet, EdgeSet] = {}
    R = 0
    for e in bits(G.live):
        s = fund[_idx(e)]
        support = s.positive | s.negative
        if e & (act.internal | act.external):
            part[e] = e
            if reverse_active(e):
                R |= e
            continue
        in_tree = bool(T & e)
        # the side whose parts absorb e when any are available
        priority = act.external if in_tree else act.internal
        smaller = [part[c] for c in bits(support & (e - 1))]
        preferred = [k for k in smaller if k & priority]
        part[e] = max(preferred) if preferred else min(smaller)
        key = part[e]
        a = next(c for c in bits(support) if part.get(c) == key)
        if _positive(s, R, a):
            R |= e
    return part, R


def _partition_from_keys(G: OrderedGraph, T: EdgeSet, part: dict) -> ActivePartition:
    ext = tree_activities(G, T).external
    groups: dict[EdgeSet, EdgeSet] = {}
    for e, k in part.items():
        groups[k] = groups.get(k, 0) | e
    return ActivePartition.of(
        Part(k.bit_length(), P, CYCLIC if k & ext else ACYCLIC) for k, P in groups.items()
    )


def tree_active_data(
    G: OrderedGraph,
    T: EdgeSet,
    ref: Digraph | None = None,
    X: EdgeSet | None = None,
) -> TreeActiveData:
    """Active partition of T, all orientations mapped to T, and, given a
    reference and a subset X of T's interval, the subset mapped to X by the
    refined bijection."""
    partition, preimages = _all_preimages(G, T)
    refined = None
    if X is not None:
        if ref is None:
            raise DomainError("a reference digraph is required with X")
        act = tree_activities(G, T)
        if (T & ~act.internal) & ~X or X & ~(T | act.external):
            raise DomainError(f"{ranks(X)} lies outside the interval of {ranks(T)}")
        moved = (act.internal & ~X) | (act.external & X)
        _, R = _single_pass(G, T, lambda e: bool(ref.reorient & e) != bool(moved & e))
        refined = R ^ ref.reorient
    return TreeActiveData(partition, list(preimages), refined)


@cache
def _all_preimages(G: OrderedGraph, T: EdgeSet) -> tuple[ActivePartition, tuple[EdgeSet, ...]]:
    """One pass per choice of directions at the active edges."""
    act = tree_activities(G, T)
    keys = list(bits(act.internal | act.external))
    part = None
    preimages = []
    for choice in product((False, True), repeat=len(keys)):
        flips = {k for k, c in zip(keys, choice) if c}
        p, R = _single_pass(G, T, flips.__contains__)
        if part is not None and p != part:
            raise InvariantError("parts depend on the choices at active edges")
        part = p
        preimages.append(R)
    preimages.sort()
    return _partition_from_keys(G, T, part), tuple(preimages)


# -- closures and tree filtrations --------------------------------------------


def active_closure(G: OrderedGraph, T: EdgeSet, X: EdgeSet) -> EdgeSet:
    """Least superset of X closed under the fundamental-set rules, on the
    external side when X consists of externally active edges, on the
    internal side when X consists of internally active edges."""
    act = tree_activities(G, T)
    if X & ~act.external == 0:
        side, active = G.live & ~T, act.external
    elif X & ~act.internal == 0:
        side, active = T, act.internal
    else:
        raise DomainError("closure seed mixes internal and external edges")
    fund = fundamentals(G, T)
    A = X
    changed = True
    while changed:
        changed = False
        for e in bits(side & ~active | (side & A)):
            s = fund[_idx(e)]
            support = s.positive | s.negative
            if A & e:
                if support & ~A:
                    A |= support
                    changed = True
            elif support & (e - 1) & ~A == 0:
                A |= e
                changed = True
    return A


def filtration_from_partition(ground: EdgeSet, partition: ActivePartition) -> Filtration:
    acyc = [p.part for p in partition.parts if p.kind == ACYCLIC]
    cyc = [p.part for p in partition.parts if p.kind == CYCLIC]
    Fc = partition.cyclic_flat
    chain_a = [Fc]
    for P in acyc:
        chain_a.append(chain_a[-1] | P)
    chain_c = [Fc]
    for P in cyc:
        chain_c.append(chain_c[-1] & ~P)
    if chain_a[-1] != ground:
        raise InvariantError("partition does not cover the ground set")
    return Filtration(tuple(reversed(chain_c)), tuple(chain_a))


def _filtration_inductive(G: OrderedGraph, T: EdgeSet) -> Filtration:
    """Peel off the part of the largest active edge and recurse in a minor."""
    parts = []
    H, S = G, T
    while H.live:
        act = tree_activities(H, S)
        if act.external:
            a = highest(act.external)
            P = active_closure(H, S, a)
            parts.append(Part(a.bit_length(), P, CYCLIC))
            H = contract(H, P)
        elif act.internal:
            a = highest(act.internal)
            P = active_closure(H, S, a)
            parts.append(Part(a.bit_length(), P, ACYCLIC))
            H = delete(H, P)
        else:
            raise InvariantError("no active edge in a nonempty minor")
        S &= ~P
    return filtration_from_partition(G.live, ActivePartition.of(parts))


def _filtration_global(G: OrderedGraph, T: EdgeSet) -> Filtration:
    act = tree_activities(G, T)
    E = G.live
    Fc = active_closure(G, T, act.external)
    if Fc != E & ~active_closure(G, T, act.internal):
        raise InvariantError("the two closures disagree on the cyclic flat")
    internal = list(bits(act.internal))
    external = list(bits(act.external))
    chain_a = [E & ~active_closure(G, T, sum(internal[k:])) for k in range(len(internal))] + [E]
    chain_c = [active_closure(G, T, sum(external[k:])) for k in range(len(external))] + [0]
    return Filtration(tuple(reversed(chain_c)), tuple(chain_a))


@cache
def tree_active_filtration(G: OrderedGraph, T: EdgeSet) -> Filtration:
    """Filtration of a spanning tree, built three ways and cross-checked."""
    inductive = _filtration_inductive(G, T)
    glob = _filtration_global(G, T)
    single = filtration_from_partition(G.live, tree_active_data(G, T).partition)
    if not (inductive == glob == single):
        raise InvariantError(f"tree filtration routes disagree for {ranks(T)}")
    # each layer carries a uniactive piece of T
    for lo, hi in inductive.acyclic_layers():
        H = contract(restrict(G, hi), lo)
        act = tree_activities(H, T & hi & ~lo)
        if act != (lowest(hi & ~lo), 0):
            raise InvariantError("acyclic layer tree is not internal uniactive")
    for lo, hi in inductive.cyclic_layers():
        H = contract(restrict(G, hi), lo)
        act = tree_activities(H, T & hi & ~lo)
        if act != (0, lowest(hi & ~lo)):
            raise InvariantError("cyclic layer tree is not external uniactive")
    return inductive


# -- deletion / contraction ----------------------------------------------------


def alpha_dc_uniactive(dg: Digraph) -> EdgeSet:
    """Fully optimal tree of a bipolar digraph by recursion on the largest edge."""
    if not dg.live or not is_bipolar(dg, lowest(dg.live).bit_length()):
        raise PreconditionError("digraph is not bipolar w.r.t. its smallest edge")
    return _dc_uniactive(dg)


@cache
def _dc_uniactive(dg: Digraph) -> EdgeSet:
    E = dg.live
    if size(E) == 1:
        return E
    w = highest(E)
    p = lowest(E).bit_length()
    deleted, contracted = dg.delete(w), dg.contract(w)
    del_ok, con_ok = is_bipolar(deleted, p), is_bipolar(contracted, p)
    if con_ok and not del_ok:
        return _dc_uniactive(contracted) | w
    if del_ok and not con_ok:
        return _dc_uniactive(deleted)
    if not del_ok:
        raise InvariantError("neither minor is bipolar")

    # the fundamental cycle of w in the deletion's tree, and dually the
    # fundamental cocycle of w in the contraction's tree plus w
    T_del = _dc_uniactive(deleted)
    T_con = _dc_uniactive(contracted) | w
    C = fundamentals(dg.base, T_del)[_idx(w)]
    by_cycle = T_del if _opposite(C, dg.reorient, lowest(C.support), w) else T_con
    D = fundamentals(dg.base, T_con)[_idx(w)]
    by_cocycle = T_con if _opposite(D, dg.reorient, lowest(D.support), w) else T_del
    if by_cycle != by_cocycle:
        raise InvariantError("the cycle and cocycle tests of the recursion disagree")
    return by_cycle


def dc_pair_identity(dg: Digraph) -> bool | None:
    """For bipolar Ğ whose reversal at the largest edge is bipolar too:
    {α(Ğ), α(-_ω Ğ)} equals {α(Ğ∖ω), α(Ğ/ω) ∪ ω}. None when not applicable."""
    E = dg.live
    p = lowest(E).bit_length()
    w = highest(E)
    if size(E) < 2 or not is_bipolar(dg, p):
        return None
    flipped = dg.reoriented(w)
    if not is_bipolar(flipped, p):
        return None
    pair = {alpha_dc_uniactive(dg), alpha_dc_uniactive(flipped)}
    minors = {alpha_dc_uniactive(dg.delete(w)), alpha_dc_uniactive(dg.contract(w)) | w}
    return pair == minors


DELETE = "delete"
CONTRACT = "contract"


def _dc_choice(dg: Digraph) -> str:
    """Which minor at the largest edge ω shares the active tree of Ğ.

    ω is neither a loop nor an isthmus here.
    """
    w = highest(dg.live)
    deleted, contracted = dg.delete(w), dg.contract(w)
    p_del, p_con = active_partition(deleted), active_partition(contracted)
    if p_del != p_con:
        target = active_partition(dg).without(w)
        hits = [name for name, p in ((DELETE, p_del), (CONTRACT, p_con)) if p == target]
        if len(hits) != 1:
            raise InvariantError("neither minor keeps the active partition")
        return hits[0]

    f = active_filtration(dg)
    layer = next((lo, hi) for lo, hi in f.acyclic_layers() + f.cyclic_layers() if hi & ~lo & w)
    lo, hi = layer
    inner = dg.minor(hi, lo)
    Ew = hi & ~lo

    T_del = alpha_dc(deleted) & Ew
    C = fundamentals(inner.base, T_del)[_idx(w)]
    by_cycle = DELETE if _opposite(C, dg.reorient, lowest(C.support), w) else CONTRACT

    T_con = (alpha_dc(contracted) & Ew) | w
    D = fundamentals(inner.base, T_con)[_idx(w)]
    by_cocycle = CONTRACT if _opposite(D, dg.reorient, lowest(D.support), w) else DELETE

    if by_cycle != by_cocycle:
        raise InvariantError("the cycle and cocycle tests of the recursion disagree")
    return by_cycle


@cache
def alpha_dc(dg: Digraph) -> EdgeSet:
    """Canonical active spanning tree by deletion/contraction."""
    E = dg.live
    if not E:
        return 0
    w = highest(E)
    kind = classify_edge(dg.base, w.bit_length())
    if kind == "isthmus":
        return alpha_dc(dg.contract(w)) | w
    if kind == "loop":
        return alpha_dc(dg.delete(w))
    if _dc_choice(dg) == DELETE:
        return alpha_dc(dg.delete(w))
    return alpha_dc(dg.contract(w)) | w


@cache
def alpha_dc_refined(ref: Digraph, A: EdgeSet) -> EdgeSet:
    """Refined active bijection by deletion/contraction."""
    E = ref.live
    if not E:
        return 0
    w = highest(E)
    rest = A & ~w
    kind = classify_edge(ref.base, w.bit_length())
    if kind == "isthmus":
        if A & w:
            return alpha_dc_refined(ref.delete(w), rest)
        return alpha_dc_refined(ref.contract(w), rest) | w
    if kind == "loop":
        if A & w:
            return alpha_dc_refined(ref.delete(w), rest) | w
        return alpha_dc_refined(ref.contract(w), rest)
    if _dc_choice(ref.reoriented(A)) == DELETE:
        return alpha_dc_refined(ref.delete(w), rest)
    return alpha_dc_refined(ref.contract(w), rest) | w
