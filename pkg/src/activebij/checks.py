"""The invariant suite run by ``activebij verify``.

Each check returns a ``CheckResult``; none of them raise on a mismatch
except through ``InvariantError`` from inside the library, which is
reported as a failure of the check that triggered it.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable
from typing import NamedTuple

from .activity import (
    interval_of,
    orientation_activities,
    subset_activities,
    tree_activities,
)
from .bijection import (
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
from .edgesets import EdgeSet, lowest, ranks, size, subsets
from .errors import InvariantError
from .filtration import (
    active_filtration,
    activity_class,
    class_representative,
    inducing_filtrations,
    is_active_fixed,
    is_connected_filtration,
    is_dual_active_fixed,
)
from .graph import OrderedGraph, bases, rank, signed_cocycles, signed_cycles
from .orientation import (
    Digraph,
    activity_sets,
    is_acyclic,
    is_bipolar,
    is_strongly_connected,
    reorientations,
)
from .tutte import (
    TuttePoly,
    convolution,
    four_var_by_orientations,
    four_var_by_subsets,
    four_var_from_tutte,
    tutte_by_filtrations,
    tutte_by_orientations,
    tutte_by_trees,
)


class CheckResult(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


def orthogonality(G: OrderedGraph, corrupt_signs: bool = False) -> CheckResult:
    """Every signed cycle meets every signed cocycle in equally many
    agreeing and disagreeing edges. ``corrupt_signs`` flips the sign of the
    smallest edge of each cocycle, a negative control that must fail."""
    for C in signed_cycles(G):
        for D in signed_cocycles(G):
            dpos, dneg = D.positive, D.negative
            if corrupt_signs:
                low = lowest(dpos | dneg)
                dpos, dneg = dpos ^ low, dneg ^ low
            agree = size(C.positive & dpos) + size(C.negative & dneg)
            disagree = size(C.positive & dneg) + size(C.negative & dpos)
            if agree != disagree:
                return CheckResult(
                    "orthogonality", False, f"cycle {ranks(C.support)} vs cocycle {ranks(D.support)}"
                )
    return CheckResult("orthogonality", True)


def crapo_partition(G: OrderedGraph) -> CheckResult:
    seen: Counter = Counter()
    for T in bases(G):
        lower, upper = interval_of(G, T)
        for extra in subsets(upper & ~lower):
            seen[lower | extra] += 1
    ok = len(seen) == 1 << size(G.live) and set(seen.values()) == {1}
    return CheckResult("tree intervals partition all subsets", ok)


def tutte_four_way(G: OrderedGraph) -> CheckResult:
    polys = {
        "trees": tutte_by_trees(G),
        "orientations": tutte_by_orientations(G),
        "filtrations": tutte_by_filtrations(G),
        "convolution": convolution(G),
    }
    ok = len(set(polys.values())) == 1
    detail = "" if ok else "; ".join(f"{k}: {v}" for k, v in polys.items())
    return CheckResult("Tutte polynomial four ways", ok, detail)


def four_variable(G: OrderedGraph, ref: Digraph) -> CheckResult:
    by_sub = four_var_by_subsets(G)
    by_ori = four_var_by_orientations(ref)
    expected = four_var_from_tutte(tutte_by_trees(G))
    return CheckResult("four-variable expansions", by_sub == by_ori == expected)


def classes_and_fibers(G: OrderedGraph, ref: Digraph) -> CheckResult:
    name = "activity classes are the fibers of alpha"
    fibers: dict[EdgeSet, set] = {}
    for R in reorientations(G):
        dg = Digraph(G, R)
        T = alpha(dg)
        act = activity_sets(dg)
        ta = tree_activities(G, T)
        if (ta.internal, ta.external) != (act.dual_active, act.active):
            return CheckResult(name, False, f"activities of tree {ranks(T)} differ from orientation {ranks(R)}")
        if tree_active_filtration(G, T) != active_filtration(dg):
            return CheckResult(name, False, f"filtrations differ for orientation {ranks(R)}")
        fibers.setdefault(T, set()).add(R)
    if set(fibers) != set(bases(G)):
        return CheckResult(name, False, "alpha is not onto the spanning trees")
    counts: Counter = Counter()
    for T, fiber in fibers.items():
        R = min(fiber)
        cls = activity_class(Digraph(G, R))
        if set(cls.members()) != fiber:
            return CheckResult(name, False, f"fiber of {ranks(T)} is not an activity class")
        act = activity_sets(Digraph(G, R))
        if len(fiber) != 1 << (size(act.active) + size(act.dual_active)):
            return CheckResult(name, False, f"fiber of {ranks(T)} has the wrong size")
        A = class_representative(ref, cls)
        counts[size(act.dual_active), size(act.active)] += 1
        if alpha_refined(ref, A) != T:
            return CheckResult(name, False, "fixed representative does not map to its tree")
    if TuttePoly(counts) != tutte_by_trees(G):
        return CheckResult(name, False, "fixed representatives are not counted by the Tutte coefficients")
    return CheckResult(name, True)


def refined_transport(G: OrderedGraph, ref: Digraph) -> CheckResult:
    name = "refined bijection transports parameters"
    image = set()
    for A in reorientations(G):
        X = alpha_refined(ref, A)
        image.add(X)
        o = orientation_activities(ref, A)
        s = subset_activities(G, X)
        if (s.int_, s.p, s.ext, s.q) != (o.theta_star, o.theta_star_bar, o.theta, o.theta_bar):
            return CheckResult(name, False, f"parameters differ at A={ranks(A)}")
    return CheckResult(name, len(image) == 1 << size(G.live))


def route_agreement(G: OrderedGraph, ref: Digraph) -> CheckResult:
    name = "decomposition and deletion/contraction routes agree"
    p = lowest(G.live).bit_length()
    for R in reorientations(G):
        dg = Digraph(G, R)
        if alpha(dg) != alpha_dc(dg):
            return CheckResult(name, False, f"canonical routes differ at {ranks(R)}")
        if alpha_refined(ref, R ^ ref.reorient) != alpha_dc_refined(ref, R ^ ref.reorient):
            return CheckResult(name, False, f"refined routes differ at {ranks(R)}")
        if is_bipolar(dg, p):
            if alpha_uniactive(dg) != alpha_dc_uniactive(dg):
                return CheckResult(name, False, f"uniactive routes differ at {ranks(R)}")
            if dc_pair_identity(dg) is False:
                return CheckResult(name, False, f"pair identity fails at {ranks(R)}")
    for T in bases(G):
        tree_active_filtration(G, T)  # raises if its three routes differ
    return CheckResult(name, True)


def round_trips(G: OrderedGraph, ref: Digraph) -> CheckResult:
    name = "inverse constructions round-trip"
    p = lowest(G.live)
    for T in bases(G):
        data = tree_active_data(G, T)
        if any(alpha(Digraph(G, R)) != T for R in data.preimages):
            return CheckResult(name, False, f"a single-pass preimage of {ranks(T)} maps elsewhere")
        if len(set(data.preimages)) != len(data.preimages):
            return CheckResult(name, False, "repeated preimages")
        ta = tree_activities(G, T)
        if (ta.internal, ta.external) in ((p, 0), (0, p)):
            pair = alpha_uniactive_inverse(G, T)
            if alpha(Digraph(G, pair.first)) != T or alpha(Digraph(G, pair.second)) != T:
                return CheckResult(name, False, f"uniactive inverse of {ranks(T)} fails")
        lower, upper = interval_of(G, T)
        for extra in subsets(upper & ~lower):
            X = lower | extra
            A = tree_active_data(G, T, ref, X).refined_preimage
            if alpha_refined(ref, A) != X:
                return CheckResult(name, False, f"refined preimage of {ranks(X)} maps elsewhere")
    return CheckResult(name, True)


def _broken(signed) -> list[EdgeSet]:
    return [(s.positive | s.negative) & ~lowest(s.positive | s.negative) for s in signed]


def restriction_families(G: OrderedGraph, ref: Digraph) -> CheckResult:
    """Images of orientation families under the refined bijection, each
    compared with the target family enumerated directly."""
    name = "refined bijection restricts to the classical families"
    E = G.live
    r = rank(G)
    broken_circuits = _broken(signed_cycles(G))
    broken_cocircuits = _broken(signed_cocycles(G))

    def nbc(X):
        return not any(b & ~X == 0 for b in broken_circuits)

    def co_nbc(X):
        return not any(b & ~(E & ~X) == 0 for b in broken_cocircuits)

    families: dict[str, tuple[Callable, Callable, tuple]] = {
        "acyclic": (lambda A, dg: is_acyclic(dg), nbc, (2, 0)),
        "strongly connected": (lambda A, dg: is_strongly_connected(dg), co_nbc, (0, 2)),
        "active-fixed": (lambda A, dg: is_active_fixed(ref, A), lambda X: rank(G, X) == size(X), (2, 1)),
        "dual-active-fixed": (lambda A, dg: is_dual_active_fixed(ref, A), lambda X: rank(G, X) == r, (1, 2)),
        "fixed both ways": (
            lambda A, dg: is_active_fixed(ref, A) and is_dual_active_fixed(ref, A),
            lambda X: rank(G, X) == size(X) == r,
            (1, 1),
        ),
        "dual-active-fixed acyclic": (
            lambda A, dg: is_acyclic(dg) and is_dual_active_fixed(ref, A),
            lambda X: rank(G, X) == size(X) == r and nbc(X),
            (1, 0),
        ),
        "active-fixed strongly connected": (
            lambda A, dg: is_strongly_connected(dg) and is_active_fixed(ref, A),
            lambda X: rank(G, X) == size(X) == r and co_nbc(X),
            (0, 1),
        ),
    }
    t = tutte_by_trees(G)
    for label, (source, target, point) in families.items():
        image = {alpha_refined(ref, A) for A in reorientations(G) if source(A, ref.reoriented(A))}
        direct = {X for X in subsets(E) if target(X)}
        if image != direct or len(direct) != t(*point):
            return CheckResult(name, False, f"{label}: image {len(image)}, direct {len(direct)}, t{point}={t(*point)}")
    return CheckResult(name, True)


def filtration_uniqueness(G: OrderedGraph, max_edges: int = 6) -> CheckResult:
    name = "active filtration is the unique inducing connected filtration"
    if size(G.live) > max_edges:
        return CheckResult(name, True, f"skipped above {max_edges} edges")
    for R in reorientations(G):
        dg = Digraph(G, R)
        f = active_filtration(dg)
        if not is_connected_filtration(G, f) or inducing_filtrations(dg) != [f]:
            return CheckResult(name, False, f"at orientation {ranks(R)}")
    return CheckResult(name, True)


def run_suite(G: OrderedGraph, ref: Digraph | None = None, corrupt_signs: bool = False) -> list[CheckResult]:
    ref = ref or Digraph(G, 0)
    steps = [
        ("orthogonality", lambda: orthogonality(G, corrupt_signs)),
        ("crapo", lambda: crapo_partition(G)),
        ("tutte", lambda: tutte_four_way(G)),
        ("four-variable", lambda: four_variable(G, ref)),
        ("classes", lambda: classes_and_fibers(G, ref)),
        ("refined", lambda: refined_transport(G, ref)),
        ("routes", lambda: route_agreement(G, ref)),
        ("round trips", lambda: round_trips(G, ref)),
        ("restrictions", lambda: restriction_families(G, ref)),
        ("uniqueness", lambda: filtration_uniqueness(G)),
    ]
    out = []
    for label, step in steps:
        try:
            out.append(step())
        except InvariantError as exc:
            out.append(CheckResult(label, False, f"invariant breach: {exc}"))
    return out
