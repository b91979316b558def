"""Tutte polynomial by four independent expansions, plus the beta
invariants and four-variable count tables."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from functools import cache
from math import comb

from .activity import orientation_activities, subset_activities, tree_activities
from .edgesets import EdgeSet, size, subsets
from .errors import InvariantError
from .graph import OrderedGraph, bases, contract, is_cyclic_flat, restrict, structure
from .orientation import Digraph, activity_sets, reorientations


class TuttePoly:
    """Exact coefficient table ``(i, j) -> t_ij`` of a bivariate polynomial."""

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = ()):
        items = dict(coeffs)
        self._items = tuple(sorted((k, int(v)) for k, v in items.items() if v))

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._items)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.coeffs.get(ij, 0)

    def __eq__(self, other):
        return isinstance(other, TuttePoly) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __mul__(self, other: TuttePoly) -> TuttePoly:
        out: Counter = Counter()
        for (i, j), a in self._items:
            for (k, l), b in other._items:
                out[i + k, j + l] += a * b
        return TuttePoly(out)

    def __add__(self, other: TuttePoly) -> TuttePoly:
        out = Counter(self.coeffs)
        out.update(other.coeffs)
        return TuttePoly(out)

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self._items)

    def __repr__(self):
        return f"TuttePoly({str(self)!r})"

    def __str__(self):
        if not self._items:
            return "0"
        terms = []
        # pure x terms by falling degree, then by rising y degree
        for (i, j), c in sorted(self._items, key=lambda kv: (kv[0][1], -kv[0][0])):
            mono = _power("x", i) + _power("y", j)
            if not mono:
                terms.append(str(c))
            else:
                terms.append(("" if c == 1 else str(c)) + mono)
        return " + ".join(terms)

    @classmethod
    def parse(cls, text: str) -> TuttePoly:
        """Inverse of ``str``."""
        out: Counter = Counter()
        text = text.replace(" ", "")
        if text == "0":
            return cls()
        for term in text.split("+"):
            k = 0
            while k < len(term) and term[k].isdigit():
                k += 1
            c = int(term[:k]) if k else 1
            i = j = 0
            rest = term[k:]
            while rest:
                var, rest = rest[0], rest[1:]
                e = 1
                if rest.startswith("^"):
                    m = 1
                    while m < len(rest) and rest[m].isdigit():
                        m += 1
                    e, rest = int(rest[1:m]), rest[m:]
                if var == "x":
                    i += e
                elif var == "y":
                    j += e
                else:
                    raise ValueError(f"bad term {term!r}")
            out[i, j] += c
        return cls(out)

    def to_rows(self) -> list[list[int]]:
        """Dense table indexed ``[i][j]``."""
        if not self._items:
            return [[0]]
        di = max(i for (i, _), _ in self._items)
        dj = max(j for (_, j), _ in self._items)
        rows = [[0] * (dj + 1) for _ in range(di + 1)]
        for (i, j), c in self._items:
            rows[i][j] = c
        return rows


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


@cache
def tutte_by_trees(G: OrderedGraph) -> TuttePoly:
    """Count spanning trees (forests, for disconnected minors) by activities."""
    count: Counter = Counter()
    for T in bases(G):
        act = tree_activities(G, T)
        count[size(act.internal), size(act.external)] += 1
    return TuttePoly(count)


def tutte_by_orientations(G: OrderedGraph) -> TuttePoly:
    """Count reorientations by (|O*|, |O|) and divide by 2^(i+j)."""
    o: Counter = Counter()
    for R in reorientations(G):
        act = activity_sets(Digraph(G, R))
        o[size(act.dual_active), size(act.active)] += 1
    out = {}
    for (i, j), c in o.items():
        t, rem = divmod(c, 2 ** (i + j))
        if rem:
            raise InvariantError(f"orientation count {c} at {(i, j)} is not divisible by {2 ** (i + j)}")
        out[i, j] = t
    return TuttePoly(out)


def tutte_by_filtrations(G: OrderedGraph) -> TuttePoly:
    """Sum over connected filtrations of beta products times x^iota y^eps."""
    from .filtration import enumerate_connected_filtrations, filtration_weight

    count: Counter = Counter()
    for f in enumerate_connected_filtrations(G):
        w = filtration_weight(G, f)
        if w:
            count[f.iota, f.epsilon] += w
    return TuttePoly(count)


def cyclic_flats(G: OrderedGraph) -> list[EdgeSet]:
    return [F for F in subsets(G.live) if is_cyclic_flat(G, F)]


def convolution(G: OrderedGraph, all_subsets: bool = False) -> TuttePoly:
    """Sum of t(G/F; x, 0) * t(G(F); 0, y) over cyclic flats F, or over every
    subset when ``all_subsets`` is set (the extra terms vanish)."""
    total = TuttePoly()
    domain = subsets(G.live) if all_subsets else cyclic_flats(G)
    for F in domain:
        outer = tutte_by_trees(contract(G, F)).coeffs
        inner = tutte_by_trees(restrict(G, F)).coeffs
        x_part = TuttePoly({(i, 0): c for (i, j), c in outer.items() if j == 0})
        y_part = TuttePoly({(0, j): c for (i, j), c in inner.items() if i == 0})
        total = total + x_part * y_part
    return total


def beta(G: OrderedGraph) -> int:
    return tutte_by_trees(G)[1, 0]


def beta_star(G: OrderedGraph) -> int:
    """beta for two or more edges; 0 for an isthmus and 1 for a loop."""
    if size(G.live) == 1:
        (u, v) = next(e for e in structure(G).ends if e is not None)
        return 1 if u == v else 0
    if not G.live:
        return 0
    return beta(G)


# -- four-variable tables ----------------------------------------------------

FourVarTable = dict  # (i, p, e, q) -> count


def four_var_by_subsets(G: OrderedGraph) -> FourVarTable:
    count: Counter = Counter()
    for A in subsets(G.live):
        s = subset_activities(G, A)
        count[size(s.int_), size(s.p), size(s.ext), size(s.q)] += 1
    return dict(count)


def four_var_by_orientations(ref: Digraph) -> FourVarTable:
    count: Counter = Counter()
    for A in reorientations(ref.base):
        o = orientation_activities(ref, A)
        count[size(o.theta_star), size(o.theta_star_bar), size(o.theta), size(o.theta_bar)] += 1
    return dict(count)


def four_var_from_tutte(t: TuttePoly) -> FourVarTable:
    """Coefficients of T(x+u, y+v) in the monomials x^i u^p y^e v^q."""
    out = {}
    for (i, j), c in t.coeffs.items():
        for p in range(i + 1):
            for q in range(j + 1):
                out[i - p, p, j - q, q] = c * comb(i, p) * comb(j, q)
    return out
