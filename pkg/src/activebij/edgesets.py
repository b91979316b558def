"""Edge sets as integer bitmasks.

Edge ``k`` (1-based rank in the linear order) is bit ``k - 1``, so the
numeric order of bits is the edge order and ``min`` is the lowest set bit.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

EdgeSet = int


def mask(*ranks: int) -> EdgeSet:
    """Build a mask from edge ranks, e.g. ``mask(1, 3, 4)``."""
    m = 0
    for r in ranks:
        if r < 1:
            raise ValueError(f"edge ranks are 1-based, got {r}")
        m |= 1 << (r - 1)
    return m


def from_ranks(ranks: Iterable[int]) -> EdgeSet:
    return mask(*ranks)


def ranks(m: EdgeSet) -> list[int]:
    """Sorted edge ranks of a mask."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length())
        m ^= low
    return out


def bits(m: EdgeSet) -> Iterator[int]:
    """Iterate single-bit masks of ``m`` in increasing edge order."""
    while m:
        low = m & -m
        yield low
        m ^= low


def lowest(m: EdgeSet) -> EdgeSet:
    """The single-bit mask of the smallest edge (0 for the empty set)."""
    return m & -m


def highest(m: EdgeSet) -> EdgeSet:
    return 1 << (m.bit_length() - 1) if m else 0


def min_rank(m: EdgeSet) -> int:
    if not m:
        raise ValueError("empty edge set has no minimum")
    return (m & -m).bit_length()


def size(m: EdgeSet) -> int:
    return bin(m).count("1")


def subsets(m: EdgeSet) -> Iterator[EdgeSet]:
    """All submasks of ``m``, starting from the empty set."""
    sub = 0
    while True:
        yield sub
        if sub == m:
            return
        sub = (sub - m) & m


def sort_key(m: EdgeSet) -> tuple[int, ...]:
    """Lexicographic key on sorted rank content."""
    return tuple(ranks(m))


def label(m: EdgeSet, full: EdgeSet | None = None) -> str:
    """Compact text form: ``124`` when all ranks are single digits.

    The empty set prints as ``{}`` and, when ``full`` is given, the whole
    ground set prints as ``E``.
    """
    if not m:
        return "{}"
    if full is not None and m == full:
        return "E"
    rs = ranks(m)
    if rs[-1] < 10:
        return "".join(map(str, rs))
    return "{" + ",".join(map(str, rs)) + "}"
