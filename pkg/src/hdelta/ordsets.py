"""Finite sets of ordinals, modelled as strictly increasing tuples of naturals.

Position sets (masks such as ``r(a, b)``) are themselves finite sets of
naturals, so they share the :class:`OrdSet` representation; whatever bound
they are checked against is supplied by the caller.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError

__all__ = [
    "OrdSet",
    "TypeProfile",
    "IntersectionType",
    "ordset",
    "image",
    "aligned",
    "rmask",
    "aligned_above",
    "tp",
    "tp_int",
    "is_possible",
    "substitute",
    "delta_distance",
    "meet",
    "join",
    "top",
    "above",
]


class OrdSet(tuple):
    """A finite set of ordinals, stored in increasing order.

    ``OrdSet([7, 3, 9])`` sorts its input; duplicates and negative values are
    rejected. Indexing gives ``u(i)``, ``len`` gives the order type.
    """

    __slots__ = ()

    def __new__(cls, elems: Iterable[int] = ()) -> "OrdSet":
        items = list(elems)
        if not all(type(x) is int for x in items):
            for x in items:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise InputError(f"ordinal must be a natural number, got {x!r}")
            items = [int(x) for x in items]
        items.sort()
        if items and items[0] < 0:
            raise InputError(f"ordinal must be non-negative, got {items[0]}")
        if len(set(items)) != len(items):
            dup = next(x for x, y in zip(items, items[1:]) if x == y)
            raise InputError(f"duplicate element {dup} in ordinal set")
        return tuple.__new__(cls, items)

    @classmethod
    def _trusted(cls, items: Iterable[int]) -> "OrdSet":
        # caller guarantees strictly increasing naturals
        return tuple.__new__(cls, items)

    @property
    def otp(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    __str__ = __repr__

    def __and__(self, other: Iterable[int]) -> "OrdSet":  # type: ignore[override]
        return meet(self, other)

    def __or__(self, other: Iterable[int]) -> "OrdSet":
        return join(self, other)

    def __sub__(self, other: Iterable[int]) -> "OrdSet":
        drop = set(other)
        return OrdSet._trusted(x for x in self if x not in drop)

    def issubset(self, other: Iterable[int]) -> bool:
        return set(self).issubset(other)


EMPTY = OrdSet()

TypeProfile = tuple  # tuple[frozenset, ...], one slot per element of the union
IntersectionType = frozenset  # frozenset[tuple[int, int]]

OrdLike = Union[OrdSet, Sequence[int]]


def ordset(elems: Iterable[int] = ()) -> OrdSet:
    return elems if isinstance(elems, OrdSet) else OrdSet(elems)


def meet(a: Iterable[int], b: Iterable[int]) -> OrdSet:
    bs = set(b)
    return OrdSet._trusted(x for x in ordset(a) if x in bs)


def join(a: Iterable[int], b: Iterable[int]) -> OrdSet:
    return OrdSet._trusted(sorted(set(a) | set(b)))


def top(u: OrdSet):
    """``max(u)``, or ``None`` for the empty set."""
    return u[-1] if u else None


def above(u: OrdSet) -> int:
    """``max(u) + 1`` under the convention ``max(empty) = -1``."""
    return u[-1] + 1 if u else 0


def image(u: OrdLike, positions: Iterable[int]) -> OrdSet:
    """``u[I] = {u(i) | i in I}``."""
    u = ordset(u)
    idx = sorted(set(positions))
    for i in idx:
        if not 0 <= i < len(u):
            raise InputError(f"position {i} out of range for order type {len(u)}")
    return OrdSet._trusted(u[i] for i in idx)


def _positions(u: Sequence[int]) -> dict:
    return {x: i for i, x in enumerate(u)}


def aligned(a: OrdLike, b: OrdLike) -> bool:
    """Equal order type, and every common element sits at the same position."""
    if len(a) != len(b):
        return False
    pos_b = _positions(b)
    for i, x in enumerate(a):
        j = pos_b.get(x)
        if j is not None and j != i:
            return False
    return True


def rmask(a: OrdLike, b: OrdLike) -> OrdSet:
    """Positions of ``a`` whose values also lie in ``b``."""
    bs = set(b)
    return OrdSet._trusted(i for i, x in enumerate(a) if x in bs)


def aligned_above(a: OrdLike, b: OrdLike, i: int) -> bool:
    rho = len(a)
    if len(b) != rho:
        raise InputError(f"aligned_above needs equal order types, got {len(a)} and {len(b)}")
    if not 0 <= i < rho:
        raise InputError(f"position {i} out of range for order type {rho}")
    return aligned(a[i:], b[i:])


def tp(us: Union[Sequence[OrdLike], Mapping]) -> TypeProfile:
    """Type of an indexed family: for each element of the union, in increasing
    order, the set of indices whose member contains it.

    A plain sequence is indexed by position; a mapping by its keys.
    """
    items = list(us.items()) if isinstance(us, Mapping) else list(enumerate(us))
    owners: dict = {}
    for idx, u in items:
        for x in u:
            owners.setdefault(x, set()).add(idx)
    return tuple(frozenset(owners[x]) for x in sorted(owners))


def tp_int(a: OrdLike, b: OrdLike) -> IntersectionType:
    pos_b = _positions(b)
    return frozenset((i, pos_b[x]) for i, x in enumerate(a) if x in pos_b)


def is_possible(a: OrdLike, i: int, alpha: int) -> bool:
    """Can ``a(i)`` be replaced by ``alpha`` without reordering the rest?"""
    if not 0 <= i < len(a):
        raise InputError(f"position {i} out of range for order type {len(a)}")
    if i > 0 and not alpha > a[i - 1]:
        return False
    if i + 1 < len(a) and not alpha < a[i + 1]:
        return False
    return True


def substitute(a: OrdLike, i: int, alpha: int) -> OrdSet:
    if not is_possible(a, i, alpha):
        raise InputError(f"{alpha} is not {i}-possible for {list(a)}")
    items = list(a)
    items[i] = alpha
    return OrdSet._trusted(items)


def delta_distance(a: OrdLike, b: OrdLike) -> int:
    """Number of common elements that occupy different positions in ``a`` and ``b``."""
    pos_b = _positions(b)
    return sum(1 for i, x in enumerate(a) if x in pos_b and pos_b[x] != i)
