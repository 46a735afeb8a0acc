"""Finite Cohen conditions: compatibility, aligned refinement, grids.

A condition is a finite partial function from naturals to bits. Nothing here
is a forcing argument; the functions build explicit finite objects and check
the compatibility facts about them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .deltasys import Family, UniformWitness, index_sets, verify_uniform
from .errors import InputError, ResourceGuardError
from .generators import Coloring, gen_product_family
from .miner import MineRequest, exhaustive_mine
from .ordsets import OrdSet, aligned, image, ordset

__all__ = [
    "Condition",
    "Pattern",
    "ConditionFamily",
    "Grid",
    "compatible",
    "union",
    "pattern",
    "knaster_refine",
    "grid_build",
    "polarized_search",
    "knaster_example_family",
    "product_condition_family",
    "POLARIZED_GUARD",
]

POLARIZED_GUARD = 5_000_000


@dataclass(frozen=True)
class Condition:
    """Sorted ``(coordinate, bit)`` pairs."""

    items: tuple = ()

    def __post_init__(self) -> None:
        src = self.items.items() if isinstance(self.items, Mapping) else self.items
        pairs = sorted((c, b) for c, b in src)
        for c, b in pairs:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InputError(f"condition coordinate must be a natural number, got {c!r}")
            if b not in (0, 1) or isinstance(b, bool):
                raise InputError(f"condition value must be 0 or 1, got {b!r}")
        for (c0, _), (c1, _) in zip(pairs, pairs[1:]):
            if c0 == c1:
                raise InputError(f"coordinate {c0} assigned twice")
        object.__setattr__(self, "items", tuple(pairs))

    @classmethod
    def of(cls, assignment: Union[Mapping, Iterable] = ()) -> "Condition":
        return cls(tuple(assignment.items()) if isinstance(assignment, Mapping) else tuple(assignment))

    @property
    def dom(self) -> OrdSet:
        return OrdSet._trusted(c for c, _ in self.items)

    def as_dict(self) -> dict:
        return dict(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, coord: int) -> int:
        return self.as_dict()[coord]

    def issubset(self, other: "Condition") -> bool:
        """``self`` is a restriction of ``other`` (``other`` extends ``self``)."""
        big = other.as_dict()
        return all(big.get(c) == b for c, b in self.items)

    def restrict(self, coords: Iterable[int]) -> "Condition":
        keep = set(coords)
        return Condition(tuple((c, b) for c, b in self.items if c in keep))

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{c}->{b}" for c, b in self.items) + "}"


def compatible(p: Condition, q: Condition) -> bool:
    """``p`` and ``q`` agree on their common coordinates."""
    small, big = (p, q) if len(p) <= len(q) else (q, p)
    table = big.as_dict()
    return all(table.get(c, b) == b for c, b in small.items)


def union(conds: Iterable[Condition]) -> Optional[Condition]:
    """The common extension of ``conds``, or ``None`` if two of them clash."""
    table: dict = {}
    for p in conds:
        for c, b in p.items:
            if table.setdefault(c, b) != b:
                return None
    return Condition(tuple(table.items()))


@dataclass(frozen=True)
class Pattern:
    arity: int
    bits: str

    def __str__(self) -> str:
        return self.bits


def pattern(p: Condition) -> Pattern:
    """The bits of ``p`` listed in increasing order of coordinate."""
    return Pattern(len(p), "".join(str(b) for _, b in p.items))


@dataclass(frozen=True, eq=True)
class ConditionFamily:
    """A total map from ``[ground]^n`` to conditions."""

    n: int
    ground: OrdSet
    entries: Mapping[OrdSet, Condition] = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"dimension must be at least 1, got {self.n!r}")
        ground = ordset(self.ground)
        object.__setattr__(self, "ground", ground)
        given = {ordset(k): v if isinstance(v, Condition) else Condition.of(v) for k, v in self.entries.items()}
        keys = index_sets(ground, self.n)
        if set(given) != set(keys) or len(given) != len(self.entries):
            raise InputError(f"condition family must be total over [ground]^{self.n}")
        object.__setattr__(self, "entries", {k: given[k] for k in keys})

    def __getitem__(self, idx: Iterable[int]) -> Condition:
        return self.entries[ordset(idx)]

    def indices(self) -> tuple:
        return index_sets(self.ground, self.n)

    def domain_family(self) -> Family:
        return Family(self.n, self.ground, {k: p.dom for k, p in self.entries.items()})

    def restrict(self, H: Iterable[int]) -> "ConditionFamily":
        H = ordset(H)
        if not set(H).issubset(self.ground):
            raise InputError(f"{list(H)} is not a subset of the ground set")
        return ConditionFamily(self.n, H, {b: self.entries[b] for b in index_sets(H, self.n)})


@dataclass(frozen=True)
class Grid:
    """Pairwise disjoint blocks; :attr:`separated` when ``A_0 < A_1 < ...``."""

    blocks: tuple

    def __post_init__(self) -> None:
        blocks = tuple(ordset(b) for b in self.blocks)
        seen: set = set()
        for b in blocks:
            if seen & set(b):
                raise InputError("grid blocks must be pairwise disjoint")
            seen |= set(b)
        object.__setattr__(self, "blocks", blocks)

    @property
    def separated(self) -> bool:
        return all(a and b and a[-1] < b[0] for a, b in zip(self.blocks, self.blocks[1:]))

    def tuples(self) -> Iterator[tuple]:
        return product(*self.blocks)


def knaster_example_family(mu: int) -> ConditionFamily:
    """``p_{ab} = {a -> 0, b -> 1}`` over ``[mu]^2``."""
    ground = OrdSet._trusted(range(mu))
    return ConditionFamily(2, ground, {b: Condition(((b[0], 0), (b[1], 1))) for b in index_sets(ground, 2)})


def product_condition_family(mu: int, n: int, offsets: Sequence[int], bits: str) -> ConditionFamily:
    """Domains ``{offsets[m] + b(m)}``, every condition carrying the pattern ``bits``."""
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise InputError(f"pattern must be a bit string of length {n}, got {bits!r}")
    dom = gen_product_family(mu, n, offsets)
    return ConditionFamily(
        n, dom.ground, {b: Condition(tuple(zip(u, map(int, bits)))) for b, u in dom.entries.items()}
    )


def _aligned_incompatibility(cf: ConditionFamily) -> Optional[tuple]:
    keys = cf.indices()
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            if aligned(a, b) and not compatible(cf.entries[a], cf.entries[b]):
                return a, b
    return None


def knaster_refine(cf: ConditionFamily, target: int) -> Optional[OrdSet]:
    """Least ``H`` of size ``target`` on which the domains form a uniform system
    and the patterns are constant; aligned conditions over ``H`` are then
    pairwise compatible (checked)."""
    pats = {b: pattern(p) for b, p in cf.entries.items()}
    res = exhaustive_mine(MineRequest(cf.domain_family(), target, pats, "exact"))
    if res is None:
        return None
    bad = _aligned_incompatibility(cf.restrict(res.H))
    if bad is not None:
        raise AssertionError(f"aligned indices {list(bad[0])}, {list(bad[1])} carry incompatible conditions")
    return res.H


def _segments(H: OrdSet, n: int) -> list:
    q, r = divmod(len(H), n)
    out, start = [], 0
    for m in range(n):
        size = q + (1 if m < r else 0)
        out.append(H[start : start + size])
        start += size
    return out


def grid_build(
    cf: ConditionFamily, H: Iterable[int], witness: UniformWitness, width: int
) -> Optional[tuple]:
    """Finite matrix construction: ``(Grid, qstar)`` or ``None``.

    ``H`` is cut into ``n`` consecutive segments; ``delta_m`` is the top of
    segment ``m`` and the ``alpha_{m,l}`` are drawn from the rest of it, in
    anti-lexicographic order of ``(m, l)``. Each ``alpha`` is the least
    candidate for which every new condition's domain outside its
    ``r_{n - {m}}`` part misses ``dom(qstar)`` and the new conditions are
    compatible with ``qstar``.
    """
    H = ordset(H)
    n = cf.n
    if isinstance(width, bool) or not isinstance(width, int) or width < 0:
        raise InputError(f"width must be a natural number, got {width!r}")
    sub = cf.restrict(H)
    if not verify_uniform(sub.domain_family(), witness):
        raise InputError("the domains over H are not uniform under the given witness")
    if len({pattern(p) for p in sub.entries.values()}) > 1:
        raise InputError("grid_build needs a constant pattern over [H]^n")
    if len(H) < n:
        return None
    segs = _segments(H, n)
    delta = [s[-1] for s in segs]
    pool = [s[:-1] for s in segs]
    chosen: list = [[] for _ in range(n)]
    qstar = sub.entries[OrdSet._trusted(delta)]
    for ell in range(width):
        for m in range(n):
            rest = witness.rmap[OrdSet._trusted(i for i in range(n) if i != m)]
            before = [chosen[j] + [delta[j]] for j in range(m)]
            after = [chosen[j] + [delta[j]] for j in range(m + 1, n)]
            floor = chosen[m][-1] if chosen[m] else -1
            used = set(qstar.dom)
            pick = None
            for alpha in pool[m]:
                if alpha <= floor:
                    continue
                conds = []
                clash = False
                for b0 in product(*before):
                    for b1 in product(*after):
                        b = OrdSet._trusted(b0 + (alpha,) + b1)
                        p = sub.entries[b]
                        fresh = set(p.dom) - set(image(p.dom, rest))
                        if fresh & used:
                            clash = True
                            break
                        conds.append(p)
                    if clash:
                        break
                if clash:
                    continue
                merged = union([qstar] + conds)
                if merged is not None:
                    pick = (alpha, merged)
                    break
            if pick is None:
                return None
            chosen[m].append(pick[0])
            qstar = pick[1]
    grid = Grid(tuple(OrdSet(chosen[m] + [delta[m]]) for m in range(n)))
    for b in grid.tuples():
        if not sub.entries[OrdSet._trusted(b)].issubset(qstar):
            raise AssertionError(f"condition at {list(b)} is not contained in qstar")
    return grid, qstar


def polarized_search(f: Coloring, t: int, separated: bool = False) -> Optional[Grid]:
    """Lexicographically least pairwise disjoint blocks ``A_0, ..., A_{n-1}``
    of size ``t`` with ``f`` constant on their product, or ``None``.

    With ``separated`` the blocks must also satisfy ``A_0 < A_1 < ...``.
    """
    if not f.product:
        raise InputError("polarized_search expects a coloring of tuples")
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise InputError(f"block size must be at least 1, got {t!r}")
    ground = f.ground
    n = f.n
    if n * t > len(ground):
        return None
    work = 1
    for i in range(n):
        work *= comb(len(ground) - i * t, t)
    if work > POLARIZED_GUARD:
        raise ResourceGuardError(f"polarized search would examine {work} block sequences")
    table = f.table()

    def constant(blocks: list) -> bool:
        first = None
        for x in product(*blocks):
            c = table[x]
            if first is None:
                first = (c,)
            elif first[0] != c:
                return False
        return True

    def dfs(blocks: list, used: frozenset) -> Optional[list]:
        if len(blocks) == n:
            return blocks if constant(blocks) else None
        avail = [x for x in ground if x not in used]
        if separated and blocks:
            avail = [x for x in avail if x > blocks[-1][-1]]
        for block in combinations(avail, t):
            found = dfs(blocks + [block], used | set(block))
            if found is not None:
                return found
        return None

    hit = dfs([], frozenset())
    return None if hit is None else Grid(tuple(hit))
