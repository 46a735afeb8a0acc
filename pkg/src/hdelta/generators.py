"""Example families, colorings and the polarized lifting construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from .deltasys import Family, index_sets
from .errors import InputError
from .ordsets import EMPTY, OrdSet, ordset

__all__ = [
    "Coloring",
    "constant_coloring",
    "parity_coloring",
    "gen_product_family",
    "gen_shift_family",
    "gen_indicator_family",
    "gen_pairing_family",
    "cantor_pair",
    "first_difference",
    "first_difference_coloring",
    "lift_polarized",
    "embed_below",
]


@dataclass(frozen=True, eq=False)
class Coloring:
    """A coloring of ``[ground]^n`` (sorted index sets), or of ``ground^n``
    (arbitrary tuples) when ``product`` is set.

    Colors are any hashable values; the file format carries integers or
    arrays, the latter read back as tuples.
    """

    n: int
    ground: OrdSet
    fn: Callable[[tuple], Hashable] = field(repr=False)
    product: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"coloring dimension must be at least 1, got {self.n!r}")
        object.__setattr__(self, "ground", ordset(self.ground))

    @classmethod
    def from_table(cls, n: int, ground: Iterable[int], table: Mapping, product: bool = False) -> "Coloring":
        ground = ordset(ground)
        if product:
            norm = {tuple(k): v for k, v in table.items()}
        else:
            norm = {ordset(k): v for k, v in table.items()}
        probe = cls(n, ground, norm.__getitem__, product)
        expected = set(probe.domain())
        if set(norm) != expected:
            missing = [list(k) for k in probe.domain() if k not in norm][:3]
            raise InputError(f"coloring must be total over its domain; missing {missing}")
        return probe

    def domain(self) -> Iterator[tuple]:
        if self.product:
            yield from cartesian(self.ground, repeat=self.n)
        else:
            yield from index_sets(self.ground, self.n)

    def __call__(self, idx: Iterable[int]) -> Hashable:
        key = tuple(idx) if self.product else ordset(idx)
        if len(key) != self.n:
            raise InputError(f"coloring expects {self.n} coordinates, got {len(key)}")
        return self.fn(key)

    def table(self) -> dict:
        return {k: self.fn(k) for k in self.domain()}

    def colors(self) -> set:
        return set(self.table().values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return (self.n, self.ground, self.product) == (other.n, other.ground, other.product) and (
            self.table() == other.table()
        )

    __hash__ = None  # type: ignore[assignment]


def constant_coloring(mu: int, n: int, color: Hashable = 0, product: bool = False) -> Coloring:
    return Coloring(n, OrdSet._trusted(range(mu)), lambda _k: color, product)


def parity_coloring(mu: int, n: int, product: bool = False) -> Coloring:
    """Color of an index is the parity of its coordinate sum."""
    return Coloring(n, OrdSet._trusted(range(mu)), lambda k: sum(k) % 2, product)


def gen_product_family(mu: int, n: int, offsets: Sequence[int]) -> Family:
    """``u_b = {offsets[m] + b(m) | m < n}`` over the ground ``range(mu)``."""
    offsets = list(offsets)
    if len(offsets) != n:
        raise InputError(f"need {n} offsets, got {len(offsets)}")
    blocks = [(0, mu)] + [(o, o + mu) for o in offsets]
    if any(o < 0 for o in offsets):
        raise InputError("offsets must be non-negative")
    for i, (lo, hi) in enumerate(blocks):
        for lo2, hi2 in blocks[i + 1 :]:
            if lo < hi2 and lo2 < hi:
                raise InputError(f"offset blocks overlap: [{lo},{hi}) and [{lo2},{hi2})")
    return Family.build(n, range(mu), lambda b: [offsets[m] + b[m] for m in range(n)])


def gen_shift_family(mu: int) -> Family:
    """``u_{ab} = {a, b + 1}``."""
    if mu < 2:
        raise InputError(f"shift family needs mu >= 2, got {mu}")
    return Family.build(2, range(mu), lambda b: [b[0], b[1] + 1])


def _check_binary(c: Coloring, mu: int, n: int) -> None:
    if c.product:
        raise InputError("expected a coloring of sorted index sets")
    if c.n != n:
        raise InputError(f"coloring has dimension {c.n}, expected {n}")
    if not set(range(mu)).issubset(c.ground):
        raise InputError(f"coloring does not cover the ground range({mu})")


_SINGLE_ZERO = OrdSet._trusted((0,))


def gen_indicator_family(mu: int, n: int, c: Coloring) -> Family:
    """``u_a`` is the empty set when ``c(a) = 0`` and ``{0}`` when ``c(a) = 1``."""
    _check_binary(c, mu, n)

    def entry(a: OrdSet) -> list:
        col = c(a)
        if col not in (0, 1) or isinstance(col, bool):
            raise InputError(f"indicator family needs colors in {{0,1}}, got {col!r} at {list(a)}")
        return _SINGLE_ZERO if col == 1 else EMPTY

    return Family.build(n, range(mu), entry)


def cantor_pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def gen_pairing_family(mu: int, c: Coloring) -> Family:
    """``u_{ab}`` is empty on color 0 and the singleton ``{mu + pair(a, b)}`` otherwise."""
    _check_binary(c, mu, 2)
    return Family.build(2, range(mu), lambda b: [] if c(b) == 0 else [mu + cantor_pair(b[0], b[1])])


def first_difference(a: int, b: int) -> int:
    """Least bit position where ``a`` and ``b`` differ."""
    if a == b:
        raise InputError("first_difference needs distinct arguments")
    x = a ^ b
    return (x & -x).bit_length() - 1


def first_difference_coloring(bits: int, colors: Optional[int] = 2) -> Coloring:
    """Coloring of pairs from ``range(2**bits)`` by their least differing bit,
    reduced mod ``colors`` (``None`` leaves it unreduced)."""
    if not 0 <= bits <= 20:
        raise InputError(f"bits must lie in 0..20, got {bits}")
    if colors is not None and colors < 1:
        raise InputError("colors must be positive")
    if colors is None:
        fn = lambda k: first_difference(k[0], k[1])
    else:
        fn = lambda k: first_difference(k[0], k[1]) % colors
    return Coloring(2, OrdSet._trusted(range(2 ** bits)), fn)


def embed_below(beta: int, K: int) -> Callable[[int], int]:
    """Map of ``range(beta)`` into ``range(K)``: identity when ``beta <= K``,
    reduction mod ``K`` otherwise (injective only while ``beta <= K``)."""
    if beta <= K:
        return lambda x: x
    return lambda x: x % K


def lift_polarized(g: Coloring, M: int) -> Coloring:
    """Coloring of ``range(M)^(n+1)`` built from a coloring ``g`` of ``range(K)^n``.

    A tuple with a repeated coordinate gets ``(n+1, 0)``. Otherwise, with ``i``
    the position of the largest coordinate ``beta``, the color is
    ``(i, g(e(rest)))`` where ``rest`` drops position ``i`` and ``e`` is
    :func:`embed_below` for ``beta``.
    """
    if not g.product:
        raise InputError("lift_polarized expects a product coloring")
    K = len(g.ground)
    if g.ground != OrdSet._trusted(range(K)):
        raise InputError("lift_polarized expects a coloring over range(K)")
    n = g.n
    if M < K:
        raise InputError(f"need M >= K, got M={M}, K={K}")

    def fn(x: tuple) -> tuple:
        if len(set(x)) < len(x):
            return (n + 1, 0)
        i = max(range(len(x)), key=x.__getitem__)
        e = embed_below(x[i], K)
        rest = tuple(e(y) for j, y in enumerate(x) if j != i)
        return (i, g(rest))

    return Coloring(n + 1, OrdSet._trusted(range(M)), fn, product=True)
