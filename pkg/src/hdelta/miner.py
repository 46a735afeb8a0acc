"""Search for sub-grounds on which a family is a uniform Delta-system.

A set ``H`` is *good* when the restriction to ``[H]^n`` admits a uniform
witness, the coloring (if any) is constant on ``[H]^n`` and, on request, the
substitution-invariance check passes. Goodness is inherited by subsets, so a
depth-first search over sorted prefixes can prune at the first failure, and
visits candidates of every size in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Optional, Union

from .deltasys import (
    Family,
    UniformWitness,
    _aligned_pairs,
    complete_witness,
    infer_witness,
    verify_moreover,
    verify_uniform,
    witness_from_masks,
)
from .errors import InputError, ResourceGuardError
from .generators import Coloring
from .ordsets import OrdSet, aligned, ordset, rmask

__all__ = [
    "MineRequest",
    "MineResult",
    "exhaustive_mine",
    "exhaustive_max",
    "greedy_mine",
    "mine",
    "is_good",
    "MAX_GROUND",
]

MAX_GROUND = 20  # 2^20 candidate subsets

ColoringLike = Union[Coloring, Mapping, Callable[[OrdSet], Hashable], None]


def _color_fn(coloring: ColoringLike, f: Family) -> Optional[Callable[[OrdSet], Hashable]]:
    if coloring is None:
        return None
    if isinstance(coloring, Coloring):
        if coloring.product or coloring.n != f.n:
            raise InputError("coloring must be over sorted index sets of the family's dimension")
        if not set(f.ground).issubset(coloring.ground):
            raise InputError("coloring does not cover the family's ground")
        return coloring
    if isinstance(coloring, Mapping):
        table = {ordset(k): v for k, v in coloring.items()}
        missing = [list(b) for b in f.indices() if b not in table]
        if missing:
            raise InputError(f"coloring is not total; missing {missing[:3]}")
        return table.__getitem__
    if callable(coloring):
        return coloring
    raise InputError(f"unsupported coloring {coloring!r}")


@dataclass(frozen=True)
class MineRequest:
    family: Family
    target: int
    coloring: ColoringLike = None
    mode: str = "exact"
    require_moreover: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "greedy"):
            raise InputError(f"mode must be 'exact' or 'greedy', got {self.mode!r}")
        if not isinstance(self.target, int) or self.target < 1:
            raise InputError(f"target must be a positive integer, got {self.target!r}")
        if self.target > len(self.family.ground):
            raise InputError(f"target {self.target} exceeds ground size {len(self.family.ground)}")


@dataclass(frozen=True)
class MineResult:
    H: OrdSet
    witness: UniformWitness
    color: Optional[Hashable] = None


def is_good(f: Family, H, color: Optional[Callable] = None, require_moreover: bool = False) -> bool:
    """Non-incremental goodness check, used by the greedy sweep and as an oracle."""
    sub = f.restrict(H)
    if complete_witness(sub) is None:
        return False
    if color is not None and len({color(b) for b in sub.indices()}) > 1:
        return False
    return not require_moreover or verify_moreover(sub)


def _result(f: Family, H: OrdSet, color: Optional[Callable], require_moreover: bool) -> MineResult:
    sub = f.restrict(H)
    w = infer_witness(sub) if len(H) >= 2 * f.n else complete_witness(sub)
    if w is None or not verify_uniform(sub, w):
        raise AssertionError(f"miner produced a non-uniform set {list(H)}")
    col = None
    if color is not None:
        cols = {color(b) for b in sub.indices()}
        if len(cols) > 1:
            raise AssertionError(f"miner produced a non-monochromatic set {list(H)}")
        col = cols.pop() if cols else None
    if require_moreover and not verify_moreover(sub):
        raise AssertionError(f"miner produced a set failing the moreover check {list(H)}")
    return MineResult(H, w, col)


class _Search:
    """Incremental goodness over sorted prefixes of ``f.ground``."""

    def __init__(self, f: Family, color: Optional[Callable], require_moreover: bool):
        self.f = f
        self.color = color
        self.require_moreover = require_moreover
        ground = f.ground
        pos = {x: i for i, x in enumerate(ground)}
        keys = f.indices()
        vals = [f.entries[k] for k in keys]
        self.vals = vals
        bits = [sum(1 << pos[x] for x in k) for k in keys]
        self.key_bits = bits
        self.keys_at = [[] for _ in ground]
        for i, k in enumerate(keys):
            self.keys_at[pos[k[-1]]].append(i)
        self.pairs_at = [[] for _ in ground]
        for i, j, m in _aligned_pairs(ground, f.n):
            top = max(pos[keys[i][-1]], pos[keys[j][-1]])
            ok = aligned(vals[i], vals[j])
            r = rmask(vals[i], vals[j]) if ok else None
            self.pairs_at[top].append((bits[i] | bits[j], m, r))
        self.colors = [color(k) for k in keys] if color is not None else None

    def extend(self, state: tuple, p: int) -> Optional[tuple]:
        """Add ground position ``p`` (above every position in the state)."""
        hbits, rho, col, realized = state
        hbits |= 1 << p
        for i in self.keys_at[p]:
            kb = self.key_bits[i]
            if hbits & kb != kb:
                continue
            o = len(self.vals[i])
            if rho is None:
                rho = o
            elif o != rho:
                return None
            if self.colors is not None:
                c = self.colors[i]
                if col is None:
                    col = (c,)
                elif col[0] != c:
                    return None
        grew = False
        for pb, m, r in self.pairs_at[p]:
            if pb & hbits != pb:
                continue
            if r is None:
                return None
            old = realized.get(m)
            if old is None:
                if not grew:
                    realized = dict(realized)
                    grew = True
                realized[m] = r
            elif old != r:
                return None
        if grew and witness_from_masks(self.f.n, rho or 0, realized) is None:
            return None
        state = (hbits, rho, col, realized)
        if self.require_moreover and not verify_moreover(self.f.restrict(self.members(hbits))):
            return None
        return state

    def members(self, hbits: int) -> OrdSet:
        g = self.f.ground
        return OrdSet._trusted(g[i] for i in range(len(g)) if hbits >> i & 1)


_START = (0, None, None, {})


def exhaustive_mine(req: MineRequest) -> Optional[MineResult]:
    """Lexicographically least good ``H`` of size ``req.target``, or ``None``."""
    if req.mode != "exact":
        raise InputError("exhaustive_mine needs mode 'exact'")
    f = req.family
    color = _color_fn(req.coloring, f)
    s = _Search(f, color, req.require_moreover)
    size = len(f.ground)
    target = req.target

    def dfs(state: tuple, start: int, depth: int) -> Optional[int]:
        if depth == target:
            return state[0]
        for p in range(start, size - (target - depth) + 1):
            nxt = s.extend(state, p)
            if nxt is not None:
                found = dfs(nxt, p + 1, depth + 1)
                if found is not None:
                    return found
        return None

    hbits = dfs(_START, 0, 0)
    if hbits is None:
        return None
    return _result(f, s.members(hbits), color, req.require_moreover)


def exhaustive_max(f: Family, coloring: ColoringLike = None, require_moreover: bool = False) -> tuple:
    """``(hmax, H)``: the largest good size and its lexicographically least set."""
    if len(f.ground) > MAX_GROUND:
        raise ResourceGuardError(
            f"exhaustive_max enumerates 2^{len(f.ground)} subsets; the guard is 2^{MAX_GROUND}"
        )
    color = _color_fn(coloring, f)
    s = _Search(f, color, require_moreover)
    size = len(f.ground)
    best = [0, 0]

    def dfs(state: tuple, start: int, depth: int) -> None:
        if depth > best[0]:
            best[0], best[1] = depth, state[0]
        for p in range(start, size):
            if depth + (size - p) <= best[0]:
                return
            nxt = s.extend(state, p)
            if nxt is not None:
                dfs(nxt, p + 1, depth + 1)

    dfs(_START, 0, 0)
    return best[0], s.members(best[1])


def _derived(f: Family, color: Optional[Callable]) -> tuple:
    """Drop to dimension ``n - 1`` by fixing the top ground point as last coordinate."""
    t = f.ground[-1]
    rest = OrdSet._trusted(f.ground[:-1])
    n1 = f.n - 1
    sub = Family.build(n1, rest, lambda a: f.entries[OrdSet._trusted(a + (t,))])

    def profile(a: OrdSet) -> tuple:
        lo = a[-1] if a else -1
        exts = [f.entries[OrdSet._trusted(a + (b,))] for b in f.ground if b > lo]
        u = exts[-1]
        fixed = tuple(
            i for i in range(len(u)) if all(len(v) == len(u) and v[i] == u[i] for v in exts)
        )
        c = color(OrdSet._trusted(a + (t,))) if color is not None else None
        return (c, len(u), fixed)

    table = {a: profile(a) for a in sub.indices()}
    return sub, table.__getitem__


def _greedy_set(f: Family, color: Optional[Callable], require_moreover: bool) -> OrdSet:
    if f.n == 1 or len(f.ground) <= f.n:
        order = list(f.ground)
    else:
        sub, sub_color = _derived(f, color)
        h0 = _greedy_set(sub, sub_color, False)
        first = sorted(set(h0) | {f.ground[-1]})
        order = first + [x for x in f.ground if x not in set(first)]
    plain = _sweep(f, order, color, require_moreover, avoid_values=False)
    avoiding = _sweep(f, order, color, require_moreover, avoid_values=True)
    return avoiding if len(avoiding) > len(plain) else plain


def _sweep(f: Family, order: list, color, require_moreover: bool, avoid_values: bool) -> OrdSet:
    # with avoid_values, a point already occurring in a selected value set is
    # skipped, so fresh parts chosen earlier cannot later collide with new indices
    chosen: list = []
    used: set = set()
    for beta in order:
        if avoid_values and beta in used:
            continue
        trial = sorted(chosen + [beta])
        if is_good(f, trial, color, require_moreover):
            chosen = trial
            if avoid_values:
                used.update(x for b in f.restrict(trial).values() for x in b)
    return OrdSet(chosen)


def greedy_mine(req: MineRequest) -> Optional[MineResult]:
    """Sound, incomplete search. Any returned set passes every verifier."""
    if req.mode != "greedy":
        raise InputError("greedy_mine needs mode 'greedy'")
    f = req.family
    color = _color_fn(req.coloring, f)
    H = _greedy_set(f, color, req.require_moreover)
    if len(H) < req.target:
        return None
    return _result(f, OrdSet._trusted(H[: req.target]), color, req.require_moreover)


def mine(req: MineRequest) -> Optional[MineResult]:
    return exhaustive_mine(req) if req.mode == "exact" else greedy_mine(req)
