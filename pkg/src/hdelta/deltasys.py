"""Delta-system predicates over families of finite ordinal sets.

A :class:`Family` is indexed by the ``n``-element subsets of a finite ground
set. All checks are exhaustive over index pairs; pairs are enumerated in
lexicographic order of their (sorted) index tuples so that the first
violation reported is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import InputError
from .ordsets import (
    EMPTY,
    OrdSet,
    aligned,
    aligned_above,
    image,
    is_possible,
    meet,
    ordset,
    rmask,
    substitute,
    tp,
    tp_int,
)

__all__ = [
    "Family",
    "UniformWitness",
    "RootSystem",
    "index_sets",
    "masks",
    "verify_classical",
    "verify_uniform_1d",
    "refine_uniform_1d",
    "verify_strict",
    "strict_violation",
    "verify_ndim",
    "ndim_violation",
    "root_constraints",
    "find_roots",
    "infer_witness",
    "complete_witness",
    "witness_from_masks",
    "verify_uniform",
    "uniform_violation",
    "derive_roots",
    "verify_moreover",
    "moreover_violation",
    "verify_variation",
    "variation_violation",
]


@lru_cache(maxsize=None)
def index_sets(ground: OrdSet, k: int) -> tuple:
    """``[ground]^k`` as OrdSets in lexicographic order."""
    return tuple(OrdSet._trusted(c) for c in combinations(ground, k))


@lru_cache(maxsize=None)
def masks(n: int) -> tuple:
    """All subsets of ``{0, ..., n-1}``, by size and then lexicographically."""
    return tuple(OrdSet._trusted(c) for k in range(n + 1) for c in combinations(range(n), k))


@lru_cache(maxsize=64)
def _aligned_pairs(ground: OrdSet, n: int) -> tuple:
    # (i, j, mask) over key positions i <= j with keys[i], keys[j] aligned
    keys = index_sets(ground, n)
    out = []
    for i, a in enumerate(keys):
        for j in range(i, len(keys)):
            b = keys[j]
            if aligned(a, b):
                out.append((i, j, rmask(a, b)))
    return tuple(out)


def _subsets_up_to(ground: OrdSet, n: int) -> Iterator[OrdSet]:
    for k in range(n + 1):
        yield from index_sets(ground, k)


@dataclass(frozen=True, eq=True)
class Family:
    """A total map from ``[ground]^n`` to finite ordinal sets."""

    n: int
    ground: OrdSet
    entries: Mapping[OrdSet, OrdSet] = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"dimension must be at least 1, got {self.n!r}")
        ground = ordset(self.ground)
        object.__setattr__(self, "ground", ground)
        keys = index_sets(ground, self.n)
        given = {ordset(k): ordset(v) for k, v in self.entries.items()}
        if len(given) != len(self.entries) or set(given) != set(keys):
            missing = [list(k) for k in keys if k not in given][:3]
            extra = [list(k) for k in given if k not in set(keys)][:3]
            raise InputError(
                f"family must be total over [ground]^{self.n}: missing {missing}, unexpected {extra}"
            )
        object.__setattr__(self, "entries", {k: given[k] for k in keys})

    @classmethod
    def build(cls, n: int, ground: Iterable[int], fn: Callable[[OrdSet], Iterable[int]]) -> "Family":
        ground = ordset(ground)
        return cls(n, ground, {b: ordset(fn(b)) for b in index_sets(ground, n)})

    def __getitem__(self, idx: Iterable[int]) -> OrdSet:
        return self.entries[ordset(idx)]

    def __len__(self) -> int:
        return len(self.entries)

    def indices(self) -> tuple:
        return index_sets(self.ground, self.n)

    def values(self) -> list:
        return list(self.entries.values())

    def restrict(self, H: Iterable[int]) -> "Family":
        H = ordset(H)
        if not set(H).issubset(self.ground):
            raise InputError(f"{list(H)} is not a subset of the ground set")
        return Family(self.n, H, {b: self.entries[b] for b in index_sets(H, self.n)})

    def aligned_pairs(self) -> Iterator[tuple]:
        """Yield ``(a, b, r(a, b))`` for aligned index pairs ``a <= b``."""
        keys = self.indices()
        for i, j, m in _aligned_pairs(self.ground, self.n):
            yield keys[i], keys[j], m


@dataclass(frozen=True)
class UniformWitness:
    """Common order type ``rho`` and one value-mask ``r_m`` per index mask ``m``."""

    rho: int
    rmap: Mapping[OrdSet, OrdSet]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rmap", {ordset(k): ordset(v) for k, v in self.rmap.items()})

    def __getitem__(self, m: Iterable[int]) -> OrdSet:
        return self.rmap[ordset(m)]

    def problems(self, n: int) -> list:
        """Structural defects of the witness for dimension ``n`` (empty if none)."""
        out = []
        for m in masks(n):
            if m not in self.rmap:
                out.append({"clause": "witness", "reason": "missing mask", "mask": list(m)})
                continue
            r = self.rmap[m]
            if r and r[-1] >= self.rho:
                out.append({"clause": "witness", "reason": "position out of range", "mask": list(m)})
        extra = [list(m) for m in self.rmap if m not in set(masks(n))]
        if extra:
            out.append({"clause": "witness", "reason": "unexpected masks", "masks": extra})
        if out:
            return out
        for m0, m1 in combinations(masks(n), 2):
            if self.rmap[meet(m0, m1)] != meet(self.rmap[m0], self.rmap[m1]):
                out.append({"clause": 3, "masks": [list(m0), list(m1)]})
                break
        full = OrdSet._trusted(range(self.rho))
        if self.rmap[OrdSet._trusted(range(n))] != full:
            out.append({"clause": 2, "reason": "full mask must select every position", "mask": list(range(n))})
        return out


@dataclass(frozen=True)
class RootSystem:
    """Roots ``R^m_a`` keyed by ``(m, a)`` with ``m`` a mask and ``|a| = |m|``."""

    n: int
    ground: OrdSet
    roots: Mapping[tuple, OrdSet] = field(repr=False)

    def __post_init__(self) -> None:
        ground = ordset(self.ground)
        object.__setattr__(self, "ground", ground)
        roots = {(ordset(m), ordset(a)): ordset(v) for (m, a), v in self.roots.items()}
        for m in masks(self.n):
            for a in index_sets(ground, len(m)):
                if (m, a) not in roots:
                    raise InputError(f"root system is missing R^{list(m)}_{list(a)}")
        object.__setattr__(self, "roots", roots)

    def __getitem__(self, key: tuple) -> OrdSet:
        m, a = key
        return self.roots[ordset(m), ordset(a)]

    @classmethod
    def flat(cls, f: Family, value: Iterable[int] = EMPTY) -> "RootSystem":
        """Every proper-mask root equal to ``value``; the full-mask roots are ``u_b``
        (forced, since each index set is aligned with itself)."""
        value = ordset(value)
        full = OrdSet._trusted(range(f.n))
        roots = {}
        for m in masks(f.n):
            for a in index_sets(f.ground, len(m)):
                roots[m, a] = f.entries[a] if m == full else value
        return cls(f.n, f.ground, roots)


# --- one-dimensional families -------------------------------------------------


def verify_classical(us: Sequence[Iterable[int]]) -> Optional[OrdSet]:
    """Root of the Delta-system ``us`` (pairs of distinct positions), or ``None``."""
    us = [ordset(u) for u in us]
    if not us:
        return EMPTY
    if len(us) == 1:
        return us[0]
    root = meet(us[0], us[1])
    for u, v in combinations(us, 2):
        if meet(u, v) != root:
            return None
    return root


def verify_uniform_1d(us: Sequence[Iterable[int]]) -> Optional[tuple]:
    """``(root, mask)`` if ``us`` is a uniform Delta-system, else ``None``."""
    us = [ordset(u) for u in us]
    if not us:
        return EMPTY, EMPTY
    if len(us) == 1:
        return us[0], OrdSet._trusted(range(len(us[0])))
    root = meet(us[0], us[1])
    mask = rmask(us[0], us[1])
    for u, v in combinations(us, 2):
        if not aligned(u, v) or meet(u, v) != root or rmask(u, v) != mask:
            return None
    return root, mask


def refine_uniform_1d(us: Sequence[Iterable[int]]) -> list:
    """Largest sub-list on which the position of the root is constant.

    Ties go to the lexicographically least mask.
    """
    us = [ordset(u) for u in us]
    root = verify_classical(us)
    if root is None:
        raise InputError("refine_uniform_1d needs a Delta-system")
    if len({len(u) for u in us}) > 1:
        raise InputError("refine_uniform_1d needs members of equal order type")
    groups: dict = {}
    for u in us:
        groups.setdefault((len(u), tuple(rmask(u, root))), []).append(u)
    if not groups:
        return []
    best = min(groups, key=lambda k: (-len(groups[k]), k))
    return groups[best]


# --- strict and root-system forms ---------------------------------------------


def strict_violation(f: Family) -> Optional[dict]:
    """First pair ``b, b'`` whose intersection disagrees with an earlier pair
    having the same ``b & b'``."""
    seen: dict = {}
    keys = f.indices()
    for i, a in enumerate(keys):
        ua = f.entries[a]
        for b in keys[i:]:
            k = meet(a, b)
            val = meet(ua, f.entries[b])
            if k not in seen:
                seen[k] = (a, b, val)
            elif seen[k][2] != val:
                a0, b0, v0 = seen[k]
                return {
                    "clause": "strict",
                    "first": [list(a0), list(b0)],
                    "second": [list(a), list(b)],
                    "common": list(k),
                    "first_meet": list(v0),
                    "second_meet": list(val),
                }
    return None


def verify_strict(f: Family) -> bool:
    return strict_violation(f) is None


def ndim_violation(f: Family, rs: RootSystem) -> Optional[dict]:
    if rs.n != f.n:
        raise InputError(f"root system has dimension {rs.n}, family has {f.n}")
    for a, b, m in f.aligned_pairs():
        key = (m, image(a, m))
        if key not in rs.roots:
            raise InputError(f"root system is missing R^{list(m)}_{list(key[1])}")
        got = meet(f.entries[a], f.entries[b])
        if got != rs.roots[key]:
            return {
                "clause": "ndim",
                "pair": [list(a), list(b)],
                "mask": list(m),
                "root": list(rs.roots[key]),
                "meet": list(got),
            }
    return None


def verify_ndim(f: Family, rs: RootSystem) -> bool:
    return ndim_violation(f, rs) is None


@lru_cache(maxsize=64)
def _root_pairs(ground: OrdSet, n: int) -> tuple:
    # (a, b, (m, a[m])) for aligned index pairs a <= b: the root key each pair constrains
    keys = index_sets(ground, n)
    return tuple((keys[i], keys[j], (m, image(keys[i], m))) for i, j, m in _aligned_pairs(ground, n))


def root_constraints(f: Family) -> dict:
    """For each root key ``(m, a)``, the set of values forced on it by aligned pairs."""
    forced: dict = {}
    for a, b, key in _root_pairs(f.ground, f.n):
        forced.setdefault(key, set()).add(meet(f.entries[a], f.entries[b]))
    return forced


def find_roots(f: Family, allowed: Optional[Iterable[Iterable[int]]] = None) -> Optional[RootSystem]:
    """A root system witnessing the non-uniform definition, or ``None``.

    ``allowed`` restricts every root to the given candidate values. Each aligned
    pair constrains exactly one root key, so the search space factors per key
    and this decision is exact.
    """
    cands = None if allowed is None else [ordset(v) for v in allowed]
    forced: dict = {}
    entries = f.entries
    for a, b, key in _root_pairs(f.ground, f.n):
        v = meet(entries[a], entries[b])
        if forced.setdefault(key, v) != v:
            return None
    roots = {}
    for m in masks(f.n):
        for a in index_sets(f.ground, len(m)):
            v = forced.get((m, a))
            if v is not None:
                if cands is not None and v not in cands:
                    return None
            elif cands is None:
                v = EMPTY
            elif cands:
                v = EMPTY if EMPTY in cands else cands[0]
            else:
                return None
            roots[m, a] = v
    return RootSystem(f.n, f.ground, roots)


# --- uniform n-dimensional systems ---------------------------------------------


def _common_otp(f: Family) -> Optional[int]:
    otps = {len(u) for u in f.entries.values()}
    if len(otps) > 1:
        return None
    return otps.pop() if otps else 0


def infer_witness(f: Family) -> Optional[UniformWitness]:
    """Read ``rho`` and each ``r_m`` off the first aligned pair realizing ``m``.

    The result is unverified; pass it to :func:`verify_uniform`.
    """
    if len(f.ground) < 2 * f.n:
        raise InputError(f"witness inference needs |ground| >= 2n = {2 * f.n}, got {len(f.ground)}")
    rho = _common_otp(f)
    if rho is None:
        return None
    rmap: dict = {}
    for a, b, m in f.aligned_pairs():
        if m not in rmap:
            rmap[m] = rmask(f.entries[a], f.entries[b])
            if len(rmap) == 2 ** f.n:
                break
    return UniformWitness(rho, rmap)


def complete_witness(f: Family) -> Optional[UniformWitness]:
    """A witness valid for ``f`` if one exists, on grounds of any size.

    Realized masks have their ``r_m`` forced by the pairs realizing them. A map
    ``m -> r_m`` respects intersections exactly when, for each position ``i``,
    ``{m : i in r_m}`` is a principal filter ``{m : c_i <= m}``; the largest
    admissible core ``c_i`` is the meet of the realized masks containing ``i``,
    and unrealized masks are filled from those cores.
    """
    n = f.n
    rho = _common_otp(f)
    if rho is None:
        return None
    if not f.entries:
        return UniformWitness(0, {m: EMPTY for m in masks(n)})
    realized: dict = {}
    for a, b, m in f.aligned_pairs():
        ua, ub = f.entries[a], f.entries[b]
        if not aligned(ua, ub):
            return None
        r = rmask(ua, ub)
        if realized.setdefault(m, r) != r:
            return None
    return witness_from_masks(n, rho, realized)


def witness_from_masks(n: int, rho: int, realized: Mapping) -> Optional[UniformWitness]:
    """Extend the forced value-masks ``realized`` (index mask -> value mask) to a
    total intersection-respecting witness, or return ``None`` if impossible."""
    full = frozenset(range(n))
    cores = []
    for i in range(rho):
        core = full
        for m, r in realized.items():
            if i in r:
                core = core & frozenset(m)
        for m, r in realized.items():
            if i not in r and core <= frozenset(m):
                return None
        cores.append(core)
    rmap = {m: OrdSet._trusted(i for i in range(rho) if cores[i] <= frozenset(m)) for m in masks(n)}
    return UniformWitness(rho, rmap)


def uniform_violation(f: Family, w: UniformWitness) -> Optional[dict]:
    """First failure of the three clauses (witness structure checked first)."""
    for u_idx, u in f.entries.items():
        if len(u) != w.rho:
            return {"clause": 1, "index": list(u_idx), "otp": len(u), "rho": w.rho}
    for a, b, m in f.aligned_pairs():
        if m not in w.rmap:
            return {"clause": "witness", "reason": "missing mask", "mask": list(m)}
        ua, ub = f.entries[a], f.entries[b]
        if not aligned(ua, ub):
            return {"clause": 2, "pair": [list(a), list(b)], "mask": list(m), "reason": "values not aligned"}
        r = rmask(ua, ub)
        if r != w.rmap[m]:
            return {
                "clause": 2,
                "pair": [list(a), list(b)],
                "mask": list(m),
                "expected": list(w.rmap[m]),
                "found": list(r),
            }
    probs = w.problems(f.n)
    if probs:
        return probs[0]
    return None


def verify_uniform(f: Family, w: UniformWitness) -> bool:
    return uniform_violation(f, w) is None


def derive_roots(f: Family, w: UniformWitness) -> RootSystem:
    """Roots ``R^m_a = u_b[r_m]`` for any ``b`` with ``b[m] = a``; empty when unrealized."""
    if not verify_uniform(f, w):
        raise InputError("derive_roots needs a family that is uniform under the given witness")
    roots: dict = {}
    for b in f.indices():
        ub = f.entries[b]
        for m in masks(f.n):
            roots.setdefault((m, image(b, m)), image(ub, w.rmap[m]))
    for m in masks(f.n):
        for a in index_sets(f.ground, len(m)):
            roots.setdefault((m, a), EMPTY)
    return RootSystem(f.n, f.ground, roots)


def moreover_violation(f: Family) -> Optional[dict]:
    keys = f.indices()
    for a in keys:
        for b in keys:
            base = None
            for m in range(f.n):
                if a[m] != b[m] or not aligned_above(a, b, m):
                    continue
                for alpha in f.ground:
                    if not (is_possible(a, m, alpha) and is_possible(b, m, alpha)):
                        continue
                    if base is None:
                        base = tp_int(f.entries[a], f.entries[b])
                    a2, b2 = substitute(a, m, alpha), substitute(b, m, alpha)
                    moved = tp_int(f.entries[a2], f.entries[b2])
                    if moved != base:
                        return {
                            "clause": "moreover",
                            "pair": [list(a), list(b)],
                            "position": m,
                            "alpha": alpha,
                            "moved": [list(a2), list(b2)],
                        }
    return None


def verify_moreover(f: Family) -> bool:
    return moreover_violation(f) is None


def variation_violation(f: Family, ext: Mapping) -> Optional[dict]:
    """Check the four clauses of the extended-family form against ``ext``,
    which maps every subset of the ground of size at most ``n``."""
    ext = {ordset(k): ordset(v) for k, v in ext.items()}
    subsets = list(_subsets_up_to(f.ground, f.n))
    for a in subsets:
        if a not in ext:
            raise InputError(f"extension is missing the set {list(a)}")
    profile = None
    for a in f.indices():
        ua = f.entries[a]
        if not set(ua).issubset(ext[a]):
            return {"clause": 1, "index": list(a)}
        t = tp((ext[a], ua))
        if profile is None:
            profile = (a, t)
        elif t != profile[1]:
            return {"clause": 2, "indices": [list(profile[0]), list(a)]}
    for i, a in enumerate(subsets):
        for b in subsets[i:]:
            if meet(ext[a], ext[b]) != ext[meet(a, b)]:
                return {"clause": 3, "pair": [list(a), list(b)]}
    by_shape: dict = {}
    for a1 in subsets:
        for k in range(len(a1) + 1):
            for a0 in index_sets(a1, k):
                shape = tp((a1, a0))
                t = tp((ext[a1], ext[a0]))
                first = by_shape.setdefault(shape, (a1, a0, t))
                if first[2] != t:
                    return {
                        "clause": 4,
                        "first": [list(first[0]), list(first[1])],
                        "second": [list(a1), list(a0)],
                    }
    return None


def verify_variation(f: Family, ext: Mapping) -> bool:
    return variation_violation(f, ext) is None
