"""Naive reference implementations used to freeze expected values.

These work on plain tuples and frozensets straight from the definitions and
share no code with the package, so agreement between the two is evidence
rather than tautology.
"""

from itertools import combinations, product


def pos(u, x):
    return sorted(u).index(x)


def is_aligned(a, b):
    if len(a) != len(b):
        return False
    return all(pos(a, x) == pos(b, x) for x in set(a) & set(b))


def mask_of(a, b):
    s = sorted(a)
    return frozenset(i for i in range(len(s)) if s[i] in set(b))


def val(entries, b):
    return frozenset(entries[tuple(sorted(b))])


def index_pairs(ground, n):
    keys = list(combinations(sorted(ground), n))
    return [(a, b) for a in keys for b in keys]


def strict_ok(entries, ground, n):
    seen = {}
    for a, b in index_pairs(ground, n):
        k = frozenset(a) & frozenset(b)
        v = val(entries, a) & val(entries, b)
        if seen.setdefault(k, v) != v:
            return False
    return True


def all_masks(n):
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]


def uniform_ok(entries, ground, n, rho, rmap):
    """Clauses 1 to 3, read literally, for a given witness."""
    for b in combinations(sorted(ground), n):
        if len(entries[b]) != rho:
            return False
    for a, b in index_pairs(ground, n):
        if not is_aligned(a, b):
            continue
        m = mask_of(a, b)
        ua, ub = sorted(entries[a]), sorted(entries[b])
        if not is_aligned(ua, ub) or mask_of(ua, ub) != rmap[m]:
            return False
    for m0 in all_masks(n):
        for m1 in all_masks(n):
            if rmap[m0 & m1] != rmap[m0] & rmap[m1]:
                return False
    return True


def witness_exists(entries, ground, n):
    """Enumerate every witness for the common order type (tiny instances only)."""
    otps = {len(v) for v in entries.values()}
    if len(otps) > 1:
        return False
    rho = otps.pop() if otps else 0
    subsets = [frozenset(c) for k in range(rho + 1) for c in combinations(range(rho), k)]
    ms = all_masks(n)
    for choice in product(subsets, repeat=len(ms)):
        if uniform_ok(entries, ground, n, rho, dict(zip(ms, choice))):
            return True
    return False


def forced_witness(entries, ground, n):
    """For grounds of size >= 2n: read each r_m off the pairs, check consistency,
    then check the three clauses. Returns the rmap or None."""
    otps = {len(v) for v in entries.values()}
    if len(otps) > 1:
        return None
    rho = otps.pop() if otps else 0
    rmap = {}
    for a, b in index_pairs(ground, n):
        if is_aligned(a, b):
            m = mask_of(a, b)
            r = mask_of(sorted(entries[a]), sorted(entries[b]))
            if rmap.setdefault(m, r) != r:
                return None
    for m in all_masks(n):
        rmap.setdefault(m, frozenset())
    return rmap if uniform_ok(entries, ground, n, rho, rmap) else None


def mine_least(entries, ground, n, target, color=None):
    """Least H (lexicographic) of the given size with a valid witness and constant color."""
    for H in combinations(sorted(ground), target):
        sub = {b: entries[b] for b in combinations(H, n)}
        if color is not None and len({color[b] for b in sub}) > 1:
            continue
        if forced_witness(sub, H, n) is not None:
            return H
    return None


def ndim_ok(entries, ground, n, roots):
    """Root-system definition; roots keyed by (mask frozenset, sorted index tuple)."""
    for a, b in index_pairs(ground, n):
        if not is_aligned(a, b):
            continue
        m = mask_of(a, b)
        common = tuple(sorted(set(a) & set(b)))
        if val(entries, a) & val(entries, b) != roots[m, common]:
            return False
    return True


def root_keys(ground, n):
    return [(m, c) for m in all_masks(n) for c in combinations(sorted(ground), len(m))]


def polarized_least(color, ground, n, t):
    """Least sequence of pairwise disjoint t-blocks with constant color on the product."""
    blocks = list(combinations(sorted(ground), t))
    for seq in product(blocks, repeat=n):
        flat = [x for b in seq for x in b]
        if len(set(flat)) != len(flat):
            continue
        if len({color(x) for x in product(*seq)}) == 1:
            return seq
    return None


def int_type(a, b):
    sa, sb = sorted(a), sorted(b)
    return frozenset((i, j) for i in range(len(sa)) for j in range(len(sb)) if sa[i] == sb[j])


def moreover_ok(entries, ground, n):
    keys = list(combinations(sorted(ground), n))
    for a in keys:
        for b in keys:
            for m in range(n):
                if a[m] != b[m] or not is_aligned(a[m:], b[m:]):
                    continue
                for alpha in ground:
                    def fits(s):
                        return (m == 0 or alpha > s[m - 1]) and (m == n - 1 or alpha < s[m + 1])
                    if not (fits(a) and fits(b)):
                        continue
                    a2 = a[:m] + (alpha,) + a[m + 1:]
                    b2 = b[:m] + (alpha,) + b[m + 1:]
                    if int_type(entries[a], entries[b]) != int_type(entries[a2], entries[b2]):
                        return False
    return True


def profile(us):
    union = sorted(set().union(*map(set, us))) if us else []
    return tuple(frozenset(i for i, u in enumerate(us) if x in u) for x in union)


def variation_ok(entries, ground, n, ext):
    small = [c for k in range(n + 1) for c in combinations(sorted(ground), k)]
    full = list(combinations(sorted(ground), n))
    if any(not set(entries[a]) <= set(ext[a]) for a in full):
        return False
    if len({profile([ext[a], entries[a]]) for a in full}) > 1:
        return False
    for a in small:
        for b in small:
            c = tuple(sorted(set(a) & set(b)))
            if set(ext[a]) & set(ext[b]) != set(ext[c]):
                return False
    shapes = {}
    for a1 in small:
        for k in range(len(a1) + 1):
            for a0 in combinations(a1, k):
                key = profile([a1, a0])
                if shapes.setdefault(key, profile([ext[a1], ext[a0]])) != profile([ext[a1], ext[a0]]):
                    return False
    return True
