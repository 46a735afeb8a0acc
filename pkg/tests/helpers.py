"""Shared strategies and small family builders for the test suite."""

from itertools import combinations

from hypothesis import strategies as st

from hdelta.deltasys import Family
from hdelta.ordsets import OrdSet


def ordsets(max_value=63, max_size=6):
    return st.lists(st.integers(0, max_value), max_size=max_size, unique=True).map(OrdSet)


def identity_family(mu, n, shift=0):
    return Family.build(n, range(mu), lambda b: [x + shift for x in b])


def constant_family(mu, n, value=(0, 1)):
    return Family.build(n, range(mu), lambda b: value)


@st.composite
def small_families(draw, max_mu=6, max_n=2, max_otp=3, max_value=11):
    n = draw(st.integers(1, max_n))
    mu = draw(st.integers(n, max_mu))
    ground = sorted(draw(st.lists(st.integers(0, 12), min_size=mu, max_size=mu, unique=True)))
    entries = {}
    for b in combinations(ground, n):
        entries[b] = draw(st.lists(st.integers(0, max_value), max_size=max_otp, unique=True))
    return Family(n, ground, entries)


def plain(f):
    """Family entries as a dict of plain tuples for the oracles."""
    return {tuple(k): tuple(v) for k, v in f.entries.items()}


def random_uniform_family(rng, max_mu=8, max_n=3):
    """Product family with random spaced offsets plus a random shared core.

    Core values sit in the gaps between blocks, so each keeps a fixed position.
    """
    n = rng.randint(1, max_n)
    mu = rng.randint(max(n, 2 * n if rng.random() < 0.8 else n), max_mu)
    mu = max(mu, 2 * n)
    offsets, gaps, lo = [], [], mu
    for _ in range(n):
        gap = rng.randint(0, 3)
        gaps.append(range(lo, lo + gap))
        lo += gap
        offsets.append(lo)
        lo += mu
    gaps.append(range(lo, lo + rng.randint(0, 3)))
    core = sorted({x for g in gaps for x in g if rng.random() < 0.5})
    return Family.build(n, range(mu), lambda b: sorted({offsets[m] + b[m] for m in range(n)} | set(core)))
