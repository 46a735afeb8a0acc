import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdelta.deltasys import Family, verify_moreover, verify_uniform
from hdelta.errors import InputError, ResourceGuardError
from hdelta.generators import Coloring, gen_pairing_family, gen_product_family, gen_shift_family, parity_coloring
from hdelta.miner import MineRequest, exhaustive_max, exhaustive_mine, greedy_mine, is_good, mine

import oracles
from helpers import plain, random_uniform_family, small_families


def pentagon(mu=5):
    # no monochromatic triangle on five points
    return Coloring(2, range(mu), lambda b: int((b[1] - b[0]) % 5 in (1, 4)))


class TestExamples:
    def test_product_whole_ground(self):
        f = gen_product_family(4, 2, (10, 20))
        res = exhaustive_mine(MineRequest(f, 4))
        assert res.H == (0, 1, 2, 3)
        assert verify_uniform(f, res.witness)

    def test_shift_least_four_set(self):
        f = gen_shift_family(8)
        assert oracles.mine_least(plain(f), range(8), 2, 4) == (0, 1, 3, 4)
        assert exhaustive_mine(MineRequest(f, 4)).H == (0, 1, 3, 4)

    def test_shift_max(self):
        f = gen_shift_family(6)
        assert exhaustive_max(f) == (4, (0, 1, 3, 4))
        assert exhaustive_mine(MineRequest(f, 5)) is None

    def test_no_triangle_means_no_set(self):
        f = gen_pairing_family(5, pentagon())
        assert oracles.mine_least(plain(f), range(5), 2, 3, {b: pentagon()(b) for b in f.indices()}) is None
        assert exhaustive_mine(MineRequest(f, 3, pentagon())) is None
        assert exhaustive_mine(MineRequest(f, 3)) is None

    def test_coloring_forces_constant_color(self):
        f = gen_product_family(6, 2, (6, 12))
        c = parity_coloring(6, 2)
        assert oracles.mine_least(plain(f), range(6), 2, 3, {b: c(b) for b in f.indices()}) == (0, 2, 4)
        res = exhaustive_mine(MineRequest(f, 3, c))
        assert res.H == (0, 2, 4)
        assert res.color == 0

    def test_mapping_coloring(self):
        f = gen_product_family(4, 1, (4,))
        table = {(x,): x // 2 for x in range(4)}
        assert exhaustive_mine(MineRequest(f, 2, table)).H == (0, 1)

    def test_moreover_requirement(self):
        f = gen_product_family(4, 2, (10, 20))
        entries = dict(f.entries)
        entries[(0, 2)] = (11, 22)
        g = Family(2, f.ground, entries)
        assert not oracles.moreover_ok(plain(g), range(4), 2)
        res = exhaustive_mine(MineRequest(g, 3, require_moreover=True))
        assert res is not None and verify_moreover(g.restrict(res.H))
        assert exhaustive_mine(MineRequest(g, 4, require_moreover=True)) is None


class TestErrors:
    def test_target_too_large(self):
        with pytest.raises(InputError):
            MineRequest(gen_shift_family(8), 9)

    @pytest.mark.parametrize("target", [0, -1, 1.5])
    def test_bad_target(self, target):
        with pytest.raises(InputError):
            MineRequest(gen_shift_family(8), target)

    def test_bad_mode(self):
        with pytest.raises(InputError):
            MineRequest(gen_shift_family(8), 2, mode="fast")

    def test_partial_mapping(self):
        with pytest.raises(InputError):
            exhaustive_mine(MineRequest(gen_shift_family(4), 2, {(0, 1): 0}))

    def test_max_guard(self):
        with pytest.raises(ResourceGuardError):
            exhaustive_max(Family.build(1, range(21), lambda b: b))


class TestGreedy:
    def test_product_full(self):
        f = gen_product_family(8, 2, (8, 16))
        assert greedy_mine(MineRequest(f, 8, mode="greedy")).H == tuple(range(8))

    def test_shift_sixteen(self):
        f = gen_shift_family(16)
        res = greedy_mine(MineRequest(f, 4, mode="greedy"))
        assert res is not None and is_good(f, res.H)

    def test_mode_checks(self):
        f = gen_shift_family(4)
        with pytest.raises(InputError):
            greedy_mine(MineRequest(f, 2))
        with pytest.raises(InputError):
            exhaustive_mine(MineRequest(f, 2, mode="greedy"))


# --- properties -------------------------------------------------------------------


def brute_least(f, target, color=None):
    """Least good set by the enumeration oracle (works below 2n as well)."""
    for H in combinations(f.ground, target):
        sub = {b: f.entries[b] for b in combinations(H, f.n)}
        if color is not None and len({color(b) for b in sub}) > 1:
            continue
        if oracles.witness_exists(sub, H, f.n):
            return H
    return None


@settings(max_examples=60, deadline=None)
@given(small_families(max_mu=5, max_otp=2, max_value=6), st.data())
def test_exact_matches_enumeration_oracle(f, data):
    target = data.draw(st.integers(1, len(f.ground)))
    res = exhaustive_mine(MineRequest(f, target))
    assert (res.H if res else None) == brute_least(f, target)


@settings(max_examples=60, deadline=None)
@given(small_families(max_mu=7, max_n=2), st.data())
def test_exact_matches_forced_oracle_with_coloring(f, data):
    target = data.draw(st.integers(2 * f.n, max(2 * f.n, len(f.ground))))
    if target > len(f.ground):
        return
    colors = {b: data.draw(st.integers(0, 1)) for b in f.indices()}
    res = exhaustive_mine(MineRequest(f, target, colors))
    assert (res.H if res else None) == oracles.mine_least(plain(f), f.ground, f.n, target, colors)


@settings(max_examples=80, deadline=None)
@given(small_families(max_mu=7), st.data())
def test_soundness_and_monotonicity(f, data):
    target = data.draw(st.integers(1, len(f.ground)))
    res = exhaustive_mine(MineRequest(f, target))
    if res is None:
        if target < len(f.ground):
            assert exhaustive_mine(MineRequest(f, target + 1)) is None
        return
    sub = f.restrict(res.H)
    assert verify_uniform(sub, res.witness)
    for k in range(1, target):
        assert is_good(f, res.H[:k])
        assert exhaustive_mine(MineRequest(f, k)) is not None


@settings(max_examples=60, deadline=None)
@given(small_families(max_mu=7), st.booleans())
def test_greedy_is_sound_and_dominated(f, moreover):
    hmax, Hmax = exhaustive_max(f, require_moreover=moreover)
    assert len(Hmax) == hmax
    if hmax:
        assert is_good(f, Hmax, require_moreover=moreover)
    for target in range(1, len(f.ground) + 1):
        res = greedy_mine(MineRequest(f, target, mode="greedy", require_moreover=moreover))
        if res is not None:
            assert target <= hmax
            assert is_good(f, res.H, require_moreover=moreover)


def test_max_agrees_with_exact_on_random_uniform_families():
    rng = random.Random(7)
    for _ in range(20):
        f = random_uniform_family(rng, max_mu=7, max_n=2)
        hmax, H = exhaustive_max(f)
        assert hmax == len(f.ground) and H == f.ground
        assert mine(MineRequest(f, hmax)).H == f.ground
