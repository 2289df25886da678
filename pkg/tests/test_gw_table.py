import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planargw.gw_table import (CACHE_SCHEMA, INITIAL_ONES, CacheIntegrityError, GWKey, MemoTable, balanced_keys,
                               binomial, expand_point_insertions, expected_codim, full_table, gw_invariant,
                               n_planar, reduce_point_insertion)


@pytest.fixture
def memo():
    return MemoTable()


@pytest.mark.parametrize("d,n,want", [(3, 11, 22), (1, 0, 5), (2, 5, 13)])
def test_expected_codim(d, n, want):
    assert expected_codim(d, n) == want


@pytest.mark.parametrize("n,k,want", [(5, 2, 10), (5, -1, 0), (3, 7, 0), (0, 0, 1)])
def test_binomial(n, k, want):
    assert binomial(n, k) == want


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_initial_conditions(memo):
    for key in INITIAL_ONES:
        assert n_planar(key, memo) == 1


def test_unbalanced_vanishes(memo):
    assert n_planar((2, 1, 2, 1), memo) == 0


def test_single_recursion_step(memo):
    # 2*1*N_1(2,0,3) - 2*1*N_1(1,0,4), empty splitting sum
    assert n_planar((1, 3, 0, 2), memo) == 2


# Classical enumerative numbers of P^3, computed independently of the recursion.
@pytest.mark.parametrize("key,want", [
    ((3, 11, 0, 0), 12960),  # planar cubics meeting 11 lines
    ((2, 8, 0, 0), 92),      # conics meeting 8 lines
    ((1, 4, 0, 1), 2),       # lines meeting 4 lines; the plane through a fixed point is then unique
    ((1, 3, 0, 2), 2),       # plane contains a fixed line L0: lines meeting L0 and 3 more lines
    ((1, 5, 0, 0), 0),       # no line meets 5 general lines
])
def test_enumerative_values(memo, key, want):
    assert n_planar(key, memo) == want


def test_rejects_bad_keys(memo):
    with pytest.raises(ValueError):
        n_planar((0, 5, 0, 0), memo)
    with pytest.raises(ValueError):
        n_planar((1, -1, 0, 0), memo)
    with pytest.raises(TypeError):
        n_planar((1.0, 5, 0, 0), memo)


def test_balance_vanishing_exhaustive(memo):
    for d in range(1, 7):
        for r in range(3 * d + 6):
            for s in range(6):
                for t in range(6):
                    if r + 2 * s + t != 3 * d + 2:
                        assert n_planar((d, r, s, t), memo) == 0


def test_degenerate_vanishing(memo):
    for d in range(1, 7):
        for r in range(3 * d + 3):
            for s in range(6):
                for t in range(6):
                    if s > 3 or t > 3 or s + t >= 4:
                        assert n_planar((d, r, s, t), memo) == 0


def test_s_plus_theta_vanishing_by_expansion(memo):
    for d in range(1, 6):
        for s in range(1, 4):
            for t in range(4):
                r = 3 * d + 2 - 2 * s - t
                if r >= 0 and s + t >= 4:
                    assert expand_point_insertions((d, r, s, t), memo) == 0


def test_d_at_least_3_small_r_vanishes_through_expansion(memo):
    for d in range(3, 7):
        for r in range(3):
            for s in range(1, 4):
                t = 3 * d + 2 - r - 2 * s
                if 0 <= t:
                    assert expand_point_insertions((d, r, s, t), memo) == 0


def test_point_insertion_examples(memo):
    assert reduce_point_insertion((1, 0, 2, 1), memo) == 1
    assert reduce_point_insertion((2, 2, 3, 0), memo) == n_planar((2, 2, 3, 0), memo) == 1
    with pytest.raises(ValueError):
        reduce_point_insertion((1, 5, 0, 0), memo)


def test_route_consistency(memo):
    for key in balanced_keys(5):
        if key.s >= 1:
            want = n_planar(key, memo)
            assert reduce_point_insertion(key, memo) == want
            assert expand_point_insertions(key, memo) == want


def test_integrality(memo):
    for key, value in full_table(6, memo):
        assert Fraction(value).denominator == 1


def test_gw_invariant():
    assert gw_invariant(1, 1, [1, 2, 2]) == 0
    assert gw_invariant(1, 3, [2, 2]) == 1
    assert gw_invariant(2, 0, [1, 3, 3, 3]) == 0
    assert gw_invariant(3, 0, [2] * 11) == 12960
    # divisor axiom: each H insertion multiplies by d
    assert gw_invariant(3, 0, [1, 1] + [2] * 11) == 9 * 12960
    assert gw_invariant(1, 0, [0, 2, 2]) == 0
    with pytest.raises(ValueError):
        gw_invariant(1, 0, [4])
    with pytest.raises(ValueError):
        gw_invariant(0, 0, [2])


def test_full_table_d1():
    table = dict(full_table(1))
    assert table[GWKey(1, 0, 2, 1)] == 1
    assert table[GWKey(1, 2, 1, 1)] == 1
    assert table[GWKey(1, 5, 0, 0)] == 0
    assert GWKey(2, 2, 3, 0) in dict(full_table(2))
    assert dict(full_table(2))[GWKey(2, 2, 3, 0)] == 1


def test_full_table_order_and_range():
    keys = [k for k, _ in full_table(4)]
    assert keys == sorted(keys, key=lambda k: (k.d, k.s, k.theta))
    assert all(k.balanced and k.s <= 3 and k.theta <= 3 and k.r >= 0 for k in keys)
    assert len(keys) == len(set(keys))


def test_determinism():
    assert full_table(5, MemoTable()) == full_table(5, MemoTable())


def test_memo_is_write_once(memo):
    memo.put(GWKey(1, 5, 0, 0), 0)
    memo.put(GWKey(1, 5, 0, 0), 0)
    with pytest.raises(CacheIntegrityError):
        memo.put(GWKey(1, 5, 0, 0), 1)


def test_cache_roundtrip(tmp_path, memo):
    full_table(3, memo)
    path = tmp_path / "memo.json"
    memo.save(path)
    data = json.loads(path.read_text())
    assert data["schema"] == CACHE_SCHEMA
    assert data["values"]["3,11,0,0"] == "12960"
    loaded = MemoTable.load(path)
    assert loaded.items() == memo.items()
    assert loaded.verify() == []
    # values come straight from the file
    assert full_table(3, loaded) == full_table(3, MemoTable())


def test_cache_rejects_rule_violation(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema": CACHE_SCHEMA, "values": {"1,0,2,1": "5"}}))
    with pytest.raises(CacheIntegrityError):
        MemoTable.load(path)


def test_cache_rejects_wrong_schema(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema": "other", "values": {}}))
    with pytest.raises(CacheIntegrityError):
        MemoTable.load(path)


def test_cache_detects_wrong_recursion_value(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema": CACHE_SCHEMA, "values": {"3,11,0,0": "12961"}}))
    loaded = MemoTable.load(path)
    assert loaded.verify() == [GWKey(3, 11, 0, 0)]


@given(st.integers(1, 5), st.integers(0, 3), st.integers(0, 3))
def test_balanced_keys_membership(d, s, t):
    r = 3 * d + 2 - 2 * s - t
    key = GWKey(d, r, s, t)
    assert (key in balanced_keys(d)) == (r >= 0)
