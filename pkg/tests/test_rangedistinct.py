"""Distinct-symbol range reporting: three backends against an oracle."""

import random

import numpy as np
import pytest

import oracles as O
from ubwt.rangedistinct import (RangeDistinctIndex, range_distinct,
                                range_distinct_mmphf)


def test_anchors():
    codes = np.array([ord(c) - 97 for c in "abracadabra"], np.int64)
    rd = RangeDistinctIndex(codes, 26)
    assert set(range_distinct(rd, 1, 4)) == {(0, 1, 2), (1, 1, 1), (17, 1, 1)}
    assert set(rd.query(3, 3)) == {(17, 1, 1)}
    uni = RangeDistinctIndex(np.full(7, 2, np.int64), 3)
    assert set(uni.query(1, 7)) == {(2, 1, 7)}
    with pytest.raises(ValueError):
        rd.query(4, 2)


def test_backends_agree_and_op_bound():
    rng = random.Random(11)
    for trial in range(100):
        n = rng.randint(1, 120)
        A = rng.randint(1, 6)
        seq = np.array([rng.randint(0, A - 1) for _ in range(n)], np.int64)
        r1 = RangeDistinctIndex(seq, A, backend="rmq")
        r2 = RangeDistinctIndex(seq, A, backend="mmphf", seed=trial)
        r3 = RangeDistinctIndex(seq, A, backend="brute")
        ctx = r1.new_context()
        for _ in range(12):
            i = rng.randint(1, n)
            j = rng.randint(i, n)
            t1 = set(r1.query(i, j, ctx))
            # two splits per reported symbol, plus the failing probe
            assert ctx.last_rmq_calls <= 2 * len(t1) + 1
            assert t1 == set(range_distinct_mmphf(r2, i, j))
            assert t1 == set(r3.query(i, j))
            exp = O.range_distinct_oracle(tuple(int(v) for v in seq), i, j)
            assert t1 == {(c, v[0], v[1]) for c, v in exp.items()}
            # partial-rank spans tile the whole range
            assert sum(lr - fr + 1 for _, fr, lr in t1) == j - i + 1
            assert not (ctx.slot != -1).any()
