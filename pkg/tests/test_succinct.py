"""Bit-level building blocks against brute-force recomputation."""

import math
import random

import numpy as np

from ubwt.succinct import Bitvector, GammaStream, Predecessor, PrefixSum, Rmq


def test_bitvector_rank_select_access():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 1500)
        bits = [rng.randint(0, 1) for _ in range(n)]
        bv = Bitvector(bits)
        pref = [0]
        for b in bits:
            pref.append(pref[-1] + b)
        for _ in range(30):
            i = rng.randint(0, n)
            assert bv.rank1(i) == pref[i]
            assert bv.rank0(i) == i - pref[i]
        ones = [i + 1 for i, b in enumerate(bits) if b]
        zeros = [i + 1 for i, b in enumerate(bits) if not b]
        for j in rng.sample(range(1, len(ones) + 1), min(20, len(ones))):
            assert bv.select1(j) == ones[j - 1]
        for j in rng.sample(range(1, len(zeros) + 1), min(20, len(zeros))):
            assert bv.select0(j) == zeros[j - 1]
        for _ in range(10):
            i = rng.randint(1, n)
            assert bv.access(i) == bits[i - 1]


def test_bitvector_state_round_trip():
    bits = [1, 0, 0, 1, 1, 0, 1]
    bv = Bitvector(bits)
    bv2 = Bitvector.from_state(bv.state())
    assert [bv2.access(i) for i in range(1, 8)] == bits


def test_prefix_sum_values_and_space():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(1, 400)
        vals = np.cumsum([rng.randint(0, 50) for _ in range(n)])
        ps = PrefixSum(vals)
        for i in range(1, n + 1):
            assert ps.get(i) == vals[i - 1]
        u = int(vals[-1])
        bound = 1.3 * n * (2 + max(1, math.ceil(math.log2(max(2, u / n))))) + 4096
        assert ps.bits_used() <= bound


def test_rmq_min_and_max():
    rng = random.Random(32)
    for _ in range(50):
        n = rng.randint(1, 300)
        arr = [rng.randint(-10, 10) for _ in range(n)]
        rmin = Rmq(arr, "min")
        rmax = Rmq(arr, "max")
        for _ in range(20):
            i = rng.randint(1, n)
            j = rng.randint(i, n)
            assert rmin.query(i, j) == min(range(i, j + 1),
                                           key=lambda k: (arr[k - 1], k))
            assert rmax.query(i, j) == max(range(i, j + 1),
                                           key=lambda k: (arr[k - 1], -k))


def test_predecessor():
    p = Predecessor([3, 9, 12])
    assert p.pred(2) is None
    assert p.pred(3) == 3
    assert p.pred(11) == 9
    assert p.pred(100) == 12
    assert p.rank(11) == 2
    assert 9 in p and 10 not in p


def test_gamma_stream():
    gs = GammaStream([3])
    assert gs.total_bits == 5 and gs.read(1) == 3
    rng = random.Random(33)
    for _ in range(40):
        vals = [rng.randint(0, 1000) for _ in range(rng.randint(1, 100))]
        gs = GammaStream(vals)
        for i, v in enumerate(vals, 1):
            assert gs.read(i) == v
        assert gs.total_bits == sum(
            1 + 2 * int(math.floor(math.log2(v + 1))) for v in vals)
