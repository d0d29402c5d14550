"""Sequence rank/select layer against a plain list scan."""

import random

import numpy as np

from ubwt.seqindex import SequenceIndex, invert_permutation_shortcuts


def test_inverter_anchor():
    inv = invert_permutation_shortcuts(np.array([1, 2, 0]), k=1)
    before = inv.applications
    assert inv.inverse(2) == 1
    assert inv.applications - before <= 2


def test_inverter_random_and_bound():
    rng = random.Random(34)
    for _ in range(80):
        n = rng.randint(1, 60)
        pi = list(range(n))
        rng.shuffle(pi)
        k = rng.randint(1, 6)
        inv = invert_permutation_shortcuts(np.array(pi), k=k)
        for v in range(n):
            before = inv.applications
            u = inv.inverse(v)
            assert pi[u] == v
            assert inv.applications - before <= k + 1


def test_sequence_index_anchor():
    # s = b b # a a under the coding # -> 0, a -> 1, b -> 2
    si = SequenceIndex([2, 2, 0, 1, 1], 3)
    assert si.access(3) == 0
    assert si.partial_rank(5) == (1, 2)
    assert si.select(1, 1) == 4
    assert si.rank(2, 5) == 2


def test_sequence_index_random():
    rng = random.Random(35)
    for _ in range(100):
        n = rng.randint(1, 500)
        A = rng.randint(1, 9)
        seq = [rng.randint(0, A - 1) for _ in range(n)]
        si = SequenceIndex(seq, A, shortcut_k=rng.randint(1, 5))
        for _ in range(30):
            i = rng.randint(1, n)
            assert si.access(i) == seq[i - 1]
            c = rng.randint(0, A - 1)
            assert si.rank(c, i) == seq[:i].count(c)
        for c in range(A):
            tot = seq.count(c)
            for j in rng.sample(range(1, tot + 1), min(5, tot)):
                assert si.select(c, j) == [x + 1 for x, v in enumerate(seq)
                                           if v == c][j - 1]
        for _ in range(15):
            i = rng.randint(1, n)
            c = seq[i - 1]
            prev = 0
            for x in range(i - 1, 0, -1):
                if seq[x - 1] == c:
                    prev = x
                    break
            assert si.prev_occ(i) == prev
        sblk = si.s
        for _ in range(10):
            i = rng.randint(1, n)
            b = (i - 1) // sblk
            c = seq[i - 1]
            j = sum(1 for x in range(b * sblk, i) if seq[x] == c)
            assert si.partial_rank(i) == (c, j)
        si.pi_apps = 0
        si.select(seq[0], 1)
        assert si.pi_apps <= si.k + 1


def test_sequence_index_state_round_trip():
    rng = random.Random(36)
    seq = [rng.randint(0, 4) for _ in range(200)]
    si = SequenceIndex(seq, 5)
    si2 = SequenceIndex.from_state(si.state())
    for i in range(1, 201):
        assert si2.access(i) == seq[i - 1]
        assert si2.rank(seq[i - 1], i) == si.rank(seq[i - 1], i)
