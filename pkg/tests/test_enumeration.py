"""Right-maximal substring traversal against a pointer suffix tree."""

import math
import random
import threading

import numpy as np

import oracles as O
from ubwt import _kernels as K
from ubwt.bwt import BwtString, bwt_from_suffix_array, bwt_naive, reverse_bwt
from ubwt.enumeration import (ExtensionScratch, Repr, enumerate_generalized,
                              enumerate_right_maximal, extend_left, root_repr)
from ubwt.textcore import Text


def rand_text(rng, m=1, maxlen=40, sigma=4):
    return Text(["".join(rng.choice("abcdef"[:sigma])
                         for _ in range(rng.randint(1, maxlen)))
                 for _ in range(m)])


def per_record_bwts(t):
    """Single-record transforms rebuilt under the shared text coding."""
    out = []
    for r in range(1, t.m + 1):
        s, e = t.record_bounds(r)
        rec = [int(c) for c in t.codes[s - 1:e]]
        rots = sorted(tuple(rec[q:] + rec[:q]) for q in range(len(rec)))
        syms = np.array([x[-1] for x in rots], np.int64)
        out.append(BwtString(syms, t.alphabet_size, np.array([len(rec)]),
                             t.chars))
    return out


def test_extend_left_anchor():
    b = bwt_naive(Text(["abab"]))
    sc = ExtensionScratch(b.A)
    extend_left(Repr([0, 1], [4, 5, 6], 1), b, sc)  # W = "b"
    assert sc.h == 1 and sc.left_extensions() == [1]
    assert sc.gamma[1] == 2
    ch = sc.child_repr(1)
    assert list(ch.chars) == [0, 1]
    assert list(ch.first) == [2, 3, 4]
    assert ch.depth == 2
    sc.reset()
    assert sc.is_clean()
    root = root_repr(b)
    assert list(root.chars) == [0, 1, 2]
    assert list(root.first) == [1, 2, 4, 6]
    extend_left(root, b, sc)
    assert sorted(sc.left_extensions()) == [0, 1, 2]
    assert sc.gamma[2] == 2 and sc.gamma[1] == 1 and sc.gamma[0] == 1
    sc.reset()


def test_fixed_cases():
    def nodes(text):
        bb = bwt_from_suffix_array(text)
        seen = []
        enumerate_right_maximal(
            bb, lambda rep, sc: seen.append(rep.interval() + (rep.depth,)))
        return seen

    assert sorted(nodes(Text(["abab"]))) == [(1, 5, 0), (2, 3, 2), (4, 5, 1)]
    assert len(nodes(Text(["aaaa"]))) == 4
    assert nodes(Text(["a"])) == [(1, 2, 0)]


def test_engines_match_suffix_tree():
    rng = random.Random(12)
    for _ in range(80):
        t = rand_text(rng, m=1, maxlen=80, sigma=rng.randint(1, 5))
        bb = bwt_from_suffix_array(t)
        stats_p, ivs_p = enumerate_right_maximal(bb, engine="python",
                                                 collect=True)
        stats_n, ivs_n = enumerate_right_maximal(bb, engine="numba",
                                                 collect=True)
        assert sorted(ivs_p) == sorted(ivs_n)
        assert stats_p.nodes == stats_n.nodes
        assert stats_p.tuples == stats_n.tuples
        tree = O.SuffixTreeOracle(tuple(int(c) for c in t.codes))
        assert sorted(ivs_p) == sorted(tree.internal_intervals())
        assert stats_p.tuples <= 5 * bb.n
        assert stats_p.max_stack <= (bb.A + 1) * (int(math.log2(bb.n)) + 1)


def test_threaded_traversal_agrees():
    rng = random.Random(13)
    t = rand_text(rng, m=1, maxlen=60)
    bb = bwt_from_suffix_array(t)
    single = []

    def cb(rep, scratch):
        lo, hi = rep.interval()
        # children of each extension tile its rows contiguously
        for a in scratch.left_extensions():
            g = int(scratch.gamma[a])
            for u in range(g - 1):
                assert scratch.L[a][u] + 1 == scratch.F[a][u + 1]
        single.append((lo, hi, rep.depth))

    st1, _ = enumerate_right_maximal(bb, cb)
    lock = threading.Lock()
    threaded = []

    def cb2(rep, scratch):
        lo, hi = rep.interval()
        with lock:
            threaded.append((lo, hi, rep.depth))

    st2, _ = enumerate_right_maximal(bb, cb2, threads=3)
    assert sorted(single) == sorted(threaded)
    assert st1.nodes == st2.nodes and st1.tuples == st2.tuples


def test_generalized_modes():
    rng = random.Random(14)
    for _ in range(60):
        m = rng.choice([1, 2, 2, 3])
        t = rand_text(rng, m=m, maxlen=30, sigma=rng.randint(1, 4))
        bwts = per_record_bwts(t)
        _, ivs = enumerate_generalized(bwts, collect=True)
        tree = O.SuffixTreeOracle(tuple(int(c) for c in t.codes))
        exp = sorted(tree.internal_intervals())
        assert sorted(ivs) == exp
        sa = K.sais(t.codes, t.alphabet_size)
        side = np.array([t.record_of(p + 1) for p in range(t.n)])[sa]
        exp_imp = sorted(iv for iv in exp
                         if len(set(side[iv[0] - 1:iv[1]].tolist())) >= 2)
        _, ivs2 = enumerate_generalized(bwts, mode="impure-only",
                                        collect=True)
        if m == 1:
            assert ivs2 == []
        else:
            assert sorted(ivs2) == exp_imp


def test_reverse_bwt():
    rng = random.Random(15)
    for _ in range(60):
        t = rand_text(rng, m=rng.choice([1, 1, 2, 3]), sigma=rng.randint(1, 5))
        bb = bwt_from_suffix_array(t)
        assert np.array_equal(reverse_bwt(bb).symbols,
                              bwt_naive(t.reversed_text()).symbols)
