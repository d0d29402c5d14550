import sys, random
sys.path.insert(0, "tests")
import numpy as np
import oracles as O
from ubwt.textcore import Text
from ubwt import _kernels as K
from ubwt.bwt import bwt_naive, bwt_from_suffix_array, reverse_bwt
from ubwt.rangedistinct import RangeDistinctIndex, range_distinct, range_distinct_mmphf
from ubwt.enumeration import (Repr, ExtensionScratch, root_repr, extend_left,
                              enumerate_right_maximal, enumerate_generalized)

rng = random.Random(11)


def rand_text(m=1, maxlen=40, sigma=4):
    return Text(["".join(rng.choice("abcdef"[:sigma]) for _ in range(rng.randint(1, maxlen)))
                 for _ in range(m)])


# ---------------- range distinct: anchors
s = "abracadabra"
codes = np.array([ord(c) - 97 for c in s], np.int64)
rd = RangeDistinctIndex(codes, 26)
got = set(range_distinct(rd, 1, 4))
assert got == {(0, 1, 2), (1, 1, 1), (17, 1, 1)}, got
assert set(rd.query(3, 3)) == {(17, 1, 1)}
un = RangeDistinctIndex(np.full(7, 2, np.int64), 3)
assert set(un.query(1, 7)) == {(2, 1, 7)}
try:
    rd.query(4, 2)
    assert False
except ValueError:
    pass
print("rd anchors ok")

# ---------------- range distinct: backends agree, op bound, coverage
for trial in range(250):
    n = rng.randint(1, 120)
    A = rng.randint(1, 6)
    seq = np.array([rng.randint(0, A - 1) for _ in range(n)], np.int64)
    r1 = RangeDistinctIndex(seq, A, backend="rmq")
    r2 = RangeDistinctIndex(seq, A, backend="mmphf", seed=trial)
    r3 = RangeDistinctIndex(seq, A, backend="brute")
    ctx = r1.new_context()
    for q in range(12):
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        t1 = set(r1.query(i, j, ctx))
        occ = len(t1)
        assert ctx.last_rmq_calls <= 2 * occ + 1
        assert t1 == set(range_distinct_mmphf(r2, i, j))
        assert t1 == set(r3.query(i, j))
        exp = O.range_distinct_oracle(tuple(int(v) for v in seq), i, j)
        assert t1 == {(c, v[0], v[1]) for c, v in exp.items()}
        assert sum(lr - fr + 1 for _, fr, lr in t1) == j - i + 1
        assert not (ctx.slot != -1).any()
print("rd backends ok")

# ---------------- extend_left anchors on "abab#"
t = Text(["abab"])
b = bwt_naive(t)
sc = ExtensionScratch(b.A)
rb = Repr([0, 1], [4, 5, 6], 1)   # W = "b"
extend_left(rb, b, sc)
assert sc.h == 1 and sc.left_extensions() == [1]
assert sc.gamma[1] == 2
ch = sc.child_repr(1)
assert list(ch.chars) == [0, 1] and list(ch.first) == [2, 3, 4] and ch.depth == 2
sc.reset()
assert sc.is_clean()
re = root_repr(b)
assert list(re.chars) == [0, 1, 2] and list(re.first) == [1, 2, 4, 6]
extend_left(re, b, sc)
assert sorted(sc.left_extensions()) == [0, 1, 2]
assert sc.gamma[2] == 2 and sc.gamma[1] == 1 and sc.gamma[0] == 1
sc.reset()
print("extend_left ok")

# ---------------- single enumeration: fixed cases
def node_set(text):
    bb = bwt_from_suffix_array(text)
    seen = []
    def cb(rep, scratch):
        lo, hi = rep.interval()
        seen.append((lo, hi, rep.depth))
    st, _ = enumerate_right_maximal(bb, cb)
    return seen, st

seen, st = node_set(Text(["abab"]))
assert sorted(seen) == sorted([(1, 5, 0), (4, 5, 1), (2, 3, 2)]), seen
seen, _ = node_set(Text(["aaaa"]))
assert len(seen) == 4
seen, _ = node_set(Text(["a"]))
assert seen == [(1, 2, 0)]
print("fixed cases ok")

# ---------------- single enumeration: python == numba == oracle
for trial in range(200):
    t = rand_text(m=1, maxlen=80, sigma=rng.randint(1, 5))
    bb = bwt_from_suffix_array(t)
    stats_p, ivs_p = enumerate_right_maximal(bb, engine="python", collect=True)
    stats_n, ivs_n = enumerate_right_maximal(bb, engine="numba", collect=True)
    assert sorted(ivs_p) == sorted(ivs_n)
    assert stats_p.nodes == stats_n.nodes and stats_p.tuples == stats_n.tuples
    tree = O.SuffixTreeOracle(tuple(int(c) for c in t.codes))
    exp = sorted(tree.internal_intervals())
    assert sorted(ivs_p) == exp, (t.records(), sorted(ivs_p), exp)
    n = bb.n
    assert stats_p.tuples <= 5 * n
    sigma = bb.A
    import math
    assert stats_p.max_stack <= (sigma + 1) * (int(math.log2(n)) + 1)
print("single enum ok")

# ---------------- callback payload sanity + threads
t = rand_text(m=1, maxlen=60, sigma=4)
bb = bwt_from_suffix_array(t)
payload = []
def cb(rep, scratch):
    lo, hi = rep.interval()
    # children tile the interval of each extension row
    for a in scratch.left_extensions():
        g = int(scratch.gamma[a])
        for u in range(g - 1):
            assert scratch.L[a][u] + 1 == scratch.F[a][u + 1]
    payload.append((lo, hi, rep.depth))
st1, _ = enumerate_right_maximal(bb, cb)
import threading
lock = threading.Lock()
payload2 = []
def cb2(rep, scratch):
    lo, hi = rep.interval()
    with lock:
        payload2.append((lo, hi, rep.depth))
st2, _ = enumerate_right_maximal(bb, cb2, threads=3)
assert sorted(payload) == sorted(payload2)
assert st1.nodes == st2.nodes and st1.tuples == st2.tuples
print("threads ok")

# ---------------- generalized enumeration
for trial in range(150):
    m = rng.choice([1, 2, 2, 3])
    t = rand_text(m=m, maxlen=30, sigma=rng.randint(1, 4))
    bwts = []
    for r in range(1, m + 1):
        s, e = t.record_bounds(r)
        rec = [int(c) for c in t.codes[s - 1:e]]
        rots = sorted(tuple(rec[q:] + rec[:q]) for q in range(len(rec)))
        syms = np.array([x[-1] for x in rots], np.int64)
        from ubwt.bwt import BwtString
        bwts.append(BwtString(syms, t.alphabet_size, np.array([len(rec)]), t.chars))
    st, ivs = enumerate_generalized(bwts, collect=True)
    tree = O.SuffixTreeOracle(tuple(int(c) for c in t.codes))
    exp = sorted(tree.internal_intervals())
    assert sorted(ivs) == exp, (t.records(), sorted(ivs), exp)
    # impure-only: nodes whose rows span >= 2 records
    sa = K.sais(t.codes, t.alphabet_size)
    rec_of_pos = np.array([t.record_of(p + 1) for p in range(t.n)])
    side_of_row = rec_of_pos[sa]
    exp_imp = sorted((lo, hi, d) for (lo, hi, d) in exp
                     if len(set(side_of_row[lo - 1:hi].tolist())) >= 2)
    st2, ivs2 = enumerate_generalized(bwts, mode="impure-only", collect=True)
    if m == 1:
        assert ivs2 == []
    else:
        assert sorted(ivs2) == exp_imp, (t.records(), sorted(ivs2), exp_imp)
print("generalized ok")

# ---------------- reverse bwt
for trial in range(150):
    t = rand_text(m=rng.choice([1, 1, 2, 3]), maxlen=40, sigma=rng.randint(1, 5))
    bb = bwt_from_suffix_array(t)
    rvb = reverse_bwt(bb)
    exp = bwt_naive(t.reversed_text())
    assert np.array_equal(rvb.symbols, exp.symbols), (t.records(), rvb.symbols, exp.symbols)
print("reverse ok")

print("ALL OK")
