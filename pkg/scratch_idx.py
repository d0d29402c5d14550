import random
import sys

import numpy as np

sys.path.insert(0, "/root/pkg/tests")
import oracles as O

from ubwt.bwt import bwt_from_suffix_array
from ubwt.enumeration import enumerate_right_maximal
from ubwt.indexes import (ChildSupport, CstHandle, LayeredCsa,
                          SuccinctSuffixArray, build_cst, csa_lookup,
                          cst_blind_child, cst_child, cst_string_ancestor,
                          cst_string_depth, ssa_count, ssa_locate,
                          ssa_substring, default_sample_rate)
from ubwt.textcore import Text
from ubwt.topology import build_topology

rng = random.Random(20240817)


def multi_sa(text):
    rots = []
    off = 0
    for L in text.record_lens:
        L = int(L)
        seg = [int(c) for c in text.codes[off:off + L]]
        dd = seg + seg
        for l in range(L):
            rots.append((tuple(dd[l:l + L]), off + l + 1))
        off += L
    rots.sort()
    return [p for _, p in rots]


def rand_text(m, maxlen, sigma):
    recs = []
    for _ in range(m):
        L = rng.randint(1, maxlen)
        recs.append("".join(rng.choice("abcd"[:sigma]) for _ in range(L)))
    return Text(recs)


# ---------------------------------------------------------------- SSA
def check_ssa(text, r):
    bwt = bwt_from_suffix_array(text)
    ssa = SuccinctSuffixArray(bwt, r=r)
    n = bwt.n
    sa = multi_sa(text)
    got = [ssa_locate(ssa, row) for row in range(1, n + 1)]
    assert got == sa, (text.records(), r, got, sa)
    for row in range(1, n + 1):
        ssa.sa_value(row)
        assert ssa.last_steps <= ssa.r - 1, (row, ssa.last_steps, ssa.r)
    if text.m == 1:
        assert ssa.marked.rank1(n) == -(-n // ssa.r)
    # substrings against direct decoding
    pairs = [(e, f) for e in range(1, n + 1) for f in range(e, n + 1)]
    if len(pairs) > 200:
        pairs = rng.sample(pairs, 200) + [(1, n)]
    for e, f in pairs:
        gt = text.decode_slice(e, f)
        gs = ssa_substring(ssa, e, f)
        assert gs == gt, (text.records(), r, e, f, gs, gt)
        if text.m == 1:
            assert ssa.last_lf_steps <= (f - e) + ssa.r
    assert ssa_substring(ssa, 1, n) == text.decode_slice(1, n)
    # counts against the occurrence oracle
    chars = "abcd"
    for _ in range(20):
        plen = rng.randint(1, 6)
        p = "".join(rng.choice(chars) for _ in range(plen))
        expect = sum(O.occurrences(rec, p) for rec in text.records())
        assert ssa_count(ssa, p) == expect, (text.records(), p)
    # state round trip
    ssa2 = SuccinctSuffixArray.from_state(ssa.state())
    rows = rng.sample(range(1, n + 1), min(n, 10))
    assert [ssa2.sa_value(x) for x in rows] == [ssa.sa_value(x) for x in rows]
    assert ssa2.substring(1, n) == ssa.substring(1, n)


for trial in range(120):
    m = rng.choice([1, 1, 1, 2, 3])
    text = rand_text(m, 60, rng.randint(1, 4))
    check_ssa(text, rng.choice([None, 1, 2, 3, 7]))
print("ssa random ok")

t = Text(["abab"])
bw = bwt_from_suffix_array(t)
ss = SuccinctSuffixArray(bw, r=2)
assert [ssa_locate(ss, i) for i in range(1, 6)] == [5, 3, 1, 4, 2]
assert ssa_substring(ss, 2, 4) == "bab"
assert ssa_count(ss, "ab") == 2
assert ssa_count(ss, "zz") == 0
assert default_sample_rate(5, 2) >= 1
try:
    ss.sa_value(0)
    raise AssertionError("no error")
except IndexError:
    pass
try:
    ss.substring(3, 2)
    raise AssertionError("no error")
except IndexError:
    pass
print("ssa anchors ok")


# ---------------------------------------------------------------- CSA
def check_csa(text, eps, block=None):
    csa = LayeredCsa(text, eps=eps, block=block)
    sa = multi_sa(text)
    n = text.n
    for row in range(1, n + 1):
        got = csa_lookup(csa, row)
        assert got == sa[row - 1], (text.records(), eps, row, got, sa[row - 1])
        assert csa.last_steps <= csa.k * (csa.B - 1)
    assert csa_lookup(csa, 1) == n
    csa2 = LayeredCsa.from_state(csa.state())
    rows = rng.sample(range(1, n + 1), min(n, 12))
    assert [csa2.sa_value(x) for x in rows] == [sa[x - 1] for x in rows]


for trial in range(80):
    text = rand_text(1, 80, rng.randint(1, 4))
    check_csa(text, rng.choice([1.0, 0.5, 0.25]),
              block=rng.choice([None, None, 4]))
big = Text(["".join(rng.choice("ab") for _ in range(2500))])
check_csa(big, 0.5)
check_csa(Text(["a"]), 0.5)          # minimal padded instance
check_csa(Text(["a" * 17]), 0.25)    # unary text, deep layering
for bad, err in [
    (lambda: LayeredCsa(Text(["ab", "c"])), ValueError),
    (lambda: LayeredCsa(Text(["ab"]), eps=0.3), ValueError),
    (lambda: LayeredCsa(Text(["ab"]), block=3), ValueError),
]:
    try:
        bad()
        raise AssertionError("no error")
    except err:
        pass
csa = LayeredCsa(Text(["abab"]))
for row in (0, 6):
    try:
        csa.sa_value(row)
        raise AssertionError("no error")
    except IndexError:
        pass
print("csa ok")


# ---------------------------------------------------------------- CST
def build_handle(s, kind="ssa", with_children=True):
    text = Text([s])
    bwt = bwt_from_suffix_array(text)
    _, ivs = enumerate_right_maximal(bwt, engine="numba", collect=True)
    topo = build_topology(ivs, bwt.n)
    plcp = O.plcp_oracle(tuple(int(c) for c in text.codes))
    if kind == "ssa":
        idx = SuccinctSuffixArray(bwt, r=min(3, bwt.n))
    else:
        idx = LayeredCsa(text, eps=0.5)
    kids = ChildSupport(topo, bwt) if with_children else None
    return CstHandle(idx, topo, plcp, kids), bwt


def check_cst(s):
    cst, bwt = build_handle(s)
    orc = O.SuffixTreeOracle(tuple(int(c) for c in Text([s]).codes))
    n = bwt.n
    for nd in orc.by_id.values():
        assert cst_string_depth(cst, nd.nid) == nd.sdepth, (s, nd.nid)
    # child edges: expected first symbols from the oracle labels
    for nd in orc.by_id.values():
        expect = {}
        for uo in nd.children:
            expect[orc.label(uo)[nd.sdepth]] = uo.nid
        for a in range(bwt.A):
            want = expect.get(a)
            got = cst_child(cst, nd.nid, a)
            assert got == want, (s, nd.nid, a, got, want)
            if want is not None:
                assert cst_blind_child(cst, nd.nid, a) == want
    # string-level ancestors against the parent chain
    for nd in orc.by_id.values():
        if nd.nid == 1:
            continue
        chain = []
        cur = nd
        while cur is not None:
            chain.append(cur)
            cur = cur.parent
        chain.reverse()
        for d in range(1, nd.sdepth + 1):
            want = next(u.nid for u in chain if u.sdepth >= d)
            assert cst_string_ancestor(cst, nd.nid, d) == want, (s, nd.nid, d)
        for bad in (0, nd.sdepth + 1):
            try:
                cst_string_ancestor(cst, nd.nid, bad)
                raise AssertionError("no error")
            except ValueError:
                pass
    # round trip
    cst2 = CstHandle.from_state(cst.state())
    for nd in orc.by_id.values():
        assert cst2.string_depth(nd.nid) == nd.sdepth
        for a in range(bwt.A):
            assert cst2.child(nd.nid, a) == cst.child(nd.nid, a)


for trial in range(60):
    L = rng.randint(1, 50)
    sigma = rng.randint(1, 4)
    s = "".join(rng.choice("abcd"[:sigma]) for _ in range(L))
    check_cst(s)
check_cst("a" * 25)
check_cst("ab" * 12)
print("cst oracle ok")

cst, bwt = build_handle("abab")
assert cst_string_depth(cst, 1) == 0
assert cst_string_depth(cst, 3) == 2          # node "ab"
assert cst_child(cst, 1, 1) == 3              # root --a--> "ab"
assert cst_child(cst, 1, 0) == 2              # root --#--> leaf "#"
assert cst_child(cst, 3, 0) == 4              # "ab" --#--> leaf "ab#"
assert cst_child(cst, 1, 3) is None
assert cst_string_ancestor(cst, 5, 2) == 3    # leaf "abab#", prefix "ab"
assert cst_string_ancestor(cst, 5, 5) == 5
assert cst_string_ancestor(cst, 5, 1) == 3
cst_csa, _ = build_handle("abab", kind="csa")
orc = O.SuffixTreeOracle(tuple(int(c) for c in Text(["abab"]).codes))
for nd in orc.by_id.values():
    assert cst_csa.string_depth(nd.nid) == nd.sdepth
bare, _ = build_handle("abab", with_children=False)
try:
    bare.child(1, 1)
    raise AssertionError("no error")
except ValueError:
    pass
print("cst anchors ok")
print("ALL OK")
