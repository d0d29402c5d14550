import random
import sys

import numpy as np

sys.path.insert(0, "tests")
import oracles as O

from ubwt import _kernels as K
from ubwt.bwt import bwt_from_suffix_array
from ubwt.enumeration import enumerate_right_maximal
from ubwt.textcore import Text
from ubwt.topology import (
    BpTopology,
    WeinerSupport,
    bp_navigate,
    build_topology,
    build_weiner_support,
    count_smaller,
    suffix_link,
    weiner_link,
)

rng = random.Random(20260815)


def random_tree_bits(rng, max_nodes):
    # random tree DFS -> parens bits
    bits = []

    def rec(budget):
        bits.append(1)
        if budget > 1:
            k = rng.randint(0, 3)
            left = budget - 1
            for _ in range(k):
                if left <= 0:
                    break
                take = rng.randint(1, left)
                rec(take)
                left -= take
        bits.append(0)

    rec(max_nodes)
    return np.asarray(bits, dtype=np.uint8)


def brute_excess(bits):
    return np.concatenate([[0], np.cumsum(np.where(bits == 1, 1, -1))])


# ---- kernel micro-tests
for trial in range(400):
    bits = random_tree_bits(rng, rng.randint(1, 60))
    nb = len(bits)
    from ubwt.succinct import Bitvector

    bv = Bitvector(bits)
    base, tmin, tmax, size = K.bp_build(bv.words, nb)
    E = brute_excess(bits)
    for p in range(nb + 1):
        assert K.bp_excess(bv.words, base, p) == E[p], (trial, p)
    for _ in range(60):
        p = rng.randint(0, nb)
        t = rng.randint(-2, int(E.max()) + 1)
        want = 0
        for q in range(p + 1, nb + 1):
            if E[q] == t:
                want = q
                break
        got = int(K.bp_fwd_search(bv.words, nb, base, tmin, tmax, size, p, t))
        assert got == want, ("fwd", trial, p, t, got, want)
        want = -1
        for q in range(p - 1, -1, -1):
            if E[q] == t:
                want = q
                break
        got = int(K.bp_bwd_search(bv.words, nb, base, tmin, tmax, size, p, t))
        assert got == want, ("bwd", trial, p, t, got, want)
    for _ in range(40):
        i = rng.randint(1, nb)
        j = rng.randint(i, nb)
        seg = E[i : j + 1]
        m = int(seg.min())
        q = i + int(np.argmax(seg == m))
        gm, gq = K.bp_min_excess_pos(bv.words, nb, base, tmin, tmax, size, i, j)
        assert (int(gm), int(gq)) == (m, q), ("minpos", trial, i, j, gm, gq, m, q)
        gmax = int(K.bp_max_excess(bv.words, nb, base, tmin, tmax, size, i, j))
        assert gmax == int(seg.max()), ("maxexc", trial, i, j)
print("bp kernels ok")

# also hammer a long sequence so word/tree paths are exercised
bits = random_tree_bits(rng, 3000)
from ubwt.succinct import Bitvector

bv = Bitvector(bits)
nb = len(bits)
base, tmin, tmax, size = K.bp_build(bv.words, nb)
E = brute_excess(bits)
for _ in range(800):
    p = rng.randint(0, nb)
    t = rng.randint(-1, int(E.max()))
    want = 0
    for q in range(p + 1, nb + 1):
        if E[q] == t:
            want = q
            break
    assert int(K.bp_fwd_search(bv.words, nb, base, tmin, tmax, size, p, t)) == want
    want = -1
    for q in range(p - 1, -1, -1):
        if E[q] == t:
            want = q
            break
    assert int(K.bp_bwd_search(bv.words, nb, base, tmin, tmax, size, p, t)) == want
    i = rng.randint(1, nb)
    j = rng.randint(i, nb)
    seg = E[i : j + 1]
    gm, gq = K.bp_min_excess_pos(bv.words, nb, base, tmin, tmax, size, i, j)
    assert int(gm) == int(seg.min()) and int(gq) == i + int(np.argmax(seg == seg.min()))
    assert int(K.bp_max_excess(bv.words, nb, base, tmin, tmax, size, i, j)) == int(seg.max())
print("bp kernels long ok")


def build_all(recs):
    t = Text(recs)
    bwt = bwt_from_suffix_array(t)
    stats, iv = enumerate_right_maximal(bwt, collect=True)
    topo = build_topology(iv, bwt.n)
    return t, bwt, topo


def paren_str(topo):
    bits = np.unpackbits(topo.bv.words.view(np.uint8), bitorder="little", count=topo.n_bits)
    return "".join("(" if b else ")" for b in bits)


# ---- anchors
t, bwt, topo = build_all(["abab"])
assert paren_str(topo) == "(()(()())(()()))", paren_str(topo)
assert topo.n_leaves == 5 and topo.n_nodes == 8
assert topo.interval(1) == (1, 5)
assert bp_navigate(topo, "lca", topo.select_leaf(2), topo.select_leaf(3)) == 3
assert topo.interval(3) == (2, 3)  # node "ab"
assert bp_navigate(topo, "parent", 1) is None
for v in range(1, 9):
    assert bp_navigate(topo, "ancestor", v, topo.depth(v)) == v
assert suffix_link(topo, bwt, 3) == 6  # "ab" -> "b"
assert suffix_link(topo, bwt, 7) == 2  # leaf "b#" -> leaf "#"
assert suffix_link(topo, bwt, 6) == 1  # depth-1 node -> root
ws = build_weiner_support(topo, bwt)
assert weiner_link(ws, 6, 1) == 3  # "b" +a-> "ab" (explicit)
assert weiner_link(ws, 3, 2) == 8  # "ab" +b-> leaf "bab#" (implicit)
assert weiner_link(ws, 3, 1) is None  # "aab" absent
assert count_smaller(ws, (4, 5), 1) == 0
assert count_smaller(ws, (1, 5), 2) == 3
assert count_smaller(ws, (4, 4), 1) == 0

t2, bwt2, topo2 = build_all(["a"])
assert paren_str(topo2) == "(()())"
print("anchors ok")


def check_tree(recs, trial):
    t, bwt, topo = build_all(recs)
    codes = tuple(int(x) for x in t.codes)
    tree = O.SuffixTreeOracle(codes)
    assert paren_str(topo) == O.bp_oracle(codes), ("bp", trial, recs)
    n_nodes = len(tree.nodes)
    assert topo.n_nodes == n_nodes and topo.n_leaves == t.n
    for nd in tree.nodes:
        v = nd.nid
        assert topo.interval(v) == (nd.lo, nd.hi), ("interval", trial, v)
        assert bp_navigate(topo, "depth", v) == tree.tdepth(nd), ("depth", trial, v)
        assert bp_navigate(topo, "height", v) == tree.height(nd), ("height", trial, v)
        assert topo.is_leaf(v) == (nd.leaf_rank is not None)
        par = bp_navigate(topo, "parent", v)
        assert par == (nd.parent.nid if nd.parent else None), ("parent", trial, v)
        assert bp_navigate(topo, "leftmostLeaf", v) == nd.lo
        assert bp_navigate(topo, "rightmostLeaf", v) == nd.hi
        assert topo.n_children(v) == len(nd.children)
        for idx, ch in enumerate(nd.children, 1):
            assert bp_navigate(topo, "child", v, idx) == ch.nid, ("child", trial, v, idx)
        assert bp_navigate(topo, "child", v, len(nd.children) + 1) is None
        dmax = tree.tdepth(nd)
        for d in range(0, dmax + 2):
            anc = bp_navigate(topo, "ancestor", v, d)
            ond = tree.ancestor_at(nd, d)
            assert anc == (ond.nid if ond else None), ("ancestor", trial, v, d)
    for j in range(1, t.n + 1):
        assert bp_navigate(topo, "selectLeaf", j) == tree.leaves[j - 1].nid
    for _ in range(120):
        a = tree.nodes[rng.randrange(n_nodes)]
        b = tree.nodes[rng.randrange(n_nodes)]
        assert topo.lca(a.nid, b.nid) == tree.lca(a, b).nid, ("lca", trial, a.nid, b.nid)
    # links
    m = t.m
    for nd in tree.nodes:
        if nd.nid == 1:
            continue
        got = suffix_link(topo, bwt, nd.nid)
        if nd.leaf_rank is not None and nd.lo <= m:
            assert got == 1, ("sl-sep", trial, nd.nid)
        else:
            assert got == tree.suffix_link(nd).nid, ("sl", trial, nd.nid)
    ws = build_weiner_support(topo, bwt)
    for nd in tree.nodes:
        for c in range(bwt.A):
            got = weiner_link(ws, nd.nid, c)
            if c < m:
                want = topo.select_leaf(int(bwt.C[c]) + 1) if nd.nid == 1 else None
                if int(bwt.C[c + 1] - bwt.C[c]) == 0:
                    want = None
                assert got == want, ("wl-sep", trial, nd.nid, c, got, want)
            else:
                ond = tree.weiner_link(nd, c)
                assert got == (ond.nid if ond else None), ("wl", trial, nd.nid, c, got)
    # countSmaller against a direct scan, both modes
    wsb = WeinerSupport(topo, bwt, use_prefix_sums=False)
    for nd in tree.nodes:
        i, j = nd.lo, nd.hi
        seg = bwt.symbols[i - 1 : j]
        for c in range(bwt.A):
            want = int((seg < c).sum())
            if int(bwt.rank(c, j) - bwt.rank(c, i - 1)) >= 1:
                assert count_smaller(ws, (i, j), c) == want, ("cs", trial, nd.nid, c)
            assert count_smaller(wsb, (i, j), c) == want, ("csb", trial, nd.nid, c)
    # link-count bounds over internal nodes
    n = t.n
    internal = tree.internal()
    assert len(internal) - 1 <= max(0, n - 2) or n <= 2
    expl = impl = 0
    for nd in internal:
        if nd.nid == 1:
            pass
        lab = tree.label(nd)
        for c in range(bwt.A):
            ond = tree.weiner_link(nd, c)
            if ond is None:
                continue
            if ond.sdepth == nd.sdepth + 1 and ond.leaf_rank is None:
                expl += 1
            elif ond.sdepth > nd.sdepth + 1:
                impl += 1
    assert expl <= max(0, n - 2) + (1 if n <= 2 else 0), ("explbound", trial, expl, n)
    assert impl <= 3 * n - 3, ("implbound", trial, impl, n)
    # state round trips
    t2 = BpTopology.from_state(topo.state())
    assert t2 == topo
    ws2 = WeinerSupport.from_state(ws.state(), topo, bwt)
    for nd in tree.nodes:
        for c in range(bwt.A):
            assert ws2.weiner_link(nd.nid, c) == ws.weiner_link(nd.nid, c)
        if nd.leaf_rank is None:
            for c in range(m, bwt.A):
                if int(bwt.rank(c, nd.hi) - bwt.rank(c, nd.lo - 1)) >= 1:
                    assert ws2.count_smaller((nd.lo, nd.hi), c) == ws.count_smaller((nd.lo, nd.hi), c)


ALPHA = "abcde"
for trial in range(150):
    m = rng.choice([1, 1, 1, 2, 3])
    sig = rng.randint(1, 4)
    recs = ["".join(rng.choice(ALPHA[:sig]) for _ in range(rng.randint(1, 40))) for _ in range(m)]
    check_tree(recs, trial)
print("oracle battery ok")

# degenerate shapes
check_tree(["a" * 30], "runs")
check_tree(["ab" * 15], "period")
check_tree(["a", "a", "a"], "dups")
print("degenerate ok")

# error paths
try:
    build_topology([(1, 3)], 5)
    raise SystemExit("expected unbalanced failure")
except ValueError:
    pass
try:
    suffix_link(topo, bwt, 1)
    raise SystemExit("expected root error")
except ValueError:
    pass
try:
    topo.open_pos(0)
    raise SystemExit("expected id error")
except ValueError:
    pass
try:
    ws.count_smaller((2, 4), 1)  # not a node interval of "abab#"
    raise SystemExit("expected non-node error")
except ValueError:
    pass
print("errors ok")
print("ALL OK")
