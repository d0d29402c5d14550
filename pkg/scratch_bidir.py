import random
import sys

import numpy as np

sys.path.insert(0, "tests")
import oracles as O

from ubwt import Text
from ubwt.bidirectional import (UNSUPPORTED, BidirIndex, MsArrays,
                                bidir_contract, bidir_enumerate, bidir_extend,
                                bidir_is_maximal, build_ds, build_ms,
                                build_plcp)

rng = random.Random(20817)


def rand_text(m, sigma, maxlen):
    return Text(["".join(rng.choice("abcdefg"[:sigma])
                         for _ in range(rng.randint(1, maxlen)))
                 for _ in range(m)])


def rec_code_lists(text):
    offs = np.concatenate(([0], np.cumsum(text.record_lens)))
    return [[int(c) for c in text.codes[offs[r]:offs[r + 1]]] for r in range(text.m)]


def cyclic_occ(recs, W):
    """(count, prev set, next set) over all record rotations matching W."""
    cnt, prv, nxt = 0, set(), set()
    for rec in recs:
        L = len(rec)
        dbl = rec + rec
        if len(W) > L:
            continue
        for p in range(L):
            if dbl[p:p + len(W)] == W:
                cnt += 1
                prv.add(rec[(p - 1) % L])
                nxt.add(dbl[p + len(W)])
    return cnt, prv, nxt


def brute_pair(b, W):
    f = b.fwd.pattern_interval(W)
    r = b.rev.pattern_interval(list(reversed(W)))
    assert (f is None) == (r is None)
    return None if f is None else (f, r)


# ---------------------------------------------------------------- anchors

ban = BidirIndex("abab")
assert bidir_extend(ban, "left", 1, ((4, 5), (4, 5))) == ((2, 3), (4, 5))
assert bidir_extend(ban, "left", 0, ((2, 3), (2, 3))) == ((1, 1), (2, 2))
assert bidir_extend(ban, "right", 9, ((1, 5), (1, 5))) is None
assert bidir_contract(ban, "left", ((2, 3), (4, 5))) == ((4, 5), (4, 5))
assert bidir_contract(ban, "left", ((1, 5), (1, 5))) is UNSUPPORTED
assert bidir_contract(ban, "right", ((3, 3), (3, 3))) is UNSUPPORTED
assert bidir_enumerate(ban, "left", ((2, 3), (4, 5))) == [0, 2]
assert bidir_enumerate(ban, "right", ((4, 5), (4, 5))) == [0, 1]
# "b" extends right with # and a -> right-maximal
assert bidir_is_maximal(ban, "right", (4, 5))
# "ab" always preceded by nothing/b -> BWT_fwd[2..3] = "b#": left-maximal
assert bidir_is_maximal(ban, "left", (2, 3))
pl = build_plcp(ban)
assert pl.tolist() == [2, 1, 0, 0, 0], pl
assert build_plcp(BidirIndex("aaaa")).tolist() == [3, 2, 1, 0, 0]
assert build_plcp(BidirIndex("abcd")).tolist() == [0, 0, 0, 0, 0]
ds = build_ds(ban, 1)
assert ds.values.tolist() == [3, 2, 3, 2] and ds.tau == 1, ds
assert build_ds(ban, 5).values.tolist() == [1, 1, 1, 1]
try:
    build_ds(ban, 0)
    raise AssertionError("tau=0 accepted")
except ValueError:
    pass
bms = BidirIndex(Text(["mississippi", "issi"]))
ms = build_ms(bms)
assert ms.values.tolist() == [4, 3, 2, 1], ms
assert build_ms(BidirIndex(Text(["abab", "cdcd"]))).values.tolist() == [0, 0, 0, 0]
print("anchors ok")

# ------------------------------------------------------------ plcp random

for trial in range(120):
    m = 1
    t = rand_text(1, rng.randint(1, 5), 60)
    b = BidirIndex(t)
    got = build_plcp(b)
    want = O.plcp_oracle(tuple(int(c) for c in t.codes))
    assert got.tolist() == list(want), (t.records(), got, want)
    assert b.last_extend_calls <= 3 * t.n, (t.records(), b.last_extend_calls)
    assert np.all(np.diff(got) >= -1)
print("plcp ok")

# ------------------------------------------------------------ ds ms random

for trial in range(80):
    s = "".join(rng.choice("abc"[:rng.randint(1, 3)]) for _ in range(rng.randint(1, 40)))
    tau = rng.choice([1, 1, 2, 3])
    b = BidirIndex(s)
    got = build_ds(b, tau)
    want = O.ds_oracle(s, tau)
    assert got.values.tolist() == list(want), (s, tau, got, want)
    assert got.is_delta_monotone()
    assert b.last_extend_calls <= 3 * b.text.n

for trial in range(80):
    sig = "abcd"[:rng.randint(1, 4)]
    s = "".join(rng.choice(sig) for _ in range(rng.randint(1, 40)))
    t = "".join(rng.choice(sig) for _ in range(rng.randint(1, 25)))
    tau = rng.choice([1, 1, 2])
    b = BidirIndex(Text([s, t]))
    got = build_ms(b, tau=tau)
    want = O.ms_oracle(s, t, tau)
    assert got.values.tolist() == list(want), (s, t, tau, got, want)
    assert got.is_delta_monotone()
print("ds ms ok")

# ----------------------------------------------------------------- walks

steps_done = 0
for trial in range(60):
    m = rng.choice([1, 1, 1, 2, 3])
    t = rand_text(m, rng.randint(1, 4), 14)
    b = BidirIndex(t)
    recs = rec_code_lists(t)
    minlen = min(len(r) for r in recs)
    W = []
    pair = b.full_pair()
    for step in range(60):
        steps_done += 1
        # interval sanity against plain backward-search on both strands
        bp = brute_pair(b, W)
        assert bp == pair, (t.records(), W, pair, bp)
        assert pair[0][1] - pair[0][0] == pair[1][1] - pair[1][0]
        cnt, prv, nxt = cyclic_occ(recs, W)
        assert pair[0][1] - pair[0][0] + 1 == cnt
        assert bidir_is_maximal(b, "left", pair[0]) == (len(prv) >= 2)
        assert bidir_is_maximal(b, "right", pair[1]) == (len(nxt) >= 2)
        el = bidir_enumerate(b, "left", pair)
        er = bidir_enumerate(b, "right", pair)
        assert el == sorted(prv), (t.records(), W, el, prv)
        assert er == sorted(nxt), (t.records(), W, er, nxt)
        op = rng.random()
        if op < 0.6 and len(W) < minlen:
            side = rng.choice(["left", "right"])
            cand = el if side == "left" else er
            if rng.random() < 0.15:
                miss = [c for c in range(t.alphabet_size) if c not in cand]
                if miss:
                    assert bidir_extend(b, side, rng.choice(miss), pair) is None
                continue
            c = rng.choice(cand)
            nxt_pair = bidir_extend(b, side, c, pair)
            W = [c] + W if side == "left" else W + [c]
            want = brute_pair(b, W)
            assert nxt_pair == want, (t.records(), W, side, c, nxt_pair, want)
            pair = nxt_pair
            # enumerate with pairs agrees with individual extensions
            if rng.random() < 0.2:
                wp = bidir_enumerate(b, side, nxt_pair, True)
                for cc, pp in wp:
                    assert pp == bidir_extend(b, side, cc, nxt_pair)
        else:
            side = rng.choice(["left", "right"])
            res = bidir_contract(b, side, pair)
            if not W:
                assert res is UNSUPPORTED
                continue
            ok = (len(nxt) >= 2) if side == "left" else (len(prv) >= 2)
            if not ok:
                assert res is UNSUPPORTED, (t.records(), W, side, res)
                continue
            W = W[1:] if side == "left" else W[:-1]
            want = brute_pair(b, W)
            assert res == want, (t.records(), W, side, res, want)
            pair = res
print("walks ok (%d steps)" % steps_done)

# ----------------------------------------------------- state + cst wiring

b = BidirIndex(Text(["mississippi", "issi"]))
b2 = BidirIndex.from_state(b.state())
assert build_ms(b2).values.tolist() == [4, 3, 2, 1]
assert bidir_extend(b2, "left", b2.fwd.encode_chars("s")[0],
                    b2.full_pair()) == bidir_extend(b, "left", b.fwd.encode_chars("s")[0],
                                                    b.full_pair())
ban2 = BidirIndex.from_state(ban.state())
assert build_plcp(ban2).tolist() == [2, 1, 0, 0, 0]
assert bidir_contract(ban2, "left", ((2, 3), (4, 5))) == ((4, 5), (4, 5))

from ubwt import build_cst

cst = build_cst("abab")
assert cst.plcp.tolist() == [2, 1, 0, 0, 0]
assert cst.string_depth(3) == 2
cst2 = build_cst("mississippi", index="csa")
want = O.plcp_oracle(tuple(int(c) for c in Text(["mississippi"]).codes))
assert cst2.plcp.tolist() == list(want)
print("state + cst ok")
print("ALL OK")
