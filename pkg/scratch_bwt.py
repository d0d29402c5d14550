import sys, random
sys.path.insert(0, "tests")
import numpy as np
import oracles as O
from ubwt.textcore import Text
from ubwt import _kernels as K
from ubwt.bwt import (BwtString, bwt_naive, bwt_from_suffix_array, bwt_linear,
                      merge_bwts, left_shift_bwt)

rng = random.Random(77)


def rand_text(m=1, maxlen=40, sigma=4):
    recs = []
    for _ in range(m):
        ln = rng.randint(1, maxlen)
        recs.append("".join(rng.choice("abcdef"[:sigma]) for _ in range(ln)))
    return Text(recs)


def concat_tuple(text):
    return tuple(int(c) for c in text.codes)


# anchors
t = Text(["abab"])
b = bwt_naive(t)
assert list(b.symbols) == [2, 2, 0, 1, 1], b.symbols
assert t.decode_slice(1, 5) == "abab#"
t2 = Text(["mississippi"])
b2 = bwt_naive(t2)
dec = "".join("#" if c == 0 else t2.chars[c - 1] for c in b2.symbols)
assert dec == "ipssm#pissii", dec
print("anchors ok")

# constructions agree
for trial in range(300):
    m = rng.choice([1, 1, 1, 2, 3])
    t = rand_text(m=m, maxlen=40, sigma=rng.randint(1, 5))
    bn = bwt_naive(t)
    bs = bwt_from_suffix_array(t)
    bl = bwt_linear(t)
    assert np.array_equal(bn.symbols, bs.symbols), (t.records(), bn.symbols, bs.symbols)
    assert np.array_equal(bn.symbols, bl.symbols), (t.records(), bn.symbols, bl.symbols)
    exp = O.union_bwt_oracle([tuple(int(c) for c in t.codes[s - 1:e])
                              for s, e in (t.record_bounds(r) for r in range(1, t.m + 1))])
    assert tuple(bn.symbols.tolist()) == exp
print("constructions ok")

# merge of per-record transforms == whole-text transform
for trial in range(200):
    t = rand_text(m=2, maxlen=30, sigma=rng.randint(1, 4))
    parts = []
    for r in (1, 2):
        s, e = t.record_bounds(r)
        sub = Text(t.records()[r - 1:r])
        # rebuild with global codes: rotations of the record under text coding
        rec = [int(c) for c in t.codes[s - 1:e]]
        n = len(rec)
        rots = sorted(tuple(rec[q:] + rec[:q]) for q in range(n))
        syms = np.array([x[-1] for x in rots], np.int64)
        parts.append(BwtString(syms, t.alphabet_size, np.array([n]), t.chars))
    merged, flags = merge_bwts(parts[0], parts[1], return_flags=True)
    bn = bwt_naive(t)
    assert np.array_equal(merged.symbols, bn.symbols)
    assert (flags == 1).sum() == parts[0].n and (flags == 2).sum() == parts[1].n
print("merge ok")

# halving trace cross-check
for trial in range(60):
    t = rand_text(m=1, maxlen=120, sigma=rng.randint(2, 5))
    trace = []
    bl = bwt_linear(t, trace=trace)
    assert np.array_equal(bl.symbols, bwt_naive(t).symbols)
    assert len(trace) >= 2
    for entry in trace:
        packed = tuple(int(x) for x in entry["packed"])
        exp = O.bwt_oracle(packed)
        assert tuple(int(x) for x in entry["bwt"]) == exp, (t.records(), entry)
print("trace ok")

# invert round trip
for trial in range(120):
    t = rand_text(m=1, maxlen=60, sigma=rng.randint(1, 5))
    b = bwt_from_suffix_array(t)
    assert b.invert() == t
tm = rand_text(m=2)
try:
    bwt_naive(tm).invert()
    assert False
except ValueError:
    pass
print("invert ok")

# count / pattern_interval vs occurrence counting
for trial in range(150):
    t = rand_text(m=rng.choice([1, 2]), maxlen=40, sigma=3)
    b = bwt_from_suffix_array(t)
    for _ in range(20):
        plen = rng.randint(1, 6)
        pat = "".join(rng.choice("abc") for _ in range(plen))
        exp = sum(O.occurrences(rec, pat) for rec in t.records())
        assert b.count(pat) == exp, (t.records(), pat, b.count(pat), exp)
    assert b.count("zz") == 0
print("count ok")

# lf / psi / positions_of_rows
for trial in range(100):
    t = rand_text(m=rng.choice([1, 1, 2, 3]), maxlen=30, sigma=4)
    b = bwt_from_suffix_array(t)
    sa = K.sais(t.codes, t.alphabet_size)
    rows = np.arange(1, b.n + 1)
    pos = b.positions_of_rows(rows)
    assert np.array_equal(pos, sa + 1), (t.records(), pos, sa + 1)
    if t.m == 1:
        s = concat_tuple(t)
        lfo = O.lf_oracle(s)
        psio = O.psi_oracle(s)
        for i in range(1, b.n + 1):
            assert b.lf(i) == lfo[i - 1]
            assert b.psi(i) == psio[i - 1]
    lf = b.lf_array()
    psi = b.psi_array()
    assert np.array_equal(psi[lf], np.arange(b.n))
    # subset locate
    sub = rng.sample(range(1, b.n + 1), min(5, b.n))
    got = b.positions_of_rows(np.array(sub))
    assert np.array_equal(got, sa[np.array(sub) - 1] + 1)
print("walks ok")

# duplicate rotations rejected in merge
ta = Text(["ab"])
ba = bwt_naive(ta)
try:
    merge_bwts(ba, ba)
    assert False
except ValueError:
    pass
print("dup ok")

# state round trip
t = rand_text(m=2, maxlen=25, sigma=4)
b = bwt_naive(t)
b2 = BwtString.from_state(b.state())
assert b == b2 and b2.count("ab") == b.count("ab")
print("state ok")

print("ALL OK")
