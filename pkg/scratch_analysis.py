import math
import random
import sys

sys.path.insert(0, "tests")
from oracles import (as_tuple, kmer_complexity_oracle, kmer_kernel_oracle,
                     maw_oracle, maximal_repeats_oracle, mem_oracle,
                     ms_oracle, mum_oracle, occurrences, pair_product_oracle,
                     substring_complexity_oracle, substring_kernel_oracle)

import ubwt.analysis as an
from ubwt import Text
from ubwt.analysis import (kmer_complexity, kmer_kernel,
                           maximal_exact_matches, maximal_repeats,
                           maximal_unique_matches, matching_statistics_det,
                           minimal_absent_words, pair_product,
                           substring_complexity, substring_kernel)
from ubwt.bidirectional import BidirIndex, build_ms

rng = random.Random(20260815)
ALPHA = "abcde"


def rand_s(lo, hi, sigma):
    return "".join(rng.choice(ALPHA[:sigma]) for _ in range(rng.randint(lo, hi)))


def budget(fn, *a, **kw):
    before = an._enum_invocations
    out = fn(*a, **kw)
    assert an._enum_invocations - before <= 2, fn.__name__
    return out


# ------------------------------------------------------------- repeats
mr = budget(maximal_repeats, "abab")
assert mr == [(3, 2)], mr
mr = budget(maximal_repeats, "mississippi")
assert len(mr) == 4, mr
s = "mississippi"
assert {as_tuple(s[p - 1:p - 1 + l]) for p, l in mr} == maximal_repeats_oracle(s)
assert budget(maximal_repeats, "abcd") == []

for _ in range(300):
    s = rand_s(1, 60, rng.randint(1, 5))
    got = maximal_repeats(s)
    want = maximal_repeats_oracle(s)
    words = [as_tuple(s[p - 1:p - 1 + l]) for p, l in got]
    assert len(words) == len(set(words)) == len(got)
    assert set(words) == want, (s, sorted(words), sorted(want))
    occ = maximal_repeats(s, all_occurrences=True)
    by_id = {}
    for p, l, rid in occ:
        by_id.setdefault(rid, []).append((p, l))
    assert set(by_id) == set(range(1, len(got) + 1))
    seen = set()
    for rid, rows in by_id.items():
        lens = {l for _, l in rows}
        assert len(lens) == 1
        l = lens.pop()
        w = as_tuple(s[rows[0][0] - 1:rows[0][0] - 1 + l])
        assert w in want and w not in seen
        seen.add(w)
        expect = {i + 1 for i in range(len(s) - l + 1)
                  if as_tuple(s[i:i + l]) == w}
        assert {p for p, _ in rows} == expect, (s, w, rows, expect)
    assert seen == want
print("repeats ok")

# -------------------------------------------------------- pair product
assert pair_product({(1, 2)}, {(1, 3), (2, 3), (2, 4)}) == {
    (1, 2, 2, 3), (1, 2, 2, 4)}
assert pair_product({(5, 6)}, {(7, 8)}) == {(5, 6, 7, 8)}
assert pair_product({(1, 2), (1, 3)}, {(1, 9), (1, 5)}) == set()

for _ in range(600):
    na, nb = rng.randint(0, 12), rng.randint(0, 12)
    A = {(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(na)}
    B = {(rng.randint(0, 5), rng.randint(0, 5)) for _ in range(nb)}
    got = pair_product(A, B)
    want = pair_product_oracle(A, B)
    assert got == want, (A, B, got, want)
    assert pair_product.last_ops <= 10 * (len(A) + len(B) + len(want) + 1), \
        (A, B, pair_product.last_ops, len(want))
print("pair product ok")

# ------------------------------------------------------------------ MEM
assert budget(maximal_exact_matches, "abcab", "zbca", 2) == [(2, 2, 3)]
assert maximal_exact_matches("abcd", "abcd", 1) == [(1, 1, 4)]
try:
    maximal_exact_matches("ab", "cd", 0)
    raise AssertionError
except ValueError:
    pass

for _ in range(300):
    t1 = rand_s(1, 30, rng.randint(1, 4))
    t2 = rand_s(1, 30, rng.randint(1, 4))
    ml = rng.randint(1, 3)
    got = maximal_exact_matches(t1, t2, ml)
    assert got == sorted(got) and len(set(got)) == len(got)
    assert set(got) == mem_oracle(t1, t2, ml), (t1, t2, ml)
print("mem ok")

# ------------------------------------------------------------------ MUM
got = budget(maximal_unique_matches, ["abcx", "yabcz"])
assert len(got) == 2 and got[0][0] == got[1][0] == 1
assert [(r[1], r[2], r[3]) for r in got] == [(1, 1, 3), (2, 2, 3)], got
got = maximal_unique_matches(["ab", "ab"])
assert [(r[1], r[2], r[3]) for r in got] == [(1, 1, 2), (2, 1, 2)], got
assert maximal_unique_matches(["ab", "cd"]) == []
try:
    maximal_unique_matches(["ab"])
    raise AssertionError
except ValueError:
    pass


def mums_to_dict(texts, rows):
    out = {}
    for rid, doc, pos, ln in rows:
        w = as_tuple(texts[doc - 1][pos - 1:pos - 1 + ln])
        out.setdefault(rid, {"w": set(), "occ": set()})
        out[rid]["w"].add(w)
        out[rid]["occ"].add((doc, pos))
    res = {}
    for rid, v in out.items():
        assert len(v["w"]) == 1
        res[v["w"].pop()] = v["occ"]
    return res


for _ in range(250):
    d = rng.randint(2, 3)
    texts = [rand_s(1, 25, rng.randint(1, 4)) for _ in range(d)]
    rows = maximal_unique_matches(texts)
    for rid, doc, pos, ln in rows:
        assert 1 <= doc <= d and 1 <= pos <= len(texts[doc - 1]) - ln + 1
    got = mums_to_dict(texts, rows)
    want = {w: set(v) for w, v in mum_oracle(texts).items()}
    assert got == want, (texts, got, want)
print("mum ok")

# ------------------------------------------------------------------ MAW
def maw_words(s, trips):
    out = set()
    for p, l, b in trips:
        w = s[p - 1:p + l - 2]
        assert len(w) == l - 1, (s, p, l)
        out.add(as_tuple(w) + as_tuple(b))
    return out


trips = budget(minimal_absent_words, "abab")
assert maw_words("abab", trips) == maw_oracle("abab")
assert maw_oracle("abab") == {as_tuple("aa"), as_tuple("bb"), as_tuple("baba")}
trips = minimal_absent_words("aaa")
assert maw_words("aaa", trips) == maw_oracle("aaa") == {as_tuple("aaaa")}

for _ in range(300):
    s = rand_s(1, 30, rng.randint(1, 4))
    trips = minimal_absent_words(s)
    assert len(trips) == len(set(trips))
    got = maw_words(s, trips)
    want = maw_oracle(s)
    assert got == want, (s, sorted(got), sorted(want))
    for p, l, b in trips:
        assert occurrences(s, s[p - 1:p + l - 2]) >= 1
print("maw ok")

# ------------------------------------------------------------------- MS
ms = budget(matching_statistics_det, "mississippi", "issi")
assert ms == [4, 3, 2, 1], ms
assert matching_statistics_det("aaa", "bbb") == [0, 0, 0]

for _ in range(400):
    s = rand_s(1, 30, rng.randint(1, 4))
    t = rand_s(1, 30, rng.randint(1, 4))
    got = matching_statistics_det(s, t)
    want = ms_oracle(s, t, 1)
    assert got == want, (s, t, list(got.values), want)
    assert got == build_ms(BidirIndex(Text([s, t])))
for _ in range(60):
    s = rand_s(2, 20, 2)
    t = rand_s(2, 20, 2)
    tau = rng.randint(2, 3)
    assert matching_statistics_det(s, t, tau) == ms_oracle(s, t, tau)
print("ms det ok")

# -------------------------------------------------------------- kernels
assert budget(kmer_complexity, "mississippi", 3) == 7
assert budget(substring_complexity, "abab") == 7
assert kmer_complexity("abc", 5) == 0
assert kmer_complexity("abc", 3) == 1
assert budget(kmer_kernel, "aa", "bb", 1) == 0.0
assert kmer_kernel("abcab", "abcab", 2) == 1.0
assert substring_kernel("abcab", "abcab") == 1.0
assert substring_kernel("abcab", "abcab", probabilities=True) == 1.0

for _ in range(250):
    s = rand_s(1, 40, rng.randint(1, 4))
    k = rng.randint(1, 6)
    assert kmer_complexity(s, k) == kmer_complexity_oracle(s, k), (s, k)
    assert substring_complexity(s) == substring_complexity_oracle(s), s

for _ in range(250):
    t1 = rand_s(1, 30, rng.randint(1, 4))
    t2 = rand_s(1, 30, rng.randint(1, 4))
    k = rng.randint(1, 5)
    g = budget(kmer_kernel, t1, t2, k)
    assert abs(g - kmer_kernel_oracle(t1, t2, k)) < 1e-9, (t1, t2, k)
    assert g == kmer_kernel(t2, t1, k)
    assert -1e-12 <= g <= 1 + 1e-12
    g = budget(substring_kernel, t1, t2)
    assert abs(g - substring_kernel_oracle(t1, t2)) < 1e-9, (t1, t2)
    assert g == substring_kernel(t2, t1)
    assert -1e-12 <= g <= 1 + 1e-12
    gp = substring_kernel(t1, t2, probabilities=True)
    assert abs(gp - substring_kernel_oracle(t1, t2, True)) < 1e-9, (t1, t2)
    if len(t1) >= k:
        assert kmer_kernel(t1, t1, k) == 1.0
    else:
        assert kmer_kernel(t1, t1, k) == 0.0
    assert substring_kernel(t2, t2) == 1.0
print("kernels ok")
print("ALL OK")
