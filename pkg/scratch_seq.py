import sys, random
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from ubwt.succinct import Bitvector, PrefixSum, Rmq, Predecessor, GammaStream
from ubwt.seqindex import SequenceIndex, invert_permutation_shortcuts

rng = random.Random(3)

# Bitvector
for trial in range(150):
    n = rng.randint(1, 1500)
    bits = [rng.randint(0, 1) for _ in range(n)]
    bv = Bitvector(bits)
    pref = [0]
    for b in bits:
        pref.append(pref[-1] + b)
    for q in range(30):
        i = rng.randint(0, n)
        assert bv.rank1(i) == pref[i]
        assert bv.rank0(i) == i - pref[i]
    ones = [i + 1 for i, b in enumerate(bits) if b]
    zeros = [i + 1 for i, b in enumerate(bits) if not b]
    for j in rng.sample(range(1, len(ones) + 1), min(20, len(ones))):
        assert bv.select1(j) == ones[j - 1]
    for j in rng.sample(range(1, len(zeros) + 1), min(20, len(zeros))):
        assert bv.select0(j) == zeros[j - 1]
    for q in range(10):
        i = rng.randint(1, n)
        assert bv.access(i) == bits[i - 1]
print("bitvector ok")

# PrefixSum
for trial in range(150):
    n = rng.randint(1, 400)
    vals = np.cumsum([rng.randint(0, 50) for _ in range(n)])
    ps = PrefixSum(vals)
    for i in range(1, n + 1):
        assert ps.get(i) == vals[i - 1], (vals, i)
    U = int(vals[-1])
    import math
    bound = 1.3 * n * (2 + max(1, math.ceil(math.log2(max(2, U / n))))) + 4096
    assert ps.bits_used() <= bound, (n, U, ps.bits_used(), bound)
print("prefixsum ok")

# Rmq
for trial in range(100):
    n = rng.randint(1, 300)
    arr = [rng.randint(-10, 10) for _ in range(n)]
    rmin = Rmq(arr, "min")
    rmax = Rmq(arr, "max")
    for q in range(20):
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        e1 = min(range(i, j + 1), key=lambda k: (arr[k - 1], k))
        e2 = max(range(i, j + 1), key=lambda k: (arr[k - 1], -k))
        assert rmin.query(i, j) == e1
        assert rmax.query(i, j) == e2
print("rmq ok")

# Predecessor
p = Predecessor([3, 9, 12])
assert p.pred(2) is None and p.pred(3) == 3 and p.pred(11) == 9 and p.pred(100) == 12
assert p.rank(11) == 2 and 9 in p and 10 not in p
print("predecessor ok")

# GammaStream
gs = GammaStream([3])
assert gs.total_bits == 5 and gs.read(1) == 3
for trial in range(80):
    vals = [rng.randint(0, 1000) for _ in range(rng.randint(1, 100))]
    gs = GammaStream(vals)
    for i, v in enumerate(vals, 1):
        assert gs.read(i) == v
    import math
    assert gs.total_bits == sum(1 + 2 * int(math.floor(math.log2(v + 1))) for v in vals)
print("gammastream ok")

# permutation inverter anchor
inv = invert_permutation_shortcuts(np.array([1, 2, 0]), k=1)  # 0-based of [2,3,1]
before = inv.applications
assert inv.inverse(2) == 1
assert inv.applications - before <= 2
for trial in range(200):
    n = rng.randint(1, 60)
    pi = list(range(n))
    rng.shuffle(pi)
    k = rng.randint(1, 6)
    inv = invert_permutation_shortcuts(np.array(pi), k=k)
    for v in range(n):
        b = inv.applications
        u = inv.inverse(v)
        assert pi[u] == v
        assert inv.applications - b <= k + 1, (pi, k, v, inv.applications - b)
print("perm inverter ok")

# SequenceIndex vs brute (anchor: s = b b # a a -> codes #=0,a=1,b=2)
s = [2, 2, 0, 1, 1]
si = SequenceIndex(s, 3)
assert si.access(3) == 0
assert si.partial_rank(5) == (1, 2)
assert si.select(1, 1) == 4
assert si.rank(2, 5) == 2
for trial in range(250):
    n = rng.randint(1, 500)
    A = rng.randint(1, 9)
    seq = [rng.randint(0, A - 1) for _ in range(n)]
    si = SequenceIndex(seq, A, shortcut_k=rng.randint(1, 5))
    for q in range(30):
        i = rng.randint(1, n)
        assert si.access(i) == seq[i - 1], (seq, i)
        c = rng.randint(0, A - 1)
        assert si.rank(c, i) == seq[:i].count(c), (seq, c, i)
    for c in range(A):
        tot = seq.count(c)
        for j in rng.sample(range(1, tot + 1), min(5, tot)):
            exp = [x + 1 for x, v in enumerate(seq) if v == c][j - 1]
            assert si.select(c, j) == exp
    for q in range(15):
        i = rng.randint(1, n)
        c = seq[i - 1]
        prev = 0
        for x in range(i - 1, 0, -1):
            if seq[x - 1] == c:
                prev = x
                break
        assert si.prev_occ(i) == prev
    # partial rank: within-block rank
    sblk = si.s
    for q in range(10):
        i = rng.randint(1, n)
        b = (i - 1) // sblk
        c = seq[i - 1]
        j = sum(1 for x in range(b * sblk, i) if seq[x] == c)
        assert si.partial_rank(i) == (c, j)
    # ops bound: select uses at most k+1 applications per inverse
    si.pi_apps = 0
    c = seq[0]
    si.select(c, 1)
    assert si.pi_apps <= si.k + 1
    # state round trip
    st = si.state()
    si2 = SequenceIndex.from_state(st)
    for q in range(10):
        i = rng.randint(1, n)
        assert si2.access(i) == seq[i - 1]
print("sequence index ok")
print("ALL OK")
