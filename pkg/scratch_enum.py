import sys, random, math
import numpy as np
sys.path.insert(0, "/root/pkg/src")
sys.path.insert(0, "/root/pkg/tests")
from ubwt import _kernels as K
import oracles as O

rng = random.Random(11)


def prep(codes, A):
    """codes: python list over dense alphabet [0..A). Returns kernel args."""
    bwt = np.array(codes, np.int64)
    n = len(codes)
    C = np.zeros(A + 1, np.int64)
    for c in codes:
        C[c + 1] += 1
    C = np.cumsum(C)
    P, Nn, prank = K.build_pnp(bwt, A)
    stP = K.build_rmq(P)
    stN = K.build_rmq(Nn)
    return bwt, C, P, stP, Nn, stN, prank


def run_single(text_codes, A, collect=1):
    tb = tuple(text_codes)
    bw = O.bwt_oracle(tb)
    bwt, C, P, stP, Nn, stN, prank = prep(list(bw), A)
    return K.enum_single(bwt, C, A,
                         P, *stP[1:],
                         Nn, *stN[1:],
                         prank, collect), bw


# single-text enumeration vs suffix tree oracle
for trial in range(400):
    n = rng.randint(1, 60)
    sigma = rng.randint(1, 5)
    t = [rng.randint(1, sigma) for _ in range(n)] + [0]
    A = sigma + 1
    (nodes, tuples, mstack, err, lo, hi, dep), bw = run_single(t, A)
    assert err == 0
    st = O.SuffixTreeOracle(tuple(t))
    exp = sorted(st.internal_intervals())  # (lo, hi, depth) 1-based
    got = sorted((int(l) + 1, int(h) + 1, int(d)) for l, h, d in zip(lo, hi, dep))
    assert got == exp, (t, got, exp)
    nn = len(t)
    assert tuples <= 5 * nn, (t, tuples)
    sig_full = A
    bound = (sig_full + 1) * (int(math.log2(nn)) + 1)
    assert mstack <= bound, (t, mstack, bound)
print("enum_single ok")

# merge kernel vs union bwt oracle
def run_merge(t1, t2, A):
    b1 = O.bwt_oracle(tuple(t1))
    b2 = O.bwt_oracle(tuple(t2))
    a1 = prep(list(b1), A)
    a2 = prep(list(b2), A)
    flags = np.zeros(len(t1) + len(t2), np.uint8)
    err, nodes, tuples, mstack = K.merge_two(
        a1[0], a1[1], a1[2], *a1[3][1:], a1[4], *a1[5][1:], a1[6],
        a2[0], a2[1], a2[2], *a2[3][1:], a2[4], *a2[5][1:], a2[6],
        A, flags)
    return err, flags, b1, b2, nodes, tuples


for trial in range(400):
    n1 = rng.randint(1, 40)
    n2 = rng.randint(1, 40)
    sigma = rng.randint(1, 5)
    # two records: separators 1 (#1) and 0 (#2); real chars 2..
    t1 = [rng.randint(2, sigma + 1) for _ in range(n1)] + [1]
    t2 = [rng.randint(2, sigma + 1) for _ in range(n2)] + [0]
    A = sigma + 2
    err, flags, b1, b2, nodes, tuples = run_merge(t1, t2, A)
    assert err == 0, (t1, t2)
    assert set(int(f) for f in flags) <= {1, 2}
    assert (flags == 1).sum() == len(b1) and (flags == 2).sum() == len(b2)
    merged = []
    i1 = i2 = 0
    for f in flags:
        if f == 1:
            merged.append(b1[i1]); i1 += 1
        else:
            merged.append(b2[i2]); i2 += 1
    exp = O.union_bwt_oracle([tuple(t1), tuple(t2)])
    assert tuple(merged) == tuple(exp), (t1, t2, merged, exp)
print("merge text mode ok")

# merge in rotation mode (no separators, phase-disjoint rotation sets)
def rot_bwt(codes):
    sa = O.rotation_sa_oracle(tuple(codes))
    n = len(codes)
    return tuple(codes[(p - 2) % n] for p in sa)

for trial in range(300):
    # build block strings of a doubled-alphabet trick: pick t, form X_B pairs
    n = rng.randint(2, 24) * 2
    sigma = rng.randint(2, 4)
    t = [rng.randint(0, sigma - 1) for _ in range(n)]
    # side 1: rotations at even phases -> pack pairs; side 2: odd phases
    even = [t[i] * sigma + t[(i + 1) % n] for i in range(0, n, 2)]
    odd = [t[i] * sigma + t[(i + 1) % n] for i in range(1, n, 2)]
    try:
        b1 = rot_bwt(even)
        b2 = rot_bwt(odd)
    except ValueError:
        continue
    A = sigma * sigma
    a1 = prep(list(b1), A)
    a2 = prep(list(b2), A)
    flags = np.zeros(len(b1) + len(b2), np.uint8)
    err, nodes, tuples, mstack = K.merge_two(
        a1[0], a1[1], a1[2], *a1[3][1:], a1[4], *a1[5][1:], a1[6],
        a2[0], a2[1], a2[2], *a2[3][1:], a2[4], *a2[5][1:], a2[6],
        A, flags)
    # expected: if even/odd rotation sets overlap, err; else interleave equals
    # sorted union of rotations
    rots = {}
    allr = []
    dup = False
    for side, codes in ((1, even), (2, odd)):
        m = len(codes)
        for s in range(m):
            r = tuple(codes[(s + k) % m] for k in range(m))
            allr.append((r, side))
    seen = set()
    for r, side in allr:
        if r in seen:
            dup = True
        seen.add(r)
    if dup:
        assert err == 2, (t,)
        continue
    assert err == 0, (t,)
    allr.sort()
    expflags = [side for r, side in allr]
    assert expflags == [int(f) for f in flags], (t, expflags, list(flags))
print("merge rotation mode ok")
print("ALL ENUM/MERGE SMOKE OK")
