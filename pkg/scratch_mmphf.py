import random
import numpy as np
from ubwt.mmphf import Mphf, Mmphf, QuotientedMmphf, build_mmphf, mmphf_eval

rng = random.Random(5)

# plain MPHF: bijection onto [0, m)
for trial in range(80):
    m = rng.randint(1, 400)
    keys = np.array(rng.sample(range(10**9), m), np.uint64)
    f = Mphf(keys, seed=trial)
    slots = sorted(f.eval(int(k)) for k in keys)
    assert slots == list(range(m)), (m, slots[:5])
    assert np.array_equal(np.sort(f.eval_many(keys)), np.arange(m))
    f2 = Mphf.from_state(f.state())
    assert all(f2.eval(int(k)) == f.eval(int(k)) for k in keys[:20])
print("mphf ok")

# anchors
f = build_mmphf([3, 9, 12], 16)
assert mmphf_eval(f, 9) == 2 and f.eval(3) == 1 and f.eval(12) == 3
assert 1 <= f.eval(5) <= 3
g = build_mmphf([7], 16)
assert g.eval(7) == 1
e = build_mmphf([], 16)
assert e.eval(3) == 1
print("anchors ok")

# random sets, several universes and bucket widths
for trial in range(120):
    U = rng.choice([64, 1024, 10**6, 2**40, 2**60])
    m = rng.randint(1, 500)
    vals = sorted(rng.sample(range(1, U + 1), min(m, U)))
    b = rng.choice([None, 1, 2, 4, 16])
    f = Mmphf(vals, U, bucket=b, seed=trial)
    for r, x in enumerate(vals, start=1):
        assert f.eval(x) == r, (U, b, x, r, f.eval(x))
    for _ in range(10):
        q = rng.randint(1, U)
        assert 1 <= f.eval(q) <= len(vals)
    f2 = Mmphf.from_state(f.state())
    assert all(f2.eval(x) == r for r, x in enumerate(vals, start=1))
print("mmphf ok")

# monotone errors
try:
    Mmphf([3, 3, 5], 16)
    assert False
except ValueError:
    pass
try:
    Mmphf([3, 20], 16)
    assert False
except ValueError:
    pass
print("errors ok")

# quotienting layer
for trial in range(40):
    U = rng.choice([1 << 16, 1 << 30, 1 << 45])
    m = rng.randint(1, 300)
    vals = sorted(rng.sample(range(1, U + 1), m))
    q = QuotientedMmphf(vals, U, seed=trial)
    for r, x in enumerate(vals, start=1):
        assert q.eval(x) == r, (U, x, r, q.eval(x))
print("quotient ok")

# determinism with fixed seed
v = sorted(rng.sample(range(1, 10**7), 1000))
a = Mmphf(v, 10**7, seed=42)
b = Mmphf(v, 10**7, seed=42)
assert np.array_equal(a.F.D, b.F.D) and np.array_equal(a.pos, b.pos)
assert int(a.F.seed) == int(b.F.seed)

# space at scale
m = 1 << 14
U = 1 << 20
vals = np.sort(np.array(rng.sample(range(1, U + 1), m), np.int64))
f = Mmphf(vals, U, seed=7)
bpk = f.bits_used() / m
budget = 8 * max(2.0, np.log2(np.log2(U)))
print(f"bits/key = {bpk:.2f} budget = {budget:.2f}")
assert bpk <= budget
for x in vals[::97]:
    assert f.eval(int(x)) == int(np.searchsorted(vals, x)) + 1
print("space ok")

print("ALL OK")
