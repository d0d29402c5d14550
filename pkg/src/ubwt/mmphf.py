"""Monotone minimal perfect hashing: members of a sorted integer set map to
their 1-based ranks in constant expected time, in succinct space.

Keys are grouped into fixed-width buckets in sorted order.  Within a
bucket, all keys share the leading bits on which the bucket's first and
last key agree, and that (prefix, length) pair is unique across buckets,
so one ordinary minimal perfect hash recovers the bucket index and a
second one recovers each key's offset inside its bucket.  An optional
quotienting wrapper splits the universe by high bits first.
"""

import math

import numpy as np

from .succinct import PrefixSum

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

DEFAULT_SEED = 0xA1B2C3D4E5F60718


def _mix(a):
    """splitmix64 finaliser over a uint64 array."""
    z = a.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= _M1
    z ^= z >> np.uint64(27)
    z *= _M2
    z ^= z >> np.uint64(31)
    return z


def _mix_one(x):
    return int(_mix(np.array([x], np.uint64))[0])


class Mphf:
    """Hash-and-displace minimal perfect hash over distinct uint64 keys."""

    _LAMBDA = 4.0
    _MAX_D = 1 << 14
    _MAX_ATTEMPTS = 64

    def __init__(self, keys, seed=DEFAULT_SEED):
        keys = np.ascontiguousarray(keys, np.uint64)
        mkeys = int(keys.shape[0])
        self.m = mkeys
        if mkeys == 0:
            self.nb = 1
            self.seed = np.uint64(seed)
            self.D = np.zeros(1, np.uint32)
            return
        self.nb = max(1, int(math.ceil(mkeys / self._LAMBDA)))
        for attempt in range(self._MAX_ATTEMPTS):
            s = np.uint64((seed + 0x9E3779B9 * attempt) & 0xFFFFFFFFFFFFFFFF)
            D = self._try_build(keys, s)
            if D is not None:
                self.seed = s
                self.D = D
                return
        raise RuntimeError("perfect hash construction failed")

    def _bucket_of(self, keys, s):
        return (_mix(keys ^ s) % np.uint64(self.nb)).astype(np.int64)

    def _slot_of(self, keys, s, d):
        salt = np.uint64((0x9E3779B97F4A7C15 * (d + 1)) & 0xFFFFFFFFFFFFFFFF)
        h = _mix((keys + salt) ^ s)
        return (h % np.uint64(self.m)).astype(np.int64)

    def _try_build(self, keys, s):
        b = self._bucket_of(keys, s)
        order = np.argsort(b, kind="stable")
        bs = b[order]
        starts = np.searchsorted(bs, np.arange(self.nb))
        ends = np.searchsorted(bs, np.arange(self.nb), side="right")
        sizes = ends - starts
        D = np.zeros(self.nb, np.uint32)
        occupied = np.zeros(self.m, bool)
        for bk in np.argsort(-sizes, kind="stable"):
            lo, hi = int(starts[bk]), int(ends[bk])
            if lo == hi:
                continue
            kb = keys[order[lo:hi]]
            for d in range(self._MAX_D):
                slots = self._slot_of(kb, s, d)
                if occupied[slots].any():
                    continue
                if len(np.unique(slots)) != slots.shape[0]:
                    continue
                occupied[slots] = True
                D[bk] = d
                break
            else:
                return None
        return D

    def eval(self, x):
        """Slot in [0, m) for a member key; arbitrary for non-members."""
        if self.m == 0:
            return 0
        xa = np.array([x], np.uint64)
        bk = int((_mix(xa ^ self.seed) % np.uint64(self.nb))[0])
        d = int(self.D[bk])
        salt = np.uint64((0x9E3779B97F4A7C15 * (d + 1)) & 0xFFFFFFFFFFFFFFFF)
        h = _mix((xa + salt) ^ self.seed)
        return int(h[0] % np.uint64(self.m))

    def eval_many(self, xs):
        if self.m == 0:
            return np.zeros(len(xs), np.int64)
        xa = np.ascontiguousarray(xs, np.uint64)
        bk = self._bucket_of(xa, self.seed)
        d = self.D[bk].astype(np.int64)
        salts = (_GOLD * (d.astype(np.uint64) + np.uint64(1)))
        h = _mix((xa + salts) ^ self.seed)
        return (h % np.uint64(self.m)).astype(np.int64)

    def bits_used(self):
        return self.D.nbytes * 8 + 64

    def state(self):
        return {"m": self.m, "nb": self.nb, "seed": int(self.seed), "D": self.D}

    @classmethod
    def from_state(cls, st):
        obj = cls.__new__(cls)
        obj.m = int(st["m"])
        obj.nb = int(st["nb"])
        obj.seed = np.uint64(st["seed"])
        obj.D = np.ascontiguousarray(st["D"], np.uint32)
        return obj


def _default_bucket(m):
    if m <= 4:
        return 2
    return 2 ** max(1, math.ceil(math.log2(max(1.0, math.log2(m)))))


class Mmphf:
    """eval(x) = 1-based rank of x among the build keys; junk otherwise."""

    def __init__(self, values, universe, bucket=None, seed=DEFAULT_SEED):
        vals = np.ascontiguousarray(values, np.uint64)
        m = int(vals.shape[0])
        if m and not (np.all(vals[1:] > vals[:-1])):
            raise ValueError("input must be strictly increasing")
        if m and int(vals[-1]) > int(universe):
            raise ValueError("values exceed the stated universe")
        self.m = m
        self.universe = int(universe)
        self.w = max(1, int(universe).bit_length())
        self.b = int(bucket) if bucket else _default_bucket(m)
        self.seed = int(seed)
        if m == 0:
            self.F = Mphf(np.empty(0, np.uint64), seed)
            self.G = Mphf(np.empty(0, np.uint64), seed)
            self.lcp_len = np.zeros(0, np.uint8)
            self.pos = np.zeros(0, np.uint8)
            self.lcp2block = np.zeros(0, np.uint32)
            return
        self._build(vals)

    # bucket i covers sorted ranks [i*b, min((i+1)*b, m))

    def _bucket_key(self, prefix, lcp):
        if self.w <= 57:
            return (int(prefix) << 7) | int(lcp)
        return (_mix_one((int(prefix) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF)
                ^ (int(lcp) * 0x9E3779B9)) & 0xFFFFFFFFFFFFFFFF

    def _build(self, vals):
        m, b, w = self.m, self.b, self.w
        nbk = (m + b - 1) // b
        firsts = vals[np.arange(nbk) * b]
        lasts = vals[np.minimum(np.arange(nbk) * b + b - 1, m - 1)]
        diff = firsts ^ lasts
        lcp = np.empty(nbk, np.int64)
        for i in range(nbk):
            d = int(diff[i])
            lcp[i] = w if d == 0 else w - d.bit_length()
        bkeys = np.array([self._bucket_key(int(firsts[i]) >> (w - int(lcp[i])), int(lcp[i]))
                          for i in range(nbk)], np.uint64)
        if len(np.unique(bkeys)) != nbk:
            raise RuntimeError("bucket key collision; rebuild with another seed")
        self.G = Mphf(bkeys, self.seed)
        self.lcp2block = np.zeros(self.G.m, np.uint32)
        self.lcp2block[self.G.eval_many(bkeys)] = np.arange(nbk, dtype=np.uint32)
        self.F = Mphf(vals, self.seed)
        slots = self.F.eval_many(vals)
        ranks = np.arange(m, dtype=np.int64)
        self.lcp_len = np.zeros(m, np.uint8)
        self.lcp_len[slots] = lcp[ranks // b].astype(np.uint8)
        pdt = np.uint8 if b <= 256 else np.uint16
        self.pos = np.zeros(m, pdt)
        self.pos[slots] = (ranks % b).astype(pdt)

    def eval(self, x):
        if self.m == 0:
            return 1
        f = self.F.eval(np.uint64(x))
        l = int(self.lcp_len[f])
        prefix = int(x) >> (self.w - l)
        g = self.G.eval(np.uint64(self._bucket_key(prefix, l)))
        blk = int(self.lcp2block[g])
        r = blk * self.b + int(self.pos[f]) + 1
        return min(max(r, 1), self.m)

    def bits_used(self):
        return (self.F.bits_used() + self.G.bits_used()
                + 8 * (self.lcp_len.nbytes + self.pos.nbytes
                       + self.lcp2block.nbytes) + 128)

    def state(self):
        return {"m": self.m, "universe": self.universe, "b": self.b,
                "seed": self.seed, "F": self.F.state(), "G": self.G.state(),
                "lcp_len": self.lcp_len, "pos": self.pos,
                "lcp2block": self.lcp2block}

    @classmethod
    def from_state(cls, st):
        obj = cls.__new__(cls)
        obj.m = int(st["m"])
        obj.universe = int(st["universe"])
        obj.w = max(1, obj.universe.bit_length())
        obj.b = int(st["b"])
        obj.seed = int(st["seed"])
        obj.F = Mphf.from_state(st["F"])
        obj.G = Mphf.from_state(st["G"])
        obj.lcp_len = np.ascontiguousarray(st["lcp_len"], np.uint8)
        obj.pos = np.asarray(st["pos"])
        obj.lcp2block = np.ascontiguousarray(st["lcp2block"], np.uint32)
        return obj


class QuotientedMmphf:
    """Universe split by high bits; each block keeps a rank structure over
    its low bits, with a prefix sum giving block base ranks."""

    def __init__(self, values, universe, low_bits=None, seed=DEFAULT_SEED):
        vals = np.ascontiguousarray(values, np.uint64)
        m = int(vals.shape[0])
        if m and not np.all(vals[1:] > vals[:-1]):
            raise ValueError("input must be strictly increasing")
        w = max(1, int(universe).bit_length())
        self.low_bits = int(low_bits) if low_bits else max(8, w // 2)
        self.universe = int(universe)
        self.m = m
        self.seed = int(seed)
        lows = ((vals - np.uint64(1)) & np.uint64((1 << self.low_bits) - 1)) + np.uint64(1)
        highs = (vals - np.uint64(1)) >> np.uint64(self.low_bits)
        self.block_ids = np.unique(highs).astype(np.int64)
        counts = np.searchsorted(highs, self.block_ids, side="right") - \
            np.searchsorted(highs, self.block_ids, side="left")
        self.bases = PrefixSum(np.cumsum(counts))
        self.inner = []
        off = 0
        for cnt in counts:
            cnt = int(cnt)
            self.inner.append(Mmphf(lows[off:off + cnt], 1 << self.low_bits,
                                    seed=seed))
            off += cnt

    def eval(self, x):
        if self.m == 0:
            return 1
        hi = (int(x) - 1) >> self.low_bits
        lo = ((int(x) - 1) & ((1 << self.low_bits) - 1)) + 1
        j = int(np.searchsorted(self.block_ids, hi))
        if j >= len(self.block_ids) or self.block_ids[j] != hi:
            return 1
        base = 0 if j == 0 else int(self.bases.get(j))
        return base + self.inner[j].eval(lo)

    def bits_used(self):
        return (sum(f.bits_used() for f in self.inner)
                + self.bases.bits_used() + self.block_ids.nbytes * 8)


def build_mmphf(values, universe, bucket=None, seed=DEFAULT_SEED):
    return Mmphf(values, universe, bucket=bucket, seed=seed)


def mmphf_eval(f, x):
    return f.eval(x)
