"""Succinct building blocks: bitvectors with rank/select, Elias-Fano
monotone sequences, range-minimum structures, predecessor search, and
gamma-coded integer streams.
"""

import math

import numpy as np

from . import _kernels as K


def _pack_words(bits):
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    pad = (-packed.shape[0]) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros(pad, np.uint8)])
    if packed.shape[0] == 0:
        packed = np.zeros(8, np.uint8)
    return packed.view("<u8").astype(np.uint64)


class Bitvector:
    """Static bit sequence; rank via 512-bit counters, select via samples.

    Positions are 1-based; rank1(i) counts ones among the first i bits.
    """

    def __init__(self, bits=None, _state=None):
        if _state is not None:
            self.__dict__.update(_state)
            return
        bits = np.asarray(bits, dtype=np.uint8)
        self.n = int(bits.shape[0])
        self.words = _pack_words(bits)
        nw = self.words.shape[0]
        bytes_view = self.words.view(np.uint8)
        byte_pop = np.unpackbits(bytes_view, bitorder="little").reshape(-1, 8).sum(1)
        word_pop = byte_pop.reshape(nw, 8).sum(1).astype(np.int64)
        cum = np.concatenate([[0], np.cumsum(word_pop)])
        self.blocks = cum[::8].copy()
        if self.blocks.shape[0] <= nw // 8:
            self.blocks = np.concatenate([self.blocks, [cum[-1]]])
        self.ones = int(cum[-1])
        self.zeros = self.n - self.ones
        # select samples: word index holding the (512k+1)-th one / zero
        self.samples1 = self._make_samples(cum, self.ones)
        zero_cum = np.arange(nw + 1, dtype=np.int64) * 64 - cum
        self.samples0 = self._make_samples(zero_cum, self.zeros)

    @staticmethod
    def _make_samples(cum, total):
        if total <= 0:
            return np.zeros(1, np.int64)
        targets = np.arange(1, total + 1, 512, dtype=np.int64)
        words = np.searchsorted(cum, targets, side="left") - 1
        return np.maximum(words, 0).astype(np.int64)

    def access(self, i):
        w = (i - 1) >> 6
        return int((self.words[w] >> np.uint64((i - 1) & 63)) & np.uint64(1))

    def rank1(self, i):
        if i <= 0:
            return 0
        if i > self.n:
            i = self.n
        return int(K.bv_rank(self.words, self.blocks, i))

    def rank0(self, i):
        if i <= 0:
            return 0
        if i > self.n:
            i = self.n
        return i - self.rank1(i)

    def select1(self, j):
        if j < 1 or j > self.ones:
            raise ValueError("select1 out of range")
        return int(K.bv_select(self.words, self.blocks, self.samples1, j, 0, self.n))

    def select0(self, j):
        if j < 1 or j > self.zeros:
            raise ValueError("select0 out of range")
        return int(K.bv_select(self.words, self.blocks, self.samples0, j, 1, self.n))

    def bits_used(self):
        return 64 * (len(self.words) + len(self.blocks)
                     + len(self.samples1) + len(self.samples0))

    def state(self):
        return {"n": self.n, "words": self.words, "blocks": self.blocks,
                "ones": self.ones, "zeros": self.zeros,
                "samples1": self.samples1, "samples0": self.samples0}

    @classmethod
    def from_state(cls, st):
        st = dict(st)
        st["n"] = int(st["n"])
        st["ones"] = int(st["ones"])
        st["zeros"] = int(st["zeros"])
        st["words"] = np.ascontiguousarray(st["words"], np.uint64)
        st["blocks"] = np.ascontiguousarray(st["blocks"], np.int64)
        st["samples1"] = np.ascontiguousarray(st["samples1"], np.int64)
        st["samples0"] = np.ascontiguousarray(st["samples0"], np.int64)
        return cls(_state=st)


class PrefixSum:
    """Monotone nondecreasing integer sequence in compressed form.

    get(i) returns the i-th value (1-based).  Values are split into high
    bits (unary, in a bitvector) and low bits (fixed width).
    """

    def __init__(self, values=None, _state=None):
        if _state is not None:
            self.n, self.l, self.low_words, self.upper = _state
            return
        values = np.asarray(values, dtype=np.int64)
        n = int(values.shape[0])
        if n == 0:
            values = np.zeros(1, np.int64)
            n = 1
        if np.any(np.diff(values) < 0) or values[0] < 0:
            raise ValueError("sequence must be nondecreasing and nonnegative")
        self.n = n
        U = int(values[-1])
        self.l = max(0, math.ceil(math.log2(max(1.0, U / n)))) if U > 0 else 0
        hi = values >> self.l
        upper_bits = np.zeros(n + int(hi[-1]) + 1, np.uint8)
        upper_bits[np.arange(n) + hi] = 1
        self.upper = Bitvector(upper_bits)
        if self.l:
            mask = (1 << self.l) - 1
            low = values & mask
            bitmat = ((low[:, None] >> np.arange(self.l)) & 1).astype(np.uint8)
            self.low_words = _pack_words(bitmat.reshape(-1))
        else:
            self.low_words = np.zeros(1, np.uint64)

    def get(self, i):
        if i < 1 or i > self.n:
            raise IndexError("prefix-sum index out of range")
        pos = self.upper.select1(i)
        hi = pos - i
        if not self.l:
            return hi
        start = (i - 1) * self.l
        w = start >> 6
        off = start & 63
        chunk = int(self.low_words[w]) >> off
        if off + self.l > 64:
            chunk |= int(self.low_words[w + 1]) << (64 - off)
        return (hi << self.l) | (chunk & ((1 << self.l) - 1))

    def __len__(self):
        return self.n

    def bits_used(self):
        return self.upper.bits_used() + 64 * len(self.low_words)

    def state(self):
        return {"n": self.n, "l": self.l, "low_words": self.low_words,
                "upper": self.upper.state()}

    @classmethod
    def from_state(cls, st):
        return cls(_state=(int(st["n"]), int(st["l"]),
                           np.ascontiguousarray(st["low_words"], np.uint64),
                           Bitvector.from_state(st["upper"])))


class Rmq:
    """Range minimum (or maximum) with leftmost tie-breaking, 1-based API.

    Keeps a reference to the input array.
    """

    def __init__(self, arr, mode="min"):
        arr = np.asarray(arr, dtype=np.int64)
        if mode not in ("min", "max"):
            raise ValueError("mode must be min or max")
        self.mode = mode
        self._st = K.build_rmq(arr if mode == "min" else -arr)

    def query(self, i, j):
        if i < 1 or j < i or j > self._st[0].shape[0]:
            raise IndexError("rmq range out of bounds")
        return int(K.rmq_min(*self._st, i - 1, j - 1)) + 1


class Predecessor:
    """Predecessor queries over a static sorted set, by binary search."""

    def __init__(self, keys):
        keys = np.asarray(sorted(set(int(k) for k in keys)), dtype=np.int64)
        self.keys = keys

    def pred(self, x):
        """Largest key <= x, or None."""
        idx = int(np.searchsorted(self.keys, x, side="right")) - 1
        return int(self.keys[idx]) if idx >= 0 else None

    def rank(self, x):
        """Number of keys <= x."""
        return int(np.searchsorted(self.keys, x, side="right"))

    def __contains__(self, x):
        i = int(np.searchsorted(self.keys, x))
        return i < len(self.keys) and self.keys[i] == x


class GammaStream:
    """Gamma-coded nonnegative integers with random access reads.

    Value x occupies 1 + 2*floor(log2(x+1)) bits.
    """

    def __init__(self, values=None, _state=None):
        if _state is not None:
            self.n, self.total_bits, self.words, self.starts = _state
            return
        bits = []
        starts = []
        for v in values:
            v = int(v)
            if v < 0:
                raise ValueError("gamma stream holds nonnegative values")
            starts.append(len(bits))
            code = v + 1
            b = code.bit_length()
            bits.extend([0] * (b - 1))
            for k in range(b - 1, -1, -1):
                bits.append((code >> k) & 1)
        self.n = len(starts)
        self.total_bits = len(bits)
        self.words = _pack_words(bits if bits else [0])
        smark = np.zeros(max(1, len(bits)), np.uint8)
        for s in starts:
            smark[s] = 1
        self.starts = Bitvector(smark)

    def _bit(self, p):
        return int((self.words[p >> 6] >> np.uint64(p & 63)) & np.uint64(1))

    def read(self, i):
        """Decode the i-th value (1-based)."""
        if i < 1 or i > self.n:
            raise IndexError("gamma stream index out of range")
        p = self.starts.select1(i) - 1
        z = 0
        while self._bit(p + z) == 0:
            z += 1
        code = 0
        for k in range(z + 1):
            code = (code << 1) | self._bit(p + z + k)
        return code - 1

    def __len__(self):
        return self.n

    def bits_used(self):
        return 64 * len(self.words) + self.starts.bits_used()

    def state(self):
        return {"n": self.n, "total_bits": self.total_bits,
                "words": self.words, "starts": self.starts.state()}

    @classmethod
    def from_state(cls, st):
        return cls(_state=(int(st["n"]), int(st["total_bits"]),
                           np.ascontiguousarray(st["words"], np.uint64),
                           Bitvector.from_state(st["starts"])))
