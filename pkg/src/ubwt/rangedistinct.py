"""Distinct symbols of a sequence range, with the partial ranks of each
symbol's first and last occurrence inside the range.

The primary backend recurses over range-minimum structures built on the
previous- and next-occurrence arrays: a position k in [i..j] is a first
occurrence iff no earlier in-range position holds the same symbol, i.e.
P[k] < i, and the recursion peels minima until the threshold is cleared.
An alternative backend answers the partial-rank part through per-symbol
monotone hashes over gamma-coded occurrence streams; both backends return
identical tuple sets.
"""

import numpy as np

from . import _kernels as K
from .mmphf import Mmphf, DEFAULT_SEED
from .succinct import GammaStream


class QueryContext:
    """Caller-owned scratch for range-distinct queries.

    One context per concurrent reader; the index itself stays immutable.
    """

    def __init__(self, A):
        self.A = int(A)
        self.out1 = np.empty(self.A + 2, np.int64)
        self.out2 = np.empty(self.A + 2, np.int64)
        self.stack = np.empty(4 * self.A + 16, np.int64)
        self.slot = np.full(self.A, -1, np.int64)
        self.last_rmq_calls = 0


class RangeDistinctIndex:
    """Range-distinct reporting over a fixed symbol sequence (1-based)."""

    def __init__(self, seq, A, backend="rmq", seed=DEFAULT_SEED):
        self.seq = np.ascontiguousarray(seq, np.int64)
        self.n = int(self.seq.shape[0])
        self.A = int(A)
        if backend not in ("rmq", "mmphf", "brute"):
            raise ValueError("unknown backend")
        self.backend = backend
        P, Nn, prank = K.build_pnp(self.seq, self.A)
        self.P = P
        self.Nn = Nn
        self.prank = prank
        self.stP = K.build_rmq(P)
        self.stN = K.build_rmq(Nn)
        self._occ_rank = None
        if backend == "mmphf":
            self._build_streams(seed)

    def _build_streams(self, seed):
        self.streams = {}
        self.occ_mmphf = {}
        for c in range(self.A):
            pos = np.flatnonzero(self.seq == c) + 1
            if pos.shape[0] == 0:
                continue
            gaps = np.diff(np.concatenate([[0], pos]))
            self.streams[c] = GammaStream(gaps)
            self.occ_mmphf[c] = Mmphf(pos, self.n, seed=seed)

    def new_context(self):
        return QueryContext(self.A)

    def query(self, i, j, ctx=None):
        """Tuples (symbol, firstRank, lastRank) for S[i..j], 1-based."""
        if i > j:
            raise ValueError("empty range")
        if i < 1 or j > self.n:
            raise IndexError("range out of bounds")
        if ctx is None:
            ctx = self.new_context()
        if self.backend == "brute":
            return self._query_brute(i, j)
        lo, hi = i - 1, j - 1
        c1, calls1 = K.rd_pass(self.P, *self.stP[1:], lo, hi, lo,
                               ctx.out1, ctx.stack)
        c2, calls2 = K.rd_pass(self.Nn, *self.stN[1:], lo, hi, -hi,
                               ctx.out2, ctx.stack)
        ctx.last_rmq_calls = max(int(calls1), int(calls2))
        out = []
        touched = []
        for t in range(c1):
            k = int(ctx.out1[t])
            c = int(self.seq[k])
            ctx.slot[c] = t
            touched.append(c)
            out.append([c, self._partial_rank(c, k), 0])
        for t in range(c2):
            k = int(ctx.out2[t])
            c = int(self.seq[k])
            out[ctx.slot[c]][2] = self._partial_rank(c, k)
        for c in touched:
            ctx.slot[c] = -1
        return [tuple(x) for x in out]

    def _partial_rank(self, c, k):
        if self.backend == "mmphf":
            return self.occ_mmphf[c].eval(k + 1)
        return int(self.prank[k])

    def _query_brute(self, i, j):
        counts = {}
        for c in np.unique(self.seq[:j]):
            counts[int(c)] = 0
        res = {}
        for k in range(j):
            c = int(self.seq[k])
            counts[c] += 1
            if k + 1 >= i:
                if c not in res:
                    res[c] = [counts[c], counts[c]]
                else:
                    res[c][1] = counts[c]
        return [(c, v[0], v[1]) for c, v in res.items()]

    def occurrence_position(self, c, r):
        """1-based position of the r-th occurrence of c (stream decode)."""
        if self.backend != "mmphf":
            pos = np.flatnonzero(self.seq == c) + 1
            return int(pos[r - 1])
        gs = self.streams[c]
        return int(np.cumsum([gs.read(t) for t in range(1, r + 1)])[-1])


def range_distinct(rd, i, j, ctx=None):
    return rd.query(i, j, ctx)


def range_distinct_mmphf(rd, i, j, ctx=None):
    if rd.backend != "mmphf":
        raise ValueError("index was not built with the mmphf backend")
    return rd.query(i, j, ctx)
