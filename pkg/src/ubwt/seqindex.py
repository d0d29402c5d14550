"""Sequence rank/select/access over a dense integer alphabet.

The sequence is cut into blocks of one alphabet's worth of positions; each
block keeps the stable permutation that sorts it by symbol.  Per-block
symbol counts live in two unary bitvectors with uniform per-segment bases,
and inverse permutation steps use sampled cycle shortcuts, so access and
in-block partial rank are constant time while select costs one shortcut
walk and rank a binary search over one block.
"""

import numpy as np

from .succinct import Bitvector


class PermutationInverter:
    """pi^{-1} from forward applications plus every-k-th cycle back-links."""

    def __init__(self, pi, k=4):
        pi = np.asarray(pi, dtype=np.int64)
        if pi.ndim != 1:
            raise ValueError("pi must be one-dimensional")
        n = pi.shape[0]
        if n and (pi.min() < 0 or pi.max() >= n or len(np.unique(pi)) != n):
            raise ValueError("not a permutation")
        self.pi = pi
        self.k = int(k)
        if self.k < 1:
            raise ValueError("k must be positive")
        self.back = np.full(n, -1, np.int64)
        seen = np.zeros(n, np.uint8)
        for start in range(n):
            if seen[start]:
                continue
            cyc = []
            u = start
            while not seen[u]:
                seen[u] = 1
                cyc.append(u)
                u = int(pi[u])
            ln = len(cyc)
            if ln >= self.k:
                offs = set(range(0, ln, self.k))
                offs.add(ln - self.k)
                for o in offs:
                    self.back[cyc[o]] = cyc[(o - self.k) % ln]
        self.applications = 0

    def apply(self, v):
        self.applications += 1
        return int(self.pi[v])

    def inverse(self, v):
        """u with pi[u] == v (0-based), in at most k+1 applications."""
        u = v
        t = 0
        while True:
            if self.back[u] >= 0:
                u = int(self.back[u])
                for _ in range(self.k - t - 1):
                    u = self.apply(u)
                return u
            nxt = self.apply(u)
            if nxt == v:
                return u
            u = nxt
            t += 1


def invert_permutation_shortcuts(pi, k=4):
    return PermutationInverter(pi, k)


class SequenceIndex:
    """access/rank/select/partial_rank over a fixed sequence, 1-based."""

    def __init__(self, seq=None, alphabet_size=None, shortcut_k=4, _state=None):
        if _state is not None:
            self.__dict__.update(_state)
            return
        seq = np.asarray(seq, dtype=np.int64)
        n = int(seq.shape[0])
        if n == 0:
            raise ValueError("empty sequence")
        A = int(alphabet_size if alphabet_size is not None else seq.max() + 1)
        if seq.min() < 0 or seq.max() >= A:
            raise ValueError("symbol out of range")
        s = max(2, A)
        self.n = n
        self.A = A
        self.s = s
        self.k = int(shortcut_k)
        nb = (n + s - 1) // s
        self.nb = nb

        blk = np.arange(n, dtype=np.int64) // s
        order = np.lexsort((np.arange(n), seq, blk))
        block_sizes = np.full(nb, s, np.int64)
        block_sizes[-1] = n - (nb - 1) * s
        starts = np.concatenate([[0], np.cumsum(block_sizes)])[:-1]
        perm = np.empty(n, np.int64)
        perm[order] = np.arange(n) - np.repeat(starts, block_sizes)
        self.perm = perm.astype(np.int32)

        counts = np.zeros((nb, A), np.int64)
        np.add.at(counts, (blk, seq), 1)
        self.C = np.concatenate([[0], np.cumsum(counts.sum(0))]).astype(np.int64)

        # per-block unary counts: for each block, A runs of count zeros + a
        # one, padded with zeros to s zeros per segment
        seg = A + s
        cb_bits = np.zeros(nb * seg, np.uint8)
        cum = np.cumsum(counts, axis=1)
        one_pos = (np.arange(nb)[:, None] * seg + cum
                   + np.arange(A)[None, :]).reshape(-1)
        cb_bits[one_pos] = 1
        self.cb = Bitvector(cb_bits)

        # per-symbol block frequencies: for each symbol, nb runs of a one +
        # count zeros; zeros offset of symbol c equals C[c]
        fq_bits = np.zeros(A * nb + n, np.uint8)
        before = np.concatenate([np.zeros((1, A), np.int64), np.cumsum(counts, 0)])[:-1]
        one_pos2 = (np.arange(A)[None, :] * nb + self.C[None, :-1]
                    + np.arange(nb)[:, None] + before).reshape(-1)
        fq_bits[one_pos2] = 1
        self.fq = Bitvector(fq_bits)

        back = np.full(n, -1, np.int64)
        for b in range(nb):
            base = int(starts[b])
            ln_b = int(block_sizes[b])
            seen = np.zeros(ln_b, np.uint8)
            p = self.perm[base:base + ln_b]
            for st in range(ln_b):
                if seen[st]:
                    continue
                cyc = []
                u = st
                while not seen[u]:
                    seen[u] = 1
                    cyc.append(u)
                    u = int(p[u])
                ln = len(cyc)
                if ln >= self.k:
                    offs = set(range(0, ln, self.k))
                    offs.add(ln - self.k)
                    for o in offs:
                        back[base + cyc[o]] = cyc[(o - self.k) % ln]
        self.back = back.astype(np.int32)
        self.pi_apps = 0

    # ------------------------------------------------------------ internals

    def _block_of(self, i):
        """(block 0-based, local offset 0-based) of 1-based position i."""
        return (i - 1) // self.s, (i - 1) % self.s

    def _block_len(self, b):
        return self.s if b < self.nb - 1 else self.n - (self.nb - 1) * self.s

    def _seg_start(self, b):
        return b * (self.A + self.s)

    def _cum_before(self, c, b):
        """Symbols with code < c inside block b."""
        if c == 0:
            return 0
        p = self.cb.select1(b * self.A + c)
        return (p - 1 - self._seg_start(b)) - (c - 1)

    def _count_in_block(self, c, b):
        return self._cum_before(c + 1, b) - self._cum_before(c, b)

    def _pi(self, b, t):
        self.pi_apps += 1
        return int(self.perm[b * self.s + t])

    def _pi_inv(self, b, v):
        """Local position mapping to sorted slot v, <= k+1 applications."""
        base = b * self.s
        u = v
        t = 0
        while True:
            if self.back[base + u] >= 0:
                u = int(self.back[base + u])
                for _ in range(self.k - t - 1):
                    u = self._pi(b, u)
                return u
            nxt = self._pi(b, u)
            if nxt == v:
                return u
            u = nxt
            t += 1

    def _cross(self, c, b):
        """Occurrences of c in blocks before b (0-based b)."""
        if b == 0:
            return 0
        p = self.fq.select1(c * self.nb + b + 1)
        return (p - (c * self.nb + b + 1)) - int(self.C[c])

    # ------------------------------------------------------------- queries

    def access(self, i):
        b, t = self._block_of(i)
        sp = int(self.perm[b * self.s + t])
        zp = self.cb.select0(b * self.s + sp + 1)
        return self.cb.rank1(zp) - b * self.A

    def partial_rank(self, i):
        """(symbol, rank of position i among equal symbols in its block)."""
        b, t = self._block_of(i)
        sp = int(self.perm[b * self.s + t])
        zp = self.cb.select0(b * self.s + sp + 1)
        c = self.cb.rank1(zp) - b * self.A
        return c, sp - self._cum_before(c, b) + 1

    def rank(self, c, i):
        """Occurrences of symbol c among positions 1..i."""
        if i <= 0:
            return 0
        if i > self.n:
            i = self.n
        if c < 0 or c >= self.A:
            return 0
        b, t = self._block_of(i)
        cross = self._cross(c, b)
        cnt = self._count_in_block(c, b)
        if cnt == 0:
            return cross
        base_slot = self._cum_before(c, b)
        lo, hi = 0, cnt
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._pi_inv(b, base_slot + mid - 1) <= t:
                lo = mid
            else:
                hi = mid - 1
        return cross + lo

    def select(self, c, j):
        """Position of the j-th occurrence of symbol c (1-based)."""
        if c < 0 or c >= self.A or j < 1 or j > self.C[c + 1] - self.C[c]:
            raise ValueError("select out of range")
        p = self.fq.select0(int(self.C[c]) + j)
        b = self.fq.rank1(p) - c * self.nb - 1
        jj = j - self._cross(c, b)
        local = self._pi_inv(b, self._cum_before(c, b) + jj - 1)
        return b * self.s + local + 1

    def prev_occ(self, i):
        """Previous position with the same symbol as i, or 0."""
        b, t = self._block_of(i)
        sp = int(self.perm[b * self.s + t])
        zp = self.cb.select0(b * self.s + sp + 1)
        c = self.cb.rank1(zp) - b * self.A
        j = self._cross(c, b) + (sp - self._cum_before(c, b) + 1)
        if j <= 1:
            return 0
        return self.select(c, j - 1)

    def __len__(self):
        return self.n

    # --------------------------------------------------------- persistence

    def state(self):
        return {"n": self.n, "A": self.A, "s": self.s, "k": self.k,
                "nb": self.nb, "perm": self.perm, "C": self.C,
                "back": self.back, "cb": self.cb.state(),
                "fq": self.fq.state()}

    @classmethod
    def from_state(cls, st):
        d = {"n": int(st["n"]), "A": int(st["A"]), "s": int(st["s"]),
             "k": int(st["k"]), "nb": int(st["nb"]),
             "perm": np.ascontiguousarray(st["perm"], np.int32),
             "C": np.ascontiguousarray(st["C"], np.int64),
             "back": np.ascontiguousarray(st["back"], np.int32),
             "cb": Bitvector.from_state(st["cb"]),
             "fq": Bitvector.from_state(st["fq"]),
             "pi_apps": 0}
        return cls(_state=d)
