"""Burrows-Wheeler transforms over single- and multi-record texts.

The transform of a text is taken over the union of the cyclic rotations of
its records (each record carries its own terminator), sorted as plain
strings.  Because terminators are distinct and minimal, this coincides row
for row with the suffix ordering of the concatenation, which is what the
suffix-array construction below exploits.

Three constructions are provided: quadratic rotation sorting, suffix-array
based, and a block-halving scheme that squares the alphabet to cut the
string in half logarithmically many times and then merges rotation sets.
"""

import numpy as np

from . import _kernels as K
from .textcore import Text
from .seqindex import SequenceIndex


class BwtString:
    """A transform plus the record layout it was built from; rows 1-based."""

    def __init__(self, symbols, A, record_lens, chars, _state=None):
        self.symbols = np.ascontiguousarray(symbols, np.int64)
        self.n = int(self.symbols.shape[0])
        self.A = int(A)
        self.record_lens = np.ascontiguousarray(record_lens, np.int64)
        self.m = int(len(self.record_lens))
        self.chars = list(chars)
        C = np.zeros(self.A + 1, np.int64)
        np.add.at(C, self.symbols + 1, 1)
        self.C = np.cumsum(C)
        self._seq = None
        self._lf = None
        self._psi = None
        self._rd = None

    # ------------------------------------------------------------ plumbing

    @property
    def seq(self):
        if self._seq is None:
            self._seq = SequenceIndex(self.symbols, self.A)
        return self._seq

    @property
    def rd(self):
        if self._rd is None:
            from .rangedistinct import RangeDistinctIndex
            self._rd = RangeDistinctIndex(self.symbols, self.A)
        return self._rd

    def lf_array(self):
        """LF as a 0-based permutation array (materialised)."""
        if self._lf is None:
            self._lf = K.lf_from_bwt(self.symbols, self.C)
        return self._lf

    def psi_array(self):
        if self._psi is None:
            self._psi = K.inverse_perm(self.lf_array())
        return self._psi

    def record_start_offsets(self):
        """Global 1-based start position of each record."""
        return np.concatenate([[0], np.cumsum(self.record_lens)])[:-1] + 1

    # ------------------------------------------------------------- queries

    def access(self, i):
        return int(self.symbols[i - 1])

    def rank(self, c, i):
        return self.seq.rank(c, i)

    def select(self, c, j):
        return self.seq.select(c, j)

    def lf(self, i):
        c = self.access(i)
        return int(self.C[c]) + self.rank(c, i)

    def psi(self, i):
        a = int(np.searchsorted(self.C[1:], i, side="left"))
        return self.select(a, i - int(self.C[a]))

    def backward_step(self, i, j, c):
        """Interval of c.W given the interval (i, j) of W; empty -> None."""
        if c < 0 or c >= self.A:
            return None
        i2 = int(self.C[c]) + self.rank(c, i - 1) + 1
        j2 = int(self.C[c]) + self.rank(c, j)
        if i2 > j2:
            return None
        return i2, j2

    def full_interval(self):
        return 1, self.n

    def encode_chars(self, pattern):
        """Codes of a character string, or None if some char is absent."""
        out = []
        for ch in pattern:
            k = self._char_code(ch)
            if k is None:
                return None
            out.append(k)
        return out

    def _char_code(self, ch):
        import bisect
        j = bisect.bisect_left(self.chars, ch)
        if j < len(self.chars) and self.chars[j] == ch:
            return self.m + j
        return None

    def pattern_interval(self, codes):
        """Interval of a code sequence via backward steps, or None."""
        i, j = self.full_interval()
        for c in reversed(list(codes)):
            step = self.backward_step(i, j, c)
            if step is None:
                return None
            i, j = step
        return i, j

    def count(self, pattern):
        codes = self.encode_chars(pattern) if isinstance(pattern, str) else list(pattern)
        if codes is None:
            return 0
        iv = self.pattern_interval(codes)
        return 0 if iv is None else iv[1] - iv[0] + 1

    def invert(self):
        """Reconstruct the single-record text; errors on multi-record input
        or if LF does not form one cycle."""
        if self.m != 1:
            raise ValueError("inversion is defined for single-record input")
        lf = self.lf_array()
        row1 = int(np.argmax(self.symbols == 0))
        if self.symbols[row1] != 0:
            raise ValueError("no terminator symbol present")
        out = np.empty(self.n, np.int64)
        visited = K.fill_text_from_lf(self.symbols, lf, row1, out)
        if visited != self.n:
            raise ValueError("LF is not a single cycle")
        chars = self.chars
        body = "".join(chars[int(c) - self.m] for c in out[:-1])
        return Text([body])

    def positions_of_rows(self, rows):
        """Map distinct 1-based rows to 1-based text positions via one full
        inversion walk; returns an int64 array aligned with rows."""
        want = np.zeros(self.n, np.uint8)
        rows = np.asarray(rows, np.int64)
        want[rows - 1] = 1
        out_pos = np.full(self.n, -1, np.int64)
        psi = self.psi_array()
        offs = self.record_start_offsets()
        for r in range(self.m):
            sep = self.m - 1 - r
            sep_row = int(self.C[sep])
            ln = int(self.record_lens[r])
            if want[sep_row]:
                out_pos[sep_row] = int(offs[r]) + ln - 1
            start_row = int(psi[sep_row])
            K.inversion_positions(psi, start_row, int(offs[r]), ln - 1, want, out_pos)
        return out_pos[rows - 1]

    def runs_vector(self):
        """runs[i] = 1 iff row i starts a new symbol run (row 1 included)."""
        r = np.empty(self.n, np.uint8)
        r[0] = 1
        r[1:] = (self.symbols[1:] != self.symbols[:-1]).astype(np.uint8)
        return r

    # --------------------------------------------------------- persistence

    def state(self):
        return {"symbols": self.symbols, "A": self.A,
                "record_lens": self.record_lens,
                "chars": np.array([ord(c) for c in self.chars], np.int64)}

    @classmethod
    def from_state(cls, st):
        chars = [chr(int(x)) for x in np.asarray(st["chars"]).tolist()]
        return cls(np.ascontiguousarray(st["symbols"], np.int64), int(st["A"]),
                   np.ascontiguousarray(st["record_lens"], np.int64), chars)

    def __eq__(self, other):
        return (isinstance(other, BwtString)
                and np.array_equal(self.symbols, other.symbols)
                and np.array_equal(self.record_lens, other.record_lens)
                and self.A == other.A)


# -------------------------------------------------------------- construction


def bwt_naive(text):
    """Sort the union of record rotations outright."""
    rots = []
    for r in range(1, text.m + 1):
        s, e = text.record_bounds(r)
        rec = tuple(int(c) for c in text.codes[s - 1:e])
        ln = len(rec)
        for q in range(ln):
            rots.append(rec[q:] + rec[:q])
    rots.sort()
    for i in range(1, len(rots)):
        if rots[i] == rots[i - 1]:
            raise ValueError("duplicate rotation")
    symbols = np.array([rot[-1] for rot in rots], np.int64)
    return BwtString(symbols, text.alphabet_size, text.record_lens, text.chars)


def bwt_from_suffix_array(text):
    """Suffix-sort the concatenation; record starts wrap to their own
    terminator, all other rows take the preceding character."""
    codes = text.codes
    n = text.n
    sa = K.sais(codes, text.alphabet_size)
    start_mask = np.zeros(n, bool)
    start_sep = np.zeros(n, np.int64)
    offs = text.record_starts
    for r in range(text.m):
        p = int(offs[r]) - 1
        start_mask[p] = True
        start_sep[p] = text.separator_code(r + 1)
    prev = codes[sa - 1]
    symbols = np.where(start_mask[sa], start_sep[sa], prev)
    return BwtString(symbols, text.alphabet_size, text.record_lens, text.chars)


def _pack_blocks(X, b, base):
    nb = X.shape[0] // b
    mat = X.reshape(nb, b).astype(np.int64)
    powers = base ** np.arange(b - 1, -1, -1, dtype=np.int64)
    return mat @ powers


def _rotation_bwt_packed(packed):
    """Rotation-sorted transform of a packed block string; ValueError on
    duplicate rotations."""
    nb = packed.shape[0]
    uniq, dense = np.unique(packed, return_inverse=True)
    d = np.empty(2 * nb + 1, np.int64)
    d[:nb] = dense + 1
    d[nb:2 * nb] = dense + 1
    d[2 * nb] = 0
    sa = K.sais(d, len(uniq) + 2)
    starts = sa[sa < nb]
    if starts.shape[0] != nb:
        raise ValueError("duplicate rotation")
    dup = K.adjacent_rotation_dup(d, starts.astype(np.int64), nb)
    if dup >= 0:
        raise ValueError("duplicate rotation")
    return packed[(starts - 1) % nb], starts


def left_shift_bwt(bwt_packed, base, b):
    """Transform of the half-block-shifted string from the transform of the
    block string, all in packed symbols of b characters (b even)."""
    h = b // 2
    ph = base ** h if isinstance(base, int) else int(base) ** h
    L = np.ascontiguousarray(bwt_packed, np.int64)
    nb = L.shape[0]
    order = np.argsort(L, kind="stable")
    LF = np.empty(nb, np.int64)
    LF[order] = np.arange(nb)
    right = L % ph
    left = L // ph
    newsym = right[LF] * ph + left
    shift_order = np.argsort(right, kind="stable")
    return newsym[shift_order]


def _rd_structures(seq_arr, A):
    P, Nn, prank = K.build_pnp(seq_arr, A)
    stP = K.build_rmq(P)
    stN = K.build_rmq(Nn)
    return (seq_arr, P, stP, Nn, stN, prank)


def _merge_flags(sym1, sym2):
    """Side flags for merging two transforms over a shared coding."""
    both = np.concatenate([sym1, sym2])
    uniq, dense = np.unique(both, return_inverse=True)
    Ag = len(uniq)
    d1 = np.ascontiguousarray(dense[:len(sym1)], np.int64)
    d2 = np.ascontiguousarray(dense[len(sym1):], np.int64)
    C1 = np.zeros(Ag + 1, np.int64)
    np.add.at(C1, d1 + 1, 1)
    C1 = np.cumsum(C1)
    C2 = np.zeros(Ag + 1, np.int64)
    np.add.at(C2, d2 + 1, 1)
    C2 = np.cumsum(C2)
    s1 = _rd_structures(d1, Ag)
    s2 = _rd_structures(d2, Ag)
    flags = np.zeros(len(sym1) + len(sym2), np.uint8)
    err, nodes, tuples, mstack = K.merge_two(
        s1[0], C1, s1[1], *s1[2][1:], s1[3], *s1[4][1:], s1[5],
        s2[0], C2, s2[1], *s2[2][1:], s2[3], *s2[4][1:], s2[5],
        Ag, flags)
    if err == 2:
        raise ValueError("inputs share a rotation; merged order undefined")
    if err != 0:
        raise RuntimeError("merge failed with code %d" % err)
    return flags


def merge_bwts(bwt1, bwt2, return_flags=False):
    """Merge two transforms built over the same code space into the
    transform of the union of their rotation sets."""
    if bwt1.A != bwt2.A:
        raise ValueError("transforms use different alphabets")
    flags = _merge_flags(bwt1.symbols, bwt2.symbols)
    out = np.empty(bwt1.n + bwt2.n, np.int64)
    out[flags == 1] = bwt1.symbols
    out[flags == 2] = bwt2.symbols
    merged = BwtString(out, bwt1.A,
                       np.concatenate([bwt1.record_lens, bwt2.record_lens]),
                       bwt1.chars)
    if return_flags:
        return merged, flags
    return merged


def _block_size(n_padded_floor, A):
    sigma = max(2, A)
    import math
    target = math.log2(max(4.0, float(n_padded_floor))) / (2 * math.log2(sigma))
    B = 2 ** max(1, math.ceil(math.log2(max(2.0, target))))
    B = max(2, B)
    bits = max(1, math.ceil(math.log2(A)))
    while B > 2 and B * bits > 62:
        B //= 2
    return B


def _linear_single(codes, A, trace=None):
    """Transform of one record (terminator included) by block halving."""
    n = codes.shape[0]
    B = _block_size(n, A)
    p = B - (n % B) if n % B else B
    X = np.concatenate([codes, np.full(p, codes[-1], np.int64)])
    nprime = n + p
    b = B
    packed = _pack_blocks(X, b, A)
    bwt_b, _ = _rotation_bwt_packed(packed)
    if trace is not None:
        trace.append({"block": b, "packed": packed.copy(), "bwt": bwt_b.copy()})
    while b > 1:
        h = b // 2
        shifted = left_shift_bwt(bwt_b, A, b)
        if trace is not None:
            sh_packed = _pack_blocks(np.roll(X, -h), b, A)
            trace.append({"block": b, "packed": sh_packed,
                          "bwt": shifted.copy(), "shifted": True})
        flags = _merge_flags(bwt_b, shifted)
        ph = A ** h
        r1 = bwt_b % ph
        r2 = shifted % ph
        out = np.empty(len(r1) + len(r2), np.int64)
        out[flags == 1] = r1
        out[flags == 2] = r2
        bwt_b = out
        b = h
        if trace is not None:
            trace.append({"block": b, "packed": _pack_blocks(X, b, A),
                          "bwt": bwt_b.copy()})
    keep = np.ones(nprime, bool)
    keep[1:p + 1] = False
    return bwt_b[keep]


def bwt_linear(text, trace=None):
    """Block-halving construction; multi-record texts fold per-record
    transforms through merges."""
    parts = []
    for r in range(1, text.m + 1):
        s, e = text.record_bounds(r)
        rec_codes = np.ascontiguousarray(text.codes[s - 1:e], np.int64)
        rec_trace = trace if (trace is not None and text.m == 1) else None
        parts.append(_linear_single(rec_codes, text.alphabet_size, rec_trace))
    acc = BwtString(parts[0], text.alphabet_size,
                    text.record_lens[:1], text.chars)
    for r in range(1, text.m):
        nxt = BwtString(parts[r], text.alphabet_size,
                        text.record_lens[r:r + 1], text.chars)
        acc = merge_bwts(acc, nxt)
    return acc


def reverse_bwt(bwt):
    """Transform of the record-wise reversed text, by a single traversal.

    Row blocks of the output correspond to right extensions of the
    traversed substrings; a block is filled as soon as its substring has a
    unique right extension.
    """
    from .enumeration import ExtensionScratch, root_repr, extend_left

    out = np.full(bwt.n, -1, np.int64)
    scratch = ExtensionScratch(bwt.A)
    stack = [(root_repr(bwt), 1)]
    while stack:
        rep, rev_start = stack.pop()
        extend_left(rep, bwt, scratch)
        acc = rev_start
        for a in scratch.left_extensions():
            g = scratch.gamma[a]
            first = scratch.F[a][0]
            last = scratch.L[a][g - 1]
            width = last - first + 1
            if g == 1:
                out[acc - 1:acc - 1 + width] = scratch.A[a][0]
            else:
                stack.append((scratch.child_repr(a), acc))
            acc += width
        scratch.reset()
    return BwtString(out, bwt.A, bwt.record_lens, bwt.chars)
