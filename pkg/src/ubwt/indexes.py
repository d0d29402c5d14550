"""Position indexes over the rotation transform and a suffix-tree handle.

Three structures live here.  SuccinctSuffixArray keeps one suffix-array
value out of every r per record and answers locate with an LF walk to
the nearest kept row, so a lookup costs at most r-1 steps.  LayeredCsa
stores no per-row samples at all: the text is padded to a multiple of
B^k with copies of its separator, re-blocked k times with block size B,
and a lookup walks LF inside each layer until the rotation start is
block-aligned (under B steps), descends, and unwinds the offsets from
the deepest layer's explicit suffix array.  CstHandle ties either index
to the parenthesis topology and the permuted LCP array and resolves
child edges through a monotone hash over (node, symbol) pairs.

Rows, text positions, node ids, and child indexes are all 1-based.
"""

import math

import numpy as np

from . import _kernels as K
from .bwt import BwtString, _rotation_bwt_packed, bwt_from_suffix_array
from .enumeration import enumerate_right_maximal
from .mmphf import DEFAULT_SEED, Mmphf
from .succinct import Bitvector
from .textcore import Text
from .topology import build_topology


def default_sample_rate(n, sigma):
    """max(1, floor(log^2 n / log sigma)), capped at n."""
    lg = math.log2(max(2, n))
    r = int(lg * lg // math.log2(max(2, sigma)))
    return max(1, min(max(r, 1), n))


def _first_column_symbol(C, row):
    # symbol c occupies rows C[c]+1 .. C[c+1]
    return int(np.searchsorted(C, row - 1, side="right")) - 1


class SuccinctSuffixArray:
    """Rotation transform plus every r-th suffix-array value.

    Sampling is record-local: within each record the kept positions are
    start, start+r, start+2r, ..., so an LF walk from any row reaches a
    kept row before it can wrap around the record.
    """

    def __init__(self, bwt, r=None):
        self.bwt = bwt
        n = bwt.n
        self.r = int(r) if r else default_sample_rate(n, max(2, len(bwt.chars)))
        if not (1 <= self.r <= n):
            raise ValueError("sampling rate out of range")
        sa = bwt.positions_of_rows(np.arange(1, n + 1))
        offs = bwt.record_start_offsets()
        rec = np.searchsorted(offs, sa, side="right") - 1
        keep = ((sa - offs[rec]) % self.r) == 0
        self.marked = Bitvector(keep.astype(np.uint8))
        self.samples = np.ascontiguousarray(sa[keep])
        isa = K.inverse_perm(np.ascontiguousarray(sa - 1)) + 1
        counts = -(-bwt.record_lens // self.r)
        self.grid_base = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        grid = np.sort(sa[keep])
        self.pos2rank = np.ascontiguousarray(isa[grid - 1])
        self.last_steps = 0
        self.last_lf_steps = 0

    # ------------------------------------------------------------- queries

    def count(self, pattern):
        return self.bwt.count(pattern)

    def sa_value(self, row):
        """Suffix-array value of one row via an LF walk to a kept row."""
        if not (1 <= row <= self.bwt.n):
            raise IndexError("row out of range")
        lf = self.bwt.lf_array()  # 0-based rows
        j = int(row)
        steps = 0
        while not self.marked.access(j):
            j = int(lf[j - 1]) + 1
            steps += 1
        self.last_steps = steps
        return int(self.samples[self.marked.rank1(j) - 1]) + steps

    def substring(self, e, f):
        """Characters at positions e..f, rebuilt from the index alone."""
        if not (1 <= e <= f <= self.bwt.n):
            raise IndexError("substring range out of bounds")
        bwt = self.bwt
        offs = bwt.record_start_offsets()
        self.last_lf_steps = 0
        out = []
        for rec in range(bwt.m):
            s = int(offs[rec])
            last = s + int(bwt.record_lens[rec]) - 1
            if last < e or s > f:
                continue
            out.append(self._extract(rec, s, last, max(e, s), min(f, last)))
        return "".join(out)

    def _extract(self, rec, start, last, e, f):
        # jump in at the nearest kept position at or after f, or at the
        # record's separator row when the grid ends before f
        bwt = self.bwt
        t = -(-(f - start) // self.r)
        q = start + t * self.r
        if q > last:
            q = last
            row = int(bwt.C[bwt.m - 1 - rec]) + 1
        else:
            row = int(self.pos2rank[int(self.grid_base[rec]) + t])
        lf = bwt.lf_array()  # 0-based rows
        codes = []
        p, cur = q, row
        while True:
            if p <= f:
                codes.append(_first_column_symbol(bwt.C, cur))
            if p == e:
                break
            cur = int(lf[cur - 1]) + 1
            p -= 1
            self.last_lf_steps += 1
        codes.reverse()
        chars = bwt.chars
        return "".join("#" if c < bwt.m else chars[c - bwt.m] for c in codes)

    # --------------------------------------------------------- persistence

    def state(self):
        return {"bwt": self.bwt.state(), "r": self.r, "samples": self.samples,
                "marked": self.marked.state(), "pos2rank": self.pos2rank,
                "grid_base": self.grid_base}

    @classmethod
    def from_state(cls, st):
        obj = cls.__new__(cls)
        obj.bwt = BwtString.from_state(st["bwt"])
        obj.r = int(st["r"])
        obj.samples = np.ascontiguousarray(st["samples"], np.int64)
        obj.marked = Bitvector.from_state(st["marked"])
        obj.pos2rank = np.ascontiguousarray(st["pos2rank"], np.int64)
        obj.grid_base = np.ascontiguousarray(st["grid_base"], np.int64)
        obj.last_steps = 0
        obj.last_lf_steps = 0
        return obj


def ssa_count(ssa, pattern):
    return ssa.count(pattern)


def ssa_locate(ssa, row):
    return ssa.sa_value(row)


def ssa_substring(ssa, e, f):
    return ssa.substring(e, f)


def _csa_block_size(n, sigma):
    """Power of two near sqrt(log_sigma n)."""
    target = math.sqrt(math.log2(max(4, n)) / math.log2(max(2, sigma)))
    return max(2, 2 ** int(math.floor(math.log2(max(2.0, target)))))


class LayeredCsa:
    """Suffix-array lookup built from layers of re-blocked rotations.

    Layer i keeps the LF permutation of the text blocked into B^i-symbol
    chunks together with a bitvector marking the rows whose rotation
    starts on a block boundary; those marked rows appear in the same
    relative order as the rows of layer i+1, which is what lets a lookup
    descend.  The deepest layer stores its suffix array outright.  The
    padding symbols sort below every real rotation, so unpadded row k
    maps to padded row k + shift, and row 1 is the separator's rotation.
    """

    def __init__(self, text, eps=0.5, block=None):
        if isinstance(text, str):
            text = Text([text])
        if text.m != 1:
            raise ValueError("layered lookup is defined for single-record input")
        if text.n < 2:
            raise ValueError("text has no real symbols")
        k = round(1.0 / eps)
        if k < 1 or abs(k - 1.0 / eps) > 1e-9:
            raise ValueError("1/eps must be a positive integer")
        self.eps = float(eps)
        self.k = int(k)
        self.n = int(text.n)
        B = int(block) if block else _csa_block_size(self.n, max(2, text.sigma))
        if B < 2 or B & (B - 1):
            raise ValueError("block size must be a power of two >= 2")
        self.B = B
        span = B ** self.k
        self.n_pad = -(-self.n // span) * span
        self.shift = self.n_pad - self.n
        cur = np.zeros(self.n_pad, np.int64)
        cur[: self.n] = text.codes
        self.lf_layers = []
        self.marked = []
        for _ in range(self.k):
            nb = cur.shape[0]
            _, starts = _rotation_bwt_packed(cur)
            row_of = K.inverse_perm(np.ascontiguousarray(starts))
            self.lf_layers.append(np.ascontiguousarray(row_of[(starts - 1) % nb]))
            self.marked.append(Bitvector((starts % B == 0).astype(np.uint8)))
            # lexicographic block codes keep rotation order without
            # overflowing packed integers
            _, inv = np.unique(cur.reshape(nb // B, B), axis=0,
                               return_inverse=True)
            cur = np.ascontiguousarray(inv, np.int64)
        _, base_starts = _rotation_bwt_packed(cur)
        self.sa_base = np.ascontiguousarray(base_starts)
        self.last_steps = 0

    def sa_value(self, row):
        """Suffix-array value of a row of the unpadded rotation matrix."""
        if not (1 <= row <= self.n):
            raise IndexError("row out of range")
        if row == 1:
            return self.n
        j = int(row) + self.shift - 1
        total = 0
        ts = []
        for i in range(self.k):
            bv = self.marked[i]
            lf = self.lf_layers[i]
            t = 0
            while not bv.access(j + 1):
                j = int(lf[j])
                t += 1
            ts.append(t)
            total += t
            j = bv.rank1(j + 1) - 1
        s = int(self.sa_base[j])
        for t in reversed(ts):
            s = self.B * s + t
        self.last_steps = total
        return s + 1

    # --------------------------------------------------------- persistence

    def state(self):
        st = {"eps": self.eps, "k": self.k, "n": self.n, "n_pad": self.n_pad,
              "B": self.B, "sa_base": self.sa_base}
        for i in range(self.k):
            st["lf%d" % i] = self.lf_layers[i]
            st["marked%d" % i] = self.marked[i].state()
        return st

    @classmethod
    def from_state(cls, st):
        obj = cls.__new__(cls)
        obj.eps = float(st["eps"])
        obj.k = int(st["k"])
        obj.n = int(st["n"])
        obj.n_pad = int(st["n_pad"])
        obj.B = int(st["B"])
        obj.shift = obj.n_pad - obj.n
        obj.sa_base = np.ascontiguousarray(st["sa_base"], np.int64)
        obj.lf_layers = [np.ascontiguousarray(st["lf%d" % i], np.int64)
                         for i in range(obj.k)]
        obj.marked = [Bitvector.from_state(st["marked%d" % i])
                      for i in range(obj.k)]
        obj.last_steps = 0
        return obj


def csa_lookup(csa, row):
    return csa.sa_value(row)


class ChildSupport:
    """Monotone hash from (node id, first edge symbol) to child rank.

    Keys are (id << bits) | symbol over every internal node's child
    edges, collected from one enumeration pass; key rank minus the
    node's offset is the child index.  For an absent pair the hash
    lands either outside the node's slot range or on a slot whose
    stored label differs, so membership needs no text probe.
    """

    def __init__(self, topo, bwt, seed=DEFAULT_SEED):
        ids = {}
        lo, hi, _ = topo.preorder_intervals()
        for v in range(1, topo.n_nodes + 1):
            ids[(int(lo[v]), int(hi[v]))] = v
        self.bits = max(1, int(bwt.A).bit_length())
        rows = []

        def visit(rep, scratch):
            v = ids[rep.interval()]
            for a in rep.chars:
                rows.append((v << self.bits) | int(a))

        enumerate_right_maximal(bwt, visit)
        rows.sort()
        keys = np.array(rows, np.int64)
        self.labels = (keys & ((1 << self.bits) - 1)).astype(np.int64)
        counts = np.bincount((keys >> self.bits).astype(np.int64),
                             minlength=topo.n_nodes + 1)
        self.n_children = np.ascontiguousarray(counts, np.int64)
        self.off = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self.f = Mmphf(keys, (topo.n_nodes + 1) << self.bits, seed=seed)

    def child_rank(self, v, a):
        """1-based index of v's child edge starting with a, or 0."""
        cnt = int(self.n_children[v])
        if cnt == 0:
            return 0
        s = self.f.eval((int(v) << self.bits) | int(a))
        t = s - int(self.off[v])
        if 1 <= t <= cnt and int(self.labels[s - 1]) == int(a):
            return t
        return 0

    def blind_child_rank(self, v, a):
        """Hash-selected child index; meaningful only for present pairs."""
        cnt = int(self.n_children[v])
        if cnt == 0:
            return 0
        t = self.f.eval((int(v) << self.bits) | int(a)) - int(self.off[v])
        return min(max(t, 1), cnt)

    def state(self):
        return {"bits": self.bits, "labels": self.labels,
                "n_children": self.n_children, "off": self.off,
                "f": self.f.state()}

    @classmethod
    def from_state(cls, st):
        obj = cls.__new__(cls)
        obj.bits = int(st["bits"])
        obj.labels = np.ascontiguousarray(st["labels"], np.int64)
        obj.n_children = np.ascontiguousarray(st["n_children"], np.int64)
        obj.off = np.ascontiguousarray(st["off"], np.int64)
        obj.f = Mmphf.from_state(st["f"])
        return obj


class CstHandle:
    """Suffix-tree handle over a position index, the parenthesis
    topology, the permuted LCP array, and optional child-edge hashing."""

    def __init__(self, index, topo, plcp, children=None):
        self.index = index
        self.topo = topo
        self.plcp = np.ascontiguousarray(plcp, np.int64)
        self.children = children

    def string_depth(self, v):
        topo = self.topo
        if v == 1:
            return 0
        lo, hi = topo.interval(v)
        if lo == hi:
            return topo.n_leaves - self.index.sa_value(lo) + 1
        # the label length equals the lcp across the first child boundary
        boundary = topo.interval(topo.child(v, 1))[1] + 1
        return int(self.plcp[self.index.sa_value(boundary) - 1])

    def child(self, v, a):
        if self.children is None:
            raise ValueError("child support not built")
        t = self.children.child_rank(v, a)
        return self.topo.child(v, t) if t else None

    def blind_child(self, v, a):
        if self.children is None:
            raise ValueError("child support not built")
        t = self.children.blind_child_rank(v, a)
        return self.topo.child(v, t) if t else None

    def string_ancestor(self, v, d):
        """Locus of the length-d prefix of v's label."""
        sd = self.string_depth(v)
        if d < 1 or d > sd:
            raise ValueError("string depth out of range")
        if d == sd:
            return v
        topo = self.topo
        lo_t, hi_t = 2, topo.depth(v)
        while lo_t < hi_t:
            mid = (lo_t + hi_t) // 2
            if self.string_depth(topo.ancestor(v, mid)) >= d:
                hi_t = mid
            else:
                lo_t = mid + 1
        return topo.ancestor(v, lo_t)

    # --------------------------------------------------------- persistence

    def state(self):
        st = {"kind": 0 if isinstance(self.index, SuccinctSuffixArray) else 1,
              "index": self.index.state(), "topo": self.topo.state(),
              "plcp": self.plcp,
              "has_children": self.children is not None}
        if self.children is not None:
            st["children"] = self.children.state()
        return st

    @classmethod
    def from_state(cls, st):
        idx_cls = SuccinctSuffixArray if int(st["kind"]) == 0 else LayeredCsa
        from .topology import BpTopology
        kids = None
        if bool(st["has_children"]):
            kids = ChildSupport.from_state(st["children"])
        return cls(idx_cls.from_state(st["index"]),
                   BpTopology.from_state(st["topo"]), st["plcp"], kids)


def build_cst(text, index="ssa", sample_rate=None, eps=0.5, block=None,
              with_children=True, plcp=None, seed=DEFAULT_SEED):
    """Assemble the tree handle for a single-record text."""
    if isinstance(text, str):
        text = Text([text])
    if text.m != 1:
        raise ValueError("tree handle is defined for single-record input")
    bwt = bwt_from_suffix_array(text)
    _, ivs = enumerate_right_maximal(bwt, engine="numba", collect=True)
    topo = build_topology(ivs, bwt.n)
    if plcp is None:
        from .bidirectional import BidirIndex, build_plcp
        plcp = build_plcp(BidirIndex(text))
    if index == "ssa":
        idx = SuccinctSuffixArray(bwt, r=sample_rate)
    elif index == "csa":
        idx = LayeredCsa(text, eps=eps, block=block)
    else:
        raise ValueError("unknown index kind %r" % (index,))
    kids = ChildSupport(topo, bwt, seed=seed) if with_children else None
    return CstHandle(idx, topo, plcp, kids)


def cst_string_depth(cst, v):
    return cst.string_depth(v)


def cst_child(cst, v, a):
    return cst.child(v, a)


def cst_blind_child(cst, v, a):
    return cst.blind_child(v, a)


def cst_string_ancestor(cst, v, d):
    return cst.string_ancestor(v, d)
