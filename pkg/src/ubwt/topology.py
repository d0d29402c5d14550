"""Suffix-tree topology as balanced parentheses.

The shape of the tree is recovered from any enumerator of internal-node
intervals by a counting sweep: for text position i we write the open
parentheses of internal nodes whose interval starts at i, a leaf pair, then
the close parentheses of nodes whose interval ends at i.  Nested intervals
form a laminar family, so the indistinguishable opens pair up correctly.

Navigation runs on a word-level excess directory (per-word min/max excess
under a small segment tree); node identifiers are preorder ranks with
root = 1, and identifiers map to open-parenthesis positions through the
rank/select machinery of the parentheses bitvector.

Two link layers sit on top of the plain shape: suffixLink (two successor
steps in the BWT and one lca) and weinerLink (per-symbol monotone hashing of
link sources plus a select-based verification probe).  countSmaller queries
aggregate prefix sums of per-node differences over per-symbol contracted
source trees built in one preorder traversal.
"""

import numpy as np

from . import _kernels as K
from .mmphf import DEFAULT_SEED, Mmphf
from .succinct import Bitvector, PrefixSum

NAV_OPS = (
    "child",
    "parent",
    "lca",
    "leftmostLeaf",
    "rightmostLeaf",
    "selectLeaf",
    "depth",
    "height",
    "ancestor",
)


class BpTopology:
    """Balanced-parentheses tree; ids are preorder ranks, root = 1."""

    def __init__(self, bits):
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        if bits.size < 2:
            raise ValueError("parenthesis sequence too short")
        exc = np.cumsum(np.where(bits == 1, 1, -1).astype(np.int64))
        if int(exc[-1]) != 0 or int(exc[:-1].min()) < 1:
            raise ValueError("inconsistent intervals: sequence is not a single balanced tree")
        self.n_bits = int(bits.size)
        self.bv = Bitvector(bits)
        self.base, self.tmin, self.tmax, self.tsize = K.bp_build(self.bv.words, self.n_bits)
        leaf = np.zeros(self.n_bits, dtype=np.uint8)
        leaf[1:] = (bits[:-1] == 1) & (bits[1:] == 0)
        self.leafbv = Bitvector(leaf)
        self.n_nodes = int(self.bv.rank1(self.n_bits))
        self.n_leaves = int(self.leafbv.rank1(self.n_bits))

    # -- position plumbing (positions are 1-based bit indexes)

    def _check(self, v):
        if not 1 <= v <= self.n_nodes:
            raise ValueError("invalid node id: %r" % (v,))

    def open_pos(self, v):
        self._check(v)
        return int(self.bv.select1(int(v)))

    def node_at(self, p):
        return int(self.bv.rank1(int(p)))

    def excess(self, p):
        return int(K.bp_excess(self.bv.words, self.base, np.int64(p)))

    def _fwd(self, p, t):
        return int(
            K.bp_fwd_search(
                self.bv.words, self.n_bits, self.base, self.tmin, self.tmax, self.tsize, np.int64(p), np.int64(t)
            )
        )

    def _bwd(self, p, t):
        return int(
            K.bp_bwd_search(
                self.bv.words, self.n_bits, self.base, self.tmin, self.tmax, self.tsize, np.int64(p), np.int64(t)
            )
        )

    def find_close(self, p):
        return self._fwd(p, self.excess(p) - 1)

    def close_pos(self, v):
        return self.find_close(self.open_pos(v))

    # -- navigation

    def is_leaf(self, v):
        p = self.open_pos(v)
        return self.bv.access(p + 1) == 0

    def parent(self, v):
        p = self.open_pos(v)
        if p == 1:
            return None
        return self.node_at(self._bwd(p, self.excess(p) - 2) + 1)

    def depth(self, v):
        return self.excess(self.open_pos(v))

    def ancestor(self, v, d):
        p = self.open_pos(v)
        dv = self.excess(p)
        if d < 1 or d > dv:
            return None
        if d == dv:
            return v
        return self.node_at(self._bwd(p, d - 1) + 1)

    def lca(self, v, w):
        p1 = self.open_pos(v)
        p2 = self.open_pos(w)
        if p1 > p2:
            p1, p2 = p2, p1
        if p2 <= self.find_close(p1):
            return self.node_at(p1)
        m, _q = K.bp_min_excess_pos(
            self.bv.words, self.n_bits, self.base, self.tmin, self.tmax, self.tsize, np.int64(p1), np.int64(p2)
        )
        return self.node_at(self._bwd(int(_q), int(m) - 1) + 1)

    def height(self, v):
        p = self.open_pos(v)
        c = self.find_close(p)
        top = K.bp_max_excess(
            self.bv.words, self.n_bits, self.base, self.tmin, self.tmax, self.tsize, np.int64(p), np.int64(c)
        )
        return int(top) - self.excess(p)

    def leftmost_leaf(self, v):
        return int(self.leafbv.rank1(self.open_pos(v))) + 1

    def rightmost_leaf(self, v):
        return int(self.leafbv.rank1(self.close_pos(v)))

    def select_leaf(self, j):
        if not 1 <= j <= self.n_leaves:
            raise ValueError("invalid leaf rank: %r" % (j,))
        return self.node_at(int(self.leafbv.select1(int(j))) - 1)

    def child(self, v, i):
        if i < 1:
            raise ValueError("child index must be positive")
        p = self.open_pos(v)
        c = self.find_close(p)
        q = p + 1
        if q == c:
            return None
        for _ in range(i - 1):
            q = self.find_close(q) + 1
            if q >= c:
                return None
        return self.node_at(q)

    def n_children(self, v):
        p = self.open_pos(v)
        c = self.find_close(p)
        q = p + 1
        k = 0
        while q < c:
            k += 1
            q = self.find_close(q) + 1
        return k

    def interval(self, v):
        p = self.open_pos(v)
        lo = int(self.leafbv.rank1(p)) + 1
        hi = int(self.leafbv.rank1(self.find_close(p)))
        return lo, hi

    def preorder_intervals(self):
        """(lo, hi, depth) arrays indexed by node id; slot 0 unused."""
        bits = np.unpackbits(self.bv.words.view(np.uint8), bitorder="little", count=self.n_bits)
        close0 = K.bp_match_all(bits)
        opens0 = np.flatnonzero(bits == 1)
        leaf0 = np.zeros(self.n_bits, dtype=np.int64)
        leaf0[1:] = (bits[:-1] == 1) & (bits[1:] == 0)
        lp = np.cumsum(leaf0)
        exc = np.cumsum(np.where(bits == 1, 1, -1).astype(np.int64))
        lo = np.zeros(self.n_nodes + 1, dtype=np.int64)
        hi = np.zeros(self.n_nodes + 1, dtype=np.int64)
        dep = np.zeros(self.n_nodes + 1, dtype=np.int64)
        lo[1:] = lp[opens0] + 1
        hi[1:] = lp[close0]
        dep[1:] = exc[opens0]
        return lo, hi, dep

    def state(self):
        return {"n_bits": self.n_bits, "words": self.bv.words}

    @classmethod
    def from_state(cls, st):
        words = np.ascontiguousarray(st["words"], dtype=np.uint64)
        bits = np.unpackbits(words.view(np.uint8), bitorder="little", count=int(st["n_bits"]))
        return cls(bits)

    def __eq__(self, other):
        if not isinstance(other, BpTopology):
            return NotImplemented
        return self.n_bits == other.n_bits and bool(np.array_equal(self.bv.words, other.bv.words))


def build_topology(intervals, n):
    """Assemble the parentheses from internal-node intervals over n leaves.

    Every internal node's 1-based leaf interval must appear exactly once;
    leaves are synthesized per position.  Inconsistent input surfaces as a
    balance failure.
    """
    if n < 1:
        raise ValueError("need at least one leaf")
    arr = intervals if isinstance(intervals, np.ndarray) else np.asarray(list(intervals), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    lo = arr[:, 0]
    hi = arr[:, 1]
    if lo.size and (lo.min() < 1 or hi.max() > n or (lo > hi).any()):
        raise ValueError("interval out of range")
    co = np.zeros(n + 1, dtype=np.int64)
    cc = np.zeros(n + 1, dtype=np.int64)
    np.add.at(co, lo, 1)
    np.add.at(cc, hi, 1)
    lens = np.empty(2 * n, dtype=np.int64)
    lens[0::2] = co[1:] + 1
    lens[1::2] = cc[1:] + 1
    vals = np.tile(np.array([1, 0], dtype=np.uint8), n)
    return BpTopology(np.repeat(vals, lens))


def bp_navigate(t, op, *args):
    """Dispatch one navigation operation by name."""
    if op == "child":
        return t.child(args[0], args[1])
    if op == "parent":
        return t.parent(args[0])
    if op == "lca":
        return t.lca(args[0], args[1])
    if op == "leftmostLeaf":
        return t.leftmost_leaf(args[0])
    if op == "rightmostLeaf":
        return t.rightmost_leaf(args[0])
    if op == "selectLeaf":
        return t.select_leaf(args[0])
    if op == "depth":
        return t.depth(args[0])
    if op == "height":
        return t.height(args[0])
    if op == "ancestor":
        return t.ancestor(args[0], args[1])
    raise ValueError("unknown operation: %r" % (op,))


def suffix_link(t, bwt, v):
    """Locus of W from the locus of aW: two successor steps and one lca."""
    if v == 1:
        raise ValueError("root has no suffix link")
    i, j = t.interval(v)
    if i == j and i <= bwt.m:
        # separator leaf: its one-symbol label contracts to the empty string
        return 1
    r1 = bwt.psi(i)
    r2 = r1 if j == i else bwt.psi(j)
    if r1 == r2:
        return t.select_leaf(r1)
    return t.lca(t.select_leaf(r1), t.select_leaf(r2))


class WeinerSupport:
    """Per-symbol Weiner-link directory with a countSmaller layer.

    For each symbol c the sources are every node whose BWT range contains c,
    in preorder; a monotone hash f^c maps source ids to ranks, a bitvector
    marks the sources whose link is explicit, and destinations are recovered
    from the count of explicit sources before the query point.  countSmaller
    stores, per source, the difference between its smaller-symbol count and
    the sum over contracted children, so a subtree prefix sum reconstructs
    the count; subtree ends are realized as a per-rank end array.
    """

    def __init__(self, topo, bwt, rangedistinct=None, seed=DEFAULT_SEED, use_prefix_sums=True, _state=None):
        self.topo = topo
        self.bwt = bwt
        self.rd = bwt.rd if rangedistinct is None else rangedistinct
        self.use_prefix_sums = bool(use_prefix_sums)
        A = bwt.A
        self.sigma = A
        if _state is not None:
            self._restore(_state)
            return
        N = topo.n_nodes
        lo, hi, _dep = topo.preorder_intervals()

        # pass 1: distinct symbols and smaller-symbol counts per node
        ctx = self.rd.new_context()
        off = np.zeros(N + 2, dtype=np.int64)
        syms = []
        css = []
        for u in range(1, N + 1):
            res = sorted(self.rd.query(int(lo[u]), int(hi[u]), ctx))
            off[u + 1] = off[u] + len(res)
            acc = 0
            for c, fr, lr in res:
                syms.append(c)
                css.append(acc)
                acc += lr - fr + 1
        node_sym = np.asarray(syms, dtype=np.int64) if syms else np.zeros(0, dtype=np.int64)
        node_cs = np.asarray(css, dtype=np.int64) if css else np.zeros(0, dtype=np.int64)

        # static allocation: exact source counts per symbol, then fill
        nsrc = np.bincount(node_sym, minlength=A) if node_sym.size else np.zeros(A, dtype=np.int64)
        src = [np.zeros(int(nsrc[c]), dtype=np.int64) for c in range(A)]
        diff = [np.zeros(int(nsrc[c]), dtype=np.int64) for c in range(A)]
        end = [np.zeros(int(nsrc[c]), dtype=np.int64) for c in range(A)]
        nxt = np.zeros(A, dtype=np.int64)

        # pass 2: preorder sweep with per-symbol contraction stacks
        frames = []  # (hi, entries); entries = list of [c, rank0, cs, acc]
        cstack = [[] for _ in range(A)]

        def _close(frame):
            f_hi, entries = frame
            for ent in reversed(entries):
                c, r0, cs, acc = ent
                top = cstack[c].pop()
                if top is not ent:
                    raise RuntimeError("contraction stack skew")
                d = cs - acc
                if d < 0:
                    raise RuntimeError("negative contracted difference")
                diff[c][r0] = d
                end[c][r0] = nxt[c]
                if cstack[c]:
                    cstack[c][-1][3] += cs

        for u in range(1, N + 1):
            while frames and frames[-1][0] < lo[u]:
                _close(frames.pop())
            entries = []
            for t in range(int(off[u]), int(off[u + 1])):
                c = int(node_sym[t])
                r0 = int(nxt[c])
                src[c][r0] = u
                nxt[c] += 1
                ent = [c, r0, int(node_cs[t]), 0]
                entries.append(ent)
                cstack[c].append(ent)
            frames.append((int(hi[u]), entries))
        while frames:
            _close(frames.pop())

        self._f = [Mmphf(src[c], universe=N, seed=seed) if nsrc[c] else None for c in range(A)]
        self._end = end
        self._S = [PrefixSum(np.cumsum(diff[c])) if nsrc[c] else None for c in range(A)]

        # explicit flags: one suffix-link pass over all non-root nodes
        expl = [np.zeros(int(nsrc[c]), dtype=np.uint8) for c in range(A)]
        C = bwt.C
        for u in range(2, N + 1):
            a = int(np.searchsorted(C[1:], lo[u], side="left"))
            v = suffix_link(topo, bwt, u)
            expl[a][self._f[a].eval(v) - 1] = 1
        self._explicit = [Bitvector(expl[c]) if nsrc[c] else None for c in range(A)]

        # id of the root child owning each symbol's leaf block, minus one
        self._cprime = np.full(A, -1, dtype=np.int64)
        for c in range(A):
            cnt = int(C[c + 1] - C[c])
            if cnt == 0:
                continue
            first = topo.select_leaf(int(C[c]) + 1)
            w = first if cnt == 1 else topo.lca(first, topo.select_leaf(int(C[c + 1])))
            self._cprime[c] = w - 1

    # -- queries

    def _gamma(self, c, i, j):
        return int(self.bwt.rank(c, j)) - int(self.bwt.rank(c, i - 1))

    def weiner_link(self, v, c):
        t = self.topo
        t._check(v)
        if not 0 <= c < self.sigma or self._f[c] is None:
            return None
        i, j = t.interval(v)
        k = self._f[c].eval(v)
        dest = int(self._cprime[c]) + int(self._explicit[c].rank1(k - 1)) + 1
        if not 1 <= dest <= t.n_nodes:
            return None
        sp = t.leftmost_leaf(dest)
        m = sp - int(self.bwt.C[c])
        if m < 1 or m > int(self.bwt.C[c + 1] - self.bwt.C[c]):
            return None
        q = self.bwt.select(c, m)
        if i <= q <= j:
            return dest
        return None

    def count_smaller(self, interval, c):
        i, j = int(interval[0]), int(interval[1])
        if not 0 <= c < self.sigma:
            raise ValueError("symbol out of range")
        if not self.use_prefix_sums:
            return self._count_smaller_brute(i, j, c)
        t = self.topo
        v = t.lca(t.select_leaf(i), t.select_leaf(j))
        if t.interval(v) != (i, j):
            raise ValueError("not a node interval")
        if self._f[c] is None or self._gamma(c, i, j) == 0:
            # the node is no source for c; fall back to the direct scan
            return self._count_smaller_brute(i, j, c)
        k = self._f[c].eval(v)
        k2 = int(self._end[c][k - 1])
        s = self._S[c]
        return int(s.get(k2)) - (int(s.get(k - 1)) if k > 1 else 0)

    def _count_smaller_brute(self, i, j, c):
        ctx = self.rd.new_context()
        total = 0
        for sym, fr, lr in self.rd.query(i, j, ctx):
            if sym < c:
                total += lr - fr + 1
        return total

    # -- persistence

    def state(self):
        st = {
            "sigma": self.sigma,
            "use_prefix_sums": self.use_prefix_sums,
            "cprime": self._cprime,
        }
        for c in range(self.sigma):
            if self._f[c] is None:
                continue
            st["f%d" % c] = self._f[c].state()
            st["explicit%d" % c] = self._explicit[c].state()
            st["end%d" % c] = self._end[c]
            st["S%d" % c] = self._S[c].state()
        return st

    def _restore(self, st):
        A = self.sigma
        self.use_prefix_sums = bool(st["use_prefix_sums"])
        self._cprime = np.asarray(st["cprime"], dtype=np.int64)
        self._f = [None] * A
        self._explicit = [None] * A
        self._end = [None] * A
        self._S = [None] * A
        for c in range(A):
            key = "f%d" % c
            if key not in st:
                continue
            self._f[c] = Mmphf.from_state(st[key])
            self._explicit[c] = Bitvector.from_state(st["explicit%d" % c])
            self._end[c] = np.asarray(st["end%d" % c], dtype=np.int64)
            self._S[c] = PrefixSum.from_state(st["S%d" % c])

    @classmethod
    def from_state(cls, st, topo, bwt, rangedistinct=None):
        if int(st["sigma"]) != bwt.A:
            raise ValueError("alphabet mismatch")
        return cls(topo, bwt, rangedistinct=rangedistinct, _state=st)


def build_weiner_support(t, bwt, rangedistinct=None, seed=DEFAULT_SEED, use_prefix_sums=True):
    return WeinerSupport(t, bwt, rangedistinct=rangedistinct, seed=seed, use_prefix_sums=use_prefix_sums)


def weiner_link(ws, v, c):
    return ws.weiner_link(v, c)


def count_smaller(ws, interval, c):
    return ws.count_smaller(interval, c)
