"""Synchronized forward/reverse BWT index with two-sided extension.

A tracked string W is represented by the pair of intervals of W in the
forward BWT and of the reversed string in the BWT of the reversed text.
Both intervals always have the same width.  Appending a symbol on either
side is a backward step on one BWT plus a smaller-symbol offset on the
other; removing a symbol follows a suffix link on one topology and climbs
at most one parent on the other.  Removal is only defined when the
remainder stays maximal on the removal side; violating calls return the
UNSUPPORTED marker instead of a wrong interval pair.

On top of the walk the module derives per-position arrays: permuted lcp
values, distinguishing statistics against a frequency threshold, and
matching statistics of one record against another.  All intervals are
1-based and inclusive.
"""

import numpy as np

from . import _kernels as K
from .bwt import BwtString, bwt_from_suffix_array
from .enumeration import enumerate_right_maximal
from .mmphf import DEFAULT_SEED, Mmphf
from .succinct import Bitvector
from .textcore import Text
from .topology import WeinerSupport, build_topology, suffix_link


class _UnsupportedType:
    """Marker for contraction calls whose precondition does not hold."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "UNSUPPORTED"


UNSUPPORTED = _UnsupportedType()


class SymbolOrder:
    """Sorted rank of a symbol among the distinct symbols of a node's range.

    One monotone hash over (node, symbol) keys; the per-node key block is
    located by an offset array, so rank(v, c) is the position of c in the
    sorted distinct-symbol list of v's BWT range.
    """

    def __init__(self, topo, bwt, seed=DEFAULT_SEED, _state=None):
        self.bits = max(1, int(bwt.A).bit_length())
        if _state is not None:
            self.labels = np.ascontiguousarray(_state["labels"], np.int64)
            self.off = np.ascontiguousarray(_state["off"], np.int64)
            self.f = Mmphf.from_state(_state["f"])
            return
        N = topo.n_nodes
        lo, hi, _d = topo.preorder_intervals()
        ctx = bwt.rd.new_context()
        off = np.zeros(N + 2, np.int64)
        labels = []
        for u in range(1, N + 1):
            syms = sorted(c for c, _f, _l in bwt.rd.query(int(lo[u]), int(hi[u]), ctx))
            off[u + 1] = off[u] + len(syms)
            labels.extend(syms)
        self.labels = np.asarray(labels, np.int64)
        self.off = off
        keys = (np.arange(1, N + 1, dtype=np.int64).repeat(np.diff(off[1:]))
                << self.bits) | self.labels
        self.f = Mmphf(keys + 1, universe=int((N + 1) << self.bits) + 1, seed=seed)

    def rank(self, v, c):
        """1-based sorted rank of c within node v's distinct symbols."""
        s = self.f.eval((int(v) << self.bits | int(c)) + 1)
        t = s - int(self.off[v])
        cnt = int(self.off[v + 1] - self.off[v])
        if not (1 <= t <= cnt and int(self.labels[s - 1]) == int(c)):
            raise ValueError("symbol absent from the node range")
        return t

    def state(self):
        return {"labels": self.labels, "off": self.off, "f": self.f.state()}


class _Side:
    """One scan direction: BWT, topology, link directory, run starts, order."""

    __slots__ = ("bwt", "topo", "ws", "runs", "order")

    def __init__(self, bwt, topo, ws, runs, order):
        self.bwt = bwt
        self.topo = topo
        self.ws = ws
        self.runs = runs
        self.order = order


def _make_side(bwt, seed):
    _, ivs = enumerate_right_maximal(bwt, engine="numba", collect=True)
    topo = build_topology(ivs, bwt.n)
    ws = WeinerSupport(topo, bwt, seed=seed)
    runs = Bitvector(bwt.runs_vector())
    order = SymbolOrder(topo, bwt, seed=seed)
    return _Side(bwt, topo, ws, runs, order)


class MsArrays:
    """Per-position statistic values with the threshold that produced them."""

    def __init__(self, values, tau):
        self.values = np.ascontiguousarray(values, np.int64)
        self.tau = int(tau)

    def __len__(self):
        return int(self.values.shape[0])

    def __getitem__(self, i):
        return int(self.values[i])

    def __eq__(self, other):
        if isinstance(other, MsArrays):
            return self.tau == other.tau and np.array_equal(self.values, other.values)
        return np.array_equal(self.values, np.asarray(other, np.int64))

    def __repr__(self):
        return "MsArrays(%s, tau=%d)" % (self.values.tolist(), self.tau)

    def is_delta_monotone(self):
        """True when consecutive values never drop by more than one."""
        v = self.values
        return bool(v.shape[0] < 2 or np.all(np.diff(v) >= -1))

    def state(self):
        return {"values": self.values, "tau": self.tau}

    @classmethod
    def from_state(cls, st):
        return cls(st["values"], int(st["tau"]))


class BidirIndex:
    """Forward and reverse BWT machinery over one text.

    Fields: text, fwd/rev sides (bwt, topo, ws, runs, order), the record-one
    membership bitvector ``which`` when the text has at least two records,
    and ``last_extend_calls``, the extension count of the latest array build.
    """

    def __init__(self, text, seed=DEFAULT_SEED):
        if isinstance(text, str):
            text = Text([text])
        elif isinstance(text, (list, tuple)):
            text = Text(list(text))
        self.text = text
        self.seed = int(seed)
        self._fwd = _make_side(bwt_from_suffix_array(text), seed)
        self._rev = _make_side(bwt_from_suffix_array(text.reversed_text()), seed)
        self.which = None
        if text.m >= 2:
            pos = self._fwd.bwt.positions_of_rows(np.arange(1, text.n + 1))
            # suffixes starting strictly inside the first record, before its
            # separator, are the occurrences counted as "in record one"
            self.which = Bitvector((pos <= int(text.record_lens[0]) - 1).astype(np.uint8))
        self.last_extend_calls = 0
        self._rows = None

    @property
    def fwd(self):
        return self._fwd.bwt

    @property
    def rev(self):
        return self._rev.bwt

    def side(self, name):
        if name == "fwd":
            return self._fwd
        if name == "rev":
            return self._rev
        raise ValueError("side must be 'fwd' or 'rev'")

    def full_pair(self):
        n = self._fwd.bwt.n
        return ((1, n), (1, n))

    def rows_of_positions(self):
        """rows[pos - 1] = rank of the suffix starting at 1-based pos."""
        if self._rows is None:
            sa = self._fwd.bwt.positions_of_rows(np.arange(1, self.text.n + 1))
            self._rows = K.inverse_perm(np.ascontiguousarray(sa - 1, np.int64)) + 1
        return self._rows

    # --------------------------------------------------------- persistence

    def state(self):
        st = {"seed": self.seed, "text": self.text.state()}
        for tag, s in (("f", self._fwd), ("r", self._rev)):
            st[tag + "bwt"] = s.bwt.state()
            st[tag + "topo"] = s.topo.state()
            st[tag + "ws"] = s.ws.state()
            st[tag + "runs"] = s.runs.state()
            st[tag + "order"] = s.order.state()
        if self.which is not None:
            st["which"] = self.which.state()
        return st

    @classmethod
    def from_state(cls, st):
        from .topology import BpTopology

        obj = cls.__new__(cls)
        obj.text = Text.from_state(st["text"])
        obj.seed = int(st["seed"])
        sides = []
        for tag in ("f", "r"):
            bwt = BwtString.from_state(st[tag + "bwt"])
            topo = BpTopology.from_state(st[tag + "topo"])
            ws = WeinerSupport.from_state(st[tag + "ws"], topo, bwt)
            runs = Bitvector.from_state(st[tag + "runs"])
            order = SymbolOrder(topo, bwt, _state=st[tag + "order"])
            sides.append(_Side(bwt, topo, ws, runs, order))
        obj._fwd, obj._rev = sides
        obj.which = Bitvector.from_state(st["which"]) if "which" in st else None
        obj.last_extend_calls = 0
        obj._rows = None
        return obj


def _locus(side, i, j):
    """Deepest node whose interval is exactly (i, j), or None."""
    t = side.topo
    if not (1 <= i <= j <= side.bwt.n):
        return None
    v = t.lca(t.select_leaf(i), t.select_leaf(j))
    if t.interval(v) != (i, j):
        return None
    return v


def _two_distinct(side, i, j):
    """At least two distinct symbols in the side's BWT range (i, j)."""
    return j > i and int(side.runs.rank1(j)) - int(side.runs.rank1(i)) >= 1


def bidir_extend(b, side, c, pair):
    """Interval pair of cW (side 'left') or Wc (side 'right'); absent -> None."""
    (i, j), (p, q) = pair
    c = int(c)
    if side == "left":
        r = b._fwd.bwt.backward_step(i, j, c)
        if r is None:
            return None
        p2 = p + b._fwd.ws.count_smaller((i, j), c)
        return (r, (p2, p2 + r[1] - r[0]))
    if side == "right":
        r = b._rev.bwt.backward_step(p, q, c)
        if r is None:
            return None
        i2 = i + b._rev.ws.count_smaller((p, q), c)
        return ((i2, i2 + r[1] - r[0]), r)
    raise ValueError("side must be 'left' or 'right'")


def bidir_contract(b, side, pair):
    """Interval pair after dropping the first (side 'left') or last symbol.

    The string without the dropped symbol must remain right-maximal for
    'left' and left-maximal for 'right'; otherwise, or when the pair does
    not describe a nonempty tracked string, UNSUPPORTED comes back.
    """
    (i, j), (p, q) = pair
    if side == "left":
        # the remainder W of aW stays right-maximal iff the reverse BWT range
        # of the pair holds at least two distinct symbols
        if not _two_distinct(b._rev, p, q):
            return UNSUPPORTED
        v = _locus(b._fwd, i, j)
        if v is None or v == 1:
            return UNSUPPORTED
        fi, fj = b._fwd.topo.interval(suffix_link(b._fwd.topo, b._fwd.bwt, v))
        if _two_distinct(b._fwd, fi, fj):
            # W left-maximal: the reverse locus climbs exactly one level
            u = _locus(b._rev, p, q)
            if u is None or u == 1:
                return UNSUPPORTED
            rp, rq = b._rev.topo.interval(b._rev.topo.parent(u))
        else:
            rp, rq = p, q
        return ((fi, fj), (rp, rq))
    if side == "right":
        if not _two_distinct(b._fwd, i, j):
            return UNSUPPORTED
        u = _locus(b._rev, p, q)
        if u is None or u == 1:
            return UNSUPPORTED
        rp, rq = b._rev.topo.interval(suffix_link(b._rev.topo, b._rev.bwt, u))
        if _two_distinct(b._rev, rp, rq):
            v = _locus(b._fwd, i, j)
            if v is None or v == 1:
                return UNSUPPORTED
            fi, fj = b._fwd.topo.interval(b._fwd.topo.parent(v))
        else:
            fi, fj = i, j
        return ((fi, fj), (rp, rq))
    raise ValueError("side must be 'left' or 'right'")


def bidir_enumerate(b, side, pair, with_pairs=False):
    """Distinct left or right extension symbols of the pair, sorted ascending.

    With with_pairs=True each symbol comes with its extended interval pair.
    """
    s = b._fwd if side == "left" else b._rev if side == "right" else None
    if s is None:
        raise ValueError("side must be 'left' or 'right'")
    lo, hi = pair[0] if side == "left" else pair[1]
    v = _locus(s, lo, hi)
    if v is None:
        raise ValueError("not a tracked interval")
    res = s.bwt.rd.query(int(lo), int(hi), s.bwt.rd.new_context())
    out = [0] * len(res)
    for c, _f, _l in res:
        out[s.order.rank(v, c) - 1] = int(c)
    if not with_pairs:
        return out
    return [(c, bidir_extend(b, side, c, pair)) for c in out]


def bidir_is_maximal(b, side, interval):
    """Left maximality of the forward interval, or right maximality of the
    reverse interval, read off the run starts of that side's BWT."""
    s = b._fwd if side == "left" else b._rev if side == "right" else None
    if s is None:
        raise ValueError("side must be 'left' or 'right'")
    return _two_distinct(s, int(interval[0]), int(interval[1]))


# ------------------------------------------------------------ array builds


def build_plcp(b):
    """Longest-common-prefix value of every suffix with its lexicographic
    predecessor, indexed by text position (position i at entry i - 1)."""
    text = b.text
    if text.m != 1:
        raise ValueError("one record expected")
    n = int(text.n)
    codes = text.codes
    rows = b.rows_of_positions()
    full = b.full_pair()
    out = np.zeros(n, np.int64)
    calls = 0
    pair, prev = full, 0
    for i in range(1, n + 1):
        if i == 1 or prev == 0:
            ell, pair = 0, full
        else:
            # the previous match loses its first symbol and stays tracked
            ell = prev - 1
            pair = bidir_contract(b, "left", pair)
        while True:
            nxt = bidir_extend(b, "right", int(codes[i + ell - 1]), pair)
            calls += 1
            if nxt[0][0] == int(rows[i - 1]):
                break
            ell += 1
            pair = nxt
        out[i - 1] = ell
        prev = ell
    b.last_extend_calls = calls
    return out


def build_ds(b, tau=1):
    """Distinguishing statistics: for every position of the single record,
    the length of the shortest prefix of the suffix occurring at most tau
    times (the terminator makes that prefix exist)."""
    if tau < 1:
        raise ValueError("threshold must be at least one")
    text = b.text
    if text.m != 1:
        raise ValueError("one record expected")
    n = int(text.n)
    codes = text.codes
    full = b.full_pair()
    out = np.zeros(max(0, n - 1), np.int64)
    calls = 0
    pair, prev = full, 0
    for i in range(1, n):
        if i == 1 or prev == 0:
            ell, pair = 0, full
        else:
            ell = prev - 1
            pair = bidir_contract(b, "left", pair)
        while True:
            nxt = bidir_extend(b, "right", int(codes[i + ell - 1]), pair)
            calls += 1
            if nxt[0][1] - nxt[0][0] + 1 <= tau:
                break
            ell += 1
            pair = nxt
        out[i - 1] = ell + 1
        prev = ell
    b.last_extend_calls = calls
    return MsArrays(out, tau)


def build_ms(b, which=None, tau=1):
    """Matching statistics of the second record against the first: for every
    position of record two, the length of the longest prefix of its suffix
    occurring at least tau times inside record one."""
    if tau < 1:
        raise ValueError("threshold must be at least one")
    text = b.text
    if text.m != 2:
        raise ValueError("two records expected")
    which = b.which if which is None else which
    codes = text.codes
    start = int(text.record_lens[0])  # separator position of record one
    m_real = int(text.record_lens[1]) - 1
    full = b.full_pair()

    def freq1(iv):
        return int(which.rank1(iv[1])) - int(which.rank1(iv[0] - 1))

    out = np.zeros(m_real, np.int64)
    calls = 0
    pair, prev = full, 0
    for t in range(1, m_real + 1):
        if t == 1 or prev == 0:
            ell, pair = 0, full
        else:
            ell = prev - 1
            pair = bidir_contract(b, "left", pair)
        while True:
            nxt = bidir_extend(b, "right", int(codes[start + t + ell - 1]), pair)
            calls += 1
            if freq1(nxt[0]) < tau:
                break
            ell += 1
            pair = nxt
        out[t - 1] = ell
        prev = ell
    b.last_extend_calls = calls
    return MsArrays(out, tau)
