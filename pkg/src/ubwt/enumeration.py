"""Depth-first enumeration of right-maximal substrings over one transform
or over several transforms sharing one code space.

A substring W is handled through repr(W): its sorted right-extension
symbols plus the row boundaries of each extension's interval.  One
range-distinct query per extension block yields every left extension aW
together with repr(aW), so the traversal walks suffix-link-tree edges
without ever touching the text.  Children are pushed widest-first, which
keeps the stack logarithmic; ties push the lower symbol last so it pops
first.
"""

import numpy as np

from . import _kernels as K


class Repr:
    """Right-extension symbols of W and the k+1 row boundaries; the
    interval of W·chars[i] is [first[i] .. first[i+1]-1], rows 1-based."""

    __slots__ = ("chars", "first", "depth")

    def __init__(self, chars, first, depth):
        self.chars = np.asarray(chars, np.int64)
        self.first = np.asarray(first, np.int64)
        self.depth = int(depth)

    @property
    def k(self):
        return int(self.chars.shape[0])

    def interval(self):
        return int(self.first[0]), int(self.first[-1]) - 1

    def width(self):
        return int(self.first[-1]) - int(self.first[0])

    def present(self):
        return self.chars.shape[0] > 0

    def right_maximal(self):
        return self.chars.shape[0] >= 2


class GenRepr:
    """Per-text representations; an absent text holds no extension symbols
    and a single boundary, the row where W would be inserted."""

    __slots__ = ("sides", "depth")

    def __init__(self, sides, depth):
        self.sides = sides
        self.depth = int(depth)

    def present(self, i):
        return self.sides[i].present()

    def global_interval(self):
        lo = 1 + sum(int(s.first[0]) - 1 for s in self.sides)
        w = sum(s.width() for s in self.sides)
        return lo, lo + w - 1


def root_repr(bwt):
    C = bwt.C
    chars = [c for c in range(bwt.A) if C[c + 1] > C[c]]
    first = [int(C[c]) + 1 for c in chars] + [bwt.n + 1]
    return Repr(chars, first, 0)


class ExtensionScratch:
    """Workspace filled by extend_left and wiped after every node.

    Row a of A/F/L describes aW: its right-extension symbols in ascending
    order and the rows of each aW·b interval.  gamma[a] counts them;
    leftExtensions[0..h-1] lists the distinct a's seen.
    """

    def __init__(self, sigma):
        self.sigma = int(sigma)
        self.A = np.zeros((sigma, sigma + 1), np.int64)
        self.F = np.zeros((sigma, sigma + 1), np.int64)
        self.L = np.zeros((sigma, sigma + 1), np.int64)
        self.gamma = np.zeros(sigma, np.int64)
        self.leftExtensions = np.zeros(sigma + 1, np.int64)
        self.h = 0
        self.depth = 0
        from .rangedistinct import QueryContext
        self.ctx = QueryContext(sigma)

    def left_extensions(self):
        return sorted(int(a) for a in self.leftExtensions[:self.h])

    def child_width(self, a):
        g = int(self.gamma[a])
        return int(self.L[a][g - 1]) - int(self.F[a][0]) + 1

    def child_repr(self, a):
        g = int(self.gamma[a])
        first = np.empty(g + 1, np.int64)
        first[:g] = self.F[a][:g]
        first[g] = self.L[a][g - 1] + 1
        return Repr(self.A[a][:g].copy(), first, self.depth + 1)

    def reset(self):
        for t in range(self.h):
            a = int(self.leftExtensions[t])
            g = int(self.gamma[a])
            self.A[a][:g] = 0
            self.F[a][:g] = 0
            self.L[a][:g] = 0
            self.gamma[a] = 0
        self.leftExtensions[:self.h] = 0
        self.h = 0

    def is_clean(self):
        return (self.h == 0 and not self.gamma.any() and not self.A.any()
                and not self.F.any() and not self.L.any()
                and not self.leftExtensions.any())


def extend_left(rep, bwt, scratch, debug=False):
    """Fill scratch with repr(aW) for every left extension a of W; returns
    the number of range-distinct tuples consumed."""
    if debug and not scratch.is_clean():
        raise ValueError("scratch is dirty")
    C = bwt.C
    rd = bwt.rd
    tuples = 0
    first = rep.first
    for idx in range(rep.k):
        lo = int(first[idx])
        hi = int(first[idx + 1]) - 1
        b = int(rep.chars[idx])
        for (a, p, q) in rd.query(lo, hi, scratch.ctx):
            g = int(scratch.gamma[a])
            if g == 0:
                scratch.leftExtensions[scratch.h] = a
                scratch.h += 1
            scratch.A[a][g] = b
            scratch.F[a][g] = int(C[a]) + p
            scratch.L[a][g] = int(C[a]) + q
            scratch.gamma[a] = g + 1
            tuples += 1
    scratch.depth = rep.depth
    return tuples


class EnumStats:
    __slots__ = ("nodes", "tuples", "max_stack")

    def __init__(self, nodes=0, tuples=0, max_stack=0):
        self.nodes = nodes
        self.tuples = tuples
        self.max_stack = max_stack

    def merge(self, other):
        self.nodes += other.nodes
        self.tuples += other.tuples
        self.max_stack = max(self.max_stack, other.max_stack)


def _push_order(scratch, admit):
    """Candidate children sorted so the widest is pushed first and, on
    ties, the lower symbol lands on top of the stack."""
    cands = [(scratch.child_width(a), a)
             for a in scratch.left_extensions() if admit(a)]
    cands.sort(key=lambda t: (-t[0], -t[1]))
    return [a for _, a in cands]


def _walk_single(bwt, reprs, callback, scratch, collect, stats):
    stack = list(reprs)
    out = [] if collect else None
    while stack:
        stats.max_stack = max(stats.max_stack, len(stack))
        rep = stack.pop()
        stats.tuples += extend_left(rep, bwt, scratch)
        stats.nodes += 1
        if collect:
            lo, hi = rep.interval()
            out.append((lo, hi, rep.depth))
        if callback is not None:
            callback(rep, scratch)
        for a in _push_order(scratch, lambda a: scratch.gamma[a] >= 2):
            stack.append(scratch.child_repr(a))
        scratch.reset()
    return out


def enumerate_right_maximal(bwt, callback=None, engine="python",
                            collect=False, threads=None):
    """Visit every right-maximal substring of the text (ε included).

    engine="python" drives the callback; engine="numba" runs the compiled
    traversal (no callback) and is the path used for scaling runs.
    Returns (stats, intervals) with intervals None unless collect.
    """
    if engine == "numba":
        if callback is not None:
            raise ValueError("compiled traversal takes no callback")
        sym = bwt.symbols
        P, Nn, prank = K.build_pnp(sym, bwt.A)
        stP = K.build_rmq(P)
        stN = K.build_rmq(Nn)
        nodes, tuples, mstack, err, lo, hi, d = K.enum_single(
            sym, bwt.C, bwt.A, P, *stP[1:], Nn, *stN[1:], prank,
            1 if collect else 0)
        if err != 0:
            raise RuntimeError("enumeration failed with code %d" % err)
        ivs = None
        if collect:
            ivs = [(int(lo[t]) + 1, int(hi[t]) + 1, int(d[t]))
                   for t in range(len(lo))]
        return EnumStats(int(nodes), int(tuples), int(mstack)), ivs
    if engine != "python":
        raise ValueError("unknown engine")
    stats = EnumStats()
    root = root_repr(bwt)
    if not threads or threads <= 1:
        scratch = ExtensionScratch(bwt.A)
        out = _walk_single(bwt, [root], callback, scratch, collect, stats)
        assert scratch.is_clean()
        return stats, out
    # parallel mode: the root is handled here, then its children are
    # distributed; callbacks must be reentrant.
    from concurrent.futures import ThreadPoolExecutor
    scratch = ExtensionScratch(bwt.A)
    stats.tuples += extend_left(root, bwt, scratch)
    stats.nodes += 1
    out = [] if collect else None
    if collect:
        lo, hi = root.interval()
        out.append((lo, hi, 0))
    if callback is not None:
        callback(root, scratch)
    children = [scratch.child_repr(a)
                for a in _push_order(scratch, lambda a: scratch.gamma[a] >= 2)]
    scratch.reset()
    results = []
    with ThreadPoolExecutor(max_workers=threads) as ex:
        futs = []
        for ch in children:
            st = EnumStats()
            sc = ExtensionScratch(bwt.A)
            futs.append((st, ex.submit(_walk_single, bwt, [ch], callback,
                                       sc, collect, st)))
        for st, f in futs:
            results.append(f.result())
            stats.merge(st)
    if collect:
        for r in results:
            out.extend(r)
    return stats, out


def _absent_child(bwt, side_rep, a, depth):
    f = int(side_rep.first[0])
    row = int(bwt.C[a]) + bwt.rank(a, f - 1) + 1
    return Repr(np.empty(0, np.int64), np.array([row], np.int64), depth)


def enumerate_generalized(bwts, callback=None, mode="all-nodes",
                          collect=False):
    """Visit right-maximal substrings of the concatenation of several
    texts, tracking each text's interval (or insertion row) separately.

    mode="impure-only" restricts to substrings occurring in at least two
    of the texts; their suffix-link edges stay within that set, so the
    traversal never needs the pure part of the tree.
    """
    m = len(bwts)
    if m < 1:
        raise ValueError("need at least one text")
    A = bwts[0].A
    if any(b.A != A for b in bwts):
        raise ValueError("transforms use different code spaces")
    if mode not in ("all-nodes", "impure-only"):
        raise ValueError("unknown mode")
    stats = EnumStats()
    out = [] if collect else None
    if mode == "impure-only" and m == 1:
        return stats, out
    scratches = [ExtensionScratch(A) for _ in range(m)]
    root = GenRepr([root_repr(b) for b in bwts], 0)
    stack = [root]
    while stack:
        stats.max_stack = max(stats.max_stack, len(stack))
        g = stack.pop()
        stats.nodes += 1
        for i in range(m):
            if g.sides[i].present():
                stats.tuples += extend_left(g.sides[i], bwts[i], scratches[i])
        if collect:
            lo, hi = g.global_interval()
            out.append((lo, hi, g.depth))
        if callback is not None:
            callback(g, scratches)
        # union candidate set over all texts
        seen = {}
        for i in range(m):
            for a in scratches[i].left_extensions():
                seen.setdefault(a, []).append(i)
        cands = []
        for a, side_list in seen.items():
            syms = set()
            for i in side_list:
                gi = int(scratches[i].gamma[a])
                syms.update(int(x) for x in scratches[i].A[a][:gi])
            if len(syms) < 2:
                continue
            if mode == "impure-only" and len(side_list) < 2:
                continue
            w = sum(scratches[i].child_width(a) for i in side_list)
            cands.append((w, a, side_list))
        cands.sort(key=lambda t: (-t[0], -t[1]))
        for w, a, side_list in cands:
            sides = []
            for i in range(m):
                if scratches[i].gamma[a] >= 1:
                    sides.append(scratches[i].child_repr(a))
                else:
                    sides.append(_absent_child(bwts[i], g.sides[i], a,
                                               g.depth + 1))
            stack.append(GenRepr(sides, g.depth + 1))
        for sc in scratches:
            sc.reset()
    for sc in scratches:
        assert sc.is_clean()
    return stats, out
