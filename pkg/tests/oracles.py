"""Independent reference implementations used as test oracles.

Everything here favors obviousness over speed: rotation sorts, quadratic
scans, pointer trees. Inputs are strings or sequences of small ints; all
row/position indexing is 1-based to match the library's conventions.
"""

from bisect import bisect_right
from collections import Counter
import math


def as_tuple(s):
    if isinstance(s, str):
        return tuple(ord(c) for c in s)
    return tuple(int(x) for x in s)


def _to_bytes(t):
    if all(0 <= x < 256 for x in t):
        return bytes(t)
    return None


def sa_slices(s):
    """Suffix array by sorting explicit suffixes. 1-based values."""
    t = as_tuple(s)
    b = _to_bytes(t)
    if b is not None:
        return sorted(range(1, len(t) + 1), key=lambda i: b[i - 1:])
    return sorted(range(1, len(t) + 1), key=lambda i: t[i - 1:])


def sa_doubling(s):
    """Suffix array by prefix doubling. 1-based values."""
    t = as_tuple(s)
    n = len(t)
    rank = list(t)
    sa = list(range(n))
    k = 1
    while True:
        key = lambda i: (rank[i], rank[i + k] if i + k < n else -1)
        sa.sort(key=key)
        new = [0] * n
        for idx in range(1, n):
            new[sa[idx]] = new[sa[idx - 1]] + (key(sa[idx]) != key(sa[idx - 1]))
        rank = new
        if rank[sa[-1]] == n - 1:
            break
        k *= 2
    return [i + 1 for i in sa]


def sa_oracle(s):
    t = as_tuple(s)
    if len(t) <= 2048:
        return sa_slices(t)
    out = sa_doubling(t)
    return out


def isa_oracle(s, sa=None):
    sa = sa or sa_oracle(s)
    isa = [0] * (len(sa) + 1)
    for r, p in enumerate(sa, start=1):
        isa[p] = r
    return isa[1:]


def rotation_sa_oracle(s):
    """Starts of lexicographically sorted rotations, 1-based.

    Raises ValueError when two rotations are equal.
    """
    t = as_tuple(s)
    n = len(t)
    if n == 0:
        raise ValueError("empty")
    d = t + t
    order = [i for i in sa_oracle(d) if i <= n]
    for a, b in zip(order, order[1:]):
        if d[a - 1:a - 1 + n] == d[b - 1:b - 1 + n]:
            raise ValueError("duplicate rotations")
    return order


def bwt_oracle(s):
    """BWT over the rotation set, as a tuple of symbols."""
    t = as_tuple(s)
    n = len(t)
    return tuple(t[(i - 2) % n] for i in rotation_sa_oracle(t))


def union_bwt_oracle(texts):
    """BWT of the multiset union of the rotation sets of several texts.

    Equal rotations from different texts keep text order (stable interleave).
    """
    rots = []
    for side, s in enumerate(texts):
        t = as_tuple(s)
        n = len(t)
        d = t + t
        for i in range(n):
            rots.append((d[i:i + n], side, d[i + n - 1]))
    rots.sort(key=lambda x: (x[0], x[1]))
    return tuple(x[2] for x in rots)


def lf_oracle(s):
    """LF as a permutation: lf[r-1] = row of the predecessor rotation."""
    t = as_tuple(s)
    n = len(t)
    rsa = rotation_sa_oracle(t)
    row_of = {p: r for r, p in enumerate(rsa, start=1)}
    return [row_of[(rsa[r - 1] - 2) % n + 1] for r in range(1, n + 1)]


def psi_oracle(s):
    lf = lf_oracle(s)
    psi = [0] * len(lf)
    for i, j in enumerate(lf, start=1):
        psi[j - 1] = i
    return psi


def lcp_from_sa(s, sa):
    """lcp[r-1] = lcp(suffix sa[r-2], suffix sa[r-1]); lcp[0] = 0."""
    t = as_tuple(s)
    n = len(t)
    out = [0] * n
    for r in range(2, n + 1):
        a, b = sa[r - 2] - 1, sa[r - 1] - 1
        l = 0
        while a + l < n and b + l < n and t[a + l] == t[b + l]:
            l += 1
        out[r - 1] = l
    return out


def plcp_oracle(s):
    t = as_tuple(s)
    sa = sa_oracle(t)
    lcp = lcp_from_sa(t, sa)
    isa = isa_oracle(t, sa)
    return [lcp[isa[i] - 1] for i in range(len(t))]


class TreeNode:
    __slots__ = ("nid", "parent", "children", "lo", "hi", "sdepth", "leaf_rank")

    def __init__(self):
        self.nid = 0
        self.parent = None
        self.children = []
        self.lo = self.hi = 0
        self.sdepth = 0
        self.leaf_rank = None  # 1-based for leaves, None for internal


class SuffixTreeOracle:
    """Pointer suffix tree of a terminated text, built by LCP splitting.

    Node ids are preorder ranks (root = 1), children in lexicographic order,
    matching the balanced-parentheses id convention.
    """

    def __init__(self, s):
        self.text = as_tuple(s)
        self.n = len(self.text)
        self.sa = sa_oracle(self.text)
        self.lcp = lcp_from_sa(self.text, self.sa)
        self.nodes = []
        self.root = self._build(1, self.n, None)
        self._assign_ids()
        self.leaves = sorted((nd for nd in self.nodes if nd.leaf_rank),
                             key=lambda nd: nd.leaf_rank)
        self.by_id = {nd.nid: nd for nd in self.nodes}

    def _build(self, lo, hi, parent):
        nd = TreeNode()
        nd.parent = parent
        nd.lo, nd.hi = lo, hi
        self.nodes.append(nd)
        if lo == hi:
            nd.sdepth = self.n - self.sa[lo - 1] + 1
            nd.leaf_rank = lo
            return nd
        d = min(self.lcp[r - 1] for r in range(lo + 1, hi + 1))
        nd.sdepth = d
        start = lo
        for r in range(lo + 1, hi + 1):
            if self.lcp[r - 1] == d:
                nd.children.append(self._build(start, r - 1, nd))
                start = r
        nd.children.append(self._build(start, hi, nd))
        return nd

    def _assign_ids(self):
        cnt = 0
        stack = [self.root]
        while stack:
            nd = stack.pop()
            cnt += 1
            nd.nid = cnt
            stack.extend(reversed(nd.children))

    # ---- labels and lookup ----

    def label(self, nd):
        p = self.sa[nd.lo - 1] - 1
        return self.text[p:p + nd.sdepth]

    def internal(self):
        return [nd for nd in self.nodes if nd.leaf_rank is None]

    def internal_intervals(self):
        return [(nd.lo, nd.hi, nd.sdepth) for nd in self.internal()]

    def interval_of(self, w):
        """Rows of suffixes having w as a prefix, or None if absent."""
        w = as_tuple(w)
        rows = [r for r in range(1, self.n + 1)
                if self.text[self.sa[r - 1] - 1:self.sa[r - 1] - 1 + len(w)] == w]
        if not rows:
            return None
        return rows[0], rows[-1]

    def locus(self, w):
        """Shallowest node whose interval equals interval(w), depth >= |w|."""
        w = as_tuple(w)
        iv = self.interval_of(w)
        if iv is None:
            return None
        cands = [nd for nd in self.nodes
                 if (nd.lo, nd.hi) == iv and nd.sdepth >= len(w)]
        return min(cands, key=lambda nd: nd.sdepth)

    # ---- navigation oracle (naive) ----

    def tdepth(self, nd):
        d = 1
        while nd.parent is not None:
            nd = nd.parent
            d += 1
        return d

    def height(self, nd):
        if not nd.children:
            return 0
        return 1 + max(self.height(c) for c in nd.children)

    def ancestor_at(self, nd, d):
        path = [nd]
        while nd.parent is not None:
            nd = nd.parent
            path.append(nd)
        path.reverse()
        return path[d - 1] if 1 <= d <= len(path) else None

    def lca(self, a, b):
        anc = set()
        x = a
        while x is not None:
            anc.add(id(x))
            x = x.parent
        x = b
        while id(x) not in anc:
            x = x.parent
        return x

    def suffix_link(self, nd):
        lab = self.label(nd) if nd.leaf_rank is None else \
            self.text[self.sa[nd.lo - 1] - 1:]
        return self.locus(lab[1:])

    def weiner_link(self, nd, c):
        lab = self.label(nd)
        return self.locus((c,) + lab)


def bp_oracle(s):
    """Balanced-parentheses string of the suffix tree, by pointer-tree DFS."""
    tree = SuffixTreeOracle(s)
    out = []

    def rec(nd):
        out.append("(")
        for c in nd.children:
            rec(c)
        out.append(")")

    rec(tree.root)
    return "".join(out)


def right_maximal_oracle(s):
    """Labels of internal suffix-tree nodes (including the empty string)."""
    tree = SuffixTreeOracle(s)
    return {tree.label(nd) for nd in tree.internal()}


def occurrences(hay, needle):
    hay, needle = as_tuple(hay), as_tuple(needle)
    if not needle:
        return len(hay) + 1
    cnt = 0
    for i in range(len(hay) - len(needle) + 1):
        if hay[i:i + len(needle)] == needle:
            cnt += 1
    return cnt


def maximal_repeats_oracle(s):
    """Set of maximal repeats (left- and right-maximal, length >= 1).

    Built on the terminated text; the left context of position 1 is the
    terminator, which never equals a real symbol.
    """
    t = as_tuple(s)
    tree = SuffixTreeOracle(t + (-1,))
    out = set()
    for nd in tree.internal():
        if nd.sdepth < 1:
            continue
        pre = set()
        for r in range(nd.lo, nd.hi + 1):
            pos = tree.sa[r - 1]
            pre.add(t[pos - 2] if pos >= 2 else None)
        if len(pre) >= 2:
            out.add(tree.label(nd))
    return out


def mum_oracle(texts):
    """dict: MUM (tuple over raw symbols) -> list of (doc index 1-based, pos)."""
    ts = [as_tuple(t) for t in texts]
    d = len(ts)
    cand = set()
    for i in range(len(ts[0])):
        for j in range(i + 1, len(ts[0]) + 1):
            cand.add(ts[0][i:j])
    out = {}
    for w in cand:
        poss = []
        ok = True
        for t in ts:
            hits = [i + 1 for i in range(len(t) - len(w) + 1)
                    if t[i:i + len(w)] == w]
            if len(hits) != 1:
                ok = False
                break
            poss.append(hits[0])
        if not ok:
            continue
        # maximality inside the separator-joined union: some pair of
        # occurrences must disagree on each side (separators/ends count
        # as distinct virtual symbols per document).
        lefts = set()
        rights = set()
        for doc, (t, p) in enumerate(zip(ts, poss)):
            lefts.add(t[p - 2] if p >= 2 else ("end", doc))
            q = p - 1 + len(w)
            rights.add(t[q] if q < len(t) else ("end", doc))
        if len(lefts) >= 2 and len(rights) >= 2:
            out[w] = [(doc + 1, p) for doc, p in enumerate(poss)]
    return out


def mem_oracle(t1, t2, min_len):
    """Set of (i, j, l): maximal exact matches, 1-based positions."""
    a, b = as_tuple(t1), as_tuple(t2)
    n, m = len(a), len(b)
    lce = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if a[i] == b[j]:
                lce[i][j] = lce[i + 1][j + 1] + 1
    out = set()
    for i in range(n):
        for j in range(m):
            l = lce[i][j]
            if l < min_len:
                continue
            if i > 0 and j > 0 and a[i - 1] == b[j - 1]:
                continue
            out.add((i + 1, j + 1, l))
    return out


def maw_oracle(t):
    """Minimal absent words over the symbols present in t.

    aUb is minimal absent iff aUb is not a substring while both aU and Ub are.
    """
    t = as_tuple(t)
    n = len(t)
    subs = set()
    for i in range(n):
        for j in range(i + 1, n + 1):
            subs.add(t[i:j])
    alpha = sorted(set(t))
    out = set()
    for u in subs | {()}:
        for a in alpha:
            if (a,) + u not in subs:
                continue
            for b in alpha:
                if u + (b,) not in subs:
                    continue
                w = (a,) + u + (b,)
                if w not in subs:
                    out.add(w)
    return out


def ms_oracle(s, t, tau=1):
    """MS[i] = longest prefix of t[i..] occurring >= tau times in s."""
    s, t = as_tuple(s), as_tuple(t)
    out = []
    for i in range(len(t)):
        l = 0
        while i + l < len(t) and occurrences(s, t[i:i + l + 1]) >= tau:
            l += 1
        out.append(l)
    return out


def ds_oracle(s, tau=1):
    """DS over the sentinel-terminated text; sentinel is a fresh symbol."""
    s = as_tuple(s)
    sent = (max(s) + 1,) if s else (0,)
    ss = s + sent
    out = []
    for i in range(len(s)):
        l = 1
        while occurrences(ss, ss[i:i + l]) > tau:
            l += 1
        out.append(l)
    return out


def kmer_complexity_oracle(t, k):
    t = as_tuple(t)
    return len({t[i:i + k] for i in range(len(t) - k + 1)})


def substring_complexity_oracle(t):
    t = as_tuple(t)
    return len({t[i:j] for i in range(len(t)) for j in range(i + 1, len(t) + 1)})


def _cosine(c1, c2):
    num = sum(v * c2[w] for w, v in c1.items() if w in c2)
    d1 = math.sqrt(sum(v * v for v in c1.values()))
    d2 = math.sqrt(sum(v * v for v in c2.values()))
    if d1 == 0 or d2 == 0:
        return 0.0
    return num / (d1 * d2)


def kmer_kernel_oracle(t1, t2, k, probabilities=False):
    a, b = as_tuple(t1), as_tuple(t2)
    c1 = Counter(a[i:i + k] for i in range(len(a) - k + 1))
    c2 = Counter(b[i:i + k] for i in range(len(b) - k + 1))
    if probabilities:
        c1 = {w: v / (len(a) - k + 1) for w, v in c1.items()}
        c2 = {w: v / (len(b) - k + 1) for w, v in c2.items()}
    return _cosine(c1, c2)


def substring_kernel_oracle(t1, t2, probabilities=False):
    a, b = as_tuple(t1), as_tuple(t2)

    def comp(t):
        c = Counter(t[i:j] for i in range(len(t))
                    for j in range(i + 1, len(t) + 1))
        if probabilities:
            return {w: v / (len(t) - len(w) + 1) for w, v in c.items()}
        return c

    return _cosine(comp(a), comp(b))


def pair_product_oracle(A, B):
    return {(a, b, c, d) for (a, b) in A for (c, d) in B if a != c and b != d}


def range_distinct_oracle(seq, lo, hi):
    """dict symbol -> (rank at first in-range occurrence, rank at last)."""
    seq = as_tuple(seq)
    counts = Counter()
    first = {}
    last = {}
    for i in range(1, hi + 1):
        c = seq[i - 1]
        counts[c] += 1
        if i >= lo:
            if c not in first:
                first[c] = counts[c]
            last[c] = counts[c]
    return {c: (first[c], last[c]) for c in first}


def count_smaller_oracle(seq, lo, hi, c):
    seq = as_tuple(seq)
    return sum(1 for x in seq[lo - 1:hi] if x < c)


def rmq_oracle(arr, i, j):
    best = i
    for k in range(i + 1, j + 1):
        if arr[k - 1] < arr[best - 1]:
            best = k
    return best


def predecessor_oracle(sorted_vals, q):
    """1-based index of the largest element <= q, or None."""
    k = bisect_right(sorted_vals, q)
    return k if k > 0 else None


def gamma_len_oracle(x):
    return 1 + 2 * math.ceil(math.log2(x + 1)) if x > 0 else 1
