"""String analyses phrased as callbacks over suffix-link-tree enumeration.

Each routine makes at most two enumeration passes over the transform(s)
of its input.  Multi-text analyses run the generalized iterator on
per-record transforms sharing the union code space; every record keeps
its own separator code, so two text boundaries never compare equal and
matches touching an end stay maximal.  All reported positions are
1-based; row-domain results are translated to text positions in one
batched inversion at the end.
"""

import math

import numpy as np

from .bwt import BwtString, bwt_from_suffix_array
from .enumeration import enumerate_generalized, enumerate_right_maximal
from .textcore import Text

# bumped by the two wrappers below; tests assert <= 2 per analysis call
_enum_invocations = 0


def _enumerate(bwt, **kw):
    global _enum_invocations
    _enum_invocations += 1
    return enumerate_right_maximal(bwt, **kw)


def _enumerate_gen(bwts, **kw):
    global _enum_invocations
    _enum_invocations += 1
    return enumerate_generalized(bwts, **kw)


def _as_text(text):
    if isinstance(text, Text):
        return text
    if isinstance(text, (list, tuple)):
        return Text(list(text))
    return Text([text])


def _split_sides(text):
    """Per-record transforms in the shared code space, with each side's
    rotation positions: side_sa[k] is the 1-based local start of the
    rotation ranked k+1 within its record.

    Restricting the rows of the union transform to one record preserves
    their relative order and their symbols, so each side is read off the
    joint construction instead of being rebuilt.
    """
    bwt = bwt_from_suffix_array(text)
    sa = bwt.positions_of_rows(np.arange(1, bwt.n + 1, dtype=np.int64))
    starts = text.record_starts
    rec = np.searchsorted(starts, sa, side="right") - 1
    sides = []
    for r in range(text.m):
        mask = rec == r
        side = BwtString(bwt.symbols[mask], bwt.A,
                         np.array([int(text.record_lens[r])], np.int64),
                         bwt.chars)
        sides.append((side, sa[mask] - int(starts[r]) + 1))
    return bwt, sides


# --------------------------------------------------------------- repeats

def maximal_repeats(text, all_occurrences=False, threads=None):
    """One (position, length) pair per distinct maximal repeat, length >= 1.

    A maximal repeat is a right-maximal substring with at least two
    distinct left extensions; the reported position is the suffix-array
    sample of the first row of its interval.  With all_occurrences the
    result holds (position, length, id) for every row of every repeat
    interval, one id per repeat.  threads > 1 splits the traversal; the
    output is sorted either way, so the answer does not depend on it.
    """
    t = _as_text(text)
    bwt = bwt_from_suffix_array(t)
    found = []

    def cb(rep, scratch):
        if rep.depth >= 1 and scratch.h >= 2:
            lo, hi = rep.interval()
            found.append((lo, hi, rep.depth))

    _enumerate(bwt, callback=cb, threads=threads)
    if not found:
        return []
    found.sort()
    if not all_occurrences:
        rows = np.array([f[0] for f in found], np.int64)
        pos = bwt.positions_of_rows(rows)
        return sorted((int(p), d) for p, (_, _, d) in zip(pos, found))
    rows = np.concatenate(
        [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi, _ in found])
    pos = bwt.positions_of_rows(rows)
    out = []
    k = 0
    for rid, (lo, hi, d) in enumerate(found, 1):
        for _ in range(hi - lo + 1):
            out.append((int(pos[k]), d, rid))
            k += 1
    out.sort(key=lambda r: (r[2], r[0]))
    return out


# ---------------------------------------------------------- pair product

def pair_product(A, B):
    """All quadruples (a, b, c, d) with (a, b) in A, (c, d) in B, a != c
    and b != d.

    Output-sensitive: two compatible pairs of the smaller set are found
    and retired per round, and each round's scan of the larger set emits
    a quadruple for all but a constant number of its elements.  When no
    two remaining pairs are compatible they all share a coordinate with
    the selected one, and a single final sweep finishes.  The work done
    is recorded in pair_product.last_ops.
    """
    left = list(set(map(tuple, A)))
    right = list(set(map(tuple, B)))
    flipped = len(left) > len(right)
    if flipped:
        left, right = right, left
    out = set()
    ops = 0
    while left:
        a, b = left[-1]
        hit = -1
        for k in range(len(left) - 1):
            ops += 1
            c, d = left[k]
            if a != c and b != d:
                hit = k
                break
        if hit >= 0:
            c, d = left[hit]
            for x, y in right:
                ops += 1
                if a != x and b != y:
                    out.add((a, b, x, y))
                if c != x and d != y:
                    out.add((c, d, x, y))
            left.pop()
            left[hit] = left[-1]
            left.pop()
            continue
        # every other pair shares a coordinate with (a, b)
        row = [p for p in left[:-1] if p[0] == a]
        col = [p for p in left[:-1] if p[1] == b]
        for x, y in right:
            ops += 1
            if x == a and y == b:
                continue
            if x != a and y != b:
                out.add((a, b, x, y))
                for _, z in row:
                    ops += 1
                    if z != y:
                        out.add((a, z, x, y))
                for z, _ in col:
                    ops += 1
                    if z != x:
                        out.add((z, b, x, y))
            elif x == a:
                for z, _ in col:
                    ops += 1
                    out.add((z, b, x, y))
            else:
                for _, z in row:
                    ops += 1
                    out.add((a, z, x, y))
        break
    if flipped:
        out = {(c, d, a, b) for (a, b, c, d) in out}
    pair_product.last_ops = ops
    return out


pair_product.last_ops = 0


# ------------------------------------------------------------------ MEMs

def maximal_exact_matches(t1, t2, min_len=1):
    """Maximal exact matches between two strings as (i, j, length)
    triples, 1-based in t1 and t2, sorted lexicographically.

    A match is maximal when the preceding characters differ and the
    following characters differ, text boundaries counting as mismatches.
    """
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    t = Text([t1, t2])
    _, sides = _split_sides(t)
    (b1, sa1), (b2, sa2) = sides
    len1, len2 = int(t.record_lens[0]), int(t.record_lens[1])
    hits = []

    def cb(g, scratches):
        if g.depth < min_len:
            return
        if not (g.sides[0].present() and g.sides[1].present()):
            return
        s1, s2 = scratches
        la1, la2 = s1.left_extensions(), s2.left_extensions()
        if len(set(la1) | set(la2)) < 2:
            return
        X1 = {}
        for a in la1:
            for q in range(int(s1.gamma[a])):
                X1[(a, int(s1.A[a][q]))] = (int(s1.F[a][q]), int(s1.L[a][q]))
        X2 = {}
        for a in la2:
            for q in range(int(s2.gamma[a])):
                X2[(a, int(s2.A[a][q]))] = (int(s2.F[a][q]), int(s2.L[a][q]))
        for a, b, c, d in pair_product(X1.keys(), X2.keys()):
            lo1, hi1 = X1[(a, b)]
            lo2, hi2 = X2[(c, d)]
            for x in range(lo1, hi1 + 1):
                for y in range(lo2, hi2 + 1):
                    hits.append((x, y, g.depth))

    _enumerate_gen([b1, b2], callback=cb, mode="impure-only")
    out = []
    for x, y, d in hits:
        # the rows locate the occurrence of aWb; W starts one later and
        # wraps to position 1 when a is the separator
        i = int(sa1[x - 1]) % len1 + 1
        j = int(sa2[y - 1]) % len2 + 1
        out.append((i, j, d))
    out.sort()
    return out


# ------------------------------------------------------------------ MUMs

def maximal_unique_matches(texts):
    """Maximal substrings occurring exactly once in each of the d texts,
    as (id, doc, position, length) rows, d per match, sorted by id.

    Two passes: the first marks the boundary rows of every candidate
    interval and a document check drops candidates missing some text;
    the second re-enumerates and reports the survivors.  Ids densify in
    enumeration order, one per match.
    """
    if len(texts) < 2:
        raise ValueError("need at least two texts")
    t = Text(list(texts))
    d = t.m
    bwt = bwt_from_suffix_array(t)
    intervals = np.zeros(bwt.n + 1, np.uint8)
    cands = []

    def pass1(rep, scratch):
        if rep.depth >= 1 and scratch.h >= 2 and rep.width() == d:
            lo, hi = rep.interval()
            intervals[lo] = 1
            intervals[hi] = 1
            cands.append((lo, hi))

    _enumerate(bwt, callback=pass1)
    if not cands:
        return []
    rows = np.concatenate(
        [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in cands])
    pos = bwt.positions_of_rows(rows)
    docs = np.searchsorted(t.record_starts, pos, side="right") - 1
    documents = np.zeros(bwt.n + d + 1, np.uint8)
    k = 0
    for lo, hi in cands:
        for _ in range(hi - lo + 1):
            documents[lo + int(docs[k])] = 1
            k += 1
    for lo, hi in cands:
        if not documents[lo:lo + d].all():
            intervals[lo] = 0
            intervals[hi] = 0
        documents[lo:lo + d] = 0

    emit = []
    counter = [0]

    def pass2(rep, scratch):
        if rep.depth >= 1 and scratch.h >= 2 and rep.width() == d:
            lo, hi = rep.interval()
            if intervals[lo] and intervals[hi]:
                counter[0] += 1
                emit.append((counter[0], lo, hi, rep.depth))

    _enumerate(bwt, callback=pass2)
    if not emit:
        return []
    rows = np.concatenate(
        [np.arange(lo, hi + 1, dtype=np.int64) for _, lo, hi, _ in emit])
    pos = bwt.positions_of_rows(rows)
    out = []
    k = 0
    for mid, lo, hi, depth in emit:
        for _ in range(hi - lo + 1):
            p = int(pos[k])
            doc = t.record_of(p)
            out.append((mid, doc, p - int(t.record_starts[doc - 1]) + 1,
                        depth))
            k += 1
    out.sort()
    return out


# ------------------------------------------------------------------ MAWs

def minimal_absent_words(text):
    """Minimal absent words as (position, length, symbol) triples: the
    word is text[position .. position+length-2] followed by the symbol.

    aWb is minimal absent when aW and Wb occur but aWb does not; W is
    then a maximal repeat, so scanning the left-extension matrices of
    the enumerated nodes against a scratch mask of the occurring
    right-extensions finds every candidate.  Separators never serve as
    a or b.
    """
    t = _as_text(text)
    bwt = bwt_from_suffix_array(t)
    m = t.m
    used = np.zeros(bwt.A, np.uint8)
    trips = []

    def cb(rep, scratch):
        if scratch.h < 2:
            return
        chars = [int(c) for c in rep.chars]
        for c in chars:
            used[c] = 1
        for a in scratch.left_extensions():
            if a < m:
                continue
            g = int(scratch.gamma[a])
            for q in range(g):
                used[scratch.A[a][q]] = 0
            for b in chars:
                if b >= m and used[b]:
                    trips.append((int(scratch.F[a][0]), rep.depth + 2, b))
            for q in range(g):
                used[scratch.A[a][q]] = 1
        for c in chars:
            used[c] = 0

    _enumerate(bwt, callback=cb)
    if not trips:
        return []
    rows = np.array([r for r, _, _ in trips], np.int64)
    pos = bwt.positions_of_rows(rows)
    out = [(int(p), ln, t.decode_code(b))
           for p, (_, ln, b) in zip(pos, trips)]
    out.sort()
    return out


# ---------------------------------------------- deterministic matching

def _mark_restart_positions(pair):
    """Positions i of the second record where the longest match against
    the first record satisfies MS[i] > MS[i-1] - 1, found by marking the
    rows of every aWb with W occurring in both records, Wb only in the
    second and aW absent from the first."""
    _, sides = _split_sides(pair)
    (bS, saS), (bT, saT) = sides
    mlen = int(pair.record_lens[1]) - 1
    rowmarks = np.zeros(bT.n + 2, np.uint8)

    def cb(g, scratches):
        if not (g.sides[0].present() and g.sides[1].present()):
            return
        sS, sT = scratches
        chars_s = set(int(c) for c in g.sides[0].chars)
        for a in sT.left_extensions():
            if int(sS.gamma[a]) > 0:
                continue            # aW occurs in the first record
            for q in range(int(sT.gamma[a])):
                b = int(sT.A[a][q])
                if b in chars_s:
                    continue        # Wb occurs in the first record
                rowmarks[int(sT.F[a][q]):int(sT.L[a][q]) + 1] = 1

    _enumerate_gen([bS, bT], callback=cb, mode="impure-only")
    marks = np.zeros(mlen + 2, np.uint8)
    for r in np.nonzero(rowmarks)[0]:
        p = int(saT[r - 1])         # the row's suffix starts with aWb
        if p + 1 <= mlen:
            marks[p + 1] = 1
    return marks


def matching_statistics_det(s, t, tau=1):
    """Per position of t, the length of its longest prefix occurring in
    s, rebuilt from restart and match-end marks gathered in two
    enumeration passes.  tau > 1 falls back to the synchronized-index
    scan, whose output this matches at tau = 1.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if tau > 1:
        from .bidirectional import BidirIndex, build_ms
        return build_ms(BidirIndex(Text([s, t])), tau=tau)
    from .bidirectional import MsArrays
    pair = Text([s, t])
    mlen = int(pair.record_lens[1]) - 1
    slen = int(pair.record_lens[0]) - 1
    start_bits = _mark_restart_positions(pair)
    rev_bits = _mark_restart_positions(pair.reversed_text())
    end_bits = np.zeros(mlen + 2, np.uint8)
    for q in np.nonzero(rev_bits)[0]:
        # a restart at reversed position q is a match end at mlen - q + 1
        end_bits[mlen - int(q) + 1] = 1

    in_s = np.zeros(pair.alphabet_size, bool)
    s_lo, s_hi = pair.record_bounds(1)
    in_s[pair.codes[s_lo - 1:s_hi - 1]] = True
    t_lo, t_hi = pair.record_bounds(2)
    codes_t = pair.codes[t_lo - 1:t_hi - 1]
    if mlen and slen and in_s[int(codes_t[-1])]:
        end_bits[mlen] = 1          # the boundary run ends at the last position

    # ends of zero-length stretches carry no run; the k-th surviving end
    # belongs to the k-th restart, so each fresh run consumes one mark
    ends = [int(j) for j in np.nonzero(end_bits)[0]
            if in_s[int(codes_t[int(j) - 1])]]
    ms = np.zeros(mlen, np.int64)
    ptr = 0
    prev = 0
    for i in range(1, mlen + 1):
        if not in_s[int(codes_t[i - 1])]:
            prev = 0
            continue
        if i == 1 or prev == 0 or start_bits[i]:
            while ptr < len(ends) and ends[ptr] < i:
                ptr += 1
            if ptr < len(ends):
                j = ends[ptr]
                ptr += 1
            else:
                j = mlen
            prev = j - i + 1
        else:
            prev -= 1
        ms[i - 1] = prev
    return MsArrays(ms, 1)


# -------------------------------------------------- kernels/complexities

def kmer_complexity(text, k):
    """Number of distinct length-k substrings, by adding one per node at
    depth >= k and subtracting its child count: only the loci of k-mers
    survive the telescoping."""
    if k < 1:
        raise ValueError("k must be >= 1")
    t = _as_text(text)
    n = t.n - t.m
    if k > n:
        return 0
    acc = [n + 1 - k]

    def cb(rep, scratch):
        if rep.depth >= k:
            acc[0] += 1 - rep.k

    _enumerate(bwt_from_suffix_array(t), callback=cb)
    return acc[0]


def substring_complexity(text):
    """Number of distinct nonempty substrings: the per-length telescoping
    sums to a depth-weighted correction of n(n+1)/2."""
    t = _as_text(text)
    n = t.n - t.m
    acc = [n * (n + 1) // 2]

    def cb(rep, scratch):
        acc[0] += (1 - rep.k) * rep.depth

    _enumerate(bwt_from_suffix_array(t), callback=cb)
    return acc[0]


def _edge_spans(t1, t2):
    """Edge records of the generalized suffix tree of two strings.

    Each record (lo, hi, u1, u2) says: every substring length k with
    lo <= k <= hi has a locus on this edge, occurring u1 times in the
    first string and u2 in the second.  Internal edges end at the child
    whose per-side intervals match; unit-width children are leaves whose
    span stops at the end of the record's real part.
    """
    t = Text([t1, t2])
    _, sides = _split_sides(t)
    (b1, sa1), (b2, sa2) = sides
    lens = (int(t.record_lens[0]), int(t.record_lens[1]))
    nodes = {}
    pend = []
    leaf = []

    def key_of(g):
        return tuple(s.interval() if s.width() > 0 else None
                     for s in g.sides)

    def cb(g, scratches):
        nodes[key_of(g)] = g.depth
        s1, s2 = g.sides
        c1 = {int(c): i for i, c in enumerate(s1.chars)}
        c2 = {int(c): i for i, c in enumerate(s2.chars)}
        for c in set(c1) | set(c2):
            iv1 = iv2 = None
            u1 = u2 = 0
            if c in c1:
                i = c1[c]
                iv1 = (int(s1.first[i]), int(s1.first[i + 1]) - 1)
                u1 = iv1[1] - iv1[0] + 1
            if c in c2:
                i = c2[c]
                iv2 = (int(s2.first[i]), int(s2.first[i + 1]) - 1)
                u2 = iv2[1] - iv2[0] + 1
            if u1 + u2 >= 2:
                pend.append((g.depth, (iv1, iv2), u1, u2))
            elif u1 == 1:
                leaf.append((g.depth, 0, iv1[0]))
            else:
                leaf.append((g.depth, 1, iv2[0]))

    _enumerate_gen([b1, b2], callback=cb, mode="all-nodes")
    edges = [(pd + 1, nodes[kc], u1, u2) for pd, kc, u1, u2 in pend]
    for pd, side, row in leaf:
        p = int((sa1 if side == 0 else sa2)[row - 1])
        edges.append((pd + 1, lens[side] - p,
                      1 - side, side))
    return edges, lens[0] - 1, lens[1] - 1


def kmer_kernel(t1, t2, k, probabilities=False):
    """Cosine similarity of the k-mer occurrence vectors of two strings.

    The per-length window normalization rescales each vector uniformly
    for fixed k, so the probability variant has the same cosine.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cross = s1 = s2 = 0
    edges, _, _ = _edge_spans(t1, t2)
    for lo, hi, u1, u2 in edges:
        if lo <= k <= hi:
            cross += u1 * u2
            s1 += u1 * u1
            s2 += u2 * u2
    if cross == s1 == s2:
        return 1.0 if cross else 0.0
    if cross == 0 or s1 == 0 or s2 == 0:
        return 0.0
    return cross / math.sqrt(s1 * s2)


def substring_kernel(t1, t2, probabilities=False):
    """Cosine similarity over the occurrence counts of all substrings;
    with probabilities, counts of length k are divided by the window
    count n - k + 1 of their string first."""
    edges, n1, n2 = _edge_spans(t1, t2)
    if not probabilities:
        cross = s1 = s2 = 0
        for lo, hi, u1, u2 in edges:
            if hi >= lo:
                w = hi - lo + 1
                cross += u1 * u2 * w
                s1 += u1 * u1 * w
                s2 += u2 * u2 * w
    else:
        top = max(n1, n2) + 1
        h12 = np.zeros(top + 1)
        h11 = np.zeros(top + 1)
        h22 = np.zeros(top + 1)
        for j in range(1, top + 1):
            w1 = n1 - j + 1
            w2 = n2 - j + 1
            h12[j] = h12[j - 1] + (1.0 / (w1 * w2) if w1 > 0 and w2 > 0
                                   else 0.0)
            h11[j] = h11[j - 1] + (1.0 / (w1 * w1) if w1 > 0 else 0.0)
            h22[j] = h22[j - 1] + (1.0 / (w2 * w2) if w2 > 0 else 0.0)
        cross = s1 = s2 = 0.0
        for lo, hi, u1, u2 in edges:
            if hi >= lo:
                cross += u1 * u2 * (h12[hi] - h12[lo - 1])
                s1 += u1 * u1 * (h11[hi] - h11[lo - 1])
                s2 += u2 * u2 * (h22[hi] - h22[lo - 1])
    if cross == s1 == s2:
        return 1.0 if cross else 0.0
    if cross == 0 or s1 == 0 or s2 == 0:
        return 0.0
    return cross / math.sqrt(s1 * s2)
