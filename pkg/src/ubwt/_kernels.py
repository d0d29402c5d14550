"""Compiled numeric cores: induced-sorting suffix construction, bitvector
rank/select, range-minimum scaffolding, the range-distinct recursion, and the
two depth-first traversal kernels (single text, and the two-way merge).

All row indexes in this module are 0-based; public wrappers translate.
"""

import numpy as np
from numba import njit

# ---------------------------------------------------------------- bit basics


@njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> 1) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> 2) & np.uint64(0x3333333333333333))
    x = (x + (x >> 4)) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> 56)


@njit(cache=True)
def bv_rank(words, blocks, i):
    """Number of ones among the first i bits (i >= 0)."""
    if i <= 0:
        return np.int64(0)
    w = i >> 6
    r = blocks[w >> 3]
    for k in range((w >> 3) << 3, w):
        r += _popcount64(words[k])
    rem = i & 63
    if rem:
        mask = (np.uint64(1) << np.uint64(rem)) - np.uint64(1)
        r += _popcount64(words[w] & mask)
    return r


@njit(cache=True)
def bv_select(words, blocks, samples, j, invert, n):
    """Position (1-based) of the j-th one (or j-th zero when invert)."""
    full = np.uint64(0xFFFFFFFFFFFFFFFF)
    w = np.int64(samples[(j - 1) >> 9])
    ones = blocks[w >> 3]
    for k in range((w >> 3) << 3, w):
        ones += _popcount64(words[k])
    if invert:
        cnt = (w << 6) - ones
    else:
        cnt = ones
    nw = words.shape[0]
    while w < nw:
        word = words[w]
        if invert:
            word = ~word & full
            rem = n - (w << 6)
            if rem <= 0:
                word = np.uint64(0)
            elif rem < 64:
                word &= (np.uint64(1) << np.uint64(rem)) - np.uint64(1)
        c = _popcount64(word)
        if cnt + c >= j:
            need = j - cnt
            pos = 0
            while True:
                if word & np.uint64(1):
                    need -= 1
                    if need == 0:
                        return np.int64((w << 6) + pos + 1)
                word >>= np.uint64(1)
                pos += 1
        cnt += c
        w += 1
    return np.int64(-1)


# --------------------------------------------------------- induced sorting


@njit(cache=True)
def _induce(T, SA, stype, bkt_start, bkt_end):
    n = T.shape[0]
    b = bkt_start.copy()
    for i in range(n):
        j = SA[i] - 1
        if j >= 0 and stype[j] == 0:
            SA[b[T[j]]] = j
            b[T[j]] += 1
    b2 = bkt_end.copy()
    for i in range(n - 1, -1, -1):
        j = SA[i] - 1
        if j >= 0 and stype[j] == 1:
            b2[T[j]] -= 1
            SA[b2[T[j]]] = j


@njit(cache=True)
def sais(T, K):
    """Suffix array of T (0-based starts); T[-1] must be the unique minimum."""
    n = T.shape[0]
    SA = np.full(n, -1, np.int64)
    if n == 1:
        SA[0] = 0
        return SA
    stype = np.zeros(n, np.uint8)
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if T[i] < T[i + 1]:
            stype[i] = 1
        elif T[i] > T[i + 1]:
            stype[i] = 0
        else:
            stype[i] = stype[i + 1]
    bkt_start = np.zeros(K, np.int64)
    bkt_end = np.zeros(K, np.int64)
    for i in range(n):
        bkt_end[T[i]] += 1
    s = 0
    for c in range(K):
        bkt_start[c] = s
        s += bkt_end[c]
        bkt_end[c] = s
    b2 = bkt_end.copy()
    for i in range(1, n):
        if stype[i] == 1 and stype[i - 1] == 0:
            b2[T[i]] -= 1
            SA[b2[T[i]]] = i
    _induce(T, SA, stype, bkt_start, bkt_end)
    nlms = 0
    for i in range(n):
        j = SA[i]
        if j > 0 and stype[j] == 1 and stype[j - 1] == 0:
            SA[nlms] = j
            nlms += 1
    for i in range(nlms, n):
        SA[i] = -1
    name = 0
    prev = -1
    for i in range(nlms):
        pos = SA[i]
        if prev >= 0:
            same = True
            d = 0
            while True:
                pa = prev + d
                pb = pos + d
                if pa == n or pb == n:
                    same = False
                    break
                if T[pa] != T[pb] or stype[pa] != stype[pb]:
                    same = False
                    break
                if d > 0 and stype[pa] == 1 and stype[pa - 1] == 0:
                    break
                d += 1
            if not same:
                name += 1
        SA[nlms + (pos >> 1)] = name
        prev = pos
    lms_pos = np.empty(nlms, np.int64)
    red = np.empty(nlms, np.int64)
    j = 0
    for i in range(1, n):
        if stype[i] == 1 and stype[i - 1] == 0:
            lms_pos[j] = i
            red[j] = SA[nlms + (i >> 1)]
            j += 1
    tmp = np.empty(nlms, np.int64)
    if name + 1 < nlms:
        red_sa = sais(red, name + 1)
        for i in range(nlms):
            tmp[i] = lms_pos[red_sa[i]]
    else:
        for i in range(nlms):
            tmp[red[i]] = lms_pos[i]
    for i in range(n):
        SA[i] = -1
    b2 = bkt_end.copy()
    for i in range(nlms - 1, -1, -1):
        p = tmp[i]
        b2[T[p]] -= 1
        SA[b2[T[p]]] = p
    _induce(T, SA, stype, bkt_start, bkt_end)
    return SA


@njit(cache=True)
def adjacent_rotation_dup(d, order, n):
    """Index i>0 where rotation order[i] equals order[i-1], else -1.

    d is the doubled symbol array; order holds 0-based rotation starts.
    """
    for i in range(1, order.shape[0]):
        a = order[i - 1]
        b = order[i]
        same = True
        for k in range(n):
            if d[a + k] != d[b + k]:
                same = False
                break
        if same:
            return np.int64(i)
    return np.int64(-1)


# ------------------------------------------------------------------ LF walks


@njit(cache=True)
def lf_from_bwt(bwt, C):
    """LF as an explicit permutation (0-based rows)."""
    n = bwt.shape[0]
    lf = np.empty(n, np.int64)
    cnt = C[:-1].copy()
    for i in range(n):
        c = bwt[i]
        lf[i] = cnt[c]
        cnt[c] += 1
    return lf


@njit(cache=True)
def inverse_perm(p):
    n = p.shape[0]
    q = np.empty(n, np.int64)
    for i in range(n):
        q[p[i]] = i
    return q


@njit(cache=True)
def walk_to_mark(lf, marked, row):
    """Follow LF until a marked row; returns (row, steps)."""
    steps = 0
    while marked[row] == 0:
        row = lf[row]
        steps += 1
    return row, steps


@njit(cache=True)
def inversion_positions(psi, start_row, start_pos, count, want, out_pos):
    """Visit rows of successive positions; record positions of wanted rows.

    Walks psi from start_row, which must be the row of position start_pos;
    out_pos is indexed by row (-1 elsewhere).
    """
    r = start_row
    for t in range(count):
        if want[r]:
            out_pos[r] = start_pos + t
        r = psi[r]
    return r


@njit(cache=True)
def fill_text_from_lf(bwt, lf, row1, out):
    """Reconstruct the text right-to-left starting from the smallest-rotation
    row; returns number of rows visited (cycle check)."""
    n = bwt.shape[0]
    r = row1
    visited = 0
    for i in range(n - 1, -1, -1):
        out[i] = bwt[r]
        r = lf[r]
        visited += 1
        if r == row1 and i != 0:
            return visited
    if r != row1:
        return -1
    return visited


# ------------------------------------------------------- block-RMQ machinery

_RMQ_BLOCK = 64


@njit(cache=True, inline="always")
def _rmq_query(arr, bval, bpos, sval, spos, loglut, i, j):
    """Leftmost position of the minimum of arr[i..j] (inclusive, 0-based)."""
    bi = i >> 6
    bj = j >> 6
    if bi == bj:
        best = i
        for k in range(i + 1, j + 1):
            if arr[k] < arr[best]:
                best = k
        return np.int64(best)
    best = i
    for k in range(i + 1, ((bi + 1) << 6)):
        if arr[k] < arr[best]:
            best = k
    if bj - bi >= 2:
        lo = bi + 1
        hi = bj - 1
        ln = hi - lo + 1
        l = loglut[ln]
        v1 = sval[l, lo]
        p1 = spos[l, lo]
        v2 = sval[l, hi - (1 << l) + 1]
        p2 = spos[l, hi - (1 << l) + 1]
        if v2 < v1:
            v1 = v2
            p1 = p2
        elif v1 == v2 and p2 < p1:
            p1 = p2
        if v1 < arr[best]:
            best = p1
    for k in range((bj << 6), j + 1):
        if arr[k] < arr[best]:
            best = k
    return np.int64(best)


def build_rmq(arr):
    """Block minima plus a sparse table over blocks; arr is retained."""
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    n = arr.shape[0]
    nb = max(1, (n + _RMQ_BLOCK - 1) // _RMQ_BLOCK)
    pad = nb * _RMQ_BLOCK - n
    big = np.iinfo(np.int64).max // 4
    padded = np.concatenate([arr, np.full(pad, big, np.int64)]) if pad else arr
    mat = padded.reshape(nb, _RMQ_BLOCK)
    bpos_local = mat.argmin(axis=1)
    bval = mat[np.arange(nb), bpos_local]
    bpos = bpos_local + np.arange(nb, dtype=np.int64) * _RMQ_BLOCK
    levels = max(1, int(np.floor(np.log2(nb))) + 1)
    sval = np.empty((levels, nb), np.int64)
    spos = np.empty((levels, nb), np.int64)
    sval[0] = bval
    spos[0] = bpos
    for l in range(1, levels):
        h = 1 << (l - 1)
        m = nb - (1 << l) + 1
        if m <= 0:
            sval[l] = sval[l - 1]
            spos[l] = spos[l - 1]
            continue
        left_v = sval[l - 1, :m]
        right_v = sval[l - 1, h:h + m]
        take_left = left_v <= right_v
        sval[l, :m] = np.where(take_left, left_v, right_v)
        spos[l, :m] = np.where(take_left, spos[l - 1, :m], spos[l - 1, h:h + m])
        sval[l, m:] = sval[l - 1, m:]
        spos[l, m:] = spos[l - 1, m:]
    loglut = np.zeros(nb + 1, np.int64)
    for x in range(2, nb + 1):
        loglut[x] = loglut[x >> 1] + 1
    return arr, bval, bpos, sval, spos, loglut


@njit(cache=True)
def rmq_min(arr, bval, bpos, sval, spos, loglut, i, j):
    return _rmq_query(arr, bval, bpos, sval, spos, loglut, i, j)


# --------------------------------------------------- range-distinct recursion


@njit(cache=True)
def build_pnp(seq, A):
    """Previous-occurrence, negated-next-occurrence, and partial ranks."""
    n = seq.shape[0]
    P = np.empty(n, np.int64)
    Nn = np.empty(n, np.int64)
    prank = np.empty(n, np.int64)
    last = np.full(A, -1, np.int64)
    cnt = np.zeros(A, np.int64)
    for i in range(n):
        c = seq[i]
        P[i] = last[c]
        last[c] = i
        cnt[c] += 1
        prank[i] = cnt[c]
    nxt = np.full(A, n, np.int64)
    for i in range(n - 1, -1, -1):
        c = seq[i]
        Nn[i] = -nxt[c]
        nxt[c] = i
    return P, Nn, prank


@njit(cache=True)
def rd_pass(arr, bval, bpos, sval, spos, loglut, lo, hi, thresh, out, stack):
    """Positions k in [lo..hi] with arr[k] < thresh, via RMQ splitting.

    Returns (count, rmq_calls); out receives the positions (unordered).
    """
    cnt = 0
    calls = 0
    top = 0
    stack[0] = lo
    stack[1] = hi
    top = 1
    while top > 0:
        b = stack[2 * top - 1]
        a = stack[2 * top - 2]
        top -= 1
        if a > b:
            continue
        k = _rmq_query(arr, bval, bpos, sval, spos, loglut, a, b)
        calls += 1
        if arr[k] >= thresh:
            continue
        out[cnt] = k
        cnt += 1
        stack[2 * top] = a
        stack[2 * top + 1] = k - 1
        top += 1
        stack[2 * top] = k + 1
        stack[2 * top + 1] = b
        top += 1
    return cnt, calls


# ------------------------------------------------- single-text DFS traversal


@njit(cache=True)
def enum_single(bwt, C, A,
                P, bvP, bpP, svP, spP, llP,
                Nn, bvN, bpN, svN, spN, llN,
                prank, collect):
    """Depth-first walk over all right-maximal substrings of one text.

    Returns (node_count, tuple_count, max_stack, err, out_lo, out_hi, out_d).
    Children are pushed widest-first (ties: larger symbol first).
    """
    n = bwt.shape[0]
    # scratch
    gamma = np.zeros(A, np.int64)
    Af = np.zeros(A * A, np.int64)
    Ff = np.zeros(A * A, np.int64)
    Lf = np.zeros(A * A, np.int64)
    touched = np.empty(A, np.int64)
    out1 = np.empty(n + 2, np.int64)
    out2 = np.empty(n + 2, np.int64)
    rstack = np.empty(2 * n + 8, np.int64)
    cand = np.empty(A, np.int64)
    candw = np.empty(A, np.int64)

    cap_nodes = 256
    st_k = np.empty(cap_nodes, np.int64)
    st_d = np.empty(cap_nodes, np.int64)
    st_off = np.empty(cap_nodes, np.int64)
    # sized for the root frame, which is copied in before the growth checks
    cap_heap = max(4096, A + 2)
    ch_heap = np.empty(cap_heap, np.int64)
    fi_heap = np.empty(cap_heap, np.int64)

    cap_out = 64 if collect == 0 else (2 * n + 4)
    out_lo = np.empty(cap_out, np.int64)
    out_hi = np.empty(cap_out, np.int64)
    out_d = np.empty(cap_out, np.int64)

    cur_chars = np.empty(A + 1, np.int64)
    cur_first = np.empty(A + 2, np.int64)

    # root
    k0 = 0
    for c in range(A):
        if C[c + 1] > C[c]:
            cur_chars[k0] = c
            cur_first[k0] = C[c]
            k0 += 1
    cur_first[k0] = n
    top = 0
    st_k[0] = k0
    st_d[0] = 0
    st_off[0] = 0
    for t in range(k0):
        ch_heap[t] = cur_chars[t]
        fi_heap[t] = cur_first[t]
    fi_heap[k0] = n
    ch_len = k0
    fi_len = k0 + 1
    top = 1

    node_count = 0
    tuple_count = 0
    max_stack = 1
    err = 0

    while top > 0:
        top -= 1
        k = st_k[top]
        d = st_d[top]
        off = st_off[top]
        for t in range(k):
            cur_chars[t] = ch_heap[off + t]
        for t in range(k + 1):
            cur_first[t] = fi_heap[off + top + t]
        ch_len = off
        fi_len = off + top

        node_count += 1
        if collect:
            if node_count > cap_out:
                err = 3
                break
            out_lo[node_count - 1] = cur_first[0]
            out_hi[node_count - 1] = cur_first[k] - 1
            out_d[node_count - 1] = d

        nt = 0
        for j in range(k):
            lo = cur_first[j]
            hi = cur_first[j + 1] - 1
            c1, _ = rd_pass(P, bvP, bpP, svP, spP, llP, lo, hi, lo, out1, rstack)
            c2, _ = rd_pass(Nn, bvN, bpN, svN, spN, llN, lo, hi, -hi, out2, rstack)
            for t in range(c1):
                pos = out1[t]
                a = bwt[pos]
                slot = gamma[a]
                if slot == 0:
                    touched[nt] = a
                    nt += 1
                Af[a * A + slot] = cur_chars[j]
                Ff[a * A + slot] = C[a] + prank[pos] - 1
            for t in range(c2):
                pos = out2[t]
                a = bwt[pos]
                Lf[a * A + gamma[a]] = C[a] + prank[pos] - 1
            for t in range(c1):
                gamma[bwt[out1[t]]] += 1
            tuple_count += c1

        ncand = 0
        for t in range(nt):
            a = touched[t]
            g = gamma[a]
            if g >= 2:
                w = Lf[a * A + g - 1] - Ff[a * A] + 1
                cand[ncand] = a
                candw[ncand] = w
                ncand += 1
        # sort: width desc, symbol desc (insertion sort)
        for x in range(1, ncand):
            ca = cand[x]
            cw = candw[x]
            y = x - 1
            while y >= 0 and (candw[y] < cw or (candw[y] == cw and cand[y] < ca)):
                cand[y + 1] = cand[y]
                candw[y + 1] = candw[y]
                y -= 1
            cand[y + 1] = ca
            candw[y + 1] = cw

        for x in range(ncand):
            a = cand[x]
            g = gamma[a]
            if top + 1 > cap_nodes:
                new_cap = cap_nodes * 2
                nk = np.empty(new_cap, np.int64)
                nd = np.empty(new_cap, np.int64)
                no = np.empty(new_cap, np.int64)
                nk[:cap_nodes] = st_k
                nd[:cap_nodes] = st_d
                no[:cap_nodes] = st_off
                st_k = nk
                st_d = nd
                st_off = no
                cap_nodes = new_cap
            need = ch_len + g + 1
            if need + top + 2 > cap_heap:
                new_cap = max(cap_heap * 2, need + top + 64)
                nch = np.empty(new_cap, np.int64)
                nf = np.empty(new_cap, np.int64)
                for q in range(ch_len):
                    nch[q] = ch_heap[q]
                for q in range(fi_len):
                    nf[q] = fi_heap[q]
                ch_heap = nch
                fi_heap = nf
                cap_heap = new_cap
            st_k[top] = g
            st_d[top] = d + 1
            st_off[top] = ch_len
            for q in range(g):
                ch_heap[ch_len + q] = Af[a * A + q]
                fi_heap[fi_len + q] = Ff[a * A + q]
            fi_heap[fi_len + g] = Lf[a * A + g - 1] + 1
            ch_len += g
            fi_len += g + 1
            top += 1

        if top > max_stack:
            max_stack = top
        for t in range(nt):
            gamma[touched[t]] = 0

    kept = node_count if collect else 0
    return node_count, tuple_count, max_stack, err, out_lo[:kept], out_hi[:kept], out_d[:kept]


# ------------------------------------------------------- two-way BWT merge


@njit(cache=True)
def merge_two(bwt1, C1,
              P1, bvP1, bpP1, svP1, spP1, llP1,
              N1, bvN1, bpN1, svN1, spN1, llN1,
              prank1,
              bwt2, C2,
              P2, bvP2, bpP2, svP2, spP2, llP2,
              N2, bvN2, bpN2, svN2, spN2, llN2,
              prank2,
              Ag, flags):
    """Interleave flags for the merged transform of two sequences.

    Both inputs must use the same dense symbol coding.  Walks only strings
    whose interval has rows from both inputs; whenever a child block of such
    a string is single-sided, all its rows keep their relative order in the
    merged transform and get flagged 1 or 2.  flags must be zero-initialised
    with length len(bwt1)+len(bwt2).

    Returns (err, node_count, tuple_count, max_stack).  err=2 means some
    suffix/rotation occurs in both inputs (the merged order is ill-defined).
    """
    n1 = bwt1.shape[0]
    n2 = bwt2.shape[0]
    gamma1 = np.zeros(Ag, np.int64)
    gamma2 = np.zeros(Ag, np.int64)
    touched1 = np.empty(Ag, np.int64)
    touched2 = np.empty(Ag, np.int64)
    sym2slot = np.empty(Ag, np.int64)
    off1 = np.empty(Ag, np.int64)
    off2 = np.empty(Ag, np.int64)
    cur = np.empty(Ag, np.int64)
    out1 = np.empty(max(n1, n2) + 2, np.int64)
    out2 = np.empty(max(n1, n2) + 2, np.int64)
    tmpq = np.empty(max(n1, n2) + 2, np.int64)
    rstack = np.empty(2 * max(n1, n2) + 8, np.int64)

    cap_t = n1 + n2 + 4
    tb_side = np.empty(cap_t, np.int64)
    tb_sym = np.empty(cap_t, np.int64)
    tb_char = np.empty(cap_t, np.int64)
    tb_F = np.empty(cap_t, np.int64)
    tb_L = np.empty(cap_t, np.int64)
    s1_char = np.empty(n1 + 2, np.int64)
    s1_F = np.empty(n1 + 2, np.int64)
    s1_L = np.empty(n1 + 2, np.int64)
    s2_char = np.empty(n2 + 2, np.int64)
    s2_F = np.empty(n2 + 2, np.int64)
    s2_L = np.empty(n2 + 2, np.int64)
    cand = np.empty(Ag, np.int64)
    candw = np.empty(Ag, np.int64)

    cap_nodes = 256
    st_k1 = np.empty(cap_nodes, np.int64)
    st_k2 = np.empty(cap_nodes, np.int64)
    st_d = np.empty(cap_nodes, np.int64)
    st_o1 = np.empty(cap_nodes, np.int64)
    st_o2 = np.empty(cap_nodes, np.int64)
    # the root frame is copied in before any growth check runs, so the
    # child heaps must hold one full alphabet from the start
    cap_h1 = max(4096, Ag + 2)
    cap_h2 = max(4096, Ag + 2)
    ch1 = np.empty(cap_h1, np.int64)
    fi1 = np.empty(cap_h1, np.int64)
    ch2 = np.empty(cap_h2, np.int64)
    fi2 = np.empty(cap_h2, np.int64)

    cur_c1 = np.empty(Ag + 1, np.int64)
    cur_f1 = np.empty(Ag + 2, np.int64)
    cur_c2 = np.empty(Ag + 1, np.int64)
    cur_f2 = np.empty(Ag + 2, np.int64)

    k1 = 0
    for c in range(Ag):
        if C1[c + 1] > C1[c]:
            cur_c1[k1] = c
            cur_f1[k1] = C1[c]
            k1 += 1
    cur_f1[k1] = n1
    k2 = 0
    for c in range(Ag):
        if C2[c + 1] > C2[c]:
            cur_c2[k2] = c
            cur_f2[k2] = C2[c]
            k2 += 1
    cur_f2[k2] = n2

    st_k1[0] = k1
    st_k2[0] = k2
    st_d[0] = 0
    st_o1[0] = 0
    st_o2[0] = 0
    for t in range(k1):
        ch1[t] = cur_c1[t]
        fi1[t] = cur_f1[t]
    fi1[k1] = n1
    for t in range(k2):
        ch2[t] = cur_c2[t]
        fi2[t] = cur_f2[t]
    fi2[k2] = n2
    h1_len = k1
    f1_len = k1 + 1
    h2_len = k2
    f2_len = k2 + 1
    top = 1

    node_count = 0
    tuple_count = 0
    max_stack = 1
    err = 0

    while top > 0:
        top -= 1
        k1 = st_k1[top]
        k2 = st_k2[top]
        d = st_d[top]
        o1 = st_o1[top]
        o2 = st_o2[top]
        for t in range(k1):
            cur_c1[t] = ch1[o1 + t]
        for t in range(k1 + 1):
            cur_f1[t] = fi1[o1 + top + t]
        for t in range(k2):
            cur_c2[t] = ch2[o2 + t]
        for t in range(k2 + 1):
            cur_f2[t] = fi2[o2 + top + t]
        h1_len = o1
        f1_len = o1 + top
        h2_len = o2
        f2_len = o2 + top
        node_count += 1

        if d > n1 + n2:
            err = 2
            break

        # emit single-sided child blocks
        x = cur_f1[0] + cur_f2[0]
        p1 = 0
        p2 = 0
        while p1 < k1 or p2 < k2:
            if p2 >= k2 or (p1 < k1 and cur_c1[p1] < cur_c2[p2]):
                w = cur_f1[p1 + 1] - cur_f1[p1]
                for q in range(x, x + w):
                    flags[q] = 1
                x += w
                p1 += 1
            elif p1 >= k1 or (p2 < k2 and cur_c2[p2] < cur_c1[p1]):
                w = cur_f2[p2 + 1] - cur_f2[p2]
                for q in range(x, x + w):
                    flags[q] = 2
                x += w
                p2 += 1
            else:
                x += (cur_f1[p1 + 1] - cur_f1[p1]) + (cur_f2[p2 + 1] - cur_f2[p2])
                p1 += 1
                p2 += 1

        # collect left-extension tuples
        nt1 = 0
        nt2 = 0
        ntup = 0
        for j in range(k1):
            lo = cur_f1[j]
            hi = cur_f1[j + 1] - 1
            c1cnt, _ = rd_pass(P1, bvP1, bpP1, svP1, spP1, llP1, lo, hi, lo, out1, rstack)
            c2cnt, _ = rd_pass(N1, bvN1, bpN1, svN1, spN1, llN1, lo, hi, -hi, out2, rstack)
            for t in range(c1cnt):
                sym2slot[bwt1[out1[t]]] = t
            for t in range(c2cnt):
                pos = out2[t]
                tmpq[sym2slot[bwt1[pos]]] = prank1[pos]
            for t in range(c1cnt):
                pos = out1[t]
                a = bwt1[pos]
                tb_side[ntup] = 1
                tb_sym[ntup] = a
                tb_char[ntup] = cur_c1[j]
                tb_F[ntup] = C1[a] + prank1[pos] - 1
                tb_L[ntup] = C1[a] + tmpq[t] - 1
                ntup += 1
                if gamma1[a] == 0:
                    touched1[nt1] = a
                    nt1 += 1
                gamma1[a] += 1
            tuple_count += c1cnt
        for j in range(k2):
            lo = cur_f2[j]
            hi = cur_f2[j + 1] - 1
            c1cnt, _ = rd_pass(P2, bvP2, bpP2, svP2, spP2, llP2, lo, hi, lo, out1, rstack)
            c2cnt, _ = rd_pass(N2, bvN2, bpN2, svN2, spN2, llN2, lo, hi, -hi, out2, rstack)
            for t in range(c1cnt):
                sym2slot[bwt2[out1[t]]] = t
            for t in range(c2cnt):
                pos = out2[t]
                tmpq[sym2slot[bwt2[pos]]] = prank2[pos]
            for t in range(c1cnt):
                pos = out1[t]
                a = bwt2[pos]
                tb_side[ntup] = 2
                tb_sym[ntup] = a
                tb_char[ntup] = cur_c2[j]
                tb_F[ntup] = C2[a] + prank2[pos] - 1
                tb_L[ntup] = C2[a] + tmpq[t] - 1
                ntup += 1
                if gamma2[a] == 0:
                    touched2[nt2] = a
                    nt2 += 1
                gamma2[a] += 1
            tuple_count += c1cnt

        # scatter tuples into per-(side, symbol) segments, block order kept
        run = 0
        for idx in range(nt1):
            a = touched1[idx]
            off1[a] = run
            run += gamma1[a]
        run = 0
        for idx in range(nt2):
            a = touched2[idx]
            off2[a] = run
            run += gamma2[a]
        for idx in range(nt1):
            cur[touched1[idx]] = off1[touched1[idx]]
        for t in range(ntup):
            if tb_side[t] == 1:
                a = tb_sym[t]
                p = cur[a]
                s1_char[p] = tb_char[t]
                s1_F[p] = tb_F[t]
                s1_L[p] = tb_L[t]
                cur[a] = p + 1
        for idx in range(nt2):
            cur[touched2[idx]] = off2[touched2[idx]]
        for t in range(ntup):
            if tb_side[t] == 2:
                a = tb_sym[t]
                p = cur[a]
                s2_char[p] = tb_char[t]
                s2_F[p] = tb_F[t]
                s2_L[p] = tb_L[t]
                cur[a] = p + 1

        # push two-sided right-maximal children
        ncand = 0
        for idx in range(nt1):
            a = touched1[idx]
            g1 = gamma1[a]
            g2 = gamma2[a]
            if g1 >= 1 and g2 >= 1:
                if g1 >= 2 or g2 >= 2 or s1_char[off1[a]] != s2_char[off2[a]]:
                    w = (s1_L[off1[a] + g1 - 1] - s1_F[off1[a]] + 1) + (s2_L[off2[a] + g2 - 1] - s2_F[off2[a]] + 1)
                    cand[ncand] = a
                    candw[ncand] = w
                    ncand += 1
        for xq in range(1, ncand):
            ca = cand[xq]
            cw = candw[xq]
            y = xq - 1
            while y >= 0 and (candw[y] < cw or (candw[y] == cw and cand[y] < ca)):
                cand[y + 1] = cand[y]
                candw[y + 1] = candw[y]
                y -= 1
            cand[y + 1] = ca
            candw[y + 1] = cw

        for xq in range(ncand):
            a = cand[xq]
            g1 = gamma1[a]
            g2 = gamma2[a]
            if top + 1 > cap_nodes:
                new_cap = cap_nodes * 2
                a1 = np.empty(new_cap, np.int64)
                a2 = np.empty(new_cap, np.int64)
                a3 = np.empty(new_cap, np.int64)
                a4 = np.empty(new_cap, np.int64)
                a5 = np.empty(new_cap, np.int64)
                a1[:cap_nodes] = st_k1
                a2[:cap_nodes] = st_k2
                a3[:cap_nodes] = st_d
                a4[:cap_nodes] = st_o1
                a5[:cap_nodes] = st_o2
                st_k1 = a1
                st_k2 = a2
                st_d = a3
                st_o1 = a4
                st_o2 = a5
                cap_nodes = new_cap
            need1 = h1_len + g1 + 1 + top + 2
            if need1 > cap_h1:
                new_cap = max(cap_h1 * 2, need1 + 64)
                b1 = np.empty(new_cap, np.int64)
                b2 = np.empty(new_cap, np.int64)
                for q in range(h1_len):
                    b1[q] = ch1[q]
                for q in range(f1_len):
                    b2[q] = fi1[q]
                ch1 = b1
                fi1 = b2
                cap_h1 = new_cap
            need2 = h2_len + g2 + 1 + top + 2
            if need2 > cap_h2:
                new_cap = max(cap_h2 * 2, need2 + 64)
                b1 = np.empty(new_cap, np.int64)
                b2 = np.empty(new_cap, np.int64)
                for q in range(h2_len):
                    b1[q] = ch2[q]
                for q in range(f2_len):
                    b2[q] = fi2[q]
                ch2 = b1
                fi2 = b2
                cap_h2 = new_cap
            st_k1[top] = g1
            st_k2[top] = g2
            st_d[top] = d + 1
            st_o1[top] = h1_len
            st_o2[top] = h2_len
            for q in range(g1):
                ch1[h1_len + q] = s1_char[off1[a] + q]
                fi1[f1_len + q] = s1_F[off1[a] + q]
            fi1[f1_len + g1] = s1_L[off1[a] + g1 - 1] + 1
            h1_len += g1
            f1_len += g1 + 1
            for q in range(g2):
                ch2[h2_len + q] = s2_char[off2[a] + q]
                fi2[f2_len + q] = s2_F[off2[a] + q]
            fi2[f2_len + g2] = s2_L[off2[a] + g2 - 1] + 1
            h2_len += g2
            f2_len += g2 + 1
            top += 1

        if top > max_stack:
            max_stack = top
        for t in range(nt1):
            gamma1[touched1[t]] = 0
        for t in range(nt2):
            gamma2[touched2[t]] = 0

    return err, node_count, tuple_count, max_stack


# --------------------------------------------------------------------------
# balanced-parentheses navigation
#
# A parenthesis sequence of n_bits bits is stored little-endian inside
# 64-bit words (bit k of word w is position (w << 6) + k + 1, 1-based;
# 1 = open, 0 = close).  E[p] denotes the excess after the first p bits,
# with E[0] = 0.  The directory keeps, per word, the absolute excess
# before the word plus a segment tree over per-word (min, max) absolute
# excess, which turns the three search primitives below into O(log n)
# climbs instead of linear scans.


@njit(cache=True)
def bp_build(words, n_bits):
    nw = (n_bits + 63) >> 6
    base = np.zeros(nw + 1, dtype=np.int64)
    size = 1
    while size < nw:
        size <<= 1
    big = np.int64(1) << np.int64(62)
    tmin = np.full(2 * size, big, dtype=np.int64)
    tmax = np.full(2 * size, -big, dtype=np.int64)
    for w in range(nw):
        word = words[w]
        lim = n_bits - (w << 6)
        if lim > 64:
            lim = 64
        e = np.int64(0)
        mn = big
        mx = -big
        for k in range(lim):
            if (word >> np.uint64(k)) & np.uint64(1):
                e += 1
            else:
                e -= 1
            if e < mn:
                mn = e
            if e > mx:
                mx = e
        base[w + 1] = base[w] + e
        tmin[size + w] = base[w] + mn
        tmax[size + w] = base[w] + mx
    for v in range(size - 1, 0, -1):
        l = 2 * v
        r = l + 1
        tmin[v] = tmin[l] if tmin[l] < tmin[r] else tmin[r]
        tmax[v] = tmax[l] if tmax[l] > tmax[r] else tmax[r]
    return base, tmin, tmax, np.int64(size)


@njit(cache=True)
def bp_excess(words, base, p):
    # E[p] for 0 <= p <= n_bits.
    if p <= 0:
        return np.int64(0)
    w = (p - 1) >> 6
    k = (p - 1) & 63
    word = words[w]
    if k == 63:
        masked = word
    else:
        masked = word & ((np.uint64(1) << np.uint64(k + 1)) - np.uint64(1))
    ones = np.int64(0)
    m = masked
    while m:
        m &= m - np.uint64(1)
        ones += 1
    return base[w] + 2 * ones - np.int64(k + 1)


@njit(cache=True)
def bp_fwd_search(words, n_bits, base, tmin, tmax, size, p, target):
    # Smallest q > p with E[q] == target, or 0 when none exists.
    if p >= n_bits:
        return np.int64(0)
    e = bp_excess(words, base, p)
    nw = (n_bits + 63) >> 6
    w = p >> 6
    if w < nw:
        word = words[w]
        lim = n_bits - (w << 6)
        if lim > 64:
            lim = 64
        for k in range(p & 63, lim):
            if (word >> np.uint64(k)) & np.uint64(1):
                e += 1
            else:
                e -= 1
            if e == target:
                return np.int64((w << 6) + k + 1)
    # climb to the first later word whose excess range covers the target
    v = size + w
    found = np.int64(-1)
    while v > 1:
        if (v & 1) == 0:
            s = v + 1
            if tmin[s] <= target and target <= tmax[s]:
                while s < size:
                    s <<= 1
                    if not (tmin[s] <= target and target <= tmax[s]):
                        s += 1
                found = s - size
                break
        v >>= 1
    if found < 0:
        return np.int64(0)
    word = words[found]
    e = base[found]
    lim = n_bits - (found << 6)
    if lim > 64:
        lim = 64
    for k in range(lim):
        if (word >> np.uint64(k)) & np.uint64(1):
            e += 1
        else:
            e -= 1
        if e == target:
            return np.int64((found << 6) + k + 1)
    return np.int64(0)


@njit(cache=True)
def bp_bwd_search(words, n_bits, base, tmin, tmax, size, p, target):
    # Largest q < p with E[q] == target; 0 counts (E[0] = 0), -1 when none.
    if p < 1:
        return np.int64(-1)
    w = (p - 1) >> 6
    word = words[w]
    e = bp_excess(words, base, p)
    cur = p
    lo_pos = (w << 6) + 1
    while cur >= lo_pos:
        k = cur - 1 - (w << 6)
        if (word >> np.uint64(k)) & np.uint64(1):
            e -= 1
        else:
            e += 1
        cur -= 1
        if e == target:
            return np.int64(cur)
    v = size + w
    found = np.int64(-1)
    while v > 1:
        if (v & 1) == 1:
            s = v - 1
            if tmin[s] <= target and target <= tmax[s]:
                while s < size:
                    s = 2 * s + 1
                    if not (tmin[s] <= target and target <= tmax[s]):
                        s -= 1
                found = s - size
                break
        v >>= 1
    if found < 0:
        if target == 0:
            return np.int64(0)
        return np.int64(-1)
    word = words[found]
    lim = n_bits - (found << 6)
    if lim > 64:
        lim = 64
    e = base[found + 1]
    cur = (found << 6) + lim
    if e == target:
        return np.int64(cur)
    lo_pos = (found << 6) + 1
    while cur >= lo_pos:
        k = cur - 1 - (found << 6)
        if (word >> np.uint64(k)) & np.uint64(1):
            e -= 1
        else:
            e += 1
        cur -= 1
        if e == target:
            return np.int64(cur)
    return np.int64(-1)


@njit(cache=True)
def _bp_leftmost_leq(tmin, size, start_w, target):
    # Smallest leaf index >= start_w whose tmin <= target, or -1.
    v = size + start_w
    if tmin[v] <= target:
        return np.int64(start_w)
    while v > 1:
        if (v & 1) == 0:
            s = v + 1
            if tmin[s] <= target:
                while s < size:
                    s <<= 1
                    if tmin[s] > target:
                        s += 1
                return np.int64(s - size)
        v >>= 1
    return np.int64(-1)


@njit(cache=True)
def bp_min_excess_pos(words, n_bits, base, tmin, tmax, size, i, j):
    # (m, q): m = min E[p] over i <= p <= j, q = leftmost p achieving it.
    wi = (i - 1) >> 6
    wj = (j - 1) >> 6
    e = bp_excess(words, base, i)
    best = e
    pos = i
    word = words[wi]
    lim = n_bits - (wi << 6)
    if lim > 64:
        lim = 64
    hi_k = ((j - 1) & 63) if wj == wi else lim - 1
    for k in range(((i - 1) & 63) + 1, hi_k + 1):
        if (word >> np.uint64(k)) & np.uint64(1):
            e += 1
        else:
            e -= 1
        if e < best:
            best = e
            pos = (wi << 6) + k + 1
    if wj > wi:
        lo_w = wi + 1
        hi_w = wj - 1
        if hi_w >= lo_w:
            mid_min = np.int64(1) << np.int64(62)
            a = lo_w + size
            b = hi_w + size
            while a <= b:
                if (a & 1) == 1:
                    if tmin[a] < mid_min:
                        mid_min = tmin[a]
                    a += 1
                if (b & 1) == 0:
                    if tmin[b] < mid_min:
                        mid_min = tmin[b]
                    b -= 1
                a >>= 1
                b >>= 1
            if mid_min < best:
                w = _bp_leftmost_leq(tmin, size, lo_w, mid_min)
                word = words[w]
                lim = n_bits - (w << 6)
                if lim > 64:
                    lim = 64
                e = base[w]
                for k in range(lim):
                    if (word >> np.uint64(k)) & np.uint64(1):
                        e += 1
                    else:
                        e -= 1
                    if e == mid_min:
                        best = mid_min
                        pos = (w << 6) + k + 1
                        break
        word = words[wj]
        e = base[wj]
        for k in range(((j - 1) & 63) + 1):
            if (word >> np.uint64(k)) & np.uint64(1):
                e += 1
            else:
                e -= 1
            if e < best:
                best = e
                pos = (wj << 6) + k + 1
    return best, pos


@njit(cache=True)
def bp_max_excess(words, n_bits, base, tmin, tmax, size, i, j):
    # max E[p] over i <= p <= j.
    wi = (i - 1) >> 6
    wj = (j - 1) >> 6
    e = bp_excess(words, base, i)
    best = e
    word = words[wi]
    lim = n_bits - (wi << 6)
    if lim > 64:
        lim = 64
    hi_k = ((j - 1) & 63) if wj == wi else lim - 1
    for k in range(((i - 1) & 63) + 1, hi_k + 1):
        if (word >> np.uint64(k)) & np.uint64(1):
            e += 1
        else:
            e -= 1
        if e > best:
            best = e
    if wj > wi:
        lo_w = wi + 1
        hi_w = wj - 1
        if hi_w >= lo_w:
            a = lo_w + size
            b = hi_w + size
            while a <= b:
                if (a & 1) == 1:
                    if tmax[a] > best:
                        best = tmax[a]
                    a += 1
                if (b & 1) == 0:
                    if tmax[b] > best:
                        best = tmax[b]
                    b -= 1
                a >>= 1
                b >>= 1
        word = words[wj]
        e = base[wj]
        for k in range(((j - 1) & 63) + 1):
            if (word >> np.uint64(k)) & np.uint64(1):
                e += 1
            else:
                e -= 1
            if e > best:
                best = e
    return best


@njit(cache=True)
def bp_match_all(bits8):
    # Close position (0-based) of every open, indexed by preorder rank - 1.
    n = bits8.shape[0]
    stack = np.empty(n // 2 + 1, dtype=np.int64)
    close_of = np.full(n // 2 + 1, -1, dtype=np.int64)
    top = -1
    oid = 0
    for k in range(n):
        if bits8[k]:
            top += 1
            stack[top] = oid
            oid += 1
        else:
            close_of[stack[top]] = k
            top -= 1
    return close_of[:oid]
