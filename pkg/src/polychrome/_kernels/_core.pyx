# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; call-compatible with ``_fallback``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef Py_ssize_t _walk(const int64_t[:] xr, const int64_t[:] yr, const int64_t[:] sr,
                      const int64_t[:] order, const int64_t[:] xs, const int64_t[:] ys,
                      int words, int64_t[:, :] wit, uint64_t[:, :] out, bint fill) nogil:
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t r = 0, ia, ib, p, i, w
    cdef int64_t a, b, prev_s
    cdef bint has_a, has_b, started
    cdef uint64_t* mask = <uint64_t*> malloc(words * sizeof(uint64_t))
    for ia in range(xs.shape[0]):
        a = xs[ia]
        for ib in range(ys.shape[0]):
            b = ys[ib]
            memset(mask, 0, words * sizeof(uint64_t))
            has_a = False
            has_b = False
            started = False
            prev_s = 0
            for p in range(n):
                i = order[p]
                if xr[i] < a or yr[i] < b:
                    continue
                if started and sr[i] != prev_s and has_a and has_b:
                    if fill:
                        wit[r, 0] = a
                        wit[r, 1] = b
                        wit[r, 2] = prev_s
                        for w in range(words):
                            out[r, w] = mask[w]
                    r += 1
                mask[i >> 6] |= (<uint64_t> 1) << (i & 63)
                if xr[i] == a:
                    has_a = True
                if yr[i] == b:
                    has_b = True
                prev_s = sr[i]
                started = True
            if started and has_a and has_b:
                if fill:
                    wit[r, 0] = a
                    wit[r, 1] = b
                    wit[r, 2] = prev_s
                    for w in range(words):
                        out[r, w] = mask[w]
                r += 1
    free(mask)
    return r


def enumerate_ranks(xr, yr, sr):
    cdef int64_t[:] x = np.ascontiguousarray(xr, dtype=np.int64)
    cdef int64_t[:] y = np.ascontiguousarray(yr, dtype=np.int64)
    cdef int64_t[:] s = np.ascontiguousarray(sr, dtype=np.int64)
    cdef Py_ssize_t n = x.shape[0]
    cdef int words = max(1, (n + 63) // 64)
    if n == 0:
        return np.zeros((0, 3), dtype=np.int64), np.zeros((0, words), dtype=np.uint64)
    order_np = np.lexsort((np.arange(n), np.asarray(s)))
    cdef int64_t[:] order = np.ascontiguousarray(order_np, dtype=np.int64)
    cdef int64_t[:] xs = np.unique(np.asarray(x)).astype(np.int64)
    cdef int64_t[:] ys = np.unique(np.asarray(y)).astype(np.int64)
    wit_np = np.zeros((1, 3), dtype=np.int64)
    out_np = np.zeros((1, words), dtype=np.uint64)
    cdef int64_t[:, :] wit = wit_np
    cdef uint64_t[:, :] out = out_np
    cdef Py_ssize_t count
    with nogil:
        count = _walk(x, y, s, order, xs, ys, words, wit, out, False)
    wit_np = np.zeros((count, 3), dtype=np.int64)
    out_np = np.zeros((count, words), dtype=np.uint64)
    if count:
        wit = wit_np
        out = out_np
        with nogil:
            _walk(x, y, s, order, xs, ys, words, wit, out, True)
    return wit_np, out_np


cdef struct Search:
    int m
    uint64_t* masks      # grouped by highest bit, descending size inside a group
    int64_t* sizes
    int64_t* start       # group offsets, length m + 1
    int* first
    int64_t best
    uint64_t best_colors


cdef bint _dfs(Search* st, int v, uint64_t ones, int64_t cur) nogil:
    cdef int f, k, val
    cdef uint64_t o, inter, mask
    cdef int64_t c, size
    cdef Py_ssize_t j
    if v == st.m:
        st.best = cur
        st.best_colors = ones
        return cur <= 1
    f = st.first[v] if v else 0
    for k in range(2):
        val = f if k == 0 else 1 - f
        if v == 0 and val == 1:
            continue
        o = ones | ((<uint64_t> val) << v)
        c = cur
        for j in range(st.start[v], st.start[v + 1]):
            size = st.sizes[j]
            if size <= c:
                break
            mask = st.masks[j]
            inter = o & mask
            if inter == 0 or inter == mask:
                c = size
                break
        if c < st.best and _dfs(st, v + 1, o, c):
            return True
    return False


def bnb_two_color(int m, masks, sizes, first_value, start_colors, start_max):
    masks_np = np.asarray(masks, dtype=np.uint64)
    sizes_np = np.asarray(sizes, dtype=np.int64)
    if m == 0 or start_max <= 1:
        return int(start_max), int(start_colors)
    if m > 63:
        raise ValueError("bnb_two_color supports at most 63 points")
    high = np.zeros(len(masks_np), dtype=np.int64)
    for j, mk in enumerate(masks_np.tolist()):
        high[j] = int(mk).bit_length() - 1
    # group by highest bit, larger sizes first within a group
    perm = np.lexsort((-sizes_np, high))
    cdef uint64_t[:] gm = np.ascontiguousarray(masks_np[perm])
    cdef int64_t[:] gs = np.ascontiguousarray(sizes_np[perm])
    cdef int64_t[:] offs = np.searchsorted(high[perm], np.arange(m + 1)).astype(np.int64)
    cdef int[:] first = np.ascontiguousarray(first_value, dtype=np.intc)
    cdef Search st
    st.m = m
    st.masks = &gm[0] if gm.shape[0] else NULL
    st.sizes = &gs[0] if gs.shape[0] else NULL
    st.start = &offs[0]
    st.first = &first[0]
    st.best = start_max
    st.best_colors = start_colors
    with nogil:
        _dfs(&st, 0, 0, 0)
    return int(st.best), int(st.best_colors)
