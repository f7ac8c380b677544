"""Pure-Python kernels, used when the compiled extension is unavailable.

Both kernels work on integer ranks only, so they are exact and agree
bit-for-bit with the Cython versions in ``_core.pyx``.
"""

from __future__ import annotations

import numpy as np


def enumerate_ranks(xr, yr, sr):
    """Distinct homothet ranges of points given by coordinate ranks.

    ``xr``, ``yr``, ``sr`` are dense ranks of x, y and x + y.  Returns
    ``(witness, masks)``: witness rows are ``(a_rank, b_rank, s_rank)`` of the
    minimal homothet, masks are ``(R, W)`` uint64 membership words.

    For a fixed corner ``(a, b)`` the ranges are prefixes of the quadrant's
    points in sum order.  A prefix is emitted only when it attains both
    ``a`` and ``b`` and ends at a sum boundary, i.e. when the corner is the
    prefix's own minimal witness; distinct minimal witnesses cut distinct
    subsets, so no hashing is needed.
    """
    xr = [int(v) for v in xr]
    yr = [int(v) for v in yr]
    sr = [int(v) for v in sr]
    n = len(xr)
    words = max(1, (n + 63) // 64)
    if n == 0:
        return np.zeros((0, 3), dtype=np.int64), np.zeros((0, words), dtype=np.uint64)
    order = sorted(range(n), key=lambda i: (sr[i], i))
    xs_vals = sorted(set(xr))
    ys_vals = sorted(set(yr))
    wit = []
    bits = []
    for a in xs_vals:
        col = [i for i in order if xr[i] >= a]
        for b in ys_vals:
            quad = [i for i in col if yr[i] >= b]
            mask = 0
            has_a = has_b = False
            for pos, i in enumerate(quad):
                mask |= 1 << i
                has_a = has_a or xr[i] == a
                has_b = has_b or yr[i] == b
                if has_a and has_b and (pos + 1 == len(quad) or sr[quad[pos + 1]] != sr[i]):
                    wit.append((a, b, sr[i]))
                    bits.append(mask)
    return np.asarray(wit, dtype=np.int64).reshape(-1, 3), ints_to_words(bits, words)


def ints_to_words(bits, words):
    out = np.zeros((len(bits), words), dtype=np.uint64)
    low = (1 << 64) - 1
    for r, m in enumerate(bits):
        for w in range(words):
            out[r, w] = (m >> (64 * w)) & low
    return out


def bnb_two_color(m, masks, sizes, first_value, start_colors, start_max):
    """Minimize the largest monochromatic range over 2-colorings.

    ``masks`` are local bitmasks over ``m`` points (bit ``v`` = point ``v``),
    ``first_value[v]`` is the colour tried first at depth ``v``, and
    ``start_colors`` / ``start_max`` are an incumbent solution.  Point 0 is
    pinned to colour 0.  Returns ``(best_max, best_colors)`` where colours
    are a bitmask of points coloured 1.
    """
    groups = [[] for _ in range(m)]
    for mask, size in zip(masks, sizes):
        mask = int(mask)
        groups[mask.bit_length() - 1].append((int(size), mask))
    for g in groups:
        g.sort(reverse=True)
    best = [int(start_max), int(start_colors)]
    first = [int(v) for v in first_value]

    def dfs(v, ones, cur):
        if v == m:
            best[0], best[1] = cur, ones
            return cur <= 1
        f = first[v] if v else 0
        for val in (f, 1 - f):
            if v == 0 and val == 1:
                continue
            o = ones | (val << v)
            c = cur
            for size, mask in groups[v]:
                if size <= c:
                    break
                inter = o & mask
                if inter == 0 or inter == mask:
                    c = size
                    break
            if c < best[0] and dfs(v + 1, o, c):
                return True
        return False

    if m and best[0] > 1:
        dfs(0, 0, 0)
    return best[0], best[1]
