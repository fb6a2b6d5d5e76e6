# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same contracts as dispersal._pycore.

Block levels come from range lower-median queries on a wavelet matrix built
over the dense ranks, so a merge costs O(log n) instead of re-heaping.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, int32_t

BACKEND = "cython"


cdef struct Wavelet:
    int n
    int levels
    int32_t *ones      # levels * (n + 1) prefix counts of 1-bits
    int32_t *zeros     # per level: number of zeros


cdef int wavelet_build(Wavelet *w, const int32_t *vals, int n, int sigma) except -1:
    cdef int levels = 1
    while (1 << levels) < sigma:
        levels += 1
    w.n = n
    w.levels = levels
    w.ones = <int32_t *> malloc(sizeof(int32_t) * levels * (n + 1))
    w.zeros = <int32_t *> malloc(sizeof(int32_t) * levels)
    cdef int32_t *cur = <int32_t *> malloc(sizeof(int32_t) * n)
    cdef int32_t *nxt = <int32_t *> malloc(sizeof(int32_t) * n)
    if w.ones == NULL or w.zeros == NULL or cur == NULL or nxt == NULL:
        free(cur); free(nxt)
        raise MemoryError()
    cdef int i, lvl, bit, z, o
    cdef int32_t *pref
    cdef int32_t *tmp
    for i in range(n):
        cur[i] = vals[i]
    for lvl in range(levels):
        bit = levels - 1 - lvl
        pref = w.ones + lvl * (n + 1)
        pref[0] = 0
        z = 0
        for i in range(n):
            if (cur[i] >> bit) & 1:
                pref[i + 1] = pref[i] + 1
            else:
                pref[i + 1] = pref[i]
                z += 1
        w.zeros[lvl] = z
        o = z
        z = 0
        for i in range(n):
            if (cur[i] >> bit) & 1:
                nxt[o] = cur[i]
                o += 1
            else:
                nxt[z] = cur[i]
                z += 1
        tmp = cur
        cur = nxt
        nxt = tmp
    free(cur)
    free(nxt)
    return 0


cdef inline int32_t wavelet_kth(Wavelet *w, int lo, int hi, int k) nogil:
    # k-th smallest (0-based) among positions [lo, hi)
    cdef int lvl, bit, l0, h0, nz
    cdef int32_t res = 0
    cdef int32_t *pref
    for lvl in range(w.levels):
        bit = w.levels - 1 - lvl
        pref = w.ones + lvl * (w.n + 1)
        l0 = lo - pref[lo]
        h0 = hi - pref[hi]
        nz = h0 - l0
        if k < nz:
            lo = l0
            hi = h0
        else:
            k -= nz
            res |= (1 << bit)
            lo = w.zeros[lvl] + pref[lo]
            hi = w.zeros[lvl] + pref[hi]
    return res


cdef inline int32_t lower_median(Wavelet *w, int a, int b) nogil:
    return wavelet_kth(w, a, b + 1, (b - a) // 2)


def pav(ranks, int n, bint cyclic=False):
    """See dispersal._pycore.pav."""
    cdef int total = len(ranks)
    if n == 0:
        return [], [], [], 0
    if cyclic and total < 2 * n:
        raise ValueError("cyclic mode needs the lifted copy of every rank")
    cdef int32_t *vals = <int32_t *> malloc(sizeof(int32_t) * total)
    cdef int cap = 2 * n + 1
    cdef int32_t *starts = <int32_t *> malloc(sizeof(int32_t) * cap)
    cdef int32_t *stops = <int32_t *> malloc(sizeof(int32_t) * cap)
    cdef int32_t *levels = <int32_t *> malloc(sizeof(int32_t) * cap)
    if vals == NULL or starts == NULL or stops == NULL or levels == NULL:
        free(vals); free(starts); free(stops); free(levels)
        raise MemoryError()
    cdef int i, sigma = 1
    for i in range(total):
        vals[i] = ranks[i]
        if vals[i] + 1 > sigma:
            sigma = vals[i] + 1
    cdef Wavelet w
    w.ones = NULL
    w.zeros = NULL
    cdef int head = 0, top = -1, shifts = 0, a, b
    cdef int32_t lifted
    try:
        wavelet_build(&w, vals, total, sigma)
        with nogil:
            for i in range(n):
                top += 1
                starts[top] = i
                stops[top] = i
                levels[top] = vals[i]
                while top > head and levels[top] < levels[top - 1]:
                    stops[top - 1] = stops[top]
                    top -= 1
                    levels[top] = lower_median(&w, starts[top], stops[top])
            if cyclic:
                while top > head:
                    a = starts[head] + n
                    b = stops[head] + n
                    lifted = lower_median(&w, a, b)
                    if levels[top] <= lifted:
                        break
                    head += 1
                    shifts += 1
                    top += 1
                    starts[top] = a
                    stops[top] = b
                    levels[top] = lifted
                    while top > head and levels[top] < levels[top - 1]:
                        stops[top - 1] = stops[top]
                        top -= 1
                        levels[top] = lower_median(&w, starts[top], stops[top])
        out_starts = [starts[i] for i in range(head, top + 1)]
        out_stops = [stops[i] for i in range(head, top + 1)]
        out_levels = [levels[i] for i in range(head, top + 1)]
    finally:
        free(w.ones)
        free(w.zeros)
        free(vals)
        free(starts)
        free(stops)
        free(levels)
    return out_starts, out_stops, out_levels, shifts


def hungarian(cost, int m):
    """See dispersal._pycore.hungarian; entries must fit comfortably in int64."""
    cdef int64_t INF = (<int64_t> 1) << 62
    cdef int64_t *c = <int64_t *> malloc(sizeof(int64_t) * m * m)
    cdef int64_t *u = <int64_t *> malloc(sizeof(int64_t) * (m + 1))
    cdef int64_t *v = <int64_t *> malloc(sizeof(int64_t) * (m + 1))
    cdef int64_t *minv = <int64_t *> malloc(sizeof(int64_t) * (m + 1))
    cdef int *match = <int *> malloc(sizeof(int) * (m + 1))
    cdef int *way = <int *> malloc(sizeof(int) * (m + 1))
    cdef char *used = <char *> malloc(sizeof(char) * (m + 1))
    if (c == NULL or u == NULL or v == NULL or minv == NULL or match == NULL
            or way == NULL or used == NULL):
        free(c); free(u); free(v); free(minv); free(match); free(way); free(used)
        raise MemoryError()
    cdef int i, j, i0, j0, j1, row
    cdef int64_t delta, cur, ui0
    try:
        for i in range(m * m):
            c[i] = cost[i]
        with nogil:
            for j in range(m + 1):
                u[j] = 0
                v[j] = 0
                match[j] = 0
                way[j] = 0
            for i in range(1, m + 1):
                match[0] = i
                j0 = 0
                for j in range(m + 1):
                    minv[j] = INF
                    used[j] = 0
                while True:
                    used[j0] = 1
                    i0 = match[j0]
                    row = (i0 - 1) * m
                    ui0 = u[i0]
                    delta = INF
                    j1 = 0
                    for j in range(1, m + 1):
                        if not used[j]:
                            cur = c[row + j - 1] - ui0 - v[j]
                            if cur < minv[j]:
                                minv[j] = cur
                                way[j] = j0
                            if minv[j] < delta:
                                delta = minv[j]
                                j1 = j
                    for j in range(m + 1):
                        if used[j]:
                            u[match[j]] += delta
                            v[j] -= delta
                        else:
                            minv[j] -= delta
                    j0 = j1
                    if match[j0] == 0:
                        break
                while j0:
                    j1 = way[j0]
                    match[j0] = match[j1]
                    j0 = j1
        row_to_col = [0] * m
        for j in range(1, m + 1):
            row_to_col[match[j] - 1] = j - 1
        us = [u[i] for i in range(1, m + 1)]
        vs = [v[j] for j in range(1, m + 1)]
    finally:
        free(c); free(u); free(v); free(minv); free(match); free(way); free(used)
    return row_to_col, us, vs
