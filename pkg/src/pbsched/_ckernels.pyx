# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``; same names, same results."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def max_matching(const i64[:, :] adj):
    cdef Py_ssize_t nr = adj.shape[0], nc = adj.shape[1]
    cdef i64[::1] match_row = np.full(nr, -1, dtype=np.int64)
    cdef i64[::1] match_col = np.full(nc, -1, dtype=np.int64)
    cdef unsigned char[::1] visited = np.zeros(nc, dtype=np.uint8)
    cdef i64[::1] stack_rows = np.empty(nr + 1, dtype=np.int64)
    cdef i64[::1] stack_pos = np.empty(nr + 1, dtype=np.int64)
    cdef i64[::1] path_cols = np.empty(nr + 1, dtype=np.int64)
    cdef Py_ssize_t root, top, npath, r, c, k
    cdef bint advanced, has_edge

    for root in range(nr):
        has_edge = False
        for c in range(nc):
            if adj[root, c] != 0:
                has_edge = True
                break
        if not has_edge:
            continue
        visited[:] = 0
        top = 0
        stack_rows[0] = root
        stack_pos[0] = 0
        npath = 0
        while top >= 0:
            r = stack_rows[top]
            c = stack_pos[top]
            advanced = False
            while c < nc:
                if adj[r, c] > 0 and not visited[c]:
                    visited[c] = 1
                    stack_pos[top] = c + 1
                    path_cols[npath] = c
                    npath += 1
                    if match_col[c] == -1:
                        for k in range(top + 1):
                            match_row[stack_rows[k]] = path_cols[k]
                            match_col[path_cols[k]] = stack_rows[k]
                        top = -1
                    else:
                        top += 1
                        stack_rows[top] = match_col[c]
                        stack_pos[top] = 0
                    advanced = True
                    break
                c += 1
            if not advanced:
                top -= 1
                if npath > 0:
                    npath -= 1
    return np.asarray(match_row)


def greedy_matching_by_order(const i64[:, :] weights, const i64[:] order):
    cdef Py_ssize_t nr = weights.shape[0], nc = weights.shape[1]
    cdef Py_ssize_t total = nr + nc
    cdef i64[::1] pos = np.zeros(total, dtype=np.int64)
    cdef unsigned char[::1] alive = np.ones(total, dtype=np.uint8)
    cdef i64[::1] match_row = np.full(nr, -1, dtype=np.int64)
    cdef Py_ssize_t p, i, j, w0, best, best_pos

    for p in range(order.shape[0]):
        pos[order[p]] = p
    for p in range(order.shape[0]):
        w0 = order[p]
        if not alive[w0]:
            continue
        best = -1
        best_pos = total
        if w0 < nr:
            for j in range(nc):
                if weights[w0, j] > 0 and alive[nr + j] and pos[nr + j] < best_pos:
                    best = nr + j
                    best_pos = pos[nr + j]
        else:
            j = w0 - nr
            for i in range(nr):
                if weights[i, j] > 0 and alive[i] and pos[i] < best_pos:
                    best = i
                    best_pos = pos[i]
        alive[w0] = 0
        if best >= 0:
            alive[best] = 0
            if w0 < nr:
                match_row[w0] = best - nr
            else:
                match_row[best] = w0 - nr
    return np.asarray(match_row)


def reduced_max_load(const i64[:] row_load, const i64[:] col_load,
                     const i64[:] match_i, const i64[:] match_j,
                     const i64[:] match_c):
    cdef Py_ssize_t m = match_c.shape[0]
    cdef Py_ssize_t nr = row_load.shape[0], nc = col_load.shape[0]
    cdef unsigned char[::1] in_row = np.zeros(nr, dtype=np.uint8)
    cdef unsigned char[::1] in_col = np.zeros(nc, dtype=np.uint8)
    cdef i64[::1] out = np.zeros(m, dtype=np.int64)
    cdef i64 untouched = 0, best, cut, c, red, v
    cdef Py_ssize_t i, j, k, e

    for k in range(m):
        in_row[match_i[k]] = 1
        in_col[match_j[k]] = 1
    for i in range(nr):
        if not in_row[i] and row_load[i] > untouched:
            untouched = row_load[i]
    for j in range(nc):
        if not in_col[j] and col_load[j] > untouched:
            untouched = col_load[j]

    for k in range(m):
        cut = match_c[k]
        best = untouched
        for e in range(m):
            c = match_c[e]
            red = c if c < cut else cut
            v = row_load[match_i[e]] - red
            if v > best:
                best = v
            v = col_load[match_j[e]] - red
            if v > best:
                best = v
        out[k] = best
    return np.asarray(out)
