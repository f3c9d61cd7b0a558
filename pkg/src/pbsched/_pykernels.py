"""Pure-Python implementations of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same name,
signature and visiting order, so both backends return identical results.
Matrices are 2-D ``int64`` numpy arrays; a positive entry marks an edge.
"""

import numpy as np


def max_matching(adj):
    """Maximum-cardinality matching by repeated augmenting-path search.

    Rows are tried in index order, columns are scanned in index order
    during each depth-first search.  Returns ``match_row`` where
    ``match_row[i]`` is the column matched to row ``i`` or -1.
    """
    nr, nc = adj.shape
    rows = adj.tolist()
    match_row = [-1] * nr
    match_col = [-1] * nc

    for root in range(nr):
        if not any(rows[root]):
            continue
        visited = [False] * nc
        stack_rows = [root]
        stack_pos = [0]
        path_cols = []
        while stack_rows:
            r = stack_rows[-1]
            c = stack_pos[-1]
            row = rows[r]
            advanced = False
            while c < nc:
                if row[c] > 0 and not visited[c]:
                    visited[c] = True
                    stack_pos[-1] = c + 1
                    path_cols.append(c)
                    if match_col[c] == -1:
                        for rr, cc in zip(stack_rows, path_cols):
                            match_row[rr] = cc
                            match_col[cc] = rr
                        stack_rows = []
                    else:
                        stack_rows.append(match_col[c])
                        stack_pos.append(0)
                    advanced = True
                    break
                c += 1
            if not advanced:
                stack_rows.pop()
                stack_pos.pop()
                if path_cols:
                    path_cols.pop()
    return np.array(match_row, dtype=np.int64)


def greedy_matching_by_order(weights, order):
    """Maximal matching built by walking ``order`` front to back.

    ``order`` lists node codes: row ``i`` is ``i``, column ``j`` is
    ``nr + j``.  Each still-free node is matched to its free neighbour that
    appears earliest in ``order``; a node without free neighbours is dropped.
    """
    nr, nc = weights.shape
    w = weights.tolist()
    order = order.tolist()
    pos = [0] * (nr + nc)
    for p, node in enumerate(order):
        pos[node] = p
    alive = [True] * (nr + nc)
    match_row = [-1] * nr

    for w0 in order:
        if not alive[w0]:
            continue
        best = -1
        best_pos = nr + nc
        if w0 < nr:
            row = w[w0]
            for j in range(nc):
                if row[j] > 0 and alive[nr + j] and pos[nr + j] < best_pos:
                    best = nr + j
                    best_pos = pos[nr + j]
        else:
            j = w0 - nr
            for i in range(nr):
                if w[i][j] > 0 and alive[i] and pos[i] < best_pos:
                    best = i
                    best_pos = pos[i]
        alive[w0] = False
        if best >= 0:
            alive[best] = False
            if w0 < nr:
                match_row[w0] = best - nr
            else:
                match_row[best] = w0 - nr
    return np.array(match_row, dtype=np.int64)


def reduced_max_load(row_load, col_load, match_i, match_j, match_c):
    """Max node load after cutting every matched edge by each candidate.

    For candidate ``k`` every matched edge ``e`` loses ``min(c_e, c_k)``;
    the result holds the maximum row or column load that remains.
    """
    rl = row_load.tolist()
    cl = col_load.tolist()
    mi = match_i.tolist()
    mj = match_j.tolist()
    mc = match_c.tolist()
    m = len(mc)
    in_row = [False] * len(rl)
    in_col = [False] * len(cl)
    for k in range(m):
        in_row[mi[k]] = True
        in_col[mj[k]] = True
    untouched = 0
    for i, load in enumerate(rl):
        if not in_row[i] and load > untouched:
            untouched = load
    for j, load in enumerate(cl):
        if not in_col[j] and load > untouched:
            untouched = load

    out = [0] * m
    for k in range(m):
        cut = mc[k]
        best = untouched
        for e in range(m):
            c = mc[e]
            red = c if c < cut else cut
            v = rl[mi[e]] - red
            if v > best:
                best = v
            v = cl[mj[e]] - red
            if v > best:
                best = v
        out[k] = best
    return np.array(out, dtype=np.int64)
