# Compiled inner loops for the exact solvers.
#
# Profile codes pack one 2-bit symbol per frontier position:
#   ZP = zero whose 2-neighbour is still missing, ZS = dominated zero,
#   ONE, TWO.
# Every kernel sweeps one cell at a time.  Relaxations use strict '<' with
# ascending (code, value) loops, so the parent of each state is the smallest
# encoded predecessor: witnesses are reproducible.
#
# Parent bytes: bits 0-1 new value, bits 2-3 overwritten symbol,
# bit 4 a ZP -> ZS flip of the first touched neighbour, bit 5 of the second.

import numpy as np
from numba import config, njit, prange

# the bundled TBB is too old; prefer OpenMP, falling back to the work queue
config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

ZP, ZS, ONE, TWO = 0, 1, 2, 3
INF = np.int32(1 << 30)


@njit(cache=True)
def column_cell(cur, nxt, i, parents, record):
    """Place row i of the next column (path-layer orientation).

    Position i holds the left neighbour (same row, previous column); position
    i-1 holds the cell above in the current column.
    """
    size = cur.shape[0]
    sh = 2 * i
    states = 0
    trans = 0
    for c in range(size):
        w = cur[c]
        if w >= INF:
            continue
        states += 1
        left = (c >> sh) & 3
        above = ONE
        if i > 0:
            above = (c >> (sh - 2)) & 3
        base = c & ~(3 << sh)
        for v in range(3):
            if left == ZP and v != 2:
                continue
            flip = 0
            if v == 0:
                if left <= ZS or above <= ZS:
                    continue
                sym = ZP
                if left == TWO or above == TWO:
                    sym = ZS
                nc = base | (sym << sh)
            elif v == 1:
                nc = base | (ONE << sh)
            else:
                nc = base | (TWO << sh)
                if i > 0 and above == ZP:
                    nc = (nc & ~(3 << (sh - 2))) | (ZS << (sh - 2))
                    flip = 1
            trans += 1
            nw = w + v
            if nw < nxt[nc]:
                nxt[nc] = nw
                if record:
                    parents[nc] = v | (left << 2) | (flip << 4)
    return states, trans


@njit(cache=True)
def row_cell(cur, nxt, j, m, parents, record):
    """Place column j of the next row (cycle-layer orientation).

    Position j holds the cell above (previous row); positions < j hold the
    current row, position 0 being the wrap-around neighbour of column m-1.
    """
    size = cur.shape[0]
    sh = 2 * j
    states = 0
    trans = 0
    for c in range(size):
        w = cur[c]
        if w >= INF:
            continue
        states += 1
        up = (c >> sh) & 3
        left = ONE
        if j > 0:
            left = (c >> (sh - 2)) & 3
        right = ONE
        if j == m - 1:
            right = c & 3
        base = c & ~(3 << sh)
        for v in range(3):
            if up == ZP and v != 2:
                continue
            flip_l = 0
            flip_r = 0
            if v == 0:
                if up <= ZS or left <= ZS or right <= ZS:
                    continue
                sym = ZP
                if up == TWO or left == TWO or right == TWO:
                    sym = ZS
                nc = base | (sym << sh)
            elif v == 1:
                nc = base | (ONE << sh)
            else:
                nc = base | (TWO << sh)
                if j > 0 and left == ZP:
                    nc = (nc & ~(3 << (sh - 2))) | (ZS << (sh - 2))
                    flip_l = 1
                if j == m - 1 and right == ZP:
                    nc = (nc & ~3) | ZS
                    flip_r = 1
            trans += 1
            nw = w + v
            if nw < nxt[nc]:
                nxt[nc] = nw
                if record:
                    parents[nc] = v | (up << 2) | (flip_l << 4) | (flip_r << 5)
    return states, trans


@njit(cache=True)
def sweep_columns(n, ncols, start_code, start_cost, parents, record):
    """Run ncols full columns of height n from a single start profile."""
    size = 1 << (2 * n)
    cur = np.full(size, INF, dtype=np.int32)
    cur[start_code] = start_cost
    dummy = np.zeros(1, dtype=np.uint8)
    states = 0
    trans = 0
    step = 0
    for _ in range(ncols):
        for i in range(n):
            nxt = np.full(size, INF, dtype=np.int32)
            if record:
                s, t = column_cell(cur, nxt, i, parents[step], True)
            else:
                s, t = column_cell(cur, nxt, i, dummy, False)
            states += s
            trans += t
            cur = nxt
            step += 1
    return cur, states, trans


@njit(cache=True)
def closure_costs(final, n, seam_zero, seam_two, seam_req):
    """Best closing cost against the seam column, and the smallest code reaching it.

    A final profile closes iff no zero faces a seam zero, its pending zeros
    face seam twos, and seam zeros reserved for the last column face twos.
    """
    best = INF
    arg = -1
    for c in range(final.shape[0]):
        w = final[c]
        if w >= best:
            continue
        ok = True
        for r in range(n):
            s = (c >> (2 * r)) & 3
            bit = 1 << r
            if s <= ZS and (seam_zero & bit):
                ok = False
                break
            if s == ZP and not (seam_two & bit):
                ok = False
                break
            if (seam_req & bit) and s != TWO:
                ok = False
                break
        if ok:
            best = w
            arg = c
    return best, arg


@njit(cache=True, parallel=True)
def all_seams(n, m, codes, costs, zeros, twos, reqs):
    """Minimum closed cost per seam; seams are independent and run in parallel."""
    k = codes.shape[0]
    best = np.full(k, INF, dtype=np.int32)
    states = np.zeros(k, dtype=np.int64)
    trans = np.zeros(k, dtype=np.int64)
    dummy = np.zeros((1, 1), dtype=np.uint8)
    for s in prange(k):
        final, st, tr = sweep_columns(n, m - 1, codes[s], costs[s], dummy, False)
        b, _ = closure_costs(final, n, zeros[s], twos[s], reqs[s])
        best[s] = b
        states[s] = st
        trans[s] = tr
    return best, states, trans


@njit(cache=True)
def sweep_rows(n, m, parents, record):
    """Cycle-layer DP over n rows of width m; virtual row -1 is all ONE."""
    size = 1 << (2 * m)
    cur = np.full(size, INF, dtype=np.int32)
    start = 0
    for j in range(m):
        start |= ONE << (2 * j)
    cur[start] = 0
    dummy = np.zeros(1, dtype=np.uint8)
    states = 0
    trans = 0
    step = 0
    for _ in range(n):
        for j in range(m):
            nxt = np.full(size, INF, dtype=np.int32)
            if record:
                s, t = row_cell(cur, nxt, j, m, parents[step], True)
            else:
                s, t = row_cell(cur, nxt, j, m, dummy, False)
            states += s
            trans += t
            cur = nxt
            step += 1
    return cur, states, trans


@njit(cache=True)
def brute_force_min(n, m, nbr, deg, cap_weight):
    """Lexicographic sweep of all 3^(nm) labelings (cell 0 most significant).

    Returns the minimum OIRDF weight and the first labeling attaining it;
    labelings no lighter than the incumbent are skipped unchecked.
    """
    N = n * m
    lab = np.zeros(N, dtype=np.int8)
    best = cap_weight
    best_lab = np.zeros(N, dtype=np.int8)
    found = False
    w = 0
    checked = 0
    while True:
        if w < best:
            checked += 1
            ok = True
            for v in range(N):
                if lab[v] == 0:
                    dom = False
                    for k in range(deg[v]):
                        u = nbr[v, k]
                        if lab[u] == 0:
                            ok = False
                            break
                        if lab[u] == 2:
                            dom = True
                    if not ok or not dom:
                        ok = False
                        break
            if ok:
                best = w
                best_lab[:] = lab
                found = True
        # odometer increment, last cell least significant
        p = N - 1
        while p >= 0 and lab[p] == 2:
            lab[p] = 0
            w -= 2
            p -= 1
        if p < 0:
            break
        lab[p] += 1
        w += 1
    return best, best_lab, found, checked
