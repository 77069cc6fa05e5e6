"""Pure-Python versions of the compiled kernels (same signatures and results)."""

from __future__ import annotations

import numpy as np


def closure_fill(mat, deg, threshold, eligible, out):
    n = mat.shape[0]
    rows = [set(np.flatnonzero(mat[u]).tolist()) for u in range(n)]
    d = deg.tolist()
    ok = [u for u in range(n) if eligible[u]]
    count = 0
    changed = True
    while changed:
        changed = False
        for a, u in enumerate(ok):
            row = rows[u]
            for v in ok[a + 1:]:
                if v not in row and d[u] + d[v] >= threshold:
                    out[count] = (u, v, d[u] + d[v])
                    count += 1
                    row.add(v)
                    rows[v].add(u)
                    d[u] += 1
                    d[v] += 1
                    changed = True
    for i in range(count):
        u, v = int(out[i, 0]), int(out[i, 1])
        mat[u, v] = mat[v, u] = 1
    deg[:] = d
    return count


def unwind_cycle(mat, added, count, cycle, pos, scratch):
    n = cycle.shape[0]
    rows = [set(np.flatnonzero(mat[u]).tolist()) for u in range(n)]
    cyc = cycle.tolist()
    where = pos.tolist()
    result = -1
    for idx in range(count - 1, -1, -1):
        a, b = int(added[idx, 0]), int(added[idx, 1])
        rows[a].discard(b)
        rows[b].discard(a)
        pa, pb = where[a], where[b]
        if (pa + 1) % n == pb:
            start = pb
        elif (pb + 1) % n == pa:
            start = pa
        else:
            continue
        path = cyc[start:] + cyc[:start]
        x0, xl = path[0], path[-1]
        r0, rl = rows[x0], rows[xl]
        j = next((i for i in range(1, n - 2) if path[i + 1] in r0 and path[i] in rl), -1)
        if j < 0:
            rows[a].add(b)
            rows[b].add(a)
            result = idx
            break
        cyc = path[: j + 1] + path[:j:-1]
        for i, x in enumerate(cyc):
            where[x] = i
    # write state back into the caller's buffers
    mat[:] = 0
    for u in range(n):
        if rows[u]:
            mat[u, list(rows[u])] = 1
    cycle[:] = cyc
    pos[:] = where
    return result


def augment_flow(offsets, heads, rev, cap, s, t, limit, seen, parent_arc, queue):
    off = offsets.tolist()
    hd = heads.tolist()
    rv = rev.tolist()
    c = cap.tolist()
    nn = len(off) - 1
    flow = 0
    mark = [False] * nn
    while flow < limit:
        mark = [False] * nn
        mark[s] = True
        parent = {}
        frontier = [s]
        while frontier and not mark[t]:
            nxt = []
            for x in frontier:
                for arc in range(off[x], off[x + 1]):
                    y = hd[arc]
                    if c[arc] > 0 and not mark[y]:
                        mark[y] = True
                        parent[y] = arc
                        nxt.append(y)
            frontier = nxt
        if not mark[t]:
            break
        bottleneck = limit - flow
        y = t
        while y != s:
            arc = parent[y]
            bottleneck = min(bottleneck, c[arc])
            y = hd[rv[arc]]
        y = t
        while y != s:
            arc = parent[y]
            c[arc] -= bottleneck
            c[rv[arc]] += bottleneck
            y = hd[rv[arc]]
        flow += bottleneck
    cap[:] = c
    seen[:] = mark
    return flow
