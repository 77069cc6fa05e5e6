# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: closure fill, rotation unwinding, augmenting-path flow.

Each function mirrors one in ``_kernels_py`` exactly; the two must stay
interchangeable (the test suite runs both and compares outputs).
"""

from libc.stdint cimport int64_t, uint8_t


def closure_fill(uint8_t[:, ::1] mat, int64_t[::1] deg, int64_t threshold,
                 uint8_t[::1] eligible, int64_t[:, ::1] out):
    """Join nonadjacent eligible pairs with degree sum >= threshold.

    Pairs are scanned lexicographically, repeating until a full pass adds
    nothing. ``out[i] = (u, v, degsum)`` records the i-th insertion.
    Returns the number of insertions. ``mat`` and ``deg`` are updated.
    """
    cdef Py_ssize_t n = mat.shape[0]
    cdef Py_ssize_t u, v
    cdef int64_t count = 0
    cdef bint changed = True
    while changed:
        changed = False
        for u in range(n):
            if not eligible[u]:
                continue
            for v in range(u + 1, n):
                if eligible[v] and not mat[u, v] and deg[u] + deg[v] >= threshold:
                    out[count, 0] = u
                    out[count, 1] = v
                    out[count, 2] = deg[u] + deg[v]
                    count += 1
                    mat[u, v] = 1
                    mat[v, u] = 1
                    deg[u] += 1
                    deg[v] += 1
                    changed = True
    return count


def unwind_cycle(uint8_t[:, ::1] mat, int64_t[:, ::1] added, int64_t count,
                 int64_t[::1] cycle, int64_t[::1] pos, int64_t[::1] scratch):
    """Remove ``added[count-1] .. added[0]`` from ``mat`` keeping ``cycle`` Hamiltonian.

    ``mat`` must contain every added edge on entry and ``cycle`` must be a
    Hamiltonian cycle of it; ``pos`` is the inverse of ``cycle``. Returns -1
    on success, otherwise the index of the edge at which no rotation chord
    existed (the cycle is then left valid for the graph still containing it).
    """
    cdef Py_ssize_t n = cycle.shape[0]
    cdef Py_ssize_t idx, i, start, step, j
    cdef int64_t a, b, pa, pb, x0, xl
    for idx in range(count - 1, -1, -1):
        a = added[idx, 0]
        b = added[idx, 1]
        mat[a, b] = 0
        mat[b, a] = 0
        pa = pos[a]
        pb = pos[b]
        # is ab a cycle edge?
        if (pa + 1) % n == pb:
            start = pb
        elif (pb + 1) % n == pa:
            start = pa
        else:
            continue
        # path x_0..x_{n-1} starting after the removed edge
        for i in range(n):
            scratch[i] = cycle[(start + i) % n]
        x0 = scratch[0]
        xl = scratch[n - 1]
        j = -1
        for i in range(1, n - 2):
            if mat[x0, scratch[i + 1]] and mat[scratch[i], xl]:
                j = i
                break
        if j < 0:
            mat[a, b] = 1
            mat[b, a] = 1
            return idx
        for i in range(j + 1):
            cycle[i] = scratch[i]
        step = j + 1
        for i in range(n - 1, j, -1):
            cycle[step] = scratch[i]
            step += 1
        for i in range(n):
            pos[cycle[i]] = i
    return -1


def augment_flow(int64_t[::1] offsets, int64_t[::1] heads, int64_t[::1] rev,
                 int64_t[::1] cap, int64_t s, int64_t t, int64_t limit,
                 uint8_t[::1] seen, int64_t[::1] parent_arc, int64_t[::1] queue):
    """Push up to ``limit`` units from ``s`` to ``t`` along BFS augmenting paths.

    ``cap`` holds residual capacities and is modified in place. When the
    returned flow is below ``limit``, ``seen`` marks the residual-reachable
    set from ``s`` (a minimum cut).
    """
    cdef Py_ssize_t nn = offsets.shape[0] - 1
    cdef int64_t flow = 0
    cdef int64_t head, tail, x, y, arc, bottleneck
    cdef Py_ssize_t i
    while flow < limit:
        for i in range(nn):
            seen[i] = 0
        seen[s] = 1
        queue[0] = s
        head = 0
        tail = 1
        while head < tail and not seen[t]:
            x = queue[head]
            head += 1
            for arc in range(offsets[x], offsets[x + 1]):
                y = heads[arc]
                if cap[arc] > 0 and not seen[y]:
                    seen[y] = 1
                    parent_arc[y] = arc
                    queue[tail] = y
                    tail += 1
        if not seen[t]:
            break
        bottleneck = limit - flow
        y = t
        while y != s:
            arc = parent_arc[y]
            if cap[arc] < bottleneck:
                bottleneck = cap[arc]
            y = heads[rev[arc]]
        y = t
        while y != s:
            arc = parent_arc[y]
            cap[arc] -= bottleneck
            cap[rev[arc]] += bottleneck
            y = heads[rev[arc]]
        flow += bottleneck
    return flow
