# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: subgroup closure and vertex-disjoint path counting.

Mirrors the contract of ``_kernels_py`` (see that module for the
documented semantics); this twin only changes the constant factor.
"""

import numpy as np

BACKEND_NAME = "compiled"


def prepare_table(table):
    """Return the backend-specific handle for a multiplication table."""
    return np.ascontiguousarray(table, dtype=np.int32)


def subgroup_closure(prep, identity, seed):
    """Close ``{identity} | seed`` under the product; return (mask, order)."""
    cdef const int[:, ::1] table = prep
    cdef int n = table.shape[0]
    members_arr = np.empty(n, dtype=np.int32)
    inset_arr = np.zeros(n, dtype=np.uint8)
    cdef int[::1] members = members_arr
    cdef unsigned char[::1] inset = inset_arr
    cdef int count = 0, i, j, x, y, p, q
    members[0] = <int> identity
    inset[<int> identity] = 1
    count = 1
    for s in seed:
        x = <int> s
        if not inset[x]:
            inset[x] = 1
            members[count] = x
            count += 1
    i = 1
    while i < count:
        x = members[i]
        j = 0
        while j < count:
            y = members[j]
            p = table[x, y]
            if not inset[p]:
                inset[p] = 1
                members[count] = p
                count += 1
            q = table[y, x]
            if not inset[q]:
                inset[q] = 1
                members[count] = q
                count += 1
            j += 1
        i += 1
    packed = np.packbits(inset_arr, bitorder="little")
    mask = int.from_bytes(packed.tobytes(), "little")
    return mask, count


def prepare_graph(neighbors):
    """Return CSR (indptr, indices) int32 arrays for an adjacency list."""
    cdef int n = len(neighbors)
    indptr = np.zeros(n + 1, dtype=np.int32)
    for i, adj in enumerate(neighbors):
        indptr[i + 1] = indptr[i] + len(adj)
    indices = np.empty(int(indptr[n]), dtype=np.int32)
    pos = 0
    for adj in neighbors:
        for v in adj:
            indices[pos] = v
            pos += 1
    return indptr, indices


def vertex_disjoint_paths(prep, s, t, skip_direct=False, cutoff=-1):
    """Count internally vertex-disjoint s-t paths (Dinic on split graph)."""
    indptr_arr, indices_arr = prep
    cdef const int[::1] indptr = indptr_arr
    cdef const int[::1] indices = indices_arr
    cdef int n = indptr.shape[0] - 1
    cdef int cs = <int> s, ct = <int> t
    cdef bint skip = 1 if skip_direct else 0
    if cs == ct:
        raise ValueError("source and sink must differ")
    cdef int limit = n if <int> cutoff < 0 else <int> cutoff
    if limit == 0:
        return 0

    cdef int m = indices.shape[0]
    cdef int nnodes = 2 * n
    cdef int maxedges = 2 * (n + m)

    head_arr = np.full(nnodes, -1, dtype=np.int32)
    nxt_arr = np.empty(maxedges, dtype=np.int32)
    eto_arr = np.empty(maxedges, dtype=np.int32)
    ecap_arr = np.empty(maxedges, dtype=np.int8)
    level_arr = np.empty(nnodes, dtype=np.int32)
    iters_arr = np.empty(nnodes, dtype=np.int32)
    queue_arr = np.empty(nnodes, dtype=np.int32)
    path_arr = np.empty(nnodes + 1, dtype=np.int32)

    cdef int[::1] head = head_arr
    cdef int[::1] nxt = nxt_arr
    cdef int[::1] eto = eto_arr
    cdef signed char[::1] ecap = ecap_arr
    cdef int[::1] level = level_arr
    cdef int[::1] iters = iters_arr
    cdef int[::1] queue = queue_arr
    cdef int[::1] path = path_arr

    cdef int ecnt = 0, v, u, i, e, k
    for v in range(n):
        if v != cs and v != ct:
            # in(v) -> out(v)
            eto[ecnt] = 2 * v + 1; ecap[ecnt] = 1; nxt[ecnt] = head[2 * v]; head[2 * v] = ecnt; ecnt += 1
            eto[ecnt] = 2 * v; ecap[ecnt] = 0; nxt[ecnt] = head[2 * v + 1]; head[2 * v + 1] = ecnt; ecnt += 1
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if skip and ((u == cs and v == ct) or (u == ct and v == cs)):
                continue
            # out(u) -> in(v)
            eto[ecnt] = 2 * v; ecap[ecnt] = 1; nxt[ecnt] = head[2 * u + 1]; head[2 * u + 1] = ecnt; ecnt += 1
            eto[ecnt] = 2 * u + 1; ecap[ecnt] = 0; nxt[ecnt] = head[2 * v]; head[2 * v] = ecnt; ecnt += 1

    cdef int src = 2 * cs + 1
    cdef int snk = 2 * ct
    cdef int flow = 0
    cdef int qhead, qtail, plen
    cdef bint found, advanced

    while flow < limit:
        for i in range(nnodes):
            level[i] = -1
        level[src] = 0
        queue[0] = src
        qhead = 0
        qtail = 1
        while qhead < qtail:
            u = queue[qhead]
            qhead += 1
            e = head[u]
            while e != -1:
                v = eto[e]
                if ecap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qtail] = v
                    qtail += 1
                e = nxt[e]
        if level[snk] < 0:
            break
        for i in range(nnodes):
            iters[i] = head[i]
        while flow < limit:
            plen = 0
            u = src
            found = 0
            while True:
                if u == snk:
                    found = 1
                    break
                advanced = 0
                e = iters[u]
                while e != -1:
                    v = eto[e]
                    if ecap[e] > 0 and level[v] == level[u] + 1:
                        iters[u] = e
                        path[plen] = e
                        plen += 1
                        u = v
                        advanced = 1
                        break
                    e = nxt[e]
                if advanced:
                    continue
                iters[u] = -1
                if u == src:
                    break
                level[u] = -1
                plen -= 1
                e = path[plen]
                u = eto[e ^ 1]
                iters[u] = nxt[iters[u]]
            if not found:
                break
            for i in range(plen):
                e = path[i]
                ecap[e] -= 1
                ecap[e ^ 1] += 1
            flow += 1
    return flow
