"""Pure-Python kernels: subgroup closure and vertex-disjoint path counting.

These are the two inner loops that dominate runtime.  A compiled twin
lives in ``_fastkernels.pyx``; both expose the same contract and either
may be selected by :mod:`intgraph.kernels` at import time.

Conventions shared by both backends:

* a "prepared table" is whatever ``prepare_table`` returns for a
  multiplication table; callers treat it as opaque,
* subgroup membership is reported as a bitmask over element indices,
* ``vertex_disjoint_paths`` counts internally vertex-disjoint paths via
  unit-capacity vertex-split max-flow (Dinic), honouring an optional
  cutoff (negative = unbounded).
"""

from __future__ import annotations

from collections import deque

BACKEND_NAME = "pure"


def prepare_table(table):
    """Return the backend-specific handle for a multiplication table."""
    if hasattr(table, "tolist"):
        return table.tolist()
    return [list(row) for row in table]


def subgroup_closure(prep, identity, seed):
    """Close ``{identity} | seed`` under the group product.

    Returns ``(mask, order)`` where ``mask`` is a bitmask over element
    indices and ``order`` its popcount.
    """
    table = prep
    members = [identity]
    mask = 1 << identity
    for s in seed:
        s = int(s)
        if not (mask >> s) & 1:
            mask |= 1 << s
            members.append(s)
    i = 1
    while i < len(members):
        x = members[i]
        row = table[x]
        j = 0
        while j < len(members):
            y = members[j]
            p = row[y]
            if not (mask >> p) & 1:
                mask |= 1 << p
                members.append(p)
            q = table[y][x]
            if not (mask >> q) & 1:
                mask |= 1 << q
                members.append(q)
            j += 1
        i += 1
    return mask, len(members)


def prepare_graph(neighbors):
    """Return the backend-specific handle for an adjacency structure."""
    return [list(adj) for adj in neighbors]


def vertex_disjoint_paths(prep, s, t, skip_direct=False, cutoff=-1):
    """Count internally vertex-disjoint s-t paths (Dinic on split graph).

    ``skip_direct`` drops the direct s-t arcs (used for adjacent
    terminals).  A non-negative ``cutoff`` stops once that many paths
    are found; the returned value is then ``min(true value, cutoff)``.
    """
    neighbors = prep
    n = len(neighbors)
    if s == t:
        raise ValueError("source and sink must differ")
    limit = n if cutoff < 0 else cutoff
    if limit == 0:
        return 0

    # split nodes: in(v) = 2v, out(v) = 2v + 1
    nnodes = 2 * n
    graph = [[] for _ in range(nnodes)]
    eto = []
    ecap = []

    def add(u, v):
        graph[u].append(len(eto))
        eto.append(v)
        ecap.append(1)
        graph[v].append(len(eto))
        eto.append(u)
        ecap.append(0)

    for v in range(n):
        if v != s and v != t:
            add(2 * v, 2 * v + 1)
    for u in range(n):
        for v in neighbors[u]:
            if skip_direct and ((u == s and v == t) or (u == t and v == s)):
                continue
            add(2 * u + 1, 2 * v)

    src = 2 * s + 1
    snk = 2 * t
    flow = 0
    while flow < limit:
        level = [-1] * nnodes
        level[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            lu = level[u] + 1
            for e in graph[u]:
                v = eto[e]
                if ecap[e] > 0 and level[v] < 0:
                    level[v] = lu
                    queue.append(v)
        if level[snk] < 0:
            break
        iters = [0] * nnodes
        while flow < limit:
            path = []
            u = src
            found = False
            while True:
                if u == snk:
                    found = True
                    break
                advanced = False
                adj = graph[u]
                i = iters[u]
                while i < len(adj):
                    e = adj[i]
                    v = eto[e]
                    if ecap[e] > 0 and level[v] == level[u] + 1:
                        iters[u] = i
                        path.append(e)
                        u = v
                        advanced = True
                        break
                    i += 1
                if advanced:
                    continue
                iters[u] = i
                if u == src:
                    break
                level[u] = -1
                e = path.pop()
                u = eto[e ^ 1]
                iters[u] += 1
            if not found:
                break
            for e in path:
                ecap[e] -= 1
                ecap[e ^ 1] += 1
            flow += 1
    return flow
