"""Intersection graphs of subgroup lattices and their vertex connectivity.

Vertices are the proper non-trivial subgroups in (order, members) order;
two vertices are adjacent when the subgroups meet beyond the identity.
Connectivity follows the conventions: kappa(trivial group) = -2,
kappa(prime order) = -1, kappa of a complete graph on n vertices = n-1,
kappa of a disconnected non-empty graph = 0; otherwise kappa is the
minimum number of independent paths over pairs of minimal subgroups,
computed by unit-capacity vertex-split max-flow.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Optional

from . import kernels
from .errors import ValidationError
from .groups import FiniteGroup, factorize
from .lattice import SubgroupLattice, all_subgroups

BRUTE_FORCE_VERTEX_LIMIT = 15


class IntersectionGraph:
    """Adjacency structure over the proper non-trivial subgroups."""

    __slots__ = ("lattice", "vertices", "n", "neighbor_masks", "degrees", "_prep")

    def __init__(self, lattice: SubgroupLattice, vertices, neighbor_masks):
        self.lattice = lattice
        self.vertices = vertices
        self.n = len(vertices)
        self.neighbor_masks = neighbor_masks
        self.degrees = [m.bit_count() for m in neighbor_masks]
        self._prep = None

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.neighbor_masks[i] >> j) & 1)

    def neighbors(self, i: int) -> list[int]:
        out = []
        m = self.neighbor_masks[i]
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def is_complete(self) -> bool:
        return all(d == self.n - 1 for d in self.degrees)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors(i) if i < j]

    @property
    def prepared(self):
        if self._prep is None:
            self._prep = kernels.prepare_graph([self.neighbors(i) for i in range(self.n)])
        return self._prep

    def minimal_vertex_indices(self) -> list[int]:
        """Graph-vertex indices of the minimal subgroups, in vertex order."""
        pos = {li: vi for vi, li in enumerate(self.lattice.proper_nontrivial)}
        return [pos[i] for i in self.lattice.minimal_indices]


def build_graph(L: SubgroupLattice) -> IntersectionGraph:
    """Edge between distinct proper non-trivial subgroups H, K iff
    their intersection holds more than the identity."""
    verts = [L.subgroups[i] for i in L.proper_nontrivial]
    ident_bit = 1 << L.group.identity
    masks = [s.mask for s in verts]
    n = len(verts)
    nbr = [0] * n
    for i in range(n):
        mi = masks[i]
        for j in range(i + 1, n):
            if mi & masks[j] != ident_bit:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
    return IntersectionGraph(L, verts, nbr)


def connected_components(g: IntersectionGraph) -> list[list[int]]:
    """Vertex partition into components; empty graph gives an empty list."""
    unseen = (1 << g.n) - 1
    comps = []
    while unseen:
        low = unseen & -unseen
        frontier = low
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= g.neighbor_masks[b.bit_length() - 1]
                m ^= b
            frontier = nxt & unseen & ~comp
        unseen &= ~comp
        members = []
        while comp:
            b = comp & -comp
            members.append(b.bit_length() - 1)
            comp ^= b
        comps.append(members)
    return comps


def max_independent_paths(g: IntersectionGraph, a: int, b: int, cutoff: int = -1) -> int:
    """Maximum number of internally vertex-disjoint a-b paths.

    For adjacent terminals this is one direct edge plus the disjoint
    paths of the graph with that edge removed, matching Menger's count
    of internally independent paths.
    """
    if a == b:
        raise ValidationError("path endpoints must differ")
    if cutoff == 0:
        return 0
    if g.adjacent(a, b):
        inner = -1 if cutoff < 0 else cutoff - 1
        return 1 + kernels.vertex_disjoint_paths(
            g.prepared, a, b, skip_direct=True, cutoff=inner
        )
    return kernels.vertex_disjoint_paths(g.prepared, a, b, skip_direct=False, cutoff=cutoff)


def _kappa_over_pairs(g: IntersectionGraph, pairs) -> int:
    best = -1
    for a, b in pairs:
        if best >= 0:
            # common neighbours give that many disjoint two-step paths
            # (plus the direct edge), so such pairs cannot lower the min
            lower = (g.neighbor_masks[a] & g.neighbor_masks[b]).bit_count()
            if g.adjacent(a, b):
                lower += 1
            if lower >= best:
                continue
        value = max_independent_paths(g, a, b, cutoff=best)
        if best < 0 or value < best:
            best = value
    return best


def kappa_of_graph(g: IntersectionGraph) -> int:
    """Connectivity of a non-empty intersection graph."""
    if g.n == 0:
        raise ValidationError("empty graph: kappa is fixed by group order conventions")
    if g.is_complete():
        return g.n - 1
    if len(connected_components(g)) > 1:
        return 0
    mins = g.minimal_vertex_indices()
    if len(mins) < 2:
        # a non-adjacent pair forces two distinct minimal subgroups
        raise AssertionError("non-complete graph with fewer than two minimal subgroups")
    return _kappa_over_pairs(g, combinations(mins, 2))


def kappa(
    G: FiniteGroup,
    lattice: Optional[SubgroupLattice] = None,
    graph: Optional[IntersectionGraph] = None,
) -> int:
    """Vertex connectivity of the intersection graph of G.

    Conventions: -2 for the trivial group, -1 for prime order, n-1 for a
    complete graph on n vertices, 0 when disconnected; otherwise the
    minimum independent-path count over pairs of minimal subgroups.
    """
    if G.order == 1:
        return -2
    if factorize(G.order) == {G.order: 1}:
        return -1
    L = lattice if lattice is not None else all_subgroups(G)
    g = graph if graph is not None else build_graph(L)
    return kappa_of_graph(g)


def kappa_all_pairs(g: IntersectionGraph) -> int:
    """Connectivity via flows over all vertex pairs (reduction oracle)."""
    if g.n == 0:
        raise ValidationError("empty graph")
    if g.n == 1:
        return 0
    return _kappa_over_pairs(g, combinations(range(g.n), 2))


def is_k_connected(
    G: FiniteGroup,
    k: int,
    lattice: Optional[SubgroupLattice] = None,
    graph: Optional[IntersectionGraph] = None,
) -> bool:
    """True iff the graph has more than k vertices and kappa >= k."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    if G.order == 1 or factorize(G.order) == {G.order: 1}:
        return False
    L = lattice if lattice is not None else all_subgroups(G)
    g = graph if graph is not None else build_graph(L)
    if g.n <= k:
        return False
    return kappa_of_graph(g) >= k


def cut_vertices(g: IntersectionGraph) -> tuple[list[int], bool]:
    """All cut vertices plus a connectedness flag.

    A disconnected (or empty) graph yields ([], False).  For the
    complete graph on two vertices both vertices count as cut vertices.
    """
    if g.n == 0 or len(connected_components(g)) != 1:
        return [], False
    if g.n == 1:
        return [], True
    if g.n == 2 and g.is_complete():
        return [0, 1], True
    return sorted(_articulation_points(g)), True


def _articulation_points(g: IntersectionGraph) -> set[int]:
    n = g.n
    disc = [-1] * n
    low = [0] * n
    points: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    if low[v] < low[pv]:
                        low[pv] = low[v]
                    if pv != root and low[v] >= disc[pv]:
                        points.add(pv)
        if root_children > 1:
            points.add(root)
    return points


def _connected_on(g: IntersectionGraph, alive_mask: int) -> bool:
    """Is the induced subgraph on the vertices of alive_mask connected?

    A subgraph with fewer than two vertices counts as connected.
    """
    count = alive_mask.bit_count()
    if count <= 1:
        return True
    start = (alive_mask & -alive_mask).bit_length() - 1
    frontier = 1 << start
    comp = 0
    while frontier:
        comp |= frontier
        nxt = 0
        m = frontier
        while m:
            b = m & -m
            nxt |= g.neighbor_masks[b.bit_length() - 1]
            m ^= b
        frontier = nxt & alive_mask & ~comp
    return comp == alive_mask


def min_separating_set_bruteforce(
    g: IntersectionGraph, max_vertices: int = BRUTE_FORCE_VERTEX_LIMIT
) -> tuple[int, tuple[int, ...]]:
    """Exhaustive minimum separating set (test oracle).

    Returns (size, witness).  Requires a non-complete graph with at most
    ``max_vertices`` vertices; subsets are tried in increasing size and
    lexicographic order, so the witness is deterministic.
    """
    if g.n > max_vertices:
        raise ValidationError(f"too many vertices for brute force ({g.n} > {max_vertices})")
    if g.is_complete() and g.n > 1:
        raise ValidationError("complete graphs have no separating set")
    full = (1 << g.n) - 1
    for size in range(0, g.n - 1):
        for combo in combinations(range(g.n), size):
            removed = 0
            for v in combo:
                removed |= 1 << v
            alive = full & ~removed
            if alive.bit_count() >= 2 and not _connected_on(g, alive):
                return size, combo
    raise ValidationError("no separating set found")


def is_upward_closed(L: SubgroupLattice, vertex_indices) -> bool:
    """Is the vertex set closed under passing to larger proper subgroups?"""
    sel = set(vertex_indices)
    pos = {li: vi for vi, li in enumerate(L.proper_nontrivial)}
    for v in sel:
        li = L.proper_nontrivial[v]
        for cj in L.containers[li]:
            if cj == L.full_index:
                continue
            if pos[cj] not in sel:
                return False
    return True


# -- separator witness ----------------------------------------------------


def _min_vertex_cut(g: IntersectionGraph, s: int, t: int) -> tuple[int, tuple[int, ...]]:
    """Minimum s-t vertex cut (non-adjacent terminals) with a witness.

    Pure-Python Dinic on the split graph; after the flow is maximum, the
    cut consists of the vertices whose in-node is residual-reachable
    from the source while the out-node is not.
    """
    if g.adjacent(s, t):
        raise ValidationError("vertex cuts need non-adjacent terminals")
    n = g.n
    nnodes = 2 * n
    graph = [[] for _ in range(nnodes)]
    eto: list[int] = []
    ecap: list[int] = []

    def add(u, v, cap):
        graph[u].append(len(eto))
        eto.append(v)
        ecap.append(cap)
        graph[v].append(len(eto))
        eto.append(u)
        ecap.append(0)

    # adjacency arcs get effectively infinite capacity so that the
    # minimum cut consists of vertex-split arcs only
    for v in range(n):
        if v != s and v != t:
            add(2 * v, 2 * v + 1, 1)
    for u in range(n):
        for v in g.neighbors(u):
            add(2 * u + 1, 2 * v, n)
    src, snk = 2 * s + 1, 2 * t
    while True:
        parent_edge = [-1] * nnodes
        parent_edge[src] = -2
        q = deque([src])
        while q:
            u = q.popleft()
            for e in graph[u]:
                v = eto[e]
                if ecap[e] > 0 and parent_edge[v] == -1:
                    parent_edge[v] = e
                    q.append(v)
        if parent_edge[snk] == -1:
            break
        v = snk
        while v != src:
            e = parent_edge[v]
            ecap[e] -= 1
            ecap[e ^ 1] += 1
            v = eto[e ^ 1]
    reachable = [False] * nnodes
    reachable[src] = True
    q = deque([src])
    while q:
        u = q.popleft()
        for e in graph[u]:
            v = eto[e]
            if ecap[e] > 0 and not reachable[v]:
                reachable[v] = True
                q.append(v)
    cut = tuple(
        v for v in range(n) if v not in (s, t) and reachable[2 * v] and not reachable[2 * v + 1]
    )
    return len(cut), cut


def minimum_separator_witness(g: IntersectionGraph) -> tuple[int, tuple[int, ...]]:
    """A minimum separating set achieving kappa, for non-complete graphs.

    Distinct minimal subgroups always intersect trivially, so the
    minimizing pair is non-adjacent and a flow cut yields the witness;
    minimum separating sets are upward closed.
    """
    if g.is_complete():
        raise ValidationError("complete graphs have no separating set")
    if len(connected_components(g)) > 1:
        return 0, ()
    mins = g.minimal_vertex_indices()
    best = -1
    besta = bestb = -1
    for a, b in combinations(mins, 2):
        value = max_independent_paths(g, a, b, cutoff=best)
        if best < 0 or value < best:
            best, besta, bestb = value, a, b
    size, cut = _min_vertex_cut(g, besta, bestb)
    if size != best:
        raise AssertionError("internal error: cut size does not match flow value")
    return size, cut


# -- exports ---------------------------------------------------------------


def to_dot(g: IntersectionGraph) -> str:
    """Render-ready DOT text with vertex labels order=k,index=i."""
    lines = ["graph intersection {"]
    for i, s in enumerate(g.vertices):
        lines.append(f'  v{i} [label="order={s.order},index={i}"];')
    for i, j in g.edges():
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: IntersectionGraph) -> dict:
    """Adjacency plus vertex subgroup orders, deterministically ordered."""
    return {
        "group_order": g.lattice.group.order,
        "label": g.lattice.group.label,
        "vertex_count": g.n,
        "vertices": [
            {"index": i, "order": s.order, "members": list(s.members)}
            for i, s in enumerate(g.vertices)
        ],
        "edges": [[i, j] for i, j in g.edges()],
    }
