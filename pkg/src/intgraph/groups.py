"""Concrete finite groups as full multiplication tables.

Every group is an order-n table of element indices; element 0..n-1 are
opaque labels whose meaning is fixed by the constructor that produced
them.  Identity and inverses are derived and validated on construction,
and associativity is checked exhaustively up to a configurable bound
(structural constructors are trusted above it).

Element indices are canonical per construction, never per isomorphism
class: comparing two groups always goes through ``are_isomorphic``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import (
    ClosureCapExceeded,
    IsomorphismBudgetExceeded,
    ValidationError,
)

ASSOCIATIVITY_CHECK_BOUND = 512
GENERATION_CAP = 10_000
ISO_NODE_BUDGET = 10_000_000


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n < 1:
        raise ValidationError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FiniteGroup:
    """A finite group given by its multiplication table.

    Instances are immutable after construction and safe to share across
    threads; all operations on them are pure.
    """

    __slots__ = (
        "order",
        "table",
        "identity",
        "inverses",
        "label",
        "_prep",
        "_rows",
        "_orders",
        "_class_sizes",
        "_gens",
        "_abelian",
    )

    def __init__(
        self,
        table,
        label: str = "",
        *,
        assoc_bound: int = ASSOCIATIVITY_CHECK_BOUND,
    ):
        tb = np.ascontiguousarray(table, dtype=np.int32)
        if tb.ndim != 2 or tb.shape[0] != tb.shape[1]:
            raise ValidationError("multiplication table must be square")
        n = int(tb.shape[0])
        if n == 0:
            raise ValidationError("group order must be positive")
        if tb.min() < 0 or tb.max() >= n:
            raise ValidationError("table entries must be element indices in 0..n-1")
        self.order = n
        self.table = tb
        self.table.setflags(write=False)
        self.label = label
        self._prep = None
        self._rows = None
        self._orders = None
        self._class_sizes = None
        self._gens = None
        self._abelian = None
        self.identity = self._find_identity()
        self.inverses = self._find_inverses()
        self._check_latin()
        # associativity above the bound is trusted (cubic cost); the
        # structural constructors guarantee it by construction
        if n <= assoc_bound:
            self._check_associativity()

    # -- validation ---------------------------------------------------

    def _find_identity(self) -> int:
        rng = np.arange(self.order, dtype=np.int32)
        rows = np.nonzero((self.table == rng[None, :]).all(axis=1))[0]
        for e in rows:
            if (self.table[:, e] == rng).all():
                return int(e)
        raise ValidationError("table has no identity element")

    def _find_inverses(self) -> np.ndarray:
        hits = np.argwhere(self.table == self.identity)
        inv = np.full(self.order, -1, dtype=np.int32)
        inv[hits[:, 0]] = hits[:, 1]
        if (inv < 0).any():
            raise ValidationError("table has an element without an inverse")
        # two-sided
        if not (self.table[inv, np.arange(self.order)] == self.identity).all():
            raise ValidationError("inverses are not two-sided")
        inv.setflags(write=False)
        return inv

    def _check_latin(self) -> None:
        n = self.order
        rng = np.arange(n, dtype=np.int32)
        if not (np.sort(self.table, axis=1) == rng[None, :]).all():
            raise ValidationError("a table row is not a permutation of 0..n-1")
        if not (np.sort(self.table, axis=0) == rng[:, None]).all():
            raise ValidationError("a table column is not a permutation of 0..n-1")

    def _check_associativity(self) -> None:
        tb = self.table
        for a in range(self.order):
            if not (tb[tb[a]] == tb[a][tb]).all():
                raise ValidationError("table is not associative")

    # -- basic arithmetic ---------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc = self.identity
        while k:
            if k & 1:
                acc = int(self.table[acc, x])
            x = int(self.table[x, x])
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        e = self.identity
        k = 1
        y = x
        while y != e:
            y = int(self.table[y, x])
            k += 1
        return k

    # -- cached structure ----------------------------------------------

    @property
    def prepared_table(self):
        if self._prep is None:
            self._prep = kernels.prepare_table(self.table)
        return self._prep

    def rows(self) -> list[list[int]]:
        if self._rows is None:
            self._rows = self.table.tolist()
        return self._rows

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int32)
            tb = self.rows()
            e = self.identity
            for x in range(n):
                k = 1
                y = x
                while y != e:
                    y = tb[y][x]
                    k += 1
                orders[x] = k
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool((self.table == self.table.T).all())
        return self._abelian

    def generating_set(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by smallest index."""
        if self._gens is None:
            gens: list[int] = []
            mask = 1 << self.identity
            size = 1
            x = 0
            while size < self.order:
                while (mask >> x) & 1:
                    x += 1
                gens.append(x)
                mask, size = kernels.subgroup_closure(
                    self.prepared_table, self.identity, gens
                )
            self._gens = tuple(gens)
        return self._gens

    def conjugation_permutation(self, g: int) -> np.ndarray:
        """The permutation x -> g x g^-1 as an index array."""
        return self.table[self.table[g], int(self.inverses[g])]

    def conjugacy_class_sizes(self) -> np.ndarray:
        """Size of the conjugacy class of each element."""
        if self._class_sizes is None:
            n = self.order
            perms = [self.conjugation_permutation(g) for g in self.generating_set()]
            seen = np.zeros(n, dtype=bool)
            sizes = np.zeros(n, dtype=np.int32)
            for x in range(n):
                if seen[x]:
                    continue
                orbit = [x]
                seen[x] = True
                i = 0
                while i < len(orbit):
                    y = orbit[i]
                    for p in perms:
                        z = int(p[y])
                        if not seen[z]:
                            seen[z] = True
                            orbit.append(z)
                    i += 1
                sizes[orbit] = len(orbit)
            sizes.setflags(write=False)
            self._class_sizes = sizes
        return self._class_sizes

    def __repr__(self) -> str:
        lab = f" {self.label!r}" if self.label else ""
        return f"<FiniteGroup{lab} order={self.order}>"


# -- structural helpers on groups --------------------------------------


def element_order(G: FiniteGroup, x: int) -> int:
    """Least k >= 1 with x^k equal to the identity."""
    return G.element_order(x)


def exponent(G: FiniteGroup) -> int:
    return int(math.lcm(*(int(o) for o in G.element_orders())))


def is_cyclic(G: FiniteGroup) -> bool:
    return int(G.element_orders().max()) == G.order


def is_elementary_abelian(G: FiniteGroup) -> bool:
    """Abelian with all non-identity elements of the same prime order."""
    if G.order == 1:
        return True
    fact = factorize(G.order)
    if len(fact) != 1:
        return False
    (p,) = fact
    if not G.is_abelian():
        return False
    orders = G.element_orders()
    return bool((orders[orders > 1] == p).all())


# -- constructors -------------------------------------------------------


def cyclic(n: int, label: str = "") -> FiniteGroup:
    """The cyclic group of order n with table (i + j) mod n."""
    if n < 1:
        raise ValidationError("cyclic group order must be >= 1")
    rng = np.arange(n, dtype=np.int32)
    table = (rng[:, None] + rng[None, :]) % n
    return FiniteGroup(table, label or f"Z{n}")


def direct_product(
    G: FiniteGroup, H: FiniteGroup, label: str = "", cap: int = GENERATION_CAP
) -> FiniteGroup:
    """Componentwise product on pairs, indexed as a*|H| + b."""
    if G.order * H.order > cap:
        raise ClosureCapExceeded(
            f"product order {G.order * H.order} exceeds the cap of {cap}"
        )
    nh = H.order
    tg = G.table.astype(np.int64)
    th = H.table.astype(np.int64)
    big = tg[:, None, :, None] * nh + th[None, :, None, :]
    n = G.order * H.order
    table = big.reshape(n, n)
    lab = label or (f"{G.label}x{H.label}" if G.label and H.label else "")
    return FiniteGroup(table, lab)


def semidirect_product(
    N: FiniteGroup,
    H: FiniteGroup,
    action: Sequence[Sequence[int]],
    label: str = "",
) -> FiniteGroup:
    """Outer semidirect product N x| H for a given action.

    ``action[h]`` is the automorphism of N induced by the H-element h,
    written as an index array of length |N|.  The action is verified to
    be a homomorphism from H into Aut(N) before any table is built.
    """
    if len(action) != H.order:
        raise ValidationError("action must provide one automorphism per H-element")
    acts = [np.asarray(a, dtype=np.int32) for a in action]
    nN = N.order
    rng = np.arange(nN, dtype=np.int32)
    for h, perm in enumerate(acts):
        if perm.shape != (nN,) or not (np.sort(perm) == rng).all():
            raise ValidationError(f"action of H-element {h} is not a bijection on N")
        if not (perm[N.table] == N.table[perm[:, None], perm[None, :]]).all():
            raise ValidationError(f"action of H-element {h} is not multiplicative on N")
    if not (acts[H.identity] == rng).all():
        raise ValidationError("action of the H-identity must be the identity map")
    for h1 in range(H.order):
        for h2 in range(H.order):
            if not (acts[H.mul(h1, h2)] == acts[h1][acts[h2]]).all():
                raise ValidationError("action is not a homomorphism from H to Aut(N)")

    nH = H.order
    n = nN * nH
    table = np.empty((n, n), dtype=np.int64)
    a_idx = np.arange(nN, dtype=np.int64)
    for h1 in range(nH):
        rows = a_idx * nH + h1
        twisted = N.table[:, acts[h1]].astype(np.int64)  # [n1, n2] -> n1 * act(n2)
        for h2 in range(nH):
            cols = a_idx * nH + h2
            table[np.ix_(rows, cols)] = twisted * nH + H.mul(h1, h2)
    return FiniteGroup(table, label)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p * q)(i) = p(q(i)): apply q first, then p."""
    return tuple(p[j] for j in q)


def from_permutation_generators(
    degree: int,
    generators: Iterable[Sequence[int]],
    cap: int = GENERATION_CAP,
    label: str = "",
) -> FiniteGroup:
    """Group generated by permutations of {0..degree-1} under composition.

    Elements are ordered identity-first, then breadth-first by generator
    application, which makes the construction deterministic.
    """
    if degree < 1:
        raise ValidationError("degree must be positive")
    gens: list[tuple[int, ...]] = []
    for g in generators:
        p = tuple(int(v) for v in g)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise ValidationError(f"generator {g!r} is not a bijection on 0..{degree - 1}")
        gens.append(p)
    ident = tuple(range(degree))
    index: dict[tuple[int, ...], int] = {ident: 0}
    elems: list[tuple[int, ...]] = [ident]
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = _compose(x, g)
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureCapExceeded(
                        f"closure exceeded the cap of {cap} elements"
                    )
                index[y] = len(elems)
                elems.append(y)
        i += 1
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        pa = elems[a]
        for b in range(n):
            table[a, b] = index[_compose(pa, elems[b])]
    return FiniteGroup(table, label)


def quotient_group(G: FiniteGroup, N) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient of G by a normal subgroup, plus the projection map.

    ``N`` may be anything with a ``members`` attribute or an iterable of
    element indices.  Cosets are indexed by their minimal member, in
    increasing order; the returned projection maps each G-element to its
    coset index and is verified to be a homomorphism.
    """
    members = np.asarray(sorted(_coerce_members(N)), dtype=np.int64)
    mask, size = kernels.subgroup_closure(G.prepared_table, G.identity, members)
    if size != len(members) or any(not (mask >> int(m)) & 1 for m in members):
        raise ValidationError("N is not a subgroup of G")
    member_set = set(int(m) for m in members)
    for g in G.generating_set():
        conj = G.table[G.table[g, members], int(G.inverses[g])]
        if set(int(c) for c in conj) != member_set:
            raise ValidationError("N is not normal in G")
    reps = G.table[members, :].min(axis=0)
    unique_reps = np.unique(reps)
    proj = np.searchsorted(unique_reps, reps).astype(np.int32)
    qtable = proj[G.table[np.ix_(unique_reps, unique_reps)]]
    Q = FiniteGroup(qtable)
    if not (proj[G.table] == Q.table[proj[:, None], proj[None, :]]).all():
        raise ValidationError("projection is not a homomorphism")
    proj.setflags(write=False)
    return Q, proj


def _coerce_members(N) -> list[int]:
    if hasattr(N, "members"):
        return [int(m) for m in N.members]
    return [int(m) for m in N]


# -- isomorphism testing ------------------------------------------------


def _invariants(G: FiniteGroup) -> list[tuple[int, int]]:
    orders = G.element_orders()
    sizes = G.conjugacy_class_sizes()
    return [(int(o), int(s)) for o, s in zip(orders, sizes)]


def _iso_generator_sequence(
    G: FiniteGroup, inv_g: list[tuple[int, int]], cand_count: Counter
) -> list[int]:
    """Generators of G ordered to keep the image-candidate sets small."""
    gens: list[int] = []
    mask = 1 << G.identity
    size = 1
    n = G.order
    while size < n:
        best = None
        best_key = None
        for x in range(n):
            if (mask >> x) & 1:
                continue
            key = (cand_count[inv_g[x]], -inv_g[x][0], x)
            if best_key is None or key < best_key:
                best, best_key = x, key
        gens.append(best)
        mask, size = kernels.subgroup_closure(G.prepared_table, G.identity, gens)
    return gens


def _extend_partial_map(tg, th, members, mapping, used, x, y, budget, node_budget):
    """Extend a partial multiplicative map by x -> y.

    ``members`` lists the closed domain so far (mapped consistently);
    returns the extended (members, mapping, used) or None on conflict.
    """
    if used[y]:
        return None
    mapping = mapping.copy()
    used = used.copy()
    members = list(members)
    mapping[x] = y
    used[y] = 1
    members.append(x)
    i = len(members) - 1
    while i < len(members):
        a = members[i]
        fa = mapping[a]
        row_a = tg[a]
        hrow_a = th[fa]
        j = 0
        while j < len(members):
            budget[0] -= 1
            if budget[0] < 0:
                raise IsomorphismBudgetExceeded(
                    f"isomorphism search exceeded {node_budget} nodes"
                )
            b = members[j]
            fb = mapping[b]
            p = row_a[b]
            pim = hrow_a[fb]
            fp = mapping[p]
            if fp != -1:
                if fp != pim:
                    return None
            elif used[pim]:
                return None
            else:
                mapping[p] = pim
                used[pim] = 1
                members.append(p)
            p = tg[b][a]
            pim = th[fb][fa]
            fp = mapping[p]
            if fp != -1:
                if fp != pim:
                    return None
            elif used[pim]:
                return None
            else:
                mapping[p] = pim
                used[pim] = 1
                members.append(p)
            j += 1
        i += 1
    return members, mapping, used


def isomorphism_from_generator_images(
    G: FiniteGroup,
    H: FiniteGroup,
    generators: Sequence[int],
    images: Sequence[int],
    node_budget: int = ISO_NODE_BUDGET,
) -> Optional[list[int]]:
    """The isomorphism G -> H sending each generator to its image, if any.

    Returns None when the assignment does not extend to a bijective
    multiplicative map (the generators must generate G).
    """
    if G.order != H.order or len(generators) != len(images):
        return None
    n = G.order
    tg = G.rows()
    th = H.rows()
    mapping = [-1] * n
    used = bytearray(n)
    mapping[G.identity] = H.identity
    used[H.identity] = 1
    members = [G.identity]
    budget = [node_budget]
    for x, y in zip(generators, images):
        if mapping[x] != -1:
            if mapping[x] != y:
                return None
            continue
        ext = _extend_partial_map(tg, th, members, mapping, used, x, y, budget, node_budget)
        if ext is None:
            return None
        members, mapping, used = ext
    if len(members) != n:
        return None
    return mapping


def are_isomorphic(
    G: FiniteGroup,
    H: FiniteGroup,
    node_budget: int = ISO_NODE_BUDGET,
) -> tuple[bool, Optional[list[int]]]:
    """Decide isomorphism by backtracking on generator images.

    Returns ``(True, mapping)`` with a verified isomorphism (a list
    sending G-indices to H-indices) or ``(False, None)``.  Raises
    `IsomorphismBudgetExceeded` when the search exceeds its node budget,
    which means "unknown" rather than "no".
    """
    if G.order != H.order:
        return False, None
    n = G.order
    if n == 1:
        return True, [H.identity]
    inv_g = _invariants(G)
    inv_h = _invariants(H)
    if Counter(inv_g) != Counter(inv_h):
        return False, None

    cand_count = Counter(inv_h)
    gens = _iso_generator_sequence(G, inv_g, cand_count)
    candidates: dict[int, list[int]] = {}
    for x in set(gens):
        pool = [y for y in range(n) if inv_h[y] == inv_g[x]]
        pool.sort(key=lambda y: (inv_h[y][0], inv_h[y][1], y))
        candidates[x] = pool

    tg = G.rows()
    th = H.rows()
    budget = [node_budget]

    def extend(members, mapping, used, x, y):
        return _extend_partial_map(tg, th, members, mapping, used, x, y, budget, node_budget)

    init_mapping = [-1] * n
    init_mapping[G.identity] = H.identity
    init_used = bytearray(n)
    init_used[H.identity] = 1
    init_members = [G.identity]

    def backtrack(level, members, mapping, used):
        if len(members) == n:
            return mapping
        while level < len(gens) and mapping[gens[level]] != -1:
            level += 1
        if level == len(gens):
            return None
        x = gens[level]
        for y in candidates[x]:
            ext = extend(members, mapping, used, x, y)
            if ext is None:
                continue
            result = backtrack(level + 1, *ext)
            if result is not None:
                return result
        return None

    mapping = backtrack(0, init_members, init_mapping, init_used)
    if mapping is None:
        return False, None
    phi = np.asarray(mapping, dtype=np.int32)
    if not (phi[G.table] == H.table[phi[:, None], phi[None, :]]).all():
        raise AssertionError("internal error: witness map is not multiplicative")
    return True, mapping


# -- text formats --------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> tuple[int, ...]:
    """Parse disjoint-cycle notation over 0-based points, e.g. (0 1 2)(3 4)."""
    stripped = text.strip()
    if not stripped:
        raise ValidationError("empty permutation")
    consumed = "".join(_CYCLE_RE.findall(stripped))
    without = _CYCLE_RE.sub("", stripped).strip()
    if without:
        raise ValidationError(f"malformed permutation {text!r}")
    perm = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        points = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if not points:
            continue
        if any(p < 0 or p >= degree for p in points):
            raise ValidationError(f"point out of range in {text!r}")
        if len(set(points)) != len(points) or seen.intersection(points):
            raise ValidationError(f"cycles are not disjoint in {text!r}")
        seen.update(points)
        for a, b in zip(points, points[1:] + points[:1]):
            perm[a] = b
    del consumed
    return tuple(perm)


def parse_permutation_file_text(text: str) -> tuple[int, list[tuple[int, ...]]]:
    """Parse a generator file: one permutation per line, # comments allowed.

    The degree is inferred from the largest point mentioned.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ValidationError("no permutations in file")
    points = [int(tok) for ln in lines for tok in re.findall(r"\d+", ln)]
    degree = (max(points) + 1) if points else 1
    return degree, [parse_permutation(ln, degree) for ln in lines]


def group_from_dict(obj: dict, *, assoc_bound: int = ASSOCIATIVITY_CHECK_BOUND) -> FiniteGroup:
    """Build and fully validate a group from its file representation."""
    if not isinstance(obj, dict):
        raise ValidationError("group record must be an object")
    table = obj.get("table")
    if table is None:
        raise ValidationError("group record lacks a 'table' field")
    order = obj.get("order")
    if order is not None and order != len(table):
        raise ValidationError(
            f"declared order {order} does not match table size {len(table)}"
        )
    label = str(obj.get("label", ""))
    return FiniteGroup(table, label, assoc_bound=assoc_bound)


def group_to_dict(G: FiniteGroup) -> dict:
    return {"label": G.label, "order": G.order, "table": G.table.tolist()}
