"""Subgroup lattice enumeration and the structural invariants built on it.

Subgroups are identified by a bitmask over element indices of the
parent group.  The lattice is built by seeding all cyclic subgroups and
closing joins with cyclic subgroups layer by layer until a fixpoint;
every subgroup is a join of cyclic ones, so this is exhaustive.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import LatticeCapExceeded, ValidationError
from .groups import FiniteGroup, factorize, quotient_group

LATTICE_CAP = 100_000


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _members_mask(members: Iterable[int]) -> int:
    mask = 0
    for m in members:
        mask |= 1 << int(m)
    return mask


class Subgroup:
    """An element-membership bitset over a parent group."""

    __slots__ = ("parent", "mask", "order", "_members")

    def __init__(self, parent: FiniteGroup, mask: int, order: Optional[int] = None):
        self.parent = parent
        self.mask = mask
        self.order = order if order is not None else mask.bit_count()
        self._members = None

    @property
    def members(self) -> tuple[int, ...]:
        if self._members is None:
            self._members = _mask_members(self.mask)
        return self._members

    def contains(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_full(self) -> bool:
        return self.order == self.parent.order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.mask == self.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of n={self.parent.order}>"


class SubgroupLattice:
    """All subgroups of a group with inclusion structure."""

    __slots__ = (
        "group",
        "subgroups",
        "index_by_mask",
        "containers",
        "proper_nontrivial",
        "minimal_indices",
        "maximal_indices",
        "trivial_index",
        "full_index",
        "_normal_flags",
    )

    def __init__(self, group: FiniteGroup, masks: dict[int, int]):
        self.group = group
        subs = [Subgroup(group, m, o) for m, o in masks.items()]
        subs.sort(key=lambda s: (s.order, s.members))
        self.subgroups = subs
        self.index_by_mask = {s.mask: i for i, s in enumerate(subs)}
        self.trivial_index = 0
        self.full_index = len(subs) - 1
        self._normal_flags = None

        n = len(subs)
        by_order: dict[int, list[int]] = {}
        for i, s in enumerate(subs):
            by_order.setdefault(s.order, []).append(i)
        orders = sorted(by_order)
        containers: list[list[int]] = [[] for _ in range(n)]
        for i, s in enumerate(subs):
            for o in orders:
                if o <= s.order or o % s.order != 0:
                    continue
                smask = s.mask
                for j in by_order[o]:
                    if smask & ~subs[j].mask == 0:
                        containers[i].append(j)
        self.containers = [tuple(c) for c in containers]

        self.proper_nontrivial = tuple(
            i for i, s in enumerate(subs) if 1 < s.order < group.order
        )
        has_child = [False] * n
        for i in self.proper_nontrivial:
            for j in self.containers[i]:
                has_child[j] = True
        self.minimal_indices = tuple(
            i for i in self.proper_nontrivial if not has_child[i]
        )
        full = self.full_index
        self.maximal_indices = tuple(
            i for i in self.proper_nontrivial if self.containers[i] == (full,)
        )

    def __len__(self) -> int:
        return len(self.subgroups)

    def subgroup_index(self, S: Subgroup) -> int:
        try:
            return self.index_by_mask[S.mask]
        except KeyError:
            raise ValidationError("subgroup does not belong to this lattice") from None

    def inclusion_pairs(self):
        """Yield all strict inclusion pairs (i, j) with subgroup i < j."""
        for i, cont in enumerate(self.containers):
            for j in cont:
                yield (i, j)

    def normal_flags(self) -> list[bool]:
        if self._normal_flags is None:
            G = self.group
            gens = G.generating_set()
            flags = []
            for s in self.subgroups:
                flags.append(all(conjugate_mask(G, g, s) == s.mask for g in gens))
            self._normal_flags = flags
        return self._normal_flags

    def normal_indices(self) -> list[int]:
        flags = self.normal_flags()
        return [i for i in range(len(self.subgroups)) if flags[i]]

    def conjugacy_classes(self) -> list[list[int]]:
        """Partition subgroup indices into conjugacy classes (on demand)."""
        G = self.group
        gens = G.generating_set()
        seen = [False] * len(self.subgroups)
        classes = []
        for i in range(len(self.subgroups)):
            if seen[i]:
                continue
            orbit = [i]
            seen[i] = True
            k = 0
            while k < len(orbit):
                s = self.subgroups[orbit[k]]
                for g in gens:
                    m = conjugate_mask(G, g, s)
                    j = self.index_by_mask[m]
                    if not seen[j]:
                        seen[j] = True
                        orbit.append(j)
                k += 1
            classes.append(sorted(orbit))
        return classes


def conjugate_mask(G: FiniteGroup, g: int, S: Subgroup) -> int:
    members = np.asarray(S.members, dtype=np.intp)
    conj = G.table[G.table[g, members], int(G.inverses[g])]
    return _members_mask(conj)


def all_subgroups(G: FiniteGroup, max_subgroups: int = LATTICE_CAP) -> SubgroupLattice:
    """Enumerate every subgroup of G (including trivial and full)."""
    prep = G.prepared_table
    e = G.identity
    masks: dict[int, int] = {1 << e: 1}

    cyclics: list[tuple[int, int]] = []  # (mask, generator element)
    cyc_seen: set[int] = set()
    for x in range(G.order):
        mask, order = kernels.subgroup_closure(prep, e, (x,))
        if mask not in masks:
            masks[mask] = order
        if mask not in cyc_seen and order > 1:
            cyc_seen.add(mask)
            cyclics.append((mask, x))

    union_done: set[int] = set()
    frontier = list(masks.keys())
    while frontier:
        fresh: list[int] = []
        for smask in frontier:
            smembers = None
            for cmask, cgen in cyclics:
                if cmask & ~smask == 0:
                    continue
                union = smask | cmask
                if union in union_done:
                    continue
                union_done.add(union)
                if union in masks:
                    continue
                if smembers is None:
                    smembers = _mask_members(smask)
                jmask, jorder = kernels.subgroup_closure(prep, e, smembers + (cgen,))
                if jmask not in masks:
                    if len(masks) >= max_subgroups:
                        raise LatticeCapExceeded(
                            f"subgroup count exceeded the cap of {max_subgroups}"
                        )
                    masks[jmask] = jorder
                    fresh.append(jmask)
        frontier = fresh

    full_mask = (1 << G.order) - 1
    if full_mask not in masks:
        # |G| = 1 is the only case where full == trivial; otherwise the
        # join closure above always reaches G itself.
        masks[full_mask] = G.order
    return SubgroupLattice(G, masks)


def generated_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    mask, order = kernels.subgroup_closure(G.prepared_table, G.identity, elements)
    return Subgroup(G, mask, order)


def minimal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    """Proper non-trivial subgroups containing no smaller one."""
    return [L.subgroups[i] for i in L.minimal_indices]


def is_normal(G: FiniteGroup, H) -> bool:
    S = _as_subgroup(G, H)
    return all(conjugate_mask(G, g, S) == S.mask for g in G.generating_set())


def normalizer(G: FiniteGroup, H) -> Subgroup:
    S = _as_subgroup(G, H)
    mask = 0
    for g in range(G.order):
        if conjugate_mask(G, g, S) == S.mask:
            mask |= 1 << g
    return Subgroup(G, mask)


def centralizer(G: FiniteGroup, H) -> Subgroup:
    S = _as_subgroup(G, H)
    members = np.asarray(S.members, dtype=np.intp)
    hits = (G.table[:, members] == G.table[members, :].T).all(axis=1)
    return Subgroup(G, _members_mask(np.nonzero(hits)[0]))


def center(G: FiniteGroup) -> Subgroup:
    hits = (G.table == G.table.T).all(axis=1)
    return Subgroup(G, _members_mask(np.nonzero(hits)[0]))


def _as_subgroup(G: FiniteGroup, H) -> Subgroup:
    if isinstance(H, Subgroup):
        if H.parent is not G:
            raise ValidationError("subgroup belongs to a different group")
        return H
    mask = _members_mask(int(m) for m in H)
    closed, order = kernels.subgroup_closure(G.prepared_table, G.identity, _mask_members(mask))
    if closed != mask | (1 << G.identity):
        raise ValidationError("the given elements do not form a subgroup")
    return Subgroup(G, closed, order)


def sylow_subgroups(G: FiniteGroup, p: int, lattice: Optional[SubgroupLattice] = None) -> list[Subgroup]:
    """All subgroups of order p^a where p^a fully divides |G|.

    For p not dividing |G| this is the trivial subgroup, the unique
    Sylow p-subgroup in that degenerate case.
    """
    if p < 2 or factorize(p) != {p: 1}:
        raise ValidationError(f"{p} is not prime")
    a = factorize(G.order).get(p, 0)
    L = lattice if lattice is not None else all_subgroups(G)
    if a == 0:
        return [L.subgroups[L.trivial_index]]
    target = p**a
    return [s for s in L.subgroups if s.order == target]


def frattini(G: FiniteGroup, lattice: Optional[SubgroupLattice] = None) -> Subgroup:
    """Intersection of all maximal subgroups of G."""
    if G.order == 1:
        raise ValidationError("the Frattini subgroup needs |G| > 1")
    L = lattice if lattice is not None else all_subgroups(G)
    mask = (1 << G.order) - 1
    maximals = L.maximal_indices
    if not maximals:  # |G| prime: no proper non-trivial subgroups
        return L.subgroups[L.trivial_index]
    for i in maximals:
        mask &= L.subgroups[i].mask
    return L.subgroups[L.index_by_mask[mask]]


def frattini_within(L: SubgroupLattice, P: Subgroup) -> Subgroup:
    """Frattini subgroup of a member subgroup P, inside the big lattice."""
    inside = [i for i in range(len(L.subgroups)) if P.contains(L.subgroups[i])]
    proper = [i for i in inside if L.subgroups[i].order < P.order]
    maximal_in_p = []
    for i in proper:
        if not any(
            L.subgroups[j].contains(L.subgroups[i]) and L.subgroups[j].order < P.order
            and j != i
            for j in proper
        ):
            maximal_in_p.append(i)
    mask = P.mask
    for i in maximal_in_p:
        mask &= L.subgroups[i].mask
    return L.subgroups[L.index_by_mask[mask]]


def p_core(G: FiniteGroup, p: int, lattice: Optional[SubgroupLattice] = None) -> Subgroup:
    """Intersection of all Sylow p-subgroups: the largest normal p-subgroup."""
    L = lattice if lattice is not None else all_subgroups(G)
    sylows = sylow_subgroups(G, p, L)
    mask = (1 << G.order) - 1
    for s in sylows:
        mask &= s.mask
    return L.subgroups[L.index_by_mask[mask]]


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    inv = G.inverses
    tb = G.table
    lefts = tb[inv[:, None], inv[None, :]]
    comms = tb[lefts, tb]
    return generated_subgroup(G, np.unique(comms))


def _derived_of_members(G: FiniteGroup, members: tuple[int, ...]) -> Subgroup:
    idx = np.asarray(members, dtype=np.intp)
    inv = G.inverses
    tb = G.table
    lefts = tb[inv[idx][:, None], inv[idx][None, :]]
    rights = tb[idx[:, None], idx[None, :]]
    comms = tb[lefts, rights]
    return generated_subgroup(G, np.unique(comms))


def is_solvable(G: FiniteGroup) -> bool:
    """Derived series reaches the trivial subgroup."""
    current = Subgroup(G, (1 << G.order) - 1, G.order)
    while current.order > 1:
        nxt = _derived_of_members(G, current.members)
        if nxt.order == current.order:
            return False
        current = nxt
    return True


def is_nilpotent(G: FiniteGroup, lattice: Optional[SubgroupLattice] = None) -> bool:
    """Every Sylow subgroup is normal."""
    L = lattice if lattice is not None else all_subgroups(G)
    for p in factorize(G.order):
        sylows = sylow_subgroups(G, p, L)
        if len(sylows) != 1 or not is_normal(G, sylows[0]):
            return False
    return True


def chief_factor_orders(G: FiniteGroup, lattice: Optional[SubgroupLattice] = None) -> list[int]:
    """Orders of the factors of one chief series of G.

    At each step the smallest non-trivial normal subgroup of the current
    quotient is removed (ties broken by member lexicographic order).
    """
    factors: list[int] = []
    cur = G
    L = lattice
    while cur.order > 1:
        Lc = L if (L is not None and cur is G) else all_subgroups(cur)
        flags = Lc.normal_flags()
        pick = None
        for i, s in enumerate(Lc.subgroups):
            if s.order > 1 and flags[i]:
                pick = s
                break  # subgroups sorted by (order, members)
        factors.append(pick.order)
        if pick.order == cur.order:
            break
        cur, _ = quotient_group(cur, pick)
        L = None
    return factors


def is_supersolvable(G: FiniteGroup, lattice: Optional[SubgroupLattice] = None) -> bool:
    """All chief factors have prime order."""
    return all(len(factorize(f)) == 1 and sum(factorize(f).values()) == 1
               for f in chief_factor_orders(G, lattice))


def order_length(G) -> int:
    """Sum of the exponents in the prime factorization of |G|."""
    n = G.order if isinstance(G, FiniteGroup) else int(G)
    return sum(factorize(n).values()) if n > 1 else 0


def container_count(L: SubgroupLattice, A: Subgroup) -> int:
    """Number of proper subgroups strictly containing A."""
    i = L.subgroup_index(A)
    return sum(1 for j in L.containers[i] if j != L.full_index)


def satisfies_k_valency(L: SubgroupLattice, k: int) -> bool:
    """Every minimal subgroup lies strictly inside at least k proper subgroups.

    A group without proper non-trivial subgroups has no vertices at all,
    so it does not satisfy any positive valency condition.
    """
    if k <= 0:
        return True
    if not L.minimal_indices:
        return False
    full = L.full_index
    for i in L.minimal_indices:
        if sum(1 for j in L.containers[i] if j != full) < k:
            return False
    return True


# -- small structural helpers used by the classifier ---------------------


def subgroup_is_cyclic(G: FiniteGroup, S: Subgroup) -> bool:
    orders = G.element_orders()
    return any(int(orders[m]) == S.order for m in S.members)


def subgroup_is_abelian(G: FiniteGroup, S: Subgroup) -> bool:
    idx = np.asarray(S.members, dtype=np.intp)
    block = G.table[np.ix_(idx, idx)]
    return bool((block == block.T).all())


def subgroup_is_elementary_abelian(G: FiniteGroup, S: Subgroup) -> bool:
    if S.order == 1:
        return True
    fact = factorize(S.order)
    if len(fact) != 1:
        return False
    (p,) = fact
    orders = G.element_orders()
    if not all(int(orders[m]) in (1, p) for m in S.members):
        return False
    return subgroup_is_abelian(G, S)


def subgroup_as_group(G: FiniteGroup, S: Subgroup) -> FiniteGroup:
    """The subgroup as a standalone group (members reindexed)."""
    idx = np.asarray(S.members, dtype=np.intp)
    block = G.table[np.ix_(idx, idx)]
    rename = np.full(G.order, -1, dtype=np.int32)
    rename[idx] = np.arange(S.order, dtype=np.int32)
    return FiniteGroup(rename[block])


def lattice_to_json(L: SubgroupLattice) -> dict:
    """JSON-friendly export: subgroups as sorted index arrays + inclusions."""
    return {
        "group_order": L.group.order,
        "label": L.group.label,
        "subgroups": [list(s.members) for s in L.subgroups],
        "inclusions": sorted(L.inclusion_pairs()),
    }
