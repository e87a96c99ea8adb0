"""Executable predicates for the low-connectivity classification of
finite groups, plus the audit comparing predictions with computed kappa.

Case tags follow the frozen report format: caseA classifies
disconnected intersection graphs of non-simple groups, caseB the
solvable groups with kappa < 2, caseC the nilpotent groups with
kappa < 3.  Each predicate returns the first matching tag in the
classification's stated order, or None.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Optional

from .errors import ValidationError
from .groups import (
    FiniteGroup,
    are_isomorphic,
    cyclic,
    direct_product,
    factorize,
    is_cyclic,
    is_elementary_abelian,
)
from .lattice import (
    SubgroupLattice,
    Subgroup,
    all_subgroups,
    center,
    frattini,
    frattini_within,
    generated_subgroup,
    is_nilpotent,
    is_normal,
    is_solvable,
    is_supersolvable,
    normalizer,
    subgroup_is_cyclic,
    subgroup_is_elementary_abelian,
    sylow_subgroups,
    conjugate_mask,
)
from .graphs import IntersectionGraph, build_graph, connected_components, kappa as compute_kappa
from . import catalog as _catalog

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassificationReport:
    """Per-group record of computed kappa versus predicted bands."""

    label: str
    order: int
    solvable: bool
    nilpotent: bool
    supersolvable: bool
    has_proper_normal: bool
    kappa: int
    case_a: Optional[str]
    case_b: Optional[str]
    case_c: Optional[str]
    agree_a: Optional[bool]
    agree_b: Optional[bool]
    agree_c: Optional[bool]

    def agreements(self) -> list[bool]:
        return [a for a in (self.agree_a, self.agree_b, self.agree_c) if a is not None]

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ConnectivityBand:
    """Predicted connectivity thresholds; None = hypothesis not applicable."""

    connected: Optional[bool]
    two_connected: Optional[bool]
    three_connected: Optional[bool]


def has_proper_normal_subgroup(G: FiniteGroup, L: SubgroupLattice) -> bool:
    flags = L.normal_flags()
    return any(flags[i] for i in L.proper_nontrivial)


def _first_sylow(G: FiniteGroup, L: SubgroupLattice, p: int) -> Subgroup:
    return sylow_subgroups(G, p, L)[0]


def _acts_invariantly(G: FiniteGroup, c: int, S: Subgroup) -> bool:
    return conjugate_mask(G, c, S) == S.mask


def _q_irreducible_between(
    G: FiniteGroup, L: SubgroupLattice, c: int, lower_mask: int, upper: Subgroup
) -> bool:
    """No subgroup X with lower < X < upper is fixed by conjugation by c."""
    for s in L.subgroups:
        if s.order <= 1 or s.mask == upper.mask or s.mask == lower_mask:
            continue
        if lower_mask & ~s.mask:
            continue
        if s.mask & ~upper.mask:
            continue
        if _acts_invariantly(G, c, s):
            return False
    return True


def disconnected_case(G: FiniteGroup, L: SubgroupLattice) -> Optional[str]:
    """Tag "1" or "2" when the intersection graph is predicted disconnected.

    Precondition: G is non-simple (has a proper non-trivial normal
    subgroup) and |G| is not prime.
    """
    fact = factorize(G.order)
    if not has_proper_normal_subgroup(G, L) or fact == {G.order: 1}:
        raise ValidationError("classification needs a non-simple group of non-prime order")
    # case 1: Zp x Zp or Zp x Zq
    if len(fact) == 1:
        (p,) = fact
        if G.order == p * p and is_elementary_abelian(G):
            return "1"
    elif len(fact) == 2 and all(a == 1 for a in fact.values()) and G.is_abelian():
        return "1"
    # case 2: N x| A, N minimal normal elementary abelian, A self-normalizing Zq
    flags = L.normal_flags()
    normals = [i for i in L.proper_nontrivial if flags[i]]
    for i in normals:
        N = L.subgroups[i]
        index = G.order // N.order
        if factorize(index) != {index: 1}:
            continue
        q = index
        pfact = factorize(N.order)
        if len(pfact) != 1 or q in pfact:
            continue
        if not subgroup_is_elementary_abelian(G, N):
            continue
        if any(
            flags[j] and 1 < L.subgroups[j].order < N.order and N.contains(L.subgroups[j])
            for j in L.proper_nontrivial
        ):
            continue  # N is not minimal normal
        A = next(s for s in L.subgroups if s.order == q)
        if normalizer(G, A).mask == A.mask:
            return "2"
    return None


def not_two_connected_case(G: FiniteGroup, L: SubgroupLattice) -> Optional[str]:
    """Tag when a solvable group is predicted to have kappa < 2.

    Tags: "1" |G|=p^a (a<=2); "2" |G|=p^3 up to two exceptions;
    "3a"/"3b" |G|=p^2 q; "4a"/"4b" |G|=p^a q (a>=3) with normal Sylow p.
    """
    if not is_solvable(G):
        raise ValidationError("classification applies to solvable groups")
    n = G.order
    if n == 1:
        return "1"
    fact = factorize(n)
    if len(fact) == 1:
        ((p, a),) = fact.items()
        if a <= 2:
            return "1"
        if a == 3:
            if is_elementary_abelian(G):
                return None
            if n == 8 and are_isomorphic(G, _model_quaternion(8))[0]:
                return None
            return "2"
        return None
    if len(fact) != 2:
        return None
    exps = sorted(fact.values())
    if exps == [1, 1]:
        # order pq: every vertex is a minimal subgroup with no container
        return "1"
    if exps == [1, 2]:
        p = next(r for r, a in fact.items() if a == 2)
        P = _first_sylow(G, L, p)
        if subgroup_is_cyclic(G, P):
            return "3a"
        if is_normal(G, P) and any(
            s.order == p and not is_normal(G, s) for s in L.subgroups
        ):
            return "3b"
        return None
    if exps[0] == 1 and exps[1] >= 3:
        p = next(r for r, a in fact.items() if a >= 3)
        q = next(r for r, a in fact.items() if a == 1)
        P = _first_sylow(G, L, p)
        if not is_normal(G, P):
            return None
        Q = _first_sylow(G, L, q)
        c = next(m for m in Q.members if m != G.identity)
        if subgroup_is_elementary_abelian(G, P):
            if not _q_irreducible_between(G, L, c, 1 << G.identity, P):
                return None
            if normalizer(G, Q).order <= p * q:
                return "4a"
            return None
        N = frattini_within(L, P)
        if N.order == 1 or not subgroup_is_elementary_abelian(G, N):
            return None
        if not _q_irreducible_between(G, L, c, 1 << G.identity, N):
            return None
        if not _q_irreducible_between(G, L, c, N.mask, P):
            return None
        ng = normalizer(G, Q)
        if ng.mask == Q.mask:
            return "4b"
        nq = generated_subgroup(G, N.members + Q.members)
        if ng.mask == nq.mask and nq.order == p * q and subgroup_is_cyclic(G, nq):
            if N.order > p:
                logger.info(
                    "group %s: caseB 4b matched through N_G(Q)=NQ with |N|=%d > p=%d",
                    G.label or G.order,
                    N.order,
                    p,
                )
            return "4b"
        return None
    return None


def not_three_connected_case(G: FiniteGroup, L: SubgroupLattice) -> Optional[str]:
    """Tag when a nilpotent group is predicted to have kappa < 3.

    Tags: "1" |G|=p^a (a<=3) up to two exceptions; "2a"/"2b"/"2c"
    |G|=p^4 subcases; "3" the four two- and three-prime shapes.
    """
    if not is_nilpotent(G, L):
        raise ValidationError("classification applies to nilpotent groups")
    n = G.order
    if n == 1:
        return "1"
    fact = factorize(n)
    if len(fact) == 1:
        ((p, a),) = fact.items()
        if a <= 3:
            if a == 3:
                if is_elementary_abelian(G):
                    return None
                if n == 8 and are_isomorphic(G, _model_quaternion(8))[0]:
                    return None
            return "1"
        if a == 4:
            if is_cyclic(G):
                return "2a"
            phi = frattini(G, L)
            if phi.order != p * p:
                return None
            if subgroup_is_cyclic(G, phi):
                if n == 16 and are_isomorphic(G, _model_quaternion(16))[0]:
                    return None
                return "2b"
            z = center(G)
            if z.mask != phi.mask and phi.contains(Subgroup(G, z.mask, z.order)):
                if p == 3 and are_isomorphic(G, _catalog.exceptional_p4(3, 1, 0, -1))[0]:
                    return None
                if p > 3 and are_isomorphic(G, _catalog.exceptional_p4_type2(p))[0]:
                    return None
                return "2c"
            return None
        return None
    exps = sorted(fact.values())
    if len(fact) == 2 and exps == [1, 1]:
        # order pq: nilpotent means cyclic, and the graph is edgeless
        return "3"
    if len(fact) == 2 and exps == [1, 3]:
        if is_cyclic(G):
            return "3"
        return None
    if len(fact) == 2 and exps == [1, 2]:
        p = next(r for r, a in fact.items() if a == 2)
        q = next(r for r, a in fact.items() if a == 1)
        if are_isomorphic(G, _model_cyclic(p * p * q))[0]:
            return "3"
        if are_isomorphic(G, _model_ppq(p, q))[0]:
            return "3"
        return None
    if len(fact) == 3 and exps == [1, 1, 1]:
        if is_cyclic(G):
            return "3"
        return None
    return None


def abelian_cut_vertex_shape(G: FiniteGroup) -> bool:
    """Abelian groups whose graph has a cut vertex: Z_{p^3},
    Z_{p^2} x Z_p, or Z_{p^2} x Z_q."""
    if not G.is_abelian():
        raise ValidationError("this shape test applies to abelian groups")
    n = G.order
    fact = factorize(n)
    if len(fact) == 1:
        ((p, a),) = fact.items()
        if a != 3:
            return False
        return (
            are_isomorphic(G, _model_cyclic(n))[0]
            or are_isomorphic(G, _model_p2_p(p))[0]
        )
    if len(fact) == 2 and sorted(fact.values()) == [1, 2]:
        return are_isomorphic(G, _model_cyclic(n))[0]
    return False


def p2q_three_connected_shape(G: FiniteGroup) -> bool:
    """Match against the scalar-action (Zp x Zp) x| Zq family: the only
    3-connected groups of order p^2 q."""
    fact = factorize(G.order)
    if len(fact) != 2 or sorted(fact.values()) != [1, 2]:
        raise ValidationError("this shape test applies to groups of order p^2 q")
    p = next(r for r, a in fact.items() if a == 2)
    q = next(r for r, a in fact.items() if a == 1)
    for lam in range(2, p):
        if pow(lam, q, p) != 1:
            continue
        if are_isomorphic(G, _model_lambda(p, q, lam))[0]:
            return True
    return False


def predicted_connectivity_band(G: FiniteGroup, L: SubgroupLattice) -> ConnectivityBand:
    """Predictions per applicable hypothesis, with the prime-divisor
    shortcuts (>=3 distinct primes: 2-connected; >=4: 3-connected)."""
    fact = factorize(G.order)
    nprimes = len(fact)
    connected = None
    if has_proper_normal_subgroup(G, L) and fact != {G.order: 1}:
        connected = disconnected_case(G, L) is None
    two_connected = None
    three_connected = None
    if is_solvable(G):
        two_connected = True if nprimes >= 3 else (not_two_connected_case(G, L) is None)
        if nprimes >= 4:
            three_connected = True
    if is_nilpotent(G, L):
        three_connected = not_three_connected_case(G, L) is None
    return ConnectivityBand(connected, two_connected, three_connected)


def audit(
    G: FiniteGroup,
    lattice: Optional[SubgroupLattice] = None,
    graph: Optional[IntersectionGraph] = None,
    kappa_value: Optional[int] = None,
) -> ClassificationReport:
    """Classify G, compute kappa, and flag agreement per applicable case."""
    L = lattice if lattice is not None else all_subgroups(G)
    g = graph if graph is not None else build_graph(L)
    k = kappa_value if kappa_value is not None else compute_kappa(G, L, g)
    solvable = is_solvable(G)
    nilpotent = is_nilpotent(G, L)
    supersolvable = is_supersolvable(G, L)
    proper_normal = has_proper_normal_subgroup(G, L)
    prime_order = factorize(G.order) == {G.order: 1}

    case_a = agree_a = None
    if proper_normal and not prime_order:
        case_a = disconnected_case(G, L)
        disconnected = len(connected_components(g)) > 1
        agree_a = disconnected == (case_a is not None)
    case_b = agree_b = None
    if solvable:
        case_b = not_two_connected_case(G, L)
        agree_b = (k < 2) == (case_b is not None)
    case_c = agree_c = None
    if nilpotent:
        case_c = not_three_connected_case(G, L)
        agree_c = (k < 3) == (case_c is not None)

    return ClassificationReport(
        label=G.label,
        order=G.order,
        solvable=solvable,
        nilpotent=nilpotent,
        supersolvable=supersolvable,
        has_proper_normal=proper_normal,
        kappa=k,
        case_a=case_a,
        case_b=case_b,
        case_c=case_c,
        agree_a=agree_a,
        agree_b=agree_b,
        agree_c=agree_c,
    )


# -- cached comparison models --------------------------------------------


@lru_cache(maxsize=None)
def _model_quaternion(n: int) -> FiniteGroup:
    return _catalog.quaternion_group(n)


@lru_cache(maxsize=None)
def _model_cyclic(n: int) -> FiniteGroup:
    return cyclic(n)


@lru_cache(maxsize=None)
def _model_ppq(p: int, q: int) -> FiniteGroup:
    return direct_product(direct_product(cyclic(p), cyclic(p)), cyclic(q))


@lru_cache(maxsize=None)
def _model_p2_p(p: int) -> FiniteGroup:
    return direct_product(cyclic(p * p), cyclic(p))


@lru_cache(maxsize=None)
def _model_lambda(p: int, q: int, lam: int) -> FiniteGroup:
    return _catalog.scalar_lambda_group(p, q, lam)
