"""Subgroup lattice enumeration and structural invariants."""

from itertools import combinations

import pytest

from intgraph import catalog
from intgraph.errors import LatticeCapExceeded, ValidationError
from intgraph.groups import cyclic, factorize
from intgraph.lattice import (
    all_subgroups,
    center,
    centralizer,
    chief_factor_orders,
    container_count,
    frattini,
    is_nilpotent,
    is_normal,
    is_solvable,
    is_supersolvable,
    minimal_subgroups,
    normalizer,
    order_length,
    p_core,
    satisfies_k_valency,
    subgroup_is_cyclic,
    subgroup_is_elementary_abelian,
    sylow_subgroups,
)

from test_groups import brute_subgroup_sets

SMALL_ORACLE_LABELS = [
    "Z2", "Z3", "Z4", "Z6", "Z8", "Z12", "Z16",
    "Z2xZ2", "Z4xZ2", "Z2xZ2xZ2", "Z3xZ3", "Z4xZ4", "Z2xZ2xZ3",
    "S3", "D4", "Q8", "A4", "D6", "Z8xZ2", "Z2xZ2xZ2xZ2",
]
ORDER24_ORACLE_LABELS = ["Z24", "S4", "D12", "Q8:Z3"]


def test_s3_lattice_counts(analyze):
    a = analyze("S3")
    assert len(a.lattice) == 6
    proper = [a.lattice.subgroups[i] for i in a.lattice.proper_nontrivial]
    assert len(proper) == 4
    assert sorted(s.order for s in proper) == [2, 2, 2, 3]
    oracle = brute_subgroup_sets(a.group)
    assert len(oracle) == 6


def test_q8_proper_nontrivial_count(analyze):
    assert len(analyze("Q8").lattice.proper_nontrivial) == 4


def test_prime_square_has_single_vertex():
    for p in (2, 3, 5):
        L = all_subgroups(cyclic(p * p))
        assert len(L.proper_nontrivial) == 1


@pytest.mark.parametrize("label", SMALL_ORACLE_LABELS)
def test_lattice_matches_bruteforce_small(analyze, label):
    a = analyze(label)
    oracle = {frozenset(s) for s in brute_subgroup_sets(a.group)}
    ours = {frozenset(s.members) for s in a.lattice.subgroups}
    assert ours == oracle


@pytest.mark.parametrize("label", ORDER24_ORACLE_LABELS)
def test_lattice_matches_bruteforce_order_24(analyze, label):
    a = analyze(label)
    assert a.group.order == 24
    oracle = {frozenset(s) for s in brute_subgroup_sets(a.group)}
    ours = {frozenset(s.members) for s in a.lattice.subgroups}
    assert ours == oracle


def test_minimal_subgroups(analyze):
    q8 = analyze("Q8")
    assert len(minimal_subgroups(q8.lattice)) == 1
    assert minimal_subgroups(q8.lattice)[0].order == 2
    klein = analyze("Z2xZ2")
    assert len(minimal_subgroups(klein.lattice)) == 3
    a4 = analyze("A4")
    mins = minimal_subgroups(a4.lattice)
    assert len(mins) == 7
    assert sorted(s.order for s in mins) == [2, 2, 2, 3, 3, 3, 3]


def test_minimal_subgroups_have_prime_order(analyze, default_labels):
    for label in default_labels:
        for s in minimal_subgroups(analyze(label).lattice):
            assert len(factorize(s.order)) == 1
            assert sum(factorize(s.order).values()) == 1


def test_normality_and_normalizers(analyze):
    s3 = analyze("S3")
    order3 = next(s for s in s3.lattice.subgroups if s.order == 3)
    assert is_normal(s3.group, order3)
    order2 = next(s for s in s3.lattice.subgroups if s.order == 2)
    assert not is_normal(s3.group, order2)
    nz = normalizer(s3.group, order2)
    assert nz.mask == order2.mask
    # conjugates: index of the normalizer counts them
    assert s3.group.order // nz.order == 3


def test_center_and_centralizer(analyze):
    q8 = analyze("Q8")
    z = center(q8.group)
    assert z.order == 2
    full = centralizer(q8.group, next(s for s in q8.lattice.subgroups if s.order == 2))
    assert full.order == 8  # the unique minimal subgroup is central
    s3 = analyze("S3")
    assert center(s3.group).order == 1


def test_sylow_subgroups(analyze):
    s3 = analyze("S3")
    assert len(sylow_subgroups(s3.group, 2, s3.lattice)) == 3
    a4 = analyze("A4")
    assert len(sylow_subgroups(a4.group, 3, a4.lattice)) == 4
    syl2 = sylow_subgroups(a4.group, 2, a4.lattice)
    assert len(syl2) == 1 and syl2[0].order == 4
    # p not dividing the order: the trivial subgroup
    off = sylow_subgroups(s3.group, 5, s3.lattice)
    assert len(off) == 1 and off[0].order == 1
    with pytest.raises(ValidationError):
        sylow_subgroups(s3.group, 4, s3.lattice)


def test_sylow_counts_one_mod_p(analyze, default_labels):
    for label in default_labels:
        a = analyze(label)
        for p in factorize(a.group.order):
            count = len(sylow_subgroups(a.group, p, a.lattice))
            assert count % p == 1, (label, p)


def test_sylow_subgroups_are_conjugate(analyze):
    for label in ("S3", "A4", "S4", "Z2^3:Z7", "A5"):
        a = analyze(label)
        classes = a.lattice.conjugacy_classes()
        for p in factorize(a.group.order):
            sylows = sylow_subgroups(a.group, p, a.lattice)
            idx = {a.lattice.subgroup_index(s) for s in sylows}
            hit = [c for c in classes if idx.intersection(c)]
            assert len(hit) == 1 and set(hit[0]) == idx


def test_frattini(analyze):
    for label in ("Z2xZ2xZ2", "Z3xZ3"):
        a = analyze(label)
        assert frattini(a.group, a.lattice).order == 1
    z9 = analyze("Z9")
    assert frattini(z9.group, z9.lattice).order == 3
    q16 = analyze("Q16")
    phi = frattini(q16.group, q16.lattice)
    assert phi.order == 4
    assert subgroup_is_cyclic(q16.group, phi)


def test_frattini_normal_and_pgroup_quotient_elementary(analyze, default_labels):
    from intgraph.groups import is_elementary_abelian, quotient_group

    for label in default_labels:
        a = analyze(label)
        if a.group.order == 1:
            continue
        phi = frattini(a.group, a.lattice)
        assert is_normal(a.group, phi)
        if len(factorize(a.group.order)) == 1:
            Q, _ = quotient_group(a.group, phi)
            assert is_elementary_abelian(Q)


def test_p_core(analyze):
    s3 = analyze("S3")
    assert p_core(s3.group, 3, s3.lattice).order == 3
    assert p_core(s3.group, 2, s3.lattice).order == 1
    a4 = analyze("A4")
    assert p_core(a4.group, 2, a4.lattice).order == 4


def test_solvability_predicates(analyze):
    s3 = analyze("S3")
    assert is_solvable(s3.group)
    assert is_supersolvable(s3.group, s3.lattice)
    assert not is_nilpotent(s3.group, s3.lattice)
    a4 = analyze("A4")
    assert is_solvable(a4.group)
    assert not is_supersolvable(a4.group, a4.lattice)
    assert 4 in chief_factor_orders(a4.group, a4.lattice)
    a5 = analyze("A5")
    assert not is_solvable(a5.group)
    for label in ("Q16", "He27", "Z3wrZ3", "Z16xZ2xZ2"):
        a = analyze(label)
        assert is_solvable(a.group)
        assert is_nilpotent(a.group, a.lattice)
        assert is_supersolvable(a.group, a.lattice)


def test_order_length():
    assert order_length(cyclic(12)) == 3
    assert order_length(81) == 4
    assert order_length(1) == 0


def test_container_counts(analyze):
    a5 = analyze("A5")
    for s in minimal_subgroups(a5.lattice):
        if s.order == 5:
            assert container_count(a5.lattice, s) == 1
    z6 = analyze("Z6")
    for s in minimal_subgroups(z6.lattice):
        assert container_count(z6.lattice, s) == 0
    q8 = analyze("Q8")
    (m,) = minimal_subgroups(q8.lattice)
    assert container_count(q8.lattice, m) == 3
    assert satisfies_k_valency(q8.lattice, 3)
    assert not satisfies_k_valency(z6.lattice, 1)


def test_valency_for_vertexless_groups():
    for n in (1, 7):
        L = all_subgroups(cyclic(n))
        assert not satisfies_k_valency(L, 1)
        assert satisfies_k_valency(L, 0)


def test_supersolvable_maximals_have_prime_index(analyze, default_labels):
    for label in default_labels:
        a = analyze(label)
        if not is_supersolvable(a.group, a.lattice):
            continue
        for i in a.lattice.maximal_indices:
            index = a.group.order // a.lattice.subgroups[i].order
            assert factorize(index) == {index: 1}, (label, index)


def test_lattice_closed_under_intersection(analyze):
    for label in ("S4", "Z2xZ2xZ2xZ2", "A5", "Q16", "Z7^2:Z3:lam2"):
        a = analyze(label)
        masks = {s.mask for s in a.lattice.subgroups}
        subs = a.lattice.subgroups
        for i, j in combinations(range(len(subs)), 2):
            assert subs[i].mask & subs[j].mask in masks


def test_lagrange_everywhere(analyze, default_labels):
    for label in default_labels:
        a = analyze(label)
        for s in a.lattice.subgroups:
            assert a.group.order % s.order == 0


def test_elementary_abelian_subgroup_check(analyze):
    a4 = analyze("A4")
    v4 = next(s for s in a4.lattice.subgroups if s.order == 4)
    assert subgroup_is_elementary_abelian(a4.group, v4)
    z4 = next(s for s in analyze("Q8").lattice.subgroups if s.order == 4)
    assert not subgroup_is_elementary_abelian(analyze("Q8").group, z4)


def test_lattice_cap():
    with pytest.raises(LatticeCapExceeded):
        all_subgroups(catalog.get_group("Z2xZ2xZ2xZ2"), max_subgroups=10)
