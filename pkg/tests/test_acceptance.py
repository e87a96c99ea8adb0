"""Acceptance criteria: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
PASS lines inline).  Criterion 3's order-625 verification is marked
slow; deselect with ``-m "not slow"`` for a quick pass.
"""

import time
from itertools import combinations

import pytest

from intgraph import catalog
from intgraph.classify import (
    audit,
    disconnected_case,
    not_three_connected_case,
    not_two_connected_case,
    p2q_three_connected_shape,
    has_proper_normal_subgroup,
)
from intgraph.graphs import (
    build_graph,
    connected_components,
    is_k_connected,
    kappa,
    kappa_all_pairs,
    min_separating_set_bruteforce,
)
from intgraph.groups import are_isomorphic, cyclic, direct_product, factorize, quotient_group
from intgraph.lattice import all_subgroups, order_length, satisfies_k_valency

from conftest import analyzed


def _passed(n, message):
    print(f"criterion {n}: PASS ({message})")


def test_criterion_01_disconnection_audit(default_labels):
    """Disconnected graph iff a caseA tag, over non-simple groups <= 256."""
    t0 = time.perf_counter()
    audited = 0
    for label in default_labels:
        G = catalog.get_group(label)
        if G.order > 256:
            continue
        L = all_subgroups(G)  # built fresh: this criterion is timed
        if not has_proper_normal_subgroup(G, L) or factorize(G.order) == {G.order: 1}:
            continue
        g = build_graph(L)
        disconnected = len(connected_components(g)) > 1
        tag = disconnected_case(G, L)
        assert disconnected == (tag is not None), label
        audited += 1
    elapsed = time.perf_counter() - t0
    assert audited >= 40
    assert elapsed < 60.0
    _passed(1, f"{audited} non-simple groups, 0 disagreements, {elapsed:.1f}s")


def test_criterion_02_low_connectivity_audit_solvable(default_labels):
    """kappa < 2 iff a caseB tag, over all solvable catalog groups."""
    tags = {}
    audited = 0
    for label in default_labels:
        a = analyzed(label)
        if not a.report.solvable:
            continue
        tag = not_two_connected_case(a.group, a.lattice)
        assert (a.kappa < 2) == (tag is not None), label
        audited += 1
        if tag:
            tags.setdefault(tag, label)
    assert set(tags) == {"1", "2", "3a", "3b", "4a", "4b"}
    assert not_two_connected_case(analyzed("F20").group, analyzed("F20").lattice) == "3a"
    az = analyzed("Z2^3:Z7")
    assert not_two_connected_case(az.group, az.lattice) == "4a"
    _passed(2, f"{audited} solvable groups, witnesses {sorted(tags)}")


def test_criterion_03_three_connectivity_audit_nilpotent(default_labels):
    """kappa < 3 iff a caseC tag, over all nilpotent catalog groups."""
    audited = 0
    for label in default_labels:
        a = analyzed(label)
        if not a.report.nilpotent:
            continue
        tag = not_three_connected_case(a.group, a.lattice)
        assert (a.kappa < 3) == (tag is not None), label
        audited += 1
    exc = analyzed("G81:k1m0n-1")
    assert is_k_connected(exc.group, 3, exc.lattice, exc.graph)
    q16 = analyzed("Q16")
    assert is_k_connected(q16.group, 3, q16.lattice, q16.graph)
    _passed(3, f"{audited} nilpotent groups; order-81 exception and Q16 3-connected")


@pytest.mark.slow
def test_criterion_03_type2_opt_in():
    """The order-625 family member is 3-connected (opt-in, < 10 min)."""
    t0 = time.perf_counter()
    G = catalog.get_group("G625:typeII")
    L = all_subgroups(G)
    g = build_graph(L)
    assert is_k_connected(G, 3, L, g)
    rep = audit(G, L, g)
    assert rep.case_c is None and rep.agree_c is True
    elapsed = time.perf_counter() - t0
    assert elapsed < 600.0
    _passed(3, f"order-625 group 3-connected, opt-in run {elapsed:.0f}s")


def test_criterion_04_point_values():
    """Exact connectivity values for the named small groups."""
    expected = {
        "Z6": 0,
        "Z8": 1,
        "Z4xZ2": 1,
        "Q8": 3,
        "Z4": 0,
        "Z9": 0,
        "Z25": 0,
        "A4": 0,
        "S3": 0,
    }
    for label, want in expected.items():
        assert analyzed(label).kappa == want, label
    # Q16: brute enumeration gives nine proper non-trivial subgroups all
    # sharing the unique minimal subgroup, so the graph is K9.
    q16 = analyzed("Q16")
    assert q16.graph.n == 9 and q16.graph.is_complete()
    assert q16.kappa == 8
    _passed(4, f"{len(expected) + 1} point values exact")


def test_criterion_05_p2q_three_connected(default_labels):
    """Exactly the scalar-action groups of order p^2 q are 3-connected."""
    lam = analyzed("Z7^2:Z3:lam2")
    assert is_k_connected(lam.group, 3, lam.lattice, lam.graph)
    checked = 0
    for label in default_labels:
        a = analyzed(label)
        fact = factorize(a.group.order)
        if len(fact) != 2 or sorted(fact.values()) != [1, 2]:
            continue
        three = is_k_connected(a.group, 3, a.lattice, a.graph)
        assert three == p2q_three_connected_shape(a.group), label
        checked += 1
    _passed(5, f"order-147 group 3-connected; equivalence on {checked} p^2q groups")


def test_criterion_06_bruteforce_oracle(default_labels):
    """kappa equals the exhaustive minimum-separator size on small graphs."""
    checked = 0
    for label in default_labels:
        a = analyzed(label)
        if a.graph.n == 0 or a.graph.n > 15 or a.graph.is_complete():
            continue
        size, _ = min_separating_set_bruteforce(a.graph)
        assert size == a.kappa, label
        checked += 1
    assert checked >= 20
    _passed(6, f"oracle equivalence on {checked} graphs")


def test_criterion_07_minimal_pair_reduction(default_labels):
    """kappa over minimal pairs equals kappa over all vertex pairs."""
    checked = 0
    for label in default_labels:
        a = analyzed(label)
        if a.graph.n < 1 or a.group.order == 1 or factorize(a.group.order) == {a.group.order: 1}:
            continue
        assert kappa_all_pairs(a.graph) == a.kappa, label
        checked += 1
    _passed(7, f"all-pairs flow agrees on {checked} groups")


def test_criterion_08_quotient_bound(default_labels):
    """kappa(G) >= kappa(G/N) + x - 1 for every normal chain in the lattice."""
    instances = 0
    for label in default_labels:
        a = analyzed(label)
        L = a.lattice
        flags = L.normal_flags()
        normal = [i for i in range(len(L.subgroups)) if flags[i] and L.subgroups[i].order > 1]
        # longest normal chain 1 < N_1 < ... < N_x = N, all normal in G
        chain = {}
        for i in sorted(normal, key=lambda i: L.subgroups[i].order):
            best = 0
            for j in normal:
                if j == i:
                    continue
                sj = L.subgroups[j]
                if sj.order < L.subgroups[i].order and L.subgroups[i].contains(sj):
                    best = max(best, chain[j])
            chain[i] = best + 1
        for i in normal:
            N = L.subgroups[i]
            if N.order == a.group.order:
                kq = -2
            else:
                Q, _ = quotient_group(a.group, N)
                kq = kappa(Q)
            assert a.kappa >= kq + chain[i] - 1, (label, N.order)
            instances += 1
    assert instances >= 200
    _passed(8, f"{instances} (G, N, chain) instances")


def test_criterion_09_supersolvable_bounds(default_labels):
    """kappa >= order_length - 3 for supersolvable groups; p-group bounds."""
    checked = pgroups2 = pgroups3 = 0
    for label in default_labels:
        a = analyzed(label)
        if a.report.supersolvable:
            assert a.kappa >= order_length(a.group) - 3, label
            checked += 1
        fact = factorize(a.group.order)
        if len(fact) == 1:
            ((p, e),) = fact.items()
            if e > 3:
                assert is_k_connected(a.group, 2, a.lattice, a.graph), label
                pgroups2 += 1
            if e > 4:
                assert is_k_connected(a.group, 3, a.lattice, a.graph), label
                pgroups3 += 1
    assert pgroups2 >= 10 and pgroups3 >= 5
    _passed(
        9,
        f"{checked} supersolvable bounds, {pgroups2} >p^3 two-connected, "
        f"{pgroups3} >p^4 three-connected",
    )


def test_criterion_10_valency_equivalences(default_labels):
    """Valency conditions match connectivity; A5 spot checks."""
    solvable = supersolvable = 0
    for label in default_labels:
        a = analyzed(label)
        if a.report.solvable:
            assert (a.kappa >= 2) == satisfies_k_valency(a.lattice, 2), label
            solvable += 1
        if a.report.supersolvable:
            assert (a.kappa >= 3) == satisfies_k_valency(a.lattice, 3), label
            supersolvable += 1
    a5 = analyzed("A5")
    from intgraph.lattice import container_count, minimal_subgroups

    fives = [s for s in minimal_subgroups(a5.lattice) if s.order == 5]
    assert len(fives) == 6
    assert all(container_count(a5.lattice, s) == 1 for s in fives)
    assert len(connected_components(a5.graph)) == 1
    assert a5.kappa >= 1
    _passed(10, f"{solvable} solvable / {supersolvable} supersolvable equivalences; A5 checks")


def test_criterion_11_isomorphism_ledger():
    """The six order-81 presentations agree; small non-isomorphisms hold."""
    t0 = time.perf_counter()
    triples = ((1, 0, -1), (1, -1, -1), (1, 1, -1), (-1, 0, 1), (-1, 1, 1), (-1, -1, 1))
    groups = [catalog.exceptional_p4(3, *t) for t in triples]
    for A, B in combinations(groups, 2):
        ok, _ = are_isomorphic(A, B)
        assert ok
    ok, _ = are_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2)))
    assert not ok
    ok, _ = are_isomorphic(catalog.get_group("D4"), catalog.get_group("Q8"))
    assert not ok
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _passed(11, f"15 isomorphic pairs plus 2 non-isomorphic, {elapsed:.2f}s")
