"""Classification predicates and the audit record."""

import pytest

from intgraph.errors import ValidationError
from intgraph.groups import cyclic
from intgraph.lattice import all_subgroups
from intgraph.classify import (
    abelian_cut_vertex_shape,
    disconnected_case,
    has_proper_normal_subgroup,
    not_three_connected_case,
    not_two_connected_case,
    p2q_three_connected_shape,
    predicted_connectivity_band,
)


def case_a(analyze, label):
    a = analyze(label)
    return disconnected_case(a.group, a.lattice)


def case_b(analyze, label):
    a = analyze(label)
    return not_two_connected_case(a.group, a.lattice)


def case_c(analyze, label):
    a = analyze(label)
    return not_three_connected_case(a.group, a.lattice)


def test_disconnected_cases(analyze):
    assert case_a(analyze, "S3") == "2"
    assert case_a(analyze, "Z6") == "1"
    assert case_a(analyze, "Z2xZ2") == "1"
    assert case_a(analyze, "A4") == "2"
    assert case_a(analyze, "Z2^3:Z7") == "2"
    assert case_a(analyze, "Z5^2:Z3") == "2"
    assert case_a(analyze, "Q8") is None
    assert case_a(analyze, "D4") is None
    assert case_a(analyze, "Z4") is None
    assert case_a(analyze, "S4") is None


def test_disconnected_preconditions(analyze):
    a5 = analyze("A5")
    assert not has_proper_normal_subgroup(a5.group, a5.lattice)
    with pytest.raises(ValidationError):
        disconnected_case(a5.group, a5.lattice)
    z5 = analyze("Z5")
    with pytest.raises(ValidationError):
        disconnected_case(z5.group, z5.lattice)


def test_not_two_connected_cases(analyze):
    assert case_b(analyze, "Z1") == "1"
    assert case_b(analyze, "Z4") == "1"
    assert case_b(analyze, "Z2xZ2") == "1"
    assert case_b(analyze, "S3") == "1"  # order pq
    assert case_b(analyze, "D4") == "2"
    assert case_b(analyze, "He27") == "2"
    assert case_b(analyze, "M27") == "2"
    assert case_b(analyze, "Z8") == "2"
    assert case_b(analyze, "Q8") is None
    assert case_b(analyze, "Z3xZ3xZ3") is None
    assert case_b(analyze, "F20") == "3a"
    assert case_b(analyze, "Z12") == "3a"
    assert case_b(analyze, "A4") == "3b"
    assert case_b(analyze, "Z3xZ3xZ2") is None  # every order-3 subgroup normal
    assert case_b(analyze, "Z2^3:Z7") == "4a"
    assert case_b(analyze, "Q8:Z3") == "4b"
    assert case_b(analyze, "S4") is None  # Sylow 2-subgroup not normal
    assert case_b(analyze, "Z16") is None
    a5 = analyze("A5")
    with pytest.raises(ValidationError):
        not_two_connected_case(a5.group, a5.lattice)


def test_not_three_connected_cases(analyze):
    assert case_c(analyze, "Z1") == "1"
    assert case_c(analyze, "Z8") == "1"
    assert case_c(analyze, "D4") == "1"
    assert case_c(analyze, "Q8") is None
    assert case_c(analyze, "Z3xZ3xZ3") is None
    assert case_c(analyze, "Z16") == "2a"
    assert case_c(analyze, "D8") == "2b"
    assert case_c(analyze, "Z8xZ2") == "2b"
    assert case_c(analyze, "Q16") is None
    assert case_c(analyze, "Z3wrZ3") == "2c"
    assert case_c(analyze, "Z4xZ4") is None  # center equals the Frattini subgroup
    assert case_c(analyze, "G81:k1m0n-1") is None
    assert case_c(analyze, "Z12") == "3"
    assert case_c(analyze, "Z24") == "3"
    assert case_c(analyze, "Z2xZ2xZ3") == "3"
    assert case_c(analyze, "Z6") == "3"  # order pq
    assert case_c(analyze, "Z30") == "3"
    assert case_c(analyze, "Z8xZ4") is None  # abelian of type (3, 2): 3-connected
    s3 = analyze("S3")
    with pytest.raises(ValidationError):
        not_three_connected_case(s3.group, s3.lattice)


def test_three_connected_case_for_four_primes():
    G = cyclic(210)
    L = all_subgroups(G)
    assert not_three_connected_case(G, L) is None


def test_abelian_cut_vertex_shapes(analyze):
    assert abelian_cut_vertex_shape(analyze("Z8").group)
    assert abelian_cut_vertex_shape(analyze("Z4xZ2").group)
    assert abelian_cut_vertex_shape(analyze("Z12").group)  # Z4 x Z3
    assert not abelian_cut_vertex_shape(analyze("Z2xZ2").group)
    assert not abelian_cut_vertex_shape(analyze("Z2xZ2xZ2").group)
    assert not abelian_cut_vertex_shape(analyze("Z16").group)
    with pytest.raises(ValidationError):
        abelian_cut_vertex_shape(analyze("S3").group)


def test_abelian_cut_vertex_matches_computation(analyze, default_labels):
    from intgraph.graphs import cut_vertices

    for label in default_labels:
        a = analyze(label)
        if not a.group.is_abelian() or a.graph.n == 0:
            continue
        cuts, connected = cut_vertices(a.graph)
        has_cut = connected and bool(cuts)
        assert has_cut == abelian_cut_vertex_shape(a.group), label


def test_p2q_shapes(analyze):
    assert p2q_three_connected_shape(analyze("Z7^2:Z3:lam2").group)
    assert p2q_three_connected_shape(analyze("Z7^2:Z3:lam4").group)
    assert p2q_three_connected_shape(analyze("Z5^2:Z2:lam4").group)
    assert not p2q_three_connected_shape(analyze("A4").group)
    assert not p2q_three_connected_shape(analyze("Z12").group)
    assert not p2q_three_connected_shape(analyze("Z2xZ2xZ3").group)
    with pytest.raises(ValidationError):
        p2q_three_connected_shape(analyze("Z8").group)


def test_predicted_band(analyze):
    z30 = analyze("Z30")
    band = predicted_connectivity_band(z30.group, z30.lattice)
    assert band.two_connected is True
    z6 = analyze("Z6")
    band6 = predicted_connectivity_band(z6.group, z6.lattice)
    assert band6.connected is False
    G210 = cyclic(210)
    band210 = predicted_connectivity_band(G210, all_subgroups(G210))
    assert band210.three_connected is True
    a5 = analyze("A5")
    band5 = predicted_connectivity_band(a5.group, a5.lattice)
    assert band5.connected is None  # simple: hypothesis not applicable
    assert band5.two_connected is None  # not solvable


def test_audit_records(analyze):
    s3 = analyze("S3").report
    assert s3.kappa == 0 and s3.case_a == "2" and s3.agree_a is True
    q8 = analyze("Q8").report
    assert q8.kappa == 3 and q8.case_b is None and q8.case_c is None
    assert q8.agree_b is True and q8.agree_c is True
    z24 = analyze("Z24").report
    assert z24.case_c == "3" and z24.kappa < 3 and z24.agree_c is True
    a5 = analyze("A5").report
    assert a5.agree_a is None and a5.agree_b is None and a5.agree_c is None
    assert not a5.has_proper_normal


def test_audit_dict_shape(analyze):
    rep = analyze("Q8").report.to_dict()
    for key in ("label", "order", "kappa", "case_a", "agree_c", "supersolvable"):
        assert key in rep


def test_prime_divisor_corollary(analyze, default_labels):
    """Supersolvable groups below 3-connectivity have at most three prime
    divisors, with square-free order when there are exactly three."""
    from intgraph.groups import factorize

    for label in default_labels:
        a = analyze(label)
        if not a.report.supersolvable or a.kappa >= 3:
            continue
        fact = factorize(a.group.order)
        assert len(fact) <= 3, label
        if len(fact) == 3:
            assert all(e == 1 for e in fact.values()), label
