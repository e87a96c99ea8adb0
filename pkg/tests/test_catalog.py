"""Catalog construction, the exceptional families, and table ingestion."""

import json

import pytest

from intgraph import catalog
from intgraph.errors import ValidationError
from intgraph.groups import (
    are_isomorphic,
    cyclic,
    direct_product,
    group_to_dict,
)
from intgraph.lattice import (
    all_subgroups,
    center,
    frattini,
    minimal_subgroups,
    subgroup_is_cyclic,
)

EXC81_TRIPLES = ((1, 0, -1), (1, -1, -1), (1, 1, -1), (-1, 0, 1), (-1, 1, 1), (-1, -1, 1))


def test_every_entry_builds_with_declared_order(default_labels):
    for label in default_labels:
        G = catalog.get_group(label)
        assert G.order == catalog.entry(label).expected_order
        assert G.label == label


def test_unknown_label_rejected():
    with pytest.raises(ValidationError):
        catalog.entry("Zillion")
    with pytest.raises(ValidationError):
        catalog.get_group("nope")


def test_manifest_lists_everything():
    text = catalog.manifest_text()
    for e in catalog.standard_families():
        assert e.label in text
    assert "heavy" in text


def test_expected_kappa_annotations(analyze):
    for e in catalog.standard_families():
        if e.expected and "kappa" in e.expected:
            assert analyze(e.label).kappa == e.expected["kappa"], e.label


def test_lambda_entries(analyze):
    assert analyze("Z7^2:Z3:lam2").group.order == 147
    assert analyze("Z7^2:Z3:lam4").group.order == 147
    assert analyze("Z5^2:Z2:lam4").group.order == 50
    with pytest.raises(ValidationError):
        catalog.scalar_lambda_group(7, 3, 3)  # 3^3 = 27 != 1 mod 7
    with pytest.raises(ValidationError):
        catalog.scalar_lambda_group(7, 3, 1)


def test_lambda_isomorphism_outcome_is_recorded():
    # the two valid scalars for (p, q) = (7, 3) may or may not give the
    # same group; record the verdict rather than asserting one
    ok, witness = are_isomorphic(
        catalog.get_group("Z7^2:Z3:lam2"), catalog.get_group("Z7^2:Z3:lam4")
    )
    assert ok in (True, False)
    print(f"lam2 vs lam4 isomorphic: {ok}")
    if ok:
        assert witness is not None


def test_exceptional_p4_order_and_minimal_subgroups():
    G = catalog.exceptional_p4(3, 1, 0, -1)
    assert G.order == 81
    L = all_subgroups(G)
    phi = frattini(G, L)
    assert phi.order == 9
    for m in minimal_subgroups(L):
        assert phi.contains(m)  # every minimal subgroup sits inside Phi


def test_exceptional_p4_family_pairwise_isomorphic():
    groups = [catalog.exceptional_p4(3, *t) for t in EXC81_TRIPLES]
    base = groups[0]
    for other in groups[1:]:
        ok, _ = are_isomorphic(base, other)
        assert ok


def test_exceptional_p4_rejects_bad_parameters():
    with pytest.raises(ValidationError):
        catalog.exceptional_p4(5, 1, 0, -1)
    with pytest.raises(ValidationError):
        catalog.exceptional_p4(3, 1, 0, 1)
    with pytest.raises(ValidationError):
        catalog.exceptional_p4(3, 0, 0, -1)


def test_exceptional_p4_type2_rejects_small_primes():
    with pytest.raises(ValidationError):
        catalog.exceptional_p4_type2(3)
    with pytest.raises(ValidationError):
        catalog.exceptional_p4_type2(2)


@pytest.mark.slow
def test_exceptional_p4_type2_structure():
    G = catalog.get_group("G625:typeII")
    assert G.order == 625
    L = all_subgroups(G)
    phi = frattini(G, L)
    assert phi.order == 25
    assert not subgroup_is_cyclic(G, phi)
    z = center(G)
    assert z.order < phi.order and phi.mask & z.mask == z.mask


@pytest.mark.slow
def test_exceptional_p4_type2_p7_constructible_on_demand():
    G = catalog.get_group("G2401:typeII")
    assert G.order == 7**4


def test_heavy_entries_excluded_from_default_sweep(default_labels):
    assert "G625:typeII" not in default_labels
    assert "G2401:typeII" not in default_labels
    full = {e.label for e in catalog.standard_families()}
    assert "G625:typeII" in full and "G2401:typeII" in full


def test_catalog_covers_every_case_tag(analyze, default_labels):
    seen_a, seen_b, seen_c = set(), set(), set()
    for label in default_labels:
        rep = analyze(label).report
        if rep.case_a:
            seen_a.add(rep.case_a)
        if rep.case_b:
            seen_b.add(rep.case_b)
        if rep.case_c:
            seen_c.add(rep.case_c)
    assert seen_a == {"1", "2"}
    assert seen_b == {"1", "2", "3a", "3b", "4a", "4b"}
    assert seen_c == {"1", "2a", "2b", "2c", "3"}


# -- ingestion -------------------------------------------------------------


def test_ingest_single_group(tmp_path):
    path = tmp_path / "z6.json"
    path.write_text(json.dumps(group_to_dict(cyclic(6, label="Z6"))))
    groups = catalog.ingest_tables(path)
    assert len(groups) == 1
    assert groups[0].order == 6
    assert groups[0].label == "Z6"


def test_ingest_rejects_non_associative_latin_square(tmp_path):
    table = [[(a - b) % 5 for b in range(5)] for a in range(5)]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"label": "bad", "order": 5, "table": table}))
    with pytest.raises(ValidationError):
        catalog.ingest_tables(path)


def test_ingest_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError) as err:
        catalog.ingest_tables(path)
    assert "line" in str(err.value)


def test_ingest_all_order_eight_groups(tmp_path):
    models = {
        "Z8": cyclic(8),
        "Z4xZ2": direct_product(cyclic(4), cyclic(2)),
        "Z2^3": direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        "D4": catalog.dihedral_group(4),
        "Q8": catalog.quaternion_group(8),
    }
    payload = [group_to_dict(G) | {"label": lbl} for lbl, G in models.items()]
    path = tmp_path / "order8.json"
    path.write_text(json.dumps(payload))
    groups = catalog.ingest_tables(path)
    assert len(groups) == 5
    abelian = [G for G in groups if G.is_abelian()]
    assert len(abelian) == 3
    # the five files really are the five distinct groups of order eight
    for i in range(5):
        for j in range(i + 1, 5):
            ok, _ = are_isomorphic(groups[i], groups[j])
            assert not ok


def test_ingest_respects_declared_order(tmp_path):
    path = tmp_path / "lie.json"
    path.write_text(json.dumps({"label": "lie", "order": 3, "table": [[0, 1], [1, 0]]}))
    with pytest.raises(ValidationError):
        catalog.ingest_tables(path)
