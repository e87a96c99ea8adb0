"""Shared fixtures: a per-session cache of analyzed catalog groups."""

from __future__ import annotations

from dataclasses import dataclass

import pytest

from intgraph import catalog
from intgraph.classify import ClassificationReport, audit
from intgraph.graphs import IntersectionGraph, build_graph, kappa
from intgraph.groups import FiniteGroup
from intgraph.lattice import SubgroupLattice, all_subgroups


@dataclass
class Analyzed:
    label: str
    group: FiniteGroup
    lattice: SubgroupLattice
    graph: IntersectionGraph
    kappa: int
    report: ClassificationReport


_CACHE: dict[str, Analyzed] = {}


def analyzed(label: str) -> Analyzed:
    """Build-once analysis bundle for a catalog label."""
    if label not in _CACHE:
        G = catalog.get_group(label)
        L = all_subgroups(G)
        g = build_graph(L)
        k = kappa(G, L, g)
        rep = audit(G, L, g, k)
        _CACHE[label] = Analyzed(label, G, L, g, k, rep)
    return _CACHE[label]


@pytest.fixture(scope="session")
def analyze():
    return analyzed


@pytest.fixture(scope="session")
def default_labels():
    return [e.label for e in catalog.default_entries()]
