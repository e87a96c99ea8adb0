"""Constructive group families covering every classified shape, plus
ingestion of external multiplication tables for exhaustive sweeps.

Every entry is validated at build time: a constructed order differing
from the declared one aborts with an error.  Entries flagged ``heavy``
(the order-p^4 second-family groups for p in {5, 7}) are excluded from
default sweeps and built on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import product as iter_product
from typing import Callable, Optional

import numpy as np

from .errors import ValidationError
from .groups import (
    FiniteGroup,
    cyclic,
    direct_product,
    from_permutation_generators,
    group_from_dict,
    isomorphism_from_generator_images,
    semidirect_product,
)
from .presentations import (
    DEFAULT_MAX_COSETS,
    Presentation,
    equation,
    power,
    todd_coxeter,
)

DEFAULT_SWEEP_MAX_ORDER = 256


# -- constructors ---------------------------------------------------------


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon (order 2n), n >= 3."""
    if n < 3:
        raise ValidationError("dihedral construction needs n >= 3")
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((n - i) % n for i in range(n))
    return from_permutation_generators(n, [rotation, reflection], label=f"D{n}")


def quaternion_group(m: int) -> FiniteGroup:
    """Generalized quaternion group of order m (a power of two >= 8)."""
    if m < 8 or m & (m - 1):
        raise ValidationError("generalized quaternion order must be a power of two >= 8")
    pres = Presentation(
        2,
        (
            power(1, m // 2),
            power(2, 2) + power(1, -(m // 4)),
            (-2, 1, 2, 1),
        ),
    )
    G = todd_coxeter(pres)
    if G.order != m:
        raise ValidationError(f"quaternion presentation closed at {G.order}, not {m}")
    G.label = f"Q{m}"
    return G


def heisenberg_group(p: int) -> FiniteGroup:
    """Non-abelian group of order p^3 and exponent p (p odd)."""
    if p < 3:
        raise ValidationError("the exponent-p group of order p^3 needs p odd")
    pres = Presentation(
        3,
        (
            power(1, p),
            power(2, p),
            power(3, p),
            equation((1, 3), (3, 1)),
            equation((2, 3), (3, 2)),
            (1, 2, -1, -2, -3),
        ),
    )
    G = todd_coxeter(pres)
    if G.order != p**3:
        raise ValidationError(f"presentation closed at {G.order}, not {p ** 3}")
    G.label = f"He{p ** 3}"
    return G


def modular_p3_group(p: int) -> FiniteGroup:
    """Non-abelian group of order p^3 with a cyclic subgroup of index p (p odd)."""
    if p < 3:
        raise ValidationError("the modular order-p^3 group needs p odd")
    pres = Presentation(
        2,
        (
            power(1, p * p),
            power(2, p),
            equation((2, 1, -2), power(1, p + 1)),
        ),
    )
    G = todd_coxeter(pres)
    if G.order != p**3:
        raise ValidationError(f"presentation closed at {G.order}, not {p ** 3}")
    G.label = f"M{p ** 3}"
    return G


def elementary_abelian(p: int, rank: int) -> FiniteGroup:
    return reduce(direct_product, [cyclic(p) for _ in range(rank)])


def linear_semidirect(p: int, mat, q: int, label: str = "") -> FiniteGroup:
    """(Z_p)^dim x| Z_q where the generator acts by the given matrix.

    The automorphism and homomorphism laws are verified by the
    semidirect product constructor itself.
    """
    M = np.asarray(mat, dtype=np.int64) % p
    dim = M.shape[0]
    N = elementary_abelian(p, dim)
    vecs = np.array(list(iter_product(range(p), repeat=dim)), dtype=np.int64)
    weights = np.array([p ** (dim - 1 - i) for i in range(dim)], dtype=np.int64)
    action = []
    cur = np.eye(dim, dtype=np.int64)
    for _ in range(q):
        mapped = (vecs @ cur.T) % p
        action.append((mapped @ weights).astype(np.int32))
        cur = (M @ cur) % p
    H = cyclic(q)
    return semidirect_product(N, H, action, label=label)


def frobenius_z2cubed_z7() -> FiniteGroup:
    """Order 56: elementary abelian 2-group with an irreducible Z7 action."""
    companion = [[0, 0, 1], [1, 0, 1], [0, 1, 0]]  # x^3 + x + 1 over F2
    return linear_semidirect(2, companion, 7, label="Z2^3:Z7")


def frobenius_z5squared_z3() -> FiniteGroup:
    """Order 75: Z5 x Z5 with an irreducible Z3 action."""
    mat = [[0, -1], [1, -1]]  # order 3, no eigenvalue in F5
    return linear_semidirect(5, mat, 3, label="Z5^2:Z3")


def wreath_z3_z3() -> FiniteGroup:
    """Z3 wr Z3, order 81: coordinate rotation on (Z3)^3."""
    shift = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    return linear_semidirect(3, shift, 3, label="Z3wrZ3")


def frobenius_f20() -> FiniteGroup:
    """Order 20: Z5 x| Z4, the generator acting as multiplication by 2."""
    N = cyclic(5)
    H = cyclic(4)
    action = []
    for h in range(4):
        factor = pow(2, h, 5)
        action.append([(x * factor) % 5 for x in range(5)])
    return semidirect_product(N, H, action, label="F20")


def scalar_lambda_group(p: int, q: int, lam: int) -> FiniteGroup:
    """(Z_p x Z_p) x| Z_q with the generator scaling both factors by lam.

    Requires lam > 1 and lam^q = 1 mod p (hence q divides p - 1).
    """
    if lam <= 1 or pow(lam, q, p) != 1:
        raise ValidationError(f"lambda={lam} is not a valid scalar for (p, q)=({p}, {q})")
    mat = [[lam, 0], [0, lam]]
    return linear_semidirect(p, mat, q, label=f"Z{p}^2:Z{q}:lam{lam}")


def _permutation_order(perm: list[int]) -> int:
    ident = list(range(len(perm)))
    cur = list(perm)
    k = 1
    while cur != ident:
        cur = [perm[i] for i in cur]
        k += 1
    return k


def q8_semidirect_z3() -> FiniteGroup:
    """Order 24: Q8 x| Z3 with a faithful order-3 action (SL-type)."""
    Q8 = quaternion_group(8)
    gens = list(Q8.generating_set())
    orders = Q8.element_orders()
    pools = [
        [y for y in range(8) if int(orders[y]) == int(orders[g])] for g in gens
    ]
    for images in iter_product(*pools):
        phi = isomorphism_from_generator_images(Q8, Q8, gens, images)
        if phi is None:
            continue
        if _permutation_order(phi) == 3:
            phi2 = [phi[phi[i]] for i in range(8)]
            action = [list(range(8)), phi, phi2]
            return semidirect_product(Q8, cyclic(3), action, label="Q8:Z3")
    raise AssertionError("no order-3 automorphism of Q8 found")


def _exceptional_p4_presentation(p: int, k: int, m: int, n: int) -> Presentation:
    return Presentation(
        3,
        (
            power(1, p * p),
            power(2, p),
            equation((1, 2), (2, 1)),
            equation(power(1, p), power(3, k * p)),
            equation((2, 3, -2), power(3, 1 + p)),
            equation((1, 3, -1), power(3, 1 + m * p) + power(2, n)),
        ),
    )


def exceptional_p4(p: int, k: int, m: int, n: int) -> FiniteGroup:
    """The order-81 groups with every minimal subgroup inside the
    Frattini subgroup, parameterized by (k, m, n) with n = -k.

    Only p = 3 admits this family.
    """
    if p != 3:
        raise ValidationError("this family only exists for p = 3")
    if k not in (-1, 1) or m not in (-1, 0, 1) or n != -k:
        raise ValidationError(f"invalid parameters (k, m, n) = ({k}, {m}, {n})")
    G = todd_coxeter(_exceptional_p4_presentation(p, k, m, n))
    if G.order != p**4:
        raise ValidationError(f"coset enumeration closed at {G.order}, not {p ** 4}")
    G.label = f"G81:k{k}m{m}n{n}"
    return G


def exceptional_p4_type2(p: int, max_cosets: Optional[int] = None) -> FiniteGroup:
    """The second exceptional order-p^4 family, defined for p > 3."""
    if p <= 3:
        raise ValidationError("this family only exists for p > 3")
    pres = Presentation(
        3,
        (
            power(1, p * p),
            power(2, p),
            power(3, p),
            equation((2, 3), (3, 2)),
            equation((2, 1, -2), power(1, p + 1)),
            equation((3, 1, -3), (1, 2)),
        ),
    )
    limit = max_cosets if max_cosets is not None else max(DEFAULT_MAX_COSETS, 80 * p**4)
    G = todd_coxeter(pres, max_cosets=limit)
    if G.order != p**4:
        raise ValidationError(f"coset enumeration closed at {G.order}, not {p ** 4}")
    G.label = f"G{p ** 4}:typeII"
    return G


# -- the catalog ----------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """A labelled constructor with its declared order."""

    label: str
    builder: Callable[[], FiniteGroup] = field(repr=False)
    expected_order: int
    heavy: bool = False
    expected: Optional[dict] = None

    def build(self) -> FiniteGroup:
        return get_group(self.label)


def _partitions(total: int, max_parts: int, largest: Optional[int] = None):
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    top = min(total, largest if largest is not None else total)
    for first in range(top, 0, -1):
        for rest in _partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


def _abelian_builder(p: int, parts: tuple[int, ...]) -> Callable[[], FiniteGroup]:
    def build() -> FiniteGroup:
        return reduce(direct_product, [cyclic(p**a) for a in parts])

    return build


def _mixed_abelian(ps: tuple[int, ...]) -> Callable[[], FiniteGroup]:
    def build() -> FiniteGroup:
        return reduce(direct_product, [cyclic(p) for p in ps])

    return build


_PERM_GROUPS = {
    "S3": (3, [(1, 2, 0), (1, 0, 2)], 6),
    "A4": (4, [(1, 2, 0, 3), (1, 0, 3, 2)], 12),
    "S4": (4, [(1, 2, 3, 0), (1, 0, 2, 3)], 24),
    "A5": (5, [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], 60),
}


def _perm_builder(label: str) -> Callable[[], FiniteGroup]:
    degree, gens, _ = _PERM_GROUPS[label]

    def build() -> FiniteGroup:
        return from_permutation_generators(degree, gens, label=label)

    return build


@lru_cache(maxsize=1)
def _entries() -> tuple[CatalogEntry, ...]:
    entries: list[CatalogEntry] = []

    expected_kappa = {
        "Z6": 0, "Z8": 1, "Z4xZ2": 1, "Q8": 3, "Z4": 0, "Z9": 0, "Z25": 0,
    }

    for n in range(1, 65):
        label = f"Z{n}"
        exp = {"kappa": expected_kappa[label]} if label in expected_kappa else None
        entries.append(CatalogEntry(label, (lambda n=n: cyclic(n)), n, expected=exp))

    # abelian p-groups of every partition type, orders <= 81,
    # rank <= 4 for p = 2 and <= 3 for p = 3
    for p, max_total, max_parts in ((2, 6, 4), (3, 4, 3)):
        for total in range(2, max_total + 1):
            for parts in _partitions(total, max_parts):
                if len(parts) < 2:
                    continue  # cyclic types are already present
                label = "x".join(f"Z{p ** a}" for a in parts)
                exp = {"kappa": expected_kappa[label]} if label in expected_kappa else None
                entries.append(
                    CatalogEntry(label, _abelian_builder(p, parts), p**total, expected=exp)
                )

    # mixed abelian shapes (Zp x Zp) x Zq
    entries.append(CatalogEntry("Z2xZ2xZ3", _mixed_abelian((2, 2, 3)), 12))
    entries.append(CatalogEntry("Z3xZ3xZ2", _mixed_abelian((3, 3, 2)), 18))

    for n in range(3, 17):
        entries.append(CatalogEntry(f"D{n}", (lambda n=n: dihedral_group(n)), 2 * n))

    for m in (8, 16, 32):
        exp = {"kappa": 3} if m == 8 else None
        entries.append(CatalogEntry(f"Q{m}", (lambda m=m: quaternion_group(m)), m, expected=exp))

    for p in (3, 5):
        entries.append(CatalogEntry(f"He{p ** 3}", (lambda p=p: heisenberg_group(p)), p**3))
        entries.append(CatalogEntry(f"M{p ** 3}", (lambda p=p: modular_p3_group(p)), p**3))

    for label, (_, _, order) in _PERM_GROUPS.items():
        exp = {"kappa": 0} if label in ("S3", "A4") else None
        entries.append(CatalogEntry(label, _perm_builder(label), order, expected=exp))

    entries.append(CatalogEntry("F20", frobenius_f20, 20))
    entries.append(CatalogEntry("Q8:Z3", q8_semidirect_z3, 24))
    entries.append(CatalogEntry("Z2^3:Z7", frobenius_z2cubed_z7, 56))
    entries.append(CatalogEntry("Z5^2:Z3", frobenius_z5squared_z3, 75))

    for (p, q, lam) in ((7, 3, 2), (7, 3, 4), (5, 2, 4)):
        entries.append(
            CatalogEntry(
                f"Z{p}^2:Z{q}:lam{lam}",
                (lambda p=p, q=q, lam=lam: scalar_lambda_group(p, q, lam)),
                p * p * q,
            )
        )

    for k, m, n in ((1, 0, -1), (1, -1, -1), (1, 1, -1), (-1, 0, 1), (-1, 1, 1), (-1, -1, 1)):
        entries.append(
            CatalogEntry(
                f"G81:k{k}m{m}n{n}",
                (lambda k=k, m=m, n=n: exceptional_p4(3, k, m, n)),
                81,
            )
        )

    entries.append(CatalogEntry("Z3wrZ3", wreath_z3_z3, 81))

    entries.append(
        CatalogEntry("G625:typeII", (lambda: exceptional_p4_type2(5)), 625, heavy=True)
    )
    entries.append(
        CatalogEntry("G2401:typeII", (lambda: exceptional_p4_type2(7)), 2401, heavy=True)
    )

    labels = [e.label for e in entries]
    if len(labels) != len(set(labels)):
        raise AssertionError("duplicate catalog labels")
    return tuple(entries)


def standard_families() -> list[CatalogEntry]:
    """All catalog entries, in a stable order."""
    return list(_entries())


def entry(label: str) -> CatalogEntry:
    for e in _entries():
        if e.label == label:
            return e
    raise ValidationError(f"unknown catalog label {label!r}")


def labels() -> list[str]:
    return [e.label for e in _entries()]


def default_entries(max_order: int = DEFAULT_SWEEP_MAX_ORDER) -> list[CatalogEntry]:
    """Entries included in a default sweep: order within the cap."""
    return [e for e in _entries() if e.expected_order <= max_order]


@lru_cache(maxsize=None)
def get_group(label: str) -> FiniteGroup:
    """Build (and cache) a catalog group, enforcing its declared order."""
    e = entry(label)
    G = e.builder()
    if G.order != e.expected_order:
        raise ValidationError(
            f"catalog entry {label!r} built order {G.order}, declared {e.expected_order}"
        )
    G.label = label
    return G


def manifest_text() -> str:
    """Reproducible listing of the catalog: label, order, flags."""
    lines = ["# label\torder\tflags"]
    for e in _entries():
        flags = "heavy" if e.heavy else "-"
        lines.append(f"{e.label}\t{e.expected_order}\t{flags}")
    return "\n".join(lines) + "\n"


# -- ingestion ------------------------------------------------------------


def ingest_tables(path) -> list[FiniteGroup]:
    """Load and fully validate multiplication tables from a JSON file.

    The file holds either one group record or a list of them; any
    invalid record rejects the whole file with diagnostics.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: malformed JSON at line {exc.lineno}") from exc
    records = payload if isinstance(payload, list) else [payload]
    groups = []
    for i, rec in enumerate(records):
        name = rec.get("label", f"#{i}") if isinstance(rec, dict) else f"#{i}"
        try:
            groups.append(group_from_dict(rec))
        except ValidationError as exc:
            raise ValidationError(f"{path}: entry {i} ({name}): {exc}") from exc
    return groups
