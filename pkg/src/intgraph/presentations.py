"""Finite presentations realized as concrete groups via coset enumeration.

Relators are words over signed 1-based generator indices (+i is the
i-th generator, -i its inverse).  Enumeration over the trivial subgroup
yields the regular permutation action, which is then closed into a full
multiplication table, so presented groups plug into everything else.

Strategy: HLT-style relator scanning with immediate coincidence
processing.  Deterministic: the same presentation and coset limit
always produce the identical table.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CosetLimitExceeded, ValidationError
from .groups import FiniteGroup

DEFAULT_MAX_COSETS = 20_000

Word = tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator count plus relator words."""

    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValidationError("presentation needs at least one generator")
        for word in self.relators:
            if not word:
                raise ValidationError("empty relator word")
            for g in word:
                if g == 0 or abs(g) > self.generator_count:
                    raise ValidationError(f"relator letter {g} out of range")


def word_inverse(word: Sequence[int]) -> Word:
    return tuple(-g for g in reversed(word))


def equation(lhs: Sequence[int], rhs: Sequence[int]) -> Word:
    """Normalize an equality lhs = rhs into the relator lhs * rhs^-1."""
    return tuple(lhs) + word_inverse(rhs)


def power(gen: int, k: int) -> Word:
    """The word gen^k (k may be negative)."""
    if k >= 0:
        return (gen,) * k
    return (-gen,) * (-k)


class _CosetTable:
    """Coset table over the trivial subgroup with union-find coincidences."""

    def __init__(self, ngens: int, max_cosets: int):
        self.nl = 2 * ngens  # letter 2i = gen i, letter 2i+1 = inverse
        self.max = max_cosets
        self.table: list[list[int]] = [[-1] * self.nl]
        self.p: list[int] = [0]

    def rep(self, k: int) -> int:
        l = k
        p = self.p
        while p[l] != l:
            l = p[l]
        while p[k] != l:
            p[k], k = l, p[k]
        return l

    def define(self, a: int, x: int) -> None:
        if len(self.table) >= self.max:
            raise CosetLimitExceeded(
                f"coset enumeration needed more than {self.max} cosets; "
                "the presentation may define a larger or infinite group"
            )
        b = len(self.table)
        self.table.append([-1] * self.nl)
        self.p.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a

    def _merge(self, k: int, lam: int, queue: list[int]) -> None:
        k, lam = self.rep(k), self.rep(lam)
        if k != lam:
            mu, nu = min(k, lam), max(k, lam)
            self.p[nu] = mu
            queue.append(nu)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        pos = 0
        while pos < len(queue):
            y = queue[pos]
            pos += 1
            for x in range(self.nl):
                d = self.table[y][x]
                if d == -1:
                    continue
                self.table[d][x ^ 1] = -1
                mu = self.rep(y)
                nu = self.rep(d)
                if self.table[mu][x] != -1:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] != -1:
                    self._merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu

    def scan_and_fill(self, a: int, word: Sequence[int]) -> None:
        f, b = a, a
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] != -1:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][word[j] ^ 1] != -1:
                b = self.table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def live(self) -> list[int]:
        return [k for k in range(len(self.p)) if self.p[k] == k]

    def is_settled(self) -> bool:
        for a in self.live():
            row = self.table[a]
            if any(entry == -1 for entry in row):
                return False
            if any(self.rep(entry) != entry for entry in row):
                return False
        return True


def _letters(word: Word) -> tuple[int, ...]:
    return tuple((2 * (g - 1)) if g > 0 else (2 * (-g - 1) + 1) for g in word)


def todd_coxeter_with_generators(
    P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS
) -> tuple[FiniteGroup, list[int]]:
    """Enumerate cosets of the trivial subgroup; return the group and the
    element indices of the generator images."""
    rels = [_letters(w) for w in P.relators]
    C = _CosetTable(P.generator_count, max_cosets)
    for _ in range(max_cosets + 1):
        a = 0
        while a < len(C.table):
            if C.p[a] == a:
                for rel in rels:
                    C.scan_and_fill(a, rel)
                    if C.p[a] != a:
                        break
                if C.p[a] == a:
                    for x in range(C.nl):
                        if C.table[a][x] == -1:
                            C.define(a, x)
            a += 1
        if C.is_settled():
            break
    else:
        raise AssertionError("coset enumeration failed to settle")

    live = C.live()
    compress = {c: i for i, c in enumerate(live)}
    n = len(live)
    letters = [
        np.array([compress[C.rep(C.table[c][x])] for c in live], dtype=np.int32)
        for x in range(C.nl)
    ]
    # Regular representation: coset b stands for the element carrying
    # coset 0 to b, and column b of the multiplication table is the
    # action of that element, built along a breadth-first spanning tree.
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n, dtype=np.int32)
    visited = [False] * n
    visited[0] = True
    queue = deque([0])
    while queue:
        b = queue.popleft()
        col_b = table[:, b]
        for x in range(C.nl):
            nb = int(letters[x][b])
            if not visited[nb]:
                visited[nb] = True
                table[:, nb] = letters[x][col_b]
                queue.append(nb)
    group = FiniteGroup(table)
    gen_elements = [int(letters[2 * g][0]) for g in range(P.generator_count)]
    _check_relators(group, gen_elements, P)
    return group, gen_elements


def todd_coxeter(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> FiniteGroup:
    """The group defined by P, via its regular action on cosets."""
    return todd_coxeter_with_generators(P, max_cosets)[0]


def _check_relators(group: FiniteGroup, gen_elements: list[int], P: Presentation) -> None:
    inv = group.inverses
    for word in P.relators:
        acc = group.identity
        for g in word:
            el = gen_elements[g - 1] if g > 0 else int(inv[gen_elements[-g - 1]])
            acc = group.mul(acc, el)
        if acc != group.identity:
            raise AssertionError("internal error: relator does not close")


# -- presentation text format -------------------------------------------

_TOKEN_RE = re.compile(r"([a-zA-Z])(-?\d+)?")


def parse_word(text: str) -> Word:
    """Parse a word like 'a9', 'bcB c-4': letters a-z are generators,
    A-Z their inverses, an optional integer exponent follows a letter."""
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ValidationError("empty word")
    pos = 0
    out: list[int] = []
    while pos < len(stripped):
        m = _TOKEN_RE.match(stripped, pos)
        if not m:
            raise ValidationError(f"malformed word {text!r}")
        letter, expo = m.group(1), m.group(2)
        g = (ord(letter.lower()) - ord("a")) + 1
        sign = 1 if letter.islower() else -1
        k = int(expo) if expo is not None else 1
        out.extend(power(sign * g, k))
        pos = m.end()
    return tuple(out)


def parse_presentation_text(text: str) -> Presentation:
    """Parse the presentation file format.

    First meaningful line: ``gens k``.  Each following line is one
    relator word, or an equality ``lhs = rhs`` which is normalized to
    ``lhs rhs^-1``.  Blank lines and lines starting with # are ignored.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ValidationError("empty presentation file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "gens":
        raise ValidationError("presentation file must start with 'gens k'")
    try:
        k = int(header[1])
    except ValueError as exc:
        raise ValidationError("generator count must be an integer") from exc
    relators = []
    for ln in lines[1:]:
        if "=" in ln:
            lhs, _, rhs = ln.partition("=")
            relators.append(equation(parse_word(lhs), parse_word(rhs)))
        else:
            relators.append(parse_word(ln))
    pres = Presentation(k, tuple(relators))
    for word in pres.relators:
        for g in word:
            if abs(g) > k:
                raise ValidationError(f"letter {g} exceeds declared generator count {k}")
    return pres
