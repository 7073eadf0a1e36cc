"""Non-isomorphism certificates for finitely presented groups.

Two certificates are offered: the abelianization (Smith normal form of the
exponent-sum matrix) and the number of homomorphisms into a finite group given
by its multiplication table.  Isomorphic presentations agree on both, so any
disagreement proves the groups distinct.  Agreement proves nothing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

from . import intmat
from . import words as W

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    raw = os.environ.get("GOG_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class FinitePresentation:
    generator_count: int
    relations: tuple[W.Word, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.generator_count < 0:
            raise ValueError("negative generator count")
        names = self.names or tuple(f"x{i + 1}" for i in range(self.generator_count))
        if len(names) != self.generator_count:
            raise ValueError("one name per generator required")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        rels = []
        for r in self.relations:
            r = W.reduce(r)
            for a in r:
                if not 1 <= abs(a) <= self.generator_count:
                    raise ValueError(f"letter {a} out of range")
            rels.append(r)
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def parse(cls, names: Sequence[str], relations: Sequence[str]) -> FinitePresentation:
        """Build from text relators, e.g. ``parse("xy", ["x^2 y^-2"])``."""
        names = tuple(names)
        return cls(len(names), tuple(W.parse_word(r, names) for r in relations), names)

    def format(self) -> str:
        rels = ", ".join(W.format_word(r, self.names) for r in self.relations)
        return f"<{', '.join(self.names)} | {rels}>"

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion_factors: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion_factors)
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"not an invariant factor chain: {t}")
        object.__setattr__(self, "torsion_factors", t)

    def hom_count_to_cyclic(self, m: int) -> int:
        """|Hom(G_ab, Z/m)| = m^free_rank * prod gcd(d_i, m)."""
        from math import gcd
        out = m ** self.free_rank
        for d in self.torsion_factors:
            out *= gcd(d, m)
        return out

    def __str__(self) -> str:
        tors = ",".join(map(str, self.torsion_factors))
        return f"({self.free_rank}; ({tors}))"


def invariants_of_matrix(rows: Sequence[Sequence[int]], ncols: int) -> AbelianInvariants:
    diag = intmat.smith_invariants(rows, ncols)
    return AbelianInvariants(ncols - len(diag), tuple(d for d in diag if d != 1))


def abelianization(p: FinitePresentation) -> AbelianInvariants:
    rows = [W.exponent_sums(r, p.generator_count) for r in p.relations]
    return invariants_of_matrix(rows, p.generator_count)


# --- finite groups as tables --------------------------------------------------


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group on elements 0..order-1; element 0 must be the identity."""

    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()
    label: str = ""
    _inverse: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("table must be order x order")
        t = self.table
        if any(not 0 <= v < n for r in t for v in r):
            raise ValueError("table entry out of range")
        if any(t[0][i] != i or t[i][0] != i for i in range(n)):
            raise ValueError("element 0 is not the identity")
        for r in t:
            if len(set(r)) != n:
                raise ValueError("table is not a Latin square")
        for i in range(n):
            col = {t[j][i] for j in range(n)}
            if len(col) != n:
                raise ValueError("table is not a Latin square")
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ValueError("multiplication is not associative")
        inv = tuple(next(j for j in range(n) if t[i][j] == 0) for i in range(n))
        object.__setattr__(self, "_inverse", inv)
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(n)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def dumps(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(map(str, r)) for r in self.table]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, label: str = "") -> FiniteGroupTable:
        """Parse the plain-text table format: first line the order, then rows."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty table file")
        n = int(lines[0])
        rows = tuple(tuple(int(v) for v in ln.split()) for ln in lines[1:])
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, found {len(rows)}")
        return cls(n, rows, label=label)


def cyclic_group(n: int) -> FiniteGroupTable:
    t = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroupTable(n, t, label=f"C{n}")


def dihedral_group(n: int) -> FiniteGroupTable:
    """Symmetries of the n-gon, order 2n: r^i is i, s r^i is n + i."""
    def mul(a, b):
        ia, fa = a % n, a // n
        ib, fb = b % n, b // n
        # (s^fa r^ia)(s^fb r^ib) = s^(fa+fb) r^((-1)^fb ia + ib)
        i = ((-ia if fb else ia) + ib) % n
        return ((fa + fb) % 2) * n + i
    t = tuple(tuple(mul(a, b) for b in range(2 * n)) for a in range(2 * n))
    return FiniteGroupTable(2 * n, t, label=f"D{2 * n}")


def quaternion_group(n: int) -> FiniteGroupTable:
    """Dicyclic group of order 4n: <x, y | x^2n, y^2 = x^n, y x y^-1 = x^-1>."""
    m = 2 * n
    # elements x^i y^f, encoded as f*m + i
    def mul(a, b):
        ia, fa = a % m, a // m
        ib, fb = b % m, b // m
        if fa == 0:
            return fb * m + (ia + ib) % m
        # y x^ib = x^-ib y
        i = (ia - ib) % m
        if fb == 0:
            return m + i
        return (i + n) % m  # y^2 = x^n
    t = tuple(tuple(mul(a, b) for b in range(2 * m)) for a in range(2 * m))
    return FiniteGroupTable(2 * m, t, label=f"Q{2 * m}")


def standard_targets(max_order: int = 32) -> list[FiniteGroupTable]:
    """Cyclic, dihedral and dicyclic tables up to ``max_order``, smallest first."""
    out = []
    for order in range(2, max_order + 1):
        out.append(cyclic_group(order))
        if order % 2 == 0 and order >= 4:
            out.append(dihedral_group(order // 2))
        if order % 4 == 0 and order >= 8:
            out.append(quaternion_group(order // 4))
    return out


# --- homomorphism counting ----------------------------------------------------


def hom_count(p: FinitePresentation, q: FiniteGroupTable, budget: int | None = None) -> int:
    """Number of homomorphisms from <p> to q.

    Backtracks over generator images in index order and checks each relator
    as soon as every generator it mentions has an image.  ``budget`` caps the
    number of relator evaluations.
    """
    budget = default_budget() if budget is None else budget
    n = p.generator_count
    rels = [r for r in p.relations if r]
    # relator k becomes checkable once generator ready[k] is assigned
    ready: list[list[W.Word]] = [[] for _ in range(max(n, 1))]
    for r in rels:
        ready[max(abs(a) for a in r) - 1].append(r)
    images = [0] * n
    spent = 0

    def holds(r: W.Word) -> bool:
        acc = 0
        for a in r:
            g = images[a - 1] if a > 0 else q.inv(images[-a - 1])
            acc = q.mul(acc, g)
        return acc == 0

    def rec(i: int) -> int:
        nonlocal spent
        if i == n:
            return 1
        total = 0
        for g in range(q.order):
            images[i] = g
            ok = True
            for r in ready[i]:
                spent += 1
                if spent > budget:
                    raise BudgetExceeded(f"more than {budget} relator evaluations")
                if not holds(r):
                    ok = False
                    break
            if ok:
                total += rec(i + 1)
        return total

    if n == 0:
        return 1
    return rec(0)


@dataclass(frozen=True)
class Distinction:
    """Why two presentations define different groups."""

    kind: str  # "abelianization" or "hom_count"
    target: FiniteGroupTable | None
    values: tuple

    def __str__(self) -> str:
        if self.kind == "abelianization":
            return f"abelianization {self.values[0]} vs {self.values[1]}"
        return f"|Hom(-, {self.target.label})| = {self.values[0]} vs {self.values[1]}"


def distinguish(p1: FinitePresentation, p2: FinitePresentation,
                targets: Sequence[FiniteGroupTable], budget: int | None = None) -> Distinction | None:
    """First certificate separating p1 from p2, or None.

    None only means the search found nothing; it is not an isomorphism proof.
    Targets whose count exceeds the budget are skipped.
    """
    a1, a2 = abelianization(p1), abelianization(p2)
    if a1 != a2:
        return Distinction("abelianization", None, (a1, a2))
    for q in targets:
        try:
            c1 = hom_count(p1, q, budget)
            c2 = hom_count(p2, q, budget)
        except BudgetExceeded:
            continue
        if c1 != c2:
            return Distinction("hom_count", q, (c1, c2))
    return None
