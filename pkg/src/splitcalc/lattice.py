"""Finitely generated abelian groups as Z^m modulo a relation lattice.

A subgroup is stored through its preimage lattice in Z^m, which always
contains the relation lattice.  Both lattices are kept in the column Hermite
normal form of :mod:`splitcalc.intmat`, so subgroup equality and hashing are
plain tuple comparisons.

Root closures, torsion-free complements and the sandwich classification of
intermediate subgroups ``A <= B <= P`` live here as well.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import intmat
from .intmat import Columns, Vector

INFINITE = math.inf


class NotASubgroupError(ValueError):
    """Raised when an operation requires ``S <= T`` and it fails."""


@dataclass(frozen=True)
class LatticeGroup:
    """The group Z^m / L with L given by its HNF column basis."""

    ambient_rank: int
    relation_basis: Columns = ()

    def __post_init__(self):
        if self.ambient_rank < 0:
            raise ValueError("ambient rank must be non-negative")
        canon = intmat.hnf(self.relation_basis, self.ambient_rank)
        object.__setattr__(self, "relation_basis", canon)

    @classmethod
    def free(cls, m: int) -> LatticeGroup:
        return cls(m)

    @classmethod
    def from_invariants(cls, free_rank: int, torsion: Sequence[int] = ()) -> LatticeGroup:
        """Z^free_rank + Z/d1 + ... with the torsion coordinates placed last."""
        m = free_rank + len(torsion)
        rels = []
        for k, d in enumerate(torsion):
            col = [0] * m
            col[free_rank + k] = d
            rels.append(col)
        return cls(m, tuple(tuple(c) for c in rels))

    @property
    def relation_rank(self) -> int:
        return len(self.relation_basis)

    @property
    def free_rank(self) -> int:
        return self.ambient_rank - self.relation_rank

    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion invariant factors d1 | d2 | ... (entries equal to 1 dropped)."""
        rows = [list(c) for c in self.relation_basis]
        return tuple(d for d in intmat.smith_invariants(rows, self.ambient_rank) if d != 1)

    def torsion_order(self) -> int:
        return math.prod(self.invariant_factors())

    def is_zero(self, v: Sequence[int]) -> bool:
        return _in_lattice(self.relation_basis, v)

    def whole(self) -> LatticeSubgroup:
        return canonicalize(_identity(self.ambient_rank), self)

    def zero(self) -> LatticeSubgroup:
        return canonicalize((), self)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors()]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LatticeSubgroup:
    """A subgroup of ``parent`` stored as the HNF basis of its preimage in Z^m."""

    parent: LatticeGroup
    generator_basis: Columns

    @property
    def preimage_rank(self) -> int:
        return len(self.generator_basis)

    @property
    def rank(self) -> int:
        """Torsion-free rank of the subgroup."""
        return self.preimage_rank - self.parent.relation_rank

    def __contains__(self, v: Sequence[int]) -> bool:
        return membership(v, self)

    def __le__(self, other: LatticeSubgroup) -> bool:
        return is_subgroup(self, other)

    def as_group(self) -> LatticeGroup:
        """The subgroup as an abstract group Z^r / L' in its own coordinates."""
        cols = self.generator_basis
        rels = [intmat.solve(cols, r) for r in self.parent.relation_basis]
        return LatticeGroup(len(cols), tuple(rels))

    def __str__(self) -> str:
        gens = [g for g in self.generator_basis if not self.parent.is_zero(g)]
        return "<" + ", ".join("(" + ",".join(map(str, g)) + ")" for g in gens) + ">"


def _identity(m: int) -> Columns:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def _in_lattice(basis: Columns, v: Sequence[int]) -> bool:
    rem = list(v)
    for col in basis:
        p = intmat.pivot_row(col)
        if any(rem[:p]):
            return False
        q, r = divmod(rem[p], col[p])
        if r:
            return False
        rem = [x - q * c for x, c in zip(rem, col)]
    return not any(rem)


def _check_len(v: Sequence[int], m: int) -> None:
    if len(v) != m:
        raise ValueError(f"vector of length {len(v)} in a rank-{m} ambient")


def canonicalize(gens: Iterable[Sequence[int]], parent: LatticeGroup) -> LatticeSubgroup:
    """The subgroup generated by ``gens`` (read modulo relations)."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        _check_len(g, parent.ambient_rank)
    basis = intmat.hnf(list(gens) + list(parent.relation_basis), parent.ambient_rank)
    return LatticeSubgroup(parent, basis)


def subgroup(parent: LatticeGroup, *gens: Sequence[int]) -> LatticeSubgroup:
    return canonicalize(gens, parent)


def membership(v: Sequence[int], s: LatticeSubgroup) -> bool:
    """Whether ``v`` (mod relations) lies in ``s``; triangular solve on the HNF."""
    _check_len(v, s.parent.ambient_rank)
    return _in_lattice(s.generator_basis, v)


def is_subgroup(s: LatticeSubgroup, t: LatticeSubgroup) -> bool:
    if s.parent != t.parent:
        return False
    return all(membership(g, t) for g in s.generator_basis)


def _require_sub(s: LatticeSubgroup, t: LatticeSubgroup) -> None:
    if s.parent != t.parent:
        raise NotASubgroupError("subgroups of different parents")
    if not is_subgroup(s, t):
        raise NotASubgroupError(f"{s} is not contained in {t}")


def coordinates(v: Sequence[int], s: LatticeSubgroup) -> Vector:
    """Integer coordinates of ``v`` in the preimage basis of ``s``."""
    x = intmat.solve(s.generator_basis, v)
    if x is None:
        raise NotASubgroupError(f"{tuple(v)} is not in {s}")
    return x


def index(s: LatticeSubgroup, t: LatticeSubgroup) -> int | float:
    """[t : s] as an int, or ``INFINITE``."""
    _require_sub(s, t)
    if s.preimage_rank < t.preimage_rank:
        return INFINITE
    coords = [coordinates(g, t) for g in s.generator_basis]
    tri = intmat.hnf(coords, t.preimage_rank)
    return math.prod(c[intmat.pivot_row(c)] for c in tri)


def join(s: LatticeSubgroup, t: LatticeSubgroup) -> LatticeSubgroup:
    if s.parent != t.parent:
        raise ValueError("subgroups of different parents")
    return canonicalize(s.generator_basis + t.generator_basis, s.parent)


def intersect(s: LatticeSubgroup, t: LatticeSubgroup) -> LatticeSubgroup:
    if s.parent != t.parent:
        raise ValueError("subgroups of different parents")
    m = s.parent.ambient_rank
    cols = list(s.generator_basis) + [tuple(-x for x in c) for c in t.generator_basis]
    ker = intmat.kernel(cols, m)
    k = len(s.generator_basis)
    gens = [intmat.mat_vec(s.generator_basis, x[:k], m) for x in ker]
    return canonicalize(gens, s.parent)


def _span_meet(lattice_cols: Columns, span_cols: Columns, m: int) -> list[Vector]:
    """Generators of (Z-span of lattice_cols) intersected with (Q-span of span_cols)."""
    normals = intmat.left_kernel(span_cols, m)
    if not normals:
        return list(lattice_cols)
    # coordinates x with normals . (M x) = 0
    images = [tuple(sum(n[i] * c[i] for i in range(m)) for n in normals) for c in lattice_cols]
    ker = intmat.kernel(images, len(normals))
    return [intmat.mat_vec(lattice_cols, x, m) for x in ker]


def root_closure(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    """e(A, B): elements of B having a positive multiple in A."""
    _require_sub(a, b)
    m = a.parent.ambient_rank
    gens = _span_meet(b.generator_basis, a.generator_basis, m)
    return canonicalize(gens, a.parent)


def torsion_subgroup(b: LatticeSubgroup) -> LatticeSubgroup:
    return root_closure(b.parent.zero(), b)


def is_torsion_free(b: LatticeSubgroup) -> bool:
    return torsion_subgroup(b) == b.parent.zero()


def _complement_generators(a: LatticeSubgroup, b: LatticeSubgroup) -> list[Vector]:
    """A free basis of a complement of e(A, B) in B (preimage vectors)."""
    m = a.parent.ambient_rank
    normals = intmat.left_kernel(a.generator_basis, m)
    if not normals:
        return []
    cols = b.generator_basis
    images = [tuple(sum(n[i] * c[i] for i in range(m)) for n in normals) for c in cols]
    image, _ = intmat.augmented_hnf(images, len(normals))
    return [intmat.mat_vec(cols, pre, m) for _, pre in image]


def split_complement(a: LatticeSubgroup, b: LatticeSubgroup) -> tuple[LatticeSubgroup, LatticeSubgroup]:
    """``(E, B0)`` with E = e(A, B), B = E + B0 direct and B0 torsion-free."""
    e = root_closure(a, b)
    b0 = canonicalize(_complement_generators(a, b), a.parent)
    if join(e, b0) != b or intersect(e, b0) != a.parent.zero() or not is_torsion_free(b0):
        raise AssertionError("complement construction failed its postconditions")
    return e, b0


def complement_rank(a: LatticeSubgroup, b: LatticeSubgroup) -> int:
    """Rank of any torsion-free complement of e(A, B) in B."""
    return b.rank - root_closure(a, b).rank


def _finite_extension_isomorphic(a: LatticeSubgroup, e1: LatticeSubgroup, e2: LatticeSubgroup) -> bool:
    """Is there an isomorphism e1 -> e2 restricting to the identity on a?

    Both must be finite-index overgroups of ``a``.  Any such map has the form
    ``id + d`` with ``d`` a homomorphism e1 -> torsion(P) vanishing on ``a``;
    those are enumerated exhaustively.
    """
    if e1 == e2:
        return True
    if index(a, e1) != index(a, e2):
        return False
    parent = a.parent
    tors_elems = _torsion_elements(parent)
    if len(tors_elems) == 1:
        return False  # d = 0 forced, and e1 != e2
    gens = e1.generator_basis
    a_coords = [coordinates(g, e1) for g in a.generator_basis]
    target_index = index(a, e2)
    for images in itertools.product(tors_elems, repeat=len(gens)):
        # d must vanish on a (hence on the relations, which sit inside a)
        ok = True
        for x in a_coords:
            val = intmat.mat_vec(images, x, parent.ambient_rank)
            if not parent.is_zero(val):
                ok = False
                break
        if not ok:
            continue
        moved = [tuple(g_i + d_i for g_i, d_i in zip(g, d)) for g, d in zip(gens, images)]
        img = canonicalize(moved, parent)
        if img == e2 and index(a, img) == target_index:
            return True
    return False


def _torsion_elements(parent: LatticeGroup) -> list[Vector]:
    """Representatives of every torsion element of ``parent``."""
    tors = torsion_subgroup(parent.whole())
    zero = parent.zero()
    return _coset_reps(zero, tors)


def _coset_reps(a: LatticeSubgroup, e: LatticeSubgroup) -> list[Vector]:
    """Representatives of e / a for a finite-index inclusion a <= e."""
    m = a.parent.ambient_rank
    n = e.preimage_rank
    coords = [coordinates(g, e) for g in a.generator_basis]
    tri = intmat.hnf(coords, n)
    if len(tri) != n:
        raise ValueError("infinite index; no finite coset list")
    ranges = [range(c[intmat.pivot_row(c)]) for c in tri]
    pivots = [intmat.pivot_row(c) for c in tri]
    reps = []
    for digits in itertools.product(*ranges):
        x = [0] * n
        for p, d in zip(pivots, digits):
            x[p] = d
        reps.append(intmat.mat_vec(e.generator_basis, x, m))
    return reps


def sandwich_equivalent(a: LatticeSubgroup, b: LatticeSubgroup, b2: LatticeSubgroup) -> bool:
    """Is there an isomorphism b -> b2 equal to the identity on a?

    Such a map sends e(A, B) onto e(A, B2) and complements to complements, so
    it exists iff the complements have equal rank and the two root closures
    are isomorphic over ``a``.  When the ambient group is torsion-free the
    latter just means e(A, B) == e(A, B2).
    """
    _require_sub(a, b)
    _require_sub(a, b2)
    if complement_rank(a, b) != complement_rank(a, b2):
        return False
    return _finite_extension_isomorphic(a, root_closure(a, b), root_closure(a, b2))


def intermediate_subgroups(a: LatticeSubgroup, e: LatticeSubgroup) -> list[LatticeSubgroup]:
    """Every subgroup between ``a`` and ``e``, with ``[e : a]`` finite."""
    _require_sub(a, e)
    reps = [r for r in _coset_reps(a, e) if not membership(r, a)]
    found = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for s in frontier:
            for r in reps:
                if membership(r, s):
                    continue
                t = canonicalize(s.generator_basis + (r,), a.parent)
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (index(a, s), s.generator_basis))


@dataclass(frozen=True)
class SandwichClassReport:
    root_closure_options: tuple[LatticeSubgroup, ...]
    complement_rank_range: range
    class_count: int
    witnesses: tuple[LatticeSubgroup, ...]
    # one (closure, rank) label per witness
    labels: tuple[tuple[int, int], ...] = field(default=())


def count_sandwich_classes(a: LatticeSubgroup, p: LatticeGroup) -> SandwichClassReport:
    """Classify the subgroups B with A <= B <= P up to isomorphism fixing A.

    A class is determined by the root closure e(A, B), taken up to
    isomorphism over A, together with the rank of a torsion-free complement.
    One explicit witness B is built per class.
    """
    if a.parent != p:
        raise ValueError("A must be a subgroup of P")
    whole = p.whole()
    e_top = root_closure(a, whole)
    comp_basis = _complement_generators(a, whole)
    options = intermediate_subgroups(a, e_top)
    # bucket closures up to isomorphism over A
    reps: list[int] = []
    for i, e in enumerate(options):
        if not any(_finite_extension_isomorphic(a, options[j], e) for j in reps):
            reps.append(i)
    ranks = range(0, len(comp_basis) + 1)
    witnesses, labels = [], []
    for i in reps:
        for k in ranks:
            b = canonicalize(options[i].generator_basis + tuple(comp_basis[:k]), p)
            if root_closure(a, b) != options[i] or complement_rank(a, b) != k:
                raise AssertionError("witness does not realise its class")
            witnesses.append(b)
            labels.append((i, k))
    return SandwichClassReport(tuple(options), ranks, len(witnesses), tuple(witnesses), tuple(labels))
