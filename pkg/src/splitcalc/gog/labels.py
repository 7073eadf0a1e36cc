"""Group labels carried by vertices and edges, and what can be decided about them.

Element representations depend on the label kind:

=============  ============================================
``Abelian``    tuple of ints (a vector in Z^m, read mod L)
``Heis``       :class:`~splitcalc.polycyclic.HeisElement`
``Free``       word (tuple of signed letters)
``Presented``  word over the presentation's generators
``Opaque``     word over the declared generator names
=============  ============================================

Abelian, Heisenberg and free labels have a solvable word problem.  Presented
labels only get certificates that follow from the abelianization; opaque
labels get nothing beyond their declared properties.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Sequence, Union

from .. import intmat, lattice
from .. import polycyclic as pc
from .. import words as W
from ..invariants import AbelianInvariants, FinitePresentation, abelianization


class TriState(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"

    @staticmethod
    def of(flag: bool) -> TriState:
        return TriState.YES if flag else TriState.NO

    def __and__(self, other: TriState) -> TriState:
        if TriState.NO in (self, other):
            return TriState.NO
        if TriState.UNKNOWN in (self, other):
            return TriState.UNKNOWN
        return TriState.YES

    def __or__(self, other: TriState) -> TriState:
        if TriState.YES in (self, other):
            return TriState.YES
        if TriState.UNKNOWN in (self, other):
            return TriState.UNKNOWN
        return TriState.NO

    def __invert__(self) -> TriState:
        return {TriState.YES: TriState.NO, TriState.NO: TriState.YES}.get(self, TriState.UNKNOWN)

    def __str__(self) -> str:
        return self.value


def all_of(states) -> TriState:
    out = TriState.YES
    for s in states:
        out = out & s
        if out is TriState.NO:
            break
    return out


class UnpresentableError(ValueError):
    """A label with no finite presentation was asked for one."""


# --- label kinds -------------------------------------------------------------


@dataclass(frozen=True)
class Abelian:
    group: lattice.LatticeGroup

    kind = "abelian"
    decidable = True

    @property
    def ngens(self) -> int:
        return self.group.ambient_rank

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.ngens))

    def generators(self) -> tuple:
        m = self.ngens
        return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))

    def identity(self):
        return (0,) * self.ngens

    def mul(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        return tuple(-a for a in g)

    def is_element(self, g) -> bool:
        return isinstance(g, tuple) and len(g) == self.ngens and all(isinstance(a, int) for a in g)

    def is_trivial(self, g) -> TriState:
        return TriState.of(self.group.is_zero(g))

    def relators(self) -> list[W.Word]:
        m = self.ngens
        rels = [W.commutator(W.gen(i), W.gen(j)) for i in range(m) for j in range(i + 1, m)]
        rels += [self.to_word(c) for c in self.group.relation_basis]
        return rels

    def to_word(self, g) -> W.Word:
        return W.reduce(a for i, k in enumerate(g) for a in W.gen(i, k))

    def evaluate(self, word: Sequence[int]):
        return tuple(W.exponent_sums(word, self.ngens))

    def canonical(self, g):
        """Lexicographically smallest-ish representative: reduce along the HNF."""
        rem = list(g)
        for col in self.group.relation_basis:
            p = intmat.pivot_row(col)
            q = rem[p] // col[p]
            rem = [x - q * c for x, c in zip(rem, col)]
        return tuple(rem)

    def __str__(self) -> str:
        return str(self.group)


@dataclass(frozen=True)
class Heis:
    desc: pc.HeisSubgroupDesc

    kind = "heis"
    decidable = True

    @property
    def ngens(self) -> int:
        return len(self.desc.generators())

    @property
    def names(self) -> tuple[str, ...]:
        k = self.desc.kind
        if k is pc.SubgroupKind.FULL:
            return ("a", "b", "c")
        if k is pc.SubgroupKind.H_N:
            return (f"a{self.desc.n}", f"b{self.desc.n}", "c")
        return ("z",)

    def generators(self) -> tuple:
        return self.desc.generators()

    def identity(self):
        return pc.IDENTITY

    def mul(self, g, h):
        return g * h

    def inv(self, g):
        return g.inverse()

    def is_element(self, g) -> bool:
        return isinstance(g, pc.HeisElement) and self.desc.contains(g)

    def is_trivial(self, g) -> TriState:
        return TriState.of(g.is_identity())

    def relators(self) -> list[W.Word]:
        if self.ngens == 3:
            n = self.desc.n if self.desc.kind is pc.SubgroupKind.H_N else 1
            p, q, r = W.gen(0), W.gen(1), W.gen(2)
            return [W.mul(W.commutator(p, q), W.gen(2, -n * n)),
                    W.commutator(p, r), W.commutator(q, r)]
        if self.desc.generators()[0].is_identity():
            return [W.gen(0)]
        return []

    def to_word(self, g) -> W.Word:
        word = pc.express(self.generators(), g)
        if word is None:
            raise ValueError(f"{g} is not in {self.desc}")
        return W.reduce(a for i, k in word for a in W.gen(i, k))

    def evaluate(self, word: Sequence[int]):
        gens = self.generators()
        out = pc.IDENTITY
        for a in word:
            out = out * (gens[a - 1] if a > 0 else gens[-a - 1].inverse())
        return out

    def canonical(self, g):
        return g

    def __str__(self) -> str:
        return str(self.desc)


@dataclass(frozen=True)
class Free:
    rank: int

    kind = "free"
    decidable = True

    @property
    def ngens(self) -> int:
        return self.rank

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.rank))

    def generators(self) -> tuple:
        return tuple(W.gen(i) for i in range(self.rank))

    def identity(self):
        return ()

    def mul(self, g, h):
        return W.mul(g, h)

    def inv(self, g):
        return W.inverse(g)

    def is_element(self, g) -> bool:
        return _is_word(g, self.rank)

    def is_trivial(self, g) -> TriState:
        return TriState.of(not W.reduce(g))

    def relators(self) -> list[W.Word]:
        return []

    def to_word(self, g) -> W.Word:
        return W.reduce(g)

    def evaluate(self, word):
        return W.reduce(word)

    def canonical(self, g):
        return W.reduce(g)

    def __str__(self) -> str:
        return f"F{self.rank}"


@dataclass(frozen=True)
class Origin:
    """Where a collapsed vertex came from: the sub-graph-of-groups and the
    generator index blocks of the fundamental presentation."""

    graph: Any
    blocks: tuple[tuple[str, tuple[int, ...]], ...]
    stable: tuple[tuple[str, int], ...]

    def block_of(self, vid: str) -> tuple[int, ...]:
        return dict(self.blocks)[vid]


@dataclass(frozen=True)
class Presented:
    presentation: FinitePresentation
    origin: Origin | None = field(default=None, compare=False, repr=False)

    kind = "presented"
    decidable = False

    @property
    def ngens(self) -> int:
        return self.presentation.generator_count

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.names

    def generators(self) -> tuple:
        return tuple(W.gen(i) for i in range(self.ngens))

    def identity(self):
        return ()

    def mul(self, g, h):
        return W.mul(g, h)

    def inv(self, g):
        return W.inverse(g)

    def is_element(self, g) -> bool:
        return _is_word(g, self.ngens)

    def is_trivial(self, g) -> TriState:
        g = W.reduce(g)
        if not g:
            return TriState.YES
        # nonzero image in the abelianization certifies nontriviality
        grp = presentation_lattice(self.presentation)
        sums = W.exponent_sums(g, self.ngens)
        if not grp.is_zero(sums):
            return TriState.NO
        if _is_relator_power(g, self.presentation.relations):
            return TriState.YES
        # letters that pairwise commute by a relator: exponent sums decide
        letters = {abs(a) - 1 for a in g}
        pairs = _commuting_pairs(self.presentation.relations)
        if all((i, j) in pairs for i in letters for j in letters if i < j):
            return TriState.of(not any(sums))
        return TriState.UNKNOWN

    def relators(self) -> list[W.Word]:
        return list(self.presentation.relations)

    def to_word(self, g) -> W.Word:
        return W.reduce(g)

    def evaluate(self, word):
        return W.reduce(word)

    def canonical(self, g):
        return W.reduce(g)

    def __str__(self) -> str:
        return self.presentation.format()


@dataclass(frozen=True)
class Opaque:
    name: str
    generators_: tuple[str, ...] = ()
    properties: frozenset[str] = frozenset()

    kind = "opaque"
    decidable = False

    @property
    def ngens(self) -> int:
        return len(self.generators_)

    @property
    def names(self) -> tuple[str, ...]:
        return self.generators_

    def generators(self) -> tuple:
        return tuple(W.gen(i) for i in range(self.ngens))

    def identity(self):
        return ()

    def mul(self, g, h):
        return W.mul(g, h)

    def inv(self, g):
        return W.inverse(g)

    def is_element(self, g) -> bool:
        return _is_word(g, self.ngens)

    def is_trivial(self, g) -> TriState:
        return TriState.YES if not W.reduce(g) else TriState.UNKNOWN

    def relators(self):
        return None

    def to_word(self, g) -> W.Word:
        return W.reduce(g)

    def evaluate(self, word):
        return W.reduce(word)

    def canonical(self, g):
        return W.reduce(g)

    def __str__(self) -> str:
        return self.name


GroupLabel = Union[Abelian, Heis, Free, Presented, Opaque]


def _is_word(g, n: int) -> bool:
    return isinstance(g, tuple) and all(isinstance(a, int) and 1 <= abs(a) <= n for a in g)


def _is_relator_power(w: W.Word, relations) -> bool:
    """Is w a cyclic conjugate of r^k for a relator r?"""
    c = W.cyclic_reduce(w)
    for r in relations:
        r = W.cyclic_reduce(r)
        if not r or len(c) % len(r):
            continue
        k = len(c) // len(r)
        for base in (r, W.inverse(r)):
            if W.are_conjugate(c, W.power(base, k)):
                return True
    return False


def _commuting_pairs(relations) -> set[tuple[int, int]]:
    out = set()
    for r in relations:
        r = W.cyclic_reduce(r)
        if len(r) == 4 and r[0] == -r[2] and r[1] == -r[3] and abs(r[0]) != abs(r[1]):
            i, j = sorted((abs(r[0]) - 1, abs(r[1]) - 1))
            out.add((i, j))
    return out


def presentation_lattice(p: FinitePresentation) -> lattice.LatticeGroup:
    """The abelianization of ``p`` as a LatticeGroup on the same generators."""
    cols = [tuple(W.exponent_sums(r, p.generator_count)) for r in p.relations]
    return lattice.LatticeGroup(p.generator_count, tuple(cols))


def label_presentation(label: GroupLabel) -> FinitePresentation:
    if isinstance(label, Presented):
        return label.presentation
    if isinstance(label, Opaque):
        raise UnpresentableError(f"opaque group {label.name} has no presentation")
    return FinitePresentation(label.ngens, tuple(label.relators()), label.names)


def label_abelianization(label: GroupLabel) -> AbelianInvariants | None:
    if isinstance(label, Opaque):
        return None
    if isinstance(label, Abelian):
        g = label.group
        return AbelianInvariants(g.free_rank, g.invariant_factors())
    return abelianization(label_presentation(label))


def evaluate_images(target: GroupLabel, word: Sequence[int], images: Sequence) -> Any:
    """Image of ``word`` under the homomorphism sending generator i to images[i]."""
    out = target.identity()
    for a in word:
        g = images[a - 1] if a > 0 else target.inv(images[-a - 1])
        out = target.mul(out, g)
    return out


# --- structural classification ----------------------------------------------


def is_finite(label: GroupLabel) -> bool | None:
    if isinstance(label, Abelian):
        return label.group.free_rank == 0
    if isinstance(label, Heis):
        return label.desc.hirsch_length == 0
    if isinstance(label, Free):
        return label.rank == 0
    return None


def is_abelian(label: GroupLabel) -> bool | None:
    if isinstance(label, Abelian):
        return True
    if isinstance(label, Heis):
        return label.ngens == 1
    if isinstance(label, Free):
        return label.rank <= 1
    if isinstance(label, Opaque):
        return False if "nonabelian" in label.properties else None
    return None


def is_cyclic(label: GroupLabel) -> bool | None:
    if isinstance(label, Abelian):
        g = label.group
        return g.free_rank + len(g.invariant_factors()) <= 1
    if isinstance(label, Heis):
        return label.ngens == 1
    if isinstance(label, Free):
        return label.rank <= 1
    if isinstance(label, Opaque):
        return False if {"nonabelian", "non-cyclic"} & label.properties else None
    return None


def infinite_cyclic_generator(label: GroupLabel):
    """A generator if ``label`` is infinite cyclic, else None."""
    if isinstance(label, Abelian):
        g = label.group
        if g.free_rank == 1 and not g.invariant_factors():
            whole = g.whole()
            gens = lattice._complement_generators(g.zero(), whole)
            return gens[0]
        return None
    if isinstance(label, Heis):
        if label.ngens == 1 and label.desc.hirsch_length == 1:
            return label.generators()[0]
        return None
    if isinstance(label, Free) and label.rank == 1:
        return W.gen(0)
    return None


def hirsch_length(label: GroupLabel) -> int | None:
    if isinstance(label, Abelian):
        return label.group.free_rank
    if isinstance(label, Heis):
        return label.desc.hirsch_length
    return None


def is_torsion_free(label: GroupLabel) -> bool | None:
    if isinstance(label, Abelian):
        return not label.group.invariant_factors()
    if isinstance(label, (Heis, Free)):
        return True
    if isinstance(label, Opaque) and "torsion-free" in label.properties:
        return True
    return None


def has_infinite_order(label: GroupLabel, g) -> TriState:
    if isinstance(label, Abelian):
        grp = label.group
        return TriState.of(intmat.rank(list(grp.relation_basis) + [g], grp.ambient_rank) > grp.relation_rank)
    if isinstance(label, (Heis, Free)):
        return ~label.is_trivial(g)
    if is_torsion_free(label):
        return ~label.is_trivial(g)
    if isinstance(label, Presented):
        grp = presentation_lattice(label.presentation)
        v = W.exponent_sums(g, label.ngens)
        if intmat.rank(list(grp.relation_basis) + [tuple(v)], grp.ambient_rank) > grp.relation_rank:
            return TriState.YES
    return TriState.UNKNOWN


# --- subgroup generation -----------------------------------------------------


def generates(target: GroupLabel, elems: Sequence) -> TriState:
    """Do ``elems`` generate all of ``target``?"""
    if isinstance(target, Abelian):
        return TriState.of(lattice.canonicalize(elems, target.group) == target.group.whole())
    if isinstance(target, Heis):
        elems = list(elems)
        return TriState.of(all(pc.subgroup_contains(elems, h) for h in target.generators()))
    if isinstance(target, Opaque):
        return TriState.UNKNOWN
    # free and presented: the abelianization gives a NO certificate
    pres = label_presentation(target)
    grp = presentation_lattice(pres)
    vecs = [tuple(W.exponent_sums(e, target.ngens)) for e in elems]
    if lattice.canonicalize(vecs, grp) != grp.whole():
        return TriState.NO
    if isinstance(target, Free) and target.rank <= 1:
        return TriState.YES
    singles = {abs(e[0]) for e in map(W.reduce, elems) if len(e) == 1}
    if singles >= set(range(1, target.ngens + 1)):
        return TriState.YES
    return TriState.UNKNOWN


def contains_all(target: GroupLabel, elems: Sequence, sub: Sequence) -> TriState:
    """Is every element of ``sub`` in the subgroup generated by ``elems``?"""
    if isinstance(target, Abelian):
        s = lattice.canonicalize(elems, target.group)
        return TriState.of(all(lattice.membership(v, s) for v in sub))
    if isinstance(target, Heis):
        elems = list(elems)
        return TriState.of(all(pc.subgroup_contains(elems, h) for h in sub))
    return TriState.UNKNOWN


def solve_in(target: GroupLabel, images: Sequence, h) -> W.Word | None:
    """A word w with w(images) = h in ``target``, or None if h is not in <images>.

    Only decidable targets (abelian, Heisenberg) are supported.
    """
    if isinstance(target, Abelian):
        cols = list(images) + list(target.group.relation_basis)
        x = intmat.solve(cols, h)
        if x is None:
            return None
        return W.reduce(a for i, k in enumerate(x[:len(images)]) for a in W.gen(i, k))
    if isinstance(target, Heis):
        word = pc.express(list(images), h)
        if word is None:
            return None
        return W.reduce(a for i, k in word for a in W.gen(i, k))
    raise TypeError(f"cannot solve equations in a {target.kind} label")


def conjugate_tuples(target: GroupLabel, gs: Sequence, hs: Sequence) -> TriState:
    """Is there one element k of target with k g_i k^-1 = h_i for every i?"""
    if isinstance(target, Abelian):
        return TriState.of(all(target.group.is_zero(tuple(a - b for a, b in zip(g, h)))
                               for g, h in zip(gs, hs)))
    if isinstance(target, Heis):
        return TriState.of(pc.conjugator(gs, hs) is not None)
    if all(W.reduce(g) == W.reduce(h) for g, h in zip(gs, hs)):
        return TriState.YES
    if isinstance(target, Free):
        if len(gs) == 1:
            return TriState.of(W.are_conjugate(gs[0], hs[0]))
        return TriState.UNKNOWN
    return TriState.UNKNOWN


def label_key(label: GroupLabel):
    """An isomorphism invariant of the label, or None when nothing is known."""
    if isinstance(label, Abelian):
        return ("ab", label.group.free_rank, label.group.invariant_factors())
    if isinstance(label, Heis):
        if label.ngens == 1:
            return ("ab", label.desc.hirsch_length, ())
        n = label.desc.n if label.desc.kind is pc.SubgroupKind.H_N else 1
        return ("heis", pc.hn_center_derived_index(n))
    if isinstance(label, Free):
        if label.rank <= 1:
            return ("ab", label.rank, ())
        return ("free", label.rank)
    return None


def possibly_isomorphic(l1: GroupLabel, l2: GroupLabel) -> bool:
    """False only when the two labels are certainly non-isomorphic."""
    k1, k2 = label_key(l1), label_key(l2)
    if k1 is not None and k2 is not None:
        return k1 == k2
    for a, b in ((l1, l2), (l2, l1)):
        if isinstance(a, Opaque):
            kb = label_key(b)
            if kb is not None and kb[0] == "ab" and is_abelian(a) is False:
                return False
            if is_finite(b) and "infinite" in a.properties:
                return False
    ab1, ab2 = label_abelianization(l1), label_abelianization(l2)
    if ab1 is not None and ab2 is not None and ab1 != ab2:
        return False
    return True
