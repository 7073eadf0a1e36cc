"""Arithmetic in the discrete Heisenberg group H = <a, b, c | [a,b] = c, c central>.

Coordinates: ``HeisElement(x, y, z)`` is a^x b^y c^z, i.e. the unitriangular
matrix [[1, x, z], [0, 1, y], [0, 0, 1]].  Multiplication is

    (x1, y1, z1)(x2, y2, z2) = (x1 + x2, y1 + y2, z1 + z2 + x1*y2)

and commutators are g h g^-1 h^-1, so [a, b] = c.

The semidirect-product description Z^2 x| Z = <A, B, t | AB = BA, tAt^-1 = AB,
tBt^-1 = B> is realised inside the same coordinates by

    t = a = (1, 0, 0),   A = b = (0, 1, 0),   B = c = (0, 0, 1).

Conjugation by a sends (x, y, z) to (x, y, z + y), so t A t^-1 = A B exactly
and t^n A t^-n = A B^n, with no central correction term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import intmat


@dataclass(frozen=True, order=True)
class HeisElement:
    x: int = 0
    y: int = 0
    z: int = 0

    def __mul__(self, other: HeisElement) -> HeisElement:
        return HeisElement(self.x + other.x, self.y + other.y, self.z + other.z + self.x * other.y)

    def inverse(self) -> HeisElement:
        return HeisElement(-self.x, -self.y, -self.z + self.x * self.y)

    def __pow__(self, k: int) -> HeisElement:
        # closed form: (kx, ky, kz + x*y*k(k-1)/2)
        return HeisElement(k * self.x, k * self.y, k * self.z + self.x * self.y * (k * (k - 1) // 2))

    def conjugate_by(self, g: HeisElement) -> HeisElement:
        """g * self * g^-1."""
        return HeisElement(self.x, self.y, self.z + g.x * self.y - g.y * self.x)

    @property
    def projection(self) -> tuple[int, int]:
        return (self.x, self.y)

    def is_identity(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def is_central(self) -> bool:
        return self.x == 0 and self.y == 0

    def __str__(self) -> str:
        return f"[{self.x},{self.y},{self.z}]"


IDENTITY = HeisElement()
A = HeisElement(1, 0, 0)
B = HeisElement(0, 1, 0)
C = HeisElement(0, 0, 1)

# names used by the semidirect-product presentation
SDP_T = A
SDP_A = B
SDP_B = C


def heis_mul(g: HeisElement, h: HeisElement) -> HeisElement:
    return g * h


def heis_inv(g: HeisElement) -> HeisElement:
    return g.inverse()


def heis_comm(g: HeisElement, h: HeisElement) -> HeisElement:
    """g h g^-1 h^-1; always central, equal to c^(g.x*h.y - g.y*h.x)."""
    return g * h * g.inverse() * h.inverse()


def conjugate_by_t(g: HeisElement, n: int = 1) -> HeisElement:
    """t^n g t^-n for the stable letter t of the semidirect product."""
    return g.conjugate_by(SDP_T ** n)


def are_conjugate(g: HeisElement, h: HeisElement) -> bool:
    if g.projection != h.projection:
        return False
    d = math.gcd(g.x, g.y)
    return (h.z - g.z) % d == 0 if d else g.z == h.z


def conjugator(gs: Sequence[HeisElement], hs: Sequence[HeisElement]) -> HeisElement | None:
    """An element k with k g_i k^-1 = h_i for every i, or None."""
    if len(gs) != len(hs):
        raise ValueError("length mismatch")
    if any(g.projection != h.projection for g, h in zip(gs, hs)):
        return None
    # k = (p, q, *) shifts z by p*y - q*x
    cols = [tuple(g.y for g in gs), tuple(-g.x for g in gs)]
    sol = intmat.solve(cols, tuple(h.z - g.z for g, h in zip(gs, hs)))
    if sol is None:
        return None
    return HeisElement(sol[0], sol[1], 0)


class SubgroupKind(enum.Enum):
    FULL = "full"
    H_N = "hn"
    CENTER = "center"
    DERIVED_OF_H_N = "derived"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class HeisSubgroupDesc:
    """A named subgroup of H.

    ``H_N(n)`` is <a^n, b^n, c>; ``DERIVED_OF_H_N(n)`` is its derived subgroup
    <c^(n^2)>; ``CYCLIC`` is generated by ``generator``.
    """

    kind: SubgroupKind
    n: int = 1
    generator: HeisElement | None = None

    def __post_init__(self):
        if self.kind in (SubgroupKind.H_N, SubgroupKind.DERIVED_OF_H_N) and self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.kind is SubgroupKind.CYCLIC and self.generator is None:
            raise ValueError("cyclic subgroup needs a generator")
        if self.kind is SubgroupKind.H_N and self.n == 1:
            object.__setattr__(self, "kind", SubgroupKind.FULL)

    @classmethod
    def full(cls) -> HeisSubgroupDesc:
        return cls(SubgroupKind.FULL)

    @classmethod
    def hn(cls, n: int) -> HeisSubgroupDesc:
        return cls(SubgroupKind.H_N, n)

    @classmethod
    def center(cls) -> HeisSubgroupDesc:
        return cls(SubgroupKind.CENTER)

    @classmethod
    def derived(cls, n: int) -> HeisSubgroupDesc:
        return cls(SubgroupKind.DERIVED_OF_H_N, n)

    @classmethod
    def cyclic(cls, g: HeisElement) -> HeisSubgroupDesc:
        return cls(SubgroupKind.CYCLIC, 1, g)

    def generators(self) -> tuple[HeisElement, ...]:
        k = self.kind
        if k is SubgroupKind.FULL:
            return (A, B, C)
        if k is SubgroupKind.H_N:
            return (A ** self.n, B ** self.n, C)
        if k is SubgroupKind.CENTER:
            return (C,)
        if k is SubgroupKind.DERIVED_OF_H_N:
            return (C ** (self.n * self.n),)
        return (self.generator,)

    def contains(self, g: HeisElement) -> bool:
        k = self.kind
        if k is SubgroupKind.FULL:
            return True
        if k is SubgroupKind.H_N:
            return hn_membership(self.n, g)
        if k is SubgroupKind.CENTER:
            return g.is_central()
        if k is SubgroupKind.DERIVED_OF_H_N:
            return g.is_central() and g.z % (self.n * self.n) == 0
        return cyclic_exponent(self.generator, g) is not None

    @property
    def hirsch_length(self) -> int:
        if self.kind in (SubgroupKind.FULL, SubgroupKind.H_N):
            return 3
        if self.kind is SubgroupKind.CYCLIC and self.generator.is_identity():
            return 0
        return 1

    def __str__(self) -> str:
        k = self.kind
        if k is SubgroupKind.FULL:
            return "H"
        if k is SubgroupKind.H_N:
            return f"H_{self.n}"
        if k is SubgroupKind.CENTER:
            return "Z(H)"
        if k is SubgroupKind.DERIVED_OF_H_N:
            return f"[H_{self.n},H_{self.n}]"
        return f"<{self.generator}>"


def hn_membership(n: int, g: HeisElement) -> bool:
    """g in H_n = <a^n, b^n, c>, i.e. n divides both x and y."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return g.x % n == 0 and g.y % n == 0


def hn_center_derived_index(n: int) -> int:
    """[Z(H_n) : [H_n, H_n]] = [<c> : <c^(n^2)>] = n^2."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return n * n


def cyclic_exponent(g: HeisElement, h: HeisElement) -> int | None:
    """k with g^k = h, or None."""
    if g.is_identity():
        return 0 if h.is_identity() else None
    if g.x:
        k, r = divmod(h.x, g.x)
    elif g.y:
        k, r = divmod(h.y, g.y)
    else:
        k, r = divmod(h.z, g.z)
    if r:
        return None
    return k if g ** k == h else None


# --- finitely generated subgroups given by generators -----------------------

Word = tuple[tuple[int, int], ...]  # (generator index, exponent) pairs


def evaluate(gens: Sequence[HeisElement], word: Iterable[tuple[int, int]]) -> HeisElement:
    out = IDENTITY
    for i, e in word:
        out = out * gens[i] ** e
    return out


def _commutator_pairs(gens: Sequence[HeisElement]) -> list[tuple[int, int, int]]:
    """(z, i, j) with [g_i, g_j] = c^z != 1."""
    out = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            z = heis_comm(gens[i], gens[j]).z
            if z:
                out.append((z, i, j))
    return out


def _commutator_word(pairs, target: int) -> Word | None:
    """A word for c^target using only commutators; [g_i^m, g_j] = [g_i, g_j]^m
    keeps it short whatever the exponents."""
    if target == 0:
        return ()
    if not pairs:
        return None
    coeffs = intmat.solve_1d([z for z, _, _ in pairs], target)
    if coeffs is None:
        return None
    word: Word = ()
    for m, (_, i, j) in zip(coeffs, pairs):
        if m:
            word += ((i, m), (j, 1), (i, -m), (j, -1))
    return word


def _central_generators(gens: Sequence[HeisElement]) -> list[tuple[int, Word]]:
    """Generators c^z of <gens> ∩ Z(H), each with a word producing it."""
    out: list[tuple[int, Word]] = [(z, ((i, 1), (j, 1), (i, -1), (j, -1)))
                                   for z, i, j in _commutator_pairs(gens)]
    projs = [g.projection for g in gens]
    for k in intmat.kernel(projs, 2):
        word = tuple((i, e) for i, e in enumerate(k) if e)
        z = evaluate(gens, word).z
        if z:
            out.append((z, word))
    return out


def express(gens: Sequence[HeisElement], h: HeisElement) -> Word | None:
    """A word in ``gens`` evaluating to ``h``, or None if h is not in <gens>.

    The word has one syllable per generator plus a bounded number of
    commutator blocks, so its length does not grow with the exponents.
    """
    if not gens:
        return () if h.is_identity() else None
    projs = [g.projection for g in gens]
    e = intmat.solve(projs, h.projection)
    if e is None:
        return None
    kernel = intmat.kernel(projs, 2)
    pairs = _commutator_pairs(gens)
    d_comm = 0
    for z, _, _ in pairs:
        d_comm = math.gcd(d_comm, z)
    # Words with equal exponent sums differ by an element of the derived
    # subgroup <c^d_comm>.  So moving e along a kernel vector k shifts z by
    # z(prod g_i^k_i) modulo d_comm, and commutators make up the rest.
    ts = [0] * len(kernel)
    if kernel:
        kz = [evaluate(gens, tuple(enumerate(k))).z for k in kernel]
        need = h.z - evaluate(gens, tuple(enumerate(e))).z
        coeffs = intmat.solve_1d(kz + [d_comm], need)
        if coeffs is None:
            return None
        ts = coeffs[:len(kernel)]
    exps = list(e)
    for t, k in zip(ts, kernel):
        exps = [a + t * b for a, b in zip(exps, k)]
    word = tuple((i, x) for i, x in enumerate(exps) if x)
    rest = _commutator_word(pairs, h.z - evaluate(gens, word).z)
    return None if rest is None else word + rest


def subgroup_contains(gens: Sequence[HeisElement], h: HeisElement) -> bool:
    return express(gens, h) is not None


def central_index(gens: Sequence[HeisElement]) -> int:
    """d >= 0 with <gens> ∩ Z(H) = <c^d>."""
    d = 0
    for z, _ in _central_generators(gens):
        d = math.gcd(d, z)
    return d
