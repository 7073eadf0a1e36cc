"""Exact integer matrix routines on Python ints.

Matrices are handled column-wise: a lattice in Z^m is given by a sequence of
column vectors (tuples of ints of length m).

Column Hermite normal form convention used throughout the package:

* columns are in echelon form: the pivot (first nonzero entry, scanning rows
  top to bottom) of column j lies strictly below the pivot of column j-1;
* every pivot is positive;
* in the pivot row of column j, every *earlier* column k < j has its entry
  reduced into ``0 <= entry < pivot_j``.  Later columns are zero there.

With these rules the basis of a lattice is unique.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Columns = tuple[Vector, ...]


def _axpy(a: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
    return [yi + a * xi for xi, yi in zip(x, y)]


def _check_dims(cols: Iterable[Sequence[int]], m: int) -> list[list[int]]:
    out = []
    for c in cols:
        if len(c) != m:
            raise ValueError(f"column of length {len(c)} in a rank-{m} ambient")
        out.append([int(v) for v in c])
    return out


def pivot_row(col: Sequence[int]) -> int:
    for i, v in enumerate(col):
        if v:
            return i
    return -1


def hnf(cols: Iterable[Sequence[int]], m: int) -> Columns:
    """Column HNF basis of the lattice spanned by ``cols`` inside Z^m."""
    work = [c for c in _check_dims(cols, m) if any(c)]
    basis: list[list[int]] = []
    for row in range(m):
        active = [c for c in work if c[row]]
        if not active:
            continue
        rest = [c for c in work if not c[row]]
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[row]))
            head = active[0]
            nxt = [head]
            for c in active[1:]:
                q = c[row] // head[row]
                c = _axpy(-q, head, c)
                if c[row]:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            active = nxt
        piv = active[0]
        if piv[row] < 0:
            piv = [-v for v in piv]
        basis.append(piv)
        work = rest
    # reduce earlier columns modulo each pivot, in pivot order
    for j, col in enumerate(basis):
        p = pivot_row(col)
        for k in range(j):
            q = basis[k][p] // col[p]
            if q:
                basis[k] = _axpy(-q, col, basis[k])
    return tuple(tuple(c) for c in basis)


def is_hnf(cols: Columns) -> bool:
    if not cols:
        return True
    m = len(cols[0])
    return hnf(cols, m) == tuple(tuple(c) for c in cols)


def augmented_hnf(cols: Sequence[Sequence[int]], top: int) -> tuple[list[tuple[Vector, Vector]], list[Vector]]:
    """Split the lattice {(A x, x)} into an image part and a kernel part.

    ``cols`` are the columns of A (each of length ``top``).  Returns
    ``(image, kernel)`` where ``image`` is a list of pairs ``(A x, x)`` whose
    first components form a basis of the image lattice (in echelon form) and
    ``kernel`` is a basis of the integer kernel of A.
    """
    s = len(cols)
    aug = []
    for i, c in enumerate(cols):
        if len(c) != top:
            raise ValueError("inconsistent column lengths")
        e = [0] * s
        e[i] = 1
        aug.append(list(c) + e)
    basis = hnf(aug, top + s)
    image, kernel = [], []
    for b in basis:
        if pivot_row(b) < top:
            image.append((b[:top], b[top:]))
        else:
            kernel.append(b[top:])
    return image, kernel


def kernel(cols: Sequence[Sequence[int]], rows: int) -> list[Vector]:
    """Basis of {x in Z^s : sum x_i cols[i] = 0}."""
    if not cols:
        return []
    return augmented_hnf(cols, rows)[1]


def left_kernel(cols: Sequence[Sequence[int]], rows: int) -> list[Vector]:
    """Basis of {y in Z^rows : y . c = 0 for every column c}."""
    if not cols:
        return [tuple(int(i == j) for j in range(rows)) for i in range(rows)]
    # transpose: rows of the original become columns
    transposed = [tuple(c[i] for c in cols) for i in range(rows)]
    return kernel(transposed, len(cols))


def solve(cols: Sequence[Sequence[int]], target: Sequence[int]) -> Vector | None:
    """Integer x with sum x_i cols[i] = target, or None if none exists."""
    m = len(target)
    if not cols:
        return () if not any(target) else None
    image, _ = augmented_hnf(cols, m)
    rem = list(target)
    x = [0] * len(cols)
    for img, pre in image:
        p = pivot_row(img)
        # zero rows above this pivot must already be cleared
        if any(rem[:p]):
            return None
        q, r = divmod(rem[p], img[p])
        if r:
            return None
        rem = _axpy(-q, img, rem)
        x = _axpy(q, pre, x)
    if any(rem):
        return None
    return tuple(x)


def rank(cols: Iterable[Sequence[int]], m: int) -> int:
    return len(hnf(cols, m))


def mat_vec(cols: Sequence[Sequence[int]], x: Sequence[int], m: int) -> Vector:
    out = [0] * m
    for xi, c in zip(x, cols):
        if xi:
            out = _axpy(xi, c, out)
    return tuple(out)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith normal form.

    ``rows`` is a list of row vectors, each of length ``ncols``.
    """
    a = [list(r) for r in rows if any(r)]
    for r in a:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    diag: list[int] = []
    while a and any(any(r) for r in a):
        # bring the smallest nonzero entry to (0, 0)
        best = min(((abs(v), i, j) for i, r in enumerate(a) for j, v in enumerate(r) if v))
        _, i0, j0 = best
        a[0], a[i0] = a[i0], a[0]
        for r in a:
            r[0], r[j0] = r[j0], r[0]
        while True:
            p = a[0][0]
            dirty = False
            for i in range(1, len(a)):
                if a[i][0]:
                    q = a[i][0] // p
                    a[i] = _axpy(-q, a[0], a[i])
                    if a[i][0]:
                        dirty = True
            for j in range(1, len(a[0])):
                if a[0][j]:
                    q = a[0][j] // p
                    for r in a:
                        r[j] -= q * r[0]
                    if a[0][j]:
                        dirty = True
            if dirty:
                best = min(((abs(v), i, j) for i, r in enumerate(a) for j, v in enumerate(r)
                            if v and (i == 0 or j == 0)))
                _, i0, j0 = best
                a[0], a[i0] = a[i0], a[0]
                for r in a:
                    r[0], r[j0] = r[j0], r[0]
                continue
            # pivot must divide everything else
            bad = next(((i, j) for i in range(1, len(a)) for j in range(1, len(a[0]))
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[0] = _axpy(1, a[bad[0]], a[0])
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:]]
        a = [r for r in a if any(r)]
    # the loop above already yields a divisibility chain; normalise defensively
    out: list[int] = []
    for d in diag:
        out.append(d)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            g = gcd(out[i], out[j])
            out[i], out[j] = g, out[i] * out[j] // g if g else 0
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def solve_1d(coeffs: Sequence[int], target: int) -> Vector | None:
    """Integers m_i with sum m_i * coeffs[i] = target."""
    g, acc = 0, []
    # accumulate Bezout coefficients left to right
    for c in coeffs:
        g2, s, t = xgcd(g, c)
        acc = [s * v for v in acc] + [t]
        g = g2
    if g == 0:
        return tuple(0 for _ in coeffs) if target == 0 else None
    q, r = divmod(target, g)
    if r:
        return None
    return tuple(q * v for v in acc)
