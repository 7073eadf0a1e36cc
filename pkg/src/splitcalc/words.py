"""Free group words.

A word is a tuple of nonzero ints: letter ``i + 1`` is generator ``i`` and
``-(i + 1)`` its inverse.  Text form is caret-exponent, e.g. ``x^2 y^-1``;
the empty word prints as ``1``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

Word = tuple[int, ...]

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_.]*)(\^(-?\d+)?)?")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.reason = message
        self.column = column


def reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(word))


def mul(*words: Sequence[int]) -> Word:
    return reduce(a for w in words for a in w)


def power(word: Sequence[int], k: int) -> Word:
    if k >= 0:
        return reduce(tuple(word) * k)
    return reduce(inverse(word) * (-k))


def gen(i: int, k: int = 1) -> Word:
    return (i + 1,) * k if k >= 0 else (-(i + 1),) * (-k)


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """u v u^-1 v^-1."""
    return mul(u, v, inverse(u), inverse(v))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def are_conjugate(u: Sequence[int], v: Sequence[int]) -> bool:
    """Conjugacy in a free group: cyclic reductions agree up to rotation."""
    a, b = cyclic_reduce(u), cyclic_reduce(v)
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[k:k + len(b)] == b for k in range(len(a)))


def exponent_sums(word: Iterable[int], n: int) -> list[int]:
    row = [0] * n
    for a in word:
        row[abs(a) - 1] += 1 if a > 0 else -1
    return row


def relabel(word: Sequence[int], mapping: Sequence[int]) -> Word:
    """Rename generator i to generator mapping[i]."""
    return tuple((mapping[abs(a) - 1] + 1) * (1 if a > 0 else -1) for a in word)


def substitute(word: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Apply the homomorphism sending generator i to ``images[i]``."""
    out: list[int] = []
    for a in word:
        img = images[abs(a) - 1]
        out.extend(img if a > 0 else inverse(img))
    return reduce(out)


def syllables(word: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length form: [(generator index, exponent), ...]."""
    out: list[tuple[int, int]] = []
    for a in word:
        i, e = abs(a) - 1, (1 if a > 0 else -1)
        if out and out[-1][0] == i:
            out[-1] = (i, out[-1][1] + e)
        else:
            out.append((i, e))
    return [s for s in out if s[1]]


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for i, e in syllables(word):
        parts.append(names[i] if e == 1 else f"{names[i]}^{e}")
    return " ".join(parts) if parts else "1"


def parse_word(text: str, names: Sequence[str]) -> Word:
    lookup = {n: i for i, n in enumerate(names)}
    s = text.strip()
    if s == "1" or s == "":
        return ()
    out: list[int] = []
    pos = 0
    base = len(text) - len(text.lstrip())
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if not m or m.start(1) != pos and not s[pos:m.start(1)].isspace():
            raise WordSyntaxError(f"unexpected character {s[pos]!r}", base + pos + 1)
        name = m.group(1)
        if name not in lookup:
            raise WordSyntaxError(f"unknown generator {name!r}", base + m.start(1) + 1)
        if m.group(2) is not None and m.group(3) is None:
            raise WordSyntaxError("malformed exponent", base + m.start(2) + 1)
        k = int(m.group(3)) if m.group(3) is not None else 1
        out.extend(gen(lookup[name], k))
        pos = m.end()
        if pos < len(s) and not s[pos].isspace():
            raise WordSyntaxError(f"unexpected character {s[pos]!r}", base + pos + 1)
    return reduce(out)
