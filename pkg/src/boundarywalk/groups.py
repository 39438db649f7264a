"""Coordinate model of the product of a free group with a lattice.

Elements pair a freely reduced word in generators 1..n (negative for
inverses) with an integer translation vector.  The generator-twisting
automorphism, the flat maps sending the tree direction to a diagonal, and
the correspondence between geodesic words and half-plane walks all act on
these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError


def free_reduce(letters) -> tuple[int, ...]:
    """Freely reduce a word given as signed generator indices."""
    out: list[int] = []
    for let in letters:
        l = int(let)
        if l == 0:
            raise GeometryError("generator index 0 is not valid")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word plus an integer translation vector."""

    letters: tuple[int, ...]
    translation: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.translation)
        for let in self.letters:
            if let == 0 or abs(let) > n:
                raise GeometryError(f"letter {let} outside generators 1..{n}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise GeometryError("word is not freely reduced")
        object.__setattr__(self, "letters", tuple(int(l) for l in self.letters))
        object.__setattr__(self, "translation", tuple(int(t) for t in self.translation))

    @property
    def n(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, n: int) -> "GroupWord":
        return cls((), (0,) * n)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.n != other.n:
            raise GeometryError("rank mismatch")
        letters = free_reduce(self.letters + other.letters)
        translation = tuple(a + b for a, b in zip(self.translation, other.translation))
        return GroupWord(letters, translation)

    def inverse(self) -> "GroupWord":
        letters = tuple(-l for l in reversed(self.letters))
        return GroupWord(letters, tuple(-t for t in self.translation))


def _letter_offsets(letters, n: int) -> list[int]:
    off = [0] * n
    for let in letters:
        off[abs(let) - 1] += 1 if let > 0 else -1
    return off


def phi(g: GroupWord) -> GroupWord:
    """The automorphism fixing the lattice and twisting generator i by e_i."""
    off = _letter_offsets(g.letters, g.n)
    return GroupWord(g.letters, tuple(t + o for t, o in zip(g.translation, off)))


def phi_inverse(g: GroupWord) -> GroupWord:
    off = _letter_offsets(g.letters, g.n)
    return GroupWord(g.letters, tuple(t - o for t, o in zip(g.translation, off)))


def f_on_flat(i: int, p) -> np.ndarray:
    """The flat map for generator i: adds the 0th coordinate to coordinate i.

    Coordinates are (t, a_1, ..., a_n) with the tree direction first; the
    map fixes e_1..e_n and sends e_0 to e_0 + e_i.
    """
    arr = np.array(p, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise GeometryError("expected an (n+1)-vector")
    if not 1 <= i <= arr.size - 1:
        raise GeometryError(f"flat index {i} outside 1..{arr.size - 1}")
    arr[i] += arr[0]
    return arr


def walk_from_word(word, n: int | None = None) -> np.ndarray:
    """Half-plane positions of the walk a geodesic word maps to.

    Letter +i steps by e_0 + e_i, letter -i by its reflection e_0 - e_i;
    after k steps the first coordinate is exactly k.  The word must be
    freely reduced.
    """
    letters = [int(l) for l in word]
    for a, b in zip(letters, letters[1:]):
        if a == -b:
            raise GeometryError("word is not freely reduced, hence not a geodesic")
    if n is None:
        n = max((abs(l) for l in letters), default=1)
    for l in letters:
        if l == 0 or abs(l) > n:
            raise GeometryError(f"letter {l} outside generators 1..{n}")
    out = np.zeros((len(letters) + 1, n + 1), dtype=np.int64)
    for k, l in enumerate(letters):
        out[k + 1] = out[k]
        out[k + 1, 0] += 1
        out[k + 1, abs(l)] += 1 if l > 0 else -1
    return out


def word_from_indices(indices) -> tuple[int, ...]:
    """The positive word visiting the given walk directions, in order."""
    out = []
    for i in indices:
        v = int(i)
        if v < 1:
            raise GeometryError(f"walk index {v} is not a positive generator")
        out.append(v)
    return tuple(out)


def format_word(indices) -> str:
    """Serialize signed generator indices as whitespace-separated integers."""
    return " ".join(str(int(i)) for i in indices)


def parse_word(text: str) -> list[int]:
    """Parse whitespace-separated signed generator indices."""
    out = []
    for tok in text.split():
        try:
            out.append(int(tok))
        except ValueError as exc:
            raise GeometryError(f"bad generator token {tok!r}") from exc
    return out
