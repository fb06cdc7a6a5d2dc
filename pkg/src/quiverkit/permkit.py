"""Permutations of ``{1, ..., m}`` in one-line notation.

A permutation is stored with its trailing fixed points removed, so that
``S_m`` sits inside ``S_{m+1}`` without any explicit embedding:

>>> Permutation([2, 1, 3]) == Permutation([2, 1])
True
>>> Permutation([3, 1, 5, 2, 4]).length()
4
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "length",
    "multiply",
    "bruhat_leq",
    "shift",
    "last_descent",
    "is_partial_perm",
    "simple",
    "longest",
    "all_perms",
    "reduced_word",
]


def _trim(values: Sequence[int]) -> tuple[int, ...]:
    values = list(values)
    while values and values[-1] == len(values):
        values.pop()
    return tuple(values)


@dataclass(frozen=True, init=False)
class Permutation:
    """A permutation of ``1..m``; ``w(i)`` evaluates, ``w * v`` composes."""

    oneline: tuple[int, ...]

    def __init__(self, values: Iterable[int] = ()):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"not a permutation of 1..{len(values)}: {values}")
        object.__setattr__(self, "oneline", _trim(values))

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    @property
    def size(self) -> int:
        """Smallest m with ``self`` in ``S_m`` (0 for the identity)."""
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        if 1 <= i <= len(self.oneline):
            return self.oneline[i - 1]
        return i

    def __len__(self) -> int:
        return len(self.oneline)

    def __iter__(self) -> Iterator[int]:
        return iter(self.oneline)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return multiply(self, other)

    def __lt__(self, other: "Permutation") -> bool:
        return self.oneline < other.oneline

    def __repr__(self) -> str:
        return f"Permutation({list(self.oneline)})"

    def __str__(self) -> str:
        if not self.oneline:
            return "id"
        sep = "" if len(self.oneline) < 10 else ","
        return sep.join(str(v) for v in self.oneline)

    def padded(self, m: int) -> tuple[int, ...]:
        """One-line notation as an element of ``S_m``."""
        if m < self.size:
            raise ValueError(f"{self} does not lie in S_{m}")
        return self.oneline + tuple(range(self.size + 1, m + 1))

    @cached_property
    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.oneline, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def length(self) -> int:
        return length(self)

    def descents(self) -> list[int]:
        w = self.oneline
        return [i for i in range(1, len(w)) if w[i - 1] > w[i]]

    def has_descent(self, i: int) -> bool:
        """True iff ``w(i) > w(i+1)``."""
        return self(i) > self(i + 1)

    def to_json(self) -> list[int]:
        return list(self.oneline)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(data)


def length(w: Permutation) -> int:
    """Number of inversions ``i < j`` with ``w(i) > w(j)``."""
    v = w.oneline
    return sum(1 for i in range(len(v)) for j in range(i + 1, len(v)) if v[i] > v[j])


def multiply(u: Permutation, v: Permutation) -> Permutation:
    """The composite ``u o v``, i.e. ``i -> u(v(i))``."""
    m = max(u.size, v.size)
    return Permutation(u(v(i)) for i in range(1, m + 1))


def simple(j: int) -> Permutation:
    """The adjacent transposition ``s_j`` swapping ``j`` and ``j+1``."""
    if j < 1:
        raise ValueError("simple transpositions are indexed from 1")
    values = list(range(1, j + 2))
    values[j - 1], values[j] = values[j], values[j - 1]
    return Permutation(values)


def longest(m: int) -> Permutation:
    """The longest element ``w_0`` of ``S_m``."""
    return Permutation(range(m, 0, -1))


def all_perms(m: int) -> list[Permutation]:
    return [Permutation(p) for p in permutations(range(1, m + 1))]


def shift(w: Permutation, k: int) -> Permutation:
    """``1^k x w``: fixes ``1..k`` and sends ``k+j`` to ``k+w(j)``."""
    if k < 0:
        raise ValueError("shift amount must be non-negative")
    return Permutation(list(range(1, k + 1)) + [k + v for v in w.oneline])


def last_descent(w: Permutation) -> int:
    """Largest ``i`` with ``w(i) > w(i+1)``, or 0 for the identity."""
    d = w.descents()
    return d[-1] if d else 0


def is_partial_perm(w: Permutation, rows: int, cols: int) -> bool:
    """True iff ``w`` encodes a partial permutation from ``cols`` to ``rows`` elements."""
    return last_descent(w) <= cols and last_descent(w.inverse) <= rows


def bruhat_leq(w: Permutation, u: Permutation) -> bool:
    """Bruhat comparison ``w <= u`` via the rank-matrix criterion.

    ``w <= u`` iff for all ``i, j``: ``#{k <= i : w(k) >= j}`` is at most the
    same count for ``u``.
    """
    m = max(w.size, u.size)
    a, b = w.padded(m), u.padded(m)
    for j in range(2, m + 1):
        cw = cu = 0
        for i in range(m):
            cw += a[i] >= j
            cu += b[i] >= j
            if cw > cu:
                return False
    return True


def reduced_word(w: Permutation) -> list[int]:
    """A reduced word ``[j_1, ..., j_l]`` with ``w = s_{j_1} ... s_{j_l}``."""
    word: list[int] = []
    v = list(w.oneline)
    # bubble sort from the right: v = w s_{a_1} s_{a_2} ... ends at identity
    while True:
        for i in range(len(v) - 1):
            if v[i] > v[i + 1]:
                v[i], v[i + 1] = v[i + 1], v[i]
                word.append(i + 1)
                break
        else:
            break
    return word[::-1]
