"""Lexicographic order on k-subsets of [n] with 1-based rank and unrank."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from .errors import InvalidInputError


def binom(m: int, j: int) -> int:
    """Binomial coefficient, zero outside ``0 <= j <= m``."""
    if j < 0 or m < 0 or j > m:
        return 0
    return comb(m, j)


@dataclass(frozen=True, order=False)
class KSubset:
    """Sorted k-subset of ``{1, ..., n}``."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise InvalidInputError(f"elements not strictly increasing: {elems}")
        if elems and (elems[0] < 1 or elems[-1] > self.n):
            raise InvalidInputError(f"elements {elems} outside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "KSubset":
        return cls(n, tuple(sorted(elements)))

    @property
    def k(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __lt__(self, other: "KSubset") -> bool:
        return lex_less(self, other)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _same_shape(a: KSubset, b: KSubset) -> None:
    if a.n != b.n or a.k != b.k:
        raise InvalidInputError(f"subsets over different (n, k): ({a.n},{a.k}) vs ({b.n},{b.k})")


def lex_less(a: KSubset, b: KSubset) -> bool:
    """True iff the least element of the symmetric difference lies in ``a``."""
    _same_shape(a, b)
    diff = set(a.elements) ^ set(b.elements)
    return bool(diff) and min(diff) in a.elements


def rank(s: KSubset) -> int:
    """
    1-based position of ``s`` among the k-subsets of [n] in lex order.

    ``1 + sum_i sum_{t_{i-1} < j < t_i} C(n - j, k - i)`` with ``t_0 = 0``.
    """
    n, k = s.n, s.k
    r = 1
    prev = 0
    for i, t in enumerate(s.elements, start=1):
        for j in range(prev + 1, t):
            r += binom(n - j, k - i)
        prev = t
    return r


def unrank(n: int, k: int, r: int) -> KSubset:
    """Inverse of :func:`rank`: the k-subset of [n] at 1-based position ``r``."""
    if not 0 <= k <= n:
        raise InvalidInputError(f"need 0 <= k <= n, got n={n}, k={k}")
    total = binom(n, k)
    if not 1 <= r <= total:
        raise InvalidInputError(f"rank {r} outside [1, {total}]")
    r -= 1
    out = []
    x = 1
    for i in range(1, k + 1):
        # skip every subset whose i-th element is x: there are C(n - x, k - i)
        while r >= binom(n - x, k - i):
            r -= binom(n - x, k - i)
            x += 1
        out.append(x)
        x += 1
    return KSubset(n, tuple(out))


def enumerate_subsets(n: int, k: int) -> list[KSubset]:
    """All k-subsets of [n] in ascending lex order."""
    if not 0 <= k <= n:
        raise InvalidInputError(f"need 0 <= k <= n, got n={n}, k={k}")
    return [KSubset(n, c) for c in combinations(range(1, n + 1), k)]


def delete_common(a: KSubset, b: KSubset, x: int) -> tuple[KSubset, KSubset]:
    if x not in a or x not in b:
        raise InvalidInputError(f"{x} is not common to {a} and {b}")
    return (KSubset(a.n, tuple(e for e in a if e != x)),
            KSubset(b.n, tuple(e for e in b if e != x)))
