"""
Codewords, constant-weight codes and their verification.

Coordinates are 1-based in everything a user sees (supports, reports, files).
Symbols are the integers ``0 .. q-1``.
"""

from __future__ import annotations

import io
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "Codeword",
    "ConstantWeightCode",
    "VerificationReport",
    "hamming_distance",
    "support_intersection_size",
    "minimum_distance",
    "close_pairs",
    "verify_code",
    "read_code",
    "write_code",
    "format_code",
    "parse_code",
]


@dataclass(frozen=True)
class Codeword:
    """A vector of length n over ``{0, ..., q-1}``."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if self.q < 2:
            raise InvalidInputError(f"alphabet size must be >= 2, got {self.q}")
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise InvalidInputError(f"symbol {s} outside [0, {self.q - 1}]")

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    @cached_property
    def support(self) -> frozenset[int]:
        """1-based coordinates holding a nonzero symbol."""
        return frozenset(i for i, s in enumerate(self.symbols, start=1) if s)

    @property
    def weight(self) -> int:
        return len(self.support)

    def value_at(self, i: int) -> int:
        """Symbol at 1-based coordinate ``i``."""
        return self.symbols[i - 1]


def _check_same_length(u: Codeword, v: Codeword) -> None:
    if len(u) != len(v):
        raise InvalidInputError(f"length mismatch: {len(u)} vs {len(v)}")


def hamming_distance(u: Codeword, v: Codeword) -> int:
    """Number of coordinates where ``u`` and ``v`` differ."""
    _check_same_length(u, v)
    return sum(a != b for a, b in zip(u.symbols, v.symbols))


def support_intersection_size(u: Codeword, v: Codeword) -> int:
    _check_same_length(u, v)
    return len(u.support & v.support)


@dataclass(frozen=True)
class ConstantWeightCode:
    """
    A set of codewords with declared parameters ``(n, q, w, d)``.

    The declared parameters are claims; :func:`verify_code` checks them.
    ``d`` may be ``None`` when no distance is claimed (e.g. a single word).
    """

    n: int
    q: int
    w: int
    d: int | None
    words: tuple[Codeword, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], n: int, q: int, w: int = 3,
                  d: int | None = 4) -> "ConstantWeightCode":
        return cls(n, q, w, d, tuple(Codeword(tuple(r), q) for r in rows))

    def as_array(self) -> np.ndarray:
        """Codewords stacked into an ``(len, n)`` integer array."""
        if not self.words:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array([u.symbols for u in self.words], dtype=np.int64)

    def with_d(self, d: int | None) -> "ConstantWeightCode":
        return ConstantWeightCode(self.n, self.q, self.w, d, self.words)


# ---------------------------------------------------------------------------
# pairwise distance machinery
# ---------------------------------------------------------------------------

def _pairs_sharing(supports: Sequence[frozenset[int]], m: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i < j) whose supports share at least ``m`` coordinates.

    Pairs sharing more than ``m`` coordinates may appear more than once.
    """
    buckets: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for idx, s in enumerate(supports):
        for key in combinations(sorted(s), m):
            buckets[key].append(idx)
    by_size: dict[int, list[list[int]]] = defaultdict(list)
    for members in buckets.values():
        if len(members) > 1:
            by_size[len(members)].append(members)
    firsts, seconds = [], []
    for size, groups in by_size.items():
        block = np.array(groups, dtype=np.int64)
        a, b = np.triu_indices(size, k=1)
        firsts.append(block[:, a].ravel())
        seconds.append(block[:, b].ravel())
    if not firsts:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(firsts), np.concatenate(seconds)


def _all_pairs(count: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = np.triu_indices(count, k=1)
    return a.astype(np.int64), b.astype(np.int64)


def _distances(arr: np.ndarray, first: np.ndarray, second: np.ndarray,
               chunk: int = 1 << 18) -> np.ndarray:
    out = np.empty(len(first), dtype=np.int64)
    for lo in range(0, len(first), chunk):
        hi = lo + chunk
        out[lo:hi] = (arr[first[lo:hi]] != arr[second[lo:hi]]).sum(axis=1)
    return out


def _common_weight(words: Sequence[Codeword]) -> int | None:
    weights = {u.weight for u in words}
    return weights.pop() if len(weights) == 1 else None


def close_pairs(words: Sequence[Codeword], d: int) -> list[tuple[int, int]]:
    """
    All index pairs ``(i, j)``, ``i < j``, with ``d_H(words[i], words[j]) < d``.

    For words of a common weight ``w``, only pairs whose supports share at least
    ``w - (d-1)//2`` coordinates can be that close, so the search is restricted
    to pairs found by bucketing supports on their subsets of that size.
    """
    if len(words) < 2:
        return []
    arr = np.array([u.symbols for u in words], dtype=np.int64)
    w = _common_weight(words)
    m = w - (d - 1) // 2 if w is not None else 0
    if m >= 1:
        first, second = _pairs_sharing([u.support for u in words], m)
    else:
        first, second = _all_pairs(len(words))
    if len(first) == 0:
        return []
    dist = _distances(arr, first, second)
    bad = dist < d
    return sorted(set(zip(first[bad].tolist(), second[bad].tolist())))


def minimum_distance(words: Sequence[Codeword]) -> int | None:
    """Exact minimum pairwise Hamming distance, ``None`` for fewer than two words."""
    if len(words) < 2:
        return None
    arr = np.array([u.symbols for u in words], dtype=np.int64)
    w = _common_weight(words)
    if w is None or w == 0:
        first, second = _all_pairs(len(words))
        return int(_distances(arr, first, second).min())
    supports = [u.support for u in words]
    best = None
    seen = 0
    for m in range(w, 0, -1):
        first, second = _pairs_sharing(supports, m)
        if len(first):
            cur = int(_distances(arr, first, second).min())
            best = cur if best is None else min(best, cur)
        # pairs sharing fewer than m coordinates are at distance >= 2w - 2(m-1)
        if best is not None and best <= 2 * w - 2 * (m - 1):
            return best
        if m == 1:
            seen = len(set(zip(first.tolist(), second.tolist())))
    total = len(words) * (len(words) - 1) // 2
    if seen < total:
        best = 2 * w if best is None else min(best, 2 * w)
    return best


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool
    violation: str | None = None
    witness: tuple = ()
    message: str = ""
    size: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"pass size={self.size}"
        return f"fail {self.violation}: {self.message}"


def verify_code(c: ConstantWeightCode) -> VerificationReport:
    """
    Check every invariant of a constant-weight code.

    Failures are reported, never raised. The report names the first violated
    invariant (``length``, ``alphabet``, ``weight``, ``duplicate`` or
    ``distance``) and the offending codewords; word positions in messages are
    1-based.
    """
    for pos, u in enumerate(c.words, start=1):
        if len(u) != c.n:
            return VerificationReport(False, "length", (u,),
                                      f"word {pos} has length {len(u)}, expected {c.n}")
        if u.q > c.q and any(s >= c.q for s in u.symbols):
            return VerificationReport(False, "alphabet", (u,),
                                      f"word {pos} has a symbol >= q={c.q}")
        if u.weight != c.w:
            return VerificationReport(False, "weight", (u,),
                                      f"word {pos} has weight {u.weight}, expected {c.w}")
    first_seen: dict[tuple[int, ...], int] = {}
    for pos, u in enumerate(c.words, start=1):
        if u.symbols in first_seen:
            return VerificationReport(False, "duplicate", (u,),
                                      f"words {first_seen[u.symbols]} and {pos} are equal")
        first_seen[u.symbols] = pos
    if c.d is not None:
        bad = close_pairs(c.words, c.d)
        if bad:
            i, j = bad[0]
            u, v = c.words[i], c.words[j]
            return VerificationReport(
                False, "distance", (u, v),
                f"words {i + 1} and {j + 1} are at distance "
                f"{hamming_distance(u, v)} < {c.d}")
    return VerificationReport(True, size=len(c.words))


# ---------------------------------------------------------------------------
# cwcode v1 text format
# ---------------------------------------------------------------------------

def format_code(c: ConstantWeightCode) -> str:
    if c.d is None:
        raise InvalidInputError("a cwcode file needs a declared distance")
    lines = ["cwcode 1", f"n={c.n} q={c.q} w={c.w} d={c.d}"]
    lines += [" ".join(map(str, u.symbols)) for u in c.words]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> ConstantWeightCode:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or lines[0] != "cwcode 1":
        raise InvalidInputError("not a cwcode v1 file (bad magic line)")
    keys = lines[1].split(" ")
    if [k.split("=", 1)[0] for k in keys] != ["n", "q", "w", "d"]:
        raise InvalidInputError(f"bad parameter line: {lines[1]!r}")
    try:
        n, q, w, d = (int(k.split("=", 1)[1]) for k in keys)
    except ValueError as exc:
        raise InvalidInputError(f"bad parameter line: {lines[1]!r}") from exc
    words = []
    for lineno, line in enumerate(lines[2:], start=3):
        if line.startswith("#") or not line.strip():
            continue
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise InvalidInputError(f"line {lineno}: non-integer symbol") from exc
        if len(row) != n:
            raise InvalidInputError(f"line {lineno}: expected {n} symbols, got {len(row)}")
        words.append(Codeword(row, q))
    return ConstantWeightCode(n, q, w, d, tuple(words))


def write_code(c: ConstantWeightCode, path: str | os.PathLike | io.TextIOBase) -> None:
    text = format_code(c)
    if hasattr(path, "write"):
        path.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_code(path: str | os.PathLike) -> ConstantWeightCode:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_code(fh.read())
