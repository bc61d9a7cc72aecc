"""
Optimal (q, 4, 3)_q codes from column-filled incidence matrices.

``build_m(n)`` lists every weight-3 binary word of length n, supports in lex
order. ``fill`` replaces the nonzeros of each column, top to bottom, by a
sequence; with the sequence ``gen_y(q)`` and ``n = q`` the rows form a code
of distance four and size C(q, 3).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .core import Codeword, ConstantWeightCode, minimum_distance
from .errors import InvalidInputError
from .lex import KSubset, enumerate_subsets

__all__ = [
    "FillMatrix",
    "FillSequence",
    "build_m",
    "fill",
    "fill_column",
    "gen_x",
    "gen_x_recursive",
    "gen_y",
    "code_of",
    "is_special",
    "move_column_front",
    "reorder",
    "reorder_by_sort",
    "row_supports",
    "check_lemma1",
    "format_sequence",
    "parse_sequence",
]


@dataclass(frozen=True, eq=False)
class FillMatrix:
    """``C(n,3) x n`` matrix whose row supports are the 3-subsets of [n] in lex order."""

    n: int
    rows: np.ndarray
    q: int | None = None

    def __post_init__(self):
        self.rows.setflags(write=False)

    @property
    def filled(self) -> bool:
        return self.q is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FillMatrix):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and np.array_equal(self.rows, other.rows)

    def __hash__(self):
        return hash((self.n, self.q, self.rows.tobytes()))


@dataclass(frozen=True)
class FillSequence:
    """A fill sequence over ``Z_q``; ``kind`` is ``"x"`` (values 0..q-2),
    ``"y"`` (values 1..q-1) or ``"plain"`` (any nonzero values)."""

    q: int
    entries: tuple[int, ...]
    kind: str = "plain"

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if self.kind in ("x", "y") and len(self.entries) != comb(self.q - 1, 2):
            raise InvalidInputError(
                f"{self.kind}-sequence for q={self.q} must have length {comb(self.q - 1, 2)}")
        lo = 0 if self.kind == "x" else 1
        hi = self.q - 2 if self.kind == "x" else self.q - 1
        for e in self.entries:
            if not lo <= e <= hi:
                raise InvalidInputError(f"entry {e} outside [{lo}, {hi}] for a {self.kind}-sequence")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def build_m(n: int) -> FillMatrix:
    if n < 3:
        raise InvalidInputError(f"need n >= 3, got {n}")
    subsets = enumerate_subsets(n, 3)
    rows = np.zeros((len(subsets), n), dtype=np.int64)
    for r, s in enumerate(subsets):
        rows[r, [e - 1 for e in s]] = 1
    return FillMatrix(n, rows)


def _as_sequence(s, q: int | None) -> tuple[tuple[int, ...], int]:
    if isinstance(s, FillSequence):
        if s.kind == "x":
            raise InvalidInputError("an x-sequence contains zeros; fill with gen_y instead")
        return s.entries, s.q
    entries = tuple(int(e) for e in s)
    if q is None:
        q = max(entries, default=1) + 1
    return entries, q


def fill(m: FillMatrix, s, q: int | None = None) -> FillMatrix:
    """
    Fill every column of ``m`` with ``s``: the t-th nonzero entry of each
    column, counted top-down, becomes ``s[t]``.

    ``q`` defaults to ``s.q`` for a :class:`FillSequence`, else ``max(s) + 1``.
    """
    if m.filled:
        raise InvalidInputError("matrix is already filled")
    entries, q = _as_sequence(s, q)
    need = comb(m.n - 1, 2)
    if len(entries) != need:
        raise InvalidInputError(f"sequence length {len(entries)} != C({m.n - 1},2) = {need}")
    if any(not 1 <= e < q for e in entries):
        raise InvalidInputError(f"fill entries must lie in [1, {q - 1}]")
    vals = np.asarray(entries, dtype=np.int64)
    out = np.array(m.rows)
    for j in range(m.n):
        nz = np.flatnonzero(out[:, j])
        out[nz, j] = vals
    return FillMatrix(m.n, out, q)


def fill_column(rows: np.ndarray, j: int, s: Sequence[int]) -> np.ndarray:
    """Copy of ``rows`` with only the 1-based column ``j`` filled by ``s``."""
    out = np.array(rows)
    nz = np.flatnonzero(out[:, j - 1])
    if len(nz) != len(s):
        raise InvalidInputError(f"column {j} has {len(nz)} nonzeros, sequence has {len(s)}")
    out[nz, j - 1] = np.asarray(tuple(s), dtype=np.int64)
    return out


# ---------------------------------------------------------------------------
# the sequences x(q) and y(q)
# ---------------------------------------------------------------------------

def _check_q(q: int) -> None:
    if q < 3:
        raise InvalidInputError(f"need q >= 3, got {q}")


def _x_closed_form(q: int) -> list[int]:
    out = []
    for t in range(q - 2, 0, -1):
        out.extend((2 * (q - 2 - t) + i) % (q - 1) for i in range(t))
    return out


def gen_x_recursive(q: int) -> list[int]:
    """x(q) built segment by segment: start from (0, ..., q-3), then each next
    segment is the previous one plus 2, cut to its first t entries, mod q-1."""
    _check_q(q)
    seg = list(range(q - 2))
    out = list(seg)
    for t in range(q - 3, 0, -1):
        seg = [(v + 2) % (q - 1) for v in seg[:t]]
        out.extend(seg)
    return out


def gen_x(q: int) -> FillSequence:
    _check_q(q)
    closed = _x_closed_form(q)
    if closed != gen_x_recursive(q):
        raise RuntimeError(f"closed form and recursion for x({q}) disagree")
    return FillSequence(q, tuple(closed), "x")


def gen_y(q: int) -> FillSequence:
    return FillSequence(q, tuple(v + 1 for v in gen_x(q).entries), "y")


def format_sequence(s, compact: bool = False) -> str:
    entries = tuple(s)
    if compact:
        if isinstance(s, FillSequence) and s.q > 10 or any(e > 9 for e in entries):
            raise InvalidInputError("compact digit form is only defined for q <= 10")
        return "".join(map(str, entries))
    return " ".join(map(str, entries))


def parse_sequence(text: str, q: int) -> FillSequence:
    """Parse space-separated integers, or a digit string when ``q <= 10``."""
    text = text.strip()
    if " " in text or not text.isdigit() or len(text) == 1:
        entries = tuple(int(tok) for tok in text.split())
    elif q <= 10:
        entries = tuple(int(ch) for ch in text)
    else:
        raise InvalidInputError("digit-string sequences are ambiguous for q > 10")
    return FillSequence(q, entries)


# ---------------------------------------------------------------------------
# codes and specialness
# ---------------------------------------------------------------------------

def code_of(m: FillMatrix) -> ConstantWeightCode:
    """The rows of a filled matrix as a code; ``d`` is the measured minimum distance."""
    if not m.filled:
        raise InvalidInputError("matrix is not filled")
    words = tuple(Codeword(tuple(row), m.q) for row in m.rows.tolist())
    return ConstantWeightCode(m.n, m.q, 3, minimum_distance(words), words)


def _pair_buckets(rows: np.ndarray) -> dict[tuple[int, int], list[int]]:
    buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
    for r, row in enumerate(rows.tolist()):
        supp = [j for j, v in enumerate(row) if v]
        for a, b in combinations(supp, 2):
            buckets[(a, b)].append(r)
    return buckets


def is_special(q: int, s) -> tuple[bool, tuple[int, int] | None]:
    """
    Whether ``s`` fills ``M(q)`` into a code of distance four.

    Two rows whose supports share two coordinates must differ in both; rows
    sharing fewer coordinates are always far enough apart. Returns the
    lexicographically first offending pair of 1-based row indices.
    """
    entries, qq = _as_sequence(s, q)
    if len(entries) != comb(q - 1, 2):
        raise InvalidInputError(f"sequence length must be C({q - 1},2) = {comb(q - 1, 2)}")
    rows = fill(build_m(q), entries, q=max(q, qq)).rows
    worst = None
    for (a, b), members in _pair_buckets(rows).items():
        va = rows[members, a]
        vb = rows[members, b]
        if len(set(va.tolist())) == len(members) and len(set(vb.tolist())) == len(members):
            continue
        for x, y in combinations(range(len(members)), 2):
            if va[x] == va[y] or vb[x] == vb[y]:
                pair = (members[x] + 1, members[y] + 1)
                if worst is None or pair < worst:
                    worst = pair
    return worst is None, worst


def check_lemma1(q: int) -> tuple[bool, tuple[int, int] | None]:
    """
    Fill only column 1 of ``M(q)`` with ``y(q)`` and check that any two rows
    whose supports meet in exactly ``{1, x}`` carry different values there.
    """
    rows = fill_column(build_m(q).rows, 1, gen_y(q).entries)
    by_partner: dict[int, list[int]] = defaultdict(list)
    for r, row in enumerate(rows.tolist()):
        if row[0]:
            for x in range(1, q):
                if row[x]:
                    by_partner[x].append(r)
    for x in sorted(by_partner):
        seen: dict[int, int] = {}
        for r in by_partner[x]:
            v = int(rows[r, 0])
            if v in seen:
                return False, (seen[v] + 1, r + 1)
            seen[v] = r
    return True, None


# ---------------------------------------------------------------------------
# column fronting and the reorder procedure
# ---------------------------------------------------------------------------

def _rows_of(m) -> np.ndarray:
    return m.rows if isinstance(m, FillMatrix) else np.asarray(m)


def move_column_front(m, j: int) -> np.ndarray:
    """Columns permuted to ``(j, 1, ..., j-1, j+1, ..., n)``; rows unchanged."""
    rows = _rows_of(m)
    n = rows.shape[1]
    if not 1 <= j <= n:
        raise InvalidInputError(f"column {j} outside [1, {n}]")
    order = [j - 1] + [c for c in range(n) if c != j - 1]
    return rows[:, order].copy()


def reorder(mj) -> np.ndarray:
    """
    Float rows with a nonzero first entry to the top by repeated splicing.

    While the first column is not "nonzeros then zeros": take the first zero
    position s and the first nonzero position t after it, and move row t to
    just before row s.
    """
    rows = [r for r in np.asarray(mj)]
    total = len(rows)
    n = len(rows[0]) if rows else 0
    head = comb(n - 1, 2)
    if sum(1 for r in rows if r[0]) != head:
        raise InvalidInputError(f"first column must hold exactly C({n - 1},2) = {head} nonzeros")
    cap = total * total
    for _ in range(cap + 1):
        col = [bool(r[0]) for r in rows]
        if all(col[:head]) and not any(col[head:]):
            return np.array(rows).reshape(total, n)
        s = col.index(False)
        t = col.index(True, s + 1)
        rows.insert(s, rows.pop(t))
    raise RuntimeError(f"reorder exceeded {cap} splices")


def reorder_by_sort(mj) -> np.ndarray:
    """Stable sort putting nonzero-first rows on top; agrees with :func:`reorder`."""
    rows = np.asarray(mj)
    keys = [0 if r[0] else 1 for r in rows]
    order = sorted(range(len(rows)), key=lambda i: keys[i])
    return rows[order]


def row_supports(rows: np.ndarray) -> list[KSubset]:
    n = rows.shape[1]
    return [KSubset(n, tuple(int(j) + 1 for j in np.flatnonzero(r))) for r in rows]
