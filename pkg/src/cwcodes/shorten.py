"""Shortening: from an optimal (n+1, 4, 3)_q code to an optimal (n, 4, 3)_q code."""

from __future__ import annotations

from .bounds import u_q, upper_bound
from .core import Codeword, ConstantWeightCode
from .errors import InvalidInputError


def coordinate_usage(c: ConstantWeightCode) -> list[int]:
    """``counts[i-1]`` is the number of codewords nonzero at coordinate ``i``."""
    counts = [0] * c.n
    for u in c.words:
        for i in u.support:
            counts[i - 1] += 1
    total = sum(counts)
    if c.words and min(counts) > total // c.n:
        raise RuntimeError("pigeonhole violated: minimum usage exceeds the average")
    return counts


def shorten_at(c: ConstantWeightCode, i: int) -> ConstantWeightCode:
    """Drop the codewords nonzero at coordinate ``i`` (1-based), then the coordinate itself."""
    if not 1 <= i <= c.n:
        raise InvalidInputError(f"coordinate {i} outside [1, {c.n}]")
    kept = tuple(
        Codeword(u.symbols[:i - 1] + u.symbols[i:], u.q)
        for u in c.words if u.symbols[i - 1] == 0
    )
    if not kept:
        raise InvalidInputError(f"shortening at {i} leaves an empty code")
    return ConstantWeightCode(c.n - 1, c.q, c.w, c.d, kept)


def removal_budget(n: int, q: int) -> int:
    """Largest number of words a least-used coordinate of an optimal
    (n+1, 4, 3)_q code can carry, for n ≡ 4 (mod 6)."""
    half = (q - 1) * n // 2
    return half if q % 3 == 1 else half - 1


def least_used_coordinate(c: ConstantWeightCode) -> int:
    usage = coordinate_usage(c)
    return usage.index(min(usage)) + 1


def shorten_optimal(c: ConstantWeightCode) -> ConstantWeightCode:
    """
    Shorten an optimal (n+1, 4, 3)_q code, n ≡ 4 (mod 6), at a least-used
    coordinate (smallest index on ties).

    The shortened code is returned untrimmed; its size is at least U_q(n) and
    at most the upper bound for (n, q).
    """
    n = c.n - 1
    q = c.q
    if n % 6 != 4:
        raise InvalidInputError(f"need n ≡ 4 (mod 6) for the shortened length, got n={n}")
    if not 2 <= q <= n:
        raise InvalidInputError(f"need 2 <= q <= n = {n}, got q={q}")
    if c.w != 3 or (c.d is not None and c.d < 4):
        raise InvalidInputError("expected a code of weight 3 and distance 4")
    if len(c) != u_q(n + 1, q):
        raise InvalidInputError(f"code has {len(c)} words; an optimal one has U_q(n+1) = {u_q(n + 1, q)}")

    out = shorten_at(c, least_used_coordinate(c)).with_d(4)

    pigeonhole = len(c) - 3 * len(c) // (n + 1)
    if len(out) < pigeonhole:
        raise RuntimeError(f"shortened code has {len(out)} < {pigeonhole} words")
    if len(out) < u_q(n, q):
        raise RuntimeError(f"shortened code has {len(out)} < U_q(n) = {u_q(n, q)} words")
    if len(out) > upper_bound(n, q):
        raise RuntimeError(f"shortened code has {len(out)} words, above the upper bound")
    return out
