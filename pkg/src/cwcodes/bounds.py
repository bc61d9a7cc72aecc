"""Closed-form upper bounds and exact values of A_q(n, 4, 3)."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidInputError

CASE_MINUS_ONE = "n≡5 mod 6 and q≢1 mod 3"
CASE_OTHERWISE = "otherwise"


def _check(n: int, q: int) -> None:
    if n < 3 or q < 2:
        raise InvalidInputError(f"need n >= 3 and q >= 2, got n={n}, q={q}")


def _minus_one_branch(n: int, q: int) -> bool:
    return n % 6 == 5 and q % 3 != 1


def u_q(n: int, q: int) -> int:
    """
    The counting bound ``U_q(n)``.

    ``floor((q-1) * n * floor((n-1)/2) / 3)``, less one when ``n ≡ 5 (mod 6)``
    and ``q ≢ 1 (mod 3)``. Integer arithmetic only; the one is subtracted after
    flooring.
    """
    _check(n, q)
    value = (q - 1) * n * ((n - 1) // 2) // 3
    return value - 1 if _minus_one_branch(n, q) else value


def upper_bound(n: int, q: int) -> int:
    _check(n, q)
    return min(u_q(n, q), comb(n, 3))


def main_theorem_value(n: int, q: int) -> int:
    """Exact value of A_q(n, 4, 3); numerically the same as :func:`upper_bound`."""
    return upper_bound(n, q)


@dataclass(frozen=True)
class BoundReport:
    n: int
    q: int
    u_q_n: int
    binom_n_3: int
    main_value: int
    case_tag: str

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"q={self.q}",
            f"u_q_n={self.u_q_n}",
            f"binom_n_3={self.binom_n_3}",
            f"main_value={self.main_value}",
            f"case_tag={self.case_tag}",
        ]


def bound_report(n: int, q: int) -> BoundReport:
    u = u_q(n, q)
    b = comb(n, 3)
    tag = CASE_MINUS_ONE if _minus_one_branch(n, q) else CASE_OTHERWISE
    return BoundReport(n, q, u, b, min(u, b), tag)
