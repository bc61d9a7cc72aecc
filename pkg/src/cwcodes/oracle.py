"""
Exact A_q(n, 4, 3) for small parameters by maximum-clique search.

Vertices are all weight-3 words of length n over ``Z_q``, ordered by
(rank of support, nonzero value tuple); two words are adjacent when they are
at distance at least four, so codes are exactly the cliques.

The search runs on Python-int bitsets and descends over target sizes: it
starts from an upper bound computed at the root and asks for a clique of
exactly that size, lowering the target only after the whole space has been
exhausted. Three families of "at most so many" constraints give the bounds
and drive the branching:

* a support holds at most one codeword;
* the words with symbol ``a`` at coordinate ``i`` have supports meeting only
  in ``i``, so at most ``(n-1)//2`` of them fit (each word fills three such
  (coordinate, symbol) slots);
* a greedy colouring of the candidates into independent sets (root only).

Each node branches on the constraint with the fewest live candidates: one
branch per candidate, then one branch with all of them excluded.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .core import Codeword, ConstantWeightCode, verify_code
from .errors import InvalidInputError

__all__ = [
    "OracleResult",
    "exact_a",
    "certify_optimal",
    "compatibility_graph",
    "all_words",
    "greedy_colour_bound",
]


@dataclass
class OracleResult:
    n: int
    q: int
    exact_size: int
    witness: ConstantWeightCode
    proved_optimal: bool
    nodes_explored: int
    elapsed: float


def all_words(n: int, q: int) -> np.ndarray:
    """Every weight-3 word of length n over Z_q, in the oracle's vertex order."""
    rows = []
    for supp in combinations(range(n), 3):
        for vals in product(range(1, q), repeat=3):
            row = [0] * n
            for j, v in zip(supp, vals):
                row[j] = v
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def _bits(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def compatibility_graph(words: np.ndarray, d: int = 4, chunk: int = 256) -> list[int]:
    """Adjacency bitsets: bit j of entry i is set iff words i and j are at distance >= d."""
    adj = []
    for lo in range(0, len(words), chunk):
        block = words[lo:lo + chunk]
        dist = (block[:, None, :] != words[None, :, :]).sum(axis=2)
        for row in dist >= d:
            adj.append(_bits(row))
    return adj


def greedy_colour_bound(P: int, adj: list[int]) -> int:
    """Number of colour classes in a greedy partition of ``P`` into independent sets."""
    colours = 0
    U = P
    while U:
        colours += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            U ^= low
            Q &= ~adj[v]
            Q ^= low
    return colours


class _Search:
    def __init__(self, n: int, q: int, words: np.ndarray, adj: list[int], deadline: float):
        self.adj = adj
        self.deadline = deadline
        self.cap = (n - 1) // 2
        self.nodes = 0
        self.timed_out = False
        self.best: list[int] = []

        slot_masks = [0] * (n * q)
        support_masks: dict[tuple[int, ...], int] = {}
        self.slots_of: list[list[int]] = []
        for v, row in enumerate(words.tolist()):
            slots = [j * q + s for j, s in enumerate(row) if s]
            self.slots_of.append(slots)
            for k in slots:
                slot_masks[k] |= 1 << v
            supp = tuple(j for j, s in enumerate(row) if s)
            support_masks[supp] = support_masks.get(supp, 0) | (1 << v)
        self.slots = [(k, m) for k, m in enumerate(slot_masks) if m]
        self.supports = list(support_masks.values())
        self.used = [0] * (n * q)

    def add(self, v: int) -> None:
        for k in self.slots_of[v]:
            self.used[k] += 1

    def remove(self, v: int) -> None:
        for k in self.slots_of[v]:
            self.used[k] -= 1

    def bound(self, P: int) -> int:
        """Upper bound on how many candidates from ``P`` can still be added."""
        total = 0
        for k, m in self.slots:
            room = self.cap - self.used[k]
            if room > 0:
                c = (P & m).bit_count()
                total += c if c < room else room
        occupied = sum(1 for m in self.supports if P & m)
        return min(total // 3, occupied)

    def find(self, clique: list[int], P: int, target: int) -> list[int] | None:
        """A clique of size ``target`` extending ``clique`` inside ``P``, or None."""
        self.nodes += 1
        if len(clique) > len(self.best):
            self.best = list(clique)
        if self.nodes & 1023 == 0 and time.perf_counter() > self.deadline:
            self.timed_out = True
        if self.timed_out:
            return None
        need = target - len(clique)
        if need <= 0:
            return list(clique)

        total = 0
        pick, fewest = 0, None
        for k, m in self.slots:
            room = self.cap - self.used[k]
            if room <= 0:
                continue
            c = (P & m).bit_count()
            if c:
                total += c if c < room else room
                if fewest is None or c < fewest:
                    pick, fewest = m, c
        if total // 3 < need:
            return None
        occupied = 0
        for m in self.supports:
            c = (P & m).bit_count()
            if c:
                occupied += 1
                if c < fewest:
                    pick, fewest = m, c
        if occupied < need:
            return None

        branch = P & pick
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            branch ^= low
            clique.append(v)
            self.add(v)
            found = self.find(clique, P & self.adj[v], target)
            self.remove(v)
            clique.pop()
            if found is not None:
                return found
            P &= ~low
        return self.find(clique, P, target)


def exact_a(n: int, q: int, time_limit: float = 60.0, symmetry: bool = True) -> OracleResult:
    """
    Maximum size of an (n, 4, 3)_q code, with a witness.

    On timeout the largest code met so far is returned with
    ``proved_optimal=False``. With ``symmetry`` the first codeword is fixed to
    ``(1,1,1,0,...,0)``: coordinate permutations and per-coordinate
    relabellings of the nonzero symbols move any code onto one containing it.
    """
    if n < 3 or q < 2:
        raise InvalidInputError(f"need n >= 3 and q >= 2, got n={n}, q={q}")
    t0 = time.perf_counter()
    words = all_words(n, q)
    adj = compatibility_graph(words)
    search = _Search(n, q, words, adj, t0 + time_limit)

    if symmetry:
        clique = [0]
        search.add(0)
        P = adj[0]
    else:
        clique = []
        P = (1 << len(words)) - 1
    search.best = list(clique)

    target = len(clique) + min(search.bound(P), greedy_colour_bound(P, adj))
    found = None
    while target > len(clique):
        found = search.find(clique, P, target)
        if found is not None or search.timed_out:
            break
        target -= 1
    chosen = sorted(found if found is not None else search.best)
    if not chosen and len(words):
        chosen = [0]
    witness = ConstantWeightCode(
        n, q, 3, 4, tuple(Codeword(tuple(words[v].tolist()), q) for v in chosen))
    report = verify_code(witness)
    if not report:
        raise RuntimeError(f"oracle produced an invalid witness: {report}")
    return OracleResult(n, q, len(chosen), witness, not search.timed_out,
                        search.nodes, time.perf_counter() - t0)


def certify_optimal(c: ConstantWeightCode, time_limit: float = 60.0) -> bool | None:
    """
    True iff ``c`` is a valid (n,4,3)_q code of maximum size.

    ``None`` means the search timed out before it could decide.
    """
    if c.w != 3 or not len(c) or not verify_code(c.with_d(4)):
        return False
    result = exact_a(c.n, c.q, time_limit)
    if len(c) < result.exact_size:
        return False
    if not result.proved_optimal:
        return None
    return len(c) == result.exact_size
