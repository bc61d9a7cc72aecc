"""
Large sets LS(2, (3, {3,5}), n) and the codes built from them.

A large set here is a family of n-2 pairwise balanced designs on [n] with
block sizes 3 and 5, each having a single 5-block, such that every triple of
[n] lies in exactly one block of their union, triples belong to one design
and 5-blocks to three. For n ≡ 5 (mod 6) and 2 <= q <= n-1, design r
contributes its triples with the constant symbol r, and each 5-block hosts a
small optimal (5,4,3) code on three fresh symbols. The result has size
U_q(n).
"""

from __future__ import annotations

import io
import os
import random
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from importlib.resources import files
from itertools import combinations
from math import comb

from .bounds import u_q
from .core import Codeword, ConstantWeightCode, VerificationReport, verify_code
from .errors import InvalidInputError
from .lex import KSubset, rank

__all__ = [
    "Design",
    "LargeSet",
    "Group",
    "LsSearchResult",
    "BASE_CODES",
    "trivial_large_set",
    "verify_large_set",
    "partition_by_five_blocks",
    "base_code",
    "construct_from_ls",
    "ls_search",
    "read_large_set",
    "write_large_set",
    "format_large_set",
    "parse_large_set",
    "bundled_large_set",
]

BLOCK_SIZES = (3, 5)


@dataclass(frozen=True)
class Design:
    n: int
    blocks: tuple[KSubset, ...]

    @classmethod
    def of(cls, n: int, blocks) -> "Design":
        return cls(n, tuple(b if isinstance(b, KSubset) else KSubset.of(n, b) for b in blocks))

    def five_blocks(self) -> list[KSubset]:
        return [b for b in self.blocks if b.k == 5]

    def triples(self) -> list[KSubset]:
        return [b for b in self.blocks if b.k == 3]


@dataclass(frozen=True)
class LargeSet:
    n: int
    designs: tuple[Design, ...]

    def __len__(self) -> int:
        return len(self.designs)


@dataclass(frozen=True)
class Group:
    """Three designs sharing the 5-block ``five_block``; ``indices`` are 1-based."""

    five_block: KSubset
    designs: tuple[Design, ...]
    indices: tuple[int, ...]


def trivial_large_set() -> LargeSet:
    """The n = 5 large set: three copies of the design whose only block is [5]."""
    d = Design.of(5, [(1, 2, 3, 4, 5)])
    return LargeSet(5, (d, d, d))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _fail(kind: str, message: str, *witness) -> VerificationReport:
    return VerificationReport(False, kind, tuple(witness), message)


def verify_large_set(ls: LargeSet, flavor: bool = True) -> VerificationReport:
    """
    Check that ``ls`` is an LS(2, (3, {3,5}), n).

    Checked in order: design count n-2; block sanity; each design a 2BD; the
    union a 3BD; triples in exactly one design and 5-blocks in exactly three.
    With ``flavor`` also require exactly one 5-block per design. The report
    names the first failing condition and a witness.
    """
    n = ls.n
    if n < 5:
        return _fail("order", f"n={n} is too small")
    if len(ls.designs) != n - 2:
        return _fail("design-count", f"{len(ls.designs)} designs, expected n-2 = {n - 2}")

    pairs_all = list(combinations(range(1, n + 1), 2))
    for r, design in enumerate(ls.designs, start=1):
        if design.n != n:
            return _fail("order", f"design {r} is on {design.n} points, expected {n}", r)
        seen = set()
        for b in design.blocks:
            if b.k not in BLOCK_SIZES:
                return _fail("block-size", f"design {r} has a block of size {b.k}", r, b)
            if b.elements in seen:
                return _fail("repeated-block", f"design {r} repeats block {b}", r, b)
            seen.add(b.elements)
        cover = Counter(p for b in design.blocks for p in combinations(b.elements, 2))
        for p in pairs_all:
            if cover[p] != 1:
                return _fail("2BD", f"design {r} covers pair {set(p)} {cover[p]} times", r, p)

    union = {b.elements for d in ls.designs for b in d.blocks}
    cover3 = Counter(t for b in union for t in combinations(b, 3))
    for t in combinations(range(1, n + 1), 3):
        if cover3[t] != 1:
            return _fail("3BD", f"triple {set(t)} lies in {cover3[t]} blocks of the union", t)

    multiplicity = Counter(b.elements for d in ls.designs for b in d.blocks)
    for block, count in sorted(multiplicity.items()):
        want = comb(len(block) - 2, 1)
        if count != want:
            return _fail("multiplicity",
                         f"block {set(block)} is in {count} designs, expected {want}",
                         KSubset(n, block))

    if flavor:
        for r, design in enumerate(ls.designs, start=1):
            k5 = len(design.five_blocks())
            if k5 != 1:
                return _fail("flavor", f"design {r} has {k5} blocks of size five", r)
    return VerificationReport(True, size=len(ls.designs))


def partition_by_five_blocks(ls: LargeSet) -> list[Group]:
    """
    Group the designs by their 5-block.

    Groups are ordered by the lex rank of their 5-block, designs inside a group
    by their original index, so that designs 3i-2, 3i-1, 3i of the relabelled
    family form group i.
    """
    report = verify_large_set(ls, flavor=True)
    if not report:
        raise InvalidInputError(f"not a large set with one 5-block per design: {report.message}")
    members: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for r, design in enumerate(ls.designs, start=1):
        members[design.five_blocks()[0].elements].append(r)
    groups = []
    for block in sorted(members, key=lambda b: rank(KSubset(ls.n, b))):
        idx = tuple(sorted(members[block]))
        groups.append(Group(KSubset(ls.n, block), tuple(ls.designs[r - 1] for r in idx), idx))
    return groups


# ---------------------------------------------------------------------------
# the construction
# ---------------------------------------------------------------------------

# Optimal (5,4,3)_q' codes, q' = 2, 3, 4, as found by the exact oracle
# (sizes 2, 5, 10). tests/test_largeset.py re-derives and re-certifies them.
BASE_CODES: dict[int, tuple[tuple[int, ...], ...]] = {
    2: ((1, 1, 1, 0, 0), (1, 0, 0, 1, 1)),
    3: ((1, 1, 1, 0, 0), (2, 2, 0, 1, 0), (1, 0, 0, 2, 1), (0, 2, 2, 0, 1),
        (0, 0, 1, 1, 2)),
    4: ((1, 1, 1, 0, 0), (3, 3, 0, 3, 0), (2, 2, 0, 0, 3), (2, 0, 3, 2, 0),
        (3, 0, 2, 0, 2), (1, 0, 0, 1, 1), (0, 2, 2, 1, 0), (0, 3, 3, 0, 1),
        (0, 1, 0, 2, 2), (0, 0, 1, 3, 3)),
}


def base_code(q_prime: int, alphabet, coords: KSubset) -> ConstantWeightCode:
    """
    The canonical optimal (5,4,3)_{q'} code placed on the five coordinates
    ``coords`` of [n], its symbols 1..q'-1 renamed to the nonzero symbols of
    ``alphabet`` in ascending order.
    """
    if q_prime not in BASE_CODES:
        raise InvalidInputError(f"no base code for q'={q_prime}; supported: 2, 3, 4")
    symbols = sorted(set(alphabet))
    if len(symbols) != q_prime or symbols[0] != 0:
        raise InvalidInputError(f"alphabet must be 0 plus {q_prime - 1} nonzero symbols, got {symbols}")
    if coords.k != 5:
        raise InvalidInputError(f"coords must have five elements, got {coords}")
    n = coords.n
    q = symbols[-1] + 1
    words = []
    for canon in BASE_CODES[q_prime]:
        row = [0] * n
        for c, v in zip(coords.elements, canon):
            row[c - 1] = symbols[v]
        words.append(Codeword(tuple(row), q))
    return ConstantWeightCode(n, q, 3, 4, tuple(words))


def construct_from_ls(ls: LargeSet, q: int) -> ConstantWeightCode:
    """
    An optimal (n, 4, 3)_q code from a verified large set, n ≡ 5 (mod 6).

    Design r (after relabelling) gives the words of constant value r on its
    triples, for r = 1..q-1. Writing q-1 = 3a + b with 0 <= b < 3, the i-th
    5-block (i <= a) carries the (5,4,3)_4 base code on symbols
    {3i-2, 3i-1, 3i}, and when b > 0 the next one carries the (5,4,3)_{b+1}
    base code on {3a+1, ..., 3a+b}.
    """
    n = ls.n
    if n % 6 != 5:
        raise InvalidInputError(f"need n ≡ 5 (mod 6), got n={n}")
    if not 2 <= q <= n - 1:
        raise InvalidInputError(f"need 2 <= q <= n-1 = {n - 1}, got q={q}")
    groups = partition_by_five_blocks(ls)
    designs = [d for g in groups for d in g.designs]
    alpha, beta = divmod(q - 1, 3)
    if alpha + (1 if beta else 0) > len(groups):
        raise InvalidInputError(f"q={q} needs {alpha + 1} five-blocks, only {len(groups)} available")

    words: list[Codeword] = []
    for r in range(1, q):
        for block in sorted(designs[r - 1].triples(), key=rank):
            row = [0] * n
            for c in block:
                row[c - 1] = r
            words.append(Codeword(tuple(row), q))
    for i in range(1, alpha + 1):
        frag = base_code(4, {0, 3 * i - 2, 3 * i - 1, 3 * i}, groups[i - 1].five_block)
        words.extend(Codeword(u.symbols, q) for u in frag)
    if beta:
        alphabet = {0} | set(range(3 * alpha + 1, 3 * alpha + beta + 1))
        frag = base_code(beta + 1, alphabet, groups[alpha].five_block)
        words.extend(Codeword(u.symbols, q) for u in frag)

    code = ConstantWeightCode(n, q, 3, 4, tuple(words))
    report = verify_code(code)
    if not report:
        raise RuntimeError(f"construction produced an invalid code: {report}")
    if len(code) != u_q(n, q):
        raise RuntimeError(f"construction produced {len(code)} words, expected U_q(n) = {u_q(n, q)}")
    return code


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

@dataclass
class LsSearchResult:
    large_set: LargeSet | None
    status: str  # "found", "timeout" or "exhausted"
    nodes: int
    elapsed: float
    message: str = ""

    def __bool__(self) -> bool:
        return self.large_set is not None


def _pencil(n: int) -> list[tuple[int, ...]]:
    # 5-blocks {1,2} ∪ {3i, 3i+1, 3i+2}: pairwise meeting in {1,2}, covering [n]
    return [(1, 2, 3 * i, 3 * i + 1, 3 * i + 2) for i in range(1, (n - 2) // 3 + 1)]


def _admissible(n: int, fives: list[tuple[int, ...]]) -> bool:
    sets = [set(f) for f in fives]
    if any(len(a & b) > 2 for a, b in combinations(sets, 2)):
        return False
    for t in combinations(range(1, n + 1), 3):
        if any(set(t) <= s for s in sets):
            continue
        if all(any(set(p) <= s for p in combinations(t, 2)) for s in sets):
            return False
    return True


def _random_fives(n: int, rng: random.Random) -> list[tuple[int, ...]]:
    while True:
        fives = [tuple(sorted(rng.sample(range(1, n + 1), 5))) for _ in range((n - 2) // 3)]
        if _admissible(n, fives):
            return sorted(fives)


class _ExactCover:
    """Algorithm X on dict-of-sets columns; options are (design, triple)."""

    def __init__(self, n: int, fives: list[tuple[int, ...]], rng: random.Random, deadline: float):
        self.deadline = deadline
        self.nodes = 0
        self.timed_out = False
        groups = len(fives)
        five_pairs = [set(combinations(f, 2)) for f in fives]
        triples = [t for t in combinations(range(1, n + 1), 3)
                   if not any(set(t) <= set(f) for f in fives)]
        item_id: dict[tuple, int] = {}

        def item(key):
            return item_id.setdefault(key, len(item_id))

        for t in triples:
            item(("t", t))
        for r in range(3 * groups):
            for p in combinations(range(1, n + 1), 2):
                if p not in five_pairs[r // 3]:
                    item(("p", r, p))
        self.options: list[tuple[int, tuple[int, ...], list[int]]] = []
        for r in range(3 * groups):
            for t in triples:
                ps = list(combinations(t, 2))
                if any(p in five_pairs[r // 3] for p in ps):
                    continue
                self.options.append((r, t, [item_id[("t", t)]] + [item_id[("p", r, p)] for p in ps]))
        self.cols: dict[int, set[int]] = {i: set() for i in range(len(item_id))}
        for o, (_, _, its) in enumerate(self.options):
            for i in its:
                self.cols[i].add(o)
        self.order = {o: k for k, o in enumerate(rng.sample(range(len(self.options)), len(self.options)))}
        self.load = [0] * (3 * groups)
        self.solution: list[int] = []

    def _select(self, o: int) -> list[set[int]]:
        removed = []
        for i in self.options[o][2]:
            for o2 in self.cols[i]:
                for j in self.options[o2][2]:
                    if j != i:
                        self.cols[j].discard(o2)
            removed.append(self.cols.pop(i))
        return removed

    def _deselect(self, o: int, removed: list[set[int]]) -> None:
        its = self.options[o][2]
        for i in reversed(its):
            self.cols[i] = removed.pop()
            for o2 in self.cols[i]:
                for j in self.options[o2][2]:
                    if j != i:
                        self.cols[j].add(o2)

    def solve(self) -> bool:
        self.nodes += 1
        if self.nodes & 255 == 0 and time.perf_counter() > self.deadline:
            self.timed_out = True
        if self.timed_out:
            return False
        if not self.cols:
            return True
        col = min(self.cols, key=lambda i: len(self.cols[i]))
        tried_empty: set[int] = set()
        for o in sorted(self.cols[col], key=self.order.__getitem__):
            r = self.options[o][0]
            # designs of a group are interchangeable while still empty
            if self.load[r] == 0:
                if r // 3 in tried_empty:
                    continue
                tried_empty.add(r // 3)
            removed = self._select(o)
            self.load[r] += 1
            self.solution.append(o)
            if self.solve():
                return True
            self.solution.pop()
            self.load[r] -= 1
            self._deselect(o, removed)
        return False

    def large_set(self, n: int, fives: list[tuple[int, ...]]) -> LargeSet:
        blocks: dict[int, list[tuple[int, ...]]] = {r: [fives[r // 3]] for r in range(len(self.load))}
        for o in self.solution:
            r, t, _ = self.options[o]
            blocks[r].append(t)
        return LargeSet(n, tuple(Design.of(n, sorted(blocks[r], key=lambda b: (len(b), b)))
                                 for r in range(len(self.load))))


def ls_search(n: int, time_limit: float = 60.0, seed: int = 0) -> LsSearchResult:
    """
    Best-effort search for an LS(2, (3, {3,5}), n) with one 5-block per design.

    The 5-blocks are placed first (a pencil through {1, 2}, then random
    admissible placements), then the triples are distributed over the designs
    by exact-cover backtracking with interchangeable designs of a group tried
    only once. Deterministic for a fixed seed.
    """
    if n == 7:
        raise InvalidInputError(
            "no LS(2,(3,{3,5}),7) exists (such large sets exist exactly for odd n >= 3, n != 7); "
            "the one-5-block-per-design flavour also needs n ≡ 5 (mod 6)")
    if n < 5 or n % 6 != 5:
        raise InvalidInputError(f"need n >= 5 with n ≡ 5 (mod 6), got n={n}")
    t0 = time.perf_counter()
    if n == 5:
        return LsSearchResult(trivial_large_set(), "found", 0, time.perf_counter() - t0)
    rng = random.Random(seed)
    deadline = t0 + time_limit
    nodes = 0
    fives = _pencil(n)
    tried = 0
    while time.perf_counter() < deadline:
        tried += 1
        xc = _ExactCover(n, fives, rng, deadline)
        ok = xc.solve()
        nodes += xc.nodes
        if ok:
            ls = xc.large_set(n, fives)
            report = verify_large_set(ls)
            if not report:
                raise RuntimeError(f"search produced an invalid large set: {report}")
            return LsSearchResult(ls, "found", nodes, time.perf_counter() - t0,
                                  f"5-blocks {fives}, placement {tried}")
        if xc.timed_out:
            break
        fives = _random_fives(n, rng)
    return LsSearchResult(None, "timeout", nodes, time.perf_counter() - t0,
                          f"no large set found after {tried} 5-block placements")


# ---------------------------------------------------------------------------
# largeset v1 text format
# ---------------------------------------------------------------------------

def format_large_set(ls: LargeSet) -> str:
    lines = ["largeset 1", f"n={ls.n} t=2 k=3 K=3,5"]
    for r, design in enumerate(ls.designs, start=1):
        lines.append(f"design {r}")
        lines += ["block " + " ".join(map(str, b.elements)) for b in design.blocks]
    return "\n".join(lines) + "\n"


def parse_large_set(text: str) -> LargeSet:
    lines = [ln for ln in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or lines[0] != "largeset 1":
        raise InvalidInputError("not a largeset v1 file (bad magic line)")
    head = lines[1].split(" ")
    if len(head) != 4 or head[1:] != ["t=2", "k=3", "K=3,5"] or not head[0].startswith("n="):
        raise InvalidInputError(f"bad parameter line: {lines[1]!r}")
    try:
        n = int(head[0][2:])
    except ValueError as exc:
        raise InvalidInputError(f"bad parameter line: {lines[1]!r}") from exc
    designs: list[list[KSubset]] = []
    for lineno, line in enumerate(lines[2:], start=3):
        if line.startswith("#") or not line.strip():
            continue
        tok = line.split()
        if tok[0] == "design":
            if len(tok) != 2 or tok[1] != str(len(designs) + 1):
                raise InvalidInputError(f"line {lineno}: expected 'design {len(designs) + 1}'")
            designs.append([])
        elif tok[0] == "block":
            if not designs:
                raise InvalidInputError(f"line {lineno}: block before any design")
            try:
                pts = tuple(int(x) for x in tok[1:])
            except ValueError as exc:
                raise InvalidInputError(f"line {lineno}: non-integer point") from exc
            if list(pts) != sorted(set(pts)):
                raise InvalidInputError(f"line {lineno}: points must be strictly ascending")
            designs[-1].append(KSubset(n, pts))
        else:
            raise InvalidInputError(f"line {lineno}: unknown record {tok[0]!r}")
    return LargeSet(n, tuple(Design(n, tuple(bs)) for bs in designs))


def write_large_set(ls: LargeSet, path: str | os.PathLike | io.TextIOBase) -> None:
    text = format_large_set(ls)
    if hasattr(path, "write"):
        path.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_large_set(path: str | os.PathLike) -> LargeSet:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_large_set(fh.read())


def bundled_large_set(n: int = 11) -> LargeSet:
    """The LS(2,(3,{3,5}),n) shipped with the package (written by ls_search)."""
    name = f"ls{n}.largeset"
    res = files("cwcodes") / "data" / name
    if not res.is_file():
        raise InvalidInputError(f"no bundled large set for n={n}")
    return parse_large_set(res.read_text(encoding="utf-8"))
