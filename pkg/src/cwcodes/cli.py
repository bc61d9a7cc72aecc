"""
Command-line interface.

Exit codes: 0 success, 1 verification or optimality failure (including a
search that produced nothing), 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from math import comb

from . import bounds
from .core import ConstantWeightCode, read_code, verify_code, write_code
from .errors import InvalidInputError
from .largeset import (
    LargeSet,
    construct_from_ls,
    ls_search,
    read_large_set,
    trivial_large_set,
    verify_large_set,
    write_large_set,
)
from .lex import KSubset, rank, unrank
from .oracle import exact_a
from .seqconstruct import build_m, code_of, fill, format_sequence, gen_y
from .shorten import shorten_optimal

OK, FAILED, BAD_INPUT = 0, 1, 2

ORACLE_LIMIT = 3000  # (q-1)^3 * C(n,3) vertices


class Failure(Exception):
    """A produced object failed verification."""


def _out(line: str = "") -> None:
    print(line)


# ---------------------------------------------------------------------------
# constructions shared by `construct` and `table`
# ---------------------------------------------------------------------------

def pick_method(n: int, q: int) -> str:
    if n == q and q >= 3:
        return "sequence"
    if n % 6 == 5 and 2 <= q <= n - 1:
        return "largeset"
    if n % 6 == 4 and 2 <= q <= n:
        return "shorten"
    raise InvalidInputError(
        f"(n, q) = ({n}, {q}) is covered only by the earlier constructions from large sets "
        "of Steiner triple systems (n ≡ 0, 1, 2, 3 mod 6, q < n), which are not implemented here")


def _large_set_for(n: int, ls_file: str | None, time_limit: float,
                   cache: dict | None = None) -> LargeSet:
    if ls_file:
        ls = read_large_set(ls_file)
        if ls.n != n:
            raise InvalidInputError(f"large set file is for n={ls.n}, need n={n}")
        report = verify_large_set(ls)
        if not report:
            raise Failure(f"large set file fails verification: {report}")
        return ls
    if n == 5:
        return trivial_large_set()
    if cache is not None and n in cache:
        if cache[n] is None:
            raise Failure(f"no large set of order {n} available")
        return cache[n]
    result = ls_search(n, time_limit)
    if cache is not None:
        cache[n] = result.large_set
    if not result:
        raise Failure(f"large set search for n={n} gave up: {result.status} "
                      f"after {result.nodes} nodes, {result.elapsed:.1f}s")
    return result.large_set


def construct(n: int, q: int, method: str = "auto", ls_file: str | None = None,
              time_limit: float = 60.0, cache: dict | None = None) -> tuple[ConstantWeightCode, str]:
    if method == "auto":
        method = pick_method(n, q)
    if method == "sequence":
        if n != q or q < 3:
            raise InvalidInputError("method sequence needs n = q >= 3")
        code = code_of(fill(build_m(q), gen_y(q))).with_d(4)
    elif method == "largeset":
        if n % 6 != 5 or not 2 <= q <= n - 1:
            raise InvalidInputError("method largeset needs n ≡ 5 (mod 6) and 2 <= q <= n-1")
        code = construct_from_ls(_large_set_for(n, ls_file, time_limit, cache), q)
    elif method == "shorten":
        if n % 6 != 4 or not 2 <= q <= n:
            raise InvalidInputError("method shorten needs n ≡ 4 (mod 6) and 2 <= q <= n")
        parent = construct_from_ls(_large_set_for(n + 1, ls_file, time_limit, cache), q)
        code = shorten_optimal(parent)
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    report = verify_code(code)
    if not report:
        raise Failure(f"constructed code fails verification: {report}")
    return code, method


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bound(args) -> int:
    for line in bounds.bound_report(args.n, args.q).lines():
        _out(line)
    return OK


def cmd_sequence(args) -> int:
    if args.compact and args.q > 10:
        raise InvalidInputError("--compact is only defined for q <= 10")
    _out(format_sequence(gen_y(args.q), compact=args.compact))
    return OK


def cmd_construct(args) -> int:
    code, method = construct(args.n, args.q, args.method, args.ls, args.time_limit)
    if args.out:
        write_code(code, args.out)
    target = bounds.main_theorem_value(args.n, args.q)
    _out(f"method={method}")
    _out(f"size={len(code)}")
    _out(f"main_value={target}")
    _out(f"optimal={'yes' if len(code) == target else 'no'}")
    return OK


def cmd_verify(args) -> int:
    report = verify_code(read_code(args.inp))
    _out(str(report))
    return OK if report else FAILED


def _parse_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InvalidInputError(f"bad set {text!r}") from exc


def cmd_rank(args) -> int:
    elems = _parse_set(args.set)
    _out(str(rank(KSubset(args.n, elems))))
    return OK


def cmd_unrank(args) -> int:
    _out(",".join(map(str, unrank(args.n, args.k, args.r).elements)))
    return OK


def cmd_oracle(args) -> int:
    result = exact_a(args.n, args.q, args.time_limit)
    _out(f"exact_size={result.exact_size}")
    _out(f"proved_optimal={'yes' if result.proved_optimal else 'no'}")
    _out(f"main_value={bounds.main_theorem_value(args.n, args.q)}")
    _out(f"nodes={result.nodes_explored}")
    _out(f"elapsed={result.elapsed:.3f}")
    if args.out:
        write_code(result.witness, args.out)
    if result.proved_optimal and result.exact_size != bounds.main_theorem_value(args.n, args.q):
        return FAILED
    return OK


def cmd_ls_verify(args) -> int:
    report = verify_large_set(read_large_set(args.inp))
    _out(str(report))
    return OK if report else FAILED


def cmd_ls_search(args) -> int:
    result = ls_search(args.n, args.time_limit, seed=args.seed)
    _out(f"status={result.status}")
    _out(f"nodes={result.nodes}")
    _out(f"elapsed={result.elapsed:.3f}")
    if result.message:
        _out(f"note={result.message}")
    if not result:
        return FAILED
    if args.out:
        write_large_set(result.large_set, args.out)
    return OK


def table_rows(nmax: int, qmax: int, time_limit: float = 10.0):
    """Yield ``(n, q, value, status)`` for 3 <= n <= nmax, 2 <= q <= qmax."""
    cache: dict[int, LargeSet | None] = {}
    for n in range(3, nmax + 1):
        for q in range(2, qmax + 1):
            value = bounds.main_theorem_value(n, q)
            status = None
            try:
                pick_method(n, q)
                code, _ = construct(n, q, "auto", None, time_limit, cache)
            except (InvalidInputError, Failure):
                code = None
            if code is not None:
                if len(code) != value:
                    raise Failure(f"({n},{q}): constructed {len(code)} words, expected {value}")
                status = "constructed"
            elif (q - 1) ** 3 * comb(n, 3) <= ORACLE_LIMIT:
                result = exact_a(n, q, time_limit)
                if result.proved_optimal:
                    if result.exact_size != value:
                        raise Failure(f"({n},{q}): oracle found {result.exact_size}, expected {value}")
                    status = "oracle"
            yield n, q, value, status or "formula-only"


def cmd_table(args) -> int:
    lines = ["n,q,value,status"]
    lines += [f"{n},{q},{v},{s}" for n, q, v, s in table_rows(args.nmax, args.qmax, args.time_limit)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cwcodes", description="Optimal q-ary (n,4,3) codes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bound", help="U_q(n), C(n,3) and the exact value A_q(n,4,3)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("sequence", help="print the fill sequence y(q)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--compact", action="store_true", help="digit string (q <= 10)")
    s.set_defaults(func=cmd_sequence)

    s = sub.add_parser("construct", help="build and verify an optimal code")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--method", choices=["auto", "sequence", "largeset", "shorten"], default="auto")
    s.add_argument("--ls", help="largeset v1 file to build from")
    s.add_argument("--out", help="write the code as a cwcode v1 file")
    s.add_argument("--time-limit", type=float, default=60.0)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="verify a cwcode v1 file")
    s.add_argument("--in", dest="inp", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("rank", help="lex rank of a k-subset of [n]")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--set", required=True, help="comma-separated, e.g. 1,3,5")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("unrank", help="k-subset of [n] at a lex rank")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_unrank)

    s = sub.add_parser("oracle", help="exact A_q(n,4,3) by clique search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--out", help="write the witness as a cwcode v1 file")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("ls-verify", help="verify a largeset v1 file")
    s.add_argument("--in", dest="inp", required=True)
    s.set_defaults(func=cmd_ls_verify)

    s = sub.add_parser("ls-search", help="search for an LS(2,(3,{3,5}),n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--time-limit", type=float, default=60.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write the large set as a largeset v1 file")
    s.set_defaults(func=cmd_ls_search)

    s = sub.add_parser("table", help="CSV of A_q(n,4,3) with how each cell is backed")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--qmax", type=int, required=True)
    s.add_argument("--time-limit", type=float, default=10.0)
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.set_defaults(func=cmd_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (Failure, RuntimeError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
