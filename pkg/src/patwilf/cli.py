"""Command-line entry point: ``patwilf <command> ...`` or ``python -m patwilf``.

Exit codes: 0 success, 1 negative answer (not equivalent, additivity
fails), 2 bad arguments, 3 engine contract or budget violation, 4
recursion/oracle mismatch under ``--method both``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from .errors import BudgetError, ContractError, DomainError
from .oracle import st_poly_brute
from .perm import PAT_312, Permutation, block_decompose
from .qpoly import QPoly
from .recursion import (
    MemoTable, mobius_Lr_closed, mobius_poset_oracle, mobius_product_closed, st_poly_rec,
)
from .statistics import dagger_counterexample, get_statistic
from .wilf import check_equiv, search_nontrivial

log = logging.getLogger("patwilf")

EXIT_OK, EXIT_NO, EXIT_ARGS, EXIT_CONTRACT, EXIT_MISMATCH = 0, 1, 2, 3, 4


class ArgError(Exception):
    pass


def _patterns(text: str) -> list[Permutation]:
    # "312,e,1432"; a single comma-separated permutation is not expressible here
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise ArgError("empty pattern list")
    try:
        return [Permutation.parse(p) for p in parts]
    except ValueError as exc:
        raise ArgError(str(exc)) from None


def _stat(name: str):
    try:
        return get_statistic(name)
    except KeyError as exc:
        raise ArgError(exc.args[0]) from None


def _cache_path(arg: Optional[str]) -> Optional[Path]:
    if arg:
        return Path(arg)
    env = os.environ.get("PATWILF_CACHE")
    return Path(env) if env else None


def _threads(arg: Optional[int]) -> int:
    return arg if arg else (os.cpu_count() or 1)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_poly(args) -> int:
    stat = _stat(args.stat)
    patterns = _patterns(args.patterns)
    if args.n < 0:
        raise ArgError("--n must be nonnegative")
    method = args.method or ("rec" if PAT_312 in patterns else "brute")
    cache = _cache_path(args.cache)
    memo = MemoTable.load(cache) if cache else MemoTable()
    workers = _threads(args.threads)

    results: list[QPoly] = []
    for n in range(args.n + 1):
        if method == "brute":
            value = st_poly_brute(n, patterns, stat, workers=workers if n >= 8 else 1)
        else:
            value = st_poly_rec(n, patterns, stat, memo)
            if method == "both":
                other = st_poly_brute(n, patterns, stat, workers=workers if n >= 8 else 1)
                if other != value:
                    log.error("n=%d: recursion gives %s, enumeration gives %s", n, value, other)
                    return EXIT_MISMATCH
        results.append(value)
    if cache:
        memo.save(cache)

    if args.format == "json":
        payload = {
            "stat": stat.name,
            "patterns": [str(p) for p in patterns],
            "results": [{"n": n, "coeffs": p.to_json()} for n, p in enumerate(results)],
        }
        _emit(json.dumps(payload, indent=2))
    elif args.format == "csv":
        lines = ["n,coeffs"] + [f"{n},{' '.join(p.to_json())}" for n, p in enumerate(results)]
        _emit("\n".join(lines))
    else:
        _emit("\n".join(f"{n}: {p}" for n, p in enumerate(results)))
    return EXIT_OK


def cmd_equiv(args) -> int:
    stat = _stat(args.stat)
    cache = _cache_path(args.cache)
    memo = MemoTable.load(cache) if cache else MemoTable()
    report = check_equiv(
        _patterns(args.left), _patterns(args.right), stat, args.max_n,
        memo=memo, workers=_threads(args.threads),
    )
    if cache:
        memo.save(cache)
    if args.format == "json":
        _emit(report.to_json(indent=2))
    else:
        _emit(report.summary())
    return EXIT_OK if report.equivalent else EXIT_NO


def cmd_search(args) -> int:
    stat = _stat(args.stat)
    reports = search_nontrivial(stat, args.max_len, args.max_blocks, args.max_n)
    if args.format == "json":
        _emit(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        lines = [
            f"{','.join(map(str, r.left))} ~ {','.join(map(str, r.right))}  (verified to n={r.max_n})"
            for r in reports
        ]
        _emit("\n".join(lines) if lines else "no nontrivial pairs")
    return EXIT_OK


def cmd_decompose(args) -> int:
    try:
        pi = Permutation.parse(args.perm)
    except ValueError as exc:
        raise ArgError(str(exc)) from None
    blocks = block_decompose(pi).blocks
    _emit("blocks: " + ", ".join(str(b) for b in blocks))
    return EXIT_OK


def cmd_mobius(args) -> int:
    try:
        ranks = [int(r) for r in args.ranks.split(",")]
    except ValueError:
        raise ArgError(f"bad rank list {args.ranks!r}") from None
    if any(r < 1 for r in ranks):
        raise ArgError("ranks must be positive")
    closed = mobius_Lr_closed(ranks[0]) if len(ranks) == 1 else mobius_product_closed(ranks)
    _emit(f"closed={closed} oracle={mobius_poset_oracle(ranks)}")
    return EXIT_OK


def cmd_verify_dagger(args) -> int:
    stat = _stat(args.stat)
    if args.n_max < 1:
        raise ArgError("--n-max must be at least 1")
    bad = dagger_counterexample(stat, args.n_max)
    if bad is None:
        _emit(f"{stat.name}: additive up to n={args.n_max}")
        return EXIT_OK
    _emit(f"{stat.name}: fails; s1={bad.s1} s2={bad.s2} sigma={bad.sigma} "
          f"value={bad.value} predicted={bad.predicted}")
    return EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patwilf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="st-polynomials for n = 0..N")
    p.add_argument("--stat", required=True)
    p.add_argument("--patterns", required=True, help='e.g. "312,1432"; "e" is the empty pattern')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("rec", "brute", "both"))
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--cache")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("equiv", help="compare two pattern sets")
    p.add_argument("--stat", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("search", help="nontrivial pairs from block transposition")
    p.add_argument("--stat", required=True)
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--max-blocks", type=int, default=2)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("decompose", help="block decomposition of a 312-avoider")
    p.add_argument("perm")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("mobius", help="closed-form vs poset Möbius value")
    p.add_argument("--ranks", required=True, help="comma-separated, e.g. 3 or 2,2")
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("verify-dagger", help="check additivity of a statistic")
    p.add_argument("--stat", required=True)
    p.add_argument("--n-max", type=int, default=7)
    p.set_defaults(func=cmd_verify_dagger)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ArgError as exc:
        log.error("%s", exc)
        return EXIT_ARGS
    except (ContractError, BudgetError, DomainError) as exc:
        log.error("%s", exc)
        return EXIT_CONTRACT


if __name__ == "__main__":
    raise SystemExit(main())
