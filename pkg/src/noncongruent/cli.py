"""Command-line front end.

Subcommands: certify, search, verify-table, lemma-check, density.

Exit codes: 0 = ran to completion, 1 = usage or input error, 2 = internal
contradiction (an identity failed or a family member did not certify), so
CI can tell an input problem from a math bug.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .arith import NotSquareFreeError
from .density import DensityReport, count_squarefree_k_primes, family_members, family_asymptotic, landau_asymptotic
from .families import (
    THEOREM_IDS,
    T533_CASES,
    FamilySpec,
    TheoremContradictionError,
    assemble_n,
    check_conditions,
    cross_validate,
    search,
)
from .golden import GOLDEN_ROWS
from .monsky import certify
from .structured import verify_lemma_identities

WORKERS_ENV = "NONCONGRUENT_WORKERS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(message))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _read_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    config: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            config[key.strip()] = value.strip()
    return config


def _resolve_workers(args, config: dict[str, str]) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    if "workers" in config:
        return max(1, int(config["workers"]))
    return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="noncongruent")
    parser.add_argument("--config", help="key=value defaults file; flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="certify integers as non-congruent")
    cert.add_argument("n", nargs="*", help="square-free positive integers")
    cert.add_argument("--file", help="file with one integer per line")
    cert.add_argument("--format", choices=("json", "text"), default=None)
    cert.add_argument("--workers", type=int, default=None)
    cert.add_argument("--mw-rank", type=int, default=None,
                      help="externally computed Mordell-Weil rank annotation")

    srch = sub.add_parser("search", help="search a family for members")
    srch.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    srch.add_argument("--t", type=int, default=1)
    srch.add_argument("--alpha", type=int, choices=(-1, 1), default=None)
    srch.add_argument("--mu", type=int, choices=(-1, 1), default=None)
    srch.add_argument("--mu1", type=int, choices=(-1, 1), default=None)
    srch.add_argument("--mu2", type=int, choices=(-1, 1), default=None)
    srch.add_argument("--case", choices=T533_CASES, default=None)
    srch.add_argument("--bound", type=int, required=True)
    srch.add_argument("--limit", type=int, default=100, help="0 = unlimited")
    srch.add_argument("--validate", action="store_true",
                      help="certify every hit (s(n) = 0)")
    srch.add_argument("--format", choices=("json", "csv"), default=None)

    sub.add_parser("verify-table", help="re-verify the built-in reference members")

    lemma = sub.add_parser("lemma-check", help="verify the structured matrix identities")
    lemma.add_argument("--t-max", type=int, default=64)

    dens = sub.add_parser("density", help="exact counts vs asymptotic formulas")
    dens.add_argument("--x", type=int, required=True)
    dens.add_argument("--k", type=int, default=None)
    dens.add_argument("--theorem", choices=THEOREM_IDS, default=None)
    dens.add_argument("--t", type=int, default=1)
    return parser


# -- certify -----------------------------------------------------------------


def _certify_one(text: str, mw_rank: int | None) -> tuple[bool, dict]:
    try:
        n = int(text)
    except ValueError:
        return False, {"input": text, "error": "not an integer"}
    try:
        cert = certify(n, external_mw_rank=mw_rank)
    except NotSquareFreeError as exc:
        return False, {"input": text, "error": f"not square-free (prime {exc.prime})"}
    except (ValueError, OverflowError) as exc:
        return False, {"input": text, "error": str(exc)}
    return True, cert.to_dict()


def _cmd_certify(args, config) -> int:
    inputs = list(args.n)
    if args.file:
        with open(args.file, encoding="utf-8") as handle:
            inputs.extend(line.strip() for line in handle if line.strip())
    if not inputs:
        return _fail("no inputs given")
    fmt = args.format or config.get("format", "json")
    if fmt not in ("json", "text"):
        return _fail(f"certify does not support format {fmt}")
    workers = _resolve_workers(args, config)
    mw = args.mw_rank

    if workers == 1:
        records = [_certify_one(text, mw) for text in inputs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda text: _certify_one(text, mw), inputs))

    failures = 0
    for ok, payload in records:
        if not ok:
            failures += 1
        if fmt == "json":
            print(json.dumps(payload))
        elif not ok:
            print(f"error: {payload['input']}: {payload['error']}")
        else:
            print(
                f"n={payload['n']} kind={payload['kind']} rank={payload['rank']} "
                f"s={payload['selmer_rank']} certified={payload['certified_noncongruent']}"
            )
    return 1 if failures else 0


# -- search ------------------------------------------------------------------


def _spec_from_args(args) -> FamilySpec:
    return FamilySpec(
        theorem=args.theorem,
        t=args.t,
        alpha=args.alpha,
        mu=args.mu,
        mu1=args.mu1,
        mu2=args.mu2,
        case=args.case,
    )


def _params_dict(spec: FamilySpec) -> dict:
    params = {}
    for name in ("alpha", "mu", "mu1", "mu2"):
        value = spec.param(name)
        if value is not None:
            params[name] = value
    if spec.case:
        params["case"] = spec.case
    return params


def _cmd_search(args, config) -> int:
    try:
        spec = _spec_from_args(args)
    except ValueError as exc:
        return _fail(str(exc))
    fmt = args.format or config.get("format", "json")
    if fmt not in ("json", "csv"):
        return _fail(f"search does not support format {fmt}")
    limit = None if args.limit == 0 else args.limit
    try:
        hits = search(spec, args.bound, limit)
    except ValueError as exc:
        return _fail(str(exc))

    params = _params_dict(spec)
    if fmt == "csv":
        print("theorem,t,params,primes,n,selmer_rank")
    for tup in hits:
        n = assemble_n(spec, tup)
        s_rank: int | None = None
        if args.validate:
            try:
                s_rank = cross_validate(spec, tup).selmer_rank
            except TheoremContradictionError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
        if fmt == "csv":
            param_text = " ".join(f"{k}={v}" for k, v in params.items())
            groups = ";".join(
                ",".join(str(v) for v in getattr(tup, role))
                for role in ("p", "q", "r", "s")
                if getattr(tup, role)
            )
            s_text = "" if s_rank is None else str(s_rank)
            print(f"{spec.theorem},{spec.t},{param_text},{groups},{n},{s_text}")
        else:
            record = {
                "theorem": spec.theorem,
                "t": spec.t,
                "params": params,
                "primes": {
                    role: list(getattr(tup, role))
                    for role in ("p", "q", "r", "s")
                    if getattr(tup, role)
                },
                "n": n,
            }
            if s_rank is not None:
                record["selmer_rank"] = s_rank
            print(json.dumps(record))
    return 0


# -- verify-table --------------------------------------------------------------


def _cmd_verify_table(args, config) -> int:
    all_ok = True
    for row in GOLDEN_ROWS:
        problems = []
        report = check_conditions(row.spec, row.tup)
        if not report.satisfied:
            problems.append(f"conditions: {report.violations[0].label}")
        n = assemble_n(row.spec, row.tup)
        if n != row.n:
            problems.append(f"n mismatch: {n} != {row.n}")
        cert = certify(row.n, external_mw_rank=row.mw_rank)
        if cert.selmer_rank != 0:
            problems.append(f"s(n)={cert.selmer_rank}")
        if cert.external_mw_rank > cert.selmer_rank:
            problems.append("rank annotation exceeds s(n)")
        status = "PASS" if not problems else "FAIL " + "; ".join(problems)
        all_ok &= not problems
        print(f"{status}  theorem={row.spec.theorem} t={row.spec.t} n={row.n}")
    total = len(GOLDEN_ROWS)
    print(f"{'all' if all_ok else 'NOT all'} {total} reference members verified")
    return 0 if all_ok else 2


# -- lemma-check ----------------------------------------------------------------


def _cmd_lemma_check(args, config) -> int:
    if args.t_max < 1:
        return _fail("--t-max must be at least 1")
    failures: dict[str, list[int]] = {}
    names: list[str] = []
    for t in range(1, args.t_max + 1):
        report = verify_lemma_identities(t)
        if t == 1:
            names = [item.name for item in report.items]
        for item in report.items:
            if not item.passed and not item.skipped:
                failures.setdefault(item.name, []).append(t)
    width = max(len(name) for name in names)
    for name in names:
        bad = failures.get(name)
        status = f"FAIL at t={bad}" if bad else f"PASS (t=1..{args.t_max})"
        print(f"{name:<{width}}  {status}")
    return 2 if failures else 0


# -- density ---------------------------------------------------------------------


def _cmd_density(args, config) -> int:
    if (args.k is None) == (args.theorem is None):
        return _fail("give exactly one of --k or --theorem")
    try:
        if args.k is not None:
            exact = count_squarefree_k_primes(args.x, args.k)
            asym = landau_asymptotic(args.x, args.k)
            context = {"k": args.k}
            label = f"square-free with {args.k} prime factors"
        else:
            case = "A(i)" if args.theorem == "533" else None
            spec = FamilySpec(args.theorem, args.t, case=case)
            exact = len(family_members(args.x, spec))
            if args.theorem != "157":
                return _fail("asymptotic constant is only published for family 157")
            asym = family_asymptotic(args.x, args.t)
            context = {"theorem": args.theorem, "t": args.t}
            label = f"family {args.theorem} members (t={args.t})"
    except ValueError as exc:
        return _fail(str(exc))
    report = DensityReport(args.x, exact, asym, exact / asym)
    payload = dict(context)
    payload.update(
        x=report.x,
        exact_count=report.exact_count,
        asymptotic_value=report.asymptotic_value,
        ratio=report.ratio,
    )
    print(json.dumps(payload))
    print(
        f"{label} up to {args.x}: exact {exact}, formula {asym:.1f}, "
        f"ratio {report.ratio:.3f}"
    )
    return 0


_COMMANDS = {
    "certify": _cmd_certify,
    "search": _cmd_search,
    "verify-table": _cmd_verify_table,
    "lemma-check": _cmd_lemma_check,
    "density": _cmd_density,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        config = _read_config(args.config)
    except OSError as exc:
        return _fail(f"cannot read config: {exc}")
    return _COMMANDS[args.command](args, config)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
