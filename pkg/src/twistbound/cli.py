"""Command-line front end.

Subcommands: bound, chars, scan, arch, verify, fetch.  Exit codes follow
one contract everywhere: 0 success, 1 negative verdict (no match, failed
check), 2 usage error, 3 I/O or network error.  Every run prints its
effective configuration to stderr so results are reproducible from the
transcript; ``--json`` switches stdout to a schema-stable JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .arch import (
    char_cond,
    char_from_json,
    cond_rep,
    gamma_shift,
    lemma_bound_check,
    rep_from_json,
    rep_to_json,
    twist_arch,
)
from .bound import BoundMode, admissible_moduli, max_admissible
from .dirichlet import enumerate_characters, primitive_characters
from .factored import factor
from .scan import ScanConfig, Verdict, scan
from .tables import FetchError, TableFormatError, fetch_table, load_table
from .verify import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_IO = 3

_MODES = {m.value: m for m in BoundMode}


def _config_line(args: argparse.Namespace, keys: list[str]) -> None:
    parts = [f"{k.replace('_', '-')}={getattr(args, k)}" for k in keys]
    print(f"# twistbound {args.command} " + " ".join(parts), file=sys.stderr)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_bound(args: argparse.Namespace) -> int:
    _config_line(args, ["n1", "n2", "rank", "mode"])
    mode = _MODES[args.mode]
    try:
        moduli = admissible_moduli(args.n1, args.n2, args.rank, mode)
        biggest = max_admissible(args.n1, args.n2, args.rank, mode)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        doc = {
            "n1": args.n1,
            "n2": args.n2,
            "rank": args.rank,
            "mode": args.mode,
            "assumed_hypothesis": mode.hypothesis,
            "admissible_moduli": [q.value for q in moduli],
            "max_admissible": biggest.value,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"admissible twisting conductors for N1={args.n1}, N2={args.n2}, "
          f"rank n={args.rank}, mode={args.mode}")
    print(f"hypothesis: {mode.hypothesis}")
    for q in moduli:
        print(f"  Q = {q.value:>8}  ({q})")
    print(f"largest admissible Q: {biggest.value}")
    return EXIT_OK


def cmd_chars(args: argparse.Namespace) -> int:
    _config_line(args, ["modulus", "primitive_only"])
    chars = (
        primitive_characters(args.modulus)
        if args.primitive_only
        else enumerate_characters(args.modulus)
    )
    rows = [
        {
            "label": chi.label,
            "conductor": chi.conductor().value,
            "order": chi.order,
            "parity": chi.parity(),
            "primitive": chi.is_primitive(),
        }
        for chi in chars
    ]
    if args.json:
        print(json.dumps({"modulus": args.modulus, "characters": rows}, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"{len(rows)} character(s) mod {args.modulus}")
    print(f"{'label':>10} {'conductor':>10} {'order':>6} {'parity':>7} {'primitive':>10}")
    for row in rows:
        print(
            f"{row['label']:>10} {row['conductor']:>10} {row['order']:>6} "
            f"{row['parity']:>+7} {str(row['primitive']):>10}"
        )
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    _config_line(args, ["f", "g", "mode", "tol", "min_primes", "parity_filter"])
    try:
        f = load_table(args.f)
        g = load_table(args.g)
    except (TableFormatError, FetchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    cfg = ScanConfig(
        tolerance=args.tol,
        min_good_primes=args.min_primes,
        mode=_MODES[args.mode],
        parity_filter=args.parity_filter,
    )
    try:
        result = scan(f, g, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        doc = {
            "f": f.label,
            "g": g.label,
            "mode": args.mode,
            "tolerance": cfg.tolerance,
            "min_good_primes": cfg.min_good_primes,
            "candidates_tested": result.candidates_tested,
            "verdict": result.verdict.value,
            "matches": [
                {
                    "label": m.label,
                    "conductor": m.conductor.value,
                    "max_deviation": m.max_deviation,
                    "primes_tested": m.primes_tested,
                }
                for m in result.matches
            ],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"scan {f.label} vs {g.label}: {result.verdict.value} "
              f"({result.candidates_tested} candidate(s) tested)")
        if result.verdict is Verdict.INSUFFICIENT_DATA:
            print(f"  fewer than {cfg.min_good_primes} shared good primes; "
                  "the evidence floor is a configuration choice, not a theorem")
        for m in result.matches:
            print(f"  chi = {m.label}  conductor {m.conductor.value}  "
                  f"max deviation {m.max_deviation:.3e}  over {m.primes_tested} primes")
    return EXIT_OK if result.verdict is Verdict.MATCH else EXIT_NEGATIVE


def cmd_arch(args: argparse.Namespace) -> int:
    _config_line(args, ["rep", "chi", "allow_outside_strip"])
    try:
        rep_doc = json.loads(Path(args.rep).read_text(encoding="utf-8"))
        chi_doc = json.loads(Path(args.chi).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        rep = rep_from_json(rep_doc)
        chi = char_from_json(chi_doc)
        twisted = twist_arch(rep, chi)
        check = lemma_bound_check(rep, chi, allow_outside_strip=args.allow_outside_strip)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    shifts = [
        {"gamma": g.value, "shift": [s.real, s.imag]}
        for g, s in (gamma_shift(s) for s in twisted.summands)
    ]
    if args.json:
        doc = {
            "rep": rep_to_json(rep),
            "twisted": rep_to_json(twisted),
            "cond_rep": cond_rep(rep),
            "cond_twisted": cond_rep(twisted),
            "char_cond": char_cond(chi),
            "gamma_shifts_twisted": shifts,
            "bound_ratio": check.ratio,
            "bound_holds": check.holds,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"C(sigma)        = {cond_rep(rep):.12g}")
        print(f"C(sigma x chi)  = {cond_rep(twisted):.12g}")
        print(f"C(chi)          = {char_cond(chi):.12g}")
        for s in shifts:
            print(f"  gamma_{s['gamma']} shift {s['shift'][0]:+.6g}{s['shift'][1]:+.6g}i")
        print(f"bound ratio C(chi) / (c*[C1*C2]^(1/n)) = {check.ratio:.12g} "
              f"({'holds' if check.holds else 'VIOLATED'})")
    return EXIT_OK if check.holds else EXIT_NEGATIVE


def cmd_verify(args: argparse.Namespace) -> int:
    _config_line(args, ["suite", "seed"])
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, seed=args.seed)
    all_ok = True
    for report in reports:
        for check in report.checks:
            tag = "PASS" if check.passed else "FAIL"
            line = f"{tag}  [{report.suite}] {check.name}"
            if check.detail and not check.passed:
                line += f"\n      counterexample: {check.detail}"
            print(line)
        print(f"----  [{report.suite}] {'ok' if report.passed else 'FAILED'} "
              f"in {report.elapsed:.2f}s")
        all_ok = all_ok and report.passed
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def cmd_fetch(args: argparse.Namespace) -> int:
    _config_line(args, ["label", "base_url"])
    try:
        path = fetch_table(args.label, base_url=args.base_url)
    except (FetchError, TableFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistbound",
        description="Conductor bounds and twist-equivalence scanning for cusp forms.",
    )
    parser.add_argument("--version", action="version", version=f"twistbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="enumerate admissible twisting conductors")
    p_bound.add_argument("--n1", type=_positive_int, required=True, help="first level")
    p_bound.add_argument("--n2", type=_positive_int, required=True, help="second level")
    p_bound.add_argument("--rank", type=_positive_int, default=2)
    p_bound.add_argument("--mode", choices=sorted(_MODES), default="product")
    p_bound.add_argument("--json", action="store_true")
    p_bound.set_defaults(func=cmd_bound)

    p_chars = sub.add_parser("chars", help="tabulate Dirichlet characters mod Q")
    p_chars.add_argument("--modulus", type=_positive_int, required=True)
    p_chars.add_argument("--primitive-only", action="store_true")
    p_chars.add_argument("--json", action="store_true")
    p_chars.set_defaults(func=cmd_chars)

    p_scan = sub.add_parser("scan", help="scan two eigenvalue tables for twist equivalence")
    p_scan.add_argument("--f", required=True, help="first eigenvalue table (JSON)")
    p_scan.add_argument("--g", required=True, help="second eigenvalue table (JSON)")
    p_scan.add_argument("--mode", choices=sorted(_MODES), default="product")
    p_scan.add_argument("--tol", type=float, default=1e-8)
    p_scan.add_argument("--min-primes", type=_positive_int, default=20)
    p_scan.add_argument("--parity-filter", action="store_true")
    p_scan.add_argument("--json", action="store_true")
    p_scan.set_defaults(func=cmd_scan)

    p_arch = sub.add_parser("arch", help="archimedean conductors and the twist bound")
    p_arch.add_argument("--rep", required=True, help="representation JSON file")
    p_arch.add_argument("--chi", required=True, help="character JSON file")
    p_arch.add_argument("--allow-outside-strip", action="store_true")
    p_arch.add_argument("--json", action="store_true")
    p_arch.set_defaults(func=cmd_arch)

    p_verify = sub.add_parser("verify", help="run the self-verification suites")
    p_verify.add_argument("--suite", choices=(*SUITE_NAMES, "all"), default="all")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_fetch = sub.add_parser("fetch", help="fetch an eigenvalue table into the cache")
    p_fetch.add_argument("--label", required=True)
    p_fetch.add_argument("--base-url", default=None)
    p_fetch.set_defaults(func=cmd_fetch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
