"""artin-bound command line.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
config error, 3 resource error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from artin_bound import explicit_bounds as eb
from artin_bound.census import (
    InsufficientCensus,
    ResourceError,
    build_census,
    cached_prime_table,
    kth_prime_norm,
    snapshot,
    write_census_csv,
)
from artin_bound.field_models import FieldError, class_context, parse_class, parse_family
from artin_bound.verify import COMMANDS, ConfigError, SweepConfig, selfcheck

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _add_field_args(p: argparse.ArgumentParser, raw: bool = False) -> None:
    g = p.add_mutually_exclusive_group(required=not raw)
    g.add_argument("--rational", action="store_true", help="the field Q")
    g.add_argument("--quadratic", type=int, metavar="D", help="Q(sqrt D), D squarefree")
    g.add_argument("--cyclotomic", type=int, metavar="M", help="Q(zeta_M), M != 2 mod 4")
    p.add_argument("--class", dest="cls", default=None,
                   help="class element: +1/-1 or trivial/nontrivial (quadratic), a mod M (cyclotomic)")


def _family(args):
    if args.rational:
        return parse_family("rational")
    if args.quadratic is not None:
        return parse_family("quadratic", args.quadratic)
    if args.cyclotomic is not None:
        return parse_family("cyclotomic", args.cyclotomic)
    return None


def _add_sweep_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value file; flags override it")
    p.add_argument("--quadratic", metavar="LO-HI", help="range of |d| (or 'none')")
    p.add_argument("--cyclotomic", metavar="LO-HI", help="range of m (or 'none')")
    p.add_argument("--rational", choices=("yes", "no"), help="include Q")
    p.add_argument("--k-max", help="largest k checked")
    p.add_argument("--k-max-cyclotomic", help="largest k for cyclotomic fields")
    p.add_argument("--sieve-limit", help="sieve limit X; x-sweeps run to X")
    p.add_argument("--grid-step", help="spacing of the regular x grid")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--ideals-of", choices=("K", "L"))
    p.add_argument("--cache", help="directory for the prime-table cache")
    p.add_argument("--samples", help="random samples for the log-product battery")
    p.add_argument("--seed")
    p.add_argument("--tolerance")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("-q", "--quiet", action="store_true", help="no summary on stderr")


_SWEEP_KEYS = ("quadratic", "cyclotomic", "rational", "k_max", "k_max_cyclotomic", "sieve_limit",
               "grid_step", "format", "ideals_of", "cache", "samples", "seed", "tolerance")


def _sweep_config(args) -> SweepConfig:
    base = SweepConfig.from_file(args.config) if args.config else SweepConfig()
    flags = {k: str(getattr(args, k)) for k in _SWEEP_KEYS if getattr(args, k) is not None}
    return SweepConfig.from_mapping(flags, base)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artin-bound",
        description="GRH-conditional bounds for prime ideals with a given Artin symbol, "
                    "checked against exact prime censuses of abelian fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate the norm bound for the (k+1)-st prime ideal")
    _add_field_args(p, raw=True)
    p.add_argument("--log-disc", type=float, help="raw input: log |D_L|")
    p.add_argument("--degree", type=int, help="raw input: n_L")
    p.add_argument("--g-c", type=int, default=1, help="raw input: |G|/|C|")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("census", help="export the prime-power events of a class")
    _add_field_args(p)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--at", type=float, action="append", help="print a snapshot at x instead")
    p.add_argument("--k", type=int, action="append", help="print the (k+1)-st prime ideal norm")
    p.add_argument("--ideals-of", choices=("K", "L"), default="K")
    p.add_argument("--out")

    for name in ("verify-theorem", "verify-psi", "verify-chain", "selfcheck"):
        _add_sweep_args(sub.add_parser(name, help=f"run the {name} battery"))
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    fam = _family(args)
    if fam is not None:
        spec = class_context(fam, parse_class(fam, args.cls))
        inputs = eb.BoundInputs.from_spec(spec, args.k)
        label = spec.label
    else:
        if args.log_disc is None or args.degree is None:
            raise ConfigError("give a field (--rational/--quadratic/--cyclotomic) or --log-disc and --degree")
        inputs = eb.BoundInputs(args.log_disc, args.degree, 0, args.g_c, args.k)
        label = f"log D={args.log_disc:.15g}, n={args.degree}"
    b = eb.sqrt_norm_bound(inputs)
    if args.format == "json":
        doc = {"field": label, "g_c": inputs.g_c, "k": inputs.k, "log_disc": inputs.log_disc,
               "terms": {k: float(f"{v:.15g}") for k, v in b.terms},
               "sqrt_x": float(f"{b.total:.15g}"), "x": float(f"{b.square:.15g}"),
               "floor_x": math.floor(b.square)}
        print(json.dumps(doc, indent=1))
        return EXIT_OK
    print(f"field    {label}")
    print(f"g_c      {inputs.g_c}")
    print(f"k        {inputs.k}")
    for name, v in b.terms:
        print(f"  {name:<10} {v:.15g}")
    print(f"sqrt(x)  {b.total:.15g}")
    print(f"x        {b.square:.15g}")
    print(f"floor(x) {math.floor(b.square)}")
    return EXIT_OK


def cmd_census(args) -> int:
    fam = _family(args)
    spec = class_context(fam, parse_class(fam, args.cls))
    table = cached_prime_table(max(args.limit, 2))
    census = build_census(spec, args.limit, table)
    if args.at or args.k:
        out = {"field": spec.label, "limit": args.limit}
        if args.at:
            snaps = []
            for x in args.at:
                s = snapshot(census, x)
                snaps.append({k: (str(v) if k == "pi_theta" else v) for k, v in vars(s).items()})
            out["snapshots"] = snaps
        if args.k:
            out["kth_prime_norm"] = {str(k): _kth(census, k, args.ideals_of) for k in args.k}
        _emit(json.dumps(out, indent=1) + "\n", args.out)
        return EXIT_OK
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_census_csv(census, fh)
    else:
        write_census_csv(census, sys.stdout)
    return EXIT_OK


def _kth(census, k: int, ideals_of: str):
    try:
        return kth_prime_norm(census, k, ideals_of)
    except InsufficientCensus:
        return None


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    t0 = time.perf_counter()
    report = selfcheck(cfg) if args.command == "selfcheck" else COMMANDS[args.command](cfg)
    _emit(report.render(cfg.format), args.out)
    if not args.quiet:
        for line in report.summary_lines():
            print(line, file=sys.stderr)
        print(f"wall time {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bound":
            return cmd_bound(args)
        if args.command == "census":
            return cmd_census(args)
        return cmd_sweep(args)
    except (ConfigError, FieldError, InsufficientCensus) as exc:
        print(f"artin-bound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"artin-bound: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
