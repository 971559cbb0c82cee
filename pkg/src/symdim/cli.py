"""Command-line entry point.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 at
least one bound violation during ``verify``, 2 usage error, 3 oracle out of
range on a directly requested computation, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .bounds import ALL_FAMILIES, best_lower_bound
from .crystal import a_crystal, crystal_graph, is_js, normal_report
from .errors import OracleOutOfRange, SymDimError
from .harness import VerifyConfig, report_to_csv, report_to_json, run_verify
from .mullineux import mullineux
from .partitions import Partition, as_prime
from .specht import OracleCaps, dim_irreducible, minimal_a

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_OUT_OF_RANGE, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("symdim")


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except (SymDimError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from None


def _prime(text: str) -> int:
    try:
        return as_prime(int(text)).p
    except (SymDimError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad prime {text!r}: {exc}") from None


def _prime_list(text: str) -> tuple[int, ...]:
    return tuple(_prime(t) for t in text.split(",") if t.strip())


def _caps(args: argparse.Namespace) -> OracleCaps:
    return OracleCaps(max_tableaux=args.max_tableaux, max_tabloids=args.max_tabloids)


def _add_caps(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--max-tableaux", type=int, default=OracleCaps.max_tableaux)
    sp.add_argument("--max-tabloids", type=int, default=OracleCaps.max_tabloids)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdim", description="Modular irreducibles of symmetric groups: dimensions and lower bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def single(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--p", type=_prime, required=True)
        sp.add_argument("--lambda", dest="lam", type=_partition, required=True, metavar="PARTS")
        return sp

    sp = single("dim", "dimension of D^lambda from the Gram-rank oracle")
    _add_caps(sp)

    sp = single("bound", "evaluate lower bounds for dim D^lambda")
    sp.add_argument("--which", default="all", choices=ALL_FAMILIES + ("all",))
    sp.add_argument("--a-mode", default="safe", choices=("safe", "oracle", "crystal"))
    _add_caps(sp)

    single("mullineux", "label of D^lambda tensored with sign")
    single("js", "whether lambda is a JS partition")

    sp = single("normal", "signature report per residue")
    sp.add_argument("--residue", type=int, default=None, help="only this residue (default: all)")

    sp = single("a", "restriction depth of the first one-dimensional submodule")
    _add_caps(sp)

    sp = sub.add_parser("crystal", help="crystal graph of p-regular partitions up to --max-n")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--format", choices=("dot", "json"), default="dot")

    sp = sub.add_parser("verify", help="sweep every bound against the oracle")
    sp.add_argument("--p", dest="primes", type=_prime_list, default=(2, 3, 5), metavar="P[,P...]")
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--which", dest="bounds", default="all", help="comma-separated families or 'all'")
    sp.add_argument("--a-mode", default="oracle", choices=("safe", "oracle", "crystal"))
    sp.add_argument("--out", default=None, help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=32, help="random words per twisted-trace check")
    sp.add_argument("--cache", default=None, help="JSON-lines dimension cache")
    sp.add_argument("--trust-cache", action="store_true", help="reuse cached dimensions instead of recomputing")
    _add_caps(sp)
    return parser


def _print(obj) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _cmd_bound(args) -> int:
    a_value = minimal_a(args.lam, args.p, _caps(args)) if args.a_mode == "oracle" and args.lam.n else None
    families = ALL_FAMILIES if args.which == "all" else (args.which,)
    report = best_lower_bound(args.lam, args.p, args.a_mode, a_value, families)
    if args.which == "all":
        _print(report.to_json())
        return EXIT_OK
    entry = report.entries[0]
    if not entry.applicable:
        _print(f"n/a: {entry.note}")
    else:
        _print(str(entry.value))
    return EXIT_OK


def _cmd_verify(args) -> int:
    bounds = ALL_FAMILIES if args.bounds == "all" else tuple(b.strip() for b in args.bounds.split(",") if b.strip())
    try:
        cfg = VerifyConfig(
            primes=args.primes,
            max_n=args.max_n,
            bounds=bounds,
            a_mode=args.a_mode,
            caps=_caps(args),
            parallelism=args.jobs,
            seed=args.seed,
            trace_samples=args.samples,
            out=args.out,
            fmt=args.format,
            cache_path=args.cache,
            trust_cache=args.trust_cache,
        )
    except ValueError as exc:
        print(f"symdim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_verify(cfg)
    text = report_to_json(report) if cfg.fmt == "json" else report_to_csv(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report["summary"]
    log.info("%d records, %d bound violations, %d out of range", s["records"], s["bound_violations"], s["out_of_range"])
    for f in report["failures"]:
        print(f"symdim: {f['kind']} failure: {json.dumps(f, sort_keys=True)}", file=sys.stderr)
    return EXIT_VIOLATION if s["bound_violations"] else EXIT_OK


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "dim":
        _print(str(dim_irreducible(args.lam, args.p, _caps(args))))
    elif cmd == "bound":
        return _cmd_bound(args)
    elif cmd == "mullineux":
        _print(str(mullineux(args.lam, args.p)))
    elif cmd == "js":
        _print("true" if is_js(args.lam, args.p) else "false")
    elif cmd == "normal":
        residues = range(args.p) if args.residue is None else [args.residue]
        _print([normal_report(args.lam, i, args.p).to_dict() for i in residues])
    elif cmd == "a":
        _print({"a_oracle": minimal_a(args.lam, args.p, _caps(args)), "a_crystal": a_crystal(args.lam, args.p)})
    elif cmd == "crystal":
        graph = crystal_graph(args.max_n, args.p)
        _print(graph.to_dot() if args.format == "dot" else graph.to_json())
    elif cmd == "verify":
        return _cmd_verify(args)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _dispatch(args)
    except OracleOutOfRange as exc:
        print(f"symdim: out of range: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_RANGE
    except SymDimError as exc:
        print(f"symdim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"symdim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


cli = main

if __name__ == "__main__":
    sys.exit(main())
