"""Command-line entry point.

Graphs travel as graph6 lines on stdin/stdout; reports go to stdout and
diagnostics to stderr. Exit codes: 0 success, 1 failed check or bad input,
2 usage error, 3 scope refused by the enumeration guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .graph import (
    GraphError,
    PathFriendshipSpec,
    StarlikeSpec,
    gen_cycle,
    gen_friendship,
    gen_Gabcd,
    gen_lollipop,
    gen_path,
    gen_path_friendship,
    gen_star,
    gen_starlike,
    gen_windwheel,
)
from .graph6 import Graph6Error, ingest_graph6, to_graph6
from .search import MAX_ENUM_ORDER, BudgetExceeded, EnumFilter, certify_dls, cospectral_classes, enumerate_graphs
from .spectral import TAU_NUM, spectrum_record

log = logging.getLogger("lapspec")

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
ALL_LEVELS_ORDER = 9

FAMILIES = ("path", "cycle", "star", "friendship", "starlike", "path-friendship", "lollipop", "windwheel", "gabcd")


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _cache_dir(args) -> Path | None:
    from .search import default_cache_dir

    return Path(args.cache_dir) if args.cache_dir else default_cache_dir()


def _need(parser, args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        parser.error(f"{args.family} needs " + ", ".join("--" + n for n in missing))


def cmd_generate(args, parser) -> int:
    fam = args.family
    try:
        if fam in ("path", "cycle", "star"):
            _need(parser, args, "n")
            g = {"path": gen_path, "cycle": gen_cycle, "star": lambda n: gen_star(n - 1)}[fam](args.n)
        elif fam == "friendship":
            _need(parser, args, "s")
            g = gen_friendship(args.s)
        elif fam == "starlike":
            _need(parser, args, "t")
            g = gen_starlike(StarlikeSpec(tuple(args.t)))
        elif fam == "path-friendship":
            _need(parser, args, "s")
            g = gen_path_friendship(PathFriendshipSpec(args.s, tuple(args.t or ())))
        elif fam == "lollipop":
            _need(parser, args, "n", "p")
            g = gen_lollipop(args.n, args.p)
        elif fam == "windwheel":
            _need(parser, args, "s", "t")
            if len(args.t) != 1:
                parser.error("windwheel takes a single --t")
            g = gen_windwheel(args.s, args.t[0])
        else:
            _need(parser, args, "a", "b", "c", "d")
            g = gen_Gabcd(args.a, args.b, args.c, args.d)
    except (GraphError, ValueError) as exc:
        parser.error(f"{fam}: {exc}")
    print(to_graph6(g))
    return 0


_CSV_FIELDS = ["graph6", "n", "m", "charpoly", "mu", "spanning_trees", "components", "sum_sq_degrees", "bounds_ok"]


def cmd_spectrum(args, parser) -> int:
    writer = None
    if args.format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=_CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
    try:
        for g in ingest_graph6(args.input, lenient=args.lenient):
            rec = spectrum_record(g, args.tau)
            if args.format == "json":
                print(json.dumps(rec, separators=(",", ":")))
            elif writer is not None:
                inv = rec["invariants"]
                writer.writerow(
                    {
                        "graph6": rec["graph6"],
                        "n": rec["n"],
                        "m": rec["m"],
                        "charpoly": " ".join(rec["charpoly"]),
                        "mu": " ".join(repr(v) for v in rec["mu"]),
                        "spanning_trees": inv["spanning_trees"],
                        "components": inv["components"],
                        "sum_sq_degrees": inv["sum_sq_degrees"],
                        "bounds_ok": all(v is not False for v in rec["bounds"]["checks"].values()),
                    }
                )
            else:
                print(f"{rec['graph6']}  n={rec['n']} m={rec['m']}")
                print("  charpoly (low->high): " + " ".join(rec["charpoly"]))
                print("  mu: " + " ".join(f"{v:.10f}" for v in rec["mu"]))
                print("  invariants: " + " ".join(f"{k}={v}" for k, v in rec["invariants"].items()))
            sys.stdout.flush()
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return 0


def cmd_search(args, parser) -> int:
    if args.n is None:
        parser.error("search needs --n")
    filt = EnumFilter(args.n, args.m, connected_only=args.connected)
    if args.m is None and args.n > ALL_LEVELS_ORDER and not args.force:
        # all edge counts at once is far more work than a single level
        raise BudgetExceeded(f"search over every edge count at n={args.n} exceeds guard n <= {ALL_LEVELS_ORDER}; give --m")
    classes = cospectral_classes(enumerate_graphs(filt, workers=args.workers, force=args.force))
    if args.format == "json":
        for c in classes:
            print(c.to_json())
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["digest", "size", "charpoly", "members"])
        for c in classes:
            w.writerow([c.digest, len(c.members), " ".join(map(str, c.charpoly)), " ".join(c.members)])
    else:
        for c in classes:
            print(f"{c.digest} {len(c.members)} {' '.join(c.members)}")
    log.info("%d classes, %d graphs, %d with a mate", len(classes), sum(len(c.members) for c in classes),
             sum(len(c.members) for c in classes if len(c.members) > 1))
    return 0


def cmd_certify(args, parser) -> int:
    source = None if args.graph is None or args.graph == "-" else args.graph
    lines = [source] if source is not None and not Path(source).exists() else None
    try:
        if lines is not None:
            from .graph6 import read_graph6

            graphs = list(read_graph6(lines))
        else:
            graphs = ingest_graph6(source)
        for g in graphs:
            cert = certify_dls(g, _cache_dir(args), args.workers, args.force)
            print(json.dumps(cert.to_dict(), separators=(",", ":")))
            sys.stdout.flush()
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return 0


def cmd_verify(args, parser) -> int:
    from .verify import CHECKS, VerifyConfig, run_checks

    only = [x for part in args.only or [] for x in part.split(",") if x]
    unknown = [x for x in only if x not in CHECKS]
    if unknown:
        parser.error(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    cfg = VerifyConfig(workers=args.workers, max_n=args.max_n, cache_dir=_cache_dir(args))
    if args.tau is not None:
        cfg.tau = args.tau
        cfg.tau_check = max(cfg.tau_check, args.tau)
    records = run_checks(cfg, only or None)
    failed = [r for r in records if not r["pass"]]
    for r in records:
        print(json.dumps(r, separators=(",", ":"), default=str))
    for r in failed:
        print(f"FAILED {r['check']}: {json.dumps(r['measured'], default=str)[:2000]}", file=sys.stderr)
    return EXIT_FAIL if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lapspec", description="Laplacian spectra, cospectral search and path-friendship checks.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, workers=False, fmt=None, cache=False, tau=False, scope=False):
        if workers:
            p.add_argument("--workers", type=int, default=1, help="worker processes (output does not depend on this)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv", "plain"), default=fmt)
        if cache:
            p.add_argument("--cache-dir", default=None, help="class cache root (default: $DLS_CACHE_DIR)")
        if tau:
            p.add_argument("--tau", type=_positive_float, default=None if tau == "optional" else TAU_NUM)
        if scope:
            p.add_argument("--force", action="store_true", help=f"allow n > {MAX_ENUM_ORDER}")

    g = sub.add_parser("generate", help="emit one graph of a named family as graph6")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--t", type=int, nargs="+")
    g.add_argument("--p", type=int)
    for name in "abcd":
        g.add_argument(f"--{name}", type=int)

    sp = sub.add_parser("spectrum", help="polynomial, eigenvalues, invariants and bounds per input graph")
    sp.add_argument("input", nargs="?", default=None, help="graph6 file (default: stdin)")
    sp.add_argument("--lenient", action="store_true", help="skip malformed lines instead of stopping")
    common(sp, fmt="json", tau=True)

    se = sub.add_parser("search", help="cospectral classes over an enumerated scope")
    se.add_argument("--n", type=int)
    se.add_argument("--m", type=int)
    se.add_argument("--connected", action="store_true")
    common(se, workers=True, fmt="json", scope=True)

    ce = sub.add_parser("certify", help="DLS-at-scope certificate for each input graph")
    ce.add_argument("graph", nargs="?", default=None, help="graph6 string or file (default: stdin)")
    common(ce, workers=True, cache=True, scope=True)

    vp = sub.add_parser("verify-paper", help="run the verification suite; exit 0 iff every check passes")
    vp.add_argument("--only", action="append", help="comma-separated check ids")
    vp.add_argument("--max-n", type=int, default=None, help="cap every scope at this order")
    common(vp, workers=True, cache=True, tau="optional")
    return parser


COMMANDS = {
    "generate": cmd_generate,
    "spectrum": cmd_spectrum,
    "search": cmd_search,
    "certify": cmd_certify,
    "verify-paper": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    try:
        return COMMANDS[args.command](args, parser)
    except BudgetExceeded as exc:
        print(f"refused: {exc} (use --force)", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
