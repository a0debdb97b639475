"""Command line interface: ``holocount compute | sweep | verify | catalog``."""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Optional, Sequence

from .catalog import build_group, catalog, read_table_file
from .crossed import MODES, RegReport, count_reg
from .groups import Group, GroupError
from .morphisms import CACHE_ENV
from .suites import SUITES, Profile, run_suite

EXIT_OK, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2
DEFAULT_BUDGET = 300.0
EXTENDED_BUDGET = 4 * 3600.0

CSV_FIELDS = ["g", "n", "order", "aut_g", "aut_n", "reg_count", "e", "subgroups", "rho",
              "lambda", "other", "mode", "prune", "authoritative", "pruned_branches",
              "action_classes", "elapsed_ms"]


class _Registry:
    """Catalog specs plus groups loaded with ``--table``."""

    def __init__(self, tables: Sequence[str]):
        self.extra: dict[str, Group] = {}
        for path in tables:
            G = read_table_file(path)
            self.extra[G.label] = G

    def resolve(self, spec: str) -> Group:
        if spec in self.extra:
            return self.extra[spec]
        return build_group(spec)

    def of_order(self, n: int) -> list[Group]:
        specs, _ = catalog(n)[n]
        out = [build_group(s) for s in specs]
        out += [G for G in self.extra.values() if G.order == n]
        return out


def _format(reports: list[RegReport], fmt: str, witnesses: bool) -> str:
    if fmt == "json":
        return "\n".join(r.to_json(with_witnesses=witnesses) for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in reports:
            d = r.to_dict()
            d.update(d.pop("classification"))
            w.writerow({k: d[k] for k in CSV_FIELDS})
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in reports:
        c = r.classification
        lines.append(f"e({r.g}, {r.n}) = {r.e}  |Reg| = {r.reg_count}  subgroups = {r.subgroups}"
                     f"  rho/lambda/other = {c['rho']}/{c['lambda']}/{c['other']}"
                     f"  [{r.mode}, {r.elapsed_ms} ms{'' if r.authoritative else ', PARTIAL'}]")
    return "\n".join(lines)


def _run_pair(G: Group, N: Group, args) -> RegReport:
    return count_reg(G, N, mode=args.mode, prune=args.prune, budget=args.budget,
                     workers=args.workers, witness_cap=args.witnesses,
                     assert_lemma=args.assert_lemma)


def cmd_compute(args, reg: _Registry) -> int:
    G, N = reg.resolve(args.g), reg.resolve(args.n)
    if G.order != N.order:
        print(f"error: |G| = {G.order} but |N| = {N.order}", file=sys.stderr)
        return EXIT_ERROR
    r = _run_pair(G, N, args)
    print(_format([r], args.format, args.show_witnesses))
    return EXIT_OK if r.authoritative else EXIT_BUDGET


def cmd_sweep(args, reg: _Registry) -> int:
    orders = args.orders or list(range(1, args.max_order + 1))
    reports = []
    for n in orders:
        groups = reg.of_order(n)
        for N in groups:
            for G in groups:
                reports.append(_run_pair(G, N, args))
    print(_format(reports, args.format, args.show_witnesses))
    return EXIT_OK if all(r.authoritative for r in reports) else EXIT_BUDGET


def cmd_verify(args, reg: _Registry) -> int:
    prof = Profile(extended=args.extended, prune=args.prune, budget=args.budget,
                   workers=args.workers, mode=args.mode)
    checks = run_suite(args.suite, prof)
    for c in checks:
        print(f"{c.line()} ({c.seconds:.1f}s)")
    failed = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} passed; {prof.lemma_checks} reduction checks")
    return EXIT_OK if not failed else EXIT_ERROR


def cmd_catalog(args, reg: _Registry) -> int:
    listing = catalog(args.order)
    for n, (specs, complete) in listing.items():
        extra = [G.label for G in reg.extra.values() if G.order == n]
        flag = "complete" if complete else "partial"
        print(f"{n}\t{flag}\t{' '.join(specs + extra)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holocount",
                                description="Count regular subgroups of holomorphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prune", dest="prune", action="store_true", default=True,
                        help="quotient pruning (default)")
    common.add_argument("--no-prune", dest="prune", action="store_false")
    common.add_argument("--budget", type=float, default=None, metavar="SECONDS",
                        help=f"time budget per pair (default {DEFAULT_BUDGET:.0f})")
    common.add_argument("--workers", type=int, default=1, metavar="K")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--witnesses", type=int, default=10_000, metavar="CAP",
                        help="how many (f, g) witnesses to retain")
    common.add_argument("--show-witnesses", action="store_true",
                        help="include retained witnesses in JSON output")
    common.add_argument("--table", action="append", default=[], metavar="FILE",
                        help="load an extra group from a table file (repeatable)")
    common.add_argument("--mode", choices=list(MODES), default="auto",
                        help="raw pair enumeration, Aut(N)-orbit walk, or automatic choice")
    common.add_argument("--assert-lemma", action="store_true",
                        help="check the quotient reduction clauses on every solution")
    common.add_argument("--cache-dir", default=None,
                        help=f"automorphism cache directory (sets {CACHE_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="e(G, N) for one pair")
    c.add_argument("g")
    c.add_argument("n")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("sweep", parents=[common], help="all catalog pairs of the given orders")
    s.add_argument("orders", nargs="*", type=int)
    s.add_argument("--max-order", type=int, default=8)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", parents=[common], help="run a named verification battery")
    v.add_argument("suite", choices=list(SUITES))
    v.add_argument("--extended", action="store_true", help="include the slow profile")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("catalog", parents=[common], help="list catalog groups")
    k.add_argument("order", nargs="?", type=int)
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None:
        extended = getattr(args, "extended", False)
        args.budget = EXTENDED_BUDGET if extended else DEFAULT_BUDGET
    if args.budget <= 0 or args.workers < 1 or args.witnesses < 0:
        print("error: budget and workers must be positive", file=sys.stderr)
        return EXIT_ERROR
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
    try:
        reg = _Registry(args.table)
        return args.func(args, reg)
    except (GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
