"""Command line front end: ``planar-gw {compute,table,verify,oracle,ring}``.

Exit status is 0 on success, 1 on bad arguments and 2 on a verification
failure or a corrupt cache.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys

from . import cohom_ring, verify
from .exact import format_rational
from .gw_table import CacheIntegrityError, MemoTable, full_table, n_planar
from .p2_oracle import kontsevich_table

log = logging.getLogger(__name__)

CACHE_ENV = "PLANAR_GW_CACHE"
EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="planar-gw", description="Exact genus-0 invariants of planar curves in P^3.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, default_format):
        p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        p.add_argument("--cache", help=f"memo cache file (default: ${CACHE_ENV})")

    p = sub.add_parser("compute", help="print one N_d(r,s,theta)")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--r", type=_nonneg, required=True)
    p.add_argument("--s", type=_nonneg, required=True)
    p.add_argument("--theta", type=_nonneg, required=True)
    common(p, "text")

    p = sub.add_parser("table", help="all balanced N values up to a degree")
    p.add_argument("--dmax", type=_positive, required=True)
    common(p, "text")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--dmax", type=_positive, default=3)
    common(p, "text")

    p = sub.add_parser("oracle", help="Kontsevich numbers of plane curves")
    p.add_argument("--dmax", type=_positive, required=True)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = sub.add_parser("ring", help="pairing matrix, dual basis and diagonal class")
    p.add_argument("--format", choices=("json",), default="json")
    return parser


def _cache_path(args) -> str | None:
    return getattr(args, "cache", None) or os.environ.get(CACHE_ENV) or None


def _open_memo(path: str | None) -> tuple[MemoTable, bool]:
    if path and os.path.exists(path):
        return MemoTable.load(path), True
    return MemoTable(), False


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def _cmd_compute(args, memo, out):
    value = format_rational(n_planar((args.d, args.r, args.s, args.theta), memo))
    if args.format == "json":
        out.write(_dump_json({"d": args.d, "r": args.r, "s": args.s, "theta": args.theta, "value": value}))
    elif args.format == "csv":
        out.write(_csv([(args.d, args.r, args.s, args.theta, value)], ("d", "r", "s", "theta", "value")))
    else:
        out.write(value + "\n")
    return EXIT_OK


def _cmd_table(args, memo, out):
    rows = [(k.d, k.r, k.s, k.theta, format_rational(v)) for k, v in full_table(args.dmax, memo)]
    if args.format == "json":
        out.write(_dump_json([dict(zip(("d", "r", "s", "theta", "value"), row)) for row in rows]))
    elif args.format == "csv":
        out.write(_csv(rows, ("d", "r", "s", "theta", "value")))
    else:
        for d, r, s, t, v in rows:
            out.write(f"N_{d}({r},{s},{t}) = {v}\n")
    return EXIT_OK


def _cmd_verify(args, memo, out, cached):
    records = verify.run_all(args.dmax, memo, cached=cached)
    failed = [r for r in records if not r["ok"]]
    if args.format == "json":
        out.write(_dump_json(records))
    elif args.format == "csv":
        out.write(_csv([(r["check"], "ok" if r["ok"] else "FAIL") for r in records], ("check", "status")))
    else:
        wdvv1 = [r for r in records if r["check"] == "wdvv1"]
        for r in records:
            if r["check"] == "wdvv1":
                continue
            line = f"{'ok' if r['ok'] else 'FAIL':4}  {r['check']}"
            if not r["ok"]:
                line += f"  ({r['failure_count']} failures, e.g. {', '.join(r['failures'][:3])})"
            out.write(line + "\n")
        bad1 = [r for r in wdvv1 if not r["ok"]]
        out.write(f"{'ok' if not bad1 else 'FAIL':4}  wdvv1 ({len(wdvv1) - len(bad1)}/{len(wdvv1)} keys)\n")
        for r in bad1:
            out.write(f"      N_{r['d']}({r['r']},{r['s']},{r['theta']}): lhs={r['lhs']} rhs={r['rhs']}\n")
    if failed:
        first = failed[0]
        name = first["check"]
        if name == "wdvv1":
            name += f" at d={first['d']} r={first['r']} s={first['s']} theta={first['theta']}"
        print(f"verification failed: {len(failed)} check(s); first: {name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_oracle(args, out):
    rows = kontsevich_table(args.dmax)
    if args.format == "json":
        out.write(json.dumps(rows) + "\n")
    elif args.format == "csv":
        out.write(_csv([(r["d"], r["value"]) for r in rows], ("d", "value")))
    else:
        for r in rows:
            out.write(f"K_{r['d']} = {r['value']}\n")
    return EXIT_OK


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_USAGE

    if args.subcommand == "ring":
        out.write(_dump_json(cohom_ring.ring_report()))
        return EXIT_OK
    if args.subcommand == "oracle":
        return _cmd_oracle(args, out)

    path = _cache_path(args)
    try:
        memo, cached = _open_memo(path)
    except (CacheIntegrityError, OSError) as e:
        print(f"cache error: {e}", file=sys.stderr)
        return EXIT_VERIFY
    if cached:
        log.info("loaded %d cached values from %s", len(memo), path)

    try:
        if args.subcommand == "compute":
            code = _cmd_compute(args, memo, out)
        elif args.subcommand == "table":
            code = _cmd_table(args, memo, out)
        else:
            code = _cmd_verify(args, memo, out, cached)
    except CacheIntegrityError as e:
        print(f"cache integrity violation: {e}", file=sys.stderr)
        return EXIT_VERIFY

    if path and code == EXIT_OK:
        memo.save(path)
    return code


def main() -> None:
    logging.basicConfig(level=os.environ.get("PLANAR_GW_LOGLEVEL", "WARNING"))
    sys.exit(run())
