"""Command-line front end: verify, eval, gauss.

Exit codes: 0 success (all checks pass), 1 some check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .context import ContextError, FAULTS, check_composition, make_context
from .dsl import DSLError, evaluate
from .gauss import GaussError, gauss_decompose
from .maps import MapError
from .relations import FamilyNotApplicable, RunConfig, full_suite


class UsageError(Exception):
    pass


def _pair(text: str):
    try:
        M, N = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--size expects M,N, got {text!r}") from None
    return M, N


def _common(p: argparse.ArgumentParser, need_mu: bool = False):
    p.add_argument("--p", type=int, default=3, help="prime characteristic (default 3)")
    p.add_argument("--size", default="1,1", help="M,N (default 1,1)")
    p.add_argument("--sigma", help="01-sequence with M zeros and N ones (default 0^M 1^N)")
    p.add_argument("--mu", required=need_mu, help="composition of M+N, e.g. 1,2,1")
    p.add_argument("--series-order", type=int, default=3, dest="R", help="series truncation R (default 3)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superyangian", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run the relation families and invariant suites")
    _common(v)
    v.add_argument("--gen-order", type=int, default=3, dest="R_gen", help="level cap for coefficient families")
    v.add_argument("--families", default="all", help="comma-separated family ids, or 'all'")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--fault", choices=[f for f in FAULTS if f], help=argparse.SUPPRESS)
    v.add_argument("--quiet", action="store_true", help="print only the summary line")

    e = sub.add_parser("eval", help="evaluate an expression to PBW normal form")
    _common(e)
    e.add_argument("--expr", required=True, help='e.g. "[t(1,2,1), t(2,1,1)]"')

    g = sub.add_parser("gauss", help="dump the Gauss decomposition coefficients")
    _common(g, need_mu=True)
    return ap


def _context(args, fault=None):
    M, N = _pair(args.size)
    sigma = args.sigma if args.sigma is not None else "0" * M + "1" * N
    return make_context(args.p, M, N, sigma, fault=fault)


def cmd_verify(args) -> int:
    ctx = _context(args, args.fault)
    mu = check_composition(ctx, args.mu) if args.mu else check_composition(ctx, (1,) * ctx.size)
    if args.R < 1 or args.R_gen < 1 or args.jobs < 1:
        raise UsageError("--series-order, --gen-order and --jobs must be positive")
    fams = () if args.families.strip() == "all" else tuple(f.strip() for f in args.families.split(",") if f.strip())
    cfg = RunConfig(ctx.p, ctx.M, ctx.N, ctx.sigma, mu.parts, args.R, args.R_gen, fams, args.jobs, args.fault)
    report = full_suite(cfg)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=False)
            fh.write("\n")
    if not args.quiet:
        for e in report["families"]:
            status = "PASS" if not e["failures"] else "FAIL"
            line = f"{status} {e['id']:22s} checked={e['checked']}"
            if e["failures"]:
                first = e["failures"][0]
                line += f" failures={len(e['failures'])} first={first['indices']}: {first['delta']}"
            print(line)
    s = report["summary"]
    print(f"{ctx.describe()} mu={mu}: {s['passed']}/{s['families']} passed, {s['checked']} checks, "
          f"{s['failures']} failures")
    return 0 if s["ok"] else 1


def cmd_eval(args) -> int:
    ctx = _context(args)
    mu = check_composition(ctx, args.mu) if args.mu else None
    print(evaluate(args.expr, ctx, mu, args.R).text())
    return 0


def cmd_gauss(args) -> int:
    ctx = _context(args)
    mu = check_composition(ctx, args.mu)
    for line in gauss_decompose(ctx, mu, args.R).dump_lines():
        print(line)
    return 0


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "gauss": cmd_gauss}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except (UsageError, ContextError, DSLError, GaussError, MapError, FamilyNotApplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
