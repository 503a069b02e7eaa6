"""Command-line front end: tables, verification suites, asymptotics, distributions.

Everything is emitted as data (CSV, JSON or plain text) for downstream use.

Exit codes: 0 success, 1 a check or route comparison failed, 2 usage error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from . import asymptotics as asy
from . import genfun, verify
from .genfun import ORACLE_MAX_N, Route
from .series import partition_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_CHECKPOINTS = (250, 1000, 4000)


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {v}")
    return v


def _checkpoints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad checkpoint list: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("checkpoints must be positive integers")
    return values


def default_threads() -> int:
    env = os.environ.get("UNIMODAL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json", "text"], default=None)
    common.add_argument("--output", "-o", default="-", help="output path ('-' for stdout)")
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes (default: $UNIMODAL_THREADS or the CPU count)")
    common.add_argument("--deterministic", action="store_true",
                        help="omit the timestamp field from JSON output")

    p = argparse.ArgumentParser(prog="unimodal-rank", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="u(m, n) table")
    t.add_argument("--max-n", type=_positive_int, default=20)
    t.add_argument("--max-m", type=_nonneg_int, default=None)
    t.add_argument("--route", choices=[r.value for r in Route] + ["all"], default=Route.THETA.value)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", default=None,
                   help="suite name, repeatable or comma-separated; 'all' for every suite. "
                   f"Known: {', '.join(verify.SUITES)}")
    v.add_argument("--max-n", type=_positive_int, default=500)
    v.add_argument("--k-max", type=_nonneg_int, default=3)
    v.add_argument("--checkpoints", type=_checkpoints, default=None)

    a = sub.add_parser("asymptote", parents=[common], help="exact values against asymptotic formulas")
    a.add_argument("--checkpoints", type=_checkpoints, default=DEFAULT_CHECKPOINTS)
    a.add_argument("--max-m", type=_nonneg_int, default=3)

    d = sub.add_parser("dist", parents=[common], help="normalized rank distribution at size n")
    d.add_argument("--n", type=_positive_int, default=1000)

    m = sub.add_parser("moments", parents=[common], help="exact even moments u_2k(n)")
    m.add_argument("--max-n", type=_positive_int, default=100)
    m.add_argument("--k-max", type=_nonneg_int, default=3)
    return p


# --- renderers ----------------------------------------------------------------


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj, args) -> str:
    if not args.deterministic:
        obj = dict(obj, timestamp=datetime.now(timezone.utc).isoformat())
    return json.dumps(obj, indent=1) + "\n"


def _text_table(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join(" ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n" for r in cells)


# --- commands -----------------------------------------------------------------


def cmd_table(args) -> tuple[int, str]:
    N = args.max_n
    if args.route == Route.ORACLE.value and N > ORACLE_MAX_N:
        raise UsageError(f"--route oracle is limited to --max-n <= {ORACLE_MAX_N}")
    workers = args.threads or default_threads()
    if args.route == "all":
        routes = [Route.BIVARIATE, Route.PER_M, Route.THETA]
        if N <= ORACLE_MAX_N:
            routes.append(Route.ORACLE)
        tables = [genfun.unimodal_tables(N, r, workers=workers) for r in routes]
        T = tables[0]
        m_all = range(-genfun.max_rank(N) - 1, genfun.max_rank(N) + 2)
        for other in tables[1:]:
            bad = genfun.rows_agree(T, other, range(1, N + 1), m_all)
            if bad is not None:
                m, n, a, b = bad
                print(
                    f"routes disagree at m={m}, n={n}: "
                    f"{T.provenance.value}={a}, {other.provenance.value}={b}",
                    file=sys.stderr,
                )
                return EXIT_FAIL, ""
    else:
        T = genfun.unimodal_tables(N, Route(args.route), workers=workers)

    max_m = genfun.max_rank(N) if args.max_m is None else args.max_m
    fmt = args.format or "csv"
    if fmt == "csv":
        header = ["m"] + [str(n) for n in range(1, N + 1)]
        rows = [[str(m)] + [str(T.u(m, n)) for n in range(1, N + 1)] for m in range(max_m + 1)]
        return EXIT_OK, _csv_text(header, rows)
    if fmt == "json":
        return EXIT_OK, _json_text(T.to_json_obj(max_m), args)
    return EXIT_OK, T.to_triples(max_m)


def _suite_names(raw) -> list[str]:
    if not raw:
        return sorted(verify.SUITES)
    names = []
    for item in raw:
        names += [s.strip() for s in item.split(",") if s.strip()]
    if "all" in names:
        return sorted(verify.SUITES)
    unknown = [s for s in names if s not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(verify.SUITES)}")
    return list(dict.fromkeys(names))


def cmd_verify(args) -> tuple[int, str]:
    names = _suite_names(args.suite)
    opts = {"max_n": args.max_n, "k_max": args.k_max}
    if args.checkpoints:
        opts["checkpoints"] = args.checkpoints
    reports = verify.run_suites(names, **opts)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    fmt = args.format or "text"
    if fmt == "json":
        return code, _json_text({"reports": [r.to_json_obj() for r in reports]}, args)
    if fmt == "csv":
        rows = []

        def walk(rep, parent):
            cid = f"{parent}/{rep.check_id}" if parent else rep.check_id
            rows.append([cid, rep.status.value, rep.n_range[0], rep.n_range[1], rep.failures])
            for s in rep.subreports:
                walk(s, cid)

        for r in reports:
            walk(r, "")
        return code, _csv_text(["check_id", "status", "n_lo", "n_hi", "failures"], rows)
    return code, verify.format_text(reports)


def asymptote_rows(checkpoints, max_m: int) -> list[list]:
    """(quantity, m, n, order, exact, log_estimate, ratio) for every comparison."""
    P = partition_series(max(checkpoints))
    out = []
    for n in checkpoints:
        row = genfun.unimodal_row(n, P)
        total = row.total()
        for order in (0, 1):
            est = asy.u_total_asymptotic(n, order)
            out.append(["u_total", "", n, order, total, est.log_value, est.ratio(total)])
        for m in range(max_m + 1):
            exact = row.get(m)
            for order in (0, 1):
                est = asy.u_mn_asymptotic(m, n, order)
                out.append(["u", m, n, order, exact, est.log_value, est.ratio(exact) if exact > 0 else ""])
        for m in range(max_m + 1):
            log_diff, log_lc = asy.structural_asymptotics(m, n, log=True)
            diff = row.get(m) - row.get(m + 1)
            lc = row.get(m) ** 2 - row.get(m - 1) * row.get(m + 1)
            out.append(["difference", m, n, 0, diff, log_diff, asy.ratio_exp(diff, log_diff) if diff > 0 else ""])
            out.append(["log_concavity", m, n, 0, lc, log_lc, asy.ratio_exp(lc, log_lc) if lc > 0 else ""])
    return out


def cmd_asymptote(args) -> tuple[int, str]:
    rows = asymptote_rows(args.checkpoints, args.max_m)
    header = ["quantity", "m", "n", "order", "exact", "log_estimate", "ratio"]
    fmt = args.format or "csv"
    if fmt == "json":
        objs = [dict(zip(header, r)) for r in rows]
        for o in objs:
            o["exact"] = str(o["exact"])
        return EXIT_OK, _json_text({"comparisons": objs}, args)
    rows = [[str(c) if not isinstance(c, float) else repr(c) for c in r] for r in rows]
    if fmt == "csv":
        return EXIT_OK, _csv_text(header, rows)
    return EXIT_OK, _text_table(header, rows)


def cmd_dist(args) -> tuple[int, str]:
    n = args.n
    row = genfun.unimodal_row(n)
    dist = verify.empirical_distribution(n, row)
    steps = dist.cdf_steps()
    header = ["m", "x", "probability", "cdf", "normal_cdf"]
    rows = [
        [m, x, float(p), float(after), asy.normal_cdf(x)]
        for (m, p), (_, x, _, after) in zip(dist.atoms, steps)
    ]
    fmt = args.format or "csv"
    if fmt == "json":
        obj = {
            "n": n,
            "scale": dist.scale,
            "kolmogorov_distance": verify.kolmogorov_distance(n, row),
            "atoms": [dict(zip(header, r)) for r in rows],
        }
        return EXIT_OK, _json_text(obj, args)
    rows = [[str(r[0])] + [repr(c) for c in r[1:]] for r in rows]
    if fmt == "csv":
        return EXIT_OK, _csv_text(header, rows)
    return EXIT_OK, _text_table(header, rows)


def cmd_moments(args) -> tuple[int, str]:
    N, K = args.max_n, args.k_max
    T = genfun.unimodal_tables(N, Route.THETA, workers=args.threads or default_threads())
    moms = [genfun.unimodal_moments(T, 2 * k) for k in range(K + 1)]
    header = ["n"] + [f"u_{2 * k}" for k in range(K + 1)]
    rows = [[str(n)] + [str(moms[k][n]) for k in range(K + 1)] for n in range(N + 1)]
    fmt = args.format or "csv"
    if fmt == "json":
        return EXIT_OK, _json_text({"N": N, "rows": [dict(zip(header, r)) for r in rows]}, args)
    if fmt == "csv":
        return EXIT_OK, _csv_text(header, rows)
    return EXIT_OK, _text_table(header, rows)


COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "asymptote": cmd_asymptote,
    "dist": cmd_dist,
    "moments": cmd_moments,
}


def run(args) -> int:
    try:
        code, text = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"unimodal-rank: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.output == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            with open(args.output, "w", newline="") as fh:
                fh.write(text)
    except OSError as e:
        print(f"unimodal-rank: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
