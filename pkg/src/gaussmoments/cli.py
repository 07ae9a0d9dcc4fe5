"""Command-line front end: ``gaussmoments verify | table | selftest``.

Exit codes: 0 when everything matches, 1 on any mismatch, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import selftest
from .errors import HypothesisError, InfeasibleError
from .verify import CLAIMS, Options, build_grid, run_case, table_row, validate_table

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


def int_list(text: str) -> list[int]:
    """Parse '1,2,5:7' into [1, 2, 5, 6, 7]; ranges are inclusive."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            lo, hi = part.split(":", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


class _Fail(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _Fail


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")
    p.add_argument("--backend", choices=("exact", "float", "auto"), default="auto")
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    p.add_argument("--tolerance", type=float, default=None, metavar="X")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaussmoments", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check a closed form against its brute-force oracle")
    v.add_argument("claim", choices=sorted(CLAIMS))
    for flag in ("--q", "--q-list", "--m", "--m-range", "--n", "--p", "--alpha", "--k", "--a"):
        v.add_argument(flag, type=int_list, default=None)
    v.add_argument("--n-max", type=int, default=None)
    _common(v)

    t = sub.add_parser("table", help="tabulate both sides of the 2m-th power mean identity")
    t.add_argument("--q", "--q-list", dest="q", type=int_list, default=[])
    t.add_argument("--m", "--m-range", dest="m", type=int_list, default=[2])
    t.add_argument("--n", type=int, default=1)
    _common(t)

    s = sub.add_parser("selftest", help="run every invariant suite")
    s.add_argument("--parallel", type=int, default=1, metavar="N")
    return parser


def _map(fn, items, parallel: int):
    # results come back in submission order whatever the completion order
    if parallel > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            yield from pool.map(fn, items, chunksize=max(1, len(items) // (4 * parallel)))
    else:
        yield from map(fn, items)


def _emit(rows, fmt: str, out) -> None:
    """Stream dict rows as JSON lines, CSV, or an aligned text table."""
    rows = iter(rows)
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r, separators=(",", ":")) + "\n")
        return
    buffered = fmt == "text"
    writer = None
    collected = []
    for r in rows:
        flat = _flatten(r)
        if buffered:
            collected.append(flat)
            continue
        if writer is None:
            writer = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n", extrasaction="ignore")
            writer.writeheader()
        writer.writerow(flat)
    if buffered and collected:
        cols = list(collected[0])
        widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in collected)) for c in cols}
        out.write("  ".join(c.ljust(widths[c]) for c in cols).rstrip() + "\n")
        for r in collected:
            out.write("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols).rstrip() + "\n")


def _flatten(row: dict) -> dict:
    flat = {"claim": row["claim"]} if "claim" in row else {}
    flat.update(row.get("params", {}))
    for key, val in row.items():
        if key not in ("claim", "params"):
            flat[key] = "" if val is None else (str(val).lower() if isinstance(val, bool) else val)
    return flat


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    grid_args = {
        "q": (args.q or []) + (args.q_list or []) or None,
        "m": (args.m or []) + (args.m_range or []) or None,
        "n": args.n,
        "p": args.p,
        "alpha": args.alpha,
        "k": args.k,
        "a": args.a,
        "n_max": args.n_max,
    }
    try:
        grid = build_grid(args.claim, grid_args)
    except (HypothesisError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not grid:
        print("invalid parameters: empty parameter grid", file=sys.stderr)
        return EXIT_INVALID
    opts = Options(args.backend, args.tolerance, args.timing)
    ok = True
    try:
        reports = _map(partial(run_case, args.claim, opts=opts), grid, args.parallel)

        def rows():
            nonlocal ok
            for rep in reports:
                ok &= rep.match
                yield rep.to_dict()

        _emit(rows(), args.format, out)
    except (HypothesisError, InfeasibleError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_table(args, out=None) -> int:
    out = out or sys.stdout
    try:
        validate_table(args.q, args.m, args.n)
    except (HypothesisError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    opts = Options(args.backend, args.tolerance, False)
    cells = sorted((q, m) for q in set(args.q) for m in set(args.m))
    rows = list(_map(partial(_table_cell, n=args.n, opts=opts), cells, args.parallel))
    _emit((r.to_dict() for r in rows), args.format, out)
    return EXIT_MISMATCH if any(r.match is False for r in rows) else EXIT_OK


def _table_cell(cell, n, opts):
    q, m = cell
    return table_row(q, m, n, opts)


def cmd_selftest(args, out=None) -> int:
    out = out or sys.stdout
    ok, lines = selftest.run(args.parallel)
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _Fail:
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_INVALID
    handler = {"verify": cmd_verify, "table": cmd_table, "selftest": cmd_selftest}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
