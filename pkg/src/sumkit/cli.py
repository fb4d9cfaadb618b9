"""Command-line front end.

Verbs: ``severi``, ``hurwitz``, ``elliptic``, ``catalog``, ``oracle`` and
``check``.  Output is JSON by default (``--format json|csv|table``); every
number is emitted as an exact fraction string, never a float, and output is
byte-identical across runs.  Computed Severi and Hurwitz values are cached
as JSON lines under ``--cache-dir`` (default ``$SUMKIT_CACHE_DIR``); the
cache is a pure accelerator and never changes emitted values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from sumkit import __version__, catalog, checks, elliptic, hurwitz, oracles, severi
from sumkit.gluing import RelSeries, relseries_to_json
from sumkit.series import Series

ENGINE_VERSION = __version__


# -- persistent memo cache ----------------------------------------------------

class ValueCache:
    """JSON-lines cache, one file per table, atomically rewritten.

    Unreadable directories disable caching with a warning; corrupt lines and
    entries from other engine versions are skipped.
    """

    def __init__(self, directory: str | None):
        self.directory = directory
        self.enabled = False
        if directory:
            try:
                os.makedirs(directory, exist_ok=True)
                probe = os.path.join(directory, ".probe")
                with open(probe, "w") as fh:
                    fh.write("ok")
                os.remove(probe)
                self.enabled = True
            except OSError as exc:
                print(f"warning: cache disabled ({exc})", file=sys.stderr)

    def _path(self, table: str) -> str:
        return os.path.join(self.directory, f"{table}.jsonl")

    def load(self, table: str) -> dict[str, str]:
        entries: dict[str, str] = {}
        if not self.enabled:
            return entries
        try:
            with open(self._path(table)) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        record = json.loads(line)
                        if record.get("engine") != ENGINE_VERSION:
                            continue
                        entries[record["key"]] = record["value"]
                    except (ValueError, KeyError):
                        print(f"warning: skipping corrupt cache line in "
                              f"{table}.jsonl", file=sys.stderr)
        except FileNotFoundError:
            pass
        return entries

    def store(self, table: str, entries: dict[str, str]) -> None:
        if not self.enabled or not entries:
            return
        merged = self.load(table)
        merged.update(entries)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            for key in sorted(merged):
                fh.write(json.dumps({
                    "key": key, "value": merged[key],
                    "engine": ENGINE_VERSION,
                }, sort_keys=True) + "\n")
        os.replace(tmp, self._path(table))


# -- emission ------------------------------------------------------------------

def _emit(rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows if len(rows) != 1 else rows[0],
                         indent=2, sort_keys=True))
    elif fmt == "csv":
        if not rows:
            return
        headers = []
        for row in rows:
            for key in row:
                if key not in headers:
                    headers.append(key)
        print(",".join(headers))
        for row in rows:
            print(",".join(str(row.get(h, "")) for h in headers))
    else:  # table
        if not rows:
            return
        headers = []
        for row in rows:
            for key in row:
                if key not in headers:
                    headers.append(key)
        widths = {h: max(len(h), *(len(str(r.get(h, ""))) for r in rows))
                  for h in headers}
        print("  ".join(h.ljust(widths[h]) for h in headers))
        for row in rows:
            print("  ".join(str(row.get(h, "")).ljust(widths[h])
                            for h in headers))


def _fraction_row(value: Fraction) -> dict:
    return {"value": f"{value.numerator}/{value.denominator}",
            "numerator": value.numerator, "denominator": value.denominator}


def _series_rows(series: Series) -> list[dict]:
    rows = []
    for exps, c in series.monomials():
        mono = " ".join(f"{n}^{e}" for n, e in zip(series.context.names, exps)
                        if e) or "1"
        rows.append({"monomial": mono,
                     "value": f"{c.numerator}/{c.denominator}"})
    return rows


def _parse_profile(text: str | None) -> tuple[int, ...]:
    """``k:c,...`` pairs into a multiplicity vector."""
    if not text:
        return ()
    out: list[int] = []
    for item in text.split(","):
        k, _, c = item.partition(":")
        k, c = int(k), int(c)
        while len(out) < k:
            out.append(0)
        out[k - 1] += c
    return tuple(out)


# -- verbs ---------------------------------------------------------------------

def _cmd_severi(args, cache: ValueCache) -> list[dict]:
    alpha = _parse_profile(args.alpha)
    beta = _parse_profile(args.beta) if args.beta else None
    if args.table:
        rows = severi.severi_table(args.degree, args.delta)
    else:
        beta_eff = beta if beta is not None \
            else severi.default_beta(args.degree, alpha)
        key = severi.SeveriTable.canonical_key(
            args.degree, args.delta, severi.trim(alpha), severi.trim(beta_eff))
        stored = cache.load("severi")
        if key in stored:
            value = int(stored[key])
        else:
            value = severi.severi_number(args.degree, args.delta, alpha, beta)
            cache.store("severi", {key: str(value)})
        g = severi.genus(args.degree, args.delta)
        rows = [{
            "d": args.degree, "delta": args.delta,
            "alpha": list(severi.trim(alpha)),
            "beta": list(severi.trim(beta_eff)),
            "r": severi.point_count(args.degree, g, severi.trim(alpha),
                                    severi.trim(beta_eff)),
            "value": str(value),
        }]
    return rows


def _cmd_hurwitz(args, cache: ValueCache) -> list[dict]:
    alpha = tuple(int(a) for a in args.partition.split(","))
    key = json.dumps([args.degree, args.genus, sorted(alpha, reverse=True)])
    stored = cache.load("hurwitz")
    if key in stored:
        num, den = stored[key].split("/")
        value = Fraction(int(num), int(den))
    else:
        value = hurwitz.hurwitz_number(args.degree, args.genus, alpha)
        cache.store("hurwitz", {key: f"{value.numerator}/{value.denominator}"})
    row = {"d": args.degree, "g": args.genus,
           "partition": sorted(alpha, reverse=True),
           "r": hurwitz.branch_count(args.degree, args.genus, alpha)}
    row.update(_fraction_row(value))
    return [row]


def _cmd_elliptic(args, _cache: ValueCache) -> list[dict]:
    if args.check:
        rows = []
        ode = elliptic.f0_via_ode(args.order)
        prod = elliptic.f0_product(args.order)
        rows.append({"identity": "recursion-vs-product",
                     "zero": (ode - prod).is_zero()})
        r1 = elliptic.genus1_via_fiber_recursion(args.order)
        r2 = elliptic.genus1_via_fiber_sum(args.order)
        rows.append({"identity": "genus1-two-routes",
                     "zero": (r1 - r2).is_zero()})
        for name, res in elliptic.lsplit_suite(max(args.genus, 1),
                                               args.order).items():
            rows.append({"identity": name, "zero": res.is_zero()})
        return rows
    series = elliptic.fg(args.genus, args.order)
    return _series_rows(series)


def _cmd_catalog(args, _cache: ValueCache) -> list[dict]:
    entries = catalog.catalog_entries()
    if args.name not in entries:
        raise SystemExit(
            f"unknown catalog entry {args.name!r}; "
            f"available: {', '.join(sorted(entries))}")
    produced = entries[args.name].producer(args.order)
    if isinstance(produced, Series):
        return _series_rows(produced)
    if isinstance(produced, RelSeries):
        return relseries_to_json(produced)["terms"]
    if isinstance(produced, dict):
        rows = []
        for family, series in produced.items():
            for row in _series_rows(series):
                rows.append(dict(row, family=family))
        return rows
    return list(produced)


def _cmd_oracle(args, _cache: ValueCache) -> list[dict]:
    if args.kind == "hurwitz":
        alpha = tuple(int(a) for a in args.partition.split(","))
        value = oracles.hurwitz_oracle(args.degree, args.genus, alpha)
        row = {"d": args.degree, "g": args.genus,
               "partition": sorted(alpha, reverse=True)}
        row.update(_fraction_row(value))
        return [row]
    if args.kind == "kontsevich":
        return [{"d": args.degree,
                 "value": str(oracles.kontsevich_oracle(args.degree))}]
    return [{"n": args.n, "value": str(oracles.divisor_sum(args.n))}]


def _cmd_check(args, _cache: ValueCache) -> list[dict]:
    results = checks.run_all()
    rows = [{"check": r.name, "status": "pass" if r.passed else "FAIL",
             "seconds": f"{r.seconds:.2f}", "detail": r.detail}
            for r in results]
    if any(not r.passed for r in results):
        _emit(rows, args.format)
        raise _CheckFailure()
    return rows


class _CheckFailure(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"),
                        default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="sumkit",
        parents=[common],
        description="exact curve-count combinatorics: Severi degrees, "
                    "Hurwitz numbers, elliptic-surface series")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("severi", help="nodal plane curves with line tangencies")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--alpha", help="fixed contacts, k:count,...")
    p.add_argument("--beta", help="moving contacts, k:count,...")
    p.add_argument("--table", action="store_true",
                   help="emit the whole table up to the bounds")
    p.set_defaults(func=_cmd_severi)

    p = add_parser("hurwitz", help="branched covers of the sphere")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--partition", required=True, help="a,b,c")
    p.set_defaults(func=_cmd_hurwitz)

    p = add_parser("elliptic", help="rational elliptic surface series")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--check", action="store_true",
                   help="emit the identity residual report")
    p.set_defaults(func=_cmd_elliptic)

    p = add_parser("catalog", help="model-space relative invariants")
    p.add_argument("name", help="p1, torus, t2xs2, ruled:n")
    p.add_argument("--order", type=int, default=8)
    p.set_defaults(func=_cmd_catalog)

    p = add_parser("oracle", help="brute-force reference values")
    osub = p.add_subparsers(dest="kind", required=True)
    oh = osub.add_parser("hurwitz", parents=[common])
    oh.add_argument("--degree", type=int, required=True)
    oh.add_argument("--genus", type=int, required=True)
    oh.add_argument("--partition", required=True)
    ok = osub.add_parser("kontsevich", parents=[common])
    ok.add_argument("--degree", type=int, required=True)
    og = osub.add_parser("sigma", parents=[common])
    og.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    p = add_parser("check", help="run the acceptance suite")
    p.add_argument("--all", action="store_true",
                   help="run every check (the default)")
    p.set_defaults(func=_cmd_check)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if not hasattr(args, "format"):
        args.format = "json"
    if not hasattr(args, "cache_dir"):
        args.cache_dir = os.environ.get("SUMKIT_CACHE_DIR")
    cache = ValueCache(args.cache_dir)
    try:
        rows = args.func(args, cache)
    except _CheckFailure:
        return 1
    except SystemExit as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(rows, args.format)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
