"""Command line front end.

Subcommands: coeffs (coefficients of f^k for f = x R(f)), invert
(compositional inverse of a series literal), identity (run a named
check), oracle (brute-force census against closed formulas), and list
(identity names).

Output formats: json (versioned with "schema": 1, key-sorted), csv
(fixed headers), and pretty (human table; the only mode that reports
elapsed time).  Exit codes: 0 success, 1 identity or oracle failure,
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import os
import sys
import time
from fractions import Fraction
from itertools import product
from math import factorial

from . import trees
from .errors import LagrangeKitError
from .identities import IDENTITY_CATALOG, identity_names, run_identity
from .lagrange import solve_xR
from .scalars import format_rational, parse_rational
from .series import PowerSeries

DEFAULT_MAX_ORDER = 200
SERIES_PRESETS = ("exp", "geom", "one-plus-t-squared")
ORACLE_KINDS = (
    "ordered-forest",
    "labeled-forest",
    "prufer",
    "cycle-lemma",
    "degree-trees",
)


class _UsageError(Exception):
    pass


def _max_order() -> int:
    raw = os.environ.get("LAGRANGE_KIT_MAX_ORDER", "")
    try:
        cap = int(raw) if raw else DEFAULT_MAX_ORDER
    except ValueError:
        raise _UsageError("LAGRANGE_KIT_MAX_ORDER must be an integer, got %r" % raw)
    return cap


def _series_from_literal(literal: str, order: int) -> PowerSeries:
    """Comma-separated rationals, or one of the named presets."""
    text = literal.strip()
    if text == "exp":
        return PowerSeries([Fraction(1, factorial(n)) for n in range(order)], order)
    if text == "geom":
        return PowerSeries([1] * order, order)
    if text == "one-plus-t-squared":
        return PowerSeries([1, 0, 1], order)
    coeffs = []
    position = 0
    for token in text.split(","):
        coeffs.append(parse_rational(token, position))
        position += len(token) + 1
    if len(coeffs) > order:
        coeffs = coeffs[:order]
    return PowerSeries(coeffs, order)


def _parse_int_list(literal: str) -> list:
    out = []
    for token in literal.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(int(token))
        except ValueError:
            raise _UsageError("bad integer literal %r" % token)
    return out


# -- output ------------------------------------------------------------------


def _emit_table(fmt, headers, rows, meta, elapsed_ms, out) -> None:
    if fmt == "json":
        payload = dict(meta)
        payload["schema"] = 1
        payload["rows"] = [dict(zip(headers, row)) for row in rows]
        print(json.dumps(payload, sort_keys=True, indent=2), file=out)
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
    else:
        widths = [
            max(len(str(h)), max((len(str(r[i])) for r in rows), default=0))
            for i, h in enumerate(headers)
        ]
        print(
            "  ".join(str(h).ljust(w) for h, w in zip(headers, widths)), file=out
        )
        for row in rows:
            print(
                "  ".join(str(v).ljust(w) for v, w in zip(row, widths)), file=out
            )
        print("elapsed: %.1f ms" % elapsed_ms, file=out)


def _poly_text(ints) -> str:
    """Render an ascending integer coefficient list like '2 - x + 3x^2'."""
    parts = []
    for e, c in enumerate(ints):
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "x" if e == 1 else "x^%d" % e
            body = var if mag == 1 else "%d%s" % (mag, var)
        if not parts:
            parts.append(body if c > 0 else "-%s" % body)
        else:
            parts.append("%s %s" % ("+" if c > 0 else "-", body))
    return " ".join(parts) if parts else "0"


# -- subcommands ----------------------------------------------------------------


def cmd_coeffs(args, out) -> int:
    started = time.perf_counter()
    if args.k < 1:
        raise _UsageError("k must be positive")
    r_series = _series_from_literal(args.series, args.order)
    if not r_series.constant_term:
        raise _UsageError("R must have a nonzero constant term")
    f = solve_xR(r_series)
    fk = f ** args.k
    rows = [(n, format_rational(Fraction(fk.coeff(n)))) for n in range(args.order)]
    meta = {
        "command": "coeffs",
        "R": args.series,
        "k": args.k,
        "order": args.order,
    }
    _emit_table(
        args.format,
        ("n", "value"),
        rows,
        meta,
        (time.perf_counter() - started) * 1000.0,
        out,
    )
    return 0


def cmd_invert(args, out) -> int:
    started = time.perf_counter()
    f = _series_from_literal(args.series, args.order)
    g = f.reversion()
    rows = [(n, format_rational(Fraction(g.coeff(n)))) for n in range(args.order)]
    meta = {"command": "invert", "f": args.series, "order": args.order}
    _emit_table(
        args.format,
        ("n", "value"),
        rows,
        meta,
        (time.perf_counter() - started) * 1000.0,
        out,
    )
    return 0


_PARAM_FLAGS = ("p", "i", "j", "r", "n_max", "seed")


def cmd_identity(args, out) -> int:
    name = args.name
    if name not in IDENTITY_CATALOG:
        raise _UsageError(
            "unknown identity %r; known: %s" % (name, ", ".join(identity_names()))
        )
    func = IDENTITY_CATALOG[name][0]
    accepted = set(inspect.signature(func).parameters)
    params = {}
    for flag in _PARAM_FLAGS:
        value = getattr(args, flag)
        if value is None:
            continue
        if flag not in accepted:
            raise _UsageError(
                "identity %r does not take --%s" % (name, flag.replace("_", "-"))
            )
        params[flag] = value
    report = run_identity(name, order=args.order, **params)
    if args.format == "json":
        payload = report.to_dict()
        payload["schema"] = 1
        print(json.dumps(payload, sort_keys=True, indent=2), file=out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("identity", "params", "order", "status", "first_failure"))
        packed = ";".join(
            "%s=%s" % (k, v) for k, v in sorted(report.to_dict()["params"].items())
        )
        writer.writerow(
            (report.name, packed, report.order, report.status, report.first_failure or "")
        )
    else:
        print(
            "identity %s: %s (order %d, %.1f ms)"
            % (report.name, report.status.upper(), report.order, report.elapsed_ms),
            file=out,
        )
        if report.first_failure:
            print("first failure: %s" % report.first_failure, file=out)
        if report.details:
            rendered = report.to_dict()["details"]
            for key in sorted(rendered):
                value = rendered[key]
                if key == "polynomial" and isinstance(value, list):
                    print("%s: %s" % (key, _poly_text(value)), file=out)
                else:
                    print("%s: %s" % (key, value), file=out)
    return 0 if report.passed else 1


def _profile_label(profile) -> str:
    return " ".join("n%d=%d" % (i, c) for i, c in profile)


def _oracle_rows(args):
    kind = args.kind
    if kind == "ordered-forest":
        for profile in trees.ordered_profiles(args.n, args.k):
            yield (
                _profile_label(profile),
                trees.count_by_profile(args.n, args.k, dict(profile)),
                trees.ordered_forest_profile_formula(args.n, args.k, dict(profile)),
            )
    elif kind == "labeled-forest":
        for profile in trees.ordered_profiles(args.n, args.k):
            yield (
                _profile_label(profile),
                trees.labeled_forest_profile_count(args.n, args.k, dict(profile)),
                trees.labeled_forest_profile_formula(args.n, args.k, dict(profile)),
            )
    elif kind == "prufer":
        m = args.m
        forest = trees.enumerate_labeled_trees(m)
        yield ("trees on [%d]" % m, len(forest), m ** (m - 2))
        good = 0
        for edges in forest:
            if trees.prufer_decode(trees.prufer_encode(edges, m)) == edges:
                good += 1
        yield ("encode-decode round trips", good, len(forest))
        codes = list(product(range(1, m + 1), repeat=m - 2))
        good = 0
        for code in codes:
            if trees.prufer_encode(trees.prufer_decode(code, m), m).entries == code:
                good += 1
        yield ("decode-encode round trips", good, len(codes))
    elif kind == "cycle-lemma":
        alphabet = _parse_int_list(args.alphabet)
        if not alphabet or any(e < -1 for e in alphabet):
            raise _UsageError("alphabet entries must be integers >= -1")
        for length in range(1, args.length + 1):
            cases = 0
            agree = 0
            for seq in product(alphabet, repeat=length):
                total = sum(seq)
                if total >= 0:
                    continue
                cases += 1
                if trees.cycle_lemma_count(seq) == -total:
                    agree += 1
            yield ("length %d" % length, agree, cases)
    elif kind == "degree-trees":
        m = args.m
        total_census = 0
        total_formula = 0
        for degs in _degree_sequences(m):
            census = trees.count_degree_trees(m, degs)
            formula = trees.degree_trees_formula(m, degs)
            total_census += census
            total_formula += formula
            yield ("d=%s" % (",".join(map(str, degs))), census, formula)
        yield ("total (Cayley)", total_census, m ** (m - 2))
        yield ("formula total", total_formula, m ** (m - 2))
    else:
        raise _UsageError("unknown oracle kind %r" % kind)


def _degree_sequences(m: int):
    target = 2 * (m - 1)

    def rec(i, left):
        if i == m:
            if left == 0:
                yield ()
            return
        room = m - i - 1
        for d in range(1, left - room + 1):
            for rest in rec(i + 1, left - d):
                yield (d,) + rest

    yield from rec(0, target)


def cmd_oracle(args, out) -> int:
    started = time.perf_counter()
    rows = []
    mismatches = 0
    for label, census, formula in _oracle_rows(args):
        match = census == formula
        if not match:
            mismatches += 1
        rows.append((label, census, formula, "yes" if match else "NO"))
    meta = {"command": "oracle", "kind": args.kind}
    if args.kind in ("ordered-forest", "labeled-forest"):
        meta.update({"n": args.n, "k": args.k})
    elif args.kind in ("prufer", "degree-trees"):
        meta["m"] = args.m
    else:
        meta.update({"alphabet": args.alphabet, "len": args.length})
    _emit_table(
        args.format,
        ("case", "oracle", "formula", "match"),
        rows,
        meta,
        (time.perf_counter() - started) * 1000.0,
        out,
    )
    return 1 if mismatches else 0


def cmd_list(args, out) -> int:
    names = identity_names()
    if args.format == "json":
        print(
            json.dumps({"schema": 1, "identities": names}, sort_keys=True, indent=2),
            file=out,
        )
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("identity",))
        for name in names:
            writer.writerow((name,))
    else:
        for name in names:
            print(name, file=out)
    return 0


# -- argument wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=30, help="truncation order")
    common.add_argument(
        "--format", choices=("json", "csv", "pretty"), default="pretty"
    )
    parser = argparse.ArgumentParser(
        prog="lagrange-kit",
        description="Exact power series inversion, identity checks, and "
        "combinatorial oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="coefficients of f^k for f = x R(f)")
    p.add_argument("--R", dest="series", default="geom", help="coefficient list or preset (%s)" % ", ".join(SERIES_PRESETS))
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("invert", parents=[common], help="compositional inverse of a series literal")
    p.add_argument("--R", dest="series", required=True, help="coefficient list of the series to invert")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("identity", parents=[common], help="run a named identity check")
    p.add_argument("name")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("oracle", parents=[common], help="brute-force census vs closed formula")
    p.add_argument("kind", choices=ORACLE_KINDS)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--alphabet", default="-1,0,1,2")
    p.add_argument("--len", dest="length", type=int, default=6)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("list", parents=[common], help="list identity names")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    # join "--alphabet -1,0,1" so the negative entry is not read as a flag
    merged = []
    skip = False
    for idx, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token == "--alphabet" and idx + 1 < len(argv):
            merged.append("--alphabet=%s" % argv[idx + 1])
            skip = True
        else:
            merged.append(token)
    parser = build_parser()
    args = parser.parse_args(merged)
    try:
        cap = _max_order()
        if not 1 <= args.order <= cap:
            raise _UsageError("order must lie in 1..%d" % cap)
        return args.func(args, out)
    except _UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except LagrangeKitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
