"""Command-line front end.

Subcommands: eval (stream -> value), merge (partial state files), classify
(type-hierarchy report), verify (axiom suite), myhill (state-complexity
profile).  Input streams are newline- or comma-separated decimals on stdin
or a file; a lone "#" line terminates the stream early.

Exit codes: 0 ok, 2 parse error, 3 domain error, 4 empty input,
5 family mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import families, myhill, verify
from .core import (absorb, finalize, init, merge, parse_state,
                   serialize_state)
from .errors import (DomainError, EmptyStateError, FamilyMismatch,
                     InvalidDescriptor, MeanStreamError, ParseError)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_EMPTY = 4
EXIT_MISMATCH = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _family_params(args) -> tuple:
    if args.family_json:
        try:
            spec = json.loads(args.family_json)
            return spec.pop("family"), spec
        except (json.JSONDecodeError, KeyError) as e:
            raise CliError(f"bad --family-json: {e}", EXIT_PARSE)
    if not args.family:
        raise CliError("--family (or --family-json) is required", EXIT_PARSE)
    params = {}
    for key in ("p", "q"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    for key in ("r", "c", "d"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if getattr(args, "f", None) is not None:
        params["f"] = args.f
    if getattr(args, "g", None) is not None:
        params["g"] = args.g
    if getattr(args, "kind", None) is not None:
        params["kind"] = args.kind
    return args.family, params


def _build_descriptor(args):
    family, params = _family_params(args)
    try:
        return families.descriptor_from_params(family, params)
    except InvalidDescriptor as e:
        raise CliError(str(e), EXIT_PARSE)


def _read_values(args) -> list:
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = sys.stdin.read().splitlines()

    values = []
    if args.column is not None:
        reader = csv.reader(lines)
        rows = list(reader)
        if not rows:
            return values
        header = rows[0]
        start = 1
        if args.column in header:
            idx = header.index(args.column)
            rows = rows[1:]
            start = 2
        else:
            try:
                idx = int(args.column)
            except ValueError:
                raise CliError(f"column {args.column!r} not found", EXIT_PARSE)
        for lineno, row in enumerate(rows, start=start):
            if not row or (len(row) == 1 and row[0].strip() in ("", "#")):
                continue
            if row[0].strip() == "#":
                break
            try:
                values.append(float(row[idx]))
            except (ValueError, IndexError):
                raise CliError(f"line {lineno}: cannot parse {row!r}", EXIT_PARSE)
        return values

    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if line == "#":
            break
        if not line:
            continue
        for token in line.split(","):
            token = token.strip()
            if not token:
                continue
            if token == "#":
                return values
            try:
                values.append(float(token))
            except ValueError:
                raise CliError(f"line {lineno}: cannot parse {token!r}",
                               EXIT_PARSE)
    return values


def cmd_eval(args) -> int:
    descriptor = _build_descriptor(args)
    values = _read_values(args)
    if not values:
        raise CliError("empty input", EXIT_EMPTY)
    state = init(descriptor)
    try:
        for x in values:
            state = absorb(state, x)
        value = finalize(state)
    except DomainError as e:
        raise CliError(str(e), EXIT_DOMAIN)
    if args.state_out:
        with open(args.state_out, "wb") as fh:
            fh.write(serialize_state(state))
    print(f"{value:.17g}")
    return EXIT_OK


def cmd_merge(args) -> int:
    states = []
    for path in args.state_files:
        with open(path, "rb") as fh:
            data = fh.read()
        try:
            states.append(parse_state(data))
        except ParseError as e:
            raise CliError(f"{path}: {e}", EXIT_PARSE)
    merged = states[0]
    try:
        for s in states[1:]:
            merged = merge(merged, s)
    except FamilyMismatch as e:
        raise CliError(str(e), EXIT_MISMATCH)
    payload = serialize_state(merged)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload + b"\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    descriptor = _build_descriptor(args)
    report = {
        "family": descriptor.family,
        "params": descriptor.params,
        "type": descriptor.type_label,
        "upper_bound_only": descriptor.ctype_is_upper_bound,
        "state_dimension": descriptor.k,
        "has_counter": descriptor.has_counter,
        "hierarchy_index": (descriptor.ctype.order_index
                            if descriptor.ctype else None),
    }
    if descriptor.paper_k is not None:
        report["exponent_set_size"] = descriptor.paper_k
    if args.format == "json":
        print(json.dumps(report))
    else:
        print(f"{descriptor.name}: type {report['type']}"
              + (" (upper bound only)" if report["upper_bound_only"] else ""))
        print(f"  state dimension: {report['state_dimension']}"
              + (" + counter" if report["has_counter"] else ""))
        if report["hierarchy_index"] is not None:
            print(f"  hierarchy chain position: {report['hierarchy_index']}"
                  "  (T1 < T1+ < T2 < T2+ < ...)")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = verify.run_suite(seed=args.seed, trials=args.trials)
    if args.format == "json":
        for report in reports:
            print(report.to_json())
    else:
        width = max(len(r.property) for r in reports)
        for r in reports:
            status = "holds" if r.holds else "VIOLATED"
            line = f"{r.property:<{width}}  {r.subject:<24} {status}"
            if not r.holds and r.witness is not None:
                line += f"  witness={r.witness}"
            print(line)
    return EXIT_OK


def cmd_myhill(args) -> int:
    descriptor = _build_descriptor(args)
    alphabet = [float(t) for t in args.alphabet.split(",")]
    probes = myhill.default_probes(alphabet, args.probe_len)
    profile = myhill.enumerate_classes(descriptor, alphabet, args.max_len,
                                       probes=probes)
    result = profile.as_dict()
    result["growth"] = myhill.growth_report(profile)
    print(json.dumps(result))
    return EXIT_OK


def _add_family_flags(parser):
    parser.add_argument("--family", help="family name (power, gini, ...)")
    parser.add_argument("--family-json",
                        help='family spec as JSON, e.g. \'{"family":"gini","p":2,"q":1}\'')
    parser.add_argument("--p", type=float)
    parser.add_argument("--q", type=float)
    parser.add_argument("--r", type=int)
    parser.add_argument("--c", type=int)
    parser.add_argument("--d", type=int)
    parser.add_argument("--f", help="generator name (identity, ln, exp, power:<p>, affine:<a>,<b>)")
    parser.add_argument("--g", help="second generator for bajraktarevic")
    parser.add_argument("--kind", choices=["lower", "upper"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanstream",
        description="Constant-memory streaming evaluation of symmetric means.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a stream of reals")
    _add_family_flags(p_eval)
    p_eval.add_argument("--input", help="input file (default stdin)")
    p_eval.add_argument("--column", help="CSV column name or index")
    p_eval.add_argument("--state-out", help="also write the final state file")
    p_eval.set_defaults(func=cmd_eval)

    p_merge = sub.add_parser("merge", help="merge serialized partial states")
    p_merge.add_argument("state_files", nargs="+")
    p_merge.add_argument("--out", help="output state file (default stdout)")
    p_merge.set_defaults(func=cmd_merge)

    p_classify = sub.add_parser("classify", help="complexity-type report")
    _add_family_flags(p_classify)
    p_classify.add_argument("--format", choices=["text", "json"], default="text")
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run the axiom suite")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_myhill = sub.add_parser("myhill", help="empirical state-complexity profile")
    _add_family_flags(p_myhill)
    p_myhill.add_argument("--alphabet", default="0,1,2")
    p_myhill.add_argument("--max-len", type=int, default=8)
    p_myhill.add_argument("--probe-len", type=int, default=2)
    p_myhill.set_defaults(func=cmd_myhill)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is None and "MEANSTREAM_SEED" in os.environ:
        args.seed = int(os.environ["MEANSTREAM_SEED"])
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except EmptyStateError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except MeanStreamError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
