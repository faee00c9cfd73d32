"""Command-line front end.

Exit codes: 0 success, 1 domain failure (invalid matrix), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import census_lines
from .digraph import build_digraph, to_dot
from .model import InvalidMatrix, VectorMatrix, first_failing_minor, normalize
from .report import build_report, format_report

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> VectorMatrix:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return VectorMatrix.from_json(text)
    except InvalidMatrix as exc:
        raise InputError(str(exc)) from exc


def _invalid_message(A: VectorMatrix) -> str | None:
    bad = first_failing_minor(A)
    if bad is None:
        return None
    choice, idx = bad
    cols = ",".join(str(c + 1) for c in choice)
    blocks = ",".join(str(i + 1) for i in idx)
    return f"invalid: submatrix ({cols}) has principal minor 0 on blocks {{{blocks}}}"


def cmd_validate(args, out) -> int:
    A = _load(args.file)
    msg = _invalid_message(A)
    if msg is not None:
        print(msg, file=out)
        return EXIT_DOMAIN
    print("valid", file=out)
    return EXIT_OK


def cmd_report(args, out) -> int:
    A = _load(args.file)
    msg = _invalid_message(A)
    if msg is not None:
        print(msg, file=sys.stderr)
        return EXIT_DOMAIN
    r = build_report(A, dot=args.dot, homotopy=args.homotopy)
    if args.json:
        print(json.dumps(r.to_json(), sort_keys=True, indent=2), file=out)
    else:
        out.write(format_report(r))
    return EXIT_OK


def cmd_normalize(args, out) -> int:
    A = _load(args.file)
    msg = _invalid_message(A)
    if msg is not None:
        print(msg, file=sys.stderr)
        return EXIT_DOMAIN
    perm, N = normalize(A)
    data = N.to_json()
    data["permutation"] = list(perm)
    print(json.dumps(data), file=out)
    return EXIT_OK


def cmd_dot(args, out) -> int:
    A = _load(args.file)
    msg = _invalid_message(A)
    if msg is not None:
        print(msg, file=sys.stderr)
        return EXIT_DOMAIN
    _, N = normalize(A)
    out.write(to_dot(build_digraph(N)))
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad --dims {text!r}") from None
    if not dims or any(d < 1 for d in dims):
        raise InputError(f"dims must be positive integers, got {text!r}")
    return dims


def cmd_census(args, out) -> int:
    dims = _parse_dims(args.dims)
    for line in census_lines(dims, dedupe=args.dedupe):
        print(line, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grbott", description="Invariants of generalized real Bott manifolds")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the principal-minor condition")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("report", help="compute all invariants")
    r.add_argument("file")
    r.add_argument("--json", action="store_true", help="emit JSON")
    r.add_argument("--dot", action="store_true", help="include the digraph in DOT form")
    r.add_argument("--homotopy", type=int, metavar="J", help="include pi_J (J >= 2)")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("census", help="enumerate all matrices for a dimension vector")
    c.add_argument("--dims", required=True, help="comma-separated block sizes, e.g. 2,1,1")
    c.add_argument("--dedupe", action="store_true", help="count block-permutation orbits")
    c.set_defaults(func=cmd_census)

    n = sub.add_parser("normalize", help="print the upper-triangular form")
    n.add_argument("file")
    n.set_defaults(func=cmd_normalize)

    d = sub.add_parser("dot", help="print the labeled digraph in DOT")
    d.add_argument("file")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "homotopy", None) is not None and args.homotopy < 2:
        print("error: --homotopy needs J >= 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
