"""Command line entry point.

Exit status: 0 on success, 1 when ``check`` finds law violations (or
``check --find`` finds no witness), 2 for invalid documents or arguments.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import codec, medical, oracle
from .errors import SoftClassError
from .mapping import image, preimage
from .softset import is_soft_subset, soft_intersection, soft_union

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2

log = logging.getLogger("softclass")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SoftClassError(f"{path}: {exc.strerror}") from None


def _contexts(specs: list[str]) -> dict:
    registry = {}
    for spec in specs or ():
        name, sep, path = spec.partition("=")
        if not sep:
            path, name = spec, Path(spec).stem
        registry[name] = codec.parse_document(_read(path), expect="context")
    return registry


def _load(path: str, kind: str, args):
    try:
        return codec.parse_document(_read(path), _contexts(args.context), expect=kind)
    except SoftClassError as exc:
        exc.args = (f"{path}: {exc.args[0] if exc.args else ''}",) + exc.args[1:]
        raise


def _emit(value) -> None:
    sys.stdout.buffer.write(codec.serialize_document(value))
    sys.stdout.flush()


def cmd_binary(args) -> int:
    left = _load(args.left, "softset", args)
    right = _load(args.right, "softset", args)
    if args.command == "union":
        _emit(soft_union(left, right))
    elif args.command == "intersect":
        _emit(soft_intersection(left, right))
    else:
        sys.stdout.write(codec.canonical_bytes(is_soft_subset(left, right)).decode())
    return EXIT_OK


def cmd_image(args) -> int:
    f = _load(args.map, "mapping", args)
    soft = _load(args.input, "softset", args)
    op = image if args.command == "image" else preimage
    _emit(op(f, soft, args.result))
    return EXIT_OK


def _parse_laws(text: str | None, deep: bool) -> list[str]:
    if text:
        laws = [part.strip() for part in text.split(",") if part.strip()]
        for law in laws:
            oracle.get_law(law)
        return laws
    laws = list(oracle.THEOREM_LAWS)
    if deep:
        laws += list(oracle.FAMILY_LAWS)
    return laws


def cmd_check(args) -> int:
    bounds = oracle.Bounds(args.x, args.y, args.e, args.ep, args.min)
    if args.find:
        witness = oracle.search_counterexample(args.find, bounds=bounds)
        if witness is None:
            sys.stdout.write("null\n")
            print(f"no {args.find} witness within the bounds", file=sys.stderr)
            return EXIT_VIOLATION
        _emit(witness)
        return EXIT_OK
    try:
        laws = _parse_laws(args.laws, args.deep)
    except KeyError as exc:
        raise SoftClassError(exc.args[0]) from None
    reports = oracle.run_bounded(bounds, laws, limit=args.max_witnesses,
                                 family_samples=args.samples, seed=args.seed)
    _emit(reports)
    for rep in reports:
        print(f"{rep.law}: {rep.instances} instances, {rep.violation_count} violations",
              file=sys.stderr)
    return EXIT_VIOLATION if any(r.violation_count for r in reports) else EXIT_OK


def cmd_demo(args) -> int:
    result, lines = medical.demo_medical("strict" if args.strict else "partial")
    _emit(result)
    for line in lines:
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="softclass", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument(
        "--context", action="append", metavar="[NAME=]PATH",
        help="register a context document for name references (name defaults to file stem)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in [("union", "soft union"), ("intersect", "soft intersection"),
                        ("subset", "soft subset test")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("left")
        p.add_argument("right")
        p.set_defaults(func=cmd_binary)

    for name in ("image", "preimage"):
        p = sub.add_parser(name, help=f"soft {name} under a class mapping")
        p.add_argument("--map", required=True)
        p.add_argument("--in", dest="input", required=True)
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--raw", dest="result", action="store_const", const="raw")
        mode.add_argument("--full", dest="result", action="store_const", const="full")
        p.set_defaults(func=cmd_image, result="raw")

    p = sub.add_parser("check", help="exhaustive law verification over bounded classes")
    p.add_argument("--x", type=int, default=2, help="max |X|")
    p.add_argument("--y", type=int, default=2, help="max |Y|")
    p.add_argument("--e", type=int, default=2, help="max |E|")
    p.add_argument("--ep", type=int, default=2, help="max |E'|")
    p.add_argument("--min", type=int, default=0, help="smallest size for every side")
    p.add_argument("--laws", help="comma separated law ids (default L1..L10)")
    p.add_argument("--deep", action="store_true", help="also check the 3-argument family laws")
    p.add_argument("--samples", type=int, default=64, help="sampled triples per mapping")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-witnesses", type=int, default=10)
    p.add_argument("--find", choices=oracle.REFUTATION_TARGETS,
                   help="search for the first counterexample instead")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("demo", help="built-in demos")
    p.add_argument("name", choices=["medical"])
    p.add_argument("--strict", action="store_true", help="require a total attribute table")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except SoftClassError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
