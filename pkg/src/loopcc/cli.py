"""Batch command-line surface with stable JSON I/O.

Exit codes: 0 success (and all relations hold, for `verify`), 1 relation
failure, 2 malformed input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classifier, combinatorics, matchcat, recipe, relations
from .errors import Error, InconsistentParameters, NotARepresentation
from .matchcat import AlphaForm, alpha_to_dense, shift_embed
from .scalars import ExactComplex, ec

PAIRFILE_KEYS = {"S", "R", "metadata"}


class PairFile:
    """On-disk pair of alpha forms with optional construction metadata."""

    def __init__(self, s: AlphaForm, r: AlphaForm, metadata: dict | None = None):
        if s.n != r.n:
            raise Error("S and R must have equal rank")
        self.s = s
        self.r = r
        self.metadata = metadata or {}

    def to_json(self) -> dict:
        out = {"S": self.s.to_json(), "R": self.r.to_json()}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PairFile":
        unknown = set(obj) - PAIRFILE_KEYS
        if unknown:
            raise Error(f"unknown pair-file fields: {sorted(unknown)}")
        return cls(
            AlphaForm.from_json(obj["S"]),
            AlphaForm.from_json(obj["R"]),
            obj.get("metadata"),
        )


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_pair(path: str) -> PairFile:
    return PairFile.from_json(_load_json(path))


def _float_scalar(value, eps: float) -> ExactComplex:
    def approx(x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x)
        frac = Fraction(x).limit_denominator(10**6)
        if abs(frac - Fraction(x)) > Fraction(str(eps)):
            raise Error(f"value {x} is farther than eps from any small rational")
        return frac

    if isinstance(value, dict):
        return ExactComplex(approx(value.get("re", 0)), approx(value.get("im", 0)))
    return ExactComplex(approx(value), Fraction(0))


def _alpha_from_floats(obj: dict, eps: float) -> AlphaForm:
    vertex = [_float_scalar(x, eps) for x in obj["vertex"]]
    blocks = {}
    for edge in obj["edges"]:
        rows = [[_float_scalar(x, eps) for x in row] for row in edge["block"]]
        blocks[(edge["i"], edge["j"])] = matchcat.Block.from_rows(rows)
    return AlphaForm.make(vertex, blocks)


def _load_shape(path: str) -> combinatorics.LabelledShape:
    obj = _load_json(path)
    entries = obj.get("plus", []) + obj.get("minus", [])
    if entries and isinstance(entries[0], dict):
        return combinatorics.LabelledShape.from_json(obj)
    return combinatorics.canonical_labelling(combinatorics.SignedShape.from_json(obj))


def _render_multiset(ms) -> str:
    return " ".join(f"{c.top}.{c.bottom}^{m}" for c, m in ms) or "-"


def cmd_count(args) -> int:
    unsigned, signed = combinatorics.count_series(args.max)
    seq = signed if args.signed else unsigned
    if args.format == "json":
        print(_dump(seq))
    elif args.format == "tsv":
        print("\t".join(str(x) for x in seq))
    else:
        print(" ".join(str(x) for x in seq))
    return 0


def cmd_enumerate(args) -> int:
    if args.labelled:
        if args.n > 8 and not args.force:
            print(
                f"refusing to enumerate labelled shapes at rank {args.n} "
                "(grows super-exponentially); pass --force to override",
                file=sys.stderr,
            )
            return 2
        shapes = combinatorics.enum_labelled(args.n)
        payload = [s.to_json() for s in shapes]
        lines = [json.dumps(p, sort_keys=True) for p in payload]
    elif args.signed:
        shapes = combinatorics.enum_signed(args.n)
        payload = [s.to_json() for s in shapes]
        lines = [
            f"{_render_multiset(s.plus)} | {_render_multiset(s.minus)}" for s in shapes
        ]
    else:
        multisets = combinatorics.enum_multisets(args.n)
        payload = [
            [[c.top, c.bottom] for c, m in ms for _ in range(m)] for ms in multisets
        ]
        lines = [_render_multiset(ms) for ms in multisets]
    if args.format == "json":
        print(_dump(payload))
    else:
        print("\n".join(lines))
    return 0


def cmd_construct(args) -> int:
    shape = _load_shape(args.shape)
    if args.random:
        point = recipe.random_point(shape, args.seed)
    elif args.params:
        point = recipe.ParamPoint.from_json(_load_json(args.params))
    else:
        print("construct needs --params FILE or --random", file=sys.stderr)
        return 2
    s, r = recipe.make_recipe(shape, point)
    meta = {"shape": shape.to_json(), "params": point.to_json()}
    if args.random:
        meta["seed"] = args.seed
    _emit(args, PairFile(s, r, meta).to_json())
    return 0


def cmd_verify(args) -> int:
    if args.float_import:
        obj = _load_json(args.pair)
        unknown = set(obj) - PAIRFILE_KEYS
        if unknown:
            raise Error(f"unknown pair-file fields: {sorted(unknown)}")
        pair = PairFile(
            _alpha_from_floats(obj["S"], args.eps),
            _alpha_from_floats(obj["R"], args.eps),
            obj.get("metadata"),
        )
    else:
        pair = _load_pair(args.pair)
    report = relations.verify_pair(pair.s, pair.r, method=args.method)
    _emit(args, report.to_json())
    return 0 if report.all_hold() else 1


def cmd_classify(args) -> int:
    pair = _load_pair(args.pair)
    try:
        result = classifier.canonicalize(pair.s, pair.r)
        full = classifier.interrogate(pair.s, pair.r)
    except NotARepresentation as exc:
        print(f"not a representation: {exc}", file=sys.stderr)
        return 1
    payload = full.to_json()
    payload["canonical"] = result.to_json()
    _emit(args, payload)
    return 0


def cmd_gauge(args) -> int:
    pair = _load_pair(args.pair)
    factors = {}
    for entry in _load_json(args.m):
        factors[(entry["i"], entry["j"])] = ExactComplex.from_json(entry["m"])
    s = matchcat.gauge_transform(pair.s, factors)
    r = matchcat.gauge_transform(pair.r, factors)
    _emit(args, PairFile(s, r, pair.metadata).to_json())
    return 0


def cmd_restrict(args) -> int:
    pair = _load_pair(args.pair)
    image = [int(tok) for tok in args.map.split(",") if tok.strip()]
    s, r = matchcat.restrict((pair.s, pair.r), image)
    _emit(args, PairFile(s, r).to_json())
    return 0


def cmd_export_dense(args) -> int:
    pair = _load_pair(args.pair)
    s, r = alpha_to_dense(pair.s), alpha_to_dense(pair.r)
    if args.width == 3:
        s = shift_embed(s, 1, pair.s.n)
        r = shift_embed(r, 1, pair.r.n)
    _emit(args, {"S": s.to_json(), "R": r.to_json()})
    return 0


def _emit(args, payload: dict):
    text = _dump(payload)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopcc",
        description="Construct, verify and classify charge-conserving loop braid pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="coefficients of the counting series")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--signed", action="store_true")
    p.add_argument("--format", choices=("plain", "json", "tsv"), default="plain")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list index sets at a given rank")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--signed", action="store_true")
    group.add_argument("--labelled", action="store_true")
    p.add_argument("--force", action="store_true")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="build a pair from a shape")
    p.add_argument("--shape", required=True, help="signed or labelled shape JSON file")
    p.add_argument("--params", help="parameter point JSON file")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the presentation relations")
    p.add_argument("pair")
    p.add_argument("--method", choices=("dense", "subsets", "both"), default="subsets")
    p.add_argument("--float-import", action="store_true")
    p.add_argument(
        "--eps",
        type=float,
        default=1e-9,
        help="max float-to-rational rounding error accepted with --float-import",
    )
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="interrogate a verified pair")
    p.add_argument("pair")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gauge", help="apply a diagonal gauge transform")
    p.add_argument("pair")
    p.add_argument("--m", required=True, help='JSON file [{"i":1,"j":2,"m":scalar}, ...]')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("restrict", help="restrict along an injective index map")
    p.add_argument("pair")
    p.add_argument("--map", required=True, help="comma-separated images of 1..M")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("export-dense", help="write explicit matrices as sparse JSON")
    p.add_argument("pair")
    p.add_argument("--width", type=int, choices=(2, 3), default=2)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dense)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InconsistentParameters as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (Error, OSError, KeyError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
