"""Command-line interface.

Exit codes: 0 success, 1 domain error (a JSON error record goes to
stderr), 2 usage error.  All outputs are deterministic for identical
inputs, flags, and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io
from .generator import GenConfig, gen_module, gen_morphism
from .induced import induced_matching
from .module import module_barcode, module_dual
from .morphism import morphism_dual
from .plot import plot_svg
from .stability import bottleneck_distance, single_morphism_check, stability_matching
from .verify import (
    delta_matching_certificate,
    certificate_to_text,
    parse_certificate,
    reverify_certificate,
    verify_suite,
)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_delta(text: str) -> Fraction:
    delta = io.parse_rational(text)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    return delta


def _load_module(path: str):
    return io.parse_module(_read(path))


def _load_morphism(path: str):
    return io.parse_morphism(_read(path), base_dir=os.path.dirname(os.path.abspath(path)))


def cmd_barcode(args) -> int:
    bc = module_barcode(_load_module(args.input))
    if args.format == "structured":
        obj = {"bars": [[str(iv), mult] for iv, mult in bc.bars]}
        _emit(json.dumps(obj, indent=2) + "\n", args.output)
    else:
        _emit(io.serialize_barcode(bc), args.output)
    return 0


def cmd_match(args) -> int:
    f = _load_morphism(args.morphism)
    m = induced_matching(f)
    if args.format == "structured":
        obj = {
            "source": io.serialize_barcode(m.source),
            "target": io.serialize_barcode(m.target),
            "pairs": [[str(s), str(t)] for s, t in m.pairs],
        }
        _emit(json.dumps(obj, indent=2) + "\n", args.output)
    else:
        _emit(io.serialize_matching(m), args.output)
    return 0


def cmd_bottleneck(args) -> int:
    c = io.parse_barcode(_read(args.a))
    d = io.parse_barcode(_read(args.b))
    r = bottleneck_distance(c, d)
    if args.format == "structured":
        obj = {
            "value": io.format_rational(r.value) if r.value is not None else "inf",
            "attained": r.attained,
        }
        if r.witness is not None:
            witness_delta = r.value if r.attained else r.value + Fraction(1, 1024)
            obj["witness"] = delta_matching_certificate(r.witness, witness_delta)
        _emit(json.dumps(obj, indent=2) + "\n", args.output)
    else:
        _emit(str(r) + "\n", args.output)
    return 0


def cmd_stability(args) -> int:
    f = _load_morphism(args.morphism)
    delta = _parse_delta(args.delta)
    m = stability_matching(f, delta)
    if args.format == "structured":
        obj = {
            "delta": io.format_rational(delta),
            "single_morphism_check": single_morphism_check(f, delta),
            "certificate": delta_matching_certificate(m, delta),
        }
        _emit(json.dumps(obj, indent=2) + "\n", args.output)
    else:
        _emit(io.serialize_matching(m), args.output)
    return 0


def cmd_verify(args) -> int:
    if args.cert is not None:
        ok, problems = reverify_certificate(parse_certificate(_read(args.cert)))
        if ok:
            _emit("certificate ok\n", args.output)
            return 0
        _emit("certificate INVALID\n" + "".join(p + "\n" for p in problems), args.output)
        return 1
    cfg = GenConfig(seed=args.seed, field_char=args.field_char)
    report = verify_suite(cfg, args.trials, out_dir=args.out_dir)
    _emit(report.render(), args.output)
    return 0 if report.ok else 1


def cmd_gen(args) -> int:
    cfg = GenConfig(seed=args.seed, field_char=args.field_char)
    if args.kind == "module":
        text = io.serialize_module(gen_module(cfg).module)
    else:
        src = gen_module(cfg).module
        tgt = gen_module(GenConfig(seed=args.seed + 1, field_char=args.field_char)).module
        text = io.serialize_morphism(gen_morphism(src, tgt, cfg))
    _emit(text, args.output)
    return 0


def cmd_dualize(args) -> int:
    if args.input is not None:
        _emit(io.serialize_module(module_dual(_load_module(args.input))), args.output)
    elif args.morphism is not None:
        _emit(io.serialize_morphism(morphism_dual(_load_morphism(args.morphism))), args.output)
    else:
        bc = io.parse_barcode(_read(args.a))
        _emit(io.serialize_barcode(bc.dual()), args.output)
    return 0


def cmd_plot(args) -> int:
    groups = []
    for path in args.input:
        label = os.path.splitext(os.path.basename(path))[0]
        groups.append((label, io.parse_barcode(_read(path))))
    matching = None
    if args.matching is not None:
        if not groups:
            raise ValueError("a matching needs barcodes to join")
        matching = io.parse_matching(_read(args.matching), groups[0][1], groups[-1][1])
    horizon = io.parse_rational(args.horizon) if args.horizon is not None else None
    _emit(plot_svg(groups, matching, horizon), args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="barmatch",
        description="Barcodes, induced matchings, and interleaving certificates "
        "for persistence modules on finite grids.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p, fmt=True):
        p.add_argument("-o", "--output", default=None, help="write here instead of stdout")
        if fmt:
            p.add_argument(
                "--format", choices=("text", "structured"), default="text",
                help="text for humans, structured for machines",
            )

    p = sub.add_parser("barcode", help="barcode of a module file")
    p.add_argument("-i", "--input", required=True, metavar="MODULE.json")
    add_common(p)
    p.set_defaults(fn=cmd_barcode)

    p = sub.add_parser("match", help="induced matching of a morphism file")
    p.add_argument("-f", "--morphism", required=True, metavar="MORPHISM.json")
    add_common(p)
    p.set_defaults(fn=cmd_match)

    p = sub.add_parser("bottleneck", help="bottleneck distance between barcode files")
    p.add_argument("-a", required=True, metavar="C.bc")
    p.add_argument("-b", required=True, metavar="D.bc")
    add_common(p)
    p.set_defaults(fn=cmd_bottleneck)

    p = sub.add_parser("stability", help="shift-reindexed induced matching at delta")
    p.add_argument("-f", "--morphism", required=True, metavar="MORPHISM.json")
    p.add_argument("--delta", required=True, metavar="RATIONAL")
    add_common(p)
    p.set_defaults(fn=cmd_stability)

    p = sub.add_parser("verify", help="run property suite or re-check a certificate")
    p.add_argument("--cert", default=None, metavar="CERT.json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--field-char", type=int, default=2)
    p.add_argument("--out-dir", default=None, help="directory for counterexample files")
    add_common(p, fmt=False)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="emit a random module or morphism file")
    p.add_argument("--kind", choices=("module", "morphism"), default="module")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--field-char", type=int, default=2)
    add_common(p, fmt=False)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("dualize", help="dualize a module, morphism, or barcode file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-i", "--input", default=None, metavar="MODULE.json")
    g.add_argument("-f", "--morphism", default=None, metavar="MORPHISM.json")
    g.add_argument("-a", default=None, metavar="BARCODE.bc")
    add_common(p, fmt=False)
    p.set_defaults(fn=cmd_dualize)

    p = sub.add_parser("plot", help="render barcodes (and a matching) as SVG")
    p.add_argument(
        "-i", "--input", action="append", default=[], metavar="BARCODE.bc",
        help="barcode file; repeat for several bands",
    )
    p.add_argument("--matching", default=None, metavar="MATCHING.txt",
                   help="joins the first band to the last")
    p.add_argument("--horizon", default=None, metavar="RATIONAL",
                   help="right clip edge for infinite bars")
    add_common(p, fmt=False)
    p.set_defaults(fn=cmd_plot)
    return top


def _error_record(exc: Exception) -> str:
    record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, io.ParseError):
        record["error"]["line"] = exc.line
        record["error"]["column"] = exc.col
    return json.dumps(record) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(_error_record(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
