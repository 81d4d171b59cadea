"""File formats: modules and morphisms as JSON, barcodes and matchings as text.

Rationals are serialized as strings like "3/2" or "2" (with -inf/inf
literals for infinite endpoints), so every round trip is bit exact.
Matrices are flat row-major integer arrays; shapes are recovered from the
dims field.  All parse errors carry a line and column.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .barcode import Barcode, BarcodeElement
from .endpoints import Endpoint, Interval, NEG_INF, POS_INF
from .gf import Matrix, validate_char
from .matching import Matching
from .module import GridModule
from .morphism import Morphism


class ParseError(ValueError):
    """Input text rejected; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


def _locate(text: str, token: str) -> tuple[int, int]:
    """Best-effort position of a token's first occurrence."""
    at = text.find(token)
    if at < 0:
        return 1, 1
    line = text.count("\n", 0, at) + 1
    col = at - (text.rfind("\n", 0, at) + 1) + 1
    return line, col


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {s!r}") from None


# ---------------------------------------------------------------------------
# barcode text: one bar per line, `<lb><b>,<d><rb> xM`


def serialize_barcode(bc: Barcode) -> str:
    lines = []
    for iv, mult in bc.bars:
        suffix = f" x{mult}" if mult > 1 else ""
        lines.append(f"{iv}{suffix}")
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_endpoint(
    text: str, token: str, side: str, line: int, col: int
) -> Endpoint | None:
    """None encodes the infinity appropriate for the side."""
    token = token.strip()
    if (side == "b" and token == "-inf") or (side == "d" and token == "inf"):
        return None
    if token in ("inf", "-inf"):
        raise ParseError(f"{token} cannot be the {side} endpoint", line, col)
    try:
        value = parse_rational(token)
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None
    return Endpoint.finite(value, "-")


def parse_interval_token(token: str, line: int = 1, col: int = 1) -> Interval:
    """`<lb><b>,<d><rb>` with decorations read off the brackets."""
    token = token.strip()
    if len(token) < 5 or token[0] not in "[(" or token[-1] not in ")]":
        raise ParseError(f"malformed interval {token!r}", line, col)
    body = token[1:-1]
    if body.count(",") != 1:
        raise ParseError(f"interval needs exactly one comma: {token!r}", line, col)
    b_txt, d_txt = body.split(",")
    b = _parse_endpoint(token, b_txt, "b", line, col + 1)
    d = _parse_endpoint(token, d_txt, "d", line, col + 2 + len(b_txt))
    if b is None:
        if token[0] != "(":
            raise ParseError("-inf endpoint must use '('", line, col)
        be = NEG_INF
    else:
        be = b if token[0] == "[" else Endpoint(0, b.value, "+")
    if d is None:
        if token[-1] != ")":
            raise ParseError("inf endpoint must use ')'", line, col + len(token) - 1)
        de = POS_INF
    else:
        de = Endpoint(0, d.value, "-") if token[-1] == ")" else Endpoint(0, d.value, "+")
    try:
        return Interval(be, de)
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None


def parse_barcode(text: str) -> Barcode:
    counts: dict[Interval, int] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        col = raw.index(stripped[0]) + 1
        mult = 1
        body = stripped
        if " x" in stripped:
            body, _, mtxt = stripped.rpartition(" x")
            mcol = col + len(body) + 2
            if not mtxt.isdigit():
                raise ParseError(f"malformed multiplicity {mtxt!r}", ln, mcol)
            mult = int(mtxt)
            if mult < 1:
                raise ParseError("multiplicities must be positive", ln, mcol)
        iv = parse_interval_token(body, ln, col)
        counts[iv] = counts.get(iv, 0) + mult
    return Barcode.from_counts(counts)


# ---------------------------------------------------------------------------
# matching text: `<interval>#<copy> -> <interval>#<copy>` per pair


def serialize_matching(m: Matching) -> str:
    lines = sorted(f"{s} -> {t}" for s, t in m.pairs)
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_element(token: str, line: int, col: int) -> BarcodeElement:
    token = token.strip()
    if "#" not in token:
        raise ParseError(f"element needs '#<copy>': {token!r}", line, col)
    ivtxt, _, ctxt = token.rpartition("#")
    if not ctxt.isdigit() or int(ctxt) < 1:
        raise ParseError(f"malformed copy number {ctxt!r}", line, col + len(ivtxt) + 1)
    return BarcodeElement(parse_interval_token(ivtxt, line, col), int(ctxt))


def parse_matching(text: str, source: Barcode, target: Barcode) -> Matching:
    """Pairs are resolved against the provided barcodes."""
    pairs = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        col = raw.index(stripped[0]) + 1
        if " -> " not in stripped:
            raise ParseError("pair lines use ' -> '", ln, col)
        left, _, right = stripped.partition(" -> ")
        s = _parse_element(left, ln, col)
        t = _parse_element(right, ln, col + len(left) + 4)
        pairs.append((s, t))
    try:
        return Matching(source, target, tuple(pairs))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# module / morphism JSON


def module_to_obj(m: GridModule) -> dict:
    obj = {
        "p": m.p,
        "grid": [format_rational(t) for t in m.grid],
        "dims": list(m.dims),
        "maps": [list(mat.data) for mat in m.maps],
    }
    if m.left_open:
        obj["left_open"] = True
    return obj


def serialize_module(m: GridModule) -> str:
    return json.dumps(module_to_obj(m), indent=2) + "\n"


def _expect(obj: dict, key: str, text: str):
    if key not in obj:
        raise ParseError(f"missing field {key!r}", *(_locate(text, "{")))
    return obj[key]


def module_from_obj(obj, text: str = "") -> GridModule:
    if not isinstance(obj, dict):
        raise ParseError("module must be an object")
    p = _expect(obj, "p", text)
    grid_raw = _expect(obj, "grid", text)
    dims = _expect(obj, "dims", text)
    maps_raw = _expect(obj, "maps", text)
    if not isinstance(p, int) or isinstance(p, bool):
        raise ParseError("p must be an integer", *(_locate(text, '"p"')))
    try:
        validate_char(p)
    except ValueError as exc:
        raise ParseError(str(exc), *(_locate(text, '"p"'))) from None
    grid = []
    for s in grid_raw:
        if isinstance(s, str):
            try:
                grid.append(parse_rational(s))
            except ValueError:
                raise ParseError(
                    f"malformed rational {s!r}", *(_locate(text, json.dumps(s)))
                ) from None
        elif isinstance(s, int) and not isinstance(s, bool):
            grid.append(Fraction(s))
        else:
            raise ParseError(
                f"grid values must be rational strings, got {s!r}",
                *(_locate(text, '"grid"')),
            )
    if not all(isinstance(d, int) and d >= 0 for d in dims):
        raise ParseError("dims must be nonnegative integers", *(_locate(text, '"dims"')))
    if len(maps_raw) != max(len(grid) - 1, 0):
        raise ParseError(
            "maps must have one entry per consecutive grid pair",
            *(_locate(text, '"maps"')),
        )
    mats = []
    for i, flat in enumerate(maps_raw):
        rows, cols = dims[i + 1], dims[i]
        if not isinstance(flat, list) or len(flat) != rows * cols or not all(
            isinstance(v, int) for v in flat
        ):
            raise ParseError(
                f"maps[{i}] must be a flat row-major array of {rows * cols} integers",
                *(_locate(text, '"maps"')),
            )
        mats.append(Matrix(rows, cols, tuple(flat), p))
    try:
        return GridModule(
            p, tuple(grid), tuple(dims), tuple(mats), bool(obj.get("left_open", False))
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_module(text: str) -> GridModule:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return module_from_obj(obj, text)


def morphism_to_obj(
    f: Morphism, source_ref: str | None = None, target_ref: str | None = None
) -> dict:
    return {
        "source": source_ref if source_ref is not None else module_to_obj(f.source),
        "target": target_ref if target_ref is not None else module_to_obj(f.target),
        "mats": [list(mat.data) for mat in f.mats],
    }


def serialize_morphism(
    f: Morphism, source_ref: str | None = None, target_ref: str | None = None
) -> str:
    return json.dumps(morphism_to_obj(f, source_ref, target_ref), indent=2) + "\n"


def _resolve_module(spec, text: str, base_dir: str | None) -> GridModule:
    if isinstance(spec, str):
        path = spec if os.path.isabs(spec) or base_dir is None else os.path.join(base_dir, spec)
        try:
            with open(path, encoding="utf-8") as fh:
                return parse_module(fh.read())
        except OSError as exc:
            raise ParseError(
                f"cannot read module reference {spec!r}: {exc.strerror}",
                *(_locate(text, json.dumps(spec))),
            ) from None
    return module_from_obj(spec, text)


def morphism_from_obj(obj, text: str = "", base_dir: str | None = None) -> Morphism:
    if not isinstance(obj, dict):
        raise ParseError("morphism must be an object")
    src = _resolve_module(_expect(obj, "source", text), text, base_dir)
    tgt = _resolve_module(_expect(obj, "target", text), text, base_dir)
    mats_raw = _expect(obj, "mats", text)
    if len(mats_raw) != src.n_cells:
        raise ParseError("mats must have one entry per grid point", *(_locate(text, '"mats"')))
    mats = []
    for i, flat in enumerate(mats_raw):
        rows, cols = tgt.dims[i], src.dims[i]
        if not isinstance(flat, list) or len(flat) != rows * cols or not all(
            isinstance(v, int) for v in flat
        ):
            raise ParseError(
                f"mats[{i}] must be a flat row-major array of {rows * cols} integers",
                *(_locate(text, '"mats"')),
            )
        mats.append(Matrix(rows, cols, tuple(flat), src.p))
    try:
        return Morphism(src, tgt, tuple(mats))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_morphism(text: str, base_dir: str | None = None) -> Morphism:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return morphism_from_obj(obj, text, base_dir)
