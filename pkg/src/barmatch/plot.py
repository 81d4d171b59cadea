"""Deterministic SVG rendering of barcodes and matchings.

Each barcode gets a labeled band of horizontal bars, one row per bar in
canonical order.  A matching joins bars of the first band to bars of the
last band with dashed connectors; unmatched bars in those bands are
greyed.  Infinite ends run to a clip edge set by the horizon.  All
coordinates are formatted with fixed precision, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .barcode import Barcode, BarcodeElement
from .endpoints import RationalLike, as_rational
from .matching import Matching

_MARGIN = 30.0
_ROW = 16.0
_BAND_GAP = 26.0
_LABEL_H = 16.0
_WIDTH = 640.0

_MATCHED = "#2a6fb0"
_UNMATCHED = "#b3b3b3"
_NEUTRAL = "#666666"
_JOIN = "#d08a2e"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def plot_svg(
    groups: list[tuple[str, Barcode]],
    matching: Matching | None = None,
    horizon: RationalLike | None = None,
) -> str:
    """Render labeled barcode bands, joining matched bars across the ends.

    The matching, when present, must relate the first group's barcode to
    the last group's.
    """
    if matching is not None:
        if not groups or matching.source != groups[0][1] or matching.target != groups[-1][1]:
            raise ValueError("matching must relate the first barcode to the last")

    finite: list[Fraction] = []
    for _, bc in groups:
        for iv, _ in bc.bars:
            for e in (iv.b, iv.d):
                if e.kind == 0:
                    finite.append(e.value)
    if finite:
        lo, hi = min(finite), max(finite)
    else:
        lo, hi = Fraction(0), Fraction(1)
    right_clip = as_rational(horizon) if horizon is not None else hi + 1
    if right_clip <= hi:
        right_clip = hi + 1  # horizon may widen the window, never crop finite bars
    left_clip = lo - 1
    span = float(right_clip - left_clip)

    def x_of(v: Fraction) -> float:
        return _MARGIN + (float(v) - float(left_clip)) / span * (_WIDTH - 2 * _MARGIN)

    rows: dict[tuple[int, BarcodeElement], float] = {}
    body: list[str] = []
    y = _MARGIN
    matched_src = matching.domain() if matching is not None else frozenset()
    matched_tgt = matching.image() if matching is not None else frozenset()
    for gi, (label, bc) in enumerate(groups):
        body.append(
            f'<text x="{_fmt(_MARGIN)}" y="{_fmt(y)}" font-size="12" '
            f'font-family="sans-serif" fill="#333333">{escape(label)}</text>'
        )
        y += _LABEL_H
        for el in bc.elements:
            rows[(gi, el)] = y
            iv = el.interval
            x1 = x_of(iv.b.value) if iv.b.kind == 0 else x_of(left_clip)
            x2 = x_of(iv.d.value) if iv.d.kind == 0 else x_of(right_clip)
            if matching is None:
                color = _NEUTRAL
            elif gi == 0:
                color = _MATCHED if el in matched_src else _UNMATCHED
            elif gi == len(groups) - 1:
                color = _MATCHED if el in matched_tgt else _UNMATCHED
            else:
                color = _NEUTRAL
            body.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y)}" x2="{_fmt(x2)}" y2="{_fmt(y)}" '
                f'stroke="{color}" stroke-width="3"/>'
            )
            # endpoint markers: disc for an included end, ring for an excluded one
            if iv.b.kind == 0:
                closed = iv.b.dec == "-"
                body.append(_marker(x1, y, color, closed))
            if iv.d.kind == 0:
                closed = iv.d.dec == "+"
                body.append(_marker(x2, y, color, closed))
            y += _ROW
        if not len(bc):
            y += _ROW  # keep an empty band visible
        y += _BAND_GAP
    if matching is not None:
        last = len(groups) - 1
        for s, t in matching.pairs:
            sx = x_of(s.interval.b.value) if s.interval.b.kind == 0 else x_of(left_clip)
            tx = x_of(t.interval.b.value) if t.interval.b.kind == 0 else x_of(left_clip)
            body.append(
                f'<line x1="{_fmt(sx)}" y1="{_fmt(rows[(0, s)])}" '
                f'x2="{_fmt(tx)}" y2="{_fmt(rows[(last, t)])}" '
                f'stroke="{_JOIN}" stroke-width="1" stroke-dasharray="4 3" opacity="0.8"/>'
            )
    height = y - _BAND_GAP + _MARGIN if groups else 2 * _MARGIN
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_WIDTH)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(_WIDTH)} {_fmt(height)}">'
    )
    background = f'<rect width="{_fmt(_WIDTH)}" height="{_fmt(height)}" fill="#ffffff"/>'
    return "\n".join([head, background, *body, "</svg>"]) + "\n"


def _marker(x: float, y: float, color: str, closed: bool) -> str:
    if closed:
        return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{color}"/>'
    return (
        f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#ffffff" '
        f'stroke="{color}" stroke-width="1.5"/>'
    )
