"""Canonical injections between barcodes and the matching induced by a map.

Surjections and injections of modules move bars around in a rigid way:
a surjection preserves left endpoints and can only shorten bars on the
right, an injection preserves right endpoints and can only extend bars
on the left.  Grouping bars into *blocks* sharing the preserved endpoint
and sending the i-th largest bar of each block to the i-th largest bar
of the corresponding block therefore gives a canonical injection of
barcodes, independent of any basis.

For an arbitrary morphism f the induced matching routes through the
image module A:

    barc(f)  =  (injection B(A) -> B(target))  o  reverse(injection B(A) -> B(source))

Ties inside a block (equal bars) are broken by ascending copy number,
which is what makes induced matchings commute with dualization on the
nose and not just up to relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .barcode import Barcode, BarcodeElement
from .endpoints import Endpoint, Interval
from .matching import Matching, matching_compose
from .module import module_barcode
from .morphism import Morphism, factorize


class BlockSizeError(ValueError):
    """A canonical injection does not exist: some block is too small."""

    def __init__(self, side: str, key: Endpoint, need: int, have: int):
        self.side = side
        self.key = key
        self.need = need
        self.have = have
        where = "right" if side == "right" else "left"
        kind = "ending" if side == "right" else "starting"
        desc = "at -inf" if key.kind == -1 else ("at inf" if key.kind == 1 else
               f"at {key.value}{key.dec}")
        super().__init__(
            f"block of bars {kind} {desc} has {need} bars but only {have} are "
            f"available on the {where}-endpoint-preserving side"
        )


@dataclass(frozen=True, slots=True)
class EnumeratedBlock:
    """Bars sharing one endpoint, enumerated largest-first.

    side 'right' groups by death endpoint and orders by birth ascending;
    side 'left' groups by birth endpoint and orders by death descending.
    Ties are ordered by copy number ascending.
    """

    side: str
    key: Endpoint
    items: tuple[BarcodeElement, ...]


def enumerate_blocks(bc: Barcode, side: str) -> tuple[EnumeratedBlock, ...]:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    groups = _block_items(bc, side)
    return tuple(
        EnumeratedBlock(side, key, tuple(groups[key]))
        for key in sorted(groups, key=lambda e: e._key())
    )


def _block_items(bc: Barcode, side: str) -> dict[Endpoint, list[BarcodeElement]]:
    groups: dict[Endpoint, list[BarcodeElement]] = {}
    for el in bc.elements:
        key = el.interval.d if side == "right" else el.interval.b
        groups.setdefault(key, []).append(el)
    for key, items in groups.items():
        if side == "right":
            # larger bar = smaller birth; ties by copy
            items.sort(key=lambda el: (el.interval.b._key(), el.copy))
        else:
            # larger bar = larger death, so sort death descending; ties by copy
            items.sort(key=lambda el: (_negate_key(el.interval.d._key()), el.copy))
    return groups


def _negate_key(key):
    kind, value, dec = key
    return (-kind, -value, -dec)


def mono_injection(sub: Barcode, sup: Barcode) -> Matching:
    """Canonical injection for an injection of modules sub >-> sup.

    Blocks share the right endpoint; the i-th largest bar of each block
    of `sub` goes to the i-th largest of the same block of `sup`, which
    must be at least as big (BlockSizeError otherwise, naming the block).
    """
    a = _block_items(sub, "right")
    b = _block_items(sup, "right")
    pairs = []
    for key, items in a.items():
        avail = b.get(key, [])
        if len(items) > len(avail):
            raise BlockSizeError("right", key, len(items), len(avail))
        pairs.extend(zip(items, avail))
    return Matching(sub, sup, tuple(pairs))


def epi_injection(quotient: Barcode, total: Barcode) -> Matching:
    """Canonical matching for a surjection of modules total ->> quotient.

    Blocks share the left endpoint; the i-th largest bar of each block of
    `quotient` is matched with the i-th largest of the same block of
    `total`.  The returned matching runs total -> quotient (the reverse
    of the underlying injection of barcodes).
    """
    a = _block_items(quotient, "left")
    b = _block_items(total, "left")
    pairs = []
    for key, items in a.items():
        avail = b.get(key, [])
        if len(items) > len(avail):
            raise BlockSizeError("left", key, len(items), len(avail))
        pairs.extend(zip(avail, items))
    return Matching(total, quotient, tuple(pairs))


def induced_matching(f: Morphism) -> Matching:
    """The matching B(source) -> B(target) induced by f through its image."""
    fac = factorize(f)
    src_bc = module_barcode(f.source)
    tgt_bc = module_barcode(f.target)
    img_bc = module_barcode(fac.image)
    through_src = epi_injection(img_bc, src_bc)
    into_tgt = mono_injection(img_bc, tgt_bc)
    return matching_compose(through_src, into_tgt)


def image_barcode_of(m: Matching) -> Barcode:
    """Barcode of overlaps of the matched pairs.

    For a matching induced by a morphism this is the barcode of the image
    module: each matched pair (I, J) contributes the interval I cap J.
    """
    overlaps = []
    for s, t in m.pairs:
        i, j = s.interval, t.interval
        b = i.b if j.b <= i.b else j.b
        d = i.d if i.d <= j.d else j.d
        overlaps.append(Interval(b, d))
    return Barcode.from_intervals(overlaps)
