"""Barcodes: finite multisets of intervals.

A barcode stores each distinct interval once with a multiplicity; its
*elements* are (interval, copy) pairs with copies numbered 1..m, so a
matching between barcodes can distinguish repeated bars.  Element order
is canonical (interval sort key, then copy), and every operation here
preserves or recomputes that order, which keeps serialization and
matchings deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .endpoints import Interval, RationalLike, as_rational


class BarcodeElement(NamedTuple):
    interval: Interval
    copy: int

    def __str__(self) -> str:
        return f"{self.interval}#{self.copy}"


@dataclass(frozen=True, slots=True)
class Barcode:
    """Sorted (interval, multiplicity) pairs; intervals distinct, counts >= 1."""

    bars: tuple[tuple[Interval, int], ...]

    def __post_init__(self):
        keys = [iv.sort_key() for iv, _ in self.bars]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ValueError("bars must be sorted with distinct intervals")
        if any(m < 1 for _, m in self.bars):
            raise ValueError("multiplicities must be >= 1")

    @staticmethod
    def from_intervals(intervals: Iterable[Interval]) -> "Barcode":
        counts: dict[Interval, int] = {}
        for iv in intervals:
            counts[iv] = counts.get(iv, 0) + 1
        return Barcode.from_counts(counts)

    @staticmethod
    def from_counts(counts: dict[Interval, int]) -> "Barcode":
        items = sorted(((iv, m) for iv, m in counts.items() if m), key=lambda t: t[0].sort_key())
        return Barcode(tuple(items))

    @staticmethod
    def empty() -> "Barcode":
        return Barcode(())

    def __len__(self) -> int:
        return sum(m for _, m in self.bars)

    def multiplicity(self, iv: Interval) -> int:
        for jv, m in self.bars:
            if jv == iv:
                return m
        return 0

    @property
    def elements(self) -> tuple[BarcodeElement, ...]:
        return tuple(
            BarcodeElement(iv, k) for iv, m in self.bars for k in range(1, m + 1)
        )

    def has_element(self, el: BarcodeElement) -> bool:
        return 1 <= el.copy <= self.multiplicity(el.interval)

    def shift(self, delta: RationalLike) -> "Barcode":
        """Translate every bar down by delta."""
        delta = as_rational(delta)
        return Barcode.from_counts({iv.shift(delta): m for iv, m in self.bars})

    def dual(self) -> "Barcode":
        """Reflect every bar through 0."""
        return Barcode.from_counts({iv.negate(): m for iv, m in self.bars})

    def persistent(self, eps: RationalLike) -> "Barcode":
        """Sub-multiset of bars with b + eps < d (eps >= 0)."""
        eps = as_rational(eps)
        if eps < 0:
            raise ValueError("eps must be >= 0")
        return Barcode(tuple((iv, m) for iv, m in self.bars if iv.nontrivial_at(eps)))

    def persistent_elements(self, eps: RationalLike) -> tuple[BarcodeElement, ...]:
        return self.persistent(eps).elements

    def undecorate(self) -> tuple[tuple[Fraction | None, Fraction | None], ...]:
        """Multiset of plain (b, d) value pairs, sorted; None encodes infinity.

        Bars with b = d as values (the one-point bars [t, t]) vanish here:
        they have no undecorated extent.
        """
        out = []
        for iv, m in self.bars:
            bv, dv = iv.undecorated()
            if bv is not None and dv is not None and bv == dv:
                continue
            out.extend([(bv, dv)] * m)
        key = lambda pair: (
            (0, pair[0]) if pair[0] is not None else (-1, Fraction(0)),
            (0, pair[1]) if pair[1] is not None else (1, Fraction(0)),
        )
        return tuple(sorted(out, key=key))

    def trivializing_shift(self) -> tuple[Fraction | None, bool]:
        """(infimum eps making every bar trivial, attained flag).

        None means no finite eps works (some bar is infinite).  The empty
        barcode gives (0, True).
        """
        worst: Fraction = Fraction(0)
        attained = True
        for iv, _ in self.bars:
            ln, att = iv.trivializing_shift()
            if ln is None:
                return None, False
            if ln > worst:
                worst, attained = ln, att
            elif ln == worst and not att:
                attained = False
        return worst, attained

    def __str__(self) -> str:
        if not self.bars:
            return "(empty barcode)"
        return "; ".join(f"{iv} x{m}" if m > 1 else str(iv) for iv, m in self.bars)


def barcode_union(a: Barcode, b: Barcode) -> Barcode:
    """Multiset union (multiplicities add)."""
    counts = {iv: m for iv, m in a.bars}
    for iv, m in b.bars:
        counts[iv] = counts.get(iv, 0) + m
    return Barcode.from_counts(counts)
