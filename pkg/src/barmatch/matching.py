"""Matchings: partial bijections between barcode element sets.

A matching holds its endpoint barcodes so composition, reversal, and
dualization can validate compatibility.  Pairs are kept sorted by
(source element, target element) order, making equality of matchings
plain structural equality.

`delta_matching_report` checks the three closeness clauses a matching
must satisfy to certify two barcodes as delta-close:

  1. every source bar still alive after a 2*delta transition is matched,
  2. every such target bar is matched,
  3. matched bars contain each other's delta-thickenings' cores, i.e.
     each is contained in the other thickened by delta.

The report lists every violation rather than just failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .barcode import Barcode, BarcodeElement
from .endpoints import RationalLike, as_rational


def _element_key(el: BarcodeElement):
    return (el.interval.sort_key(), el.copy)


@dataclass(frozen=True, slots=True)
class Matching:
    """A partial bijection from source barcode elements to target elements."""

    source: Barcode
    target: Barcode
    pairs: tuple[tuple[BarcodeElement, BarcodeElement], ...]

    def __post_init__(self):
        seen_s: set[BarcodeElement] = set()
        seen_t: set[BarcodeElement] = set()
        for s, t in self.pairs:
            if not self.source.has_element(s):
                raise ValueError(f"source element {s} not in source barcode")
            if not self.target.has_element(t):
                raise ValueError(f"target element {t} not in target barcode")
            if s in seen_s:
                raise ValueError(f"source element {s} matched twice")
            if t in seen_t:
                raise ValueError(f"target element {t} matched twice")
            seen_s.add(s)
            seen_t.add(t)
        canon = tuple(sorted(self.pairs, key=lambda p: (_element_key(p[0]), _element_key(p[1]))))
        if canon != self.pairs:
            object.__setattr__(self, "pairs", canon)

    @staticmethod
    def build(
        source: Barcode,
        target: Barcode,
        pairs: Iterable[tuple[BarcodeElement, BarcodeElement]],
    ) -> "Matching":
        return Matching(source, target, tuple(pairs))

    def domain(self) -> frozenset[BarcodeElement]:
        return frozenset(s for s, _ in self.pairs)

    def image(self) -> frozenset[BarcodeElement]:
        return frozenset(t for _, t in self.pairs)

    def forward(self) -> dict[BarcodeElement, BarcodeElement]:
        return dict(self.pairs)

    def backward(self) -> dict[BarcodeElement, BarcodeElement]:
        return {t: s for s, t in self.pairs}

    def __len__(self) -> int:
        return len(self.pairs)


def matching_compose(first: Matching, second: Matching) -> Matching:
    """Relational composite: source of `first` to target of `second`.

    Elements matched by `first` into something `second` leaves unmatched
    simply drop out, as in ordinary partial-function composition.
    """
    if first.target != second.source:
        raise ValueError("matchings not composable: middle barcodes differ")
    fwd = second.forward()
    pairs = tuple((s, fwd[t]) for s, t in first.pairs if t in fwd)
    return Matching(first.source, second.target, pairs)


def matching_reverse(m: Matching) -> Matching:
    return Matching(m.target, m.source, tuple((t, s) for s, t in m.pairs))


def matching_dual(m: Matching) -> Matching:
    """Dualize: reflected target barcode to reflected source barcode.

    The pair (I#k, J#l) becomes (-J#l, -I#k); copy indices ride along since
    reflection maps the copies of I bijectively onto the copies of -I.
    """
    pairs = tuple(
        (BarcodeElement(t.interval.negate(), t.copy), BarcodeElement(s.interval.negate(), s.copy))
        for s, t in m.pairs
    )
    return Matching(m.target.dual(), m.source.dual(), pairs)


def identity_matching(b: Barcode) -> Matching:
    return Matching(b, b, tuple((el, el) for el in b.elements))


def matching_union(a: Matching, b: Matching) -> Matching:
    """Disjoint union: barcodes merge as multisets.

    Copies contributed by `b` are renumbered above the copies of the same
    interval in `a`, so elements of the two pieces never collide.
    """
    from .barcode import barcode_union

    source = barcode_union(a.source, b.source)
    target = barcode_union(a.target, b.target)

    def bump(el: BarcodeElement, base: Barcode) -> BarcodeElement:
        return BarcodeElement(el.interval, el.copy + base.multiplicity(el.interval))

    pairs = a.pairs + tuple(
        (bump(s, a.source), bump(t, a.target)) for s, t in b.pairs
    )
    return Matching(source, target, pairs)


@dataclass(frozen=True, slots=True)
class DeltaMatchingReport:
    """Result of the delta-matching check; falsy iff some clause fails."""

    delta: Fraction
    uncovered_source: tuple[BarcodeElement, ...]
    uncovered_target: tuple[BarcodeElement, ...]
    far_pairs: tuple[tuple[BarcodeElement, BarcodeElement], ...]

    @property
    def ok(self) -> bool:
        return not (self.uncovered_source or self.uncovered_target or self.far_pairs)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> tuple[str, ...]:
        out = []
        for el in self.uncovered_source:
            out.append(f"source bar {el} persists past 2*delta but is unmatched")
        for el in self.uncovered_target:
            out.append(f"target bar {el} persists past 2*delta but is unmatched")
        for s, t in self.far_pairs:
            out.append(f"matched pair {s} -> {t} is not delta-close")
        return tuple(out)


def pair_delta_close(i, j, delta: RationalLike) -> bool:
    """Mutual containment in delta-thickenings: I within J^delta and back."""
    delta = as_rational(delta)
    return j.thicken(delta).contains(i) and i.thicken(delta).contains(j)


def delta_matching_report(m: Matching, delta: RationalLike) -> DeltaMatchingReport:
    delta = as_rational(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    dom = m.domain()
    img = m.image()
    two = 2 * delta
    unc_s = tuple(el for el in m.source.persistent_elements(two) if el not in dom)
    unc_t = tuple(el for el in m.target.persistent_elements(two) if el not in img)
    far = tuple(
        (s, t) for s, t in m.pairs if not pair_delta_close(s.interval, t.interval, delta)
    )
    return DeltaMatchingReport(delta, unc_s, unc_t, far)


def is_delta_matching(m: Matching, source: Barcode, target: Barcode, delta: RationalLike) -> DeltaMatchingReport:
    """Validate that m relates exactly these barcodes, then run the clauses."""
    if m.source != source:
        raise ValueError("matching's source barcode differs from the one supplied")
    if m.target != target:
        raise ValueError("matching's target barcode differs from the one supplied")
    return delta_matching_report(m, delta)
