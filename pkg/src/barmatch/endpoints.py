"""Decorated endpoints and intervals.

A bar on the real line may be open or closed at each end.  Rather than
carrying four interval species around, each end is a *decorated endpoint*:
a rational value tagged '-' or '+', or one of the two infinities.  The
total order puts t^- immediately before t^+ for every value t:

    ... < 1^- < 1^+ < 2^- < 2^+ < ...   with -inf and inf at the ends.

An interval is a pair b < d of decorated endpoints and decodes as

    <s^-, t^->  =  [s, t)        <s^-, t^+>  =  [s, t]
    <s^+, t^->  =  (s, t)        <s^+, t^+>  =  (s, t]
    <-inf, t^-> =  (-inf, t)     <s^-, inf>  =  [s, inf)   ... etc.

so containment, shifting, and thickening of arbitrary half-open/closed
bars reduce to endpoint comparisons with no case analysis at call sites.

Shifting by a rational delta moves the value and keeps the decoration;
infinities absorb shifts.  Negation (used for dualizing) sends (x, dec)
to (-x, other dec) and swaps the infinities, reversing the order.

Only exact rationals are accepted; floats raise TypeError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]

_DEC_RANK = {"-": 0, "+": 1}


def as_rational(x) -> Fraction:
    """Coerce to Fraction, rejecting floats (no rounding surprises)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected an exact rational (int or Fraction), got {type(x).__name__}")


@dataclass(frozen=True, slots=True)
class Endpoint:
    """One decorated endpoint: kind is -1 for -inf, 0 for finite, 1 for inf."""

    kind: int
    value: Fraction = Fraction(0)
    dec: str = "-"

    def __post_init__(self):
        if self.kind not in (-1, 0, 1):
            raise ValueError(f"bad endpoint kind {self.kind}")
        if self.kind == 0:
            if self.dec not in _DEC_RANK:
                raise ValueError(f"decoration must be '-' or '+', got {self.dec!r}")
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", as_rational(self.value))
        else:
            # normalize so the two representations of each infinity compare equal
            object.__setattr__(self, "value", Fraction(0))
            object.__setattr__(self, "dec", "-")

    @staticmethod
    def finite(value: RationalLike, dec: str) -> "Endpoint":
        return Endpoint(0, as_rational(value), dec)

    @property
    def is_finite(self) -> bool:
        return self.kind == 0

    def _key(self):
        return (self.kind, self.value, _DEC_RANK[self.dec])

    def __lt__(self, other: "Endpoint") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "Endpoint") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "Endpoint") -> bool:
        return other < self

    def __ge__(self, other: "Endpoint") -> bool:
        return other <= self

    def shift(self, delta: RationalLike) -> "Endpoint":
        if self.kind != 0:
            return self
        return Endpoint(0, self.value + as_rational(delta), self.dec)

    def negate(self) -> "Endpoint":
        if self.kind != 0:
            return Endpoint(-self.kind)
        return Endpoint(0, -self.value, "+" if self.dec == "-" else "-")


NEG_INF = Endpoint(-1)
POS_INF = Endpoint(1)


def endpoint_compare(a: Endpoint, b: Endpoint) -> int:
    """-1, 0, or 1 as a <, ==, > b in the decorated order."""
    ka, kb = a._key(), b._key()
    return (ka > kb) - (ka < kb)


def endpoint_shift(e: Endpoint, delta: RationalLike) -> Endpoint:
    return e.shift(delta)


def leq_with_slack(x: Endpoint, y: Endpoint, shift: RationalLike = 0, eta: int = 0) -> bool:
    """Whether x <= y + shift + eta*h for every small enough real h > 0.

    `eta` in {0, 1} models an infinitesimal enlargement; it lets feasibility
    questions "strictly above delta" be decided exactly, with no epsilons.
    Infinite y absorbs the slack entirely.
    """
    if y.kind != 0:
        return y.kind == 1 or x.kind == -1
    if x.kind != 0:
        return x.kind == -1
    # (value, eta, dec): any positive real shift outranks a decoration step
    kx = (x.value, 0, _DEC_RANK[x.dec])
    ky = (y.value + as_rational(shift), eta, _DEC_RANK[y.dec])
    return kx <= ky


def lt_shifted(x: Endpoint, delta: RationalLike, y: Endpoint) -> bool:
    """Whether x + delta < y in the decorated order."""
    return not leq_with_slack(y, x, shift=delta)


@dataclass(frozen=True, slots=True)
class Interval:
    """A nonempty interval <b, d> of reals, any openness combination.

    Requires b < d in the decorated order (so the interval contains at
    least one point), b != inf and d != -inf.
    """

    b: Endpoint
    d: Endpoint

    def __post_init__(self):
        if self.b.kind == 1:
            raise ValueError("interval cannot start at inf")
        if self.d.kind == -1:
            raise ValueError("interval cannot end at -inf")
        if not self.b < self.d:
            raise ValueError("empty interval: need b < d")

    @staticmethod
    def make(
        b: RationalLike | None,
        d: RationalLike | None,
        b_dec: str = "-",
        d_dec: str = "-",
    ) -> "Interval":
        """Convenience constructor; None means the matching infinity.

        Defaults give the half-open bar [b, d).
        """
        be = NEG_INF if b is None else Endpoint.finite(b, b_dec)
        de = POS_INF if d is None else Endpoint.finite(d, d_dec)
        return Interval(be, de)

    def contains(self, other: "Interval") -> bool:
        return self.b <= other.b and other.d <= self.d

    def contains_value(self, t: RationalLike) -> bool:
        t = as_rational(t)
        return self.b <= Endpoint.finite(t, "-") and Endpoint.finite(t, "+") <= self.d

    def shift(self, delta: RationalLike) -> "Interval":
        """Translate down by delta: <b - delta, d - delta>."""
        delta = as_rational(delta)
        return Interval(self.b.shift(-delta), self.d.shift(-delta))

    def thicken(self, delta: RationalLike) -> "Interval":
        """<b - delta, d + delta>; delta must be >= 0."""
        delta = as_rational(delta)
        if delta < 0:
            raise ValueError("thicken needs delta >= 0")
        return Interval(self.b.shift(-delta), self.d.shift(delta))

    def negate(self) -> "Interval":
        """The reflection {-x : x in self}; swaps and negates endpoints."""
        return Interval(self.d.negate(), self.b.negate())

    def length(self) -> Fraction | None:
        """d - b as a value difference; None when either end is infinite."""
        if self.b.kind == 0 and self.d.kind == 0:
            return self.d.value - self.b.value
        return None

    def nontrivial_at(self, eps: RationalLike) -> bool:
        """Whether b + eps < d, i.e. the bar survives an eps-long transition."""
        return lt_shifted(self.b, eps, self.d)

    def trivializing_shift(self) -> tuple[Fraction | None, bool]:
        """(smallest eps with b + eps >= d, whether that eps attains it).

        None means no finite eps works (an end is infinite).  The infimum
        equals the length and is attained except for closed bars [x, y],
        where b + length = y^- < y^+ = d still holds.
        """
        ln = self.length()
        if ln is None:
            return None, False
        attained = not (self.b.dec == "-" and self.d.dec == "+")
        return ln, attained

    def undecorated(self) -> tuple[Fraction | None, Fraction | None]:
        """(b value, d value) with None for the infinities."""
        bv = self.b.value if self.b.kind == 0 else None
        dv = self.d.value if self.d.kind == 0 else None
        return bv, dv

    def _brackets(self) -> tuple[str, str]:
        lb = "(" if self.b.kind == -1 or self.b.dec == "+" else "["
        rb = ")" if self.d.kind == 1 or self.d.dec == "-" else "]"
        return lb, rb

    def __str__(self) -> str:
        lb, rb = self._brackets()
        bs = "-inf" if self.b.kind == -1 else str(self.b.value)
        ds = "inf" if self.d.kind == 1 else str(self.d.value)
        return f"{lb}{bs},{ds}{rb}"

    def sort_key(self):
        return (self.b._key(), self.d._key())
