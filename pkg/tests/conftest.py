from fractions import Fraction

from hypothesis import HealthCheck, settings

from barmatch import Barcode, BarcodeElement, Interval

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=60,
)
settings.load_profile("suite")


def iv(b, d, b_dec: str = "-", d_dec: str = "-") -> Interval:
    """Interval from plain numbers; None is the infinity on that side."""
    return Interval.make(
        None if b is None else Fraction(b),
        None if d is None else Fraction(d),
        b_dec=b_dec,
        d_dec=d_dec,
    )


def el(interval: Interval, copy: int = 1) -> BarcodeElement:
    return BarcodeElement(interval, copy)


def bc(*intervals: Interval) -> Barcode:
    return Barcode.from_intervals(list(intervals))
