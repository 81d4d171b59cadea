"""Independent reference computations the tests check the library against.

Everything here is deliberately naive: exhaustive enumeration and direct
transcriptions of definitions, sharing no search logic with the package.
Only the arithmetic substrate (endpoints, intervals, matrices as data) is
reused.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product

from barmatch import Barcode, Interval, Matrix


def all_matrices(rows: int, cols: int, p: int):
    """Every rows x cols matrix over GF(p)."""
    for entries in product(range(p), repeat=rows * cols):
        yield Matrix(rows, cols, entries, p)


def solve_by_enumeration(a: Matrix, b: Matrix) -> list[Matrix]:
    """All X with a @ X = b, by trying every candidate."""
    return [x for x in all_matrices(a.cols, b.cols, a.p) if a @ x == b]


def interval_within(inner: Interval, outer: Interval) -> bool:
    return outer.b <= inner.b and inner.d <= outer.d


def mutually_close(i: Interval, j: Interval, delta: Fraction) -> bool:
    """Each bar inside the other's delta-thickening, spelled out."""
    i_thick = Interval(i.b.shift(-delta), i.d.shift(delta))
    j_thick = Interval(j.b.shift(-delta), j.d.shift(delta))
    return interval_within(i, j_thick) and interval_within(j, i_thick)


def exists_delta_matching(c: Barcode, d: Barcode, delta: Fraction) -> bool:
    """Exhaustive search for a delta-matching between c and d.

    Walks every assignment of source bars to distinct close target bars
    (memoized on the set of used targets), requiring that bars persisting
    past 2*delta on either side end up matched.
    """
    left = [el.interval for el in c.elements]
    right = [el.interval for el in d.elements]
    two = 2 * delta
    required_left = [iv.nontrivial_at(two) for iv in left]
    required_right_mask = 0
    for j, iv in enumerate(right):
        if iv.nontrivial_at(two):
            required_right_mask |= 1 << j
    adjacency = [
        [j for j, jv in enumerate(right) if mutually_close(iv, jv, delta)]
        for iv in left
    ]
    n = len(left)

    @lru_cache(maxsize=None)
    def assign(i: int, used: int) -> bool:
        if i == n:
            return required_right_mask & ~used == 0
        if not required_left[i] and assign(i + 1, used):
            return True
        for j in adjacency[i]:
            if not used >> j & 1 and assign(i + 1, used | 1 << j):
                return True
        return False

    result = assign(0, 0)
    assign.cache_clear()
    return result


def bottleneck_by_scan(c: Barcode, d: Barcode) -> tuple[Fraction | None, bool]:
    """(value, attained) of the bottleneck distance, by grid scan.

    Feasibility of a delta-matching changes only at the listed candidate
    values, so probing every candidate and every gap midpoint in
    increasing order finds the infimum and whether it is attained.
    """
    cands = {Fraction(0)}
    for bc in (c, d):
        for iv, _ in bc.bars:
            if iv.b.is_finite and iv.d.is_finite:
                cands.add((iv.d.value - iv.b.value) / 2)
    for iv, _ in c.bars:
        for jv, _ in d.bars:
            if iv.b.is_finite and jv.b.is_finite:
                cands.add(abs(iv.b.value - jv.b.value))
            if iv.d.is_finite and jv.d.is_finite:
                cands.add(abs(iv.d.value - jv.d.value))
    cands = sorted(cands)
    probes: list[tuple[Fraction, Fraction, bool]] = []
    for i, cv in enumerate(cands):
        probes.append((cv, cv, True))
        after = (cv + cands[i + 1]) / 2 if i + 1 < len(cands) else cv + 1
        probes.append((after, cv, False))
    for probe, value, attained in probes:
        if exists_delta_matching(c, d, probe):
            return value, attained
    return None, False
