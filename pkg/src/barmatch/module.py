"""Persistence modules on a finite grid of rationals.

A module assigns a GF(p) vector space to every real number and a linear
map to every pair s <= t, functorially.  Everything here is pointwise
finite-dimensional and constant between grid points, so the whole
structure is a finite quiver representation:

    grid   t_0 < t_1 < ... < t_{n-1}      (exact rationals)
    dims   one dimension per cell
    maps   maps[i] : cell i -> cell i+1   (shape dims[i+1] x dims[i])

With left_open=False (the default) cell i covers [t_i, t_{i+1}) -- the
last cell covers [t_{n-1}, inf) -- and the module is zero before t_0.
Bars of such a module look like [x, y) or [x, inf).  With left_open=True
the cells are (t_{i-1}, t_i], the first cell covers (-inf, t_0], the
module is zero after t_{n-1}, and bars look like (x, y] or (-inf, y].
The two orientations are exchanged by `module_dual`, which is an exact
involution.

The barcode is extracted by rank counting: the number of bars spanning
exactly cells i..j is determined by ranks of the four transition maps
around the span (inclusion-exclusion).  No basis choices enter, so the
result is canonical.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from . import gf
from .barcode import Barcode
from .endpoints import NEG_INF, POS_INF, Endpoint, Interval, RationalLike, as_rational
from .gf import Matrix


class ModuleError(ValueError):
    """Structural problem in a grid module (shapes, grid order, field)."""


class GridRealizationError(ValueError):
    """A bar cannot be realized on the given grid/orientation."""


def _check_module(p, grid, dims, maps, left_open):
    gf.validate_char(p)
    n = len(grid)
    if n == 0:
        raise ModuleError("grid must contain at least one point")
    for t in grid:
        if not isinstance(t, Fraction):
            raise ModuleError(f"grid value {t!r} is not an exact rational")
    if any(grid[i] >= grid[i + 1] for i in range(n - 1)):
        raise ModuleError("grid values must be strictly increasing")
    if len(dims) != n:
        raise ModuleError(f"got {len(dims)} dims for {n} grid points")
    for i, d in enumerate(dims):
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ModuleError(f"dimension at cell {i} must be a nonnegative int, got {d!r}")
    if len(maps) != max(n - 1, 0):
        raise ModuleError(f"got {len(maps)} maps for {n} grid points (need {n - 1})")
    for i, m in enumerate(maps):
        if not isinstance(m, Matrix):
            raise ModuleError(f"map at cell {i} is not a Matrix")
        if m.p != p:
            raise ModuleError(f"map at cell {i} has characteristic {m.p}, module has {p}")
        if (m.rows, m.cols) != (dims[i + 1], dims[i]):
            raise ModuleError(
                f"map at cell {i} has shape {m.rows}x{m.cols}, "
                f"expected {dims[i + 1]}x{dims[i]}"
            )
    if not isinstance(left_open, bool):
        raise ModuleError("left_open must be a bool")


@dataclass(frozen=True, slots=True)
class GridModule:
    p: int
    grid: tuple[Fraction, ...]
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    left_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(as_rational(t) for t in self.grid))
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        _check_module(self.p, self.grid, self.dims, self.maps, self.left_open)

    @property
    def n_cells(self) -> int:
        return len(self.grid)

    def cell_of(self, t: RationalLike) -> int | None:
        """Index of the cell containing t, or None where the module is zero."""
        t = as_rational(t)
        if self.left_open:
            if t > self.grid[-1]:
                return None
            return bisect_left(self.grid, t)
        if t < self.grid[0]:
            return None
        return bisect_right(self.grid, t) - 1

    def cell_rep(self, i: int) -> Fraction:
        """A representative point of cell i (its grid value)."""
        return self.grid[i]

    def composite(self, i: int, j: int) -> Matrix:
        """Transition map from cell i to cell j (i <= j)."""
        if not 0 <= i <= j < self.n_cells:
            raise IndexError((i, j))
        acc = Matrix.identity(self.dims[i], self.p)
        for k in range(i, j):
            acc = self.maps[k] @ acc
        return acc

    def transition(self, s: RationalLike, t: RationalLike) -> Matrix:
        """The map from time s to time t >= s, as a matrix (zero off support)."""
        s, t = as_rational(s), as_rational(t)
        if s > t:
            raise ValueError("need s <= t")
        ci, cj = self.cell_of(s), self.cell_of(t)
        di = self.dims[ci] if ci is not None else 0
        dj = self.dims[cj] if cj is not None else 0
        if ci is None or cj is None:
            return Matrix.zeros(dj, di, self.p)
        return self.composite(ci, cj)

    def span_interval(self, a: int, b: int) -> Interval:
        """The interval of a bar alive on exactly cells a..b."""
        if self.left_open:
            left = Endpoint.finite(self.grid[a - 1], "+") if a >= 1 else NEG_INF
            right = Endpoint.finite(self.grid[b], "+")
        else:
            left = Endpoint.finite(self.grid[a], "-")
            right = (
                Endpoint.finite(self.grid[b + 1], "-") if b + 1 < self.n_cells else POS_INF
            )
        return Interval(left, right)

    def total_dim(self) -> int:
        return sum(self.dims)


def validate_module(m: GridModule) -> None:
    """Re-run the structural checks (construction already enforces them)."""
    _check_module(m.p, m.grid, m.dims, m.maps, m.left_open)


def module_barcode(m: GridModule) -> Barcode:
    """Barcode via rank inclusion-exclusion over all cell spans."""
    n = m.n_cells
    r = [[0] * n for _ in range(n)]  # r[i][j] = rank of the cell-i -> cell-j transition
    for i in range(n):
        acc = Matrix.identity(m.dims[i], m.p)
        r[i][i] = m.dims[i]
        for j in range(i + 1, n):
            acc = m.maps[j - 1] @ acc
            r[i][j] = gf.rank(acc)
            if r[i][j] == 0:
                break  # ranks along a row only decrease; the rest stay 0
    counts: dict[Interval, int] = {}
    for a in range(n):
        for b in range(a, n):
            above = r[a - 1][b] if a >= 1 else 0
            right = r[a][b + 1] if b + 1 < n else 0
            corner = r[a - 1][b + 1] if (a >= 1 and b + 1 < n) else 0
            mult = r[a][b] - above - right + corner
            if mult < 0:
                raise ModuleError(f"negative multiplicity at span {(a, b)}; module is corrupt")
            if mult:
                counts[m.span_interval(a, b)] = mult
    return Barcode.from_counts(counts)


def _realize_span(m_grid: tuple[Fraction, ...], iv: Interval, left_open: bool) -> tuple[int, int]:
    """Cells (a, b) a bar must span on this grid; raises if not realizable."""
    n = len(m_grid)
    index = {t: i for i, t in enumerate(m_grid)}
    if left_open:
        if iv.d.kind != 0 or iv.d.dec != "+" or iv.d.value not in index:
            raise GridRealizationError(f"bar {iv} does not end at a grid point (closed)")
        b = index[iv.d.value]
        if iv.b.kind == -1:
            a = 0
        elif iv.b.dec == "+" and iv.b.value in index:
            a = index[iv.b.value] + 1
        else:
            raise GridRealizationError(f"bar {iv} does not start just after a grid point")
        if a > b:
            raise GridRealizationError(f"bar {iv} spans no grid cell")
        return a, b
    if iv.b.kind != 0 or iv.b.dec != "-" or iv.b.value not in index:
        raise GridRealizationError(f"bar {iv} does not start at a grid point (closed)")
    a = index[iv.b.value]
    if iv.d.kind == 1:
        b = n - 1
    elif iv.d.dec == "-" and iv.d.value in index:
        b = index[iv.d.value] - 1
    else:
        raise GridRealizationError(f"bar {iv} does not end just before a grid point")
    if b < a:
        raise GridRealizationError(f"bar {iv} spans no grid cell")
    return a, b


def module_from_barcode(
    bc: Barcode,
    grid,
    p: int = 2,
    left_open: bool = False,
) -> GridModule:
    """The interval-sum module with the given barcode, in canonical basis.

    Cell bases are indexed by the barcode elements alive at that cell, in
    barcode element order; transition maps are the 0/1 overlap matrices.
    Every bar must be realizable on the grid for the chosen orientation
    ([x, y) / [x, inf) bars at grid points, or their left_open duals).
    """
    grid = tuple(as_rational(t) for t in grid)
    gf.validate_char(p)
    elements = bc.elements
    spans = {}
    for iv, _ in bc.bars:
        spans[iv] = _realize_span(grid, iv, left_open)
    n = len(grid)
    alive: list[list[int]] = [[] for _ in range(n)]  # element indices, canonical order
    for idx, el in enumerate(elements):
        a, b = spans[el.interval]
        for c in range(a, b + 1):
            alive[c].append(idx)
    dims = tuple(len(alive[c]) for c in range(n))
    maps = []
    for c in range(n - 1):
        rows, cols = dims[c + 1], dims[c]
        data = [0] * (rows * cols)
        col_of = {e: k for k, e in enumerate(alive[c])}
        for r, e in enumerate(alive[c + 1]):
            k = col_of.get(e)
            if k is not None:
                data[r * cols + k] = 1
        maps.append(Matrix(rows, cols, tuple(data), p))
    return GridModule(p, grid, dims, tuple(maps), left_open)


def module_shift(m: GridModule, delta: RationalLike) -> GridModule:
    """Reindex so time t reads off the original at t + delta (grid drops by delta)."""
    delta = as_rational(delta)
    return GridModule(m.p, tuple(t - delta for t in m.grid), m.dims, m.maps, m.left_open)


def module_direct_sum(a: GridModule, b: GridModule) -> GridModule:
    """Cellwise direct sum; operands on different grids are aligned first."""
    if a.p != b.p:
        raise ModuleError("direct sum needs equal characteristics")
    if a.left_open != b.left_open:
        raise ModuleError("direct sum needs equal orientations")
    if a.grid != b.grid:
        a, b = align_modules(a, b)
    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    maps = tuple(gf.block_diag([ma, mb]) for ma, mb in zip(a.maps, b.maps))
    return GridModule(a.p, a.grid, dims, maps, a.left_open)


def module_dual(m: GridModule) -> GridModule:
    """Dual module: spaces dualized, arrows transposed, time reflected.

    The grid is negated and reversed and the orientation flag flips, so
    applying this twice gives back the original module on the nose.
    """
    n = m.n_cells
    grid = tuple(-t for t in reversed(m.grid))
    dims = tuple(reversed(m.dims))
    maps = tuple(m.maps[n - 2 - i].transpose() for i in range(n - 1))
    return GridModule(m.p, grid, dims, maps, not m.left_open)


def refine_module(m: GridModule, new_grid) -> GridModule:
    """The same module presented on a finer grid (superset of the old one)."""
    new_grid = tuple(as_rational(t) for t in new_grid)
    old = set(m.grid)
    if not old.issubset(set(new_grid)):
        raise ModuleError("refinement grid must contain every old grid point")
    cells = [m.cell_of(t) for t in new_grid]
    dims = tuple(m.dims[c] if c is not None else 0 for c in cells)
    maps = []
    for j in range(len(new_grid) - 1):
        c0, c1 = cells[j], cells[j + 1]
        if c0 is None or c1 is None:
            maps.append(Matrix.zeros(dims[j + 1], dims[j], m.p))
        else:
            maps.append(m.composite(c0, c1))
    return GridModule(m.p, new_grid, dims, tuple(maps), m.left_open)


def common_grid(*grids) -> tuple[Fraction, ...]:
    merged: set[Fraction] = set()
    for g in grids:
        merged.update(as_rational(t) for t in g)
    return tuple(sorted(merged))


def align_modules(a: GridModule, b: GridModule) -> tuple[GridModule, GridModule]:
    """Refine both modules to their common grid."""
    if a.left_open != b.left_open:
        raise ModuleError("cannot align modules of different orientations")
    g = common_grid(a.grid, b.grid)
    return refine_module(a, g), refine_module(b, g)


def modules_equal(a: GridModule, b: GridModule) -> bool:
    """Equality as functors: equal after refining to the common grid."""
    if a.p != b.p or a.left_open != b.left_open:
        return False
    ra, rb = align_modules(a, b)
    return ra == rb


@dataclass(frozen=True, slots=True)
class TrivialityBound:
    """Infimal eps such that every transition of length eps is zero.

    value None means no finite eps works (some bar is infinite).  When
    attained is False the infimum itself does not trivialize the module,
    but every larger eps does.
    """

    value: Fraction | None
    attained: bool

    def __str__(self) -> str:
        v = "inf" if self.value is None else str(self.value)
        return f"{v} (attained)" if self.attained else f"{v} (not attained)"


def min_trivial_eps(m: GridModule) -> TrivialityBound:
    value, attained = module_barcode(m).trivializing_shift()
    return TrivialityBound(value, attained)
