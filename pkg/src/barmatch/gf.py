"""Exact linear algebra over prime fields GF(p).

All arithmetic is integer arithmetic mod p; no floating point anywhere.
The elimination order is fixed (columns left to right, first nonzero row
at or below the pivot row), so every result here is deterministic and
reproducible across platforms and backends.

The inner loops live in a compiled extension when available; set
``BARMATCH_BACKEND=pure`` or ``=compiled`` to force a choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence


def _select_backend():
    choice = os.environ.get("BARMATCH_BACKEND", "").strip().lower()
    if choice == "pure":
        from barmatch import _gfpure

        return _gfpure
    if choice == "compiled":
        from barmatch import _gfcore  # ImportError here is deliberate

        return _gfcore
    if choice:
        raise ValueError(f"unknown BARMATCH_BACKEND value: {choice!r}")
    try:
        from barmatch import _gfcore

        return _gfcore
    except ImportError:
        from barmatch import _gfpure

        return _gfpure


_kernels = _select_backend()

_MAX_PRIME = 1 << 20


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'pure'."""
    return _kernels.BACKEND


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def validate_char(p: int) -> int:
    """Check p is a usable field characteristic; returns p."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise FieldError(f"field characteristic must be an int, got {type(p).__name__}")
    if p > _MAX_PRIME:
        raise FieldError(f"field characteristic {p} exceeds supported bound {_MAX_PRIME}")
    if not is_prime(p):
        raise FieldError(f"field characteristic must be prime, got {p}")
    return p


class FieldError(ValueError):
    """Invalid field characteristic or cross-field operation."""


class ShapeError(ValueError):
    """Matrix dimensions incompatible with the requested operation."""


class SolveError(ValueError):
    """Linear system has no solution."""


def element_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class Matrix:
    """Immutable matrix over GF(p), stored flat row-major.

    Entries are normalized to [0, p) at construction; shapes with zero
    rows or columns are legal (they appear constantly as zero-dimensional
    module cells).
    """

    rows: int
    cols: int
    data: tuple[int, ...]
    p: int

    def __post_init__(self):
        validate_char(self.p)
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.data) != self.rows * self.cols:
            raise ShapeError(
                f"data length {len(self.data)} does not match shape {self.rows}x{self.cols}"
            )
        if any(not (0 <= x < self.p) for x in self.data):
            object.__setattr__(self, "data", tuple(x % self.p for x in self.data))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> "Matrix":
        """Build from nested rows; `cols` disambiguates the zero-row case."""
        r = len(rows)
        if r == 0:
            return Matrix(0, 0 if cols is None else cols, (), p)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ShapeError("ragged rows")
        if cols is not None and cols != c:
            raise ShapeError(f"declared cols {cols} != row length {c}")
        return Matrix(r, c, tuple(x % p for row in rows for x in row), p)

    @staticmethod
    def identity(n: int, p: int) -> "Matrix":
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return Matrix(n, n, tuple(data), p)

    @staticmethod
    def zeros(rows: int, cols: int, p: int) -> "Matrix":
        return Matrix(rows, cols, (0,) * (rows * cols), p)

    @staticmethod
    def column(entries: Sequence[int], p: int) -> "Matrix":
        return Matrix(len(entries), 1, tuple(x % p for x in entries), p)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _check_field(self, other: "Matrix"):
        if self.p != other.p:
            raise FieldError(f"mixed characteristics {self.p} and {other.p}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = _kernels.matmul(
            self.rows, self.cols, other.cols, list(self.data), list(other.data), self.p
        )
        return Matrix(self.rows, other.cols, tuple(out), self.p)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        return Matrix(
            self.rows,
            self.cols,
            tuple((a + b) % self.p for a, b in zip(self.data, other.data)),
            self.p,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in subtraction")
        return Matrix(
            self.rows,
            self.cols,
            tuple((a - b) % self.p for a, b in zip(self.data, other.data)),
            self.p,
        )

    def scale(self, c: int) -> "Matrix":
        c %= self.p
        return Matrix(self.rows, self.cols, tuple((c * x) % self.p for x in self.data), self.p)

    def transpose(self) -> "Matrix":
        data = tuple(
            self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)
        )
        return Matrix(self.cols, self.rows, data, self.p)

    def is_zero(self) -> bool:
        return not any(self.data)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        data, pivots = _kernels.rref(self.rows, self.cols, list(self.data), self.p)
        return Matrix(self.rows, self.cols, tuple(data), self.p), tuple(pivots)


def rank(a: Matrix) -> int:
    return len(a.rref()[1])


def kernel_basis(a: Matrix) -> Matrix:
    """Columns form the echelon basis of the null space of `a`.

    Shape is cols x (cols - rank); the basis vector for free column j has
    a 1 in position j and zeros in every other free position, which makes
    the output canonical for the fixed pivoting order.
    """
    red, pivots = a.rref()
    pivot_set = set(pivots)
    free = [j for j in range(a.cols) if j not in pivot_set]
    data = [0] * (a.cols * len(free))
    width = len(free)
    for k, j in enumerate(free):
        data[j * width + k] = 1
        for i, pc in enumerate(pivots):
            v = red[i, j]
            if v:
                data[pc * width + k] = (-v) % a.p
    return Matrix(a.cols, width, tuple(data), a.p)


def image_basis(a: Matrix) -> Matrix:
    """The pivot columns of `a` in ascending column order (rows x rank)."""
    _, pivots = a.rref()
    data = tuple(a.data[i * a.cols + j] for i in range(a.rows) for j in pivots)
    return Matrix(a.rows, len(pivots), data, a.p)


def hstack(blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        raise ShapeError("hstack of nothing")
    r = blocks[0].rows
    p = blocks[0].p
    if any(b.rows != r or b.p != p for b in blocks):
        raise ShapeError("hstack shape or field mismatch")
    data = []
    for i in range(r):
        for b in blocks:
            data.extend(b.row(i))
    return Matrix(r, sum(b.cols for b in blocks), tuple(data), p)


def vstack(blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        raise ShapeError("vstack of nothing")
    c = blocks[0].cols
    p = blocks[0].p
    if any(b.cols != c or b.p != p for b in blocks):
        raise ShapeError("vstack shape or field mismatch")
    data = []
    for b in blocks:
        data.extend(b.data)
    return Matrix(sum(b.rows for b in blocks), c, tuple(data), p)


def block_diag(blocks: Iterable[Matrix], p: int | None = None) -> Matrix:
    """Direct sum of matrices; `p` is required when `blocks` is empty."""
    blocks = list(blocks)
    if not blocks:
        if p is None:
            raise ShapeError("block_diag of nothing needs an explicit characteristic")
        return Matrix(0, 0, (), p)
    pp = blocks[0].p
    if any(b.p != pp for b in blocks):
        raise FieldError("block_diag field mismatch")
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [0] * (rows * cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            base = (r0 + i) * cols + c0
            data[base : base + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return Matrix(rows, cols, tuple(data), pp)


def solve_factor(a: Matrix, b: Matrix) -> Matrix:
    """The echelon particular solution X of A @ X = B.

    Free variables are set to 0, so X is determined by the fixed pivoting
    order.  Raises SolveError when some column of B is outside im A.
    """
    a._check_field(b)
    if a.rows != b.rows:
        raise ShapeError(f"row mismatch: A has {a.rows}, B has {b.rows}")
    aug = hstack([a, b]) if a.cols + b.cols else Matrix(a.rows, 0, (), a.p)
    red, pivots = aug.rref()
    for pc in pivots:
        if pc >= a.cols:
            raise SolveError(f"column {pc - a.cols} of the right-hand side is not in the image")
    data = [0] * (a.cols * b.cols)
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            data[pc * b.cols + j] = red[i, a.cols + j]
    return Matrix(a.cols, b.cols, tuple(data), a.p)


def inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise ShapeError(f"cannot invert {a.rows}x{a.cols}")
    try:
        return solve_factor(a, Matrix.identity(a.rows, a.p))
    except SolveError:
        raise SolveError("matrix is singular") from None
