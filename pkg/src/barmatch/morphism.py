"""Morphisms of grid modules and their exact structure.

A morphism is a cellwise family of matrices commuting with the two
modules' transition maps; source and target must live on the same grid
with the same orientation (refine first if they don't).  Construction
validates commutation, so any Morphism in hand is genuinely natural.

`factorize` splits f as (surjection onto image, inclusion of image);
`kernel_of` / `cokernel_of` produce honest grid modules together with
their structural maps.  All basis choices are echelon-canonical, so
repeated runs give identical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf
from .endpoints import RationalLike, as_rational
from .gf import Matrix
from .module import (
    GridModule,
    ModuleError,
    common_grid,
    module_direct_sum,
    module_dual,
    module_shift,
    refine_module,
)


class MorphismError(ValueError):
    """Structural problem in a morphism (alignment, shapes, naturality)."""


def _check_morphism(source: GridModule, target: GridModule, mats):
    if source.p != target.p:
        raise MorphismError("source and target have different characteristics")
    if source.left_open != target.left_open:
        raise MorphismError("source and target have different orientations")
    if source.grid != target.grid:
        raise MorphismError("source and target must share a grid (align first)")
    n = source.n_cells
    if len(mats) != n:
        raise MorphismError(f"got {len(mats)} component matrices for {n} cells")
    for i, m in enumerate(mats):
        if not isinstance(m, Matrix):
            raise MorphismError(f"component at cell {i} is not a Matrix")
        if m.p != source.p:
            raise MorphismError(f"component at cell {i} has wrong characteristic")
        if (m.rows, m.cols) != (target.dims[i], source.dims[i]):
            raise MorphismError(
                f"component at cell {i} has shape {m.rows}x{m.cols}, "
                f"expected {target.dims[i]}x{source.dims[i]}"
            )
    for i in range(n - 1):
        if target.maps[i] @ mats[i] != mats[i + 1] @ source.maps[i]:
            raise MorphismError(f"naturality fails between cells {i} and {i + 1}")


@dataclass(frozen=True, slots=True)
class Morphism:
    source: GridModule
    target: GridModule
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        _check_morphism(self.source, self.target, self.mats)

    def __call__(self, cell: int) -> Matrix:
        return self.mats[cell]


def validate_morphism(f: Morphism) -> None:
    """Re-run the structural checks (construction already enforces them)."""
    _check_morphism(f.source, f.target, f.mats)


def morphism_identity(m: GridModule) -> Morphism:
    return Morphism(m, m, tuple(Matrix.identity(d, m.p) for d in m.dims))


def morphism_zero(source: GridModule, target: GridModule) -> Morphism:
    return Morphism(
        source,
        target,
        tuple(
            Matrix.zeros(dt, ds, source.p) for dt, ds in zip(target.dims, source.dims)
        ),
    )


def morphism_compose(first: Morphism, second: Morphism) -> Morphism:
    """`first` then `second`; their middle modules must agree exactly."""
    if first.target != second.source:
        raise MorphismError("morphisms not composable: middle modules differ")
    mats = tuple(b @ a for a, b in zip(first.mats, second.mats))
    return Morphism(first.source, second.target, mats)


def morphism_direct_sum(f: Morphism, g: Morphism) -> Morphism:
    """Blockwise direct sum; operands on different grids are aligned first."""
    if f.source.grid != g.source.grid:
        f, g = align_morphisms(f, g)
    return Morphism(
        module_direct_sum(f.source, g.source),
        module_direct_sum(f.target, g.target),
        tuple(gf.block_diag([a, b]) for a, b in zip(f.mats, g.mats)),
    )


def morphism_dual(f: Morphism) -> Morphism:
    """The dual morphism, from dual target to dual source."""
    n = f.source.n_cells
    mats = tuple(f.mats[n - 1 - i].transpose() for i in range(n))
    return Morphism(module_dual(f.target), module_dual(f.source), mats)


def shift_morphism(f: Morphism, delta: RationalLike) -> Morphism:
    """Apply the shift reindexing to source, target, and components."""
    delta = as_rational(delta)
    return Morphism(module_shift(f.source, delta), module_shift(f.target, delta), f.mats)


def refine_morphism(f: Morphism, new_grid) -> Morphism:
    src = refine_module(f.source, new_grid)
    tgt = refine_module(f.target, new_grid)
    cells = [f.source.cell_of(t) for t in src.grid]
    mats = tuple(
        f.mats[c] if c is not None else Matrix.zeros(tgt.dims[j], src.dims[j], f.source.p)
        for j, c in enumerate(cells)
    )
    return Morphism(src, tgt, mats)


def align_morphisms(f: Morphism, g: Morphism) -> tuple[Morphism, Morphism]:
    grid = common_grid(f.source.grid, g.source.grid)
    return refine_morphism(f, grid), refine_morphism(g, grid)


def morphisms_equal(f: Morphism, g: Morphism) -> bool:
    """Equality as natural transformations: equal after common refinement."""
    if f.source.left_open != g.source.left_open or f.source.p != g.source.p:
        return False
    rf, rg = align_morphisms(f, g)
    return rf == rg


def compose_refining(first: Morphism, second: Morphism) -> Morphism:
    """Compose after refining both to a common grid.

    The refined middle modules must coincide; this is the ordinary
    composition for morphisms presented on different grids.
    """
    grid = common_grid(first.source.grid, second.source.grid)
    rf, rs = refine_morphism(first, grid), refine_morphism(second, grid)
    return morphism_compose(rf, rs)


def transition_endomorphism(m: GridModule, delta: RationalLike) -> Morphism:
    """The morphism M -> M(delta) whose components are transition maps.

    Presented on the common refinement of the grids of M and M(delta).
    delta must be >= 0.
    """
    delta = as_rational(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    shifted = module_shift(m, delta)
    grid = common_grid(m.grid, shifted.grid)
    src = refine_module(m, grid)
    tgt = refine_module(shifted, grid)
    mats = []
    for j, t in enumerate(grid):
        c0 = m.cell_of(t)
        c1 = m.cell_of(t + delta)
        if c0 is None or c1 is None:
            mats.append(Matrix.zeros(tgt.dims[j], src.dims[j], m.p))
        else:
            mats.append(m.composite(c0, c1))
    return Morphism(src, tgt, tuple(mats))


@dataclass(frozen=True, slots=True)
class Factorization:
    """f = inclusion . projection through the image module."""

    image: GridModule
    onto_image: Morphism  # source of f -> image, surjective cellwise
    from_image: Morphism  # image -> target of f, injective cellwise


def factorize(f: Morphism) -> Factorization:
    """Epi-mono factorization with echelon-canonical image bases.

    The image module's cell bases are the pivot columns of each component
    matrix, so the factorization is unique for a fixed pivoting order.
    """
    n = f.source.n_cells
    p = f.source.p
    bases = [gf.image_basis(f.mats[i]) for i in range(n)]
    dims = tuple(b.cols for b in bases)
    maps = []
    for i in range(n - 1):
        # image is carried into image by naturality, so this solve succeeds
        maps.append(gf.solve_factor(bases[i + 1], f.target.maps[i] @ bases[i]))
    image = GridModule(p, f.source.grid, dims, tuple(maps), f.source.left_open)
    onto = Morphism(
        f.source, image, tuple(gf.solve_factor(bases[i], f.mats[i]) for i in range(n))
    )
    fro = Morphism(image, f.target, tuple(bases))
    return Factorization(image, onto, fro)


@dataclass(frozen=True, slots=True)
class SubquotientResult:
    """A kernel or cokernel module with its structural map.

    For kernels the structural map includes the kernel into the source;
    for cokernels it projects the target onto the quotient.
    """

    module: GridModule
    structural_map: Morphism


def kernel_of(f: Morphism) -> SubquotientResult:
    n = f.source.n_cells
    bases = [gf.kernel_basis(f.mats[i]) for i in range(n)]
    dims = tuple(b.cols for b in bases)
    maps = []
    for i in range(n - 1):
        # kernels are carried into kernels, so this solve succeeds
        maps.append(gf.solve_factor(bases[i + 1], f.source.maps[i] @ bases[i]))
    ker = GridModule(f.source.p, f.source.grid, dims, tuple(maps), f.source.left_open)
    incl = Morphism(ker, f.source, tuple(bases))
    return SubquotientResult(ker, incl)


def cokernel_of(f: Morphism) -> SubquotientResult:
    """Quotient of the target by the image, on echelon complement bases.

    At each cell the complement is spanned by the standard vectors at the
    non-pivot coordinates of the image (pivots read from the reduced row
    form of the transposed component), which fixes the projection matrix.
    """
    n = f.source.n_cells
    p = f.source.p
    tgt = f.target
    projections: list[Matrix] = []
    reps: list[Matrix] = []  # complement representatives inside the target
    for i in range(n):
        d = tgt.dims[i]
        img = gf.image_basis(f.mats[i])
        _, pivots = f.mats[i].transpose().rref()
        pivot_rows = set(pivots)
        free = [r for r in range(d) if r not in pivot_rows]
        rep = Matrix(
            d,
            len(free),
            tuple(1 if r == fr else 0 for r in range(d) for fr in free),
            p,
        )
        # [img | rep] is a basis of the cell; quotient coords = rep block
        if d:
            coords = gf.solve_factor(gf.hstack([img, rep]), Matrix.identity(d, p))
            proj = Matrix(
                len(free),
                d,
                tuple(coords[img.cols + k, j] for k in range(len(free)) for j in range(d)),
                p,
            )
        else:
            proj = Matrix.zeros(0, 0, p)
        projections.append(proj)
        reps.append(rep)
    dims = tuple(pr.rows for pr in projections)
    maps = []
    for i in range(n - 1):
        maps.append(projections[i + 1] @ tgt.maps[i] @ reps[i])
    coker = GridModule(p, tgt.grid, dims, tuple(maps), tgt.left_open)
    proj_morphism = Morphism(tgt, coker, tuple(projections))
    return SubquotientResult(coker, proj_morphism)
