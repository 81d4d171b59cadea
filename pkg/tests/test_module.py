"""Grid modules: validation, barcode extraction, construction, shift, sum, dual."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from barmatch import (
    Barcode,
    GenConfig,
    GridModule,
    GridRealizationError,
    Matrix,
    ModuleError,
    TrivialityBound,
    align_modules,
    common_grid,
    gen_module,
    min_trivial_eps,
    module_barcode,
    module_direct_sum,
    module_dual,
    module_from_barcode,
    module_shift,
    modules_equal,
    refine_module,
    validate_module,
)

from conftest import bc, iv

seeds = st.integers(0, 10_000)


def grid(*vals) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in vals)


def mk(gridvals, dims, maps, p=2) -> GridModule:
    mats = tuple(Matrix.from_rows(rows, p, cols=c) for rows, c in maps)
    return GridModule(p, grid(*gridvals), tuple(dims), mats)


def test_validation_examples():
    validate_module(mk((0, 1), (1, 1), [([[1]], 1)]))
    validate_module(mk((0, 1), (0, 0), [([], 0)]))
    with pytest.raises(ModuleError):
        validate_module(mk((0, 1), (1, 2), [([[1]], 1)]))


def test_barcode_of_a_single_line():
    m = mk((0, 1, 2), (1, 1, 0), [([[1]], 1), ([], 1)])
    assert module_barcode(m) == bc(iv(0, 2))


def test_barcode_by_hand_rank_table():
    """Inclusion-exclusion on transition ranks, table worked by hand.

    grid (0,1,2), dims (1,2,1), maps [[1],[0]] then [[0,1]]:
      rank phi(0,1) = 1, rank phi(1,2) = 1, rank phi(0,2) = 0.
    A span of cells i..j carries mult r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1);
    span i..2 means the bar [t_i, inf), with out-of-range ranks read as 0.
    """
    ranks = {(0, 0): 1, (1, 1): 2, (2, 2): 1, (0, 1): 1, (1, 2): 1, (0, 2): 0}
    r = lambda i, j: ranks.get((i, j), 0)
    spans = {
        (i, j): r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
        for i in range(3)
        for j in range(i, 3)
    }
    expected = Barcode.from_counts(
        {
            (iv(i, j + 1) if j < 2 else iv(i, None)): mult
            for (i, j), mult in spans.items()
            if mult
        }
    )
    assert expected == bc(iv(0, 2), iv(1, None))

    m = mk((0, 1, 2), (1, 2, 1), [([[1], [0]], 1), ([[0, 1]], 2)])
    assert module_barcode(m) == expected


def test_zero_module_has_empty_barcode():
    m = mk((0, 1), (0, 0), [([], 0)])
    assert module_barcode(m) == Barcode.empty()


def test_module_from_barcode_examples():
    m = module_from_barcode(bc(iv(0, 2)), grid(0, 1, 2), 2)
    assert m.dims == (1, 1, 0)
    assert m.maps[0] == Matrix.identity(1, 2) and m.maps[1].rows == 0

    z = module_from_barcode(Barcode.empty(), grid(0, 5), 3)
    assert z.dims == (0, 0)

    two = module_from_barcode(Barcode.from_intervals([iv(0, None)] * 2), grid(0), 2)
    assert two.dims == (2,)


def test_module_from_barcode_rejects_off_grid_bars():
    with pytest.raises(GridRealizationError):
        module_from_barcode(bc(iv(Fraction(1, 2), 2)), grid(0, 1, 2), 2)
    with pytest.raises(GridRealizationError):
        module_from_barcode(bc(iv(0, 2, d_dec="+")), grid(0, 1, 2), 2)


def test_shift_moves_grid_only():
    m = module_from_barcode(bc(iv(0, 2)), grid(0, 1, 2), 2)
    s = module_shift(m, 1)
    assert s.grid == grid(-1, 0, 1)
    assert s.dims == m.dims and s.maps == m.maps
    assert module_barcode(s) == bc(iv(-1, 1))
    assert module_shift(m, 0) == m


def test_direct_sum_examples():
    a = module_from_barcode(bc(iv(0, 1)), grid(0, 1), 2)
    assert module_barcode(module_direct_sum(a, a)) == Barcode.from_intervals(
        [iv(0, 1), iv(0, 1)]
    )
    b = module_from_barcode(bc(iv(1, 2)), grid(1, 2), 2)
    c = module_from_barcode(bc(iv(0, 2)), grid(0, 2), 2)
    assert module_barcode(module_direct_sum(b, c)) == bc(iv(0, 2), iv(1, 2))


def test_dual_flips_barcode():
    m = module_from_barcode(bc(iv(0, 2)), grid(0, 1, 2), 2)
    assert module_barcode(module_dual(m)) == bc(iv(-2, 0, b_dec="+", d_dec="+"))
    dd = module_dual(module_dual(m))
    assert module_barcode(dd) == module_barcode(m)
    z = mk((0,), (0,), [])
    assert module_barcode(module_dual(z)) == Barcode.empty()


@given(seeds)
def test_dual_is_barcode_level_involution(seed):
    m = gen_module(GenConfig(seed=seed)).module
    assert module_barcode(module_dual(m)) == module_barcode(m).dual()
    assert modules_equal(module_dual(module_dual(m)), m)


def test_min_trivial_eps_examples():
    one = module_from_barcode(bc(iv(0, 1)), grid(0, 1), 2)
    assert min_trivial_eps(one) == TrivialityBound(Fraction(1), True)
    z = mk((0,), (0,), [])
    assert min_trivial_eps(z) == TrivialityBound(Fraction(0), True)
    ray = module_from_barcode(bc(iv(0, None)), grid(0,), 2)
    assert min_trivial_eps(ray).value is None


def test_min_trivial_eps_matches_across_dual():
    # the dual of C[0,1) is C(-1,0]; both attain triviality exactly at 1
    m = module_from_barcode(bc(iv(0, 1)), grid(0, 1), 2)
    assert min_trivial_eps(module_dual(m)) == min_trivial_eps(m)


@given(seeds)
def test_dims_count_bars_through_each_cell(seed):
    m = gen_module(GenConfig(seed=seed)).module
    barcode = module_barcode(m)
    for i, t in enumerate(m.grid):
        alive = sum(mult for v, mult in barcode.bars if v.contains_value(t))
        assert alive == m.dims[i]


@given(seeds, st.integers(-2, 2))
def test_barcode_commutes_with_shift(seed, d):
    m = gen_module(GenConfig(seed=seed)).module
    assert module_barcode(module_shift(m, d)) == module_barcode(m).shift(d)


@given(seeds, seeds)
def test_direct_sum_barcode_is_multiset_union(s1, s2):
    a = gen_module(GenConfig(seed=s1)).module
    b = gen_module(GenConfig(seed=s2)).module
    total = module_barcode(module_direct_sum(a, b))
    for v, m in total.bars:
        assert m == module_barcode(a).multiplicity(v) + module_barcode(b).multiplicity(v)


def test_refinement_keeps_the_module():
    m = module_from_barcode(bc(iv(0, 2)), grid(0, 2), 2)
    fine = refine_module(m, grid(0, 1, 2, 3))
    assert fine.grid == grid(0, 1, 2, 3)
    assert module_barcode(fine) == module_barcode(m)
    again = refine_module(fine, grid(0, 1, 2, 3))
    assert again == fine


def test_align_produces_common_grid():
    a = module_from_barcode(bc(iv(0, 1)), grid(0, 1), 2)
    b = module_from_barcode(bc(iv(2, 3)), grid(2, 3), 2)
    ra, rb = align_modules(a, b)
    assert ra.grid == rb.grid == common_grid(a.grid, b.grid)
    assert module_barcode(ra) == module_barcode(a)
