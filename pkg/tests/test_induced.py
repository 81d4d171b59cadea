"""Canonical injections and the matching a morphism induces on barcodes."""

from collections import defaultdict
from fractions import Fraction

import pytest

from barmatch import (
    Barcode,
    BlockSizeError,
    GenConfig,
    GridModule,
    Matching,
    Matrix,
    enumerate_blocks,
    epi_injection,
    gen_epi_pair,
    gen_mono_pair,
    gen_module,
    gen_morphism,
    identity_matching,
    image_barcode_of,
    induced_matching,
    inverse,
    matching_compose,
    matching_dual,
    module_barcode,
    module_from_barcode,
    mono_injection,
    morphism_compose,
    morphism_direct_sum,
    morphism_dual,
    morphism_identity,
    morphism_zero,
    rank,
)

from conftest import bc, el, iv


def pair_key(st):
    s, t = st
    return (s.interval.sort_key(), s.copy, t.interval.sort_key(), t.copy)


def rank_matching_oracle(sub, sup, side):
    """Group by the preserved endpoint, sort largest-first, pair by rank.

    Independent restatement of the canonical injection: a plain dict of
    lists keyed on the raw endpoint, sorted through interval comparisons
    only.  side 'right' preserves deaths, 'left' preserves births.
    """
    groups_sub = defaultdict(list)
    groups_sup = defaultdict(list)
    for target, group in ((sub, groups_sub), (sup, groups_sup)):
        for e in target.elements:
            key = e.interval.d if side == "right" else e.interval.b
            group[key].append(e)
    pairs = []
    for key, items in groups_sub.items():
        if side == "right":
            order = lambda e: (e.interval.b, e.copy)
        else:
            # larger death first: exploit that Endpoint sorts totally
            order = lambda e: (e.interval.d, -e.copy)
            items.sort(key=order, reverse=True)
            avail = sorted(groups_sup.get(key, []), key=order, reverse=True)
            pairs.extend(zip(items, avail))
            continue
        items.sort(key=order)
        avail = sorted(groups_sup.get(key, []), key=order)
        pairs.extend(zip(items, avail))
    return sorted(pairs, key=pair_key)


def test_mono_injection_matches_blocks_by_rank():
    sub = bc(iv(1, 5), iv(2, 5))
    sup = bc(iv(0, 5), iv(1, 5), iv(4, 5))
    expected = rank_matching_oracle(sub, sup, "right")
    assert expected == [
        (el(iv(1, 5)), el(iv(0, 5))),
        (el(iv(2, 5)), el(iv(1, 5))),
    ]
    got = mono_injection(sub, sup)
    assert sorted(got.pairs, key=pair_key) == expected


def test_mono_injection_on_equal_barcodes_is_identity():
    b = bc(iv(0, 1), iv(0, 2), iv(1, None))
    assert mono_injection(b, b) == identity_matching(b)


def test_mono_injection_reports_missing_block():
    with pytest.raises(BlockSizeError) as err:
        mono_injection(bc(iv(1, 2)), bc(iv(0, 3)))
    assert "ending at 2-" in str(err.value)
    assert isinstance(err.value, ValueError)


def test_epi_injection_single_block():
    got = epi_injection(bc(iv(0, 1)), bc(iv(0, 3)))
    assert got.pairs == ((el(iv(0, 3)), el(iv(0, 1))),)


def test_epi_injection_on_equal_barcodes_is_identity():
    b = bc(iv(0, 1), iv(0, 2), iv(1, None))
    assert epi_injection(b, b) == identity_matching(b)


def test_epi_injection_orders_equal_bars_by_copy():
    quot = Barcode.from_counts({iv(0, 2): 2})
    total = bc(iv(0, 3), iv(0, 2))
    reverse_oracle = rank_matching_oracle(quot, total, "left")
    assert reverse_oracle == [
        (el(iv(0, 2), 1), el(iv(0, 3))),
        (el(iv(0, 2), 2), el(iv(0, 2))),
    ]
    got = epi_injection(quot, total)
    # runs total -> quot: the longest source bar carries the first copy
    assert sorted(got.pairs, key=pair_key) == sorted(
        ((t, s) for s, t in reverse_oracle), key=pair_key
    )


def test_epi_injection_reports_undersized_block():
    with pytest.raises(BlockSizeError):
        epi_injection(Barcode.from_counts({iv(0, 2): 2}), bc(iv(0, 2)))


def test_enumerate_blocks_groups_and_sorts():
    b = bc(iv(0, 5), iv(2, 5), iv(1, 3))
    blocks = enumerate_blocks(b, "right")
    assert [blk.key for blk in blocks] == [iv(1, 3).d, iv(0, 5).d]
    by_key = {blk.key: blk.items for blk in blocks}
    assert by_key[iv(0, 5).d] == (el(iv(0, 5)), el(iv(2, 5)))
    with pytest.raises(ValueError):
        enumerate_blocks(b, "sideways")


def band_morphism():
    """C[1,2) + C[1,3) -> C[0,2) + C[3,4): embed the short bar, kill the long."""
    grid = tuple(Fraction(t) for t in range(5))
    m = module_from_barcode(bc(iv(1, 2), iv(1, 3)), grid, 2)
    n = module_from_barcode(bc(iv(0, 2), iv(3, 4)), grid, 2)
    mats = [
        Matrix.zeros(1, 0, 2),
        Matrix.from_rows([[1, 0]], 2),  # [1,2)#1 -> [0,2)#1, [1,3)#1 -> 0
        Matrix.zeros(0, 1, 2),
        Matrix.zeros(1, 0, 2),
        Matrix.zeros(0, 0, 2),
    ]
    return m, n, mats


def test_induced_matching_routes_the_long_bar_through_the_overlap():
    m, n, mats = band_morphism()
    f = type(morphism_identity(m))(m, n, tuple(mats))
    got = induced_matching(f)
    assert got.pairs == ((el(iv(1, 3)), el(iv(0, 2))),)
    assert image_barcode_of(got) == bc(iv(1, 2))


def test_induced_matching_of_identity_is_identity():
    m = gen_module(GenConfig(seed=5)).module
    b = module_barcode(m)
    assert induced_matching(morphism_identity(m)) == identity_matching(b)


def test_direct_sum_matching_can_exceed_the_summand_union():
    grid = tuple(Fraction(t) for t in range(3))
    m = module_from_barcode(bc(iv(1, 2)), grid, 2)
    zero = module_from_barcode(Barcode.empty(), grid, 2)
    q = module_from_barcode(bc(iv(0, 2)), grid, 2)
    f = morphism_identity(m)
    g = morphism_zero(zero, q)
    summand_union = matching_compose(
        induced_matching(f), identity_matching(module_barcode(m))
    )
    assert summand_union.pairs == ((el(iv(1, 2)), el(iv(1, 2))),)
    whole = induced_matching(morphism_direct_sum(f, g))
    assert whole.pairs == ((el(iv(1, 2)), el(iv(0, 2))),)


def test_image_barcode_of_identity_matching_is_the_barcode():
    b = bc(iv(0, 1), iv(0, 2), iv(1, None))
    assert image_barcode_of(identity_matching(b)) == b


def test_image_barcode_of_empty_matching_is_empty():
    m = Matching(bc(iv(0, 1)), bc(iv(5, 6)), ())
    assert image_barcode_of(m) == Barcode.empty()


def chain_morphisms():
    """Two-step chain of rays whose composite dies while the matchings chain."""
    grid = tuple(Fraction(t) for t in range(5))
    l = module_from_barcode(bc(iv(3, None), iv(4, None)), grid, 2)
    m = module_from_barcode(bc(iv(1, None), iv(2, None)), grid, 2)
    n = module_from_barcode(bc(iv(0, None)), grid, 2)
    f_mats = [
        Matrix.zeros(0, 0, 2),
        Matrix.zeros(1, 0, 2),
        Matrix.zeros(2, 0, 2),
        Matrix.from_rows([[0], [1]], 2),  # [3,inf) -> [2,inf)
        Matrix.from_rows([[0, 0], [1, 0]], 2),
    ]
    g_mats = [
        Matrix.zeros(1, 0, 2),
        Matrix.from_rows([[1]], 2),  # [1,inf) -> [0,inf)
        Matrix.from_rows([[1, 0]], 2),
        Matrix.from_rows([[1, 0]], 2),
        Matrix.from_rows([[1, 0]], 2),
    ]
    cls = type(morphism_identity(l))
    return cls(l, m, tuple(f_mats)), cls(m, n, tuple(g_mats))


def test_matchings_do_not_chain_across_a_dying_composite():
    f, g = chain_morphisms()
    sigma, tau = induced_matching(f), induced_matching(g)
    assert sigma.pairs == ((el(iv(3, None)), el(iv(1, None))),)
    assert tau.pairs == ((el(iv(1, None)), el(iv(0, None))),)
    chained = matching_compose(sigma, tau)
    assert chained.pairs == ((el(iv(3, None)), el(iv(0, None))),)
    composite = morphism_compose(f, g)
    assert all(mat.is_zero() for mat in composite.mats)
    assert induced_matching(composite).pairs == ()


@pytest.mark.parametrize("seed", range(12))
def test_matched_pairs_nest_births_below_and_deaths_inside(seed):
    cfg = GenConfig(seed=seed)
    f = gen_morphism(
        gen_module(cfg).module, gen_module(GenConfig(seed=seed + 7_000)).module, cfg
    )
    for s, t in induced_matching(f).pairs:
        assert t.interval.b <= s.interval.b
        assert s.interval.b < t.interval.d
        assert t.interval.d <= s.interval.d


def _random_invertible(rng, n, p):
    while True:
        cand = Matrix(n, n, tuple(int(rng.integers(0, p)) for _ in range(n * n)), p)
        if rank(cand) == n:
            return cand


@pytest.mark.parametrize("seed", range(8))
def test_matching_ignores_cellwise_coordinate_changes(seed):
    import numpy as np

    cfg = GenConfig(seed=seed)
    m = gen_module(cfg).module
    n = gen_module(GenConfig(seed=seed + 7_000)).module
    f = gen_morphism(m, n, cfg)
    rng = np.random.default_rng(seed)
    ps = [_random_invertible(rng, d, m.p) for d in f.source.dims]
    qs = [_random_invertible(rng, d, n.p) for d in f.target.dims]
    src = GridModule(
        m.p,
        f.source.grid,
        f.source.dims,
        tuple(
            ps[i + 1] @ f.source.maps[i] @ inverse(ps[i])
            for i in range(len(f.source.maps))
        ),
    )
    tgt = GridModule(
        n.p,
        f.target.grid,
        f.target.dims,
        tuple(
            qs[i + 1] @ f.target.maps[i] @ inverse(qs[i])
            for i in range(len(f.target.maps))
        ),
    )
    conj = type(f)(
        src, tgt, tuple(qs[i] @ f.mats[i] @ inverse(ps[i]) for i in range(len(f.mats)))
    )
    assert induced_matching(conj) == induced_matching(f)


@pytest.mark.parametrize("seed", range(10))
def test_cellwise_injections_match_like_barcode_inclusions(seed):
    j1, j2 = gen_mono_pair(GenConfig(seed=seed))
    for j in (j1, j2):
        direct = mono_injection(module_barcode(j.source), module_barcode(j.target))
        assert induced_matching(j) == direct


@pytest.mark.parametrize("seed", range(10))
def test_cellwise_surjections_match_like_barcode_quotients(seed):
    q1, q2 = gen_epi_pair(GenConfig(seed=seed))
    for q in (q1, q2):
        direct = epi_injection(module_barcode(q.target), module_barcode(q.source))
        assert induced_matching(q) == direct


@pytest.mark.parametrize("seed", range(10))
def test_matchings_chain_along_cellwise_injections(seed):
    j1, j2 = gen_mono_pair(GenConfig(seed=seed))
    whole = induced_matching(morphism_compose(j1, j2))
    assert whole == matching_compose(induced_matching(j1), induced_matching(j2))


@pytest.mark.parametrize("seed", range(10))
def test_matchings_chain_along_cellwise_surjections(seed):
    q1, q2 = gen_epi_pair(GenConfig(seed=seed))
    whole = induced_matching(morphism_compose(q1, q2))
    assert whole == matching_compose(induced_matching(q1), induced_matching(q2))


@pytest.mark.parametrize("seed", range(10))
def test_matching_commutes_with_dualization(seed):
    cfg = GenConfig(seed=seed)
    f = gen_morphism(
        gen_module(cfg).module, gen_module(GenConfig(seed=seed + 7_000)).module, cfg
    )
    assert induced_matching(morphism_dual(f)) == matching_dual(induced_matching(f))
