"""Matching algebra: compose, reverse, dualize, and the delta clauses."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barmatch import (
    Barcode,
    GenConfig,
    Matching,
    delta_matching_report,
    gen_barcode,
    identity_matching,
    is_delta_matching,
    matching_compose,
    matching_dual,
    matching_reverse,
    matching_union,
    pair_delta_close,
)

from conftest import bc, el, iv
from oracles import mutually_close


def test_compose_chains_rays_through_the_middle_barcode():
    l = bc(iv(3, None), iv(4, None))
    m = bc(iv(1, None), iv(2, None))
    n = bc(iv(0, None))
    sigma = Matching.build(l, m, [(el(iv(3, None)), el(iv(1, None)))])
    tau = Matching.build(m, n, [(el(iv(1, None)), el(iv(0, None)))])
    got = matching_compose(sigma, tau)
    assert got.pairs == ((el(iv(3, None)), el(iv(0, None))),)
    assert got.source == l and got.target == n


def test_compose_with_identity_is_neutral():
    c = bc(iv(0, 2), iv(1, 3))
    d = bc(iv(0, 1))
    sigma = Matching.build(c, d, [(el(iv(0, 2)), el(iv(0, 1)))])
    assert matching_compose(identity_matching(c), sigma) == sigma
    assert matching_compose(sigma, identity_matching(d)) == sigma


def test_compose_of_empty_is_empty():
    c, d, e = bc(iv(0, 1)), bc(iv(2, 3)), bc(iv(4, 5))
    empty = Matching(c, d, ())
    tau = Matching.build(d, e, [(el(iv(2, 3)), el(iv(4, 5)))])
    assert matching_compose(empty, tau).pairs == ()


def test_compose_drops_elements_unmatched_in_the_middle():
    c = bc(iv(0, 1), iv(0, 2))
    d = bc(iv(0, 1), iv(0, 2))
    e = bc(iv(0, 2))
    sigma = identity_matching(c)
    tau = Matching.build(d, e, [(el(iv(0, 2)), el(iv(0, 2)))])
    got = matching_compose(sigma, tau)
    assert got.pairs == ((el(iv(0, 2)), el(iv(0, 2))),)


def test_compose_requires_matching_middle():
    sigma = identity_matching(bc(iv(0, 1)))
    tau = identity_matching(bc(iv(0, 2)))
    with pytest.raises(ValueError):
        matching_compose(sigma, tau)


def random_matching(seed: int, tag: str, source=None, target=None) -> Matching:
    """Greedy partial bijection between two generated barcodes."""
    cfg = GenConfig(seed=seed)
    c = source if source is not None else gen_barcode(cfg, tag=tag + "-src")
    d = target if target is not None else gen_barcode(cfg, tag=tag + "-tgt")
    n = min(len(c.elements), len(d.elements))
    take = seed % (n + 1)
    return Matching.build(c, d, zip(c.elements[:take], d.elements[:take]))


@pytest.mark.parametrize("seed", range(12))
def test_compose_is_associative(seed):
    sigma = random_matching(seed, "a")
    tau = random_matching(seed + 100, "b", source=sigma.target)
    rho = random_matching(seed + 200, "c", source=tau.target)
    left = matching_compose(matching_compose(sigma, tau), rho)
    right = matching_compose(sigma, matching_compose(tau, rho))
    assert left == right


def test_reverse_transposes_pairs():
    c, d = bc(iv(0, 2)), bc(iv(1, 3))
    sigma = Matching.build(c, d, [(el(iv(0, 2)), el(iv(1, 3)))])
    rev = matching_reverse(sigma)
    assert rev.pairs == ((el(iv(1, 3)), el(iv(0, 2))),)
    assert rev.source == d and rev.target == c
    assert matching_reverse(rev) == sigma


def test_reverse_of_empty_matching():
    sigma = Matching(bc(iv(0, 1)), bc(iv(2, 3)), ())
    assert matching_reverse(sigma).pairs == ()


def test_dual_reflects_and_swaps():
    c, d = bc(iv(1, 3)), bc(iv(0, 2))
    sigma = Matching.build(c, d, [(el(iv(1, 3)), el(iv(0, 2)))])
    dual = matching_dual(sigma)
    reflected_c = iv(-3, -1, b_dec="+", d_dec="+")  # (-3,-1]
    reflected_d = iv(-2, 0, b_dec="+", d_dec="+")  # (-2,0]
    assert dual.pairs == ((el(reflected_d), el(reflected_c)),)
    assert dual.source == d.dual() and dual.target == c.dual()


def test_dual_of_empty_matching():
    sigma = Matching(bc(iv(0, 1)), bc(iv(2, 3)), ())
    assert matching_dual(sigma).pairs == ()


@pytest.mark.parametrize("seed", range(8))
def test_dual_is_a_contravariant_involution(seed):
    sigma = random_matching(seed, "d")
    assert matching_dual(matching_dual(sigma)) == sigma
    tau = random_matching(seed + 300, "e", source=sigma.target)
    assert matching_dual(matching_compose(sigma, tau)) == matching_compose(
        matching_dual(tau), matching_dual(sigma)
    )


def test_union_renumbers_copies():
    a = identity_matching(bc(iv(0, 2)))
    b = identity_matching(bc(iv(0, 2), iv(1, 3)))
    merged = matching_union(a, b)
    assert merged.source == Barcode.from_counts({iv(0, 2): 2, iv(1, 3): 1})
    assert (el(iv(0, 2), 2), el(iv(0, 2), 2)) in merged.pairs
    assert len(merged) == 3


def test_matching_rejects_reused_elements():
    c = bc(iv(0, 2), iv(1, 3))
    d = bc(iv(0, 1), iv(2, 4))
    with pytest.raises(ValueError):
        Matching.build(
            c, d, [(el(iv(0, 2)), el(iv(0, 1))), (el(iv(0, 2)), el(iv(2, 4)))]
        )
    with pytest.raises(ValueError):
        Matching.build(
            c, d, [(el(iv(0, 2)), el(iv(0, 1))), (el(iv(1, 3)), el(iv(0, 1)))]
        )
    with pytest.raises(ValueError):
        Matching.build(c, d, [(el(iv(5, 6)), el(iv(0, 1)))])


def delta_clauses(sigma: Matching, delta) -> tuple[bool, bool, bool]:
    """Hand evaluation of the three clauses, one flag each."""
    two = 2 * Fraction(delta)
    dom, img = sigma.domain(), sigma.image()
    c1 = all(
        e in dom for e in sigma.source.elements if e.interval.nontrivial_at(two)
    )
    c2 = all(
        e in img for e in sigma.target.elements if e.interval.nontrivial_at(two)
    )
    c3 = all(mutually_close(s.interval, t.interval, delta) for s, t in sigma.pairs)
    return c1, c2, c3


def test_empty_matching_suffices_when_both_sides_die():
    c, d = bc(iv(0, 2)), Barcode.empty()
    sigma = Matching(c, d, ())
    assert delta_clauses(sigma, 1) == (True, True, True)
    report = is_delta_matching(sigma, c, d, 1)
    assert report.ok and bool(report)
    assert report.failures() == ()
    # at smaller delta the source bar still persists and clause 1 fails
    report = is_delta_matching(sigma, c, d, Fraction(1, 2))
    assert not report.ok
    assert report.uncovered_source == (el(iv(0, 2)),)


def test_nested_bars_are_one_close():
    c, d = bc(iv(0, 10)), bc(iv(1, 9))
    sigma = Matching.build(c, d, [(el(iv(0, 10)), el(iv(1, 9)))])
    assert delta_clauses(sigma, 1) == (True, True, True)
    assert is_delta_matching(sigma, c, d, 1).ok


def test_nested_bars_fail_clause_three_at_half():
    c, d = bc(iv(0, 10)), bc(iv(1, 9))
    sigma = Matching.build(c, d, [(el(iv(0, 10)), el(iv(1, 9)))])
    assert delta_clauses(sigma, Fraction(1, 2)) == (True, True, False)
    report = is_delta_matching(sigma, c, d, Fraction(1, 2))
    assert not report.ok
    assert report.far_pairs == ((el(iv(0, 10)), el(iv(1, 9))),)
    assert "not delta-close" in report.failures()[0]


def test_negative_delta_is_rejected():
    sigma = identity_matching(bc(iv(0, 1)))
    with pytest.raises(ValueError):
        delta_matching_report(sigma, -1)


def test_is_delta_matching_checks_the_barcodes():
    sigma = identity_matching(bc(iv(0, 1)))
    with pytest.raises(ValueError):
        is_delta_matching(sigma, bc(iv(0, 2)), sigma.target, 0)
    with pytest.raises(ValueError):
        is_delta_matching(sigma, sigma.source, bc(iv(0, 2)), 0)


def test_pair_delta_close_examples():
    assert pair_delta_close(iv(0, 10), iv(1, 9), 1)
    assert not pair_delta_close(iv(0, 10), iv(1, 9), Fraction(1, 2))
    assert pair_delta_close(iv(0, 2), iv(0, 2), 0)
    assert not pair_delta_close(iv(0, 2), iv(0, None), 5)


@given(
    seed=st.integers(min_value=0, max_value=10_000),
    d1=st.fractions(min_value=0, max_value=3, max_denominator=4),
    d2=st.fractions(min_value=0, max_value=3, max_denominator=4),
)
@settings(max_examples=60)
def test_delta_matchings_compose_additively(seed, d1, d2):
    cfg = GenConfig(seed=seed)
    c = gen_barcode(cfg, tag="tri-a")
    d = gen_barcode(cfg, tag="tri-b")
    e = gen_barcode(cfg, tag="tri-c")
    n1 = min(len(c.elements), len(d.elements))
    n2 = min(len(d.elements), len(e.elements))
    sigma = Matching.build(c, d, zip(c.elements[:n1], d.elements[:n1]))
    tau = Matching.build(d, e, zip(d.elements[:n2], e.elements[:n2]))
    if delta_matching_report(sigma, d1).ok and delta_matching_report(tau, d2).ok:
        composite = matching_compose(sigma, tau)
        assert delta_matching_report(composite, d1 + d2).ok
