"""Interleavings, stability matchings, and bottleneck distance.

Two modules are delta-interleaved when morphisms M -> N(delta) and
N -> M(delta) compose (after shifting) to the 2*delta transition
endomorphisms on both sides.  This module checks such pairs exactly,
extracts the delta-matching a single interleaving morphism induces
(shift-reindexed induced matching), decides the single-morphism
interleaving criterion through kernel/cokernel triviality, computes the
bottleneck distance between barcodes, and builds an explicit
interleaving from any delta-matching (converse stability).

Bottleneck search: feasibility of a given delta is monotone, and the
infimum lies in the finite set of candidate values {0, cross differences
of births, cross differences of deaths, half bar lengths}.  Whether the
infimum is *attained* depends on endpoint decorations, so each candidate
is tested twice: exactly at delta, and at delta plus an infinitesimal
(the eta flag of `leq_with_slack`).  No floating point is involved
anywhere.  The witness matching must cover all long bars on both sides;
a maximum matching alone cannot guarantee that, so two Hopcroft-Karp
passes (one covering each side's required set) are combined per
connected component of their union, which by the classic two-matchings
argument always yields a matching covering both required sets at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .barcode import Barcode, BarcodeElement
from .endpoints import Interval, RationalLike, as_rational, leq_with_slack
from .gf import Matrix
from .induced import induced_matching
from .matching import Matching, delta_matching_report
from .module import (
    GridModule,
    TrivialityBound,
    min_trivial_eps,
    module_from_barcode,
)
from .morphism import (
    Morphism,
    MorphismError,
    align_morphisms,
    cokernel_of,
    compose_refining,
    kernel_of,
    shift_morphism,
    transition_endomorphism,
)


@dataclass(frozen=True, slots=True)
class InterleavingPair:
    """delta plus morphisms fwd: M -> N(delta) and bwd: N -> M(delta)."""

    delta: Fraction
    fwd: Morphism
    bwd: Morphism

    def __post_init__(self):
        object.__setattr__(self, "delta", as_rational(self.delta))
        if self.delta < 0:
            raise ValueError("delta must be >= 0")


@dataclass(frozen=True, slots=True)
class InterleavingReport:
    """Outcome of checking the two composite identities."""

    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _composite_matches_transition(
    roundtrip: Morphism, base: GridModule, two_delta: Fraction, side: str
) -> list[str]:
    expected = transition_endomorphism(base, two_delta)
    got, want = align_morphisms(roundtrip, expected)
    problems = []
    if got.source != want.source or got.target != want.target:
        problems.append(f"{side}: roundtrip endpoints differ from the transition's")
        return problems
    for i, (a, b) in enumerate(zip(got.mats, want.mats)):
        if a != b:
            problems.append(
                f"{side}: composite differs from the 2*delta transition at cell "
                f"{i} (grid value {got.source.grid[i]})"
            )
    return problems


def check_interleaving(pair: InterleavingPair) -> InterleavingReport:
    """Verify bwd(delta) . fwd and fwd(delta) . bwd equal the transitions."""
    d = pair.delta
    failures: list[str] = []
    try:
        around_m = compose_refining(pair.fwd, shift_morphism(pair.bwd, d))
        failures += _composite_matches_transition(around_m, pair.fwd.source, 2 * d, "source side")
    except MorphismError as exc:
        failures.append(f"source side: composition failed: {exc}")
    try:
        around_n = compose_refining(pair.bwd, shift_morphism(pair.fwd, d))
        failures += _composite_matches_transition(around_n, pair.bwd.source, 2 * d, "target side")
    except MorphismError as exc:
        failures.append(f"target side: composition failed: {exc}")
    return InterleavingReport(not failures, tuple(failures))


def eps_trivial_check(m: GridModule, eps: RationalLike) -> bool:
    """Whether every transition of length eps is the zero map.

    Decided directly on the transition endomorphism, independently of the
    barcode-based `min_trivial_eps` bound.
    """
    eps = as_rational(eps)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    t = transition_endomorphism(m, eps)
    return all(mat.is_zero() for mat in t.mats)


def reindex_shifted_target(sigma: Matching, delta: RationalLike) -> Matching:
    """Compose with the bar bijection B(N(delta)) -> B(N).

    Each target bar <b, d> is sent to <b + delta, d + delta>, undoing the
    shift of the target module so the matching relates the unshifted
    barcodes.
    """
    delta = as_rational(delta)
    new_target = sigma.target.shift(-delta)
    pairs = tuple(
        (s, BarcodeElement(t.interval.shift(-delta), t.copy)) for s, t in sigma.pairs
    )
    return Matching(sigma.source, new_target, pairs)


def stability_matching(f: Morphism, delta: RationalLike) -> Matching:
    """The shift-reindexed induced matching of f: M -> N(delta).

    When f belongs to a delta-interleaving (equivalently, its kernel and
    cokernel are 2*delta-trivial), the result is a delta-matching between
    B(M) and B(N).
    """
    delta = as_rational(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    return reindex_shifted_target(induced_matching(f), delta)


def _bound_within(bound: TrivialityBound, eps: Fraction) -> bool:
    if bound.value is None:
        return False
    if bound.value < eps:
        return True
    return bound.value == eps and bound.attained


def single_morphism_check(f: Morphism, delta: RationalLike) -> bool:
    """Whether f: M -> N(delta) certifies a delta-interleaving.

    True iff kernel and cokernel are both 2*delta-trivial, honoring
    unattained triviality bounds (a bound of exactly 2*delta that is not
    attained fails the check).
    """
    delta = as_rational(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    two = 2 * delta
    if not _bound_within(min_trivial_eps(kernel_of(f).module), two):
        return False
    return _bound_within(min_trivial_eps(cokernel_of(f).module), two)


# ---------------------------------------------------------------------------
# bottleneck distance


def _admissible(i: Interval, j: Interval, delta: Fraction, eta: int) -> bool:
    """Clause-3 closeness at delta (+ infinitesimal when eta=1)."""
    return (
        leq_with_slack(j.b, i.b, delta, eta)
        and leq_with_slack(i.d, j.d, delta, eta)
        and leq_with_slack(i.b, j.b, delta, eta)
        and leq_with_slack(j.d, i.d, delta, eta)
    )


def _required(bc: Barcode, delta: Fraction, eta: int) -> list[int]:
    """Element indices whose bars persist past 2*delta (+ eta infinitesimal)."""
    out = []
    for k, el in enumerate(bc.elements):
        iv = el.interval
        # bar survives iff b + 2delta < d, i.e. NOT d <= b + 2delta (+ slack)
        if not leq_with_slack(iv.d, iv.b, 2 * delta, eta):
            out.append(k)
    return out


def _hopcroft_karp(n_left: int, adj: list[list[int]], n_right: int) -> list[int]:
    """Maximum bipartite matching; returns right-partner per left node (-1 none)."""
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    while True:
        dist: list[int | None] = [None] * n_left
        queue = [u for u in range(n_left) if match_l[u] == -1]
        for u in queue:
            dist[u] = 0
        found = False
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] is None:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break

        def try_augment(u: int) -> bool:
            for v in adj[u]:
                w = match_r[v]
                if w == -1 or (dist[w] == dist[u] + 1 and try_augment(w)):
                    match_l[u] = v
                    match_r[v] = u
                    return True
            dist[u] = None
            return False

        for u in range(n_left):
            if match_l[u] == -1:
                try_augment(u)
    return match_l


def _combined_cover(
    n_left: int,
    n_right: int,
    adj: list[list[int]],
    need_left: list[int],
    need_right: list[int],
) -> list[tuple[int, int]] | None:
    """A matching covering all of need_left and need_right, or None.

    Finds one matching saturating need_left and one saturating need_right,
    then per connected component of their union keeps whichever of the two
    covers that component's required vertices on both sides.  The union of
    two matchings is a disjoint collection of paths and even cycles, and
    alternation forces one of the two restrictions to work per component.
    """
    need_l_set = set(need_left)
    need_r_set = set(need_right)

    # a matching saturating need_left exists iff the maximum matching of the
    # subgraph restricted to those rows does (Hall), and likewise for columns
    m1_rows = _hopcroft_karp(len(need_left), [adj[u] for u in need_left], n_right)
    if any(v == -1 for v in m1_rows):
        return None
    radj: list[list[int]] = [[] for _ in range(n_right)]
    for u in range(n_left):
        for v in adj[u]:
            radj[v].append(u)
    m2_cols = _hopcroft_karp(len(need_right), [radj[v] for v in need_right], n_left)
    if any(u == -1 for u in m2_cols):
        return None

    edges1 = {(need_left[k], m1_rows[k]) for k in range(len(need_left))}
    edges2 = {(m2_cols[k], need_right[k]) for k in range(len(need_right))}

    # connected components of the union graph
    comp_of: dict[tuple[str, int], int] = {}
    neighbors: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for u, v in edges1 | edges2:
        neighbors.setdefault(("L", u), []).append(("R", v))
        neighbors.setdefault(("R", v), []).append(("L", u))
    comp = 0
    for node in sorted(neighbors):
        if node in comp_of:
            continue
        stack = [node]
        comp_of[node] = comp
        while stack:
            cur = stack.pop()
            for nxt in neighbors[cur]:
                if nxt not in comp_of:
                    comp_of[nxt] = comp
                    stack.append(nxt)
        comp += 1

    chosen: list[tuple[int, int]] = []
    for c in range(comp):
        nodes = [n for n, cc in comp_of.items() if cc == c]
        e1 = [e for e in edges1 if comp_of[("L", e[0])] == c]
        e2 = [e for e in edges2 if comp_of[("L", e[0])] == c]
        needs_l = [n[1] for n in nodes if n[0] == "L" and n[1] in need_l_set]
        needs_r = [n[1] for n in nodes if n[0] == "R" and n[1] in need_r_set]

        def covers(es: list[tuple[int, int]]) -> bool:
            ls = {u for u, _ in es}
            rs = {v for _, v in es}
            return all(u in ls for u in needs_l) and all(v in rs for v in needs_r)

        if covers(e1):
            chosen.extend(e1)
        elif covers(e2):
            chosen.extend(e2)
        else:
            return None
    return chosen


@dataclass(frozen=True, slots=True)
class BottleneckResult:
    """value/attained/witness for the bottleneck distance.

    value None encodes infinity (no finite delta admits a matching).
    When attained, the witness is a delta-matching at value itself;
    otherwise it is valid at value + h for every real h > 0 (checked via
    exact infinitesimal comparisons, and verifiable at any concrete
    delta > value).
    """

    value: Fraction | None
    attained: bool
    witness: Matching | None

    def __str__(self) -> str:
        if self.value is None:
            return "inf attained=false"
        return f"{self.value} attained={'true' if self.attained else 'false'}"


def _feasible(
    c: Barcode, d: Barcode, delta: Fraction, eta: int
) -> Matching | None:
    ce = c.elements
    de = d.elements
    need_c = _required(c, delta, eta)
    need_d = _required(d, delta, eta)
    adj = [
        [j for j, ed in enumerate(de) if _admissible(es.interval, ed.interval, delta, eta)]
        for es in ce
    ]
    pairs_idx = _combined_cover(len(ce), len(de), adj, need_c, need_d)
    if pairs_idx is None:
        return None
    pairs = tuple((ce[u], de[v]) for u, v in sorted(pairs_idx))
    return Matching(c, d, pairs)


def _candidate_deltas(c: Barcode, d: Barcode) -> list[Fraction]:
    cands = {Fraction(0)}
    for bc in (c, d):
        for iv, _ in bc.bars:
            ln = iv.length()
            if ln is not None:
                cands.add(ln / 2)
    for iv, _ in c.bars:
        for jv, _ in d.bars:
            if iv.b.is_finite and jv.b.is_finite:
                cands.add(abs(iv.b.value - jv.b.value))
            if iv.d.is_finite and jv.d.is_finite:
                cands.add(abs(iv.d.value - jv.d.value))
    return sorted(cands)


def bottleneck_distance(c: Barcode, d: Barcode) -> BottleneckResult:
    """Infimal delta admitting a delta-matching, with witness.

    Scans the finite candidate set in increasing order; at each value
    tests exact feasibility and feasibility infinitesimally above.  The
    first success gives the infimum; exact success means it is attained.
    Returns value None (infinity) if no candidate works even with slack.
    """
    for delta in _candidate_deltas(c, d):
        witness = _feasible(c, d, delta, 0)
        if witness is not None:
            return BottleneckResult(delta, True, witness)
        witness = _feasible(c, d, delta, 1)
        if witness is not None:
            return BottleneckResult(delta, False, witness)
    return BottleneckResult(None, False, None)


# ---------------------------------------------------------------------------
# converse stability: interleaving from a delta-matching


def interleaving_from_matching(
    sigma: Matching, delta: RationalLike, grid
) -> InterleavingPair:
    """Build explicit interleaving morphisms realizing a delta-matching.

    Both barcodes must consist of grid-realizable bars ([x, y) or
    [x, inf)); the supplied grid is refined by every endpoint value and
    its delta-shift.  Matched pairs get the scalar-1 morphism on each
    overlap; unmatched bars map to zero, which the delta-matching clauses
    make legitimate.  The returned pair passes check_interleaving.
    """
    delta = as_rational(delta)
    report = delta_matching_report(sigma, delta)
    if not report:
        raise ValueError(
            "not a delta-matching at delta=%s: %s" % (delta, "; ".join(report.failures()))
        )
    points: set[Fraction] = {as_rational(t) for t in grid}
    for bc in (sigma.source, sigma.target):
        for iv, _ in bc.bars:
            for e in (iv.b, iv.d):
                if e.is_finite:
                    points.add(e.value)
                    points.add(e.value - delta)
    if not points:
        points.add(Fraction(0))  # zero modules still need a grid point
    g = tuple(sorted(points))
    c, d = sigma.source, sigma.target
    m = module_from_barcode(c, g, 2)
    n = module_from_barcode(d, g, 2)
    n_shift = module_from_barcode(d.shift(delta), g, 2)
    m_shift = module_from_barcode(c.shift(delta), g, 2)

    fwd = _scalar_matching_morphism(m, n_shift, c, d, sigma.forward(), delta, g)
    bwd = _scalar_matching_morphism(n, m_shift, d, c, sigma.backward(), delta, g)
    return InterleavingPair(delta, fwd, bwd)


def _scalar_matching_morphism(
    src_mod: GridModule,
    tgt_mod: GridModule,
    src_bc: Barcode,
    tgt_bc: Barcode,
    pairing: dict[BarcodeElement, BarcodeElement],
    delta: Fraction,
    grid: tuple[Fraction, ...],
) -> Morphism:
    """Cellwise 0/1 matrices sending each matched bar into its partner's shift."""
    src_els = src_bc.elements
    tgt_els = tgt_bc.elements
    mats = []
    for cell, t in enumerate(grid):
        rows = []
        col_els = [el for el in src_els if el.interval.contains_value(t)]
        row_els = [
            el for el in tgt_els if el.interval.shift(delta).contains_value(t)
        ]
        row_index = {el: r for r, el in enumerate(row_els)}
        data = [0] * (len(row_els) * len(col_els))
        for ccol, el in enumerate(col_els):
            partner = pairing.get(el)
            if partner is not None and partner in row_index:
                data[row_index[partner] * len(col_els) + ccol] = 1
        mats.append(Matrix(len(row_els), len(col_els), tuple(data), src_mod.p))
    return Morphism(src_mod, tgt_mod, tuple(mats))
