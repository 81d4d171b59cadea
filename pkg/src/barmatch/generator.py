"""Deterministic random generation of modules, morphisms, and interleavings.

All randomness flows through counter-based Philox streams keyed by
(seed, purpose tag), so sub-streams are independent of draw order and a
given seed reproduces bit-identical objects across runs and platforms.
Values are drawn from a half-integer lattice to stay exactly rational.

Morphisms are generated in interval coordinates, where a random scalar
per hom-admitting bar pair is automatically natural, then conjugated
back through the recorded basis changes.  Rejection sampling on raw
matrices would almost never commute.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .barcode import Barcode, BarcodeElement
from .decompose import interval_decomposition
from .endpoints import Interval, RationalLike, as_rational
from .gf import Matrix, inverse, validate_char
from .matching import Matching
from .module import GridModule, align_modules, module_from_barcode
from .morphism import Morphism
from .stability import InterleavingPair, interleaving_from_matching


@dataclass(frozen=True, slots=True)
class GenConfig:
    """Bounds and seed for the generators; same seed, same output."""

    seed: int
    max_grid_points: int = 6
    max_dim: int = 4
    field_char: int = 2
    max_multiplicity: int = 3
    delta_range: tuple[RationalLike, RationalLike] = (0, 2)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.max_grid_points < 1:
            raise ValueError("max_grid_points must be >= 1")
        if self.max_dim < 0:
            raise ValueError("max_dim must be >= 0")
        if self.max_multiplicity < 1:
            raise ValueError("max_multiplicity must be >= 1")
        validate_char(self.field_char)
        lo, hi = (as_rational(x) for x in self.delta_range)
        if lo < 0 or hi < lo:
            raise ValueError("delta_range must be 0 <= lo <= hi")
        object.__setattr__(self, "delta_range", (lo, hi))


def _stream(cfg: GenConfig, tag: str) -> np.random.Generator:
    """An independent Philox stream for one purpose within one seed."""
    digest = hashlib.blake2s(tag.encode(), digest_size=8).digest()
    key = (cfg.seed, int.from_bytes(digest, "big"))
    return np.random.Generator(np.random.Philox(key=key))


def _draw(rng: np.random.Generator, n: int) -> int:
    """Uniform integer in [0, n)."""
    return int(rng.integers(0, n))


def _half_lattice(lo: int, hi: int) -> list[Fraction]:
    return [Fraction(k, 2) for k in range(2 * lo, 2 * hi + 1)]


def _rand_grid(rng: np.random.Generator, max_points: int) -> tuple[Fraction, ...]:
    n = 1 + _draw(rng, max_points)
    lattice = _half_lattice(-6, 6)
    picks = sorted(rng.choice(len(lattice), size=n, replace=False).tolist())
    return tuple(lattice[i] for i in picks)


def _rand_invertible(rng: np.random.Generator, n: int, p: int) -> Matrix:
    """P @ L @ U with unit diagonals; always invertible over GF(p)."""
    lo = [[1 if i == j else (_draw(rng, p) if i > j else 0) for j in range(n)] for i in range(n)]
    up = [[1 if i == j else (_draw(rng, p) if i < j else 0) for j in range(n)] for i in range(n)]
    perm = rng.permutation(n).tolist()
    pm = [[1 if i == perm[j] else 0 for j in range(n)] for i in range(n)]
    return Matrix.from_rows(pm, p) @ Matrix.from_rows(lo, p) @ Matrix.from_rows(up, p)


def _rand_realizable_barcode(
    rng: np.random.Generator, grid: tuple[Fraction, ...], max_dim: int, max_mult: int
) -> Barcode:
    """Bars [g_i, g_j) or [g_i, inf) keeping every cell dimension <= max_dim."""
    n = len(grid)
    load = [0] * n
    counts: dict[Interval, int] = {}
    want = _draw(rng, max_dim * n + 1) if max_dim else 0
    for _ in range(3 * want):
        if sum(counts.values()) >= want:
            break
        i = _draw(rng, n)
        j = i + 1 + _draw(rng, n - i)  # j == n encodes death at infinity
        if any(load[c] >= max_dim for c in range(i, j)):
            continue
        iv = Interval.make(grid[i], None if j == n else grid[j])
        if counts.get(iv, 0) >= max_mult:
            continue
        counts[iv] = counts.get(iv, 0) + 1
        for c in range(i, j):
            load[c] += 1
    return Barcode.from_counts(counts)


@dataclass(frozen=True, slots=True)
class GeneratedModule:
    """A random module with its ground-truth barcode."""

    module: GridModule
    barcode: Barcode


def _conjugate(m: GridModule, bases: list[Matrix]) -> GridModule:
    """Rewrite every cell through an invertible change of coordinates."""
    maps = tuple(
        bases[i + 1] @ m.maps[i] @ inverse(bases[i]) for i in range(m.n_cells - 1)
    )
    return GridModule(m.p, m.grid, m.dims, maps, m.left_open)


def gen_module(cfg: GenConfig) -> GeneratedModule:
    """Random interval sum hidden behind random cellwise coordinates."""
    rng = _stream(cfg, "module")
    grid = _rand_grid(rng, cfg.max_grid_points)
    bc = _rand_realizable_barcode(rng, grid, cfg.max_dim, cfg.max_multiplicity)
    plain = module_from_barcode(bc, grid, cfg.field_char)
    bases = [_rand_invertible(rng, d, cfg.field_char) for d in plain.dims]
    return GeneratedModule(_conjugate(plain, bases), bc)


def _admits_hom(i: Interval, j: Interval) -> bool:
    """Whether a nonzero morphism from the bar i summand to bar j exists."""
    return j.b <= i.b and i.b < j.d and j.d <= i.d


def _interval_matrix(
    src_alive: list[int], tgt_alive: list[int], scalars: dict[tuple[int, int], int], p: int
) -> Matrix:
    data = [
        scalars.get((si, ti), 0) for ti in tgt_alive for si in src_alive
    ]
    return Matrix(len(tgt_alive), len(src_alive), tuple(data), p)


def _alive_at(bc: Barcode, t: Fraction) -> list[int]:
    return [k for k, el in enumerate(bc.elements) if el.interval.contains_value(t)]


def gen_morphism(m: GridModule, n: GridModule, cfg: GenConfig) -> Morphism:
    """Random natural map: scalars on hom-admitting bar pairs, in interval bases."""
    if m.grid != n.grid:
        m, n = align_modules(m, n)
    rng = _stream(cfg, "morphism")
    bc_m, bases_m = interval_decomposition(m)
    bc_n, bases_n = interval_decomposition(n)
    scalars: dict[tuple[int, int], int] = {}
    for si, es in enumerate(bc_m.elements):
        for ti, et in enumerate(bc_n.elements):
            if _admits_hom(es.interval, et.interval):
                c = _draw(rng, cfg.field_char)
                if c:
                    scalars[(si, ti)] = c
    mats = []
    for cell, t in enumerate(m.grid):
        raw = _interval_matrix(_alive_at(bc_m, t), _alive_at(bc_n, t), scalars, m.p)
        mats.append(bases_n[cell] @ raw @ inverse(bases_m[cell]))
    return Morphism(m, n, tuple(mats))


def _rand_delta(rng: np.random.Generator, cfg: GenConfig) -> Fraction:
    lo, hi = cfg.delta_range
    steps = int(4 * (hi - lo))  # quarter-integer lattice within the range
    return lo + Fraction(_draw(rng, steps + 1), 4)


def gen_interleaving(cfg: GenConfig) -> InterleavingPair:
    """Random delta-matching realized as an explicit interleaving pair.

    Draws a source barcode, then a partner barcode built by perturbing
    each matched bar's endpoints within delta and adding 2*delta-trivial
    noise bars, so the matching is a delta-matching by construction.
    """
    rng = _stream(cfg, "interleaving")
    delta = _rand_delta(rng, cfg)
    grid = _rand_grid(rng, cfg.max_grid_points)
    src = _rand_realizable_barcode(rng, grid, cfg.max_dim, cfg.max_multiplicity)

    lattice = _half_lattice(-9, 9)
    quarter = Fraction(1, 4)

    def perturb(x: Fraction) -> Fraction:
        if not delta:
            return x
        k = _draw(rng, int(4 * 2 * delta) + 1)
        return x - delta + k * quarter  # lands in [x - delta, x + delta]

    tgt_counts: dict[Interval, int] = {}
    pairs: list[tuple[BarcodeElement, Interval, int]] = []
    for el in src.elements:
        iv = el.interval
        short = iv.length() is not None and iv.length() <= 2 * delta
        if short and _draw(rng, 2):
            continue  # leave a 2*delta-trivial bar unmatched
        b2 = perturb(iv.b.value)
        d2 = None if iv.d.kind == 1 else perturb(iv.d.value)
        if d2 is not None and not b2 < d2:
            # only short bars can collapse under perturbation; drop unmatched
            continue
        jv = Interval.make(b2, d2)
        tgt_counts[jv] = tgt_counts.get(jv, 0) + 1
        pairs.append((el, jv, tgt_counts[jv]))
    if delta:
        for _ in range(_draw(rng, 3)):
            # uncovered noise bar, length <= 2*delta so the matching stays legal
            x = lattice[_draw(rng, len(lattice))]
            width = 2 * delta / (1 + _draw(rng, 3))
            jv = Interval.make(x, x + width)
            tgt_counts[jv] = tgt_counts.get(jv, 0) + 1
    tgt = Barcode.from_counts(tgt_counts)
    sigma = Matching.build(
        src, tgt, [(el, BarcodeElement(jv, c)) for el, jv, c in pairs]
    )
    return interleaving_from_matching(sigma, delta, grid)


# ---------------------------------------------------------------------------
# injective / surjective morphism pairs, for functoriality suites


def _widen_barcode(
    rng: np.random.Generator, bc: Barcode, mode: str
) -> tuple[Barcode, dict[BarcodeElement, Interval]]:
    """A barcode receiving bc bar-by-bar: same deaths, earlier births (mode
    "mono") or same births, earlier deaths (mode "epi"), plus spare bars in
    mono mode only (an epi target must be fully covered)."""
    quarter = Fraction(1, 4)
    counts: dict[Interval, int] = {}
    partner: dict[BarcodeElement, Interval] = {}
    for el in bc.elements:
        iv = el.interval
        if mode == "mono":
            nb = iv.b.value - quarter * _draw(rng, 4)
            jv = Interval.make(nb, None if iv.d.kind == 1 else iv.d.value)
        elif iv.d.kind == 0:
            cut = quarter * _draw(rng, int((iv.d.value - iv.b.value) * 4))
            jv = Interval.make(iv.b.value, iv.d.value - cut)
        else:
            cut = quarter * _draw(rng, 8)
            jv = Interval.make(iv.b.value, iv.b.value + 8 - cut if cut else None)
        counts[jv] = counts.get(jv, 0) + 1
        partner[el] = jv
    if mode == "mono":
        lattice = _half_lattice(-9, 9)
        for _ in range(_draw(rng, 3)):
            x = lattice[_draw(rng, len(lattice) - 4)]
            jv = Interval.make(x, x + 1 + _draw(rng, 2))
            counts[jv] = counts.get(jv, 0) + 1
    return Barcode.from_counts(counts), partner


def _bar_assignment_morphism(
    src_bc: Barcode,
    tgt_bc: Barcode,
    assign: dict[BarcodeElement, BarcodeElement],
    grid: tuple[Fraction, ...],
    p: int,
    rng: np.random.Generator,
) -> Morphism:
    """Nonzero scalar from each source bar to its assigned target bar."""
    src_mod = module_from_barcode(src_bc, grid, p)
    tgt_mod = module_from_barcode(tgt_bc, grid, p)
    s_els, t_els = src_bc.elements, tgt_bc.elements
    t_index = {el: k for k, el in enumerate(t_els)}
    scalars = {
        (si, t_index[assign[es]]): 1 + _draw(rng, p - 1)
        for si, es in enumerate(s_els)
        if es in assign
    }
    mats = tuple(
        _interval_matrix(_alive_at(src_bc, t), _alive_at(tgt_bc, t), scalars, p)
        for t in grid
    )
    return Morphism(src_mod, tgt_mod, mats)


def _assign_copies(
    partner: dict[BarcodeElement, Interval]
) -> dict[BarcodeElement, BarcodeElement]:
    used: dict[Interval, int] = {}
    out = {}
    for el in sorted(partner, key=lambda e: (e.interval.sort_key(), e.copy)):
        jv = partner[el]
        used[jv] = used.get(jv, 0) + 1
        out[el] = BarcodeElement(jv, used[jv])
    return out


def _grid_for(*bcs: Barcode) -> tuple[Fraction, ...]:
    pts = set()
    for bc in bcs:
        for iv, _ in bc.bars:
            for e in (iv.b, iv.d):
                if e.kind == 0:
                    pts.add(e.value)
    return tuple(sorted(pts)) or (Fraction(0),)


def gen_mono_pair(cfg: GenConfig) -> tuple[Morphism, Morphism]:
    """Composable cellwise-injective morphisms A -> B -> C."""
    return _gen_injective_or_surjective_pair(cfg, "mono")


def gen_epi_pair(cfg: GenConfig) -> tuple[Morphism, Morphism]:
    """Composable cellwise-surjective morphisms A -> B -> C."""
    return _gen_injective_or_surjective_pair(cfg, "epi")


def _gen_injective_or_surjective_pair(
    cfg: GenConfig, mode: str
) -> tuple[Morphism, Morphism]:
    rng = _stream(cfg, f"{mode}-pair")
    grid0 = _rand_grid(rng, cfg.max_grid_points)
    p = cfg.field_char
    bc_a = _rand_realizable_barcode(rng, grid0, cfg.max_dim, cfg.max_multiplicity)
    bc_b, part1 = _widen_barcode(rng, bc_a, mode)
    bc_c, part2 = _widen_barcode(rng, bc_b, mode)
    grid = _grid_for(bc_a, bc_b, bc_c)
    f = _bar_assignment_morphism(bc_a, bc_b, _assign_copies(part1), grid, p, rng)
    g = _bar_assignment_morphism(bc_b, bc_c, _assign_copies(part2), grid, p, rng)
    return f, g


def gen_barcode(cfg: GenConfig, tag: str = "barcode", max_bars: int = 6) -> Barcode:
    """A random barcode on the half-integer lattice, possibly with infinite bars."""
    rng = _stream(cfg, tag)
    lattice = _half_lattice(-6, 6)
    counts: dict[Interval, int] = {}
    for _ in range(_draw(rng, max_bars + 1)):
        bi = _draw(rng, len(lattice) - 1)
        if _draw(rng, 8) == 0:
            iv = Interval.make(lattice[bi], None)
        else:
            di = bi + 1 + _draw(rng, len(lattice) - 1 - bi)
            iv = Interval.make(lattice[bi], lattice[di])
        if counts.get(iv, 0) < cfg.max_multiplicity:
            counts[iv] = counts.get(iv, 0) + 1
    return Barcode.from_counts(counts)
