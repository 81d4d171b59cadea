"""Property harness and re-verifiable certificates.

verify_suite runs every registered property over a range of seeds and
reports pass/fail per property.  A failure is re-run under shrinking
generator bounds to find a smaller reproduction, and the offending
objects are serialized as counterexample files.

Certificates are JSON records (delta-matchings or interleaving pairs)
that embed everything needed to re-check the claim from scratch; the CLI
`verify --cert` path feeds files back through reverify_certificate.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from fractions import Fraction

from . import io
from .generator import (
    GenConfig,
    gen_barcode,
    gen_epi_pair,
    gen_interleaving,
    gen_module,
    gen_mono_pair,
    gen_morphism,
)
from .induced import induced_matching
from .matching import (
    delta_matching_report,
    is_delta_matching,
    matching_compose,
    matching_dual,
)
from .module import min_trivial_eps, module_barcode, module_dual, module_shift, modules_equal
from .morphism import cokernel_of, kernel_of, morphism_compose, morphism_dual
from .stability import (
    InterleavingPair,
    bottleneck_distance,
    check_interleaving,
    eps_trivial_check,
    interleaving_from_matching,
    single_morphism_check,
    stability_matching,
)

# a property returns None on success, else (message, artifact files)
Failure = tuple[str, dict[str, str]]


def check_barcode_roundtrip(cfg: GenConfig) -> Failure | None:
    """Extraction inverts realization on conjugated interval sums."""
    g = gen_module(cfg)
    got = module_barcode(g.module)
    if got != g.barcode:
        return (
            f"extracted barcode {got} differs from the recorded {g.barcode}",
            {
                "module.json": io.serialize_module(g.module),
                "expected.bc": io.serialize_barcode(g.barcode),
                "got.bc": io.serialize_barcode(got),
            },
        )
    return None


def _random_morphism(cfg: GenConfig):
    src = gen_module(cfg).module
    tgt = gen_module(replace(cfg, seed=(cfg.seed * 2654435761 + 1) % 2**64)).module
    return gen_morphism(src, tgt, cfg)


def check_induced_matching_clauses(cfg: GenConfig) -> Failure | None:
    """Matched endpoints interleave, and long bars are covered both ways."""
    f = _random_morphism(cfg)
    m = induced_matching(f)
    arts = {
        "morphism.json": io.serialize_morphism(f),
        "matching.txt": io.serialize_matching(m),
    }
    for s, t in m.pairs:
        bi, di = s.interval.b, s.interval.d
        bj, dj = t.interval.b, t.interval.d
        if not (bj <= bi and bi < dj and dj <= di):
            return (f"pair ({s}, {t}) violates the endpoint pattern", arts)
    ek = min_trivial_eps(kernel_of(f).module)
    ec = min_trivial_eps(cokernel_of(f).module)
    if ec.value is not None:
        covered = m.image()
        for el in m.target.persistent_elements(ec.value):
            if el not in covered:
                return (f"target bar {el} persists past coker bound {ec} yet is unmatched", arts)
        for s, t in m.pairs:
            if not (s.interval.b <= t.interval.b.shift(ec.value)):
                return (f"pair ({s}, {t}) breaks the birth bound at {ec}", arts)
    if ek.value is not None:
        covered = m.domain()
        for el in m.source.persistent_elements(ek.value):
            if el not in covered:
                return (f"source bar {el} persists past kernel bound {ek} yet is unmatched", arts)
        for s, t in m.pairs:
            if not (s.interval.d.shift(-ek.value) <= t.interval.d):
                return (f"pair ({s}, {t}) breaks the death bound at {ek}", arts)
    return None


def _functoriality(cfg: GenConfig, mode: str) -> Failure | None:
    f, g = gen_mono_pair(cfg) if mode == "mono" else gen_epi_pair(cfg)
    lhs = induced_matching(morphism_compose(f, g))
    rhs = matching_compose(induced_matching(f), induced_matching(g))
    if lhs != rhs:
        return (
            "composite matching differs from composed matchings",
            {
                "first.json": io.serialize_morphism(f),
                "second.json": io.serialize_morphism(g),
                "of_composite.txt": io.serialize_matching(lhs),
                "composed.txt": io.serialize_matching(rhs),
            },
        )
    return None


def check_functoriality_mono(cfg: GenConfig) -> Failure | None:
    """barc distributes over composition of cellwise-injective maps."""
    return _functoriality(cfg, "mono")


def check_functoriality_epi(cfg: GenConfig) -> Failure | None:
    """barc distributes over composition of cellwise-surjective maps."""
    return _functoriality(cfg, "epi")


def check_duality(cfg: GenConfig) -> Failure | None:
    """barc commutes with dualization; kernel/cokernel bounds swap."""
    f = _random_morphism(cfg)
    arts = {"morphism.json": io.serialize_morphism(f)}
    lhs = induced_matching(morphism_dual(f))
    rhs = matching_dual(induced_matching(f))
    if lhs != rhs:
        arts["of_dual.txt"] = io.serialize_matching(lhs)
        arts["dual_of.txt"] = io.serialize_matching(rhs)
        return ("dual of the matching differs from the matching of the dual", arts)
    if min_trivial_eps(kernel_of(f).module) != min_trivial_eps(
        cokernel_of(morphism_dual(f)).module
    ):
        return ("kernel bound differs from the dual's cokernel bound", arts)
    if not modules_equal(module_dual(module_dual(f.source)), f.source):
        return ("double dual is not the identity", arts)
    return None


def check_stability(cfg: GenConfig) -> Failure | None:
    """Interleavings certify delta-matchings and bound the bottleneck."""
    pair = gen_interleaving(cfg)
    d = pair.delta
    arts = {
        "fwd.json": io.serialize_morphism(pair.fwd),
        "bwd.json": io.serialize_morphism(pair.bwd),
    }
    for name, f in (("fwd", pair.fwd), ("bwd", pair.bwd)):
        if not eps_trivial_check(kernel_of(f).module, 2 * d):
            return (f"kernel of {name} is not 2*delta-trivial at delta={d}", arts)
        if not eps_trivial_check(cokernel_of(f).module, 2 * d):
            return (f"cokernel of {name} is not 2*delta-trivial at delta={d}", arts)
    sm = stability_matching(pair.fwd, d)
    if not is_delta_matching(sm, sm.source, sm.target, d):
        arts["matching.txt"] = io.serialize_matching(sm)
        return (f"stability matching fails the delta-matching clauses at {d}", arts)
    if not single_morphism_check(pair.fwd, d):
        return (f"single-morphism criterion rejects an actual {d}-interleaving", arts)
    bd = bottleneck_distance(module_barcode(pair.fwd.source), module_barcode(pair.bwd.source))
    if bd.value is None or bd.value > d:
        return (f"bottleneck distance {bd} exceeds interleaving delta {d}", arts)
    return None


def check_isometry(cfg: GenConfig) -> Failure | None:
    """Bottleneck witnesses convert to interleavings at (or just above) the value."""
    c = gen_barcode(cfg, "isometry-a")
    d = gen_barcode(cfg, "isometry-b")
    arts = {"a.bc": io.serialize_barcode(c), "b.bc": io.serialize_barcode(d)}
    r = bottleneck_distance(c, d)
    if r.value is None:
        return None  # no finite matching exists; nothing to certify
    deltas = [r.value] if r.attained else [r.value + Fraction(1, 2**k) for k in (1, 5, 10)]
    for delta in deltas:
        pair = interleaving_from_matching(r.witness, delta, ())
        rep = check_interleaving(pair)
        if not rep.ok:
            arts["witness.txt"] = io.serialize_matching(r.witness)
            return (f"witness at delta={delta} fails: {'; '.join(rep.failures)}", arts)
    return None


def check_single_morphism_criterion(cfg: GenConfig) -> Failure | None:
    """Criterion agrees with interleaving existence decided by bottleneck."""
    f = _random_morphism(cfg)
    delta = Fraction(cfg.seed % 5, 2)
    arts = {"morphism.json": io.serialize_morphism(f), "delta.txt": str(delta)}
    claim = single_morphism_check(f, delta)
    bm = module_barcode(f.source)
    bn = module_barcode(module_shift(f.target, -delta))
    bd = bottleneck_distance(bm, bn)
    exists = bd.value is not None and (
        bd.value < delta or (bd.value == delta and bd.attained)
    )
    if claim and not exists:
        return (f"criterion passes but bottleneck is {bd} > delta={delta}", arts)
    # claim False with exists True is consistent: this f need not be the
    # morphism realizing the interleaving, so only the forward direction binds
    return None


PROPERTIES = (
    ("barcode-roundtrip", check_barcode_roundtrip),
    ("induced-matching-clauses", check_induced_matching_clauses),
    ("functoriality-mono", check_functoriality_mono),
    ("functoriality-epi", check_functoriality_epi),
    ("duality", check_duality),
    ("stability", check_stability),
    ("isometry", check_isometry),
    ("single-morphism-criterion", check_single_morphism_criterion),
)


@dataclass(frozen=True, slots=True)
class PropertyFailure:
    seed: int
    message: str
    artifacts: dict[str, str]


@dataclass(frozen=True, slots=True)
class VerifyReport:
    trials: int
    results: tuple[tuple[str, tuple[PropertyFailure, ...]], ...]

    @property
    def ok(self) -> bool:
        return all(not fails for _, fails in self.results)

    def render(self) -> str:
        lines = []
        for name, fails in self.results:
            status = "pass" if not fails else f"FAIL ({len(fails)} seeds)"
            lines.append(f"{name}: {status} [{self.trials} trials]")
            for fl in fails:
                lines.append(f"  seed {fl.seed}: {fl.message}")
                for fname in sorted(fl.artifacts):
                    lines.append(f"    wrote {fname}")
        return "\n".join(lines) + ("\n" if lines else "")


def _shrink(prop, cfg: GenConfig) -> tuple[GenConfig, Failure]:
    """Smallest generator bounds that still reproduce the failure."""
    best = (cfg, prop(cfg))
    for total in range(1, cfg.max_grid_points + cfg.max_dim + 1):
        for gp in range(1, min(total, cfg.max_grid_points) + 1):
            md = total - gp
            if md > cfg.max_dim:
                continue
            small = replace(cfg, max_grid_points=gp, max_dim=md)
            failure = prop(small)
            if failure is not None:
                return small, failure
    return best


def verify_suite(cfg: GenConfig, trials: int, out_dir: str | None = None) -> VerifyReport:
    """Run every registered property over `trials` consecutive seeds."""
    results = []
    for name, prop in PROPERTIES:
        failures = []
        for k in range(trials):
            seed_cfg = replace(cfg, seed=(cfg.seed + k) % 2**64)
            failure = prop(seed_cfg)
            if failure is None:
                continue
            shrunk_cfg, (message, artifacts) = _shrink(prop, seed_cfg)
            if shrunk_cfg != seed_cfg:
                message += (
                    f" (reproduced at max_grid_points={shrunk_cfg.max_grid_points},"
                    f" max_dim={shrunk_cfg.max_dim})"
                )
            named = {
                f"{name}_seed{seed_cfg.seed}_{fname}": content
                for fname, content in artifacts.items()
            }
            if out_dir is not None:
                os.makedirs(out_dir, exist_ok=True)
                for fname, content in named.items():
                    with open(os.path.join(out_dir, fname), "w", encoding="utf-8") as fh:
                        fh.write(content)
            failures.append(PropertyFailure(seed_cfg.seed, message, named))
        results.append((name, tuple(failures)))
    return VerifyReport(trials, tuple(results))


# ---------------------------------------------------------------------------
# certificates


def delta_matching_certificate(sigma, delta: Fraction) -> dict:
    report = delta_matching_report(sigma, delta)
    return {
        "kind": "delta_matching",
        "delta": io.format_rational(delta),
        "source": io.serialize_barcode(sigma.source),
        "target": io.serialize_barcode(sigma.target),
        "matching": io.serialize_matching(sigma),
        "clauses": {
            "long_source_bars_covered": not report.uncovered_source,
            "long_target_bars_covered": not report.uncovered_target,
            "pairs_mutually_close": not report.far_pairs,
        },
    }


def interleaving_certificate(pair: InterleavingPair) -> dict:
    report = check_interleaving(pair)
    return {
        "kind": "interleaving",
        "delta": io.format_rational(pair.delta),
        "fwd": io.morphism_to_obj(pair.fwd),
        "bwd": io.morphism_to_obj(pair.bwd),
        "checks": {"composites_match_transitions": report.ok},
    }


def reverify_certificate(obj: dict) -> tuple[bool, list[str]]:
    """Re-check a certificate from its own embedded data."""
    problems: list[str] = []
    kind = obj.get("kind")
    if kind == "delta_matching":
        delta = io.parse_rational(obj["delta"])
        source = io.parse_barcode(obj["source"])
        target = io.parse_barcode(obj["target"])
        sigma = io.parse_matching(obj["matching"], source, target)
        report = delta_matching_report(sigma, delta)
        claimed = obj.get("clauses", {})
        actual = {
            "long_source_bars_covered": not report.uncovered_source,
            "long_target_bars_covered": not report.uncovered_target,
            "pairs_mutually_close": not report.far_pairs,
        }
        for key, value in actual.items():
            if claimed.get(key) != value:
                problems.append(f"clause {key}: certificate says {claimed.get(key)}, got {value}")
        if not report:
            problems.extend(report.failures())
    elif kind == "interleaving":
        delta = io.parse_rational(obj["delta"])
        fwd = io.morphism_from_obj(obj["fwd"])
        bwd = io.morphism_from_obj(obj["bwd"])
        rep = check_interleaving(InterleavingPair(delta, fwd, bwd))
        if not obj.get("checks", {}).get("composites_match_transitions", False):
            problems.append("certificate does not claim the composite identities")
        problems.extend(rep.failures)
    else:
        problems.append(f"unknown certificate kind {kind!r}")
    return (not problems, problems)


def certificate_to_text(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def parse_certificate(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise io.ParseError("certificate must be an object")
    return obj
