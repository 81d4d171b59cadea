"""Persistence modules on finite grids and the algebra of their barcodes.

The package covers the pipeline end to end: decorated intervals and
barcodes, finitely presented modules over a grid, morphisms with
kernel/cokernel/image factorization, the matching a morphism induces
between barcodes, delta-matchings and the bottleneck distance, and the
two bridges between the metric and algebraic pictures (a delta-matching
from any delta-interleaved pair, an interleaving from any
delta-matching).  `generator` builds seeded random instances, `verify`
turns the theorems into executable checks, and `cli` exposes the lot.
"""

from .endpoints import (
    Endpoint,
    Interval,
    as_rational,
    endpoint_compare,
    endpoint_shift,
    leq_with_slack,
    lt_shifted,
)
from .barcode import Barcode, BarcodeElement, barcode_union
from .gf import (
    FieldError,
    Matrix,
    ShapeError,
    SolveError,
    backend_name,
    block_diag,
    element_inverse,
    hstack,
    image_basis,
    inverse,
    is_prime,
    kernel_basis,
    rank,
    solve_factor,
    validate_char,
    vstack,
)
from .module import (
    GridModule,
    GridRealizationError,
    ModuleError,
    TrivialityBound,
    align_modules,
    common_grid,
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
from .morphism import (
    Factorization,
    Morphism,
    MorphismError,
    SubquotientResult,
    align_morphisms,
    cokernel_of,
    compose_refining,
    factorize,
    kernel_of,
    morphism_compose,
    morphism_direct_sum,
    morphism_dual,
    morphism_identity,
    morphism_zero,
    morphisms_equal,
    refine_morphism,
    shift_morphism,
    transition_endomorphism,
    validate_morphism,
)
from .induced import (
    BlockSizeError,
    EnumeratedBlock,
    enumerate_blocks,
    epi_injection,
    image_barcode_of,
    induced_matching,
    mono_injection,
)
from .matching import (
    DeltaMatchingReport,
    Matching,
    delta_matching_report,
    identity_matching,
    is_delta_matching,
    matching_compose,
    matching_dual,
    matching_reverse,
    matching_union,
    pair_delta_close,
)
from .decompose import interval_decomposition
from .stability import (
    BottleneckResult,
    InterleavingPair,
    InterleavingReport,
    bottleneck_distance,
    check_interleaving,
    eps_trivial_check,
    interleaving_from_matching,
    reindex_shifted_target,
    single_morphism_check,
    stability_matching,
)
from .generator import (
    GenConfig,
    GeneratedModule,
    gen_barcode,
    gen_epi_pair,
    gen_interleaving,
    gen_module,
    gen_mono_pair,
    gen_morphism,
)
from .io import (
    ParseError,
    format_rational,
    morphism_from_obj,
    morphism_to_obj,
    module_from_obj,
    module_to_obj,
    parse_barcode,
    parse_interval_token,
    parse_matching,
    parse_module,
    parse_morphism,
    parse_rational,
    serialize_barcode,
    serialize_matching,
    serialize_module,
    serialize_morphism,
)
from .plot import plot_svg
from .verify import (
    PropertyFailure,
    VerifyReport,
    certificate_to_text,
    delta_matching_certificate,
    interleaving_certificate,
    parse_certificate,
    reverify_certificate,
    verify_suite,
)

__version__ = "0.1.0"

__all__ = [
    "Endpoint",
    "Interval",
    "as_rational",
    "endpoint_compare",
    "endpoint_shift",
    "leq_with_slack",
    "lt_shifted",
    "Barcode",
    "BarcodeElement",
    "barcode_union",
    "FieldError",
    "Matrix",
    "ShapeError",
    "SolveError",
    "backend_name",
    "block_diag",
    "element_inverse",
    "hstack",
    "image_basis",
    "inverse",
    "is_prime",
    "kernel_basis",
    "rank",
    "solve_factor",
    "validate_char",
    "vstack",
    "GridModule",
    "GridRealizationError",
    "ModuleError",
    "TrivialityBound",
    "align_modules",
    "common_grid",
    "min_trivial_eps",
    "module_barcode",
    "module_direct_sum",
    "module_dual",
    "module_from_barcode",
    "module_shift",
    "modules_equal",
    "refine_module",
    "validate_module",
    "Factorization",
    "Morphism",
    "MorphismError",
    "SubquotientResult",
    "align_morphisms",
    "cokernel_of",
    "compose_refining",
    "factorize",
    "kernel_of",
    "morphism_compose",
    "morphism_direct_sum",
    "morphism_dual",
    "morphism_identity",
    "morphism_zero",
    "morphisms_equal",
    "refine_morphism",
    "shift_morphism",
    "transition_endomorphism",
    "validate_morphism",
    "BlockSizeError",
    "EnumeratedBlock",
    "enumerate_blocks",
    "epi_injection",
    "image_barcode_of",
    "induced_matching",
    "mono_injection",
    "DeltaMatchingReport",
    "Matching",
    "delta_matching_report",
    "identity_matching",
    "is_delta_matching",
    "matching_compose",
    "matching_dual",
    "matching_reverse",
    "matching_union",
    "pair_delta_close",
    "interval_decomposition",
    "BottleneckResult",
    "InterleavingPair",
    "InterleavingReport",
    "bottleneck_distance",
    "check_interleaving",
    "eps_trivial_check",
    "interleaving_from_matching",
    "reindex_shifted_target",
    "single_morphism_check",
    "stability_matching",
    "GenConfig",
    "GeneratedModule",
    "gen_barcode",
    "gen_epi_pair",
    "gen_interleaving",
    "gen_module",
    "gen_mono_pair",
    "gen_morphism",
    "ParseError",
    "format_rational",
    "morphism_from_obj",
    "morphism_to_obj",
    "module_from_obj",
    "module_to_obj",
    "parse_barcode",
    "parse_interval_token",
    "parse_matching",
    "parse_module",
    "parse_morphism",
    "parse_rational",
    "serialize_barcode",
    "serialize_matching",
    "serialize_module",
    "serialize_morphism",
    "plot_svg",
    "PropertyFailure",
    "VerifyReport",
    "certificate_to_text",
    "delta_matching_certificate",
    "interleaving_certificate",
    "parse_certificate",
    "reverify_certificate",
    "verify_suite",
    "__version__",
]
