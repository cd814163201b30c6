"""Caps and ovoids of the Hermitian surface of PG(3, q^2).

Construction of the surface, incremental cap state with relevance, coverage
and weight functionals, four completion/enlargement strategies, and a seeded
experiment harness for spectrum statistics.
"""

from .capstate import CapState
from .galois import FieldSpec, FieldTables, build_field, norm
from .harness import (
    GapReport,
    Histogram,
    RunRecord,
    SeedSpec,
    derive_seed,
    emit_histogram,
    emit_runlog,
    gap_check,
    make_histogram,
    parse_histogram_csv,
    run_spectrum,
)
from .hermitian import (
    GeneratorLine,
    SurfaceModel,
    canonical_pole,
    classical_ovoid,
    enumerate_generators,
    enumerate_surface,
    generators_through,
    hermitian_inner,
    is_cap,
    normalize_point,
    tangent_set,
)
from .rng import SplitMix64, mix64
from .search import (
    SearchConfig,
    SearchOutcome,
    StrategyKind,
    TieMode,
    backtrack_enlarge,
    complete_forward,
    complete_min_relevance,
    complete_random,
    run_strategy,
    sample_subcap,
    select_forward,
    thin_ovoid,
)

__version__ = "0.1.0"

__all__ = [
    "CapState",
    "FieldSpec",
    "FieldTables",
    "GapReport",
    "GeneratorLine",
    "Histogram",
    "RunRecord",
    "SearchConfig",
    "SearchOutcome",
    "SeedSpec",
    "SplitMix64",
    "StrategyKind",
    "SurfaceModel",
    "TieMode",
    "backtrack_enlarge",
    "build_field",
    "canonical_pole",
    "classical_ovoid",
    "complete_forward",
    "complete_min_relevance",
    "complete_random",
    "derive_seed",
    "emit_histogram",
    "emit_runlog",
    "enumerate_generators",
    "enumerate_surface",
    "gap_check",
    "generators_through",
    "hermitian_inner",
    "is_cap",
    "make_histogram",
    "mix64",
    "norm",
    "normalize_point",
    "parse_histogram_csv",
    "run_spectrum",
    "run_strategy",
    "sample_subcap",
    "select_forward",
    "tangent_set",
    "thin_ovoid",
]
