"""Witt-vector local cohomology of rational double points on K3 surfaces.

The package computes, exactly and at desk scale: truncated p-typical
Witt vector arithmetic over sparse polynomial rings; canonical forms
and Frobenius/pullback maps on W_n-valued local cohomology classes of
ADE surface singularity charts; the resulting height and realizability
criteria for K3 surfaces carrying such singularities; point-counting
height tests; and the integer-lattice discriminant and gluing
computations behind the realizability analysis.
"""

from .ffpoly import FiniteField, FpScalar, MultiPoly, parse_poly
from .witt import (
    SUPPORTED_RANGES,
    WittVec,
    build_witt_table,
    ghost_compatibility_ok,
    restriction,
    subtraction_components,
    teichmuller,
    verschiebung,
    witt_add,
    witt_frobenius,
    witt_mul,
    witt_neg,
    witt_sub,
)
from .chartring import (
    ChartElem,
    ChartRing,
    QuotientCase,
    RdpSpec,
    RingMap,
    chart_from_key,
    frobenius_map,
    parse_rdp_key,
    quotient_case,
    rdp_chart,
    rmax,
)
from .localcoh import (
    CheckResult,
    CohClass,
    HypothesisError,
    IdealSpec,
    class_of,
    frobenius_class,
    is_torsion,
    pullback_class,
    reduce,
    scalar_mul_class,
    verify_all,
    verify_family,
)
from .height import (
    INFINITE,
    HeightValue,
    NonOccurrenceError,
    TwoChart,
    WeightedHypersurface,
    compose_heights,
    count_points,
    etale_quotient_height,
    finite,
    greater_than,
    height_from_counts,
    height_from_ordinary,
    height_from_rdp,
    height_sequence,
    load_model,
    ordinary_test,
    parse_sing_config,
    partial_resolution_coindex,
    picard_bound_ok,
    quotient_height,
    rdp_realizable_on_k3,
    taut_realizable,
)
from .lattice import (
    DiscForm,
    GramLattice,
    diagonal_gram,
    disc_group,
    dynkin_gram,
    glue,
    glue_from_json,
    hyperbolic_plane,
    signature,
    smith_diagonal,
    unimodular_overlattice_exists,
)
from .reproduce import CheckRecord, RunReport, reproduce_all

__version__ = "0.1.0"

__all__ = [
    "FiniteField",
    "FpScalar",
    "MultiPoly",
    "parse_poly",
    "SUPPORTED_RANGES",
    "WittVec",
    "build_witt_table",
    "ghost_compatibility_ok",
    "restriction",
    "subtraction_components",
    "teichmuller",
    "verschiebung",
    "witt_add",
    "witt_frobenius",
    "witt_mul",
    "witt_neg",
    "witt_sub",
    "ChartElem",
    "ChartRing",
    "QuotientCase",
    "RdpSpec",
    "RingMap",
    "chart_from_key",
    "frobenius_map",
    "parse_rdp_key",
    "quotient_case",
    "rdp_chart",
    "rmax",
    "CheckResult",
    "CohClass",
    "HypothesisError",
    "IdealSpec",
    "class_of",
    "frobenius_class",
    "is_torsion",
    "pullback_class",
    "reduce",
    "scalar_mul_class",
    "verify_all",
    "verify_family",
    "INFINITE",
    "HeightValue",
    "NonOccurrenceError",
    "TwoChart",
    "WeightedHypersurface",
    "compose_heights",
    "count_points",
    "etale_quotient_height",
    "finite",
    "greater_than",
    "height_from_counts",
    "height_from_ordinary",
    "height_from_rdp",
    "height_sequence",
    "load_model",
    "ordinary_test",
    "parse_sing_config",
    "partial_resolution_coindex",
    "picard_bound_ok",
    "quotient_height",
    "rdp_realizable_on_k3",
    "taut_realizable",
    "DiscForm",
    "GramLattice",
    "diagonal_gram",
    "disc_group",
    "dynkin_gram",
    "glue",
    "glue_from_json",
    "hyperbolic_plane",
    "signature",
    "smith_diagonal",
    "unimodular_overlattice_exists",
    "CheckRecord",
    "RunReport",
    "reproduce_all",
]
