"""Nodal surplus statistics on graphs with disjoint cycles.

Thin python surface over the C++ core: graph analysis, seeded instance
generation, signing enumeration, flux-torus eigenvalue scans, and the exact
binomial verdict on the surplus distribution.
"""

from ._core import (
    CycleStructure,
    FdDerivatives,
    MorseEntry,
    MorseReport,
    PartialCriticalityReport,
    ProbabilityCurrent,
    DistinctReport,
    EdgeScan,
    FlatBandInstance,
    FluxPoint,
    GeneratorConfig,
    Graph,
    GscReport,
    InputError,
    JMinusResult,
    LatticeEntry,
    LatticeReport,
    NumericalError,
    SigningOrbits,
    SupportedMatrix,
    SurplusDistribution,
    analyze_cycles,
    apply_symmetry_point,
    binomial_verdict,
    bridges,
    build_graph,
    canonical_instance,
    check_distinct_signings,
    check_gsc,
    edge_scan,
    eigenvalue_gradient,
    flat_band_instance,
    has_disjoint_cycles,
    j_minus,
    lambda_k,
    lattice_map,
    make_supported,
    fd_derivatives,
    morse_report,
    nodal_count,
    nodal_surplus,
    partial_criticality_check,
    probability_current,
    random_gsc_instance,
    signing_orbits,
    spectrum,
    surplus_distribution,
    torus_action,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
