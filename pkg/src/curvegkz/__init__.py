"""Exact and numerical toolkit for the two-row hypergeometric systems
attached to monomial projective plane curves.

The exact layer (curve combinatorics, toric ideals, series solutions, local
cohomology) works over the rationals; the numerical layer evaluates the
defining integrals with certified-tolerance quadrature and connects them to
the exact data through residues on the polar lines.
"""

from .analytic import (
    PolarMatchResult,
    ProbeResult,
    RootData,
    em_independence_probe,
    euler_mellin,
    extension_shift,
    polar_line_match_check,
    power_series_coefficient,
    residue_at_infinity,
    residue_at_zero,
    residue_integral,
    roots_and_components,
    sample_structured_point,
)
from .cohomology import (
    CocycleData,
    cocycle_generator,
    graded_dims,
    h1_support,
    in_ray_module,
)
from .curve import (
    FACET_0,
    FACET_K,
    CurveMatrix,
    NumericalSemigroup,
    ResonantLine,
    delta_conditions,
    facet_semigroup,
    in_NA,
    in_convergence_domain,
    is_rank_jumping,
    is_resonant,
    polar_lines,
    rank,
    rank_jumping_parameters,
    resonant_lines,
)
from .errors import (
    LogObstructionError,
    MatrixValidationError,
    PolarLineError,
    QuadratureError,
    SeriesDenominatorError,
)
from .figure import build_svg
from .qexact import Aff2, PolyQ, fraction_matrix_rank
from .report import (
    analyze_report,
    cohomology_report,
    solve_report,
    to_json,
    verify_report,
)
from .series import (
    AnnihilationReport,
    BasisElement,
    CoincidenceResult,
    FiniteSeries,
    SolutionBasis,
    TruncatedSeries,
    annihilation_check,
    b_matrix,
    canonical_series,
    coincidence_at_intersection,
    default_step_bound,
    ordered_partitions,
    parametric_derivative,
    polar_line_solution,
    series_for_exponent,
    solution_basis_at_point,
)
from .toric import (
    ORDER_NAMES,
    FakeExponent,
    GroebnerBasis,
    SpecialLines,
    StandardPair,
    TermOrder,
    fake_exponents,
    kernel_lattice_basis,
    special_lines,
    standard_pairs,
    standard_pairs_of_monomial_ideal,
    term_order,
    toric_ideal_groebner,
)

__version__ = "0.1.0"

__all__ = [
    "Aff2",
    "AnnihilationReport",
    "BasisElement",
    "CocycleData",
    "CoincidenceResult",
    "CurveMatrix",
    "FACET_0",
    "FACET_K",
    "FakeExponent",
    "FiniteSeries",
    "GroebnerBasis",
    "LogObstructionError",
    "MatrixValidationError",
    "NumericalSemigroup",
    "ORDER_NAMES",
    "PolarLineError",
    "PolarMatchResult",
    "PolyQ",
    "ProbeResult",
    "QuadratureError",
    "ResonantLine",
    "RootData",
    "SeriesDenominatorError",
    "SolutionBasis",
    "SpecialLines",
    "StandardPair",
    "TermOrder",
    "TruncatedSeries",
    "analyze_report",
    "annihilation_check",
    "b_matrix",
    "build_svg",
    "canonical_series",
    "cocycle_generator",
    "cohomology_report",
    "coincidence_at_intersection",
    "default_step_bound",
    "delta_conditions",
    "em_independence_probe",
    "euler_mellin",
    "extension_shift",
    "facet_semigroup",
    "fake_exponents",
    "fraction_matrix_rank",
    "graded_dims",
    "h1_support",
    "in_NA",
    "in_convergence_domain",
    "in_ray_module",
    "is_rank_jumping",
    "is_resonant",
    "kernel_lattice_basis",
    "ordered_partitions",
    "parametric_derivative",
    "polar_line_match_check",
    "polar_line_solution",
    "polar_lines",
    "power_series_coefficient",
    "rank",
    "rank_jumping_parameters",
    "residue_at_infinity",
    "residue_at_zero",
    "residue_integral",
    "resonant_lines",
    "roots_and_components",
    "sample_structured_point",
    "series_for_exponent",
    "solution_basis_at_point",
    "solve_report",
    "special_lines",
    "standard_pairs",
    "standard_pairs_of_monomial_ideal",
    "term_order",
    "to_json",
    "toric_ideal_groebner",
    "verify_report",
]
