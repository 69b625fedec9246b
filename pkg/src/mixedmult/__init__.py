"""Exact multigraded Hilbert series, mixed multiplicities, multidegrees,
and projective degrees of rational maps over finite prime fields."""

from .errors import (
    EnumerationGuardError,
    ExponentOverflow,
    InvariantViolation,
    NotMultihomogeneousError,
    PairBudgetExceeded,
    ParseError,
    PresentationMismatch,
    SamplingExhausted,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    elimination_ideal,
    groebner_basis,
    ideal_intersection,
    ideal_quotient,
    normal_form,
    saturation,
    set_pair_budget,
)
from .hilbert import (
    HilbertPolynomialRep,
    HilbertSeriesRep,
    MixedMultTable,
    coarsened_multiplicity,
    graded_piece_dim,
    hilbert_polynomial,
    k_polynomial,
    mixed_mult_series,
    monomial_dimension,
    quotient_dimension,
    series_coefficient,
    series_table,
)
from .maps import (
    PresentationMatrix,
    ProjectiveDegreeVector,
    RationalMapSpec,
    SatFiberCheck,
    SatFiberTable,
    check_G_condition,
    determinant,
    formula_gorenstein_ht3,
    formula_perfect_ht2,
    maximal_minors,
    pfaffian,
    projective_degrees,
    random_alternating_matrix,
    rees_ideal,
    satfiber_d0_check,
    satfiber_dims,
    submaximal_pfaffians,
)
from .multigraded import (
    FilterRegularWitness,
    SliceReport,
    irrelevant_ideal,
    irrelevant_saturation,
    is_filter_regular,
    mixed_mult_polynomial,
    mixed_mult_via_slicing,
    multidegree,
    random_block_form,
    slice_degree,
)
from .prng import Prng
from .rings import (
    DEGREE_ANY,
    LaurentPolyZ,
    Polynomial,
    RingSpec,
    TermOrder,
    degrevlex_order,
    elimination_order,
    is_multihomogeneous,
    parse_polynomial,
    render_polynomial,
    term_order_compare,
)

__version__ = "0.1.0"

__all__ = [
    "DEGREE_ANY",
    "EnumerationGuardError",
    "ExponentOverflow",
    "FilterRegularWitness",
    "GroebnerBasis",
    "HilbertPolynomialRep",
    "HilbertSeriesRep",
    "Ideal",
    "InvariantViolation",
    "LaurentPolyZ",
    "MixedMultTable",
    "NotMultihomogeneousError",
    "PairBudgetExceeded",
    "ParseError",
    "Polynomial",
    "PresentationMatrix",
    "PresentationMismatch",
    "Prng",
    "ProjectiveDegreeVector",
    "RationalMapSpec",
    "RingSpec",
    "SamplingExhausted",
    "SatFiberCheck",
    "SatFiberTable",
    "SliceReport",
    "TermOrder",
    "check_G_condition",
    "coarsened_multiplicity",
    "degrevlex_order",
    "determinant",
    "elimination_ideal",
    "elimination_order",
    "formula_gorenstein_ht3",
    "formula_perfect_ht2",
    "graded_piece_dim",
    "groebner_basis",
    "hilbert_polynomial",
    "ideal_intersection",
    "ideal_quotient",
    "irrelevant_ideal",
    "irrelevant_saturation",
    "is_filter_regular",
    "is_multihomogeneous",
    "k_polynomial",
    "maximal_minors",
    "mixed_mult_polynomial",
    "mixed_mult_series",
    "mixed_mult_via_slicing",
    "monomial_dimension",
    "multidegree",
    "normal_form",
    "parse_polynomial",
    "pfaffian",
    "projective_degrees",
    "quotient_dimension",
    "random_alternating_matrix",
    "random_block_form",
    "rees_ideal",
    "render_polynomial",
    "satfiber_d0_check",
    "satfiber_dims",
    "saturation",
    "series_coefficient",
    "series_table",
    "set_pair_budget",
    "slice_degree",
    "submaximal_pfaffians",
    "term_order_compare",
]
