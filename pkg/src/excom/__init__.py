"""excom: expansion-complexity analysis of sequences over prime fields.

A library and CLI for measuring how well a sequence over F_p resists
algebraic modelling: the N-th expansion complexity (least total degree of a
nonzero bivariate polynomial annihilating the generating function mod x^N),
its irreducible variant, recovery of defining polynomials, prediction of
continuations, and desk-scale verification experiments for the underlying
theory.
"""

from .complexity import (
    ComplexityKind,
    ComplexityProfile,
    ComplexityResult,
    ExtensionResult,
    ResultStatus,
    SearchConfig,
    SolutionSpace,
    expansion_complexity,
    expansion_profile,
    extend_sequence,
    find_defining_poly,
    i_expansion_complexity,
    maximal_profile_value,
    solution_space,
    theorem1_degree_bound,
)
from .errors import (
    BudgetExceededError,
    DivisionByZeroError,
    ExcomError,
    FieldMismatchError,
    InvalidModulusError,
    NotPrimeError,
    OutOfRangeError,
    PolynomialFormatError,
    PrefixTooShortError,
    PrerequisiteViolatedError,
    RangeError,
    SequenceFormatError,
    TruncationMismatchError,
    ZeroDivisorError,
    ZeroPolynomialError,
)
from .experiments import (
    ExperimentReport,
    compare_carlitz,
    count_exceptional_shifts,
    montecarlo_theorem2,
    verify_derivative_identity,
    verify_theorem3,
    verify_theorem_star,
)
from .field import FieldElement, PrimeField, is_prime, make_field
from .generators import (
    DerivativeIdentityReport,
    GeneratorSpec,
    check_derivative_identity,
    format_sequence,
    inversive_prefix,
    random_prefix,
    read_sequence_file,
    write_sequence_file,
)
from .poly import (
    BivariatePoly,
    annihilates,
    carlitz_estimate,
    count_normalized_irreducible,
    enumerate_normalized,
    eval_poly_at_series,
    format_poly,
    is_irreducible,
    is_normalized,
    monomial_count,
    monomials_upto,
    normalize,
    normalized_count,
    parse_poly,
    poly_from_json,
    poly_from_terms,
    try_divide,
)
from .rng import PRNG_ID, SplitMix64
from .series import (
    SequencePrefix,
    TruncatedSeries,
    geometric_series,
    series_from_prefix,
    series_mul,
)

__version__ = "0.1.0"
