"""Exact computation with value quantales, finite continuity spaces,
Cauchy filters, and completions; plus a machine-checked theorem suite."""

from .errors import (
    DomainMismatchError,
    InvariantError,
    PreconditionError,
    QcError,
    StructureError,
)
from .quantale import (
    BUILTIN_QUANTALES,
    EXT_RATIONAL,
    INF,
    ExtendedRationalQuantale,
    FiniteQuantale,
    IdentityMorphism,
    QuantaleMorphism,
    StepMorphism,
    TableMorphism,
    ValueQuantale,
    capped_chain,
    definitional_well_above,
    validate_quantale_morphism,
    validate_value_quantale,
)
from .reporting import CheckFailure, ValidationReport, Verdict
from .vspace import (
    EpsilonTestSet,
    VSpace,
    ball,
    ball_of_set,
    classify,
    combined_test_values,
    dual,
    epsilon_test_set,
    has_uniformly_vanishing_asymmetry,
    has_vanishing_asymmetry,
    is_uniformly_continuous,
    pushforward,
    separation_quotient,
    set_distance,
    symmetry_modulus,
    validate_vspace,
)
from .filters import (
    Filter,
    converges,
    filter_from_base,
    filter_distance,
    image_filter,
    improper_filter,
    intersect,
    is_cauchy,
    is_filter_morphism,
    is_minimal_cauchy,
    is_round,
    point_filter,
    principal_filter,
    roundify,
)
from .completion import (
    CauchyFilterSpace,
    CompletionSpace,
    ExtensionResult,
    canonical_embedding,
    cauchy_filter_space,
    complete,
    extend_to_completion,
    filter_point_name,
    induced_completion_map,
    is_cauchy_complete,
    minimal_cauchy_filters,
    zero_distance_intersection_cauchy,
)
from .structures import (
    EquivalenceReport,
    FiniteTopology,
    QuasiUniformity,
    quasi_uniformity_of,
    topology_of,
    topology_of_relation,
    uva_equivalence_report,
    va_equivalence_report,
)
from .verify import (
    InstanceGenerator,
    SEARCH_TARGETS,
    SearchResult,
    VerificationReport,
    check_category_laws,
    enumerate_filter_families,
    oracle_collapsed_formulas,
    oracle_epsilon_reduction,
    oracle_filters,
    oracle_gate,
    run_theorem_suite,
    search_counterexamples,
    triangle_repair,
)

__version__ = "0.1.0"
