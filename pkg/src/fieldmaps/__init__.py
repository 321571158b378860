__version__ = '0.1.dev0'

from fieldmaps._errors import (
    ArityMismatch,
    AxisMismatch,
    DimensionMismatch,
    ExponentMismatch,
    FieldMapError,
    HypothesesFailed,
    MaxIterExceeded,
    MetricViolation,
    NoGammaSlots,
    SchemaError,
    SingularOperator,
    StructureViolation,
    TerminalLimitExceeded,
    TooLarge,
    UnknownCommand,
    UnknownPoint,
)
from fieldmaps._data import (
    any_violated,
    dumps_report,
    HOLDS,
    HYPOTHESIS_NOT_MET,
    json_complex,
    json_value,
    SolveOptions,
    TruncationOptions,
    Verdict,
    VIOLATED,
)
from fieldmaps._space import (
    DegreeProfile,
    MetricSpace,
    WeightSystem,
)
from fieldmaps._series import (
    as_field,
    canonical,
    CoefficientSystem,
    evaluate_map,
    FieldMapKernel,
    FieldVector,
    kernel_norm,
    lp_norm,
    lp_norm_bound_check,
    MultiTuple,
    NormReport,
    orbit_size,
    primed_norm,
    ProfileNorm,
    random_field,
    random_kernel,
    random_system,
    symmetrize,
    young_function_check,
)
from fieldmaps._calculus import (
    ball_norm,
    check_lipschitz,
    compose_function,
    compose_kernel,
    compose_linear,
    difference,
    difference_kernel,
    difference_map,
    difference_system,
    DifferenceResult,
    DiscreteKernel,
    generalized_young,
    insert_gamma,
    min_gamma_degree,
    multiply_kernels,
    pointwise_product,
    ProductResult,
    random_young_instance,
    substitute_function,
    substitute_map,
    substituted_difference,
    SubstitutionResult,
    YoungReport,
)
from fieldmaps._solving import (
    background_fields,
    BackgroundCertificate,
    BackgroundInstance,
    build_system,
    check_hypotheses,
    compare_to_linear,
    ComparisonReport,
    equation_residual,
    FieldMapTuple,
    HypothesisReport,
    HypothesisRow,
    ImplicitSystem,
    iteration_cap,
    kernel_bound_verdicts,
    random_admissible_instance,
    random_admissible_system,
    random_ball_tuple,
    solve_background,
    solve_fixed_point,
    solve_linear,
    SolveCertificate,
    trilinear_norm,
    uniqueness_probe,
    UniquenessReport,
    weighted_op_norm,
)
