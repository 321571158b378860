from fieldmaps._solving._background_field import (
    background_fields,
    BackgroundCertificate,
    BackgroundInstance,
    build_system,
    equation_residual,
    kernel_bound_verdicts,
    random_admissible_instance,
    solve_background,
    trilinear_norm,
    uniqueness_probe,
    UniquenessReport,
    weighted_op_norm,
)
from fieldmaps._solving._fixed_point import (
    compare_to_linear,
    ComparisonReport,
    iteration_cap,
    random_admissible_system,
    random_ball_tuple,
    solve_fixed_point,
    solve_linear,
    SolveCertificate,
)
from fieldmaps._solving._implicit_system import (
    check_hypotheses,
    FieldMapTuple,
    HypothesisReport,
    HypothesisRow,
    ImplicitSystem,
)
