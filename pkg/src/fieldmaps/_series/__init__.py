from fieldmaps._series._coefficient_system import (
    CoefficientSystem,
    random_system,
    symmetrize,
    young_function_check,
)
from fieldmaps._series._field_map_kernel import (
    evaluate_map,
    FieldMapKernel,
    kernel_norm,
    lp_norm_bound_check,
    primed_norm,
    random_kernel,
)
from fieldmaps._series._field_vector import (
    as_field,
    FieldVector,
    lp_norm,
    random_field,
)
from fieldmaps._series._multi_tuple import (
    canonical,
    MultiTuple,
    orbit_size,
)
from fieldmaps._series._norm_report import (
    NormReport,
    ProfileNorm,
)
