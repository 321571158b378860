from fieldmaps._calculus._difference import (
    difference,
    difference_kernel,
    difference_map,
    difference_system,
    DifferenceResult,
)
from fieldmaps._calculus._lipschitz import (
    ball_norm,
    check_lipschitz,
    min_gamma_degree,
)
from fieldmaps._calculus._product_rule import (
    multiply_kernels,
    pointwise_product,
    ProductResult,
)
from fieldmaps._calculus._substitution import (
    compose_function,
    compose_kernel,
    compose_linear,
    insert_gamma,
    substitute_function,
    substitute_map,
    substituted_difference,
    SubstitutionResult,
)
from fieldmaps._calculus._young import (
    DiscreteKernel,
    generalized_young,
    random_young_instance,
    YoungReport,
)
