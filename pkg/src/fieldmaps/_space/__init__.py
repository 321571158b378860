from fieldmaps._space._metric_space import (
    MetricSpace,
)
from fieldmaps._space._weights import (
    DegreeProfile,
    WeightSystem,
)
