from fieldmaps._data._json_out import (
    dumps_report,
    json_complex,
    json_value,
)
from fieldmaps._data._options import (
    SolveOptions,
    TruncationOptions,
)
from fieldmaps._data._verdict import (
    any_violated,
    HOLDS,
    HYPOTHESIS_NOT_MET,
    Verdict,
    VIOLATED,
)
