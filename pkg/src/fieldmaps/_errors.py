from typing import Any, Dict, Optional


class FieldMapError(ValueError):
    """Base class for every error raised by fieldmaps.

    Attributes:
        code: A stable identifier for the kind of failure (e.g.
            'ArityMismatch'). Reports and the command line tool use it in
            place of the python class name.
        detail: JSON-encodable data describing the failure.
    """

    code = 'FieldMapError'

    def __init__(self, message: str, *, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.detail: Dict[str, Any] = dict(detail or {})

    def to_json(self) -> Dict[str, Any]:
        return {'code': self.code, 'message': str(self), 'detail': self.detail}


class TerminalLimitExceeded(FieldMapError):
    code = 'TerminalLimitExceeded'


class UnknownPoint(FieldMapError):
    code = 'UnknownPoint'


class MetricViolation(FieldMapError):
    code = 'MetricViolation'


class ArityMismatch(FieldMapError):
    code = 'ArityMismatch'


class DimensionMismatch(FieldMapError):
    code = 'DimensionMismatch'


class NoGammaSlots(FieldMapError):
    code = 'NoGammaSlots'


class ExponentMismatch(FieldMapError):
    code = 'ExponentMismatch'


class AxisMismatch(FieldMapError):
    code = 'AxisMismatch'


class HypothesesFailed(FieldMapError):
    code = 'HypothesesFailed'

    def __init__(self, message: str, *, report: Any = None, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message, detail=detail)
        self.report = report


class MaxIterExceeded(FieldMapError):
    """Raised when a fixed point iteration runs out of iterations.

    The best iterate and the (non-converged) certificate are attached, so
    callers can still inspect what was computed.
    """
    code = 'MaxIterExceeded'

    def __init__(self, message: str, *, iterate: Any = None, certificate: Any = None):
        super().__init__(message)
        self.iterate = iterate
        self.certificate = certificate


class SingularOperator(FieldMapError):
    code = 'SingularOperator'


class SchemaError(FieldMapError):
    code = 'SchemaError'

    def __init__(self, message: str, *, path: str = '$'):
        super().__init__(f'{path}: {message}', detail={'path': path})
        self.path = path


class UnknownCommand(FieldMapError):
    code = 'UnknownCommand'


class TooLarge(FieldMapError):
    code = 'TooLarge'


class StructureViolation(FieldMapError):
    """A kernel or system violates a structural requirement.

    Examples are a field map kernel with a nonzero constant term, or a
    linear part of an implicit system that is not linear in the unknowns.
    """
    code = 'StructureViolation'
