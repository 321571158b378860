import dataclasses
from typing import Any, Dict, Iterable

HOLDS = 'holds'
VIOLATED = 'violated'
HYPOTHESIS_NOT_MET = 'hypothesis not met'


@dataclasses.dataclass(frozen=True)
class Verdict:
    """The outcome of checking one inequality `lhs <= rhs`.

    The inequalities certified by fieldmaps are conditional. A verdict
    distinguishes an inequality that holds, one that is violated (which
    indicates a bug), and one whose hypotheses were not met (which is not a
    counterexample).

    Attributes:
        name: Short identifier of the inequality (e.g. 'substitution').
        lhs: Left hand side.
        rhs: Right hand side.
        status: One of 'holds', 'violated', 'hypothesis not met'.
        slack: The absolute tolerance that was granted to the comparison.
    """

    name: str
    lhs: float
    rhs: float
    status: str
    slack: float = 0.0

    def __post_init__(self):
        assert self.status in (HOLDS, VIOLATED, HYPOTHESIS_NOT_MET), self.status
        assert self.slack >= 0

    @staticmethod
    def check(name: str,
              lhs: float,
              rhs: float,
              *,
              hypothesis: bool = True,
              rel_slack: float = 1e-9,
              abs_slack: float = 1e-14) -> 'Verdict':
        """Compares `lhs <= rhs` allowing for floating point slack.

        Examples:
            >>> import fieldmaps
            >>> fieldmaps.Verdict.check('x', 1.0, 2.0).status
            'holds'
            >>> fieldmaps.Verdict.check('x', 3.0, 2.0).status
            'violated'
            >>> fieldmaps.Verdict.check('x', 3.0, 2.0, hypothesis=False).status
            'hypothesis not met'
        """
        lhs = float(lhs)
        rhs = float(rhs)
        slack = rel_slack * max(abs(lhs), abs(rhs)) + abs_slack
        if lhs <= rhs + slack:
            status = HOLDS
        elif not hypothesis:
            status = HYPOTHESIS_NOT_MET
        else:
            status = VIOLATED
        return Verdict(name=name, lhs=lhs, rhs=rhs, status=status, slack=slack)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def to_json(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margin': self.margin,
            'status': self.status,
        }

    def __repr__(self) -> str:
        return (f'fieldmaps.Verdict(name={self.name!r}, lhs={self.lhs!r}, '
                f'rhs={self.rhs!r}, status={self.status!r}, slack={self.slack!r})')


def any_violated(verdicts: Iterable[Verdict]) -> bool:
    return any(v.violated for v in verdicts)
