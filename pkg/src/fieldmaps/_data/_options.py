import dataclasses
from typing import Optional, TYPE_CHECKING

if TYPE_CHECKING:
    import fieldmaps


@dataclasses.dataclass(frozen=True)
class TruncationOptions:
    """Describes the finite truncation used when manipulating power series.

    Attributes:
        degree_cap: Defaults to 6. Terms whose total degree (summed over all
            field slots) exceeds this value are dropped by every operation
            that produces new terms. Dropping terms is recorded in result
            records, never raised as an error.
        slot_degree_cap: Defaults to None (unused). When set, terms whose
            degree in any single field slot exceeds this value are also
            dropped.
        terminal_cap: Defaults to 12. Tree lengths are solved exactly, which
            costs time exponential in the number of terminals. Asking for the
            tree length of more terminals than this raises
            `fieldmaps.TerminalLimitExceeded`.
    """

    degree_cap: int = 6
    slot_degree_cap: Optional[int] = None
    terminal_cap: int = 12

    def __post_init__(self):
        if self.degree_cap < 0:
            raise ValueError(f'degree_cap={self.degree_cap} < 0')
        if self.slot_degree_cap is not None and self.slot_degree_cap < 0:
            raise ValueError(f'slot_degree_cap is not None and slot_degree_cap={self.slot_degree_cap} < 0')
        if self.terminal_cap < 1:
            raise ValueError(f'terminal_cap={self.terminal_cap} < 1')

    def __repr__(self) -> str:
        terms = []
        if self.degree_cap != 6:
            terms.append(f'degree_cap={self.degree_cap!r}')
        if self.slot_degree_cap is not None:
            terms.append(f'slot_degree_cap={self.slot_degree_cap!r}')
        if self.terminal_cap != 12:
            terms.append(f'terminal_cap={self.terminal_cap!r}')
        return f'fieldmaps.TruncationOptions({", ".join(terms)})'

    def allows(self, degrees) -> bool:
        """Determines if a term with the given per-slot degrees survives truncation."""
        if sum(degrees) > self.degree_cap:
            return False
        if self.slot_degree_cap is not None and any(n > self.slot_degree_cap for n in degrees):
            return False
        return True

    def combine(self, other: 'fieldmaps.TruncationOptions') -> 'fieldmaps.TruncationOptions':
        """Returns the stricter of two truncations.

        All fields are combined by taking the minimum from both options
        objects, with None treated as being infinitely large.

        Examples:
            >>> import fieldmaps
            >>> a = fieldmaps.TruncationOptions(degree_cap=8, terminal_cap=6)
            >>> b = fieldmaps.TruncationOptions(degree_cap=4, slot_degree_cap=3)
            >>> a.combine(b)
            fieldmaps.TruncationOptions(degree_cap=4, slot_degree_cap=3, terminal_cap=6)
        """
        return TruncationOptions(
            degree_cap=min(self.degree_cap, other.degree_cap),
            slot_degree_cap=nullable_min(self.slot_degree_cap, other.slot_degree_cap),
            terminal_cap=min(self.terminal_cap, other.terminal_cap),
        )


@dataclasses.dataclass(frozen=True)
class SolveOptions:
    """Describes how a fixed point equation is iterated.

    Attributes:
        tol: Defaults to 1e-12. Iteration stops once the change between
            successive iterates, measured in the ball norm
            max_j (1/λ_j) ⦀Γ_j⦀, is at most this value.
        max_iter: Defaults to 200. Hard limit on the number of iterations.
            The iteration count is additionally capped by the number of steps
            geometric convergence with the contraction factor needs (plus
            `iteration_margin`).
        iteration_margin: Defaults to 10. Extra iterations allowed beyond the
            geometric estimate.
        truncation: The truncation used for all series arithmetic during the
            solve.
    """

    tol: float = 1e-12
    max_iter: int = 200
    iteration_margin: int = 10
    truncation: TruncationOptions = TruncationOptions()

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f'tol={self.tol} <= 0')
        if self.max_iter < 1:
            raise ValueError(f'max_iter={self.max_iter} < 1')
        if self.iteration_margin < 0:
            raise ValueError(f'iteration_margin={self.iteration_margin} < 0')

    def __repr__(self) -> str:
        terms = []
        if self.tol != 1e-12:
            terms.append(f'tol={self.tol!r}')
        if self.max_iter != 200:
            terms.append(f'max_iter={self.max_iter!r}')
        if self.iteration_margin != 10:
            terms.append(f'iteration_margin={self.iteration_margin!r}')
        if self.truncation != TruncationOptions():
            terms.append(f'truncation={self.truncation!r}')
        return f'fieldmaps.SolveOptions({", ".join(terms)})'


def nullable_min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
