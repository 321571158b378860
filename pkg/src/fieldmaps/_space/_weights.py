import dataclasses
import math
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, TYPE_CHECKING

from fieldmaps._errors import ArityMismatch
from fieldmaps._space._metric_space import MetricSpace

if TYPE_CHECKING:
    import fieldmaps


@dataclasses.dataclass(frozen=True, order=True)
class DegreeProfile:
    """The number of points in each field slot of a tuple.

    Attributes:
        degrees: (n_1, ..., n_s).

    Profiles compare lexicographically, which fixes the order in which
    norms iterate over them.

    Examples:
        >>> import fieldmaps
        >>> p = fieldmaps.DegreeProfile((2, 0, 1))
        >>> p.total
        3
        >>> p
        fieldmaps.DegreeProfile((2, 0, 1))
    """
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if any(n < 0 for n in self.degrees):
            raise ValueError(f'degrees={self.degrees} has a negative entry')

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def arity(self) -> int:
        return len(self.degrees)

    def split(self, gamma_slots: int) -> Tuple['DegreeProfile', 'DegreeProfile']:
        """Splits into the leading (alpha) and trailing (gamma) slot profiles."""
        cut = len(self.degrees) - gamma_slots
        return DegreeProfile(self.degrees[:cut]), DegreeProfile(self.degrees[cut:])

    def __str__(self) -> str:
        return ','.join(str(n) for n in self.degrees)

    def __repr__(self) -> str:
        return f'fieldmaps.DegreeProfile({self.degrees!r})'


@dataclasses.dataclass(frozen=True)
class WeightSystem:
    """A metric together with one constant weight factor per field slot.

    The weight of a tuple (x_1, ..., x_s) of point sequences is

        kappa_1^{n(x_1)} ... kappa_s^{n(x_s)} e^{tau_d(x_1, ..., x_s)}

    where tau_d is the tree length of all points in the tuple.

    Attributes:
        space: The metric space providing d and tau_d.
        factors: One strictly positive finite weight factor per field slot.
            For systems with unknown fields the factors of the unknowns come
            last.
    """
    space: MetricSpace
    factors: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(float(k) for k in self.factors))
        for k in self.factors:
            if not (math.isfinite(k) and k > 0):
                raise ValueError(f'Weight factors must be positive and finite but factors={self.factors}.')

    @staticmethod
    def uniform(space: MetricSpace, factor: float, arity: int) -> 'WeightSystem':
        return WeightSystem(space=space, factors=(factor,) * arity)

    @property
    def arity(self) -> int:
        return len(self.factors)

    def factor_product(self, degrees: Sequence[int]) -> float:
        """Returns prod_j factors[j]**degrees[j]."""
        if len(degrees) != self.arity:
            raise ArityMismatch(f'Profile {tuple(degrees)} has {len(degrees)} slots but the weight system has {self.arity}.',
                                detail={'expected': self.arity, 'actual': len(degrees)})
        result = 1.0
        for k, n in zip(self.factors, degrees):
            if n:
                result *= k**n
        return result

    def weight_of(self, key: Sequence[Sequence[int]], extra_point: Optional[int] = None) -> float:
        """Returns the weight of a tuple of point sequences.

        Args:
            key: One point sequence per slot.
            extra_point: Optional point (the output point of a field map)
                added to the terminals of the tree length.

        Examples:
            >>> import fieldmaps
            >>> w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(2), factors=(2.0,))
            >>> w.weight_of([[0, 0]])
            4.0
            >>> w.weight_of([[]])
            1.0
        """
        if len(key) != self.arity:
            raise ArityMismatch(f'Tuple has {len(key)} slots but the weight system has {self.arity}.',
                                detail={'expected': self.arity, 'actual': len(key)})
        terminals = {x for slot in key for x in slot}
        if extra_point is not None:
            terminals.add(extra_point)
        return self.factor_product([len(slot) for slot in key]) * math.exp(self.space.tree_length(terminals))

    def shifted_system(self, deltas: Sequence[float], sigma: float) -> 'WeightSystem':
        """The system w_sigma with factors kappa_j + sigma * lambda_j.

        Examples:
            >>> import fieldmaps
            >>> w = fieldmaps.WeightSystem(fieldmaps.MetricSpace.line(1), factors=(1, 2))
            >>> w.shifted_system([0.5, 0.5], sigma=2).factors
            (2.0, 3.0)
        """
        if len(deltas) != self.arity:
            raise ArityMismatch(f'Need one delta weight per slot ({self.arity}) but got {len(deltas)}.',
                                detail={'expected': self.arity, 'actual': len(deltas)})
        if not sigma >= 1:
            raise ValueError(f'sigma={sigma} < 1')
        return WeightSystem(space=self.space, factors=tuple(k + sigma * d for k, d in zip(self.factors, deltas)))

    def split_system(self, deltas: Sequence[float]) -> 'WeightSystem':
        """The system w_delta: the kappas for the fields, then the lambdas for their increments."""
        if len(deltas) != self.arity:
            raise ArityMismatch(f'Need one delta weight per slot ({self.arity}) but got {len(deltas)}.',
                                detail={'expected': self.arity, 'actual': len(deltas)})
        return self.extended(deltas)

    def extended(self, extra_factors: Iterable[float], *, prepend: bool = False) -> 'WeightSystem':
        """Adds weight factors for more fields.

        Appending the lambdas of unknown fields gives the system w_{kappa,lambda}.
        Prepending the factor 1 gives the system used for the function
        associated with a field map.
        """
        extra = tuple(extra_factors)
        factors = extra + self.factors if prepend else self.factors + extra
        return WeightSystem(space=self.space, factors=factors)

    def restricted_to(self, slots: Sequence[int]) -> 'WeightSystem':
        return WeightSystem(space=self.space, factors=tuple(self.factors[j] for j in slots))

    def to_json(self) -> Dict[str, Any]:
        return {'factors': list(self.factors)}

    def __repr__(self) -> str:
        return f'fieldmaps.WeightSystem(space={self.space!r}, factors={self.factors!r})'
