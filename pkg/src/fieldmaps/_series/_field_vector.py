import math
from typing import Any, List, Optional, Sequence

import numpy as np

from fieldmaps._errors import ArityMismatch, DimensionMismatch

FieldVector = np.ndarray


def as_field(values: Any, num_points: int) -> FieldVector:
    """Converts values into a complex field on a space with `num_points` points."""
    result = np.asarray(values, dtype=np.complex128)
    if result.shape != (num_points,):
        raise DimensionMismatch(f'Expected a field with {num_points} values but got shape {result.shape}.',
                                detail={'expected': num_points, 'shape': list(result.shape)})
    return result


def as_fields(fields: Sequence[Any], arity: int, num_points: int) -> List[FieldVector]:
    if len(fields) != arity:
        raise ArityMismatch(f'Expected {arity} fields but got {len(fields)}.',
                            detail={'expected': arity, 'actual': len(fields)})
    return [as_field(f, num_points) for f in fields]


def lp_norm(values: Any, p: float, measure: Optional[Any] = None) -> float:
    """The L^p norm (sum_x mu(x) |v(x)|^p)^(1/p) for p in (0, inf].

    For p = inf the measure is ignored, except that points with zero
    measure are skipped.

    Examples:
        >>> lp_norm([3, 4j], 2)
        5.0
        >>> lp_norm([3, -4], float('inf'))
        4.0
    """
    a = np.abs(np.asarray(values, dtype=np.complex128))
    if not p > 0:
        raise ValueError(f'p={p} <= 0')
    if measure is None:
        mu = np.ones_like(a)
    else:
        mu = np.asarray(measure, dtype=np.float64)
        if mu.shape != a.shape:
            raise DimensionMismatch(f'Measure shape {mu.shape} != values shape {a.shape}.')
    if math.isinf(p):
        return float(np.max(a[mu > 0], initial=0.0))
    return float(math.fsum((mu * a**p).tolist()) ** (1 / p))


def random_field(rng: np.random.Generator, num_points: int, bound: float) -> FieldVector:
    """A random complex field with |alpha(x)| <= bound at every point."""
    radius = bound * np.sqrt(rng.uniform(0, 1, size=num_points))
    angle = rng.uniform(0, 2 * np.pi, size=num_points)
    return radius * np.exp(1j * angle)


def exponent_sum(degrees: Sequence[int], exponents: Sequence[float]) -> float:
    """Returns sum_j d_j / p_j, with 1/inf = 0."""
    return math.fsum(0.0 if math.isinf(p) else d / p for d, p in zip(degrees, exponents))
