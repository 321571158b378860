"""Helpers for tuples of point sequences (one sequence per field slot).

A `MultiTuple` is represented by a python tuple of tuples of point indices.
In canonical form every component is sorted, so that all within-slot
permutations of a tuple share one key.
"""

import collections
import itertools
import math
from typing import Any, FrozenSet, Sequence, Tuple

import numpy as np

from fieldmaps._errors import ArityMismatch, UnknownPoint

MultiTuple = Tuple[Tuple[int, ...], ...]


def canonical(key: Sequence[Sequence[int]]) -> MultiTuple:
    return tuple(tuple(sorted(int(x) for x in slot)) for slot in key)


def empty_key(arity: int) -> MultiTuple:
    return ((),) * arity


def profile(key: MultiTuple) -> Tuple[int, ...]:
    return tuple(len(slot) for slot in key)


def total_degree(key: MultiTuple) -> int:
    return sum(len(slot) for slot in key)


def support(key: MultiTuple) -> FrozenSet[int]:
    return frozenset(x for slot in key for x in slot)


def orbit_size(key: MultiTuple) -> int:
    """The number of distinct tuples obtained by permuting within each slot.

    Examples:
        >>> orbit_size(((0, 1), (2, 2)))
        2
        >>> orbit_size(((0, 0, 1),))
        3
    """
    result = 1
    for slot in key:
        result *= math.factorial(len(slot))
        for m in collections.Counter(slot).values():
            result //= math.factorial(m)
    return result


def concatenate(a: MultiTuple, b: MultiTuple) -> MultiTuple:
    """Slot-wise concatenation, returned in canonical form."""
    return tuple(tuple(sorted(x + y)) if x and y else (x or y) for x, y in zip(a, b))


def validate_key(key: Any, arity: int, num_points: int) -> MultiTuple:
    """Checks the shape and points of a tuple and returns its canonical form."""
    if not isinstance(key, (list, tuple)) or len(key) != arity:
        raise ArityMismatch(f'Expected {arity} point sequences but got {key!r}.',
                            detail={'expected': arity, 'key': repr(key)})
    for slot in key:
        if not isinstance(slot, (list, tuple)):
            raise ArityMismatch(f'Expected a point sequence but got {slot!r}.', detail={'key': repr(key)})
        for x in slot:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < num_points:
                raise UnknownPoint(f'{x!r} is not a point of this {num_points} point space.',
                                   detail={'point': repr(x), 'num_points': num_points})
    return canonical(key)


def key_to_json(key: MultiTuple) -> list:
    return [list(slot) for slot in key]


def enumerate_keys(num_points: int, arity: int, degree: int):
    """Yields every canonical tuple of the given total degree, in sorted order."""
    for combo in itertools.combinations_with_replacement(range(arity * num_points), degree):
        slots = [[] for _ in range(arity)]
        for v in combo:
            slots[v // num_points].append(v % num_points)
        yield tuple(tuple(slot) for slot in slots)
