"""Brute force reference computations.

Nothing in here shares summation, ordering or tree code with the rest of
the package. The functions are slow on purpose and refuse large inputs.
"""

import itertools
import math
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from fieldmaps._errors import TooLarge
from fieldmaps._series import CoefficientSystem, FieldMapKernel
from fieldmaps._space import MetricSpace, WeightSystem

MAX_ORACLE_POINTS = 7
MAX_ORACLE_TUPLES = 200_000


def brute_steiner(space: MetricSpace, terminals: Iterable[int]) -> float:
    """The shortest tree over X containing the terminals, by trying every vertex set.

    For each S with terminals <= S <= X the shortest tree with vertex set
    exactly S is a minimum spanning tree of the complete graph on S.

    Examples:
        >>> import fieldmaps
        >>> from fieldmaps._oracle import brute_steiner
        >>> brute_steiner(fieldmaps.MetricSpace.line(3), [0, 2])
        2.0
    """
    n = space.num_points
    if n > MAX_ORACLE_POINTS:
        raise TooLarge(f'brute_steiner handles at most {MAX_ORACLE_POINTS} points but the space has {n}.',
                       detail={'num_points': n, 'limit': MAX_ORACLE_POINTS})
    required = {space.check_point(t) for t in terminals}
    if len(required) <= 1:
        return 0.0
    optional = [x for x in range(n) if x not in required]
    best = math.inf
    for k in range(len(optional) + 1):
        for extra in itertools.combinations(optional, k):
            vertices = sorted(required | set(extra))
            graph = nx.Graph()
            for a, b in itertools.combinations(vertices, 2):
                graph.add_edge(a, b, weight=space.distance(a, b))
            tree = nx.minimum_spanning_tree(graph)
            best = min(best, sum(d['weight'] for _, _, d in tree.edges(data=True)))
    return float(best)


def _orderings(slot: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return sorted(set(itertools.permutations(slot)))


def _ordered_tuples(key: Tuple[Tuple[int, ...], ...]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    return itertools.product(*[_orderings(slot) for slot in key])


def _check_size(keys: Iterable[Tuple[Tuple[int, ...], ...]], space: MetricSpace) -> None:
    if space.num_points > MAX_ORACLE_POINTS:
        raise TooLarge(f'The oracle handles at most {MAX_ORACLE_POINTS} points.',
                       detail={'num_points': space.num_points, 'limit': MAX_ORACLE_POINTS})
    total = 0
    for key in keys:
        total += math.prod(len(_orderings(slot)) for slot in key)
    if total > MAX_ORACLE_TUPLES:
        raise TooLarge(f'The oracle would enumerate {total} ordered tuples.',
                       detail={'tuples': total, 'limit': MAX_ORACLE_TUPLES})


def _weight(space: MetricSpace,
            factors: Sequence[float],
            ordered,
            cache: Dict[frozenset, float],
            extra: Sequence[int] = ()) -> float:
    points = set(extra)
    degree_weight = 1.0
    for factor, slot in zip(factors, ordered):
        degree_weight *= factor**len(slot)
        points.update(slot)
    points = frozenset(points)
    if points not in cache:
        cache[points] = brute_steiner(space, points)
    return degree_weight * math.exp(cache[points])


def norm_oracle(f: CoefficientSystem, w: WeightSystem) -> float:
    """||f||_w from every ordered tuple, pinning the first position of a slot.

    Examples:
        >>> import fieldmaps
        >>> from fieldmaps._oracle import norm_oracle
        >>> space = fieldmaps.MetricSpace.line(1)
        >>> norm_oracle(fieldmaps.CoefficientSystem.constant(1, 2), fieldmaps.WeightSystem(space, factors=(1,)))
        2.0
    """
    _check_size(f.table, w.space)
    cache: Dict[frozenset, float] = {}
    constant = 0.0
    pinned: Dict[Tuple[int, ...], Dict[Tuple[int, int], float]] = {}
    for key, value in f.table.items():
        shape = tuple(len(slot) for slot in key)
        if sum(shape) == 0:
            constant += abs(value)
            continue
        sums = pinned.setdefault(shape, {})
        for ordered in _ordered_tuples(key):
            weight = abs(value) * _weight(w.space, w.factors, ordered, cache)
            for j, slot in enumerate(ordered):
                if slot:
                    sums[(j, slot[0])] = sums.get((j, slot[0]), 0.0) + weight
    return constant + sum(max(sums.values()) for sums in pinned.values())


def kernel_norm_oracle(a: FieldMapKernel, w: WeightSystem) -> float:
    """The kernel norm from every ordered tuple: per profile the larger of the output and input pinned sums."""
    _check_size([key for _, key in a.table], w.space)
    cache: Dict[frozenset, float] = {}
    left: Dict[Tuple[int, ...], Dict[int, float]] = {}
    right: Dict[Tuple[int, ...], Dict[Tuple[int, int], float]] = {}
    for (x, key), value in a.table.items():
        shape = tuple(len(slot) for slot in key)
        lsums = left.setdefault(shape, {})
        rsums = right.setdefault(shape, {})
        for ordered in _ordered_tuples(key):
            weight = abs(value) * _weight(w.space, w.factors, ordered, cache, extra=[x])
            lsums[x] = lsums.get(x, 0.0) + weight
            for j, slot in enumerate(ordered):
                if slot:
                    rsums[(j, slot[0])] = rsums.get((j, slot[0]), 0.0) + weight
    return sum(max(max(left[shape].values()), max(right[shape].values())) for shape in left)


def _dense_value(key, value: complex, fields: Sequence[np.ndarray]) -> complex:
    total = 0j
    for ordered in _ordered_tuples(key):
        term = complex(value)
        for field, slot in zip(fields, ordered):
            for y in slot:
                term *= complex(field[y])
        total += term
    return total


def evaluate_system_oracle(f: CoefficientSystem, fields: Sequence[Any]) -> complex:
    fields = [np.asarray(v, dtype=np.complex128) for v in fields]
    return sum((_dense_value(key, value, fields) for key, value in f.table.items()), 0j)


def evaluate_kernel_oracle(a: FieldMapKernel, fields: Sequence[Any]) -> np.ndarray:
    fields = [np.asarray(v, dtype=np.complex128) for v in fields]
    out = np.zeros(a.num_points, dtype=np.complex128)
    for (x, key), value in a.table.items():
        out[x] += _dense_value(key, value, fields)
    return out


def eval_compose_oracle(h: CoefficientSystem,
                        maps: Sequence[FieldMapKernel],
                        composed: CoefficientSystem,
                        fields: Sequence[Any]) -> Tuple[complex, complex]:
    """Returns (h(A_1(alpha), ..., A_r(alpha)), composed(alpha)), both by dense evaluation."""
    inner = [evaluate_kernel_oracle(a, fields) for a in maps]
    return evaluate_system_oracle(h, inner), evaluate_system_oracle(composed, fields)
