import math
import threading
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from fieldmaps._errors import MetricViolation, TerminalLimitExceeded, UnknownPoint


class MetricSpace:
    """A finite set X = {0, 1, ..., n-1} with a metric d.

    Points are dense integer indices. Distances are real and dimensionless.
    Tree lengths (the length of the shortest tree with vertices in X that
    contains a given set of terminals) are computed exactly and memoized.

    The memo is the only mutable state and is guarded by a lock.
    """

    def __init__(self,
                 distances: Any,
                 *,
                 terminal_cap: int = 12,
                 coordinates: Optional[np.ndarray] = None,
                 validate: bool = True):
        """
        Args:
            distances: A square matrix of pairwise distances.
            terminal_cap: The largest terminal set that `tree_length` will
                solve. Larger sets raise `fieldmaps.TerminalLimitExceeded`.
            coordinates: Optional positions of the points, kept for reporting.
            validate: Defaults to True. Checks that the matrix is a metric
                (zero diagonal, symmetric, non-negative, triangle inequality)
                and raises `fieldmaps.MetricViolation` if it is not.
        """
        dist = np.array(distances, dtype=np.float64)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise MetricViolation(f'Distance matrix must be square but has shape {dist.shape}.',
                                  detail={'shape': list(dist.shape)})
        if dist.shape[0] == 0:
            raise MetricViolation('A metric space needs at least one point.')
        if terminal_cap < 1:
            raise ValueError(f'terminal_cap={terminal_cap} < 1')
        if validate:
            _validate_metric(dist)
        dist.setflags(write=False)
        self._dist = dist
        self.terminal_cap = terminal_cap
        self.coordinates = coordinates
        self._tau_cache: Dict[Tuple[int, ...], float] = {}
        self._lock = threading.Lock()

    @staticmethod
    def from_matrix(matrix: Any, *, scale: float = 1.0, terminal_cap: int = 12) -> 'MetricSpace':
        """Builds a space from an explicit distance matrix, multiplied by `scale`."""
        if not scale > 0:
            raise ValueError(f'scale={scale} <= 0')
        return MetricSpace(np.asarray(matrix, dtype=np.float64) * scale, terminal_cap=terminal_cap)

    @staticmethod
    def from_coordinates(coords: Any, *, scale: float = 1.0, terminal_cap: int = 12) -> 'MetricSpace':
        """Builds a space from points in R^D with (scaled) Euclidean distance.

        Examples:
            >>> import fieldmaps
            >>> space = fieldmaps.MetricSpace.from_coordinates([[0, 0], [3, 4]])
            >>> space.distance(0, 1)
            5.0
        """
        import scipy.spatial.distance

        if not scale > 0:
            raise ValueError(f'scale={scale} <= 0')
        coords = _as_coordinate_array(coords)
        dist = scipy.spatial.distance.cdist(coords, coords) * scale
        return MetricSpace(dist, terminal_cap=terminal_cap, coordinates=coords)

    @staticmethod
    def from_torus(coords: Any,
                   periods: Sequence[float],
                   *,
                   scale: float = 1.0,
                   terminal_cap: int = 12) -> 'MetricSpace':
        """Builds a quotient lattice with the induced wrap-around distance.

        The distance between two points is the Euclidean length of the
        shortest displacement between them over all translates by the
        periods, which are the generators of a rectangular sublattice.

        Examples:
            >>> import fieldmaps
            >>> ring = fieldmaps.MetricSpace.from_torus([0, 1, 2, 3], periods=[4])
            >>> ring.distance(0, 3)
            1.0
        """
        if not scale > 0:
            raise ValueError(f'scale={scale} <= 0')
        coords = _as_coordinate_array(coords)
        periods = np.array(periods, dtype=np.float64)
        if periods.shape != (coords.shape[1],) or np.any(periods <= 0):
            raise MetricViolation(
                f'Need one positive period per coordinate axis but got periods={periods.tolist()} '
                f'for {coords.shape[1]}-dimensional coordinates.')
        delta = np.abs(coords[:, None, :] - coords[None, :, :]) % periods
        delta = np.minimum(delta, periods - delta)
        dist = np.sqrt(np.sum(delta**2, axis=2)) * scale
        return MetricSpace(dist, terminal_cap=terminal_cap, coordinates=coords)

    @staticmethod
    def line(n: int, *, spacing: float = 1.0, scale: float = 1.0, terminal_cap: int = 12) -> 'MetricSpace':
        """The points 0, spacing, 2*spacing, ... on a line."""
        return MetricSpace.from_coordinates(np.arange(n) * spacing, scale=scale, terminal_cap=terminal_cap)

    @property
    def num_points(self) -> int:
        return self._dist.shape[0]

    @property
    def points(self) -> range:
        return range(self.num_points)

    @property
    def distances(self) -> np.ndarray:
        """The (read-only) distance matrix."""
        return self._dist

    def check_point(self, x: Any) -> int:
        if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)) or not 0 <= x < self.num_points:
            raise UnknownPoint(f'{x!r} is not a point of this {self.num_points} point space.',
                               detail={'point': repr(x), 'num_points': self.num_points})
        return int(x)

    def distance(self, x: int, y: int) -> float:
        return float(self._dist[self.check_point(x), self.check_point(y)])

    def tree_length(self, terminals: Iterable[int]) -> float:
        """Returns the length of the shortest tree in X containing the terminals.

        Steiner vertices are drawn from X only. Duplicate terminals count once.
        The empty set and single points have tree length 0.

        Raises:
            UnknownPoint: A terminal is not a point of the space.
            TerminalLimitExceeded: There are more distinct terminals than
                `terminal_cap`.

        Examples:
            >>> import fieldmaps
            >>> space = fieldmaps.MetricSpace.line(3)
            >>> space.tree_length([0, 2])
            2.0
            >>> space.tree_length([0, 1, 2])
            2.0
        """
        key = tuple(sorted({self.check_point(t) for t in terminals}))
        if len(key) > self.terminal_cap:
            raise TerminalLimitExceeded(
                f'Asked for the tree length of {len(key)} terminals but terminal_cap={self.terminal_cap}.',
                detail={'terminals': list(key), 'terminal_cap': self.terminal_cap})
        if len(key) <= 1:
            return 0.0
        if len(key) == 2:
            return float(self._dist[key[0], key[1]])
        with self._lock:
            cached = self._tau_cache.get(key)
        if cached is not None:
            return cached
        result = _dreyfus_wagner(self._dist, key)
        with self._lock:
            self._tau_cache.setdefault(key, result)
        return result

    def spanning_tree_length(self, terminals: Iterable[int]) -> float:
        """Returns the minimum spanning tree length of the terminals alone.

        This never uses vertices outside the terminals, so it is an upper
        bound on `tree_length`.
        """
        import scipy.sparse.csgraph

        key = sorted({self.check_point(t) for t in terminals})
        if len(key) <= 1:
            return 0.0
        sub = self._dist[np.ix_(key, key)]
        tree = scipy.sparse.csgraph.minimum_spanning_tree(sub)
        return float(tree.sum())

    def restricted(self, points: Sequence[int]) -> 'MetricSpace':
        """Returns the sub-space on the given points, re-indexed in the given order."""
        idx = [self.check_point(p) for p in points]
        if len(set(idx)) != len(idx):
            raise ValueError(f'Duplicate points in {points!r}.')
        coords = None if self.coordinates is None else self.coordinates[idx]
        return MetricSpace(self._dist[np.ix_(idx, idx)],
                           terminal_cap=self.terminal_cap,
                           coordinates=coords,
                           validate=False)

    def scaled(self, factor: float) -> 'MetricSpace':
        """Returns the space with every distance multiplied by `factor`."""
        if not factor > 0:
            raise ValueError(f'factor={factor} <= 0')
        return MetricSpace(self._dist * factor,
                           terminal_cap=self.terminal_cap,
                           coordinates=self.coordinates,
                           validate=False)

    def to_json(self) -> Dict[str, Any]:
        return {
            'num_points': self.num_points,
            'distances': self._dist.tolist(),
        }

    def __repr__(self) -> str:
        return f'fieldmaps.MetricSpace({self._dist.tolist()!r}, terminal_cap={self.terminal_cap!r})'


def _as_coordinate_array(coords: Any) -> np.ndarray:
    coords = np.array(coords, dtype=np.float64)
    if coords.ndim == 1:
        coords = coords[:, None]
    if coords.ndim != 2:
        raise MetricViolation(f'Coordinates must be a list of points but have shape {coords.shape}.')
    return coords


def _validate_metric(dist: np.ndarray) -> None:
    n = dist.shape[0]
    if not np.all(np.isfinite(dist)):
        raise MetricViolation('Distances must be finite.')
    if np.any(dist < 0):
        i, j = np.argwhere(dist < 0)[0]
        raise MetricViolation(f'd({i}, {j}) = {dist[i, j]} < 0', detail={'pair': [int(i), int(j)]})
    if np.any(np.diag(dist) != 0):
        i = int(np.flatnonzero(np.diag(dist) != 0)[0])
        raise MetricViolation(f'd({i}, {i}) = {dist[i, i]} != 0', detail={'pair': [i, i]})
    tol = 1e-12 * max(1.0, float(np.max(dist)))
    asym = np.abs(dist - dist.T) > tol
    if np.any(asym):
        i, j = np.argwhere(asym)[0]
        raise MetricViolation(f'd({i}, {j}) = {dist[i, j]} != d({j}, {i}) = {dist[j, i]}',
                              detail={'pair': [int(i), int(j)]})
    for j in range(n):
        bad = dist > dist[:, j:j + 1] + dist[j:j + 1, :] + tol
        if np.any(bad):
            i, k = np.argwhere(bad)[0]
            raise MetricViolation(
                f'Triangle inequality fails: d({i}, {k}) = {dist[i, k]} > '
                f'd({i}, {j}) + d({j}, {k}) = {dist[i, j] + dist[j, k]}',
                detail={'triple': [int(i), int(j), int(k)]})


def _dreyfus_wagner(dist: np.ndarray, terminals: Tuple[int, ...]) -> float:
    """Exact Steiner tree length with Steiner vertices restricted to X.

    best[S][v] is the length of the shortest tree containing the terminals
    in the subset S together with the vertex v. The last terminal is the
    root and is excluded from the subsets.
    """
    *rest, root = terminals
    m = len(rest)
    full = (1 << m) - 1
    best = np.empty((1 << m, dist.shape[0]), dtype=np.float64)
    for i, t in enumerate(rest):
        best[1 << i] = dist[t]
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        merged = np.full(dist.shape[0], math.inf)
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                np.minimum(merged, best[sub] + best[mask ^ sub], out=merged)
            sub = (sub - 1) & mask
        best[mask] = np.min(merged[:, None] + dist, axis=0)
    return float(best[full][root])
