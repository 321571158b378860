import collections
import dataclasses
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from fieldmaps._data import json_complex, TruncationOptions, Verdict
from fieldmaps._errors import ArityMismatch, ExponentMismatch
from fieldmaps._series._field_vector import as_fields, exponent_sum, lp_norm
from fieldmaps._series._multi_tuple import (
    canonical,
    empty_key,
    enumerate_keys,
    key_to_json,
    MultiTuple,
    orbit_size,
    profile,
    support,
    total_degree,
    validate_key,
)
from fieldmaps._series._norm_report import NormReport, ProfileNorm
from fieldmaps._space import DegreeProfile, WeightSystem

if TYPE_CHECKING:
    import fieldmaps

Monomials = Dict[MultiTuple, complex]


@dataclasses.dataclass(frozen=True)
class CoefficientSystem:
    """A polynomial function of s fields, stored as a symmetric coefficient system.

    The function is

        f(alpha_1, ..., alpha_s) = sum a(x_1, ..., x_s) alpha_1(x_1) ... alpha_s(x_s)

    summed over all tuples of point sequences, where a is invariant under
    permutations within each x_j. Only one sorted representative of each
    permutation orbit is stored. The coefficient of the corresponding
    monomial is a times the orbit size.

    Attributes:
        arity: The number of fields s.
        table: Maps canonical tuples to the symmetric coefficient a. Zero
            coefficients are not stored. The entry for the empty tuple is the
            constant term a(-, ..., -).
    """
    arity: int
    table: Dict[MultiTuple, complex]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f'arity={self.arity} < 0')
        cleaned = {}
        for key, value in self.table.items():
            if len(key) != self.arity:
                raise ArityMismatch(f'Tuple {key!r} does not have {self.arity} slots.',
                                    detail={'expected': self.arity, 'key': repr(key)})
            assert canonical(key) == key, key
            value = complex(value)
            if value != 0:
                cleaned[key] = value
        object.__setattr__(self, 'table', {k: cleaned[k] for k in sorted(cleaned, key=_key_order)})

    @staticmethod
    def zero(arity: int) -> 'CoefficientSystem':
        return CoefficientSystem(arity=arity, table={})

    @staticmethod
    def constant(arity: int, value: complex) -> 'CoefficientSystem':
        return CoefficientSystem(arity=arity, table={empty_key(arity): value})

    @staticmethod
    def from_monomials(arity: int, monomials: Iterable[Tuple[Sequence[Sequence[int]], complex]]) -> 'CoefficientSystem':
        """Builds the symmetric system of a sum of monomials.

        Each monomial coefficient is spread equally over the permutation
        orbit of its tuple, so entries that are permutations of each other
        accumulate.
        """
        acc: Dict[MultiTuple, complex] = collections.defaultdict(complex)
        for key, value in monomials:
            if len(key) != arity:
                raise ArityMismatch(f'Tuple {key!r} does not have {arity} slots.',
                                    detail={'expected': arity, 'key': repr(key)})
            acc[canonical(key)] += value
        return CoefficientSystem(arity=arity, table={k: v / orbit_size(k) for k, v in acc.items()})

    @staticmethod
    def from_entries(arity: int,
                     entries: Iterable[Tuple[Sequence[Sequence[int]], complex]],
                     *,
                     num_points: Optional[int] = None) -> 'CoefficientSystem':
        """Symmetrizes raw (possibly asymmetric) coefficient entries.

        Args:
            arity: The number of fields.
            entries: Pairs of (tuple of point sequences, coefficient). A
                coefficient given for a tuple multiplies exactly that ordering
                of the points.
            num_points: When given, every point is checked to be in range.

        Examples:
            >>> import fieldmaps
            >>> f = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 1]], 1)])
            >>> f.table
            {((0, 1),): (0.5+0j)}
        """
        entries = list(entries)
        if num_points is not None:
            entries = [(validate_key(key, arity, num_points), value) for key, value in entries]
        return CoefficientSystem.from_monomials(arity, entries)

    @property
    def constant_term(self) -> complex:
        return self.table.get(empty_key(self.arity), 0j)

    def monomials(self) -> Monomials:
        """Returns the monomial coefficients (symmetric value times orbit size)."""
        return {k: v * orbit_size(k) for k, v in self.table.items()}

    def profiles(self) -> List[DegreeProfile]:
        return sorted({DegreeProfile(profile(k)) for k in self.table})

    def degree_range(self) -> Optional[Tuple[int, int]]:
        """The (min, max) total degree of the stored entries, or None if zero."""
        if not self.table:
            return None
        degrees = [total_degree(k) for k in self.table]
        return min(degrees), max(degrees)

    def slot_degree_range(self, slot: int) -> Optional[Tuple[int, int]]:
        if not self.table:
            return None
        degrees = [len(k[slot]) for k in self.table]
        return min(degrees), max(degrees)

    def restrict_total_degree(self, dmin: int, dmax: Optional[int] = None) -> 'CoefficientSystem':
        return CoefficientSystem(arity=self.arity, table={
            k: v
            for k, v in self.table.items()
            if dmin <= total_degree(k) and (dmax is None or total_degree(k) <= dmax)
        })

    def truncated(self, truncation: TruncationOptions) -> Tuple['CoefficientSystem', bool]:
        """Drops entries not allowed by the truncation, reporting if any were dropped."""
        kept = {k: v for k, v in self.table.items() if truncation.allows(profile(k))}
        return CoefficientSystem(arity=self.arity, table=kept), len(kept) != len(self.table)

    def combine(self, other: 'CoefficientSystem', a: complex = 1, b: complex = 1) -> 'CoefficientSystem':
        """Returns a*self + b*other.

        Examples:
            >>> import fieldmaps
            >>> f = fieldmaps.CoefficientSystem.from_entries(1, [([[0]], 2)])
            >>> f.combine(f, 1, -1).table
            {}
        """
        if other.arity != self.arity:
            raise ArityMismatch(f'Cannot combine systems of arity {self.arity} and {other.arity}.',
                                detail={'expected': self.arity, 'actual': other.arity})
        acc: Dict[MultiTuple, complex] = collections.defaultdict(complex)
        for k, v in self.table.items():
            acc[k] += a * v
        for k, v in other.table.items():
            acc[k] += b * v
        return CoefficientSystem(arity=self.arity, table=acc)

    def scaled(self, c: complex) -> 'CoefficientSystem':
        return CoefficientSystem(arity=self.arity, table={k: c * v for k, v in self.table.items()})

    def __add__(self, other: 'CoefficientSystem') -> 'CoefficientSystem':
        return self.combine(other, 1, 1)

    def __sub__(self, other: 'CoefficientSystem') -> 'CoefficientSystem':
        return self.combine(other, 1, -1)

    def max_abs_difference(self, other: 'CoefficientSystem') -> float:
        diff = self.combine(other, 1, -1)
        return max((abs(v) for v in diff.table.values()), default=0.0)

    def evaluate(self, fields: Sequence[Any]) -> complex:
        """Evaluates the polynomial at concrete fields.

        Examples:
            >>> import fieldmaps
            >>> f = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 1]], 1)])
            >>> f.evaluate([[2, 3j]])
            6j
        """
        if len(fields) != self.arity:
            raise ArityMismatch(f'Expected {self.arity} fields but got {len(fields)}.',
                                detail={'expected': self.arity, 'actual': len(fields)})
        if not self.table:
            return 0j
        num_points = len(fields[0]) if fields else 0
        values = [f.tolist() for f in as_fields(fields, self.arity, num_points)]
        return evaluate_monomials(self.monomials(), values)

    def norm(self, w: WeightSystem) -> float:
        """Returns the weighted norm ||f||_w.

        ||f||_w = |a(-)| + sum over profiles (n_1, ..., n_s) of the maximum,
        over a pinned point x and a pinned slot j with n_j != 0, of the sum of
        |a| kappa^n e^{tau_d} over all tuples whose slot j has x in a fixed
        position.

        Examples:
            >>> import fieldmaps
            >>> space = fieldmaps.MetricSpace.line(1)
            >>> f = fieldmaps.CoefficientSystem.from_entries(1, [([[0, 0]], 1)])
            >>> f.norm(fieldmaps.WeightSystem(space, factors=(3,)))
            9.0
        """
        return self.norm_details(w).total

    def norm_details(self, w: WeightSystem) -> NormReport:
        if w.arity != self.arity:
            raise ArityMismatch(f'Weight system has {w.arity} factors but the function has {self.arity} fields.',
                                detail={'expected': self.arity, 'actual': w.arity})
        pinned: Dict[Tuple[int, ...], Dict[Tuple[int, int], List[float]]] = collections.defaultdict(
            lambda: collections.defaultdict(list))
        for key, value in self.table.items():
            if total_degree(key) == 0:
                continue
            degrees = profile(key)
            weight = _term_weight(value, key, w, support(key))
            for j, slot in enumerate(key):
                n = len(slot)
                for x, c in collections.Counter(slot).items():
                    pinned[degrees][(j, x)].append(weight * c / n)
        profiles = tuple(
            ProfileNorm(profile=DegreeProfile(degrees),
                        value=max(math.fsum(terms) for terms in pinned[degrees].values()))
            for degrees in sorted(pinned)
        )
        constant = abs(self.constant_term)
        total = math.fsum([constant] + [p.value for p in profiles])
        return NormReport(total=total, constant=constant, profiles=profiles)

    def to_json(self) -> Dict[str, Any]:
        return {
            'arity': self.arity,
            'entries': [[key_to_json(k), v] for k, v in self.monomials().items()],
        }

    @staticmethod
    def from_json(data: Dict[str, Any], *, num_points: Optional[int] = None) -> 'CoefficientSystem':
        return CoefficientSystem.from_entries(
            data['arity'],
            [(key, json_complex(value)) for key, value in data['entries']],
            num_points=num_points)

    def __repr__(self) -> str:
        return f'fieldmaps.CoefficientSystem(arity={self.arity!r}, table={self.table!r})'


def symmetrize(arity: int, entries: Iterable[Tuple[Sequence[Sequence[int]], complex]]) -> CoefficientSystem:
    """Returns the symmetric coefficient system of raw coefficient entries."""
    return CoefficientSystem.from_entries(arity, entries)


def evaluate_monomials(monomials: Monomials, values: Sequence[Sequence[complex]]) -> complex:
    total = 0j
    for key, c in monomials.items():
        term = c
        for slot, field in zip(key, values):
            for x in slot:
                term *= field[x]
        total += term
    return total


def young_function_check(f: CoefficientSystem,
                         w: WeightSystem,
                         degrees: Sequence[int],
                         exponents: Sequence[float],
                         fields: Sequence[Any]) -> Verdict:
    """Checks |f(alpha)| <= ||f||_w prod_j (||alpha_j||_{p_j} / kappa_j)^{d_j}.

    The inequality requires f to have degree at least d_j in field j,
    sum_j d_j / p_j = 1, and |alpha_j(x)| <= kappa_j. A violated exponent
    condition is an error. The other two hypotheses are reported through
    the verdict status.

    Raises:
        ExponentMismatch: sum_j d_j / p_j != 1.
    """
    if len(degrees) != f.arity or len(exponents) != f.arity:
        raise ArityMismatch(f'Need {f.arity} degrees and exponents.',
                            detail={'expected': f.arity, 'degrees': len(degrees), 'exponents': len(exponents)})
    total = exponent_sum(degrees, exponents)
    if abs(total - 1) > 1e-12:
        raise ExponentMismatch(f'sum_j d_j/p_j = {total} != 1', detail={'sum': total})
    fields = as_fields(fields, f.arity, w.space.num_points)
    degree_ok = all(len(key[j]) >= d for key in f.table for j, d in enumerate(degrees))
    bounded = all(np.max(np.abs(a), initial=0.0) <= k for a, k in zip(fields, w.factors))
    lhs = abs(f.evaluate(fields))
    rhs = f.norm(w)
    for a, k, d, p in zip(fields, w.factors, degrees, exponents):
        if d:
            rhs *= (lp_norm(a, p) / k)**d
    return Verdict.check('young', lhs, rhs, hypothesis=degree_ok and bounded)


def random_system(rng: np.random.Generator,
                  num_points: int,
                  arity: int,
                  *,
                  max_degree: int,
                  min_degree: int = 0,
                  num_terms: int = 6,
                  scale: float = 1.0,
                  min_slot_degrees: Optional[Sequence[int]] = None,
                  real: bool = False) -> CoefficientSystem:
    """A seeded random sparse polynomial of s fields.

    Args:
        rng: The random number generator.
        num_points: Size of the space.
        arity: Number of fields.
        max_degree: Largest total degree of a term.
        min_degree: Smallest total degree of a term.
        num_terms: Number of distinct canonical tuples (fewer if there
            aren't enough).
        scale: Coefficient magnitudes are uniform in [0, scale).
        min_slot_degrees: When given, every term has at least this many
            points in each slot.
        real: Use real coefficients instead of complex ones.
    """
    keys = [
        key
        for d in range(min_degree, max_degree + 1)
        for key in enumerate_keys(num_points, arity, d)
        if min_slot_degrees is None or all(len(s) >= m for s, m in zip(key, min_slot_degrees))
    ]
    if not keys:
        return CoefficientSystem.zero(arity)
    chosen = rng.choice(len(keys), size=min(num_terms, len(keys)), replace=False)
    table = {}
    for i in sorted(chosen):
        magnitude = rng.uniform(0, scale)
        phase = 1 if real else np.exp(2j * np.pi * rng.uniform())
        table[keys[i]] = complex(magnitude * phase)
    return CoefficientSystem(arity=arity, table=table)


def _key_order(key: MultiTuple):
    return total_degree(key), profile(key), key


def _term_weight(value: complex, key: MultiTuple, w: WeightSystem, terminals) -> float:
    """|a| kappa^n e^{tau_d(terminals)} times the orbit size of the key."""
    return abs(value) * w.factor_product(profile(key)) * math.exp(w.space.tree_length(terminals)) * orbit_size(key)
