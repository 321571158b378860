import collections
import dataclasses
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from fieldmaps._data import json_complex, TruncationOptions, Verdict
from fieldmaps._errors import (
    ArityMismatch,
    DimensionMismatch,
    ExponentMismatch,
    NoGammaSlots,
    StructureViolation,
    UnknownPoint,
)
from fieldmaps._series._coefficient_system import (
    CoefficientSystem,
    enumerate_keys,
    evaluate_monomials,
    Monomials,
)
from fieldmaps._series._field_vector import as_fields, exponent_sum, lp_norm
from fieldmaps._series._multi_tuple import (
    canonical,
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

KernelKey = Tuple[int, MultiTuple]


@dataclasses.dataclass(frozen=True)
class FieldMapKernel:
    """The kernel A(x; x_1, ..., x_s) of an s-field map.

    The field map is

        A(alpha_1, ..., alpha_s)(x) = sum A(x; x_1, ..., x_s) alpha_1(x_1) ... alpha_s(x_s)

    Kernels are symmetric within each slot and stored canonically, like
    `fieldmaps.CoefficientSystem`. They have no constant term.

    Attributes:
        num_points: The size of the space the fields live on.
        arity: The total number of field slots.
        table: Maps (output point, canonical tuple) to the symmetric kernel
            value. Zero values are not stored.
        gamma_slots: Defaults to 0. The number r of trailing slots that hold
            the unknown fields gamma_1, ..., gamma_r. Primed norms and degree
            restrictions refer to these slots.
    """
    num_points: int
    arity: int
    table: Dict[KernelKey, complex]
    gamma_slots: int = 0

    def __post_init__(self):
        if self.num_points < 1:
            raise ValueError(f'num_points={self.num_points} < 1')
        if not 0 <= self.gamma_slots <= self.arity:
            raise ValueError(f'gamma_slots={self.gamma_slots} is not in [0, arity={self.arity}]')
        cleaned = {}
        for (x, key), value in self.table.items():
            if len(key) != self.arity:
                raise ArityMismatch(f'Tuple {key!r} does not have {self.arity} slots.',
                                    detail={'expected': self.arity, 'key': repr(key)})
            assert canonical(key) == key, key
            value = complex(value)
            if value == 0:
                continue
            if total_degree(key) == 0:
                raise StructureViolation(f'Field map kernels have no constant term, but A({x}; -) = {value}.',
                                         detail={'point': x})
            if not 0 <= x < self.num_points or any(not 0 <= y < self.num_points for y in support(key)):
                raise UnknownPoint(f'Entry ({x}, {key}) refers to a point outside the {self.num_points} point space.',
                                   detail={'point': x, 'key': key_to_json(key)})
            cleaned[(x, key)] = value
        object.__setattr__(self, 'table', {k: cleaned[k] for k in sorted(cleaned, key=_kernel_key_order)})

    @property
    def field_slots(self) -> int:
        """The number s of leading (non-gamma) slots."""
        return self.arity - self.gamma_slots

    @staticmethod
    def zero(num_points: int, arity: int, *, gamma_slots: int = 0) -> 'FieldMapKernel':
        return FieldMapKernel(num_points=num_points, arity=arity, table={}, gamma_slots=gamma_slots)

    @staticmethod
    def from_monomials(num_points: int,
                       arity: int,
                       monomials: Dict[int, Monomials],
                       *,
                       gamma_slots: int = 0) -> 'FieldMapKernel':
        """Builds a kernel from monomial coefficients per output point."""
        table = {}
        for x, poly in monomials.items():
            for key, c in poly.items():
                table[(x, key)] = c / orbit_size(key)
        return FieldMapKernel(num_points=num_points, arity=arity, table=table, gamma_slots=gamma_slots)

    @staticmethod
    def from_entries(num_points: int,
                     arity: int,
                     entries: Iterable[Tuple[int, Sequence[Sequence[int]], complex]],
                     *,
                     gamma_slots: int = 0) -> 'FieldMapKernel':
        """Symmetrizes raw entries (x, tuple, value) into a kernel."""
        acc: Dict[KernelKey, complex] = collections.defaultdict(complex)
        for x, key, value in entries:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < num_points:
                raise UnknownPoint(f'{x!r} is not a point of this {num_points} point space.',
                                   detail={'point': repr(x), 'num_points': num_points})
            acc[(int(x), validate_key(key, arity, num_points))] += value
        return FieldMapKernel(num_points=num_points,
                              arity=arity,
                              table={(x, k): v / orbit_size(k) for (x, k), v in acc.items()},
                              gamma_slots=gamma_slots)

    @staticmethod
    def projection(num_points: int,
                   arity: int,
                   slot: int,
                   *,
                   gamma_slots: int = 0,
                   scale: complex = 1) -> 'FieldMapKernel':
        """The map (alpha_1, ..., alpha_s) -> scale * alpha_slot."""
        if not 0 <= slot < arity:
            raise ArityMismatch(f'slot={slot} is not in [0, {arity})', detail={'slot': slot, 'arity': arity})
        table = {}
        for x in range(num_points):
            key = [()] * arity
            key[slot] = (x,)
            table[(x, tuple(key))] = scale
        return FieldMapKernel(num_points=num_points, arity=arity, table=table, gamma_slots=gamma_slots)

    @staticmethod
    def from_linear_operator(matrix: Any,
                             *,
                             arity: int = 1,
                             slot: int = 0,
                             gamma_slots: int = 0) -> 'FieldMapKernel':
        """The linear map alpha -> S alpha as a kernel A(x; (y)) = S(x, y).

        With `arity` > 1 the operator acts on the field in `slot` and the
        other fields are ignored.

        Examples:
            >>> import fieldmaps
            >>> space = fieldmaps.MetricSpace.line(2)
            >>> swap = fieldmaps.FieldMapKernel.from_linear_operator([[0, 1], [1, 0]])
            >>> round(swap.kernel_norm(fieldmaps.WeightSystem(space, factors=(2,))), 6)
            5.436564
        """
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatch(f'Linear operators must be square matrices but got shape {m.shape}.',
                                    detail={'shape': list(m.shape)})
        if not 0 <= slot < arity:
            raise ArityMismatch(f'slot={slot} is not in [0, {arity})', detail={'slot': slot, 'arity': arity})
        table = {}
        for x, y in zip(*np.nonzero(m)):
            key = [()] * arity
            key[slot] = (int(y),)
            table[(int(x), tuple(key))] = complex(m[x, y])
        return FieldMapKernel(num_points=m.shape[0], arity=arity, table=table, gamma_slots=gamma_slots)

    @staticmethod
    def truncated_exponential(num_points: int, n: int, a: float, max_degree: int) -> 'FieldMapKernel':
        """The local map gamma -> E_n(a gamma(x)) with E_n(z) = sum_{l >= n} z^l / l!.

        The series is cut after the term of degree `max_degree`. The kernel
        has one gamma slot and no other fields.
        """
        if n < 1:
            raise ValueError(f'n={n} < 1 would give the map a constant term')
        table = {}
        for degree in range(n, max_degree + 1):
            c = a**degree / math.factorial(degree)
            for x in range(num_points):
                table[(x, ((x,) * degree,))] = c
        return FieldMapKernel(num_points=num_points, arity=1, table=table, gamma_slots=1)

    @staticmethod
    def bilinear(num_points: int,
                 entries: Iterable[Tuple[int, int, int, complex]],
                 *,
                 gamma_slots: int = 0) -> 'FieldMapKernel':
        """The map (phi_1, phi_2) -> sum_{y,z} W(x, y, z) phi_1(y) phi_2(z)."""
        return FieldMapKernel.from_entries(num_points, 2, [(x, [[y], [z]], v) for x, y, z, v in entries],
                                           gamma_slots=gamma_slots)

    def with_gamma_slots(self, gamma_slots: int) -> 'FieldMapKernel':
        return FieldMapKernel(num_points=self.num_points, arity=self.arity, table=self.table, gamma_slots=gamma_slots)

    def monomials_at(self) -> Dict[int, Monomials]:
        """Monomial coefficients grouped by output point."""
        result: Dict[int, Monomials] = {}
        for (x, key), value in self.table.items():
            result.setdefault(x, {})[key] = value * orbit_size(key)
        return result

    def profiles(self) -> List[DegreeProfile]:
        return sorted({DegreeProfile(profile(k)) for _, k in self.table})

    def gamma_degree(self, key: MultiTuple) -> int:
        return sum(len(slot) for slot in key[self.field_slots:])

    def gamma_degree_range(self) -> Optional[Tuple[int, int]]:
        if self.gamma_slots == 0:
            raise NoGammaSlots('The kernel has no gamma slots.')
        if not self.table:
            return None
        degrees = [self.gamma_degree(k) for _, k in self.table]
        return min(degrees), max(degrees)

    def degree_range(self) -> Optional[Tuple[int, int]]:
        if not self.table:
            return None
        degrees = [total_degree(k) for _, k in self.table]
        return min(degrees), max(degrees)

    def gamma_profile_pieces(self) -> Dict[DegreeProfile, 'FieldMapKernel']:
        """Splits the kernel into the pieces B_{n_{s+1}, ..., n_{s+r}}."""
        if self.gamma_slots == 0:
            raise NoGammaSlots('The kernel has no gamma slots.')
        groups: Dict[DegreeProfile, Dict[KernelKey, complex]] = collections.defaultdict(dict)
        for (x, key), value in self.table.items():
            groups[DegreeProfile(profile(key[self.field_slots:]))][(x, key)] = value
        return {
            p: FieldMapKernel(num_points=self.num_points, arity=self.arity, table=t, gamma_slots=self.gamma_slots)
            for p, t in sorted(groups.items())
        }

    def restrict_degrees(self, dmin: int, dmax: Optional[int] = None) -> 'FieldMapKernel':
        """Keeps the pieces whose total degree in the gamma slots is in [dmin, dmax].

        `dmax=None` means no upper limit.
        """
        if self.gamma_slots == 0:
            raise NoGammaSlots('restrict_degrees needs a kernel with gamma slots.')
        return self._filtered(lambda x, key: dmin <= self.gamma_degree(key) and
                              (dmax is None or self.gamma_degree(key) <= dmax))

    def restrict_total_degree(self, dmin: int, dmax: Optional[int] = None) -> 'FieldMapKernel':
        return self._filtered(lambda x, key: dmin <= total_degree(key) and
                              (dmax is None or total_degree(key) <= dmax))

    def truncated(self, truncation: TruncationOptions) -> Tuple['FieldMapKernel', bool]:
        result = self._filtered(lambda x, key: truncation.allows(profile(key)))
        return result, len(result.table) != len(self.table)

    def embed(self, input_domain: Iterable[int], output_domain: Iterable[int]) -> 'FieldMapKernel':
        """Restricts input fields to X_1 and the output field to X_2.

        Fields are viewed as fields on X that vanish outside X_1, and the
        output is set to zero outside X_2.
        """
        inputs = self._checked_points(input_domain)
        outputs = self._checked_points(output_domain)
        return self._filtered(lambda x, key: x in outputs and support(key) <= inputs)

    def _checked_points(self, points: Iterable[int]) -> frozenset:
        result = set()
        for p in points:
            if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or not 0 <= p < self.num_points:
                raise UnknownPoint(f'{p!r} is not a point of this {self.num_points} point space.',
                                   detail={'point': repr(p), 'num_points': self.num_points})
            result.add(int(p))
        return frozenset(result)

    def _filtered(self, keep) -> 'FieldMapKernel':
        return FieldMapKernel(num_points=self.num_points,
                              arity=self.arity,
                              table={(x, k): v for (x, k), v in self.table.items() if keep(x, k)},
                              gamma_slots=self.gamma_slots)

    def combine(self, other: 'FieldMapKernel', a: complex = 1, b: complex = 1) -> 'FieldMapKernel':
        """Returns a*self + b*other."""
        if other.arity != self.arity or other.num_points != self.num_points:
            raise ArityMismatch(
                f'Cannot combine kernels of arity {self.arity} and {other.arity} '
                f'on {self.num_points} and {other.num_points} points.',
                detail={'expected': self.arity, 'actual': other.arity})
        acc: Dict[KernelKey, complex] = collections.defaultdict(complex)
        for k, v in self.table.items():
            acc[k] += a * v
        for k, v in other.table.items():
            acc[k] += b * v
        return FieldMapKernel(num_points=self.num_points, arity=self.arity, table=acc, gamma_slots=self.gamma_slots)

    def scaled(self, c: complex) -> 'FieldMapKernel':
        return FieldMapKernel(num_points=self.num_points,
                              arity=self.arity,
                              table={k: c * v for k, v in self.table.items()},
                              gamma_slots=self.gamma_slots)

    def __add__(self, other: 'FieldMapKernel') -> 'FieldMapKernel':
        return self.combine(other, 1, 1)

    def __sub__(self, other: 'FieldMapKernel') -> 'FieldMapKernel':
        return self.combine(other, 1, -1)

    def __neg__(self) -> 'FieldMapKernel':
        return self.scaled(-1)

    def max_abs_difference(self, other: 'FieldMapKernel') -> float:
        diff = self.combine(other, 1, -1)
        return max((abs(v) for v in diff.table.values()), default=0.0)

    def evaluate(self, fields: Sequence[Any]) -> np.ndarray:
        """Evaluates the field map, returning the output field."""
        values = [f.tolist() for f in as_fields(fields, self.arity, self.num_points)]
        out = np.zeros(self.num_points, dtype=np.complex128)
        for x, poly in self.monomials_at().items():
            out[x] = evaluate_monomials(poly, values)
        return out

    def kernel_norm(self, w: WeightSystem) -> float:
        """Returns the kernel norm: the sum over profiles of max(L, R)."""
        return self.kernel_norm_details(w).total

    def kernel_norm_details(self, w: WeightSystem) -> NormReport:
        """The kernel norm with its per-profile L (output pinned) and R (input pinned) parts."""
        if w.arity != self.arity:
            raise ArityMismatch(f'Weight system has {w.arity} factors but the kernel has {self.arity} slots.',
                                detail={'expected': self.arity, 'actual': w.arity})
        if w.space.num_points != self.num_points:
            raise DimensionMismatch(f'Kernel lives on {self.num_points} points but the space has {w.space.num_points}.',
                                    detail={'expected': self.num_points, 'actual': w.space.num_points})
        left = collections.defaultdict(lambda: collections.defaultdict(list))
        right = collections.defaultdict(lambda: collections.defaultdict(list))
        for (x, key), value in self.table.items():
            degrees = profile(key)
            weight = (abs(value) * w.factor_product(degrees) *
                      math.exp(w.space.tree_length(support(key) | {x})) * orbit_size(key))
            left[degrees][x].append(weight)
            for j, slot in enumerate(key):
                n = len(slot)
                for y, c in collections.Counter(slot).items():
                    right[degrees][(j, y)].append(weight * c / n)
        profiles = []
        for degrees in sorted(left):
            lv = max(math.fsum(terms) for terms in left[degrees].values())
            rv = max(math.fsum(terms) for terms in right[degrees].values())
            profiles.append(ProfileNorm(profile=DegreeProfile(degrees), value=max(lv, rv), left=lv, right=rv))
        return NormReport(total=math.fsum(p.value for p in profiles), constant=0.0, profiles=tuple(profiles))

    def primed_norm(self, w: WeightSystem) -> float:
        """The gamma-degree weighted norm sum_n (n_{s+1} + ... + n_{s+r}) |||B_n|||.

        Examples:
            >>> import fieldmaps
            >>> space = fieldmaps.MetricSpace.line(1)
            >>> sq = fieldmaps.FieldMapKernel.from_entries(1, 1, [(0, [[0, 0]], 1)], gamma_slots=1)
            >>> sq.primed_norm(fieldmaps.WeightSystem(space, factors=(0.5,)))
            0.5
        """
        if self.gamma_slots == 0:
            raise NoGammaSlots('The primed norm needs a kernel with gamma slots.')
        details = self.kernel_norm_details(w)
        s = self.field_slots
        return math.fsum(sum(p.profile.degrees[s:]) * p.value for p in details.profiles)

    def to_function(self) -> CoefficientSystem:
        """The function f_A(beta; alpha_1, ..., alpha_s) = sum_x beta(x) A(alpha)(x).

        The field beta is the first slot. With weight factor 1 for beta, the
        norm of f_A equals the kernel norm of A.
        """
        return CoefficientSystem(arity=self.arity + 1, table={((x,),) + key: v for (x, key), v in self.table.items()})

    def to_json(self) -> Dict[str, Any]:
        return {
            'arity': self.arity,
            'gamma_slots': self.gamma_slots,
            'entries': [[x, key_to_json(k), v * orbit_size(k)] for (x, k), v in self.table.items()],
        }

    @staticmethod
    def from_json(data: Dict[str, Any], num_points: int) -> 'FieldMapKernel':
        return FieldMapKernel.from_entries(
            num_points,
            data['arity'],
            [(x, key, json_complex(value)) for x, key, value in data['entries']],
            gamma_slots=data.get('gamma_slots', 0))

    def __repr__(self) -> str:
        terms = [f'num_points={self.num_points!r}', f'arity={self.arity!r}', f'table={self.table!r}']
        if self.gamma_slots:
            terms.append(f'gamma_slots={self.gamma_slots!r}')
        return f'fieldmaps.FieldMapKernel({", ".join(terms)})'


def kernel_norm(a: FieldMapKernel, w: WeightSystem) -> float:
    return a.kernel_norm(w)


def evaluate_map(a: FieldMapKernel, fields: Sequence[Any]) -> np.ndarray:
    return a.evaluate(fields)


def primed_norm(a: FieldMapKernel, w: WeightSystem) -> float:
    return a.primed_norm(w)


def lp_norm_bound_check(a: FieldMapKernel,
                        w: WeightSystem,
                        degrees: Sequence[int],
                        p: float,
                        exponents: Sequence[float],
                        fields: Sequence[Any]) -> Verdict:
    """Checks ||A(alpha)||_p <= |||A|||_w prod_j (||alpha_j||_{p_j} / kappa_j)^{d_j}.

    Requires sum_j d_j / p_j = 1/p. The hypotheses that A has degree at
    least d_j in field j and that |alpha_j(x)| <= kappa_j are reported
    through the verdict status.

    Raises:
        ExponentMismatch: sum_j d_j / p_j != 1/p.
    """
    if len(degrees) != a.arity or len(exponents) != a.arity:
        raise ArityMismatch(f'Need {a.arity} degrees and exponents.',
                            detail={'expected': a.arity, 'degrees': len(degrees), 'exponents': len(exponents)})
    if not p > 0:
        raise ExponentMismatch(f'p={p} <= 0', detail={'p': p})
    total = exponent_sum(degrees, exponents)
    target = 0.0 if math.isinf(p) else 1 / p
    if abs(total - target) > 1e-12:
        raise ExponentMismatch(f'sum_j d_j/p_j = {total} != 1/p = {target}', detail={'sum': total, 'p': p})
    fields = as_fields(fields, a.arity, a.num_points)
    degree_ok = all(len(key[j]) >= d for _, key in a.table for j, d in enumerate(degrees))
    bounded = all(np.max(np.abs(f), initial=0.0) <= k for f, k in zip(fields, w.factors))
    lhs = lp_norm(a.evaluate(fields), p)
    rhs = a.kernel_norm(w)
    for f, k, d, pj in zip(fields, w.factors, degrees, exponents):
        if d:
            rhs *= (lp_norm(f, pj) / k)**d
    return Verdict.check('young_map', lhs, rhs, hypothesis=degree_ok and bounded)


def random_kernel(rng: np.random.Generator,
                  num_points: int,
                  arity: int,
                  *,
                  max_degree: int,
                  min_degree: int = 1,
                  num_terms: int = 6,
                  scale: float = 1.0,
                  gamma_slots: int = 0,
                  min_gamma_degree: int = 0,
                  max_gamma_degree: Optional[int] = None,
                  real: bool = False) -> FieldMapKernel:
    """A seeded random sparse kernel.

    Args:
        rng: The random number generator.
        num_points: Size of the space.
        arity: Number of slots.
        max_degree: Largest total degree of a term.
        min_degree: Defaults to 1. Smallest total degree of a term (at least 1).
        num_terms: Number of distinct (output point, tuple) entries.
        scale: Kernel magnitudes are uniform in [0, scale).
        gamma_slots: Number of trailing gamma slots.
        min_gamma_degree: Smallest total degree in the gamma slots.
        max_gamma_degree: Largest total degree in the gamma slots.
        real: Use real values instead of complex ones.
    """
    s = arity - gamma_slots
    keys = []
    for d in range(max(min_degree, 1), max_degree + 1):
        for key in enumerate_keys(num_points, arity, d):
            g = sum(len(slot) for slot in key[s:])
            if g >= min_gamma_degree and (max_gamma_degree is None or g <= max_gamma_degree):
                keys.extend((x, key) for x in range(num_points))
    table = {}
    if keys:
        chosen = rng.choice(len(keys), size=min(num_terms, len(keys)), replace=False)
        for i in sorted(chosen):
            magnitude = rng.uniform(0, scale)
            phase = 1 if real else np.exp(2j * np.pi * rng.uniform())
            table[keys[i]] = complex(magnitude * phase)
    return FieldMapKernel(num_points=num_points, arity=arity, table=table, gamma_slots=gamma_slots)


def _kernel_key_order(item: KernelKey):
    x, key = item
    return total_degree(key), profile(key), x, key
