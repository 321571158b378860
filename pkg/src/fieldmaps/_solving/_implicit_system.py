import dataclasses
import math
from typing import Any, Dict, List, Sequence, Tuple

from fieldmaps._calculus import ball_norm, insert_gamma
from fieldmaps._data import TruncationOptions, Verdict
from fieldmaps._errors import ArityMismatch, DimensionMismatch, StructureViolation
from fieldmaps._series import FieldMapKernel
from fieldmaps._space import MetricSpace, WeightSystem


@dataclasses.dataclass(frozen=True)
class FieldMapTuple:
    """An r-tuple (Gamma_1, ..., Gamma_r) of s-field maps, measured against the lambdas.

    The norm of the tuple is max_j |||Gamma_j|||_w / lambda_j, and the unit
    ball of that norm is the set the fixed point solver works in.

    Attributes:
        entries: The maps Gamma_j.
        lambdas: The positive scale factors lambda_j.
    """
    entries: Tuple[FieldMapKernel, ...]
    lambdas: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(self.entries))
        object.__setattr__(self, 'lambdas', tuple(float(lam) for lam in self.lambdas))
        if len(self.entries) != len(self.lambdas):
            raise ArityMismatch(f'Got {len(self.entries)} maps but {len(self.lambdas)} lambdas.',
                                detail={'expected': len(self.entries), 'actual': len(self.lambdas)})
        for lam in self.lambdas:
            if not lam > 0 or not math.isfinite(lam):
                raise ValueError(f'lambda={lam} is not positive and finite')

    @staticmethod
    def zero(num_points: int, arity: int, lambdas: Sequence[float]) -> 'FieldMapTuple':
        return FieldMapTuple(entries=tuple(FieldMapKernel.zero(num_points, arity) for _ in lambdas),
                             lambdas=tuple(lambdas))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> FieldMapKernel:
        return self.entries[j]

    def __sub__(self, other: 'FieldMapTuple') -> 'FieldMapTuple':
        return FieldMapTuple(entries=tuple(a - b for a, b in zip(self.entries, other.entries)),
                             lambdas=self.lambdas)

    def ball_norm(self, w: WeightSystem) -> float:
        return ball_norm(self.entries, w, self.lambdas)

    def in_ball(self, w: WeightSystem, radius: float = 1.0) -> bool:
        return self.ball_norm(w) <= radius * (1 + 1e-12)

    def max_abs_difference(self, other: 'FieldMapTuple') -> float:
        return max((a.max_abs_difference(b) for a, b in zip(self.entries, other.entries)), default=0.0)

    def to_json(self) -> Dict[str, Any]:
        return {
            'lambdas': list(self.lambdas),
            'maps': [e.to_json() for e in self.entries],
        }


@dataclasses.dataclass(frozen=True)
class ImplicitSystem:
    """The system gamma_j = f_j(alpha) + L_j(alpha, gamma) + B_j(alpha, gamma), j = 1..r.

    Attributes:
        space: The metric space all fields live on.
        f: r s-field maps.
        linear: r (s+r)-field maps, each of degree exactly one in its gamma slots.
        nonlinear: r (s+r)-field maps, each of degree at least two in its gamma slots.
        kappas: The s weight factors of the alpha fields.
        lambdas: The r weight factors of the gamma fields.
        contraction: The contraction factor c in (0, 1).
    """
    space: MetricSpace
    f: Tuple[FieldMapKernel, ...]
    linear: Tuple[FieldMapKernel, ...]
    nonlinear: Tuple[FieldMapKernel, ...]
    kappas: Tuple[float, ...]
    lambdas: Tuple[float, ...]
    contraction: float = 0.5

    def __post_init__(self):
        for name in ['f', 'linear', 'nonlinear', 'kappas', 'lambdas']:
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not 0 < self.contraction < 1:
            raise ValueError(f'contraction={self.contraction} is not in (0, 1)')
        s = len(self.kappas)
        r = len(self.lambdas)
        if r == 0:
            raise ArityMismatch('An implicit system needs at least one unknown field.')
        for name, family in [('f', self.f), ('linear', self.linear), ('nonlinear', self.nonlinear)]:
            if len(family) != r:
                raise ArityMismatch(f'Expected {r} maps in {name} but got {len(family)}.',
                                    detail={'family': name, 'expected': r, 'actual': len(family)})
            for j, a in enumerate(family):
                if a.num_points != self.space.num_points:
                    raise DimensionMismatch(f'{name}[{j}] lives on {a.num_points} points, not {self.space.num_points}.',
                                            detail={'family': name, 'index': j,
                                                    'expected': self.space.num_points, 'actual': a.num_points})
                expected = (s, 0) if name == 'f' else (s + r, r)
                if (a.arity, a.gamma_slots) != expected:
                    raise ArityMismatch(
                        f'{name}[{j}] has {a.arity} slots ({a.gamma_slots} gamma) but needs '
                        f'{expected[0]} slots ({expected[1]} gamma).',
                        detail={'family': name, 'index': j, 'expected': list(expected),
                                'actual': [a.arity, a.gamma_slots]})
        for j, a in enumerate(self.linear):
            band = a.gamma_degree_range()
            if band is not None and band != (1, 1):
                raise StructureViolation(f'linear[{j}] has gamma degrees {band} but must be linear in gamma.',
                                         detail={'family': 'linear', 'index': j, 'degrees': list(band)})
        for j, a in enumerate(self.nonlinear):
            band = a.gamma_degree_range()
            if band is not None and band[0] < 2:
                raise StructureViolation(f'nonlinear[{j}] has gamma degrees {band} but must have degree >= 2.',
                                         detail={'family': 'nonlinear', 'index': j, 'degrees': list(band)})

    @property
    def num_fields(self) -> int:
        """s"""
        return len(self.kappas)

    @property
    def num_unknowns(self) -> int:
        """r"""
        return len(self.lambdas)

    @property
    def w(self) -> WeightSystem:
        return WeightSystem(space=self.space, factors=self.kappas)

    @property
    def w_kl(self) -> WeightSystem:
        return WeightSystem(space=self.space, factors=self.kappas + self.lambdas)

    def without_nonlinear(self) -> 'ImplicitSystem':
        """The linear system of the same shape, with every B_j set to zero."""
        zero = FieldMapKernel.zero(self.space.num_points, self.num_fields + self.num_unknowns,
                                   gamma_slots=self.num_unknowns)
        return dataclasses.replace(self, nonlinear=tuple(zero for _ in self.nonlinear))

    def zero_tuple(self) -> FieldMapTuple:
        return FieldMapTuple.zero(self.space.num_points, self.num_fields, self.lambdas)

    def f_tuple(self) -> FieldMapTuple:
        return FieldMapTuple(entries=self.f, lambdas=self.lambdas)

    def apply(self, gammas: FieldMapTuple, truncation: TruncationOptions) -> Tuple[FieldMapTuple, bool]:
        """Returns F(Gamma)_j = f_j + L_j(alpha, Gamma(alpha)) + B_j(alpha, Gamma(alpha)), truncated."""
        entries: List[FieldMapKernel] = []
        dropped = False
        for f, lin, nonlin in zip(self.f, self.linear, self.nonlinear):
            acc, d = f.truncated(truncation)
            dropped |= d
            for b in (lin, nonlin):
                if b.table:
                    term, d = insert_gamma(b, gammas.entries, truncation=truncation)
                    dropped |= d
                    acc = acc + term
            entries.append(acc)
        return FieldMapTuple(entries=tuple(entries), lambdas=self.lambdas), dropped

    def to_json(self) -> Dict[str, Any]:
        return {
            'kappas': list(self.kappas),
            'lambdas': list(self.lambdas),
            'contraction': self.contraction,
            'f': [a.to_json() for a in self.f],
            'L': [a.to_json() for a in self.linear],
            'B': [a.to_json() for a in self.nonlinear],
        }


@dataclasses.dataclass(frozen=True)
class HypothesisRow:
    """The norms and the two contraction conditions for one unknown gamma_j."""
    index: int
    f_norm: float
    linear_norm: float
    nonlinear_norm: float
    linear_primed_norm: float
    nonlinear_primed_norm: float
    lam: float
    bound: Verdict
    contraction: Verdict

    @property
    def passed(self) -> bool:
        return self.bound.holds and self.contraction.holds

    def to_json(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'f': self.f_norm,
            'L': self.linear_norm,
            'B': self.nonlinear_norm,
            'L_primed': self.linear_primed_norm,
            'B_primed': self.nonlinear_primed_norm,
            'lambda': self.lam,
            'bound': self.bound,
            'contraction': self.contraction,
        }


@dataclasses.dataclass(frozen=True)
class HypothesisReport:
    """The conditions under which the fixed point exists and is unique in the unit ball.

    Attributes:
        rows: One row per unknown field.
        contraction: The contraction factor c.
        f_ball_norm: max_j |||f_j|||_w / lambda_j.
        small_source: max_j |||f_j|||_w / lambda_j <= (1 - c)^2, the extra
            condition under which a solve is compared to its linear part.
    """
    rows: Tuple[HypothesisRow, ...]
    contraction: float
    f_ball_norm: float
    small_source: Verdict

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def verdicts(self) -> Tuple[Verdict, ...]:
        return tuple(v for row in self.rows for v in (row.bound, row.contraction))

    def to_json(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'contraction': self.contraction,
            'f_ball_norm': self.f_ball_norm,
            'small_source': self.small_source,
            'rows': [row.to_json() for row in self.rows],
        }


def check_hypotheses(system: ImplicitSystem) -> HypothesisReport:
    """Checks |||f_j||| + |||L_j||| + |||B_j||| <= lambda_j and |||L_j|||' + |||B_j|||' <= c lambda_j.

    The verdicts are never 'hypothesis not met': a failed condition is a
    violated verdict and the report does not pass.

    Examples:
        >>> import fieldmaps
        >>> space = fieldmaps.MetricSpace.line(1)
        >>> system = fieldmaps.ImplicitSystem(
        ...     space=space,
        ...     f=[fieldmaps.FieldMapKernel.projection(1, 1, 0, scale=0.1)],
        ...     linear=[fieldmaps.FieldMapKernel.zero(1, 2, gamma_slots=1)],
        ...     nonlinear=[fieldmaps.FieldMapKernel.from_entries(1, 2, [(0, [[], [0, 0]], 0.6)], gamma_slots=1)],
        ...     kappas=[1],
        ...     lambdas=[1],
        ... )
        >>> report = fieldmaps.check_hypotheses(system)
        >>> report.passed
        False
        >>> round(report.rows[0].contraction.margin, 12)
        -0.7
    """
    w = system.w
    w_kl = system.w_kl
    c = system.contraction
    rows = []
    for j, (f, lin, nonlin, lam) in enumerate(zip(system.f, system.linear, system.nonlinear, system.lambdas)):
        fn = f.kernel_norm(w)
        ln = lin.kernel_norm(w_kl)
        bn = nonlin.kernel_norm(w_kl)
        lp = lin.primed_norm(w_kl)
        bp = nonlin.primed_norm(w_kl)
        rows.append(HypothesisRow(
            index=j,
            f_norm=fn,
            linear_norm=ln,
            nonlinear_norm=bn,
            linear_primed_norm=lp,
            nonlinear_primed_norm=bp,
            lam=lam,
            bound=Verdict.check(f'maps_into_ball[{j}]', fn + ln + bn, lam, rel_slack=1e-12),
            contraction=Verdict.check(f'contraction[{j}]', lp + bp, c * lam, rel_slack=1e-12),
        ))
    f_ball = max(row.f_norm / row.lam for row in rows)
    return HypothesisReport(
        rows=tuple(rows),
        contraction=c,
        f_ball_norm=f_ball,
        small_source=Verdict.check('small_source', f_ball, (1 - c)**2, rel_slack=1e-12),
    )
